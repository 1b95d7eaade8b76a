#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mdt/ainfty.hpp"

namespace mdt {

// Matrix of algebra elements; entry (i,j) maps the j-th source generator to
// the i-th target generator, so chains compose like ordinary matrix products.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<Element> ent;
  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), ent(r * c) {}
  Element& at(int i, int j) { return ent[i * cols + j]; }
  const Element& at(int i, int j) const { return ent[i * cols + j]; }
  bool is_zero() const;
  bool operator==(const Mat& o) const;
};

Mat mat_add(const Mat& a, const Mat& b);

// Twisted object: generators tau = (vertex, shift) and a strictly
// upper-triangular structure matrix of effective degree 1 solving
// sum_i b_i(A,...,A) = 0.  A basis element x at entry (i,j) has effective
// degree deg(x) + shift(tau_j) - shift(tau_i).
struct TwObject {
  std::vector<std::pair<int, int>> tau;
  Mat a;
  int size() const { return static_cast<int>(tau.size()); }
  bool operator==(const TwObject& o) const { return tau == o.tau && a == o.a; }
};

struct TwMorphism {
  TwObject src, tgt;
  Mat mat;
  int degree = 0;
};

TwObject generator(int vertex, int shift = 0);
TwObject shift_tw(TwObject t, int k);
TwObject direct_sum(const TwObject& x, const TwObject& y);

int effective_degree(const KoszulAlgebra& k, const TwObject& tgt, const TwObject& src, int row,
                     int col, int basis_id);

Mat eval_b_mat(const KoszulAlgebra& k, const std::vector<Mat>& args);

// sum_{i>=1} b_i(A,...,A); accepts arbitrary (non-triangular, symbolic)
// matrices, the arity is bounded by the stored table
Mat mc_residual(const KoszulAlgebra& k, const Mat& a);
Mat mc_residual(const KoszulAlgebra& k, const TwObject& t);
// shape, triangularity, degree and vertex constraints, MC; throws InputError
void validate_twisted(const KoszulAlgebra& k, const TwObject& t);

// composition with structure-matrix insertions on every segment;
// mats[k] maps objs[k+1] -> objs[k], result maps objs.back() -> objs.front()
Mat tw_eval(const KoszulAlgebra& k, const std::vector<const TwObject*>& objs,
            const std::vector<Mat>& mats);
TwMorphism tw_compose(const KoszulAlgebra& k, const std::vector<TwMorphism>& ms);
// differential of an endomorphism matrix of t
Mat tw_d(const KoszulAlgebra& k, const TwObject& t, const Mat& phi);

// cone of a closed degree-0 morphism: target generators, then source
// generators shifted by one, with m in the corner
TwObject cone(const KoszulAlgebra& k, const TwMorphism& m);

// total object sub ⊕ quot carrying a closed degree-1 extension class
// alpha: quot -> sub in the corner; its tw_d is the extension differential
TwObject extension_total(const KoszulAlgebra& k, const TwObject& sub, const TwObject& quot,
                         const Mat& alpha);

// trace pairing sum_{i,j} <p(i,j), m(j,i)>
Poly mat_pairing(const KoszulAlgebra& k, const Mat& p, const Mat& m);
// graded-antisymmetric trace pairing on endomorphism matrices of t,
// with the shift-transfer signs that make it cyclic for tw_eval
Poly tw_pairing(const KoszulAlgebra& k, const TwObject& t, const Mat& p, const Mat& m);
Poly potential_value_mat(const KoszulAlgebra& k, const Mat& m);
// potential of the endomorphism algebra at t: structure-matrix insertions
// everywhere except after the pairing slot
Poly twisted_potential(const KoszulAlgebra& k, const TwObject& t, const Mat& a);

struct EndSlot {
  int row = 0, col = 0, basis = 0;
};
// all effective-degree-one endomorphism slots of t
std::vector<EndSlot> degree_one_slots(const KoszulAlgebra& k, const TwObject& t);
Mat slot_matrix(const TwObject& t, const std::vector<EndSlot>& slots,
                const std::vector<Poly>& coeffs);

// verifies twisted_potential(t, a) == potential_value_mat(A + a) on random
// exact rational samples; returns a description of the first failure
std::optional<std::string> shifted_potential_check(const KoszulAlgebra& k, const TwObject& t,
                                                   int nsamples, unsigned seed = 20260816);

// A finite graded algebra-with-operations over a single object, used for
// endomorphism algebras of twisted objects and for transferred minimal
// structures.  Same conventions as the stored table of KoszulAlgebra.
struct FiniteAinfty {
  std::vector<int> deg;
  std::vector<std::string> names;
  std::map<std::vector<int>, std::map<int, Rat>> table;
  std::map<std::pair<int, int>, Rat> pairing;

  int size() const { return static_cast<int>(deg.size()); }
  int max_arity() const;
  std::map<int, Rat> eval_basis(const std::vector<int>& args) const;
  std::map<int, Rat> eval(const std::vector<std::map<int, Rat>>& args) const;
  Rat pair(int u, int v) const;
  std::optional<std::string> check_stasheff(int nmax = 8) const;
  // potential restricted to the span of gens, one variable per generator
  Poly potential_series(const std::vector<int>& gens) const;
};

FiniteAinfty end_algebra(const KoszulAlgebra& k, const TwObject& t);

struct TransferResult {
  FiniteAinfty minimal;
  // columns of the inclusion H -> A per transferred basis element
  std::vector<std::map<int, Rat>> inclusion;
};
// splits off the acyclic part of b1 by degreewise Gaussian elimination with
// lowest-index pivots and transfers the operations by the tree recursion
TransferResult homotopy_transfer(const FiniteAinfty& a, int cutoff);

struct SplitResult {
  Poly wmin;
  Poly quad;
  std::map<int, Poly> change;  // substitution with w∘change = wmin + quad
};
// order-by-order completion of the square against the quadratic part, which
// must involve only the listed coordinates and be nondegenerate on them
SplitResult cyclic_split(const Poly& w, std::vector<int> vvars, int order = 8);
SplitResult cyclic_split(const Poly& w, int order = 8);

}  // namespace mdt

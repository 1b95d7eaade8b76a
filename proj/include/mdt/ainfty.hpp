#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mdt/poly.hpp"
#include "mdt/quiver.hpp"

namespace mdt {

// Linear combination of basis morphisms with polynomial coefficients.
// Keys are basis ids of a fixed KoszulAlgebra.
using Element = std::map<int, Poly>;

Element elem_add(const Element& a, const Element& b);
Element elem_scale(const Element& a, const Poly& c);
Element elem_neg(const Element& a);
bool elem_zero(const Element& a);

// The finite cyclic algebra dual to a quiver with potential.  One basis
// morphism of degree 0 (unit) and 3 (socle) per vertex, and for each arrow
// one of degree 1 (the arrow's dual) and one of degree 2 (the arrow).
// Operations live in the suspended convention: b_n takes displayed tuples
// whose RIGHTMOST entry composes first, and carries total degree +1 after
// the shift.  All higher operations come from cyclic contraction of the
// potential: a cycle of length m with coefficient c contributes, for each
// of its m rotations d_1...d_m, the entry b_{m-1}(d_1*, ..., d_{m-1}*) +=
// (c/m) d_m.
class KoszulAlgebra {
 public:
  explicit KoszulAlgebra(Quiver q);

  const Quiver& quiver() const { return q_; }
  int size() const { return static_cast<int>(deg_.size()); }
  int degree(int id) const { return deg_[id]; }
  int src(int id) const { return src_[id]; }
  int tgt(int id) const { return tgt_[id]; }
  const std::string& name(int id) const { return name_[id]; }
  int id_by_name(const std::string& n) const;  // -1 when absent

  int unit(int v) const { return v; }
  int dual(int a) const { return nv_ + a; }
  int arrow_elem(int a) const { return nv_ + na_ + a; }
  int omega(int v) const { return nv_ + 2 * na_ + v; }

  int max_arity() const;

  // multilinear evaluation over the stored table; polynomial scalars are
  // even and pull out without signs
  Element eval_b(const std::vector<Element>& args) const;
  Element eval_b_basis(const std::vector<int>& args) const;
  // unsuspended operation, differing from eval_b by the suspension sign
  Element eval_m_basis(const std::vector<int>& args) const;

  Rat pairing(int u, int v) const;
  // suspended pairing <u,v>' = (-1)^{|u|-1} <u,v>; antisymmetric
  Rat pairing_shifted(int u, int v) const;

  // the full Stasheff relation on every composable basis tuple up to the
  // arity where all terms are structurally zero (or nmax, if smaller);
  // returns a description of the first failure
  std::optional<std::string> check_stasheff(int nmax = 8) const;
  // rotation covariance of <b(t_0..t_{n-2}), t_{n-1}>' on all loops
  std::optional<std::string> check_cyclic(int nmax = 8) const;

  // stored data, exposed for corruption experiments
  std::map<std::vector<int>, Element>& table() { return table_; }
  const std::map<std::vector<int>, Element>& table() const { return table_; }
  std::map<std::pair<int, int>, Rat>& pairing_table() { return pair_; }

  // all composable chains (src of each entry = tgt of the next) of given
  // length; closed additionally requires src(last) = tgt(first)
  std::vector<std::vector<int>> chains(int n, bool closed) const;

 private:
  Quiver q_;
  int nv_ = 0, na_ = 0;
  std::vector<int> deg_, src_, tgt_;
  std::vector<std::string> name_;
  std::map<std::vector<int>, Element> table_;
  std::map<std::pair<int, int>, Rat> pair_;
};

Poly elem_pairing(const KoszulAlgebra& k, const Element& a, const Element& b);
Poly elem_pairing_shifted(const KoszulAlgebra& k, const Element& a, const Element& b);

// value of the potential on a degree-1 element: sum over n >= 2 of
// (1/n) <b_{n-1}(a,...,a), a> with the unsuspended pairing
Poly potential_value(const KoszulAlgebra& k, const Element& a);

}  // namespace mdt

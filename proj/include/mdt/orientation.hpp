#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mdt/twisted.hpp"

namespace mdt {

// Square-class bookkeeping.  Over the rationals the unit component is a
// signed squarefree integer representing an element of Q*/(Q*)^2; in
// algebraically closed mode every unit collapses to 1 and only the parity
// survives.
enum class FieldMode { Rationals, Closed };

// MDT_FIELD = "rationals" (default) or "closed"
FieldMode field_mode_from_env();

struct J2Class {
  Int unit = 1;
  int parity = 0;
  bool operator==(const J2Class& o) const { return unit == o.unit && parity == o.parity; }
  bool operator!=(const J2Class& o) const { return !(*this == o); }
};

// signed squarefree representative of the square class of a nonzero rational
Int square_class(const Rat& v);
J2Class j2_make(const Rat& unit, int parity, FieldMode mode = field_mode_from_env());
J2Class j2_mul(const J2Class& a, const J2Class& b, FieldMode mode = field_mode_from_env());
// "(d, p)"
std::string j2_str(const J2Class& c);

// parity of the total dimension in degrees >= 1
int sdet_parity(const std::map<int, int>& dims);

struct QuadSpace {
  std::vector<std::string> labels;
  std::vector<std::vector<Rat>> gram;
};

// (squarefree det, dim mod 2); throws Degenerate on vanishing determinant
J2Class quad_class(const QuadSpace& q, FieldMode mode = field_mode_from_env());
// class of the induced nondegenerate form on V/rad; never throws Degenerate
J2Class form_class(const QuadSpace& q, FieldMode mode = field_mode_from_env());

// class of the pairing form <d(.),.> on the degree-one endomorphism slots
// of t modulo its radical (the closed slots)
J2Class object_form_class(const KoszulAlgebra& k, const TwObject& t,
                          FieldMode mode = field_mode_from_env());

// the same form at the total object of the extension of quot by sub along
// the closed degree-one class alpha
J2Class obstruction_at_extension(const KoszulAlgebra& k, const TwObject& sub,
                                 const TwObject& quot, const Mat& alpha,
                                 FieldMode mode = field_mode_from_env());

// homology dimensions, graded by effective degree, of the twisted hom
// complex of t restricted to the span of the listed basis elements; throws
// when the span is not preserved by the differential
std::map<int, int> hom_homology_dims(const KoszulAlgebra& k, const TwObject& t,
                                     const std::vector<int>& allowed);

// parity attached to the intrinsic-degree >= 2 part of the hom complex
int cgeq2_class(const KoszulAlgebra& k, const TwObject& t);

// parity from the Lagrangian span {a : a not in T} + {a* : a in T} + socle;
// throws InvalidLagrangian unless every potential word meets T at most once
int lagrangian_class(const KoszulAlgebra& k, const std::vector<int>& T, const TwObject& t);

// h(sub) + h(quot) - h(total) = obstruction parity, mod 2
bool cocycle_check(const KoszulAlgebra& k, const TwObject& sub, const TwObject& quot,
                   const Mat& alpha, const std::function<int(const TwObject&)>& h,
                   FieldMode mode = field_mode_from_env());

// canonical printable key of a twisted object
std::string tw_key(const TwObject& t);

// parity forced at t by the generator parities (one per vertex, at shift 0)
// through iterated extension peeling; every admissible split must agree,
// otherwise throws Error
int assigned_parity(const KoszulAlgebra& k, const std::vector<int>& gen_parities,
                    const TwObject& t);

// cocycle-consistent parity assignment, keyed by tw_key, on all valid
// twisted objects with at most max_slots generator slots, shifts in [-1, 1],
// and structure entries that are single basis elements with coefficient 1
std::map<std::string, int> propagate_parities(const KoszulAlgebra& k,
                                              const std::vector<int>& gen_parities,
                                              int max_slots = 4);

}  // namespace mdt

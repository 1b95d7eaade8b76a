#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mdt/motive.hpp"

namespace mdt {

// Combinatorial ledger of an embedded resolution: exceptional/strict
// divisors with multiplicities, and for every nonempty incidence subset I
// the class of the induced cyclic cover of the open stratum.  Cover orders
// are folded into the supplied cover classes.
struct ResolutionData {
  std::vector<std::pair<std::string, int>> divisors;
  std::vector<std::pair<std::vector<std::string>, MotiveExpr>> strata;
  MotiveExpr central_fibre_class;

  void validate() const;  // throws InputError
};

ResolutionData parse_resolution(std::istream& in, const std::string& name = "<input>");
ResolutionData load_resolution(const std::string& path);

// x^n on the affine line, resolved by the identity map
ResolutionData power_resolution(long long n);

// sum over nonempty I of (1-L)^{|I|-1} * cover_class(I)
MotiveExpr nearby_cycle(const ResolutionData& data);
// nearby cycle minus the central fibre class
MotiveExpr vanishing_cycle(const ResolutionData& data);

// Milnor-fibre class of x^a + y^b at the origin, via the multiplicativity
// of 1 - MF under the exotic product
MotiveExpr milnor_fibre_ts(long long a, long long b);

// The composite weight of the 2x2 trace-power slice: (central - nearby)/L
// assembled from the shipped stratum ledger; equals 1 - MF(x^4+y^4).
MotiveExpr chapter2_weight();

}  // namespace mdt

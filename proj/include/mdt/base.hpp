#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace mdt {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy. Everything user-triggerable derives from Error so the CLI
// can map it to a single exit code.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};
struct InputError : Error {
  using Error::Error;
};
// s = 1 specialization hit a GL-inverse denominator.
struct PoleAtOne : Error {
  using Error::Error;
};
// chi_eq asked of a genuine fraction.
struct NonPolynomial : Error {
  using Error::Error;
};
// localization outside the allowed multiplicative set
struct UnsupportedDenominator : Error {
  using Error::Error;
};
struct DenominatorNotCleared : Error {
  using Error::Error;
};
// inverse of a series whose constant coefficient is not 1
struct NonUnitConstant : Error {
  using Error::Error;
};
struct Degenerate : Error {
  using Error::Error;
};
// cone or extension taken over a morphism that is not closed
struct NotClosed : Error {
  using Error::Error;
};
struct InvalidLagrangian : Error {
  using Error::Error;
};

inline Rat rat(long n, long d = 1) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& q) {
  return q.get_str();
}

}  // namespace mdt

#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>

#include "mdt/base.hpp"

namespace mdt {

// variable id -> exponent, no zero entries
using Monomial = std::map<int, int>;

// Sparse multivariate polynomial with exact rational coefficients.  The
// scalar ring for all category-level computations; variables play the role
// of coordinates on spaces of degree-1 morphisms.
class Poly {
 public:
  Poly() = default;
  static Poly constant(Rat c);
  static Poly var(int v);

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
  bool operator==(const Poly& o) const { return t_ == o.t_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scale(const Rat& c) const;
  Poly pow(int e) const;

  int total_degree() const;  // -1 for the zero polynomial
  Poly truncate(int maxdeg) const;
  Poly homogeneous(int d) const;
  Poly derivative(int v) const;
  Poly substitute(int v, const Poly& replacement) const;
  // simultaneous substitution; variables absent from the map stay themselves
  Poly substitute_all(const std::map<int, Poly>& repl) const;
  Rat eval(const std::map<int, Rat>& vals) const;  // throws InputError on a free variable
  Rat constant_term() const;
  Rat coefficient(const Monomial& m) const;
  std::set<int> vars() const;

  const std::map<Monomial, Rat>& terms() const { return t_; }
  void set_term(const Monomial& m, Rat c);

  std::string str(const std::function<std::string(int)>& namer) const;
  std::string str() const;  // variables rendered as v<i>

 private:
  std::map<Monomial, Rat> t_;
};

}  // namespace mdt

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mdt/base.hpp"

namespace mdt {

// Character of the procyclic group: a reduced rational in [0,1).
struct Character {
  long long num = 0;
  long long den = 1;

  static Character of(long long k, long long n);
  bool trivial() const { return num == 0; }
  Character operator+(const Character& o) const;
  bool operator==(const Character& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Character& o) const { return !(*this == o); }
  bool operator<(const Character& o) const;
  std::string str() const;
};

// Laurent polynomial in the half-Tate symbol s, integer coefficients.
// L is shorthand for s^2 throughout.
class Laurent {
 public:
  Laurent() = default;
  static Laurent constant(Int c);
  static Laurent term(Int c, int exp);
  static Laurent s(int exp = 1) { return term(1, exp); }
  static Laurent L(int k = 1) { return term(1, 2 * k); }

  bool is_zero() const { return c_.empty(); }
  bool operator==(const Laurent& o) const { return c_ == o.c_; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent& o) const;
  Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
  Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  // multiplication by s^k
  Laurent shifted(int k) const;

  int min_exp() const;  // requires nonzero
  int max_exp() const;

  Int eval_one() const;  // s -> 1
  // s^2 -> q; requires all exponents even
  Rat eval_L(const Rat& q) const;

  // exact division in Z[s, s^-1]; nullopt when not divisible
  static std::optional<Laurent> try_divide(const Laurent& num, const Laurent& den);

  const std::map<int, Int>& terms() const { return c_; }
  void set_term(int exp, Int c);

 private:
  std::map<int, Int> c_;  // exponent -> coefficient, no zero entries
};

// Finite sector decomposition: character -> Laurent coefficient.
class SectorPoly {
 public:
  SectorPoly() = default;
  static SectorPoly constant(Int c);
  static SectorPoly from_laurent(const Laurent& p);  // trivial sector
  static SectorPoly unit_sector(const Character& ch);

  bool is_zero() const { return sec_.empty(); }
  bool operator==(const SectorPoly& o) const { return sec_ == o.sec_; }
  bool operator!=(const SectorPoly& o) const { return !(*this == o); }

  SectorPoly operator+(const SectorPoly& o) const;
  SectorPoly operator-(const SectorPoly& o) const;
  SectorPoly operator-() const;

  // Product with plain sector addition and no correction factors.
  static SectorPoly mul_naive(const SectorPoly& a, const SectorPoly& b);
  // The exotic product realizing Thom-Sebastiani: both sectors nontrivial
  // costs s (or s^2 when the sectors are opposite).
  static SectorPoly mul_exotic(const SectorPoly& a, const SectorPoly& b);

  const std::map<Character, Laurent>& sectors() const { return sec_; }
  const Laurent* sector(const Character& ch) const;
  void add_term(const Character& ch, const Laurent& p);
  bool trivial_only() const;

 private:
  std::map<Character, Laurent> sec_;
};

// Element of the localized equivariant motive ring: a sector-Laurent
// numerator over a denominator drawn from the multiplicative set generated
// by s and the cyclotomic-type factors L^c - 1.  s is a unit of the Laurent
// ring so canonical denominators carry only the L^c - 1 factors.
class MotiveExpr {
 public:
  MotiveExpr() = default;
  explicit MotiveExpr(SectorPoly n) : num_(std::move(n)) { reduce(); }
  MotiveExpr(SectorPoly n, std::map<int, int> den) : num_(std::move(n)), den_(std::move(den)) { reduce(); }

  static MotiveExpr constant(Int c) { return MotiveExpr(SectorPoly::constant(std::move(c))); }
  static MotiveExpr zero() { return MotiveExpr(); }
  static MotiveExpr one() { return constant(1); }
  static MotiveExpr s(int k = 1) { return MotiveExpr(SectorPoly::from_laurent(Laurent::s(k))); }
  static MotiveExpr L(int k = 1) { return MotiveExpr(SectorPoly::from_laurent(Laurent::L(k))); }
  static MotiveExpr Linv() { return s(-2); }
  static MotiveExpr chi(long long k, long long n);

  bool is_zero() const { return num_.is_zero(); }

  MotiveExpr operator+(const MotiveExpr& o) const;
  MotiveExpr operator-(const MotiveExpr& o) const;
  MotiveExpr operator-() const;
  MotiveExpr& operator+=(const MotiveExpr& o) { return *this = *this + o; }
  MotiveExpr& operator-=(const MotiveExpr& o) { return *this = *this - o; }

  static MotiveExpr mul_naive(const MotiveExpr& a, const MotiveExpr& b);
  static MotiveExpr mul_exotic(const MotiveExpr& a, const MotiveExpr& b);
  MotiveExpr operator*(const MotiveExpr& o) const { return mul_naive(*this, o); }
  MotiveExpr& operator*=(const MotiveExpr& o) { return *this = *this * o; }

  // nonnegative exponents always work; negative ones require an invertible
  // monomial (unit coefficient, trivial sector)
  MotiveExpr pow(long e) const;

  bool operator==(const MotiveExpr& o) const;  // cross multiplication
  bool operator!=(const MotiveExpr& o) const { return !(*this == o); }

  const SectorPoly& numerator() const { return num_; }
  const std::map<int, int>& denominator() const { return den_; }

  Int euler_specialize() const;   // throws PoleAtOne
  SectorPoly chi_eq() const;      // throws NonPolynomial

  std::string str() const;  // canonical printing, grammar-compatible

  void reduce();  // cancel denominator factors dividing the numerator; idempotent

 private:
  SectorPoly num_;
  std::map<int, int> den_;  // c -> multiplicity of the factor (L^c - 1)
};

// [mu_n]: the regular representation class, equals MF(x^n) at the origin.
MotiveExpr mu_n_class(long long n);
// [GL_n] = s^{n(n-1)} prod_{c=1..n} (L^c - 1)
MotiveExpr gl_class(long long n);
MotiveExpr gl_inverse(long long n);

MotiveExpr parse_motive(const std::string& text);

}  // namespace mdt

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mdt/motive.hpp"
#include "mdt/quiver.hpp"

namespace mdt {

// Dimension vector on a fixed vertex ordering; framed variants carry the
// framing vertex in front.
using DimVector = std::vector<int>;

std::string dim_str(const DimVector& g);  // "(1,0,2)"

// Euler pairing of a quiver: <a,b> = a.b - a M b^T with M counting arrows.
// The quantum torus twists by the antisymmetrization; the plain values
// supply the diagonal weights L^{<g,g>/2}, where the two parts differ.
class EulerForm {
 public:
  explicit EulerForm(const Quiver& q);
  explicit EulerForm(std::vector<std::vector<int>> incidence);

  std::size_t rank() const { return m_.size(); }
  const std::vector<std::vector<int>>& incidence() const { return m_; }

  long plain(const DimVector& a, const DimVector& b) const;
  long skew(const DimVector& a, const DimVector& b) const;

  bool operator==(const EulerForm& o) const { return m_ == o.m_; }
  bool operator!=(const EulerForm& o) const { return !(*this == o); }

 private:
  std::vector<std::vector<int>> m_;
};

// Element of the twisted motive ring x^a x^b = s^{skew(a,b)} x^{a+b},
// truncated to the rectangle of effective classes below a fixed bound.
// Terms outside the rectangle are dropped; the rectangle spans an ideal,
// so truncated products still associate exactly.
class QTSeries {
 public:
  QTSeries(EulerForm form, DimVector bound);

  const EulerForm& form() const { return form_; }
  const DimVector& bound() const { return bound_; }
  const std::map<DimVector, MotiveExpr>& coeff() const { return c_; }

  MotiveExpr at(const DimVector& g) const;  // zero when absent
  void add_term(const DimVector& g, const MotiveExpr& c);

  bool operator==(const QTSeries& o) const;
  bool operator!=(const QTSeries& o) const { return !(*this == o); }

  QTSeries operator+(const QTSeries& o) const;
  QTSeries operator-(const QTSeries& o) const;

 private:
  EulerForm form_;
  DimVector bound_;
  std::map<DimVector, MotiveExpr> c_;
};

QTSeries qt_unit(const EulerForm& f, const DimVector& bound);
QTSeries qt_monomial(const EulerForm& f, const DimVector& bound,
                     const DimVector& g, const MotiveExpr& c);
// throws InputError when forms or bounds disagree
QTSeries qt_mul(const QTSeries& a, const QTSeries& b);
// two-sided inverse to truncation order; throws NonUnitConstant
QTSeries qt_inverse(const QTSeries& a);

// [Gr(n,k)], a polynomial in L.
MotiveExpr grassmannian(long n, long k);

// Integration of the whole representation stack in one dimension vector for
// zero potential: s^{<g,g>} L^{dim Rep(g)} prod_i [GL_{g_i}]^{-1} x^g.
QTSeries integrate_w0(const Quiver& q, const DimVector& g, const DimVector& bound);

// P(gamma) = sum_i s^{i^2} [GL_i]^{-1} x^{i gamma}: the series of a rigid
// simple object with scalar endomorphisms and no self-extensions.
QTSeries spherical_series(const EulerForm& f, const DimVector& bound,
                          const DimVector& gamma);

// New framing vertex in front, one arrow onto the old first vertex.
Quiver frame_quiver(const Quiver& q);

// Conjugating the framing monomial x^{(1,0,0)} by P((0,n,n+1)) must equal
// x^{(1,0,0)} times the Grassmannian column sum_i s^{i^2} [Gr(n,i)]
// x^{(0,in,i(n+1))}.  The form fixes the framing convention; a wrong
// convention makes the comparison fail.
bool bridgeland_conjugation_check(const EulerForm& framed, int n,
                                  const DimVector& bound);

// Slope-ordered product M of spherical factors over lhs_cuts, conjugating
// the framing atom S = s x^{(1,0,0)}: the direct series M S M^{-1} must
// match the closed-form assembly S * prod(Grassmannian columns over
// rhs_cuts), and every coefficient of the direct series must clear its GL
// denominators (else DenominatorNotCleared).
bool hn_factorization_check(const EulerForm& framed, const DimVector& bound,
                            const std::vector<std::pair<int, int>>& lhs_cuts,
                            const std::vector<std::pair<int, int>>& rhs_cuts);
bool hn_factorization_check(const EulerForm& framed, const DimVector& bound,
                            const std::vector<std::pair<int, int>>& cuts);

}  // namespace mdt

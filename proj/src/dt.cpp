#include "mdt/dt.hpp"

#include <algorithm>
#include <sstream>

namespace mdt {

namespace {

bool leq(const DimVector& a, const DimVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

DimVector sum(const DimVector& a, const DimVector& b) {
  DimVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

DimVector diff(const DimVector& a, const DimVector& b) {
  DimVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

DimVector scaled(const DimVector& g, int k) {
  DimVector r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = k * g[i];
  return r;
}

bool is_zero_vec(const DimVector& g) {
  return std::all_of(g.begin(), g.end(), [](int c) { return c == 0; });
}

void check_effective(const DimVector& g) {
  for (int c : g)
    if (c < 0) throw InputError("dimension vector has a negative component");
}

// all vectors 0 <= g <= bound in lexicographic order, so every proper
// componentwise predecessor of g comes before g
std::vector<DimVector> rectangle(const DimVector& bound) {
  std::vector<DimVector> out;
  DimVector g(bound.size(), 0);
  while (true) {
    out.push_back(g);
    std::size_t i = bound.size();
    while (i > 0 && g[i - 1] == bound[i - 1]) g[--i] = 0;
    if (i == 0) break;
    ++g[i - 1];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string dim_str(const DimVector& g) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) os << ",";
    os << g[i];
  }
  os << ")";
  return os.str();
}

EulerForm::EulerForm(const Quiver& q) {
  q.validate();
  m_.assign(q.vertices.size(), std::vector<int>(q.vertices.size(), 0));
  for (const auto& a : q.arrows) ++m_[a.src][a.tgt];
}

EulerForm::EulerForm(std::vector<std::vector<int>> incidence) : m_(std::move(incidence)) {
  for (const auto& row : m_)
    if (row.size() != m_.size()) throw InputError("incidence matrix must be square");
}

long EulerForm::plain(const DimVector& a, const DimVector& b) const {
  if (a.size() != m_.size() || b.size() != m_.size())
    throw InputError("dimension vector length does not match the pairing rank");
  long v = 0;
  for (std::size_t i = 0; i < a.size(); ++i) v += static_cast<long>(a[i]) * b[i];
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) v -= static_cast<long>(a[i]) * m_[i][j] * b[j];
  return v;
}

long EulerForm::skew(const DimVector& a, const DimVector& b) const {
  return plain(a, b) - plain(b, a);
}

QTSeries::QTSeries(EulerForm form, DimVector bound)
    : form_(std::move(form)), bound_(std::move(bound)) {
  if (bound_.size() != form_.rank())
    throw InputError("truncation bound length does not match the pairing rank");
  check_effective(bound_);
}

MotiveExpr QTSeries::at(const DimVector& g) const {
  auto it = c_.find(g);
  return it == c_.end() ? MotiveExpr::zero() : it->second;
}

void QTSeries::add_term(const DimVector& g, const MotiveExpr& c) {
  if (g.size() != bound_.size())
    throw InputError("dimension vector length does not match the truncation bound");
  check_effective(g);
  if (!leq(g, bound_)) return;
  MotiveExpr acc = at(g) + c;
  if (acc.is_zero())
    c_.erase(g);
  else
    c_[g] = acc;
}

bool QTSeries::operator==(const QTSeries& o) const {
  if (form_ != o.form_ || bound_ != o.bound_) return false;
  for (const auto& [g, c] : c_)
    if (c != o.at(g)) return false;
  for (const auto& [g, c] : o.c_)
    if (c != at(g)) return false;
  return true;
}

QTSeries QTSeries::operator+(const QTSeries& o) const {
  if (form_ != o.form_ || bound_ != o.bound_)
    throw InputError("series live in different truncated rings");
  QTSeries r = *this;
  for (const auto& [g, c] : o.c_) r.add_term(g, c);
  return r;
}

QTSeries QTSeries::operator-(const QTSeries& o) const {
  if (form_ != o.form_ || bound_ != o.bound_)
    throw InputError("series live in different truncated rings");
  QTSeries r = *this;
  for (const auto& [g, c] : o.c_) r.add_term(g, -c);
  return r;
}

QTSeries qt_unit(const EulerForm& f, const DimVector& bound) {
  QTSeries r(f, bound);
  r.add_term(DimVector(bound.size(), 0), MotiveExpr::one());
  return r;
}

QTSeries qt_monomial(const EulerForm& f, const DimVector& bound, const DimVector& g,
                     const MotiveExpr& c) {
  QTSeries r(f, bound);
  r.add_term(g, c);
  return r;
}

QTSeries qt_mul(const QTSeries& a, const QTSeries& b) {
  if (a.form() != b.form() || a.bound() != b.bound())
    throw InputError("series live in different truncated rings");
  QTSeries r(a.form(), a.bound());
  for (const auto& [g1, c1] : a.coeff())
    for (const auto& [g2, c2] : b.coeff()) {
      DimVector g = sum(g1, g2);
      if (!leq(g, a.bound())) continue;
      int tw = static_cast<int>(a.form().skew(g1, g2));
      r.add_term(g, c1 * c2 * MotiveExpr::s(tw));
    }
  return r;
}

QTSeries qt_inverse(const QTSeries& a) {
  DimVector zero(a.bound().size(), 0);
  if (a.at(zero) != MotiveExpr::one())
    throw NonUnitConstant("series inverse needs constant coefficient 1");
  QTSeries r(a.form(), a.bound());
  r.add_term(zero, MotiveExpr::one());
  for (const DimVector& g : rectangle(a.bound())) {
    if (is_zero_vec(g)) continue;
    MotiveExpr acc = MotiveExpr::zero();
    for (const auto& [h, c] : a.coeff()) {
      if (is_zero_vec(h) || !leq(h, g)) continue;
      DimVector rest = diff(g, h);
      int tw = static_cast<int>(a.form().skew(h, rest));
      acc += c * r.at(rest) * MotiveExpr::s(tw);
    }
    if (!acc.is_zero()) r.add_term(g, -acc);
  }
  return r;
}

MotiveExpr grassmannian(long n, long k) {
  if (n < 0 || k < 0) throw InputError("grassmannian needs nonnegative arguments");
  if (k > n) return MotiveExpr::zero();
  std::vector<MotiveExpr> row{MotiveExpr::one()};
  for (long i = 1; i <= n; ++i) {
    std::vector<MotiveExpr> next(static_cast<std::size_t>(i) + 1);
    next[0] = MotiveExpr::one();
    next[static_cast<std::size_t>(i)] = MotiveExpr::one();
    for (long j = 1; j < i; ++j)
      next[static_cast<std::size_t>(j)] =
          row[static_cast<std::size_t>(j - 1)] +
          MotiveExpr::L(static_cast<int>(j)) * row[static_cast<std::size_t>(j)];
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

QTSeries integrate_w0(const Quiver& q, const DimVector& g, const DimVector& bound) {
  if (!q.potential.empty())
    throw InputError("integration of the whole stack needs zero potential");
  if (g.size() != q.vertices.size())
    throw InputError("dimension vector length does not match the quiver");
  check_effective(g);
  EulerForm f(q);
  long rep = 0;
  for (const auto& a : q.arrows) rep += static_cast<long>(g[a.src]) * g[a.tgt];
  MotiveExpr c = MotiveExpr::s(static_cast<int>(f.plain(g, g))) * MotiveExpr::L(static_cast<int>(rep));
  for (int d : g) c *= gl_inverse(d);
  return qt_monomial(f, bound, g, c);
}

QTSeries spherical_series(const EulerForm& f, const DimVector& bound, const DimVector& gamma) {
  check_effective(gamma);
  if (is_zero_vec(gamma)) throw InputError("spherical class must be nonzero");
  QTSeries r(f, bound);
  for (int i = 0;; ++i) {
    DimVector ig = scaled(gamma, i);
    if (!leq(ig, bound)) break;
    r.add_term(ig, MotiveExpr::s(i * i) * gl_inverse(i));
  }
  return r;
}

Quiver frame_quiver(const Quiver& q) {
  q.validate();
  if (q.vertex_index("inf") >= 0) throw InputError("quiver already has a vertex named inf");
  if (q.arrow_index("f") >= 0) throw InputError("quiver already has an arrow named f");
  Quiver r;
  r.vertices.push_back("inf");
  r.vertices.insert(r.vertices.end(), q.vertices.begin(), q.vertices.end());
  for (const auto& a : q.arrows) r.arrows.push_back({a.name, a.src + 1, a.tgt + 1});
  r.arrows.push_back({"f", 0, 1});
  r.potential = q.potential;
  r.validate();
  return r;
}

namespace {

// closed form for P(gamma) x^d P(gamma)^{-1} = x^d * column: the commutation
// ratio is L^{skew(gamma,d)}, so the column is the Grassmannian generating
// polynomial of that pairing
QTSeries grassmann_column(const EulerForm& f, const DimVector& bound, const DimVector& gamma,
                          const DimVector& delta) {
  long n = f.skew(gamma, delta);
  QTSeries col = qt_unit(f, bound);
  // a nonpositive pairing contributes nothing beyond the unit term
  for (int i = 1; i <= n; ++i)
    col.add_term(scaled(gamma, i), MotiveExpr::s(i * i) * grassmannian(n, i));
  return col;
}

std::vector<std::pair<int, int>> slope_sorted(std::vector<std::pair<int, int>> cuts) {
  for (const auto& [a, b] : cuts)
    if (a < 0 || b < 0 || (a == 0 && b == 0))
      throw InputError("slope cut must be a nonzero effective pair");
  std::stable_sort(cuts.begin(), cuts.end(), [](const auto& p, const auto& q) {
    return static_cast<long>(p.first) * (q.first + q.second) <
           static_cast<long>(q.first) * (p.first + p.second);
  });
  return cuts;
}

}  // namespace

bool bridgeland_conjugation_check(const EulerForm& framed, int n, const DimVector& bound) {
  if (framed.rank() != 3) throw InputError("conjugation check needs a framed rank-3 lattice");
  if (n < 0) throw InputError("conjugation check needs n >= 0");
  DimVector gamma{0, n, n + 1};
  DimVector delta{1, 0, 0};
  QTSeries p = spherical_series(framed, bound, gamma);
  QTSeries lhs = qt_mul(qt_mul(p, qt_monomial(framed, bound, delta, MotiveExpr::one())),
                        qt_inverse(p));
  QTSeries rhs = qt_mul(qt_monomial(framed, bound, delta, MotiveExpr::one()),
                        grassmann_column(framed, bound, gamma, delta));
  return lhs == rhs;
}

bool hn_factorization_check(const EulerForm& framed, const DimVector& bound,
                            const std::vector<std::pair<int, int>>& lhs_cuts,
                            const std::vector<std::pair<int, int>>& rhs_cuts) {
  if (framed.rank() != 3) throw InputError("factorization check needs a framed rank-3 lattice");
  DimVector delta{1, 0, 0};
  QTSeries s_atom = qt_monomial(framed, bound, delta, MotiveExpr::s(1));

  QTSeries m = qt_unit(framed, bound);
  for (const auto& [a, b] : slope_sorted(lhs_cuts))
    m = qt_mul(m, spherical_series(framed, bound, DimVector{0, a, b}));
  QTSeries direct = qt_mul(qt_mul(m, s_atom), qt_inverse(m));
  for (const auto& [g, c] : direct.coeff())
    if (!c.denominator().empty())
      throw DenominatorNotCleared("framed series coefficient at " + dim_str(g) +
                                  " retains a GL denominator");

  QTSeries closed = s_atom;
  for (const auto& [a, b] : slope_sorted(rhs_cuts))
    closed = qt_mul(closed, grassmann_column(framed, bound, DimVector{0, a, b}, delta));
  return direct == closed;
}

bool hn_factorization_check(const EulerForm& framed, const DimVector& bound,
                            const std::vector<std::pair<int, int>>& cuts) {
  return hn_factorization_check(framed, bound, cuts, cuts);
}

}  // namespace mdt

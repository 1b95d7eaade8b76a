#include "mdt/twisted.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace mdt {

namespace {

int vertex_of(const TwObject& t, int idx) { return t.tau[idx].first; }

std::vector<Rat> to_dense(const std::map<int, Rat>& v, int n) {
  std::vector<Rat> out(n, Rat(0));
  for (const auto& [i, c] : v) out[i] = c;
  return out;
}

std::map<int, Rat> to_sparse(const std::vector<Rat>& v) {
  std::map<int, Rat> out;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out[static_cast<int>(i)] = v[i];
  return out;
}

// coordinates of target in the span of cols, or nullopt
std::optional<std::vector<Rat>> solve_in_span(const std::vector<std::vector<Rat>>& cols,
                                              const std::vector<Rat>& target) {
  size_t n = target.size(), m = cols.size();
  std::vector<std::vector<Rat>> aug(n, std::vector<Rat>(m + 1, Rat(0)));
  for (size_t j = 0; j < m; ++j)
    for (size_t i = 0; i < n; ++i) aug[i][j] = cols[j][i];
  for (size_t i = 0; i < n; ++i) aug[i][m] = target[i];
  std::vector<int> pivot_of_col(m, -1);
  size_t row = 0;
  for (size_t col = 0; col < m && row < n; ++col) {
    size_t p = row;
    while (p < n && aug[p][col] == 0) ++p;
    if (p == n) continue;
    std::swap(aug[p], aug[row]);
    Rat inv = 1 / aug[row][col];
    for (size_t j = col; j <= m; ++j) aug[row][j] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == row || aug[r][col] == 0) continue;
      Rat f = aug[r][col];
      for (size_t j = col; j <= m; ++j) aug[r][j] -= f * aug[row][j];
    }
    pivot_of_col[col] = static_cast<int>(row);
    ++row;
  }
  for (size_t r = row; r < n; ++r)
    if (aug[r][m] != 0) return std::nullopt;
  // with pivots normalized, read coordinates off the pivot rows
  std::vector<Rat> coords(m, Rat(0));
  for (size_t col = 0; col < m; ++col)
    if (pivot_of_col[col] >= 0) coords[col] = aug[pivot_of_col[col]][m];
  // verify (non-pivot columns may carry free parameters we set to zero)
  std::vector<Rat> check(n, Rat(0));
  for (size_t j = 0; j < m; ++j)
    for (size_t i = 0; i < n; ++i) check[i] += coords[j] * cols[j][i];
  for (size_t i = 0; i < n; ++i)
    if (check[i] != target[i]) return std::nullopt;
  return coords;
}

bool independent_of(const std::vector<std::vector<Rat>>& cols, const std::vector<Rat>& v) {
  if (std::all_of(v.begin(), v.end(), [](const Rat& c) { return c == 0; })) return false;
  return !solve_in_span(cols, v).has_value();
}

// kernel basis of the matrix with the given columns, via reduced echelon
// form and free-variable parametrization
std::vector<std::vector<Rat>> kernel_basis(const std::vector<std::vector<Rat>>& cols, int nrows) {
  size_t m = cols.size();
  std::vector<std::vector<Rat>> a(nrows, std::vector<Rat>(m, Rat(0)));
  for (size_t j = 0; j < m; ++j)
    for (int i = 0; i < nrows; ++i) a[i][j] = cols[j][i];
  std::vector<int> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < m && row < static_cast<size_t>(nrows); ++col) {
    size_t p = row;
    while (p < static_cast<size_t>(nrows) && a[p][col] == 0) ++p;
    if (p == static_cast<size_t>(nrows)) continue;
    std::swap(a[p], a[row]);
    Rat inv = 1 / a[row][col];
    for (size_t j = col; j < m; ++j) a[row][j] *= inv;
    for (size_t r = 0; r < static_cast<size_t>(nrows); ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (size_t j = col; j < m; ++j) a[r][j] -= f * a[row][j];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  std::vector<bool> is_pivot(m, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rat>> out;
  for (size_t f = 0; f < m; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> x(m, Rat(0));
    x[f] = 1;
    for (size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = -a[r][f];
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

bool Mat::is_zero() const {
  for (const auto& e : ent)
    if (!elem_zero(e)) return false;
  return true;
}

bool Mat::operator==(const Mat& o) const {
  if (rows != o.rows || cols != o.cols) return false;
  for (size_t i = 0; i < ent.size(); ++i)
    if (!elem_zero(elem_add(ent[i], elem_neg(o.ent[i])))) return false;
  return true;
}

Mat mat_add(const Mat& a, const Mat& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw InputError("matrix shape mismatch");
  Mat out(a.rows, a.cols);
  for (size_t i = 0; i < out.ent.size(); ++i) out.ent[i] = elem_add(a.ent[i], b.ent[i]);
  return out;
}

TwObject generator(int vertex, int shift) {
  TwObject t;
  t.tau = {{vertex, shift}};
  t.a = Mat(1, 1);
  return t;
}

TwObject shift_tw(TwObject t, int k) {
  for (auto& [v, s] : t.tau) s += k;
  return t;
}

TwObject direct_sum(const TwObject& x, const TwObject& y) {
  TwObject t;
  t.tau = x.tau;
  t.tau.insert(t.tau.end(), y.tau.begin(), y.tau.end());
  int nx = x.size();
  t.a = Mat(t.size(), t.size());
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j) t.a.at(i, j) = x.a.at(i, j);
  for (int i = 0; i < y.size(); ++i)
    for (int j = 0; j < y.size(); ++j) t.a.at(nx + i, nx + j) = y.a.at(i, j);
  return t;
}

int effective_degree(const KoszulAlgebra& k, const TwObject& tgt, const TwObject& src, int row,
                     int col, int basis_id) {
  return k.degree(basis_id) + src.tau[col].second - tgt.tau[row].second;
}

Mat eval_b_mat(const KoszulAlgebra& k, const std::vector<Mat>& args) {
  if (args.empty()) throw InputError("empty matrix product");
  for (size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i].cols != args[i + 1].rows) throw InputError("matrix shape mismatch");
  Mat out(args.front().rows, args.back().cols);
  std::vector<Element> chain(args.size());
  std::function<void(size_t, int, int)> rec = [&](size_t pos, int cur, int i) {
    if (pos == args.size()) {
      out.at(i, cur) = elem_add(out.at(i, cur), k.eval_b(chain));
      return;
    }
    for (int nxt = 0; nxt < args[pos].cols; ++nxt) {
      const Element& e = args[pos].at(cur, nxt);
      if (elem_zero(e)) continue;
      chain[pos] = e;
      rec(pos + 1, nxt, i);
    }
  };
  for (int i = 0; i < out.rows; ++i) rec(0, i, i);
  return out;
}

Mat mc_residual(const KoszulAlgebra& k, const Mat& a) {
  if (a.rows != a.cols) throw InputError("matrix shape mismatch");
  Mat out(a.rows, a.cols);
  int top = std::max(1, k.max_arity());
  for (int n = 1; n <= top; ++n)
    out = mat_add(out, eval_b_mat(k, std::vector<Mat>(n, a)));
  return out;
}

namespace {

// A matrix together with the row/column shift data of the hom space it
// lives in; entries of such a matrix carry the operator degree
// shift(col) - shift(row) on top of the degree of the algebra element.
struct ChainMat {
  const Mat* m;
  const std::vector<std::pair<int, int>>* rtau;
  const std::vector<std::pair<int, int>>* ctau;
};

// eval_b over index chains with the shift-transfer signs: a term whose
// entries sit in slots of operator degree g_1..g_n picks up
// (-1)^{sum_k g_k (1 + |x_1| - 1 + ... + |x_{k-1}| - 1)}.  All signs are
// +1 when every participating generator carries the same shift, which
// makes this agree with eval_b_mat on unshifted objects.
Mat eval_chain_signed(const KoszulAlgebra& k, const std::vector<ChainMat>& args) {
  if (args.empty()) throw InputError("empty matrix product");
  for (size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i].m->cols != args[i + 1].m->rows) throw InputError("matrix shape mismatch");
  Mat out(args.front().m->rows, args.back().m->cols);
  std::vector<Element> chain(args.size());
  int row = 0;
  std::function<void(size_t, int, int, int)> rec = [&](size_t pos, int cur, int sg, int pre) {
    if (pos == args.size()) {
      Element v = k.eval_b(chain);
      if (sg) v = elem_neg(v);
      out.at(row, cur) = elem_add(out.at(row, cur), v);
      return;
    }
    const ChainMat& cm = args[pos];
    for (int nxt = 0; nxt < cm.m->cols; ++nxt) {
      const Element& e = cm.m->at(cur, nxt);
      if (elem_zero(e)) continue;
      int g = ((*cm.ctau)[nxt].second - (*cm.rtau)[cur].second) & 1;
      for (const auto& [x, c] : e) {
        if (c.is_zero()) continue;
        chain[pos] = Element{{x, c}};
        rec(pos + 1, nxt, sg ^ (g & (1 ^ pre)), (pre + k.degree(x) + 1) & 1);
      }
    }
  };
  for (row = 0; row < out.rows; ++row) rec(0, row, 0, 0);
  return out;
}

}  // namespace

Mat mc_residual(const KoszulAlgebra& k, const TwObject& t) {
  if (t.a.rows != t.a.cols) throw InputError("matrix shape mismatch");
  Mat out(t.a.rows, t.a.cols);
  int top = std::max(1, k.max_arity());
  for (int n = 1; n <= top; ++n)
    out = mat_add(out, eval_chain_signed(k, std::vector<ChainMat>(n, {&t.a, &t.tau, &t.tau})));
  return out;
}

void validate_twisted(const KoszulAlgebra& k, const TwObject& t) {
  int n = t.size();
  if (t.a.rows != n || t.a.cols != n) throw InputError("structure matrix shape mismatch");
  for (const auto& [v, s] : t.tau)
    if (v < 0 || v >= static_cast<int>(k.quiver().vertices.size()))
      throw InputError("generator references an unknown vertex");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Element& e = t.a.at(i, j);
      if (elem_zero(e)) continue;
      if (i >= j) throw InputError("structure matrix is not strictly upper-triangular");
      for (const auto& [x, c] : e) {
        if (k.src(x) != vertex_of(t, j) || k.tgt(x) != vertex_of(t, i))
          throw InputError("structure entry incompatible with generator vertices");
        if (effective_degree(k, t, t, i, j, x) != 1)
          throw InputError("structure entry of wrong effective degree");
      }
    }
  if (!mc_residual(k, t).is_zero()) throw InputError("structure matrix fails the flatness equation");
}

Mat tw_eval(const KoszulAlgebra& k, const std::vector<const TwObject*>& objs,
            const std::vector<Mat>& mats) {
  size_t t = mats.size();
  if (t == 0 || objs.size() != t + 1) throw InputError("composition shape mismatch");
  Mat out(objs.front()->size(), objs.back()->size());
  int top = k.max_arity();
  std::vector<int> caps(t + 1);
  for (size_t s = 0; s <= t; ++s)
    caps[s] = objs[s]->a.is_zero() ? 0 : objs[s]->size() - 1;
  std::vector<ChainMat> args;
  std::function<void(size_t, int)> rec = [&](size_t seg, int used) {
    if (seg == t + 1) {
      out = mat_add(out, eval_chain_signed(k, args));
      return;
    }
    for (int p = 0; p <= caps[seg] && static_cast<int>(t) + used + p <= top; ++p) {
      for (int q = 0; q < p; ++q) args.push_back({&objs[seg]->a, &objs[seg]->tau, &objs[seg]->tau});
      if (seg < t) {
        args.push_back({&mats[seg], &objs[seg]->tau, &objs[seg + 1]->tau});
        rec(seg + 1, used + p);
        args.pop_back();
      } else {
        rec(seg + 1, used + p);
      }
      for (int q = 0; q < p; ++q) args.pop_back();
    }
  };
  if (static_cast<int>(t) <= top) rec(0, 0);
  return out;
}

TwMorphism tw_compose(const KoszulAlgebra& k, const std::vector<TwMorphism>& ms) {
  if (ms.empty()) throw InputError("empty composition");
  std::vector<const TwObject*> objs;
  std::vector<Mat> mats;
  int deg = 2 - static_cast<int>(ms.size());
  objs.push_back(&ms.front().tgt);
  for (size_t i = 0; i < ms.size(); ++i) {
    if (i + 1 < ms.size() && !(ms[i].src == ms[i + 1].tgt))
      throw InputError("morphisms do not compose");
    objs.push_back(&ms[i].src);
    mats.push_back(ms[i].mat);
    deg += ms[i].degree;
  }
  return {ms.back().src, ms.front().tgt, tw_eval(k, objs, mats), deg};
}

Mat tw_d(const KoszulAlgebra& k, const TwObject& t, const Mat& phi) {
  return tw_eval(k, {&t, &t}, {phi});
}

TwObject cone(const KoszulAlgebra& k, const TwMorphism& m) {
  if (m.degree != 0) throw NotClosed("cone needs a degree-zero morphism");
  if (!tw_eval(k, {&m.tgt, &m.src}, {m.mat}).is_zero())
    throw NotClosed("cone needs a closed morphism");
  TwObject out;
  out.tau = m.tgt.tau;
  for (auto [v, s] : m.src.tau) out.tau.push_back({v, s + 1});
  int n1 = m.tgt.size(), n2 = m.src.size();
  out.a = Mat(n1 + n2, n1 + n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) out.a.at(i, j) = m.tgt.a.at(i, j);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) out.a.at(i, n1 + j) = m.mat.at(i, j);
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < n2; ++j) out.a.at(n1 + i, n1 + j) = m.src.a.at(i, j);
  return out;
}

TwObject extension_total(const KoszulAlgebra& k, const TwObject& sub, const TwObject& quot,
                         const Mat& alpha) {
  if (alpha.rows != sub.size() || alpha.cols != quot.size())
    throw InputError("extension class shape mismatch");
  for (int i = 0; i < alpha.rows; ++i)
    for (int j = 0; j < alpha.cols; ++j)
      for (const auto& [x, c] : alpha.at(i, j)) {
        if (k.src(x) != quot.tau[j].first || k.tgt(x) != sub.tau[i].first)
          throw InputError("extension entry incompatible with generator vertices");
        if (k.degree(x) + quot.tau[j].second - sub.tau[i].second != 1)
          throw InputError("extension class of wrong effective degree");
      }
  if (!tw_eval(k, {&sub, &quot}, {alpha}).is_zero())
    throw NotClosed("extension class is not closed");
  TwObject out = direct_sum(sub, quot);
  int n1 = sub.size();
  for (int i = 0; i < alpha.rows; ++i)
    for (int j = 0; j < alpha.cols; ++j) out.a.at(i, n1 + j) = alpha.at(i, j);
  return out;
}

Poly mat_pairing(const KoszulAlgebra& k, const Mat& p, const Mat& m) {
  if (p.rows != m.cols || p.cols != m.rows) throw InputError("pairing shape mismatch");
  Poly out;
  for (int i = 0; i < p.rows; ++i)
    for (int j = 0; j < p.cols; ++j) out += elem_pairing(k, p.at(i, j), m.at(j, i));
  return out;
}

Poly tw_pairing(const KoszulAlgebra& k, const TwObject& t, const Mat& p, const Mat& m) {
  int n = t.size();
  if (p.rows != n || p.cols != n || m.rows != n || m.cols != n)
    throw InputError("pairing shape mismatch");
  Poly out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Element sp;
      for (const auto& [x, c] : p.at(i, j)) {
        if (c.is_zero()) continue;
        int ti = t.tau[i].second, tj = t.tau[j].second;
        int sg = (ti + (ti + tj + 1) * (k.degree(x) - 1)) & 1;
        sp[x] = sg ? -c : c;
      }
      out += elem_pairing(k, sp, m.at(j, i));
    }
  return out;
}

Poly potential_value_mat(const KoszulAlgebra& k, const Mat& m) {
  if (m.rows != m.cols) throw InputError("matrix shape mismatch");
  Poly out;
  for (int n = 2; n <= k.max_arity() + 1; ++n)
    out += mat_pairing(k, eval_b_mat(k, std::vector<Mat>(n - 1, m)), m).scale(Rat(1, n));
  return out;
}

Poly twisted_potential(const KoszulAlgebra& k, const TwObject& t, const Mat& a) {
  if (a.rows != t.size() || a.cols != t.size()) throw InputError("matrix shape mismatch");
  Poly out;
  for (int n = 2; n <= k.max_arity() + 1; ++n) {
    std::vector<const TwObject*> objs(n, &t);
    std::vector<Mat> mats(n - 1, a);
    out += mat_pairing(k, tw_eval(k, objs, mats), a).scale(Rat(1, n));
  }
  return out;
}

std::vector<EndSlot> degree_one_slots(const KoszulAlgebra& k, const TwObject& t) {
  std::vector<EndSlot> out;
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j)
      for (int x = 0; x < k.size(); ++x) {
        if (k.src(x) != vertex_of(t, j) || k.tgt(x) != vertex_of(t, i)) continue;
        if (effective_degree(k, t, t, i, j, x) != 1) continue;
        out.push_back({i, j, x});
      }
  return out;
}

Mat slot_matrix(const TwObject& t, const std::vector<EndSlot>& slots,
                const std::vector<Poly>& coeffs) {
  if (slots.size() != coeffs.size()) throw InputError("slot count mismatch");
  Mat out(t.size(), t.size());
  for (size_t s = 0; s < slots.size(); ++s)
    if (!coeffs[s].is_zero())
      out.at(slots[s].row, slots[s].col)[slots[s].basis] += coeffs[s];
  return out;
}

std::optional<std::string> shifted_potential_check(const KoszulAlgebra& k, const TwObject& t,
                                                   int nsamples, unsigned seed) {
  auto slots = degree_one_slots(k, t);
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  for (int s = 0; s < nsamples; ++s) {
    std::vector<Poly> coeffs;
    coeffs.reserve(slots.size());
    for (size_t i = 0; i < slots.size(); ++i)
      coeffs.push_back(Poly::constant(rat(num(gen), den(gen))));
    Mat a = slot_matrix(t, slots, coeffs);
    Poly lhs = twisted_potential(k, t, a);
    Poly rhs = potential_value_mat(k, mat_add(t.a, a));
    if (lhs != rhs) {
      std::ostringstream os;
      os << "potential shift identity fails on sample " << s << ": " << lhs.str()
         << " != " << rhs.str();
      return os.str();
    }
  }
  return std::nullopt;
}

int FiniteAinfty::max_arity() const {
  int m = 0;
  for (const auto& [key, val] : table) m = std::max(m, static_cast<int>(key.size()));
  return m;
}

std::map<int, Rat> FiniteAinfty::eval_basis(const std::vector<int>& args) const {
  auto it = table.find(args);
  if (it == table.end()) return {};
  return it->second;
}

std::map<int, Rat> FiniteAinfty::eval(const std::vector<std::map<int, Rat>>& args) const {
  std::map<int, Rat> out;
  std::vector<int> key(args.size());
  std::function<void(size_t, const Rat&)> rec = [&](size_t i, const Rat& c) {
    if (i == args.size()) {
      auto it = table.find(key);
      if (it == table.end()) return;
      for (const auto& [id, v] : it->second) out[id] += c * v;
      return;
    }
    for (const auto& [id, v] : args[i]) {
      if (v == 0) continue;
      key[i] = id;
      rec(i + 1, c * v);
    }
  };
  rec(0, Rat(1));
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

Rat FiniteAinfty::pair(int u, int v) const {
  auto it = pairing.find({u, v});
  return it == pairing.end() ? Rat(0) : it->second;
}

std::optional<std::string> FiniteAinfty::check_stasheff(int nmax) const {
  int bound = std::min(nmax, 2 * max_arity() - 1);
  std::vector<int> t;
  std::function<std::optional<std::string>(int)> walk =
      [&](int n) -> std::optional<std::string> {
    if (static_cast<int>(t.size()) == n) {
      std::map<int, Rat> res;
      for (int b = 1; b <= n; ++b)
        for (int a = 0; a + b <= n; ++a) {
          auto inner = eval_basis(std::vector<int>(t.begin() + a, t.begin() + a + b));
          if (inner.empty()) continue;
          std::vector<std::map<int, Rat>> outer;
          for (int q = 0; q < a; ++q) outer.push_back({{t[q], Rat(1)}});
          outer.push_back(inner);
          for (int q = a + b; q < n; ++q) outer.push_back({{t[q], Rat(1)}});
          auto term = eval(outer);
          int exp = 0;
          for (int q = 0; q < a; ++q) exp += deg[t[q]] - 1;
          for (const auto& [id, c] : term) res[id] += (exp % 2 != 0) ? Rat(-c) : c;
        }
      for (const auto& [id, c] : res)
        if (c != 0) {
          std::ostringstream os;
          os << "associativity relation fails at (";
          for (size_t q = 0; q < t.size(); ++q) os << (q ? ", " : "") << names[t[q]];
          os << ")";
          return os.str();
        }
      return std::nullopt;
    }
    for (int x = 0; x < size(); ++x) {
      t.push_back(x);
      if (auto bad = walk(n)) return bad;
      t.pop_back();
    }
    return std::nullopt;
  };
  for (int n = 1; n <= bound; ++n) {
    t.clear();
    if (auto bad = walk(n)) return bad;
  }
  return std::nullopt;
}

Poly FiniteAinfty::potential_series(const std::vector<int>& gens) const {
  Poly out;
  if (gens.empty()) return out;
  int g = static_cast<int>(gens.size());
  for (int n = 2; n <= max_arity() + 1; ++n) {
    std::vector<int> pick(n, 0);
    while (true) {
      std::vector<int> tuple(n);
      for (int q = 0; q < n; ++q) tuple[q] = gens[pick[q]];
      auto head = eval_basis(std::vector<int>(tuple.begin(), tuple.end() - 1));
      Rat c = 0;
      for (const auto& [id, v] : head) c += v * pair(id, tuple.back());
      if (c != 0) {
        Poly mono = Poly::constant(c / n);
        for (int q = 0; q < n; ++q) mono *= Poly::var(pick[q]);
        out += mono;
      }
      int q = n - 1;
      while (q >= 0 && pick[q] == g - 1) pick[q--] = 0;
      if (q < 0) break;
      ++pick[q];
    }
  }
  return out;
}

FiniteAinfty end_algebra(const KoszulAlgebra& k, const TwObject& t) {
  FiniteAinfty out;
  std::vector<EndSlot> slots;
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j)
      for (int x = 0; x < k.size(); ++x) {
        if (k.src(x) != vertex_of(t, j) || k.tgt(x) != vertex_of(t, i)) continue;
        slots.push_back({i, j, x});
        out.deg.push_back(effective_degree(k, t, t, i, j, x));
        std::ostringstream nm;
        nm << k.name(x) << "(" << i + 1 << "," << j + 1 << ")";
        out.names.push_back(nm.str());
      }
  int n = static_cast<int>(slots.size());
  auto slot_mat = [&](int s) {
    Mat m(t.size(), t.size());
    m.at(slots[s].row, slots[s].col)[slots[s].basis] = Poly::constant(1);
    return m;
  };
  // pairing: transposed blocks, underlying pairing of the algebra
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (slots[u].row != slots[v].col || slots[u].col != slots[v].row) continue;
      Rat c = k.pairing(slots[u].basis, slots[v].basis);
      if (c != 0) out.pairing[{u, v}] = c;
    }
  // structure constants from composition with insertions
  std::vector<int> tuple;
  std::function<void(int)> build = [&](int arity) {
    if (static_cast<int>(tuple.size()) == arity) {
      std::vector<const TwObject*> objs(arity + 1, &t);
      std::vector<Mat> mats;
      mats.reserve(arity);
      for (int s : tuple) mats.push_back(slot_mat(s));
      Mat r = tw_eval(k, objs, mats);
      std::map<int, Rat> entry;
      for (int s = 0; s < n; ++s) {
        const Element& e = r.at(slots[s].row, slots[s].col);
        auto it = e.find(slots[s].basis);
        if (it == e.end()) continue;
        if (!it->second.is_constant())
          throw InputError("endomorphism table needs numeric structure matrices");
        Rat c = it->second.constant_term();
        if (c != 0) entry[s] = c;
      }
      if (!entry.empty()) out.table[tuple] = std::move(entry);
      return;
    }
    for (int s = 0; s < n; ++s) {
      if (!tuple.empty() && slots[tuple.back()].col != slots[s].row) continue;
      tuple.push_back(s);
      build(arity);
      tuple.pop_back();
    }
  };
  for (int arity = 1; arity <= k.max_arity(); ++arity) {
    tuple.clear();
    build(arity);
  }
  return out;
}

TransferResult homotopy_transfer(const FiniteAinfty& a, int cutoff) {
  int n = a.size();
  std::vector<std::vector<Rat>> dcol(n);
  for (int j = 0; j < n; ++j) dcol[j] = to_dense(a.eval_basis({j}), n);

  std::vector<int> degrees_sorted;
  for (int d : a.deg)
    if (std::find(degrees_sorted.begin(), degrees_sorted.end(), d) == degrees_sorted.end())
      degrees_sorted.push_back(d);
  std::sort(degrees_sorted.begin(), degrees_sorted.end());

  std::vector<int> v1;                       // pivot basis indices
  std::vector<std::vector<Rat>> v2;          // their images under b1
  std::vector<std::vector<Rat>> hreps;       // homology representatives
  for (int d : degrees_sorted) {
    std::vector<int> idx;
    for (int j = 0; j < n; ++j)
      if (a.deg[j] == d) idx.push_back(j);
    std::vector<std::vector<Rat>> span_here;
    for (int c : idx) {
      if (independent_of(span_here, dcol[c])) {
        span_here.push_back(dcol[c]);
        v1.push_back(c);
        v2.push_back(dcol[c]);
      }
    }
    // kernel inside this degree, as vectors in the ambient space
    std::vector<std::vector<Rat>> cols_here;
    for (int c : idx) cols_here.push_back(dcol[c]);
    auto ker = kernel_basis(cols_here, n);
    std::vector<std::vector<Rat>> gauge;  // image landing in this degree
    for (size_t q = 0; q < v1.size(); ++q)
      if (a.deg[v1[q]] == d - 1) gauge.push_back(v2[q]);
    for (const auto& kv : ker) {
      std::vector<Rat> amb(n, Rat(0));
      for (size_t q = 0; q < idx.size(); ++q) amb[idx[q]] = kv[q];
      if (independent_of(gauge, amb)) {
        gauge.push_back(amb);
        hreps.push_back(amb);
      }
    }
  }

  // basis (v2 | hreps | e_c for c in v1) of the whole space
  std::vector<std::vector<Rat>> full = v2;
  for (const auto& hv : hreps) full.push_back(hv);
  for (int c : v1) {
    std::vector<Rat> e(n, Rat(0));
    e[c] = 1;
    full.push_back(e);
  }
  int nv = static_cast<int>(v2.size()), nh = static_cast<int>(hreps.size());
  auto coords = [&](const std::vector<Rat>& v) {
    auto c = solve_in_span(full, v);
    if (!c) throw InputError("transfer splitting failed");
    return *c;
  };
  auto proj_h = [&](const std::vector<Rat>& v) {
    auto c = coords(v);
    return std::vector<Rat>(c.begin() + nv, c.begin() + nv + nh);
  };
  auto htpy = [&](const std::vector<Rat>& v) {
    auto c = coords(v);
    std::vector<Rat> out(n, Rat(0));
    for (int q = 0; q < nv; ++q) out[v1[q]] += c[q];
    return out;
  };

  std::map<std::vector<int>, std::vector<Rat>> qmemo;
  std::function<std::vector<Rat>(const std::vector<int>&)> qval;
  std::function<std::vector<Rat>(const std::vector<int>&)> hq =
      [&](const std::vector<int>& tuple) {
        if (tuple.size() == 1) return hreps[tuple[0]];
        return htpy(qval(tuple));
      };
  qval = [&](const std::vector<int>& tuple) -> std::vector<Rat> {
    if (auto it = qmemo.find(tuple); it != qmemo.end()) return it->second;
    int len = static_cast<int>(tuple.size());
    std::vector<Rat> acc(n, Rat(0));
    // all splittings of the tuple into k >= 2 consecutive parts
    std::vector<std::vector<int>> parts;
    std::function<void(int)> split = [&](int pos) {
      if (pos == len) {
        if (parts.size() < 2) return;
        std::vector<std::map<int, Rat>> args;
        args.reserve(parts.size());
        for (const auto& p : parts) args.push_back(to_sparse(hq(p)));
        auto val = a.eval(args);
        for (const auto& [id, c] : val) acc[id] += c;
        return;
      }
      for (int end = pos + 1; end <= len; ++end) {
        parts.push_back(std::vector<int>(tuple.begin() + pos, tuple.begin() + end));
        split(end);
        parts.pop_back();
      }
    };
    split(0);
    qmemo[tuple] = acc;
    return acc;
  };

  TransferResult res;
  res.minimal.deg.resize(nh);
  for (int hgen = 0; hgen < nh; ++hgen) {
    int d = 0;
    for (int q = 0; q < n; ++q)
      if (hreps[hgen][q] != 0) d = a.deg[q];
    res.minimal.deg[hgen] = d;
    res.minimal.names.push_back("h" + std::to_string(hgen));
    res.inclusion.push_back(to_sparse(hreps[hgen]));
  }
  for (int u = 0; u < nh; ++u)
    for (int v = 0; v < nh; ++v) {
      Rat c = 0;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (hreps[u][x] == 0 || hreps[v][y] == 0) continue;
          c += hreps[u][x] * hreps[v][y] * a.pair(x, y);
        }
      if (c != 0) res.minimal.pairing[{u, v}] = c;
    }
  std::vector<int> tuple;
  std::function<void(int)> emit = [&](int arity) {
    if (static_cast<int>(tuple.size()) == arity) {
      auto ph = proj_h(qval(tuple));
      std::map<int, Rat> entry;
      for (int q = 0; q < nh; ++q)
        if (ph[q] != 0) entry[q] = ph[q];
      if (!entry.empty()) res.minimal.table[tuple] = std::move(entry);
      return;
    }
    for (int g = 0; g < nh; ++g) {
      tuple.push_back(g);
      emit(arity);
      tuple.pop_back();
    }
  };
  for (int arity = 2; arity <= cutoff; ++arity) {
    tuple.clear();
    emit(arity);
  }
  return res;
}

SplitResult cyclic_split(const Poly& w, std::vector<int> vvars, int order) {
  if (!w.truncate(1).is_zero()) throw InputError("potential needs vanishing constant and linear part");
  Poly quad = w.homogeneous(2);
  auto in_v = [&](int var) { return std::find(vvars.begin(), vvars.end(), var) != vvars.end(); };
  for (int var : quad.vars())
    if (!in_v(var)) throw InputError("quadratic part meets a minimal direction");
  int m = static_cast<int>(vvars.size());
  // symmetric coefficient matrix of the quadratic part
  std::vector<std::vector<Rat>> s(m, std::vector<Rat>(m, Rat(0)));
  for (const auto& [mono, c] : quad.terms()) {
    std::vector<std::pair<int, int>> f(mono.begin(), mono.end());
    if (f.size() == 1) {
      int a = static_cast<int>(std::find(vvars.begin(), vvars.end(), f[0].first) - vvars.begin());
      s[a][a] = c;
    } else {
      int a = static_cast<int>(std::find(vvars.begin(), vvars.end(), f[0].first) - vvars.begin());
      int b = static_cast<int>(std::find(vvars.begin(), vvars.end(), f[1].first) - vvars.begin());
      s[a][b] = s[b][a] = c / 2;
    }
  }
  // invert s
  std::vector<std::vector<Rat>> inv(m, std::vector<Rat>(m, Rat(0)));
  {
    auto aug = s;
    for (int i = 0; i < m; ++i) inv[i][i] = 1;
    for (int col = 0; col < m; ++col) {
      int p = col;
      while (p < m && aug[p][col] == 0) ++p;
      if (p == m) throw Degenerate("quadratic part is degenerate on the splitting directions");
      std::swap(aug[p], aug[col]);
      std::swap(inv[p], inv[col]);
      Rat d = 1 / aug[col][col];
      for (int j = 0; j < m; ++j) {
        aug[col][j] *= d;
        inv[col][j] *= d;
      }
      for (int r = 0; r < m; ++r) {
        if (r == col || aug[r][col] == 0) continue;
        Rat f = aug[r][col];
        for (int j = 0; j < m; ++j) {
          aug[r][j] -= f * aug[col][j];
          inv[r][j] -= f * inv[col][j];
        }
      }
    }
  }

  Poly cur = w.truncate(order);
  std::map<int, Poly> phi;
  for (int var : w.vars()) phi[var] = Poly::var(var);
  for (int pass = 0; pass <= order + 2; ++pass) {
    Poly rest = cur - quad;
    // v-containing terms of lowest total degree
    int lowest = -1;
    for (const auto& [mono, c] : rest.terms()) {
      bool hasv = false;
      int degree = 0;
      for (const auto& [var, e] : mono) {
        degree += e;
        if (in_v(var)) hasv = true;
      }
      if (hasv && (lowest < 0 || degree < lowest)) lowest = degree;
    }
    if (lowest < 0) break;
    std::vector<Poly> g(m);
    for (const auto& [mono, c] : rest.terms()) {
      int degree = 0;
      int pick = -1;
      for (const auto& [var, e] : mono) {
        degree += e;
        if (pick < 0 && in_v(var)) pick = var;
      }
      if (pick < 0 || degree != lowest) continue;
      Monomial rest_mono = mono;
      if (rest_mono[pick] == 1)
        rest_mono.erase(pick);
      else
        rest_mono[pick] -= 1;
      Poly piece;
      piece.set_term(rest_mono, c);
      int a = static_cast<int>(std::find(vvars.begin(), vvars.end(), pick) - vvars.begin());
      g[a] += piece;
    }
    std::map<int, Poly> subs;
    for (int a = 0; a < m; ++a) {
      Poly psi;
      for (int b = 0; b < m; ++b)
        if (!g[b].is_zero()) psi += g[b].scale(-inv[a][b] / 2);
      if (!psi.is_zero()) subs[vvars[a]] = Poly::var(vvars[a]) + psi;
    }
    if (subs.empty()) break;
    cur = cur.substitute_all(subs).truncate(order);
    for (auto& [var, p] : phi) p = p.substitute_all(subs);
  }
  Poly rest = cur - quad;
  for (const auto& [mono, c] : rest.terms())
    for (const auto& [var, e] : mono)
      if (in_v(var)) throw Error("splitting flow failed to converge");
  return {rest, quad, phi};
}

SplitResult cyclic_split(const Poly& w, int order) {
  auto vs = w.homogeneous(2).vars();
  return cyclic_split(w, std::vector<int>(vs.begin(), vs.end()), order);
}

}  // namespace mdt

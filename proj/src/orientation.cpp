#include "mdt/orientation.hpp"

#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

namespace mdt {

FieldMode field_mode_from_env() {
  const char* v = std::getenv("MDT_FIELD");
  if (v == nullptr || *v == '\0') return FieldMode::Rationals;
  std::string s(v);
  if (s == "rationals") return FieldMode::Rationals;
  if (s == "closed") return FieldMode::Closed;
  throw InputError("unknown MDT_FIELD value: " + s);
}

Int square_class(const Rat& v) {
  if (v == 0) throw InputError("square class of zero");
  Int w = v.get_num() * v.get_den();
  bool neg = w < 0;
  w = abs(w);
  Int out = 1;
  for (Int p = 2; p * p <= w; ++p) {
    int e = 0;
    while (w % p == 0) {
      w /= p;
      ++e;
    }
    if (e & 1) out *= p;
  }
  out *= w;
  return neg ? -out : out;
}

J2Class j2_make(const Rat& unit, int parity, FieldMode mode) {
  if (mode == FieldMode::Closed) {
    if (unit == 0) throw InputError("square class of zero");
    return {Int(1), parity & 1};
  }
  return {square_class(unit), parity & 1};
}

J2Class j2_mul(const J2Class& a, const J2Class& b, FieldMode mode) {
  return j2_make(Rat(a.unit) * Rat(b.unit), a.parity ^ b.parity, mode);
}

std::string j2_str(const J2Class& c) {
  std::ostringstream os;
  os << '(' << c.unit.get_str() << ", " << c.parity << ')';
  return os.str();
}

int sdet_parity(const std::map<int, int>& dims) {
  int s = 0;
  for (const auto& [d, v] : dims) {
    if (v < 0) throw InputError("negative graded dimension");
    if (d >= 1) s ^= v & 1;
  }
  return s;
}

namespace {

// symmetric congruence diagonalization; zero entries mark the radical
std::vector<Rat> congruent_diagonal(std::vector<std::vector<Rat>> g) {
  size_t n = g.size();
  for (size_t i = 0; i < n; ++i)
    if (g[i].size() != n) throw InputError("matrix is not square");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < i; ++j)
      if (g[i][j] != g[j][i]) throw InputError("matrix is not symmetric");
  auto combine = [n](std::vector<std::vector<Rat>> h, size_t p, size_t j, const Rat& f) {
    for (size_t c = 0; c < n; ++c) h[p][c] += f * h[j][c];
    for (size_t r = 0; r < n; ++r) h[r][p] += f * h[r][j];
    return h;
  };
  std::vector<Rat> diag;
  diag.reserve(n);
  for (size_t p = 0; p < n; ++p) {
    if (g[p][p] == 0) {
      size_t j = p + 1;
      while (j < n && g[j][p] == 0) ++j;
      if (j < n) {
        auto h = combine(g, p, j, Rat(1));
        g = (h[p][p] != 0) ? std::move(h) : combine(std::move(g), p, j, Rat(-1));
      }
    }
    if (g[p][p] == 0) {
      diag.push_back(Rat(0));
      continue;
    }
    for (size_t q = p + 1; q < n; ++q) {
      if (g[q][p] == 0) continue;
      Rat f = -g[q][p] / g[p][p];
      g = combine(std::move(g), q, p, f);
    }
    diag.push_back(g[p][p]);
  }
  return diag;
}

Mat slot_unit(const TwObject& t, int i, int j, int basis) {
  Mat m(t.size(), t.size());
  m.at(i, j)[basis] = Poly::constant(1);
  return m;
}

Mat unit_corner(const KoszulAlgebra& k, int vertex) {
  Mat m(1, 1);
  m.at(0, 0)[k.unit(vertex)] = Poly::constant(1);
  return m;
}

}  // namespace

J2Class quad_class(const QuadSpace& q, FieldMode mode) {
  auto diag = congruent_diagonal(q.gram);
  Rat det(1);
  for (const auto& d : diag) {
    if (d == 0) throw Degenerate("quadratic space is degenerate");
    det *= d;
  }
  return j2_make(det, static_cast<int>(diag.size()) & 1, mode);
}

J2Class form_class(const QuadSpace& q, FieldMode mode) {
  auto diag = congruent_diagonal(q.gram);
  Rat det(1);
  int rank = 0;
  for (const auto& d : diag) {
    if (d == 0) continue;
    det *= d;
    ++rank;
  }
  return j2_make(det, rank & 1, mode);
}

J2Class object_form_class(const KoszulAlgebra& k, const TwObject& t, FieldMode mode) {
  auto slots = degree_one_slots(k, t);
  size_t m = slots.size();
  std::vector<Mat> us, ds;
  us.reserve(m);
  ds.reserve(m);
  for (const auto& s : slots) {
    us.push_back(slot_unit(t, s.row, s.col, s.basis));
    ds.push_back(tw_d(k, t, us.back()));
  }
  std::vector<std::vector<Rat>> b(m, std::vector<Rat>(m));
  for (size_t p = 0; p < m; ++p)
    for (size_t q = 0; q < m; ++q) b[p][q] = tw_pairing(k, t, ds[p], us[q]).constant_term();
  for (size_t p = 0; p < m; ++p)
    for (size_t q = 0; q < p; ++q)
      if (b[p][q] != b[q][p]) throw Error("obstruction form is not symmetric");
  return form_class(QuadSpace{{}, std::move(b)}, mode);
}

J2Class obstruction_at_extension(const KoszulAlgebra& k, const TwObject& sub,
                                 const TwObject& quot, const Mat& alpha, FieldMode mode) {
  return object_form_class(k, extension_total(k, sub, quot, alpha), mode);
}

std::map<int, int> hom_homology_dims(const KoszulAlgebra& k, const TwObject& t,
                                     const std::vector<int>& allowed) {
  std::set<int> allow(allowed.begin(), allowed.end());
  int n = t.size();
  struct Slot {
    int i, j, x;
  };
  std::vector<Slot> slots;
  std::map<std::tuple<int, int, int>, int> index;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int x : allow) {
        if (k.src(x) != t.tau[j].first || k.tgt(x) != t.tau[i].first) continue;
        index[{i, j, x}] = static_cast<int>(slots.size());
        slots.push_back({i, j, x});
      }
  std::vector<std::map<int, Rat>> dcol(slots.size());
  for (size_t s = 0; s < slots.size(); ++s) {
    Mat dm = tw_d(k, t, slot_unit(t, slots[s].i, slots[s].j, slots[s].x));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const auto& [y, c] : dm.at(i, j)) {
          if (c.is_zero()) continue;
          auto it = index.find({i, j, y});
          if (it == index.end())
            throw Error("restricted hom complex is not preserved by the differential");
          dcol[s][it->second] = c.constant_term();
        }
  }
  std::map<int, std::vector<int>> by_deg;
  for (size_t s = 0; s < slots.size(); ++s)
    by_deg[k.degree(slots[s].x) + t.tau[slots[s].j].second - t.tau[slots[s].i].second].push_back(
        static_cast<int>(s));
  auto span_rank = [&](const std::vector<int>& idxs) {
    std::vector<std::vector<Rat>> rows;
    rows.reserve(idxs.size());
    for (int s : idxs) {
      std::vector<Rat> r(slots.size());
      for (const auto& [p, v] : dcol[s]) r[p] = v;
      rows.push_back(std::move(r));
    }
    size_t rank = 0;
    for (size_t c = 0; c < slots.size() && rank < rows.size(); ++c) {
      size_t p = rank;
      while (p < rows.size() && rows[p][c] == 0) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[p], rows[rank]);
      for (size_t q = 0; q < rows.size(); ++q) {
        if (q == rank || rows[q][c] == 0) continue;
        Rat f = rows[q][c] / rows[rank][c];
        for (size_t cc = c; cc < slots.size(); ++cc) rows[q][cc] -= f * rows[rank][cc];
      }
      ++rank;
    }
    return static_cast<int>(rank);
  };
  std::map<int, int> rank_d;
  for (const auto& [dg, idxs] : by_deg) rank_d[dg] = span_rank(idxs);
  std::map<int, int> out;
  for (const auto& [dg, idxs] : by_deg) {
    int h = static_cast<int>(idxs.size()) - rank_d[dg];
    auto below = rank_d.find(dg - 1);
    if (below != rank_d.end()) h -= below->second;
    if (h != 0) out[dg] = h;
  }
  return out;
}

int cgeq2_class(const KoszulAlgebra& k, const TwObject& t) {
  if (t.size() == 0) return 0;
  std::vector<int> allowed;
  for (int x = 0; x < k.size(); ++x)
    if (k.degree(x) >= 2) allowed.push_back(x);
  return sdet_parity(hom_homology_dims(k, t, allowed));
}

int lagrangian_class(const KoszulAlgebra& k, const std::vector<int>& T, const TwObject& t) {
  const Quiver& q = k.quiver();
  std::set<int> ts;
  for (int a : T) {
    if (a < 0 || a >= static_cast<int>(q.arrows.size()))
      throw InputError("arrow index out of range");
    ts.insert(a);
  }
  for (const auto& term : q.potential) {
    int cnt = 0;
    for (int a : term.word) cnt += ts.count(a);
    if (cnt >= 2)
      throw InvalidLagrangian("a potential cycle meets the arrow subset more than once");
  }
  if (t.size() == 0) return 0;
  std::vector<int> allowed;
  for (size_t a = 0; a < q.arrows.size(); ++a)
    allowed.push_back(ts.count(static_cast<int>(a)) ? k.dual(static_cast<int>(a))
                                                    : k.arrow_elem(static_cast<int>(a)));
  for (size_t v = 0; v < q.vertices.size(); ++v) allowed.push_back(k.omega(static_cast<int>(v)));
  return sdet_parity(hom_homology_dims(k, t, allowed));
}

bool cocycle_check(const KoszulAlgebra& k, const TwObject& sub, const TwObject& quot,
                   const Mat& alpha, const std::function<int(const TwObject&)>& h,
                   FieldMode mode) {
  TwObject total = extension_total(k, sub, quot, alpha);
  int l = object_form_class(k, total, mode).parity;
  return ((h(sub) + h(quot) + h(total) + l) % 2 + 2) % 2 == 0;
}

std::string tw_key(const TwObject& t) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < t.size(); ++i) {
    if (i) os << ';';
    os << t.tau[i].first << ',' << t.tau[i].second;
  }
  os << ']';
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j) {
      const Element& e = t.a.at(i, j);
      if (elem_zero(e)) continue;
      os << '(' << i << ',' << j << ':';
      bool first = true;
      for (const auto& [x, c] : e) {
        if (c.is_zero()) continue;
        if (!first) os << '+';
        first = false;
        os << x << '*' << c.constant_term().get_str();
      }
      os << ')';
    }
  return os.str();
}

namespace {

struct ParityCtx {
  const KoszulAlgebra& k;
  const std::vector<int>& gens;
  std::map<std::string, int> memo;
};

TwObject restrict_slots(const TwObject& t, int lo, int hi) {
  TwObject out;
  out.tau.assign(t.tau.begin() + lo, t.tau.begin() + hi);
  out.a = Mat(hi - lo, hi - lo);
  for (int i = lo; i < hi; ++i)
    for (int j = lo; j < hi; ++j) out.a.at(i - lo, j - lo) = t.a.at(i, j);
  return out;
}

// h at a shifted generator, walking shift by shift through the
// contractible self-extensions (whose total object has parity zero)
int shifted_gen_parity(ParityCtx& ctx, int v, int s) {
  if (v < 0 || v >= static_cast<int>(ctx.gens.size()))
    throw InputError("generator parity missing for a vertex");
  int h = ctx.gens[v] & 1, cur = 0;
  while (cur != s) {
    int lo = cur < s ? cur : cur - 1;
    J2Class l = obstruction_at_extension(ctx.k, generator(v, lo), generator(v, lo + 1),
                                         unit_corner(ctx.k, v));
    h ^= l.parity;
    cur += cur < s ? 1 : -1;
  }
  return h;
}

int parity_rec(ParityCtx& ctx, const TwObject& t) {
  int n = t.size();
  if (n == 0) return 0;
  if (n == 1) return shifted_gen_parity(ctx, t.tau[0].first, t.tau[0].second);
  std::string key = tw_key(t);
  auto it = ctx.memo.find(key);
  if (it != ctx.memo.end()) return it->second;
  int val = -1;
  for (int p = 1; p < n; ++p) {
    TwObject sub = restrict_slots(t, 0, p), quot = restrict_slots(t, p, n);
    Mat alpha(p, n - p);
    for (int i = 0; i < p; ++i)
      for (int j = p; j < n; ++j) alpha.at(i, j - p) = t.a.at(i, j);
    int l = obstruction_at_extension(ctx.k, sub, quot, alpha).parity;
    int hp = (parity_rec(ctx, sub) ^ parity_rec(ctx, quot)) ^ l;
    if (val < 0)
      val = hp;
    else if (val != hp)
      throw Error("parity propagation is inconsistent at " + key);
  }
  ctx.memo[key] = val;
  return val;
}

}  // namespace

int assigned_parity(const KoszulAlgebra& k, const std::vector<int>& gen_parities,
                    const TwObject& t) {
  if (gen_parities.size() != k.quiver().vertices.size())
    throw InputError("one generator parity per vertex is required");
  validate_twisted(k, t);
  ParityCtx ctx{k, gen_parities, {}};
  return parity_rec(ctx, t);
}

std::map<std::string, int> propagate_parities(const KoszulAlgebra& k,
                                              const std::vector<int>& gen_parities,
                                              int max_slots) {
  int nv = static_cast<int>(k.quiver().vertices.size());
  if (static_cast<int>(gen_parities.size()) != nv)
    throw InputError("one generator parity per vertex is required");
  if (max_slots < 1) throw InputError("slot bound must be positive");
  std::map<std::string, int> out;
  ParityCtx ctx{k, gen_parities, {}};
  for (int n = 1; n <= max_slots; ++n) {
    std::vector<std::pair<int, int>> tau(n);
    std::vector<std::pair<int, int>> positions;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) positions.push_back({i, j});
    TwObject t;
    t.a = Mat(n, n);
    std::function<void(size_t)> fill = [&](size_t pos) {
      if (pos == positions.size()) {
        t.tau = tau;
        try {
          validate_twisted(k, t);
        } catch (const InputError&) {
          return;
        }
        out[tw_key(t)] = parity_rec(ctx, t);
        return;
      }
      auto [i, j] = positions[pos];
      t.a.at(i, j).clear();
      fill(pos + 1);
      for (int x = 0; x < k.size(); ++x) {
        if (k.src(x) != tau[j].first || k.tgt(x) != tau[i].first) continue;
        if (k.degree(x) + tau[j].second - tau[i].second != 1) continue;
        t.a.at(i, j) = Element{{x, Poly::constant(1)}};
        fill(pos + 1);
      }
      t.a.at(i, j).clear();
    };
    std::function<void(int)> etau = [&](int pos) {
      if (pos == n) {
        fill(0);
        return;
      }
      for (int v = 0; v < nv; ++v)
        for (int s = -1; s <= 1; ++s) {
          tau[pos] = {v, s};
          etau(pos + 1);
        }
    };
    etau(0);
  }
  return out;
}

}  // namespace mdt

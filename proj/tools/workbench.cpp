#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "mdt/ainfty.hpp"
#include "mdt/dt.hpp"
#include "mdt/motive.hpp"
#include "mdt/orientation.hpp"
#include "mdt/quiver.hpp"
#include "mdt/twisted.hpp"
#include "mdt/vanishing.hpp"

using namespace mdt;

namespace {

long to_long(const std::string& s) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw InputError("expected an integer, got '" + s + "'");
  }
  if (pos != s.size()) throw InputError("expected an integer, got '" + s + "'");
  return v;
}

Rat to_rat(const std::string& s) {
  try {
    Rat v(s);
    v.canonicalize();
    return v;
  } catch (const std::exception&) {
    throw InputError("expected a rational, got '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t p = s.find(sep, start);
    out.push_back(s.substr(start, p == std::string::npos ? p : p - start));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  return out;
}

DimVector parse_dims(const std::string& s) {
  if (s.empty()) throw InputError("expected a comma-separated dimension list");
  DimVector out;
  for (const std::string& part : split(s, ','))
    out.push_back(static_cast<int>(to_long(part)));
  return out;
}

int basis_id(const KoszulAlgebra& k, const std::string& token) {
  int id = k.id_by_name(token);
  if (id >= 0) return id;
  std::size_t pos = 0;
  try {
    id = std::stoi(token, &pos);
  } catch (const std::exception&) {
    throw InputError("unknown basis element '" + token + "'");
  }
  if (pos != token.size() || id < 0 || id >= k.size())
    throw InputError("unknown basis element '" + token + "'");
  return id;
}

// term = NAME | ID | (NAME|ID) '*' RATIONAL, with the split at the last '*'
// so dual names like a* keep their star
void add_term(const KoszulAlgebra& k, Element& e, const std::string& term) {
  if (k.id_by_name(term) >= 0) {
    e[k.id_by_name(term)] += Poly::constant(1);
    return;
  }
  std::size_t star = term.rfind('*');
  if (star == std::string::npos || star + 1 == term.size()) {
    e[basis_id(k, term)] += Poly::constant(1);
    return;
  }
  int id = basis_id(k, term.substr(0, star));
  e[id] += Poly::constant(to_rat(term.substr(star + 1)));
}

// entries look like (i,j:a*) or (0,1:5*1+y2**-2); i,j are generator slots
void parse_entries(const KoszulAlgebra& k, Mat& m, const std::string& s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != '(') throw InputError("matrix entry must start with '(' near '" + s.substr(pos) + "'");
    std::size_t close = s.find(')', pos);
    if (close == std::string::npos) throw InputError("unterminated matrix entry");
    std::string body = s.substr(pos + 1, close - pos - 1);
    std::size_t colon = body.find(':');
    if (colon == std::string::npos) throw InputError("matrix entry needs 'row,col:terms'");
    std::vector<std::string> rc = split(body.substr(0, colon), ',');
    if (rc.size() != 2) throw InputError("matrix entry needs 'row,col:terms'");
    long i = to_long(rc[0]), j = to_long(rc[1]);
    if (i < 0 || i >= m.rows || j < 0 || j >= m.cols)
      throw InputError("matrix entry (" + rc[0] + "," + rc[1] + ") is out of range");
    for (const std::string& term : split(body.substr(colon + 1), '+'))
      add_term(k, m.at(static_cast<int>(i), static_cast<int>(j)), term);
    pos = close + 1;
  }
}

// twisted-object literal: [v,shift;v,shift;...] followed by matrix entries,
// the same shape tw_key prints; vertices by name or index, shift optional
TwObject parse_tw(const KoszulAlgebra& k, const std::string& s) {
  if (s.empty() || s[0] != '[') throw InputError("twisted literal must start with '['");
  std::size_t close = s.find(']');
  if (close == std::string::npos) throw InputError("twisted literal missing ']'");
  TwObject t;
  for (const std::string& gen : split(s.substr(1, close - 1), ';')) {
    std::vector<std::string> parts = split(gen, ',');
    if (parts.empty() || parts.size() > 2) throw InputError("generator must be 'vertex[,shift]'");
    int v = k.quiver().vertex_index(parts[0]);
    if (v < 0) v = static_cast<int>(to_long(parts[0]));
    if (v < 0 || v >= static_cast<int>(k.quiver().vertices.size()))
      throw InputError("unknown vertex '" + parts[0] + "'");
    int shift = parts.size() == 2 ? static_cast<int>(to_long(parts[1])) : 0;
    t.tau.emplace_back(v, shift);
  }
  t.a = Mat(t.size(), t.size());
  parse_entries(k, t.a, s.substr(close + 1));
  return t;
}

void print_series(const QTSeries& s) {
  for (const auto& [g, c] : s.coeff())
    if (!c.is_zero()) std::cout << "gamma=" << dim_str(g) << " coeff=" << c.str() << "\n";
}

std::string slot_str(const KoszulAlgebra& k, const EndSlot& s) {
  return "(" + std::to_string(s.row) + "," + std::to_string(s.col) + "," + k.name(s.basis) + ")";
}

int cmd_mf(const std::string& res_path, const std::vector<long>& ts) {
  if (res_path.empty() == ts.empty())
    throw InputError("mf needs exactly one of --resolution and --ts");
  MotiveExpr m = res_path.empty() ? milnor_fibre_ts(ts[0], ts[1])
                                  : nearby_cycle(load_resolution(res_path));
  std::cout << m.str() << "\n";
  return 0;
}

int cmd_stasheff(const std::string& quiver_path, int nmax) {
  KoszulAlgebra k(load_quiver(quiver_path));
  if (auto bad = k.check_stasheff(nmax)) {
    std::cout << "FAIL " << *bad << "\n";
    return 1;
  }
  if (auto bad = k.check_cyclic(nmax)) {
    std::cout << "FAIL " << *bad << "\n";
    return 1;
  }
  std::cout << "PASS (arities 1.." << nmax << ")\n";
  return 0;
}

int cmd_mc(const std::string& quiver_path, const std::string& dims_str, bool symbolic) {
  KoszulAlgebra k(load_quiver(quiver_path));
  DimVector dims = parse_dims(dims_str);
  if (dims.size() != k.quiver().vertices.size())
    throw InputError("--dim length does not match the quiver");
  TwObject t;
  for (std::size_t v = 0; v < dims.size(); ++v) {
    if (dims[v] < 0) throw InputError("--dim entries must be nonnegative");
    for (int c = 0; c < dims[v]; ++c) t.tau.emplace_back(static_cast<int>(v), 0);
  }
  t.a = Mat(t.size(), t.size());

  std::vector<EndSlot> slots = degree_one_slots(k, t);
  std::vector<Poly> vars;
  for (std::size_t i = 0; i < slots.size(); ++i) vars.push_back(Poly::var(static_cast<int>(i)));
  Mat generic = slot_matrix(t, slots, vars);
  Mat r = mc_residual(k, generic);

  long eqs = 0;
  for (const Element& e : r.ent)
    for (const auto& [id, p] : e)
      if (!p.is_zero()) ++eqs;
  std::cout << "slots=" << slots.size() << "\n";
  std::cout << "equations=" << eqs << "\n";
  if (!symbolic) return 0;
  for (std::size_t i = 0; i < slots.size(); ++i)
    std::cout << "v" << i << " = " << slot_str(k, slots[i]) << "\n";
  for (int i = 0; i < r.rows; ++i)
    for (int j = 0; j < r.cols; ++j)
      for (const auto& [id, p] : r.at(i, j)) {
        if (p.is_zero()) continue;
        std::cout << "mc[" << i << "," << j << "] " << k.name(id) << ": " << p.str() << "\n";
      }
  return 0;
}

int cmd_wmin(const std::string& quiver_path, const std::string& tw, int order) {
  KoszulAlgebra k(load_quiver(quiver_path));
  TwObject t = parse_tw(k, tw);
  validate_twisted(k, t);
  std::vector<EndSlot> slots = degree_one_slots(k, t);
  std::vector<Poly> vars;
  for (std::size_t i = 0; i < slots.size(); ++i) vars.push_back(Poly::var(static_cast<int>(i)));
  Poly w = twisted_potential(k, t, slot_matrix(t, slots, vars));
  SplitResult sr = cyclic_split(w, order);
  std::cout << "slots=" << slots.size() << "\n";
  for (std::size_t i = 0; i < slots.size(); ++i)
    std::cout << "v" << i << " = " << slot_str(k, slots[i]) << "\n";
  std::cout << "wmin = " << sr.wmin.str() << "\n";
  std::cout << "quad = " << sr.quad.str() << "\n";
  return 0;
}

// extension spec: sub-literal '|' quot-literal '|' alpha entries, the class
// alpha sitting in Hom^1(quot, sub)
int cmd_j2(const std::string& quiver_path, const std::string& ext) {
  KoszulAlgebra k(load_quiver(quiver_path));
  std::vector<std::string> parts = split(ext, '|');
  if (parts.size() != 3) throw InputError("--ext needs 'sub|quot|alpha'");
  TwObject sub = parse_tw(k, parts[0]);
  TwObject quot = parse_tw(k, parts[1]);
  validate_twisted(k, sub);
  validate_twisted(k, quot);
  Mat alpha(sub.size(), quot.size());
  parse_entries(k, alpha, parts[2]);
  std::cout << j2_str(obstruction_at_extension(k, sub, quot, alpha)) << "\n";
  return 0;
}

int cmd_dtseries(const std::string& quiver_path, bool framed, const std::string& trunc,
                 const std::string& check, int n) {
  Quiver q = load_quiver(quiver_path);
  if (framed) q = frame_quiver(q);
  EulerForm form(q);
  DimVector bound = parse_dims(trunc);

  if (check.empty()) {
    QTSeries total(form, bound);
    DimVector g(bound.size(), 0);
    while (true) {
      total = total + integrate_w0(q, g, bound);
      std::size_t i = g.size();
      while (i > 0 && g[i - 1] == bound[i - 1]) g[--i] = 0;
      if (i == 0) break;
      ++g[i - 1];
    }
    print_series(total);
    return 0;
  }

  if (check == "con1") {
    if (n < 0) throw InputError("--check con1 needs --n <k> with k >= 0");
    DimVector gamma{0, n, n + 1};
    DimVector delta{1, 0, 0};
    QTSeries p = spherical_series(form, bound, gamma);
    QTSeries lhs =
        qt_mul(qt_mul(p, qt_monomial(form, bound, delta, MotiveExpr::one())), qt_inverse(p));
    print_series(lhs);
    bool ok = bridgeland_conjugation_check(form, n, bound);
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
  }

  if (check == "hn") {
    if (bound.size() != 3) throw InputError("--check hn needs a framed rank-3 lattice");
    std::vector<std::pair<int, int>> cuts;
    for (int a = 0; a <= bound[1]; ++a)
      for (int b = 0; b <= bound[2]; ++b)
        if (a + b > 0) cuts.emplace_back(a, b);
    QTSeries m = qt_unit(form, bound);
    for (const auto& [a, b] : cuts)
      m = qt_mul(m, spherical_series(form, bound, DimVector{0, a, b}));
    QTSeries direct = qt_mul(
        qt_mul(m, qt_monomial(form, bound, DimVector{1, 0, 0}, MotiveExpr::s(1))), qt_inverse(m));
    print_series(direct);
    bool ok = hn_factorization_check(form, bound, cuts);
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
  }

  throw InputError("unknown check '" + check + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for equivariant motives, quiver algebras and series identities"};
  app.require_subcommand(1);
  int rc = 0;

  auto* motive = app.add_subcommand("motive", "motive-ring arithmetic");
  motive->require_subcommand(1);
  auto* eval = motive->add_subcommand("eval", "evaluate an expression to canonical form");
  std::string expr;
  eval->add_option("expr", expr, "expression")->required();
  eval->callback([&] { std::cout << parse_motive(expr).str() << "\n"; });

  auto* mf = app.add_subcommand("mf", "Milnor-fibre class from a resolution file or a sum of powers");
  std::string res_path;
  std::vector<long> ts;
  mf->add_option("--resolution", res_path, "resolution data file");
  mf->add_option("--ts", ts, "exponents a b of x^a + y^b")->expected(2);
  mf->callback([&] { rc = cmd_mf(res_path, ts); });

  auto* stasheff = app.add_subcommand("stasheff", "check the higher-operation relations of a quiver's dual algebra");
  std::string st_quiver;
  int nmax = 8;
  stasheff->add_option("--quiver", st_quiver, "quiver file")->required();
  stasheff->add_option("--nmax", nmax, "largest arity checked");
  stasheff->callback([&] { rc = cmd_stasheff(st_quiver, nmax); });

  auto* mc = app.add_subcommand("mc", "flatness residual of the generic module of a dimension vector");
  std::string mc_quiver, mc_dims;
  bool symbolic = false;
  mc->add_option("--quiver", mc_quiver, "quiver file")->required();
  mc->add_option("--dim", mc_dims, "dimension vector d1,d2,...")->required();
  mc->add_flag("--symbolic", symbolic, "print the residual equations");
  mc->callback([&] { rc = cmd_mc(mc_quiver, mc_dims, symbolic); });

  auto* wmin = app.add_subcommand("wmin", "split the endomorphism potential of a twisted object");
  std::string wm_quiver, wm_tw;
  int order = 8;
  wmin->add_option("--quiver", wm_quiver, "quiver file")->required();
  wmin->add_option("--tw", wm_tw, "twisted-object literal, e.g. \"[0,0;0,0](0,1:a*)\"")->required();
  wmin->add_option("--order", order, "truncation order of the split");
  wmin->callback([&] { rc = cmd_wmin(wm_quiver, wm_tw, order); });

  auto* j2 = app.add_subcommand("j2", "obstruction-form class at an extension");
  std::string j2_quiver, j2_ext;
  j2->add_option("--quiver", j2_quiver, "quiver file")->required();
  j2->add_option("--ext", j2_ext, "extension spec 'sub|quot|alpha'")->required();
  j2->callback([&] { rc = cmd_j2(j2_quiver, j2_ext); });

  auto* dt = app.add_subcommand("dtseries", "truncated framed or unframed partition series");
  std::string dt_quiver, dt_trunc, dt_check;
  bool dt_framed = false;
  int dt_n = -1;
  dt->add_option("--quiver", dt_quiver, "quiver file")->required();
  dt->add_flag("--framed", dt_framed, "adjoin a framing vertex");
  dt->add_option("--trunc", dt_trunc, "truncation rectangle a,b[,c]")->required();
  dt->add_option("--check", dt_check, "identity to verify: con1 or hn");
  dt->add_option("--n", dt_n, "spherical class parameter for con1");
  dt->callback([&] { rc = cmd_dtseries(dt_quiver, dt_framed, dt_trunc, dt_check, dt_n); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

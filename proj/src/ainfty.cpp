#include "mdt/ainfty.hpp"

#include <functional>
#include <sstream>

namespace mdt {

namespace {

void trim_zeros(Element& e) {
  for (auto it = e.begin(); it != e.end();) {
    if (it->second.is_zero())
      it = e.erase(it);
    else
      ++it;
  }
}

}  // namespace

Element elem_add(const Element& a, const Element& b) {
  Element out = a;
  for (const auto& [id, p] : b) out[id] += p;
  trim_zeros(out);
  return out;
}

Element elem_scale(const Element& a, const Poly& c) {
  Element out;
  if (c.is_zero()) return out;
  for (const auto& [id, p] : a) {
    Poly q = p * c;
    if (!q.is_zero()) out[id] = q;
  }
  return out;
}

Element elem_neg(const Element& a) {
  Element out;
  for (const auto& [id, p] : a) out[id] = -p;
  return out;
}

bool elem_zero(const Element& a) {
  for (const auto& [id, p] : a)
    if (!p.is_zero()) return false;
  return true;
}

KoszulAlgebra::KoszulAlgebra(Quiver q) : q_(std::move(q)) {
  q_.validate();
  nv_ = static_cast<int>(q_.vertices.size());
  na_ = static_cast<int>(q_.arrows.size());

  auto push = [&](int deg, int s, int t, std::string nm) {
    deg_.push_back(deg);
    src_.push_back(s);
    tgt_.push_back(t);
    name_.push_back(std::move(nm));
  };
  for (int v = 0; v < nv_; ++v) push(0, v, v, "e_" + q_.vertices[v]);
  for (const auto& a : q_.arrows) push(1, a.tgt, a.src, a.name + "*");
  for (const auto& a : q_.arrows) push(2, a.src, a.tgt, a.name);
  for (int v = 0; v < nv_; ++v) push(3, v, v, "w_" + q_.vertices[v]);

  auto put = [&](std::vector<int> key, int id, Rat c) {
    table_[std::move(key)][id] += Poly::constant(c);
  };

  // strict units
  for (int v = 0; v < nv_; ++v) {
    for (int x = 0; x < size(); ++x) {
      if (tgt_[x] == v) put({unit(v), x}, x, -1);
      if (src_[x] == v && x != unit(v))
        put({x, unit(v)}, x, (deg_[x] % 2 == 1) ? 1 : -1);
    }
  }

  // each arrow multiplies with its dual into the socle
  for (int a = 0; a < na_; ++a) {
    put({dual(a), arrow_elem(a)}, omega(src_[arrow_elem(a)]), 1);
    put({arrow_elem(a), dual(a)}, omega(tgt_[arrow_elem(a)]), -1);
  }

  // cyclic contraction of the potential
  for (const auto& term : q_.potential) {
    int m = static_cast<int>(term.word.size());
    Rat frac = term.coeff / m;
    for (int r = 0; r < m; ++r) {
      std::vector<int> key;
      key.reserve(m - 1);
      for (int k = 0; k + 1 < m; ++k) key.push_back(dual(term.word[(r + k) % m]));
      put(std::move(key), arrow_elem(term.word[(r + m - 1) % m]), frac);
    }
  }

  for (auto it = table_.begin(); it != table_.end();) {
    trim_zeros(it->second);
    if (it->second.empty())
      it = table_.erase(it);
    else
      ++it;
  }

  for (int a = 0; a < na_; ++a) {
    pair_[{dual(a), arrow_elem(a)}] = 1;
    pair_[{arrow_elem(a), dual(a)}] = 1;
  }
  for (int v = 0; v < nv_; ++v) {
    pair_[{unit(v), omega(v)}] = 1;
    pair_[{omega(v), unit(v)}] = 1;
  }
}

int KoszulAlgebra::id_by_name(const std::string& n) const {
  for (int i = 0; i < size(); ++i)
    if (name_[i] == n) return i;
  return -1;
}

int KoszulAlgebra::max_arity() const {
  int m = 0;
  for (const auto& [key, val] : table_) m = std::max(m, static_cast<int>(key.size()));
  return m;
}

Element KoszulAlgebra::eval_b(const std::vector<Element>& args) const {
  Element out;
  std::vector<int> key(args.size());
  std::function<void(size_t, const Poly&)> rec = [&](size_t i, const Poly& c) {
    if (i == args.size()) {
      auto it = table_.find(key);
      if (it == table_.end()) return;
      for (const auto& [id, p] : it->second) out[id] += c * p;
      return;
    }
    for (const auto& [id, p] : args[i]) {
      key[i] = id;
      rec(i + 1, c * p);
    }
  };
  rec(0, Poly::constant(1));
  trim_zeros(out);
  return out;
}

Element KoszulAlgebra::eval_b_basis(const std::vector<int>& args) const {
  auto it = table_.find(args);
  if (it == table_.end()) return {};
  return it->second;
}

Element KoszulAlgebra::eval_m_basis(const std::vector<int>& args) const {
  int n = static_cast<int>(args.size());
  int exp = 0;
  for (int k = 0; k < n; ++k) exp += (n - 1 - k) * (deg_[args[k]] - 1);
  Element out = eval_b_basis(args);
  if (exp % 2 != 0) out = elem_neg(out);
  return out;
}

Rat KoszulAlgebra::pairing(int u, int v) const {
  auto it = pair_.find({u, v});
  return it == pair_.end() ? Rat(0) : it->second;
}

Rat KoszulAlgebra::pairing_shifted(int u, int v) const {
  Rat p = pairing(u, v);
  return (deg_[u] - 1) % 2 != 0 ? Rat(-p) : p;
}

std::vector<std::vector<int>> KoszulAlgebra::chains(int n, bool closed) const {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      if (!closed || src_[cur.back()] == tgt_[cur.front()]) out.push_back(cur);
      return;
    }
    for (int x = 0; x < size(); ++x) {
      if (pos > 0 && src_[cur.back()] != tgt_[x]) continue;
      cur.push_back(x);
      rec(pos + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::optional<std::string> KoszulAlgebra::check_stasheff(int nmax) const {
  int bound = std::min(nmax, 2 * max_arity() - 1);
  for (int n = 1; n <= bound; ++n) {
    for (const auto& t : chains(n, false)) {
      Element res;
      for (int b = 1; b <= n; ++b) {
        for (int a = 0; a + b <= n; ++a) {
          Element inner = eval_b_basis(std::vector<int>(t.begin() + a, t.begin() + a + b));
          if (elem_zero(inner)) continue;
          std::vector<Element> outer;
          outer.reserve(n - b + 1);
          for (int k = 0; k < a; ++k) outer.push_back({{t[k], Poly::constant(1)}});
          outer.push_back(inner);
          for (int k = a + b; k < n; ++k) outer.push_back({{t[k], Poly::constant(1)}});
          Element term = eval_b(outer);
          int exp = 0;
          for (int k = 0; k < a; ++k) exp += deg_[t[k]] - 1;
          if (exp % 2 != 0) term = elem_neg(term);
          res = elem_add(res, term);
        }
      }
      if (!elem_zero(res)) {
        std::ostringstream os;
        os << "associativity relation fails at (";
        for (size_t k = 0; k < t.size(); ++k) os << (k ? ", " : "") << name_[t[k]];
        os << ")";
        return os.str();
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> KoszulAlgebra::check_cyclic(int nmax) const {
  int bound = std::min(nmax, max_arity() + 1);
  for (int n = 2; n <= bound; ++n) {
    for (const auto& t : chains(n, true)) {
      auto value = [&](const std::vector<int>& u) -> Poly {
        Element head = eval_b_basis(std::vector<int>(u.begin(), u.end() - 1));
        Poly out;
        for (const auto& [id, p] : head)
          out += p.scale(pairing_shifted(id, u.back()));
        return out;
      };
      Poly lhs = value(t);
      std::vector<int> rot(t.begin() + 1, t.end());
      rot.push_back(t.front());
      Poly rhs = value(rot);
      int exp = 0;
      for (int k = 1; k < n; ++k) exp += deg_[t[k]] - 1;
      exp *= deg_[t[0]] - 1;
      if (exp % 2 != 0) rhs = -rhs;
      if (lhs != rhs) {
        std::ostringstream os;
        os << "pairing rotation fails at (";
        for (size_t k = 0; k < t.size(); ++k) os << (k ? ", " : "") << name_[t[k]];
        os << ")";
        return os.str();
      }
    }
  }
  return std::nullopt;
}

Poly elem_pairing(const KoszulAlgebra& k, const Element& a, const Element& b) {
  Poly out;
  for (const auto& [u, p] : a)
    for (const auto& [v, q] : b) {
      Rat c = k.pairing(u, v);
      if (c != 0) out += (p * q).scale(c);
    }
  return out;
}

Poly elem_pairing_shifted(const KoszulAlgebra& k, const Element& a, const Element& b) {
  Poly out;
  for (const auto& [u, p] : a)
    for (const auto& [v, q] : b) {
      Rat c = k.pairing_shifted(u, v);
      if (c != 0) out += (p * q).scale(c);
    }
  return out;
}

Poly potential_value(const KoszulAlgebra& k, const Element& a) {
  Poly out;
  int top = k.max_arity() + 1;
  std::vector<Element> args;
  for (int n = 2; n <= top; ++n) {
    args.assign(n - 1, a);
    out += elem_pairing(k, k.eval_b(args), a).scale(Rat(1) / n);
  }
  return out;
}

}  // namespace mdt

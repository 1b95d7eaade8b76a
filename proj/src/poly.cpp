#include "mdt/poly.hpp"

#include <sstream>

namespace mdt {

Poly Poly::constant(Rat c) {
  Poly p;
  if (c != 0) p.t_[Monomial{}] = std::move(c);
  return p;
}

Poly Poly::var(int v) {
  Poly p;
  p.t_[Monomial{{v, 1}}] = 1;
  return p;
}

void Poly::set_term(const Monomial& m, Rat c) {
  if (c == 0)
    t_.erase(m);
  else
    t_[m] = std::move(c);
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.t_) {
    Rat v = c;
    if (auto it = r.t_.find(m); it != r.t_.end()) v += it->second;
    r.set_term(m, v);
  }
  return r;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : t_) r.t_[m] = -c;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [m1, c1] : t_)
    for (const auto& [m2, c2] : o.t_) {
      Monomial m = m1;
      for (const auto& [v, e] : m2) m[v] += e;
      Rat c = c1 * c2;
      if (auto it = r.t_.find(m); it != r.t_.end()) c += it->second;
      r.set_term(m, c);
    }
  return r;
}

Poly Poly::scale(const Rat& c) const {
  if (c == 0) return Poly();
  Poly r;
  for (const auto& [m, v] : t_) r.t_[m] = v * c;
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw InputError("negative polynomial power");
  Poly r = constant(1);
  for (int i = 0; i < e; ++i) r *= *this;
  return r;
}

namespace {
int mono_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}
}  // namespace

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : t_) d = std::max(d, mono_degree(m));
  return d;
}

Poly Poly::truncate(int maxdeg) const {
  Poly r;
  for (const auto& [m, c] : t_)
    if (mono_degree(m) <= maxdeg) r.t_[m] = c;
  return r;
}

Poly Poly::homogeneous(int d) const {
  Poly r;
  for (const auto& [m, c] : t_)
    if (mono_degree(m) == d) r.t_[m] = c;
  return r;
}

Poly Poly::derivative(int v) const {
  Poly r;
  for (const auto& [m, c] : t_) {
    auto it = m.find(v);
    if (it == m.end()) continue;
    Monomial n = m;
    if (it->second == 1)
      n.erase(v);
    else
      n[v] -= 1;
    Rat nc = c * it->second;
    if (auto jt = r.t_.find(n); jt != r.t_.end()) nc += jt->second;
    r.set_term(n, nc);
  }
  return r;
}

Poly Poly::substitute(int v, const Poly& replacement) const {
  Poly r;
  for (const auto& [m, c] : t_) {
    Monomial rest = m;
    int e = 0;
    if (auto it = rest.find(v); it != rest.end()) {
      e = it->second;
      rest.erase(v);
    }
    Poly piece;
    piece.t_[rest] = c;
    if (e) piece *= replacement.pow(e);
    r += piece;
  }
  return r;
}

Poly Poly::substitute_all(const std::map<int, Poly>& repl) const {
  Poly r;
  for (const auto& [m, c] : t_) {
    Poly piece = Poly::constant(c);
    for (const auto& [v, e] : m) {
      auto it = repl.find(v);
      piece *= (it == repl.end() ? Poly::var(v) : it->second).pow(e);
    }
    r += piece;
  }
  return r;
}

Rat Poly::eval(const std::map<int, Rat>& vals) const {
  Rat r = 0;
  for (const auto& [m, c] : t_) {
    Rat t = c;
    for (const auto& [v, e] : m) {
      auto it = vals.find(v);
      if (it == vals.end()) throw InputError("polynomial evaluation misses a variable");
      for (int i = 0; i < e; ++i) t *= it->second;
    }
    r += t;
  }
  return r;
}

Rat Poly::constant_term() const {
  auto it = t_.find(Monomial{});
  return it == t_.end() ? Rat(0) : it->second;
}

Rat Poly::coefficient(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Rat(0) : it->second;
}

std::set<int> Poly::vars() const {
  std::set<int> r;
  for (const auto& [m, c] : t_)
    for (const auto& [v, e] : m) r.insert(v);
  return r;
}

std::string Poly::str(const std::function<std::string(int)>& namer) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    bool neg = c < 0;
    Rat a = neg ? Rat(-c) : c;
    std::string t;
    if (a != 1 || m.empty()) t = rat_str(a);
    for (const auto& [v, e] : m) {
      if (!t.empty()) t += "*";
      t += namer(v);
      if (e != 1) t += "^" + std::to_string(e);
    }
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    os << t;
  }
  return os.str();
}

std::string Poly::str() const {
  return str([](int v) { return "v" + std::to_string(v); });
}

}  // namespace mdt

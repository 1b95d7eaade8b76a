#include "mdt/motive.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace mdt {

Character Character::of(long long k, long long n) {
  if (n == 0) throw InputError("character needs nonzero order");
  if (n < 0) { n = -n; k = -k; }
  k %= n;
  if (k < 0) k += n;
  long long g = std::gcd(k, n);
  if (g == 0) g = 1;
  return Character{k / g, n / g};
}

Character Character::operator+(const Character& o) const {
  return Character::of(num * o.den + o.num * den, den * o.den);
}

bool Character::operator<(const Character& o) const {
  return num * o.den < o.num * den;
}

std::string Character::str() const {
  std::ostringstream os;
  os << num << "/" << den;
  return os.str();
}

Laurent Laurent::constant(Int c) { return term(std::move(c), 0); }

Laurent Laurent::term(Int c, int exp) {
  Laurent p;
  if (c != 0) p.c_[exp] = std::move(c);
  return p;
}

void Laurent::set_term(int exp, Int c) {
  if (c == 0)
    c_.erase(exp);
  else
    c_[exp] = std::move(c);
}

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent r = *this;
  for (const auto& [e, c] : o.c_) {
    Int v = c;
    auto it = r.c_.find(e);
    if (it != r.c_.end()) v += it->second;
    r.set_term(e, v);
  }
  return r;
}

Laurent Laurent::operator-() const {
  Laurent r;
  for (const auto& [e, c] : c_) r.c_[e] = -c;
  return r;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
  Laurent r;
  for (const auto& [e1, c1] : c_)
    for (const auto& [e2, c2] : o.c_) {
      Int v = c1 * c2;
      auto it = r.c_.find(e1 + e2);
      if (it != r.c_.end()) v += it->second;
      r.set_term(e1 + e2, v);
    }
  return r;
}

Laurent Laurent::shifted(int k) const {
  Laurent r;
  for (const auto& [e, c] : c_) r.c_[e + k] = c;
  return r;
}

int Laurent::min_exp() const {
  if (c_.empty()) throw InputError("min_exp of zero");
  return c_.begin()->first;
}

int Laurent::max_exp() const {
  if (c_.empty()) throw InputError("max_exp of zero");
  return c_.rbegin()->first;
}

Int Laurent::eval_one() const {
  Int r = 0;
  for (const auto& [e, c] : c_) r += c;
  return r;
}

Rat Laurent::eval_L(const Rat& q) const {
  Rat r = 0;
  for (const auto& [e, c] : c_) {
    if (e % 2 != 0) throw InputError("odd power of the half-Tate symbol has no L-value");
    int k = e / 2;
    Rat p = 1;
    Rat base = k >= 0 ? q : Rat(1) / q;
    for (int i = 0; i < std::abs(k); ++i) p *= base;
    r += Rat(c) * p;
  }
  return r;
}

std::optional<Laurent> Laurent::try_divide(const Laurent& num, const Laurent& den) {
  if (den.is_zero()) throw InputError("division by zero");
  if (num.is_zero()) return Laurent();
  // normalize away the unit s-shifts so both sides start at exponent 0
  int an = num.min_exp(), ad = den.min_exp();
  Laurent r = num.shifted(-an);
  Laurent d = den.shifted(-ad);
  int dd = d.max_exp();
  const Int& lead = d.terms().rbegin()->second;
  Laurent q;
  while (!r.is_zero() && r.max_exp() >= dd) {
    const auto& [re, rc] = *r.terms().rbegin();
    if (rc % lead != 0) return std::nullopt;
    Int qc = rc / lead;
    int qe = re - dd;
    q.set_term(qe, qc);
    r -= d.shifted(qe) * Laurent::constant(qc);
  }
  if (!r.is_zero()) return std::nullopt;
  return q.shifted(an - ad);
}

SectorPoly SectorPoly::constant(Int c) { return from_laurent(Laurent::constant(std::move(c))); }

SectorPoly SectorPoly::from_laurent(const Laurent& p) {
  SectorPoly r;
  r.add_term(Character{0, 1}, p);
  return r;
}

SectorPoly SectorPoly::unit_sector(const Character& ch) {
  SectorPoly r;
  r.add_term(ch, Laurent::constant(1));
  return r;
}

void SectorPoly::add_term(const Character& ch, const Laurent& p) {
  if (p.is_zero()) return;
  auto it = sec_.find(ch);
  if (it == sec_.end()) {
    sec_[ch] = p;
  } else {
    it->second += p;
    if (it->second.is_zero()) sec_.erase(it);
  }
}

const Laurent* SectorPoly::sector(const Character& ch) const {
  auto it = sec_.find(ch);
  return it == sec_.end() ? nullptr : &it->second;
}

bool SectorPoly::trivial_only() const {
  for (const auto& [ch, p] : sec_)
    if (!ch.trivial()) return false;
  return true;
}

SectorPoly SectorPoly::operator+(const SectorPoly& o) const {
  SectorPoly r = *this;
  for (const auto& [ch, p] : o.sec_) r.add_term(ch, p);
  return r;
}

SectorPoly SectorPoly::operator-() const {
  SectorPoly r;
  for (const auto& [ch, p] : sec_) r.sec_[ch] = -p;
  return r;
}

SectorPoly SectorPoly::operator-(const SectorPoly& o) const { return *this + (-o); }

SectorPoly SectorPoly::mul_naive(const SectorPoly& a, const SectorPoly& b) {
  SectorPoly r;
  for (const auto& [c1, p1] : a.sec_)
    for (const auto& [c2, p2] : b.sec_) r.add_term(c1 + c2, p1 * p2);
  return r;
}

SectorPoly SectorPoly::mul_exotic(const SectorPoly& a, const SectorPoly& b) {
  SectorPoly r;
  for (const auto& [c1, p1] : a.sec_)
    for (const auto& [c2, p2] : b.sec_) {
      Character c = c1 + c2;
      Laurent p = p1 * p2;
      if (!c1.trivial() && !c2.trivial()) p = p.shifted(c.trivial() ? 2 : 1);
      r.add_term(c, p);
    }
  return r;
}

namespace {

Laurent cyclo_factor(int c) { return Laurent::L(c) - Laurent::constant(1); }

Laurent den_product(const std::map<int, int>& den) {
  Laurent p = Laurent::constant(1);
  for (const auto& [c, m] : den)
    for (int i = 0; i < m; ++i) p *= cyclo_factor(c);
  return p;
}

SectorPoly scale(const SectorPoly& a, const Laurent& f) {
  SectorPoly r;
  for (const auto& [ch, p] : a.sectors()) r.add_term(ch, p * f);
  return r;
}

}  // namespace

void MotiveExpr::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto it = den_.begin(); it != den_.end();) {
      Laurent f = cyclo_factor(it->first);
      SectorPoly q;
      bool ok = true;
      for (const auto& [ch, p] : num_.sectors()) {
        auto d = Laurent::try_divide(p, f);
        if (!d) {
          ok = false;
          break;
        }
        q.add_term(ch, *d);
      }
      if (ok) {
        num_ = q;
        if (--it->second == 0)
          it = den_.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
  }
}

MotiveExpr MotiveExpr::chi(long long k, long long n) {
  return MotiveExpr(SectorPoly::unit_sector(Character::of(k, n)));
}

MotiveExpr MotiveExpr::operator+(const MotiveExpr& o) const {
  std::map<int, int> den;
  for (const auto& [c, m] : den_) den[c] = m;
  for (const auto& [c, m] : o.den_) den[c] = std::max(den[c], m);
  std::map<int, int> ca, cb;
  for (const auto& [c, m] : den) {
    int ma = 0, mb = 0;
    if (auto it = den_.find(c); it != den_.end()) ma = it->second;
    if (auto it = o.den_.find(c); it != o.den_.end()) mb = it->second;
    if (m - ma) ca[c] = m - ma;
    if (m - mb) cb[c] = m - mb;
  }
  SectorPoly n = scale(num_, den_product(ca)) + scale(o.num_, den_product(cb));
  return MotiveExpr(std::move(n), std::move(den));
}

MotiveExpr MotiveExpr::operator-() const {
  MotiveExpr r = *this;
  r.num_ = -r.num_;
  return r;
}

MotiveExpr MotiveExpr::operator-(const MotiveExpr& o) const { return *this + (-o); }

MotiveExpr MotiveExpr::mul_naive(const MotiveExpr& a, const MotiveExpr& b) {
  std::map<int, int> den = a.den_;
  for (const auto& [c, m] : b.den_) den[c] += m;
  return MotiveExpr(SectorPoly::mul_naive(a.num_, b.num_), std::move(den));
}

MotiveExpr MotiveExpr::mul_exotic(const MotiveExpr& a, const MotiveExpr& b) {
  std::map<int, int> den = a.den_;
  for (const auto& [c, m] : b.den_) den[c] += m;
  return MotiveExpr(SectorPoly::mul_exotic(a.num_, b.num_), std::move(den));
}

namespace {

// num/den is invertible when the numerator is a unit times s-shifts,
// sector units, and cyclotomic-type factors
MotiveExpr invert(const MotiveExpr& x) {
  if (x.is_zero()) throw InputError("division by zero motive");
  SectorPoly n = x.numerator();
  std::map<int, int> extracted;
  if (n.sectors().size() == 1 && n.sectors().begin()->first.trivial()) {
    Laurent p = n.sectors().begin()->second;
    int span = (p.max_exp() - p.min_exp()) / 2;
    for (int c = span; c >= 1; --c) {
      while (true) {
        auto q = Laurent::try_divide(p, cyclo_factor(c));
        if (!q) break;
        p = *q;
        extracted[c]++;
        if (p.terms().size() == 1) break;
      }
    }
    n = SectorPoly::from_laurent(p);
  }
  if (n.sectors().size() != 1 || n.sectors().begin()->second.terms().size() != 1)
    throw InputError("expression is not invertible");
  Character ch = n.sectors().begin()->first;
  const auto& [e, c] = *n.sectors().begin()->second.terms().begin();
  if (c != 1 && c != -1) throw InputError("expression is not invertible");
  Character chinv = Character::of(-ch.num, ch.den);
  SectorPoly inv;
  inv.add_term(chinv, Laurent::term(c, -e));
  MotiveExpr r(std::move(inv), std::move(extracted));
  // the old denominator moves up into the numerator
  SectorPoly up = scale(r.numerator(), den_product(x.denominator()));
  return MotiveExpr(std::move(up), r.denominator());
}

}  // namespace

MotiveExpr MotiveExpr::pow(long e) const {
  if (e < 0) return invert(*this).pow(-e);
  MotiveExpr r = one();
  MotiveExpr base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

bool MotiveExpr::operator==(const MotiveExpr& o) const {
  SectorPoly lhs = scale(num_, den_product(o.den_));
  SectorPoly rhs = scale(o.num_, den_product(den_));
  return lhs == rhs;
}

Int MotiveExpr::euler_specialize() const {
  if (!den_.empty()) throw PoleAtOne("denominator does not cancel; Euler specialization has a pole");
  Int r = 0;
  for (const auto& [ch, p] : num_.sectors()) r += p.eval_one();
  return r;
}

SectorPoly MotiveExpr::chi_eq() const {
  if (!den_.empty()) throw NonPolynomial("expression is not polynomial over the sectors");
  return num_;
}

MotiveExpr mu_n_class(long long n) {
  if (n <= 0) throw InputError("mu_n needs n >= 1");
  SectorPoly r;
  for (long long k = 0; k < n; ++k) r.add_term(Character::of(k, n), Laurent::constant(1));
  return MotiveExpr(std::move(r));
}

MotiveExpr gl_class(long long n) {
  if (n < 0) throw InputError("gl_class needs n >= 0");
  Laurent p = Laurent::s(static_cast<int>(n * (n - 1)));
  for (int c = 1; c <= n; ++c) p *= cyclo_factor(c);
  return MotiveExpr(SectorPoly::from_laurent(p));
}

MotiveExpr gl_inverse(long long n) {
  if (n < 0) throw InputError("gl_inverse needs n >= 0");
  std::map<int, int> den;
  for (int c = 1; c <= n; ++c) den[c] = 1;
  return MotiveExpr(SectorPoly::from_laurent(Laurent::s(static_cast<int>(-n * (n - 1)))), std::move(den));
}

// ---- printing ----

namespace {

std::string monomial_str(int e) {
  std::ostringstream os;
  if (e % 2 == 0) {
    os << "L";
    if (e != 2) os << "^" << e / 2;
  } else {
    os << "s";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

void append_term(std::ostringstream& os, bool& first, bool neg, const std::string& body) {
  if (first) {
    if (neg) os << "-";
    first = false;
  } else {
    os << (neg ? " - " : " + ");
  }
  os << body;
}

std::string laurent_str(const Laurent& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    bool neg = c < 0;
    Int a = neg ? Int(-c) : c;
    std::string t;
    if (a != 1 || e == 0) t = a.get_str();
    if (e != 0) {
      if (!t.empty()) t += "*";
      t += monomial_str(e);
    }
    append_term(os, first, neg, t);
  }
  return os.str();
}

std::string sector_poly_str(const SectorPoly& sp) {
  if (sp.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (const Laurent* triv = sp.sector(Character{0, 1})) {
    for (const auto& [e, c] : triv->terms()) {
      bool neg = c < 0;
      Int a = neg ? Int(-c) : c;
      std::string t;
      if (a != 1 || e == 0) t = a.get_str();
      if (e != 0) {
        if (!t.empty()) t += "*";
        t += monomial_str(e);
      }
      append_term(os, first, neg, t);
    }
  }
  // sectors sharing a coefficient print once, over a sum of characters
  std::vector<std::pair<Laurent, std::vector<Character>>> groups;
  for (const auto& [ch, p] : sp.sectors()) {
    if (ch.trivial()) continue;
    bool found = false;
    for (auto& [gp, chars] : groups)
      if (gp == p) {
        chars.push_back(ch);
        found = true;
        break;
      }
    if (!found) groups.push_back({p, {ch}});
  }
  for (const auto& [p, chars] : groups) {
    std::string chipart;
    if (chars.size() == 1) {
      chipart = "chi(" + chars[0].str() + ")";
    } else {
      chipart = "(";
      for (size_t i = 0; i < chars.size(); ++i) {
        if (i) chipart += "+";
        chipart += "chi(" + chars[i].str() + ")";
      }
      chipart += ")";
    }
    if (p.terms().size() == 1) {
      const auto& [e, c] = *p.terms().begin();
      bool neg = c < 0;
      Int a = neg ? Int(-c) : c;
      std::string t;
      if (a != 1) t = a.get_str();
      if (e != 0) {
        if (!t.empty()) t += "*";
        t += monomial_str(e);
      }
      if (!t.empty()) t += "*";
      t += chipart;
      append_term(os, first, neg, t);
    } else {
      append_term(os, first, false, "(" + laurent_str(p) + ")*" + chipart);
    }
  }
  return os.str();
}

}  // namespace

std::string MotiveExpr::str() const {
  if (num_.is_zero()) return "0";
  SectorPoly display = num_;
  std::string tail;
  for (const auto& [c, m] : den_) {
    // GLinv(c) carries s^{-c(c-1)} and the lower factors; compensate so the
    // printed product equals the stored value
    Laurent comp = Laurent::s(c * (c - 1));
    for (int j = 1; j < c; ++j) comp *= cyclo_factor(j);
    for (int i = 0; i < m; ++i) display = scale(display, comp);
    std::ostringstream os;
    os << " * GLinv(" << c << ")";
    if (m != 1) os << "^" << m;
    tail += os.str();
  }
  std::string head = sector_poly_str(display);
  if (tail.empty()) return head;
  bool atomic = display.sectors().size() == 1 &&
                display.sectors().begin()->second.terms().size() == 1 &&
                head.find('-') == std::string::npos;
  if (head == "1") return tail.substr(3);
  if (!atomic) head = "(" + head + ")";
  return head + tail;
}

// ---- parsing ----

namespace {

struct Lexer {
  std::string src;
  size_t pos = 0;

  explicit Lexer(std::string s) : src(std::move(s)) {}

  void skip() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool eof() {
    skip();
    return pos >= src.size();
  }

  char peek() {
    skip();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "' at position " + std::to_string(pos));
  }

  long long integer() {
    skip();
    bool neg = accept('-');
    skip();
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
      throw ParseError("expected integer at position " + std::to_string(pos));
    long long v = 0;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
      v = v * 10 + (src[pos] - '0');
      ++pos;
    }
    return neg ? -v : v;
  }

  std::string ident() {
    skip();
    size_t start = pos;
    while (pos < src.size() && std::isalpha(static_cast<unsigned char>(src[pos]))) ++pos;
    return src.substr(start, pos - start);
  }
};

class Parser {
 public:
  explicit Parser(std::string s) : lex_(std::move(s)) {}

  MotiveExpr run() {
    MotiveExpr e = expr();
    if (!lex_.eof()) throw ParseError("trailing input at position " + std::to_string(lex_.pos));
    return e;
  }

 private:
  Lexer lex_;

  MotiveExpr expr() {
    MotiveExpr e = term();
    while (true) {
      if (lex_.accept('+'))
        e += term();
      else if (lex_.accept('-'))
        e -= term();
      else
        return e;
    }
  }

  MotiveExpr term() {
    MotiveExpr e = unary();
    while (lex_.accept('*')) e *= unary();
    return e;
  }

  MotiveExpr unary() {
    if (lex_.accept('-')) return -unary();
    return power();
  }

  MotiveExpr power() {
    MotiveExpr e = atom();
    if (lex_.accept('^')) {
      long long ex;
      if (lex_.accept('(')) {
        ex = lex_.integer();
        lex_.expect(')');
      } else {
        ex = lex_.integer();
      }
      e = e.pow(ex);
    }
    return e;
  }

  MotiveExpr atom() {
    char c = lex_.peek();
    if (c == '(') {
      lex_.expect('(');
      MotiveExpr e = expr();
      lex_.expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return MotiveExpr::constant(Int(static_cast<long>(lex_.integer())));
    std::string id = lex_.ident();
    if (id == "s") return MotiveExpr::s();
    if (id == "L") return MotiveExpr::L();
    if (id == "chi") {
      lex_.expect('(');
      long long k = lex_.integer();
      lex_.expect('/');
      long long n = lex_.integer();
      lex_.expect(')');
      return MotiveExpr::chi(k, n);
    }
    if (id == "GLinv") {
      lex_.expect('(');
      long long n = lex_.integer();
      lex_.expect(')');
      return gl_inverse(n);
    }
    throw ParseError("unexpected token at position " + std::to_string(lex_.pos));
  }
};

}  // namespace

MotiveExpr parse_motive(const std::string& text) { return Parser(text).run(); }

}  // namespace mdt

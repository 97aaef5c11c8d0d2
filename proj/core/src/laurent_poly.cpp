#include "primform/laurent_poly.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <set>
#include <sstream>

#include "primform/error.hpp"

namespace primform {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) {
    throw Error(ErrorKind::Parse, "not a rational number: '" + std::string(text) + "'");
  }
  if (r.get_den() == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Symbol s, int exponent) {
  Monomial m;
  if (exponent != 0) m.powers_.emplace_back(s.id(), exponent);
  return m;
}

int Monomial::exponent(Symbol s) const {
  auto it = std::lower_bound(powers_.begin(), powers_.end(), Power{s.id(), INT32_MIN});
  return (it != powers_.end() && it->first == s.id()) ? it->second : 0;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [id, e] : powers_) d += e;
  return d;
}

bool Monomial::is_polynomial() const {
  return std::all_of(powers_.begin(), powers_.end(), [](const Power& p) { return p.second > 0; });
}

Monomial Monomial::with_exponent(Symbol s, int exponent) const {
  Monomial m = *this;
  auto it = std::lower_bound(m.powers_.begin(), m.powers_.end(), Power{s.id(), INT32_MIN});
  if (it != m.powers_.end() && it->first == s.id()) {
    if (exponent == 0) {
      m.powers_.erase(it);
    } else {
      it->second = exponent;
    }
  } else if (exponent != 0) {
    m.powers_.insert(it, Power{s.id(), exponent});
  }
  return m;
}

Monomial Monomial::inverse() const {
  Monomial m = *this;
  for (auto& p : m.powers_) p.second = -p.second;
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  auto& out = m.powers_;
  out.reserve(a.powers_.size() + b.powers_.size());
  auto i = a.powers_.begin();
  auto j = b.powers_.begin();
  while (i != a.powers_.end() || j != b.powers_.end()) {
    if (j == b.powers_.end() || (i != a.powers_.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.powers_.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      int e = i->second + j->second;
      if (e != 0) out.emplace_back(i->first, e);
      ++i;
      ++j;
    }
  }
  return m;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [id, e] : powers_) {
    if (!out.empty()) out += '*';
    out += Symbol::from_id(id).name();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  const auto& pa = a.powers();
  const auto& pb = b.powers();
  auto i = pa.begin();
  auto j = pb.begin();
  while (i != pa.end() || j != pb.end()) {
    if (j == pb.end() || (i != pa.end() && i->first < j->first)) return i->second < 0;
    if (i == pa.end() || j->first < i->first) return j->second > 0;
    if (i->second != j->second) return i->second < j->second;
    ++i;
    ++j;
  }
  return false;
}

Monomial monomial_min(const Monomial& a, const Monomial& b) {
  Monomial m;
  std::set<std::uint32_t> ids;
  for (const auto& p : a.powers()) ids.insert(p.first);
  for (const auto& p : b.powers()) ids.insert(p.first);
  for (auto id : ids) {
    Symbol s = Symbol::from_id(id);
    int e = std::min(a.exponent(s), b.exponent(s));
    if (e != 0) m = m * Monomial::of(s, e);
  }
  return m;
}

// ------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) {
    Rational v = c;
    v.canonicalize();
    terms_.emplace(Monomial(), v);
  }
}

LaurentPoly LaurentPoly::variable(Symbol s, int exponent) {
  return term(Rational(1), Monomial::of(s, exponent));
}

LaurentPoly LaurentPoly::term(const Rational& c, const Monomial& m) {
  LaurentPoly p;
  if (c != 0) {
    Rational v = c;
    v.canonicalize();
    p.terms_.emplace(m, v);
  }
  return p;
}

void LaurentPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

bool LaurentPoly::is_polynomial() const {
  for (const auto& [m, c] : terms_) {
    for (const auto& p : m.powers()) {
      if (p.second < 0) return false;
    }
  }
  return true;
}

Rational LaurentPoly::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational LaurentPoly::constant_value() const {
  if (!is_constant()) throw Error(ErrorKind::Unsupported, "expected a constant, got " + to_string());
  return constant_term();
}

std::pair<Monomial, Rational> LaurentPoly::leading_term() const {
  if (terms_.empty()) throw Error(ErrorKind::DivisionByZero, "leading term of zero");
  return *terms_.rbegin();
}

std::pair<Monomial, Rational> LaurentPoly::trailing_term() const {
  if (terms_.empty()) throw Error(ErrorKind::DivisionByZero, "trailing term of zero");
  return *terms_.begin();
}

std::optional<LaurentPoly> LaurentPoly::unit_inverse() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms_.begin();
  return term(1 / c, m.inverse());
}

int LaurentPoly::degree(Symbol s) const {
  if (terms_.empty()) return 0;
  int d = INT32_MIN;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(s));
  return d;
}

int LaurentPoly::low_degree(Symbol s) const {
  if (terms_.empty()) return 0;
  int d = INT32_MAX;
  for (const auto& [m, c] : terms_) d = std::min(d, m.exponent(s));
  return d;
}

bool LaurentPoly::involves(Symbol s) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [s](const auto& t) { return t.first.involves(s); });
}

std::vector<Symbol> LaurentPoly::symbols() const {
  std::set<std::uint32_t> ids;
  for (const auto& [m, c] : terms_) {
    for (const auto& p : m.powers()) ids.insert(p.first);
  }
  std::vector<Symbol> out;
  for (auto id : ids) out.push_back(Symbol::from_id(id));
  return out;
}

int LaurentPoly::total_degree(std::span<const Symbol> over) const {
  int best = INT32_MIN;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (Symbol s : over) d += m.exponent(s);
    best = std::max(best, d);
  }
  return terms_.empty() ? 0 : best;
}

Monomial LaurentPoly::min_monomial() const {
  if (terms_.empty()) return Monomial();
  Monomial m = terms_.begin()->first;
  for (const auto& [t, c] : terms_) m = monomial_min(m, t);
  return m;
}

LaurentPoly LaurentPoly::coefficient(Symbol s, int k) const {
  LaurentPoly out;
  for (const auto& [m, c] : terms_) {
    if (m.exponent(s) == k) out.terms_.emplace(m.without(s), c);
  }
  return out;
}

std::map<int, LaurentPoly> LaurentPoly::coefficients(Symbol s) const {
  std::map<int, LaurentPoly> out;
  for (const auto& [m, c] : terms_) out[m.exponent(s)].terms_.emplace(m.without(s), c);
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly p;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
  }
  return p;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  LaurentPoly p = *this;
  for (auto& [m, v] : p.terms_) v *= c;
  return p;
}

LaurentPoly LaurentPoly::times(const Monomial& m) const {
  LaurentPoly p;
  for (const auto& [t, c] : terms_) p.terms_.emplace_hint(p.terms_.end(), t * m, c);
  return p;
}

LaurentPoly LaurentPoly::pow(int n) const {
  if (n < 0) {
    auto inv = unit_inverse();
    if (!inv) throw Error(ErrorKind::NonInvertibleLeadingCoefficient, "negative power of non-unit " + to_string());
    return inv->pow(-n);
  }
  LaurentPoly result(1), base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::diff(Symbol s, std::span<const ExpRule> rules) const {
  LaurentPoly out;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(s);
    if (e != 0) out.add_term(m.with_exponent(s, e - 1), c * e);
    for (const auto& rule : rules) {
      if (rule.coordinate != s) continue;
      int k = m.exponent(rule.exp_symbol);
      if (k != 0) out.add_term(m, c * k);
    }
  }
  return out;
}

LaurentPoly LaurentPoly::log_derivative(Symbol s) const {
  LaurentPoly out;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(s);
    if (e != 0) out.terms_.emplace_hint(out.terms_.end(), m, c * e);
  }
  return out;
}

LaurentPoly LaurentPoly::substitute(const std::map<Symbol, LaurentPoly>& values) const {
  std::map<std::pair<std::uint32_t, int>, LaurentPoly> cache;
  auto power = [&](Symbol s, const LaurentPoly& v, int e) -> const LaurentPoly& {
    auto key = std::make_pair(s.id(), e);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, v.pow(e)).first;
    return it->second;
  };
  LaurentPoly out;
  for (const auto& [m, c] : terms_) {
    Monomial kept;
    LaurentPoly factor(c);
    for (const auto& [id, e] : m.powers()) {
      Symbol s = Symbol::from_id(id);
      auto it = values.find(s);
      if (it == values.end()) {
        kept = kept * Monomial::of(s, e);
      } else {
        factor *= power(s, it->second, e);
      }
    }
    out += factor.times(kept);
  }
  return out;
}

LaurentPoly LaurentPoly::truncated(Symbol s, int max_exponent) const {
  LaurentPoly out;
  for (const auto& [m, c] : terms_) {
    if (m.exponent(s) <= max_exponent) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

LaurentPoly LaurentPoly::homogeneous_part(std::span<const Symbol> over, int degree) const {
  LaurentPoly out;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (Symbol s : over) d += m.exponent(s);
    if (d == degree) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (m.is_one()) {
      out += primform::to_string(a);
    } else {
      if (a != 1) out += primform::to_string(a) + "*";
      out += m.to_string();
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

// ------------------------------------------------------------------ parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  LaurentPoly parse() {
    LaurentPoly p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, what + " at offset " + std::to_string(pos_) + " in '" +
                                      std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  LaurentPoly expr() {
    LaurentPoly p = term();
    while (true) {
      if (accept('+')) {
        p += term();
      } else if (accept('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }

  LaurentPoly term() {
    LaurentPoly p = unary();
    while (true) {
      if (accept('*')) {
        p *= unary();
      } else if (accept('/')) {
        auto inv = unary().unit_inverse();
        if (!inv) fail("division by a non-monomial");
        p *= *inv;
      } else {
        return p;
      }
    }
  }

  LaurentPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    LaurentPoly base = atom();
    if (accept('^')) {
      bool negative = accept('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      return base.pow(negative ? -e : e);
    }
    return base;
  }

  LaurentPoly atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      LaurentPoly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return LaurentPoly(parse_rational(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return LaurentPoly::variable(text_.substr(start, pos_ - start));
    }
    fail("unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------- division & gcd

namespace {

// Polynomial division by a single divisor in lex order; exact or nothing.
std::optional<LaurentPoly> divide_polynomial(LaurentPoly r, const LaurentPoly& b) {
  const auto [mb, cb] = b.leading_term();
  LaurentPoly q;
  while (!r.is_zero()) {
    const auto [mr, cr] = r.leading_term();
    Monomial m = mr / mb;
    if (!m.is_polynomial() && !m.is_one()) return std::nullopt;
    LaurentPoly t = LaurentPoly::term(cr / cb, m);
    q += t;
    r -= t * b;
  }
  return q;
}

Symbol main_symbol(const LaurentPoly& a, const LaurentPoly& b) {
  auto sa = a.symbols();
  auto sb = b.symbols();
  if (sa.empty()) return sb.front();
  if (sb.empty()) return sa.front();
  return std::min(sa.front(), sb.front());
}

LaurentPoly monic(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading_term().second);
}

LaurentPoly gcd_rec(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly content(const LaurentPoly& p, Symbol x) {
  LaurentPoly g;
  for (const auto& [k, c] : p.coefficients(x)) {
    g = gcd_rec(g, c);
    if (g.is_constant()) return LaurentPoly(1);
  }
  return g;
}

// lc(b)^(deg a - deg b + 1) * a reduced modulo b in x.
LaurentPoly pseudo_remainder(LaurentPoly r, const LaurentPoly& b, Symbol x) {
  int n = b.degree(x);
  LaurentPoly lb = b.coefficient(x, n);
  int steps = r.degree(x) - n + 1;
  while (!r.is_zero() && r.degree(x) >= n) {
    int m = r.degree(x);
    LaurentPoly lr = r.coefficient(x, m);
    r = lb * r - (lr * b).times(Monomial::of(x, m - n));
    --steps;
  }
  if (steps > 0 && !r.is_zero()) r *= lb.pow(steps);
  return r;
}

LaurentPoly exact(const LaurentPoly& a, const LaurentPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error(ErrorKind::InconsistentSystem, "gcd: inexact division");
  return *q;
}

LaurentPoly gcd_rec(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return LaurentPoly(1);
  Symbol x = main_symbol(a, b);
  if (!a.involves(x)) return gcd_rec(a, content(b, x));
  if (!b.involves(x)) return gcd_rec(content(a, x), b);
  LaurentPoly ca = content(a, x);
  LaurentPoly cb = content(b, x);
  LaurentPoly gc = gcd_rec(ca, cb);
  LaurentPoly p = exact(a, ca);
  LaurentPoly r = exact(b, cb);
  if (p.degree(x) < r.degree(x)) std::swap(p, r);
  // Subresultant remainder sequence.
  LaurentPoly g(1), h(1);
  while (true) {
    int d = p.degree(x) - r.degree(x);
    LaurentPoly rem = pseudo_remainder(p, r, x);
    if (rem.is_zero()) break;
    if (!rem.involves(x)) {
      r = LaurentPoly(1);
      break;
    }
    p = std::move(r);
    r = exact(rem, g * h.pow(d));
    g = p.coefficient(x, p.degree(x));
    if (d > 0) h = d == 1 ? g : exact(g.pow(d), h.pow(d - 1));
  }
  if (r.degree(x) == 0) return monic(gc);
  return monic(gc * exact(r, content(r, x)));
}

}  // namespace

std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "exact division by zero");
  if (a.is_zero()) return LaurentPoly();
  if (auto inv = b.unit_inverse()) return a * *inv;
  Monomial ma = a.min_monomial();
  Monomial mb = b.min_monomial();
  auto q = divide_polynomial(a.times(ma.inverse()), b.times(mb.inverse()));
  if (!q) return std::nullopt;
  return q->times(ma / mb);
}

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (!a.is_polynomial() || !b.is_polynomial()) {
    throw Error(ErrorKind::Unsupported, "gcd of Laurent polynomials: shift to polynomials first");
  }
  return gcd_rec(a, b);
}

LaurentPoly integrate(const LaurentPoly& p, Symbol s, std::span<const ExpRule> rules) {
  std::optional<Symbol> exp_symbol;
  for (const auto& rule : rules) {
    if (rule.coordinate == s) exp_symbol = rule.exp_symbol;
  }
  LaurentPoly out;
  for (const auto& [m, c] : p.terms()) {
    int b = m.exponent(s);
    int k = exp_symbol ? m.exponent(*exp_symbol) : 0;
    if (k == 0) {
      if (b == -1) {
        throw Error(ErrorKind::LogObstruction, "antiderivative of " + m.to_string() + " in " + s.name());
      }
      out += LaurentPoly::term(c / (b + 1), m.with_exponent(s, b + 1));
      continue;
    }
    if (b < 0) throw Error(ErrorKind::Unsupported, "negative power times exponential in " + s.name());
    // t^b e^{kt}: e^{kt} sum_j (-1)^j b!/(b-j)! t^{b-j} / k^{j+1}
    Rational falling(1);
    Rational kpow(k);
    for (int j = 0; j <= b; ++j) {
      Rational coef = c * falling / kpow;
      if (j % 2 == 1) coef = -coef;
      out += LaurentPoly::term(coef, m.with_exponent(s, b - j));
      falling *= (b - j);
      kpow *= k;
    }
  }
  return out;
}

}  // namespace primform

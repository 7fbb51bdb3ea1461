#include "confalg/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <sstream>

namespace confalg {

namespace {

constexpr std::array<const char*, kVarCount> kVarNames = {"D", "x", "l", "m", "t"};

int total(const ExpVec& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

const char* var_name(Var v) { return kVarNames[static_cast<int>(v)]; }

Var var_from_name(std::string_view name) {
  for (int i = 0; i < kVarCount; ++i)
    if (name == kVarNames[i]) return static_cast<Var>(i);
  throw ParseError("unknown variable name: " + std::string(name));
}

bool GrlexLess::operator()(const ExpVec& a, const ExpVec& b) const {
  int ta = total(a), tb = total(b);
  if (ta != tb) return ta < tb;
  for (int i = 0; i < kVarCount; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

MultiPoly MultiPoly::constant(Rational c) {
  MultiPoly p;
  p.insert_term(ExpVec{}, c);
  return p;
}

MultiPoly MultiPoly::variable(Var v) {
  ExpVec e{};
  e[static_cast<int>(v)] = 1;
  return monomial(e, Rational(1));
}

MultiPoly MultiPoly::monomial(const ExpVec& e, Rational c) {
  for (int d : e)
    if (d < 0) throw ArithmeticError("negative exponent");
  MultiPoly p;
  p.insert_term(e, c);
  return p;
}

void MultiPoly::insert_term(const ExpVec& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

Rational MultiPoly::constant_term() const {
  auto it = terms_.find(ExpVec{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return total(terms_.rbegin()->first);  // grlex: last term has max total degree
}

int MultiPoly::degree_in(Var v) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<int>(v)]);
  return d;
}

bool MultiPoly::uses_only(std::initializer_list<Var> vars) const {
  std::array<bool, kVarCount> ok{};
  for (Var v : vars) ok[static_cast<int>(v)] = true;
  for (const auto& [e, c] : terms_)
    for (int i = 0; i < kVarCount; ++i)
      if (e[i] > 0 && !ok[i]) return false;
  return true;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) insert_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) insert_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      ExpVec e;
      for (int i = 0; i < kVarCount; ++i) e[i] = ea[i] + eb[i];
      r.insert_term(e, ca * cb);
    }
  return r;
}

MultiPoly operator*(const MultiPoly& a, const Rational& c) {
  MultiPoly r;
  if (c.is_zero()) return r;
  for (const auto& [e, co] : a.terms_) r.terms_.emplace(e, co * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(Rational(1));
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

int MultiPoly::compare(const MultiPoly& o) const {
  auto it = terms_.rbegin();
  auto jt = o.terms_.rbegin();
  GrlexLess less;
  for (; it != terms_.rend() && jt != o.terms_.rend(); ++it, ++jt) {
    if (it->first != jt->first) return less(it->first, jt->first) ? -1 : 1;
    int c = it->second.compare(jt->second);
    if (c != 0) return c;
  }
  if (it != terms_.rend()) return 1;
  if (jt != o.terms_.rend()) return -1;
  return 0;
}

MultiPoly MultiPoly::substitute(const std::map<Var, MultiPoly>& assignment) const {
  for (const auto& [v, img] : assignment)
    if (img.total_degree() > 1)
      throw PreconditionError(std::string("substitution image for ") + var_name(v) +
                              " is not affine");
  // Powers of each image, grown on demand.
  std::array<std::vector<MultiPoly>, kVarCount> pows;
  std::array<bool, kVarCount> mapped{};
  for (const auto& [v, img] : assignment) {
    int i = static_cast<int>(v);
    mapped[i] = true;
    pows[i] = {MultiPoly::constant(Rational(1)), img};
  }
  auto power = [&](int i, int k) -> const MultiPoly& {
    auto& ps = pows[i];
    while (static_cast<int>(ps.size()) <= k) ps.push_back(ps.back() * ps[1]);
    return ps[k];
  };
  MultiPoly result;
  for (const auto& [e, c] : terms_) {
    ExpVec fixed{};
    MultiPoly term = MultiPoly::constant(c);
    for (int i = 0; i < kVarCount; ++i) {
      if (e[i] == 0) continue;
      if (mapped[i])
        term = term * power(i, e[i]);
      else
        fixed[i] = e[i];
    }
    result += term * MultiPoly::monomial(fixed, Rational(1));
  }
  return result;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(Var v) const {
  std::vector<MultiPoly> out;
  int iv = static_cast<int>(v);
  for (const auto& [e, c] : terms_) {
    int k = e[iv];
    if (static_cast<int>(out.size()) <= k) out.resize(k + 1);
    ExpVec rest = e;
    rest[iv] = 0;
    out[k].insert_term(rest, c);
  }
  return out;
}

std::vector<MultiPoly> MultiPoly::divided_coefficients_in(Var v) const {
  auto out = coefficients_in(v);
  for (size_t n = 0; n < out.size(); ++n) out[n] = out[n] * factorial(static_cast<unsigned>(n));
  return out;
}

MultiPoly MultiPoly::coefficient_of(Var v, int k) const {
  MultiPoly out;
  int iv = static_cast<int>(v);
  for (const auto& [e, c] : terms_) {
    if (e[iv] != k) continue;
    ExpVec rest = e;
    rest[iv] = 0;
    out.insert_term(rest, c);
  }
  return out;
}

Rational MultiPoly::leading_coefficient() const {
  if (terms_.empty()) return Rational(0);
  return terms_.rbegin()->second;
}

MultiPoly::DivMod MultiPoly::divmod_in(Var v, const MultiPoly& d) const {
  if (d.is_zero()) throw ArithmeticError("division by zero polynomial");
  if (!d.is_univariate_in(v))
    throw ArithmeticError(std::string("divisor not univariate in ") + var_name(v));
  int degd = d.degree_in(v);
  Rational lc = d.coefficient_of(v, degd).constant_term();
  MultiPoly q, r = *this;
  int iv = static_cast<int>(v);
  while (!r.is_zero() && r.degree_in(v) >= degd) {
    int degr = r.degree_in(v);
    MultiPoly lead = r.coefficient_of(v, degr);  // free of v, may involve others
    ExpVec shift{};
    shift[iv] = degr - degd;
    MultiPoly qt = lead * MultiPoly::monomial(shift, lc.inverse());
    q += qt;
    r -= qt * d;
  }
  return {q, r};
}

Rational MultiPoly::content() const {
  if (terms_.empty()) return Rational(0);
  mpz_class num(0), den(1);
  for (const auto& [e, c] : terms_) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), c.numerator().get_mpz_t());
    num = g;
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), c.denominator().get_mpz_t());
    den = l;
  }
  return Rational(mpq_class(num, den));
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c;
    if (first) {
      if (c.sign() < 0) {
        os << "-";
        mag = -c;
      }
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
      mag = c.abs();
    }
    first = false;
    bool has_vars = total(e) > 0;
    bool coef_shown = !mag.is_one() || !has_vars;
    if (coef_shown) os << mag.to_string();
    bool need_star = coef_shown;
    // Factor order D, l, m, t, x: the parameters come first, x last.
    static constexpr int kPrintOrder[kVarCount] = {0, 2, 3, 4, 1};
    for (int k = 0; k < kVarCount; ++k) {
      int i = kPrintOrder[k];
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << kVarNames[i];
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  MultiPoly run() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }

 private:
  MultiPoly expr() {
    skip_ws();
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = (take() == '-');
    MultiPoly p = term();
    if (neg) p = -p;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c == '+' || c == '-') {
        take();
        MultiPoly t = term();
        if (c == '+')
          p += t;
        else
          p -= t;
      } else {
        return p;
      }
    }
  }

  MultiPoly term() {
    MultiPoly p = factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        take();
        p = p * factor();
      } else {
        return p;
      }
    }
  }

  MultiPoly factor() {
    MultiPoly p = primary();
    skip_ws();
    if (peek() == '^') {
      take();
      skip_ws();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
      p = p.pow(e);
    }
    return p;
  }

  MultiPoly primary() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      take();
      MultiPoly p = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      take();
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        size_t dstart = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (dstart == pos_) fail("expected denominator");
      }
      return MultiPoly::constant(Rational::from_string(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return MultiPoly::variable(var_from_name(s_.substr(start, pos_ - start)));
    }
    fail("unexpected character");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char take() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("polynomial parse error at position " + std::to_string(pos_) + ": " + why +
                     " in \"" + std::string(s_) + "\"");
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

MultiPoly MultiPoly::parse(std::string_view text) { return PolyParser(text).run(); }

}  // namespace confalg

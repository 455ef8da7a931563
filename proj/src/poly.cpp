#include "reflsos/poly.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace rsos {

Rat rat_parse(const std::string& s) {
  require(!s.empty(), Errc::parse_error, "empty rational");
  for (char ch : s)
    require(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+',
            Errc::parse_error, "bad rational: " + s);
  try {
    Rat q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(Errc::parse_error, "bad rational: " + s);
  }
}

std::string rat_str(const Rat& q) { return q.get_str(); }

double rat_double(const Rat& q) { return q.get_d(); }

Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

Rat factorial(int n) {
  require(n >= 0, Errc::invalid_argument, "factorial of negative");
  mpz_class z;
  mpz_fac_ui(z.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(z);
}

Rat binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(z);
}

Rat rationalize(double x, std::int64_t max_den) {
  require(max_den >= 1, Errc::invalid_argument, "max_den < 1");
  bool neg = x < 0;
  double v = neg ? -x : x;
  // Continued-fraction convergents p/q; stop before q exceeds max_den.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 9e17) break;
    std::int64_t a = static_cast<std::int64_t>(fl);
    if (q1 != 0 && a > (max_den - q0) / q1) break;
    std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return 0;
  Rat r(static_cast<long>(p1), static_cast<long>(q1));
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

Poly Poly::constant(int nvars, const Rat& c) {
  Poly p(nvars);
  if (c != 0) p.terms_[Expo(nvars, 0)] = c;
  return p;
}

Poly Poly::monomial(int nvars, const Expo& e, const Rat& c) {
  require(static_cast<int>(e.size()) == nvars, Errc::dimension_mismatch, "exponent size != nvars");
  for (int x : e) require(x >= 0, Errc::invalid_argument, "negative exponent");
  Poly p(nvars);
  if (c != 0) p.terms_[e] = c;
  return p;
}

Poly Poly::variable(int nvars, int i) {
  require(i >= 1 && i <= nvars, Errc::invalid_argument, "variable index out of range");
  Expo e(nvars, 0);
  e[i - 1] = 1;
  return monomial(nvars, e);
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return expo_degree(terms_.begin()->first);
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = degree();
  for (const auto& [e, c] : terms_)
    if (expo_degree(e) != d) return false;
  return true;
}

Rat Poly::coeff(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::set_coeff(const Expo& e, const Rat& c) {
  require(static_cast<int>(e.size()) == nvars_, Errc::dimension_mismatch, "exponent size != nvars");
  if (c == 0)
    terms_.erase(e);
  else
    terms_[e] = c;
}

void Poly::add_term(const Expo& e, const Rat& c) {
  require(static_cast<int>(e.size()) == nvars_, Errc::dimension_mismatch, "exponent size != nvars");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (c != 0) terms_[e] = c;
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  require(nvars_ == o.nvars_, Errc::dimension_mismatch, "nvars mismatch in +");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require(nvars_ == o.nvars_, Errc::dimension_mismatch, "nvars mismatch in -");
  for (const auto& [e, c] : o.terms_) add_term(e, Rat(-c));
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require(a.nvars_ == b.nvars_, Errc::dimension_mismatch, "nvars mismatch in *");
  Poly r(a.nvars_);
  Expo e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly& Poly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly Poly::pow(int k) const {
  require(k >= 0, Errc::invalid_argument, "negative power");
  Poly r = constant(nvars_, 1);
  for (int i = 0; i < k; ++i) r = r * (*this);
  return r;
}

Rat Poly::evaluate(const Point& p) const {
  require(static_cast<int>(p.size()) == nvars_, Errc::dimension_mismatch, "point size != nvars");
  Rat s = 0;
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= p[i];
    s += t;
  }
  return s;
}

double Poly::evaluate(const std::vector<double>& p) const {
  require(static_cast<int>(p.size()) == nvars_, Errc::dimension_mismatch, "point size != nvars");
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = rat_double(c);
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= p[i];
    s += t;
  }
  return s;
}

Poly Poly::substitute_squares() const {
  Poly r(nvars_);
  Expo e2(nvars_);
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < nvars_; ++i) e2[i] = 2 * e[i];
    r.terms_[e2] = c;
  }
  return r;
}

Poly Poly::diff(int i) const {
  require(i >= 1 && i <= nvars_, Errc::invalid_argument, "variable index out of range");
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i - 1] == 0) continue;
    Expo d = e;
    d[i - 1] -= 1;
    r.add_term(d, c * e[i - 1]);
  }
  return r;
}

Rat Poly::content() const {
  if (terms_.empty()) return 0;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rat c(num_gcd, den_lcm);
  c.canonicalize();
  if (terms_.begin()->second < 0) c = -c;
  return c;
}

Poly Poly::primitive() const {
  if (terms_.empty()) return *this;
  Rat c = content();
  Poly r = *this;
  r *= Rat(1) / c;
  return r;
}

Rat diff_pairing(const Poly& f, const Poly& g) {
  require(f.nvars() == g.nvars(), Errc::dimension_mismatch, "nvars mismatch in diff_pairing");
  // Only identical monomials survive: d^a(X^b) has zero constant term unless a == b.
  const auto& a = f.terms();
  const auto& b = g.terms();
  Rat s = 0;
  for (const auto& [e, cf] : a) {
    auto it = b.find(e);
    if (it == b.end()) continue;
    Rat w = cf * it->second;
    for (int x : e) w *= factorial(x);
    s += w;
  }
  return s;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rat a = rat_abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool unit = (a == 1);
    bool any_var = expo_degree(e) > 0;
    if (!unit || !any_var) {
      os << rat_str(a);
      if (any_var) os << "*";
    }
    bool firstv = true;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << "x" << (i + 1);
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os.str();
}

namespace {

struct Lexer {
  const std::string& s;
  size_t i = 0;
  explicit Lexer(const std::string& str) : s(str) {}
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  char get() {
    skip_ws();
    require(i < s.size(), Errc::parse_error, "unexpected end of polynomial text");
    return s[i++];
  }
  std::string integer() {
    skip_ws();
    size_t b = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    require(i > b, Errc::parse_error, "expected integer in polynomial text");
    return s.substr(b, i - b);
  }
};

}  // namespace

Poly Poly::parse(int nvars, const std::string& text) {
  Poly out(nvars);
  Lexer lx(text);
  require(!lx.done(), Errc::parse_error, "empty polynomial text");
  bool first_term = true;
  while (!lx.done()) {
    int sign = 1;
    char c = lx.peek();
    if (c == '+' || c == '-') {
      lx.get();
      sign = (c == '-') ? -1 : 1;
    } else {
      require(first_term, Errc::parse_error, "missing +/- between terms");
    }
    first_term = false;
    // term: [coeff] [* var]...  |  var [* var]...
    Rat coeff = 1;
    bool saw_coeff = false;
    Expo e(nvars, 0);
    bool saw_var = false;
    c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = lx.integer();
      std::string den;
      if (lx.peek() == '/') {
        lx.get();
        den = lx.integer();
      }
      coeff = rat_parse(den.empty() ? num : num + "/" + den);
      saw_coeff = true;
    }
    while (true) {
      char p = lx.peek();
      if (p == '*') {
        lx.get();
        p = lx.peek();
        require(p == 'x', Errc::parse_error, "expected variable after '*'");
      } else if (p != 'x' || saw_coeff || saw_var) {
        break;  // factors after the first need an explicit '*'
      }
      lx.get();  // 'x'
      int idx = std::stoi(lx.integer());
      require(idx >= 1 && idx <= nvars, Errc::parse_error, "variable index out of range in text");
      int ex = 1;
      if (lx.peek() == '^') {
        lx.get();
        ex = std::stoi(lx.integer());
        require(ex >= 0, Errc::parse_error, "negative exponent in text");
      }
      e[idx - 1] += ex;
      saw_var = true;
    }
    require(saw_coeff || saw_var, Errc::parse_error, "empty term in polynomial text");
    out.add_term(e, sign < 0 ? Rat(-coeff) : coeff);
  }
  return out;
}

}  // namespace rsos

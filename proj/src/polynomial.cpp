#include "rz/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "rz/errors.hpp"

namespace rz {

namespace {

void strip_trailing_zeros(std::vector<mpz_class>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

mpz_class parse_integer(const std::string& tok) {
  if (tok.empty()) throw InputError("empty coefficient");
  try {
    return mpz_class(tok);
  } catch (const std::invalid_argument&) {
    if (tok.find('.') != std::string::npos)
      throw InputError("non-integer coefficient '" + tok + "'");
    throw InputError("malformed integer '" + tok + "'");
  }
}

std::vector<mpz_class> parse_coeff_list(const std::string& s) {
  if (s.size() < 2 || s.back() != ']')
    throw InputError("unterminated coefficient list");
  std::vector<mpz_class> c;
  std::string body = s.substr(1, s.size() - 2);
  if (body.empty()) throw InputError("empty coefficient list");
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) c.push_back(parse_integer(tok));
  if (!body.empty() && body.back() == ',')
    throw InputError("trailing comma in coefficient list");
  return c;
}

std::vector<mpz_class> parse_symbolic(const std::string& s) {
  std::vector<mpz_class> c;
  char variable = 0;
  size_t i = 0;
  auto at_end = [&] { return i >= s.size(); };

  auto read_digits = [&]() -> std::string {
    size_t start = i;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (!at_end() && s[i] == '.')
      throw InputError("non-integer coefficient near '" + s.substr(start) + "'");
    return s.substr(start, i - start);
  };

  bool first = true;
  while (!at_end()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = (s[i] == '-') ? -1 : 1;
      ++i;
    } else if (!first) {
      throw InputError("expected '+' or '-' near '" + s.substr(i) + "'");
    }
    first = false;
    if (at_end()) throw InputError("dangling sign");

    mpz_class coeff = 1;
    bool saw_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      coeff = parse_integer(read_digits());
      saw_coeff = true;
    }
    if (!at_end() && s[i] == '*') {
      ++i;
      if (at_end() || !std::isalpha(static_cast<unsigned char>(s[i])))
        throw InputError("dangling '*'");
    }

    long exponent = 0;
    if (!at_end() && std::isalpha(static_cast<unsigned char>(s[i]))) {
      char v = s[i];
      if (variable == 0) variable = v;
      if (v != variable)
        throw InputError(std::string("multivariate input: found '") + v +
                         "' after '" + variable + "'");
      ++i;
      if (!at_end() && std::isalpha(static_cast<unsigned char>(s[i])))
        throw InputError("multi-letter variable names are not supported");
      exponent = 1;
      if (!at_end() && s[i] == '^') {
        ++i;
        std::string d = read_digits();
        if (d.empty()) throw InputError("missing exponent after '^'");
        if (d.size() > 6) throw InputError("exponent too large");
        exponent = std::stol(d);
      }
    } else if (!saw_coeff) {
      throw InputError("expected a term near '" + s.substr(i) + "'");
    }

    if (exponent >= static_cast<long>(c.size())) c.resize(exponent + 1, 0);
    c[exponent] += sign * coeff;
  }
  return c;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
  strip_trailing_zeros(c_);
  if (c_.empty()) throw InputError("zero polynomial");
}

IntPolynomial IntPolynomial::parse(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    // Accept the typographic minus sign U+2212 as '-'.
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      s.push_back('-');
      i += 2;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(text[i]))) s.push_back(text[i]);
  }
  if (s.empty()) throw InputError("empty polynomial");
  std::vector<mpz_class> c =
      (s[0] == '[') ? parse_coeff_list(s) : parse_symbolic(s);
  strip_trailing_zeros(c);
  if (c.empty()) throw InputError("zero polynomial");
  return IntPolynomial(std::move(c));
}

const mpz_class& IntPolynomial::coeff(int k) const {
  static const mpz_class zero = 0;
  if (k < 0 || k > degree()) return zero;
  return c_[k];
}

IntPolynomial IntPolynomial::derivative() const {
  if (degree() == 0) throw MathError("derivative of a constant polynomial");
  std::vector<mpz_class> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::reversed() const {
  if (c_.front() == 0)
    throw MathError("reversal of a polynomial divisible by x");
  std::vector<mpz_class> r(c_.rbegin(), c_.rend());
  return IntPolynomial(std::move(r));
}

bool IntPolynomial::is_self_reciprocal() const {
  int r = degree();
  bool plus = true, minus = true;
  for (int i = 0; i <= r; ++i) {
    if (c_[i] != c_[r - i]) plus = false;
    if (c_[i] != -c_[r - i]) minus = false;
  }
  return plus || minus;
}

ComplexBall IntPolynomial::eval(const ComplexBall& z) const {
  mpfr_prec_t p = z.prec();
  ComplexBall acc = ComplexBall::from_real(RealBall::exact_z(c_.back(), p));
  for (int k = degree() - 1; k >= 0; --k)
    acc = acc * z + ComplexBall::from_real(RealBall::exact_z(c_[k], p));
  return acc;
}

RealBall IntPolynomial::eval(const RealBall& x) const {
  RealBall acc = RealBall::exact_z(c_.back(), x.prec());
  for (int k = degree() - 1; k >= 0; --k)
    acc = acc * x + RealBall::exact_z(c_[k], x.prec());
  return acc;
}

mpz_class IntPolynomial::eval_z(const mpz_class& x) const {
  mpz_class acc = c_.back();
  for (int k = degree() - 1; k >= 0; --k) acc = acc * x + c_[k];
  return acc;
}

std::string IntPolynomial::to_string() const {
  std::ostringstream out;
  bool lead = true;
  for (int k = degree(); k >= 0; --k) {
    const mpz_class& a = c_[k];
    if (a == 0) continue;
    mpz_class mag = abs(a);
    if (lead) {
      if (a < 0) out << "-";
    } else {
      out << (a < 0 ? " - " : " + ");
    }
    if (k == 0 || mag != 1) out << mag.get_str();
    if (k > 0) {
      out << "x";
      if (k > 1) out << "^" << k;
    }
    lead = false;
  }
  if (lead) out << "0";  // unreachable for valid instances, kept for safety
  return out.str();
}

mpz_class content(const IntPolynomial& p) {
  mpz_class g = 0;
  for (const auto& a : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPolynomial primitive_part(const IntPolynomial& p) {
  mpz_class g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<mpz_class> c = p.coeffs();
  for (auto& a : c) a /= g;
  return IntPolynomial(std::move(c));
}

IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<mpz_class> c(a.degree() + b.degree() + 1, 0);
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j) c[i + j] += a.coeff(i) * b.coeff(j);
  return IntPolynomial(std::move(c));
}

namespace {

// Raw-vector helpers for the remainder sequence; empty vector = zero.
using Vec = std::vector<mpz_class>;

void normalize(Vec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// Pseudo-remainder of a by b (b nonzero, deg a >= deg b).
Vec prem(Vec a, const Vec& b) {
  const mpz_class& lb = b.back();
  while (a.size() >= b.size()) {
    mpz_class la = a.back();
    size_t shift = a.size() - b.size();
    for (auto& x : a) x *= lb;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= la * b[i];
    normalize(a);
    if (a.empty()) break;
  }
  return a;
}

void divide_content(Vec& v) {
  if (v.empty()) return;
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (v.back() < 0) g = -g;
  for (auto& x : v) x /= g;
}

}  // namespace

IntPolynomial poly_gcd(const IntPolynomial& pa, const IntPolynomial& pb) {
  mpz_class gc;
  mpz_gcd(gc.get_mpz_t(), content(pa).get_mpz_t(), content(pb).get_mpz_t());
  Vec a = primitive_part(pa).coeffs();
  Vec b = primitive_part(pb).coeffs();
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    Vec r = prem(a, b);
    divide_content(r);
    a = std::move(b);
    b = std::move(r);
  }
  divide_content(a);
  for (auto& x : a) x *= gc;
  return IntPolynomial(std::move(a));
}

bool is_squarefree(const IntPolynomial& p) {
  if (p.degree() == 0) return true;
  return poly_gcd(p, p.derivative()).degree() == 0;
}

std::optional<IntPolynomial> exact_divide(const IntPolynomial& num,
                                          const IntPolynomial& den) {
  if (den.degree() > num.degree()) return std::nullopt;
  std::vector<mpq_class> r(num.degree() + 1);
  for (int i = 0; i <= num.degree(); ++i) r[i] = num.coeff(i);
  std::vector<mpq_class> q(num.degree() - den.degree() + 1);
  mpq_class ld(den.leading());
  for (int k = num.degree(); k >= den.degree(); --k) {
    mpq_class f = r[k] / ld;
    q[k - den.degree()] = f;
    if (f == 0) continue;
    for (int i = 0; i <= den.degree(); ++i)
      r[k - den.degree() + i] -= f * mpq_class(den.coeff(i));
  }
  for (const auto& x : r)
    if (x != 0) return std::nullopt;
  std::vector<mpz_class> qi(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    mpq_class canon = q[i];
    canon.canonicalize();
    if (canon.get_den() != 1) return std::nullopt;
    qi[i] = canon.get_num();
  }
  return IntPolynomial(std::move(qi));
}

}  // namespace rz

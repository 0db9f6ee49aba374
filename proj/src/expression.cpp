#include "scissors/expression.hpp"

#include <cctype>
#include <string>

#include "scissors/dilog.hpp"
#include "scissors/errors.hpp"

namespace scissors {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Exact value of an unsigned decimal literal "12.5e-3".
mpq_class decimal_to_rational(const std::string& lit) {
  std::size_t epos = lit.find_first_of("eE");
  std::string mant = lit.substr(0, epos);
  long exp10 = 0;
  if (epos != std::string::npos) exp10 = std::stol(lit.substr(epos + 1));
  std::size_t dot = mant.find('.');
  std::string digits = mant;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp10 -= static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty()) digits = "0";
  mpz_class num(digits, 10);
  mpz_class pow;
  mpz_ui_pow_ui(pow.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  mpq_class q = exp10 >= 0 ? mpq_class(num * pow) : mpq_class(num, pow);
  q.canonicalize();
  return q;
}

class Parser {
 public:
  Parser(std::string_view text, long bits) : s_(text), bits_(bits + kKernelGuardBits) {}

  Complex parse() {
    Complex v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(0, "in expression '" + std::string(s_) + "': " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Complex expr() {
    Complex v = term();
    for (;;) {
      if (accept('+')) v += term();
      else if (accept('-')) v -= term();
      else return v;
    }
  }

  Complex term() {
    Complex v = unary();
    for (;;) {
      if (accept('*')) v *= unary();
      else if (accept('/')) v /= unary();
      else return v;
    }
  }

  Complex unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Complex power() {
    Complex base = primary();
    if (!accept('^')) return base;
    Complex e = unary();
    if (!e.im.is_zero() || e.re != Real::from_integer(e.re.round(), bits_)) fail("only integer exponents");
    long n = e.re.round().get_si();
    bool invert = n < 0;
    if (invert) n = -n;
    Complex r(bits_, 1);
    for (long k = 0; k < n; ++k) r *= base;
    return invert ? inverse(r) : r;
  }

  Complex primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Complex v = expr();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return word();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Complex number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      } else {
        pos_ = save;  // "2e" is not an exponent; let word() report it
      }
    }
    std::string lit(s_.substr(start, pos_ - start));
    if (lit == ".") fail("bad number");
    Real v = Real::from_rational(decimal_to_rational(lit), bits_);
    if (pos_ < s_.size() && s_[pos_] == 'i' &&
        (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return {Real(bits_), v};
    }
    return Complex(v);
  }

  Complex word() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string w(s_.substr(start, pos_ - start));
    if (w == "i") return {Real(bits_), Real(bits_, 1)};
    if (w == "pi") return Complex(Real::pi(bits_));
    if (!accept('(')) fail("unknown name '" + w + "'");
    Complex a = expr();
    if (!accept(')')) fail("missing ')'");
    if (w == "sqrt") {
      if (a.is_zero()) return a;
      const Real r = sqrt(abs(a));
      const Real t = arg(a) / 2;
      return {r * cos(t), r * sin(t)};
    }
    if (w == "exp") return scissors::exp(a);
    if (w == "log") return plog(a);
    if (w == "sin" || w == "cos" || w == "acos") {
      if (!a.im.is_zero()) fail(w + " takes a real argument");
      if (w == "sin") return Complex(sin(a.re));
      if (w == "cos") return Complex(cos(a.re));
      return Complex(acos(a.re));
    }
    fail("unknown function '" + w + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  long bits_;
};

}  // namespace

Complex parse_complex(std::string_view text, long bits) {
  return Parser(text, bits).parse().with_precision(bits);
}

Real parse_real(std::string_view text, long bits) {
  Complex v = parse_complex(text, bits);
  if (!v.im.is_zero()) throw ParseError(0, "expected a real number: '" + std::string(text) + "'");
  return v.re;
}

mpq_class parse_rational(std::string_view text) {
  std::string t = trim(text);
  if (t.empty()) throw ParseError(0, "empty rational");
  bool neg = false;
  std::size_t i = 0;
  if (t[0] == '-' || t[0] == '+') {
    neg = t[0] == '-';
    i = 1;
  }
  std::string body = t.substr(i);
  auto valid_decimal = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t k = 0;
    bool digit = false;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k, digit = true;
    if (k < s.size() && s[k] == '.') {
      ++k;
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k, digit = true;
    }
    if (!digit) return false;
    if (k < s.size() && (s[k] == 'e' || s[k] == 'E')) {
      ++k;
      if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
      if (k >= s.size()) return false;
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    }
    return k == s.size();
  };
  mpq_class q;
  std::size_t slash = body.find('/');
  if (slash != std::string::npos) {
    std::string n = trim(body.substr(0, slash)), d = trim(body.substr(slash + 1));
    if (!valid_decimal(n) || !valid_decimal(d)) throw ParseError(0, "not a rational: '" + t + "'");
    mpq_class den = decimal_to_rational(d);
    if (den == 0) throw ParseError(0, "zero denominator: '" + t + "'");
    q = decimal_to_rational(n) / den;
  } else {
    if (!valid_decimal(body)) throw ParseError(0, "not a rational: '" + t + "'");
    q = decimal_to_rational(body);
  }
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

mpq_class literal_uncertainty(std::string_view text) {
  std::string t = trim(text);
  if (t.find('/') != std::string::npos || t.find_first_of("eE") != std::string::npos) return 0;
  std::size_t dot = t.find('.');
  if (dot == std::string::npos) return 0;
  const auto frac = static_cast<unsigned long>(t.size() - dot - 1);
  mpz_class pow;
  mpz_ui_pow_ui(pow.get_mpz_t(), 10, frac);
  return mpq_class(1) / mpq_class(pow);
}

std::string format_rational(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace scissors

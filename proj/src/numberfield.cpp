#include "scissors/numberfield.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "scissors/errors.hpp"
#include "scissors/expression.hpp"

namespace scissors {
namespace {

using QPoly = std::vector<mpq_class>;  // low degree first, no trailing zeros

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly to_qpoly(const std::vector<mpz_class>& z) {
  QPoly p(z.begin(), z.end());
  trim(p);
  return p;
}

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

// Polynomial division over Q; returns remainder, writes quotient.
QPoly divmod(QPoly a, const QPoly& b, QPoly* quotient) {
  QPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const mpq_class c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= c * b[k];
    trim(a);
  }
  if (quotient) {
    trim(q);
    *quotient = std::move(q);
  }
  return a;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
  trim(a);
  return a;
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    QPoly r = divmod(a, b, nullptr);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> d;
  for (mpz_class k = 1; k * k <= n; ++k) {
    if (n % k == 0) {
      d.push_back(k);
      if (k * k != n) d.push_back(n / k);
    }
  }
  std::vector<mpz_class> all;
  for (const auto& v : d) {
    all.push_back(v);
    all.push_back(-v);
  }
  return all;
}

mpz_class eval_int(const std::vector<mpz_class>& f, const mpz_class& x) {
  mpz_class r = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
  return r;
}

bool has_integer_root(const std::vector<mpz_class>& f) {
  if (f[0] == 0) return true;
  for (const auto& d : divisors(f[0]))
    if (eval_int(f, d) == 0) return true;
  return false;
}

// Monic quartic as a product of two monic integer quadratics.
bool has_quadratic_factor(const std::vector<mpz_class>& f) {
  const mpz_class &a0 = f[0], &a1 = f[1], &a2 = f[2], &a3 = f[3];
  for (const auto& b : divisors(a0)) {
    const mpz_class d = a0 / b;
    if (b != d) {
      const mpz_class num = a1 - a3 * b, den = d - b;
      if (num % den != 0) continue;
      const mpz_class a = num / den, c = a3 - a;
      if (a * c + b + d == a2) return true;
    } else {
      if (a1 != b * a3) continue;
      const mpz_class disc = a3 * a3 - 4 * (a2 - 2 * b);
      if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) return true;
    }
  }
  return false;
}

Complex horner(const std::vector<mpz_class>& f, const Complex& z) {
  const long bits = z.precision();
  Complex r(bits);
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    r *= z;
    r.re += Real::from_integer(*it, bits);
  }
  return r;
}

Complex horner_derivative(const std::vector<mpz_class>& f, const Complex& z) {
  const long bits = z.precision();
  Complex r(bits);
  for (std::size_t k = f.size() - 1; k >= 1; --k) {
    r *= z;
    r.re += Real::from_integer(f[k] * static_cast<long>(k), bits);
  }
  return r;
}

struct IsolatedRoot {
  Complex z;
  Real radius;
};

// All roots of a squarefree monic f with disjoint certified inclusion disks
// |z - z_i| <= n |f(z_i) / prod_{j != i}(z_i - z_j)|.
std::vector<IsolatedRoot> isolate_roots(const std::vector<mpz_class>& f, long bits) {
  const int n = static_cast<int>(f.size()) - 1;
  for (long prec = std::max<long>(bits, 128);; prec *= 2) {
    if (prec > 64 * bits + 4096) throw ValidationError("root isolation failed to separate roots");
    // Cauchy bound for the initial circle.
    Real bound(prec, 1);
    for (int k = 0; k < n; ++k) bound = max(bound, abs(Real::from_integer(f[k], prec)) + 1);
    std::vector<Complex> z;
    const Real two_pi = Real::pi(prec) * 2;
    for (int k = 0; k < n; ++k) {
      const Real t = two_pi * k / n + Real::from_double(0.4, prec);
      z.push_back(Complex(bound * cos(t), bound * sin(t)) * Real::from_double(0.5, prec));
    }
    const Real tiny = Real::pow2(-prec + 8, prec);
    for (int iter = 0; iter < 2000; ++iter) {
      Real worst(prec);
      for (int i = 0; i < n; ++i) {
        const Complex fz = horner(f, z[i]);
        if (fz.is_zero()) continue;
        const Complex ratio = fz / horner_derivative(f, z[i]);
        Complex s(prec);
        for (int j = 0; j < n; ++j)
          if (j != i) s += inverse(z[i] - z[j]);
        const Complex step = ratio / (Complex(prec, 1) - ratio * s);
        z[i] -= step;
        worst = max(worst, abs(step) / (abs(z[i]) + 1));
      }
      if (worst < tiny) break;
    }
    std::vector<IsolatedRoot> roots;
    for (int i = 0; i < n; ++i) {
      Complex w = horner(f, z[i]);
      for (int j = 0; j < n; ++j)
        if (j != i) w /= z[i] - z[j];
      roots.push_back({z[i], abs(w) * n + Real::pow2(-prec + 4, prec) * (abs(z[i]) + 1)});
    }
    bool separated = true;
    for (int i = 0; i < n && separated; ++i)
      for (int j = i + 1; j < n; ++j)
        if (abs(roots[i].z - roots[j].z) <= (roots[i].radius + roots[j].radius) * 2) {
          separated = false;
          break;
        }
    if (separated) return roots;
  }
}

}  // namespace

struct NumberField::Data {
  std::shared_ptr<const std::vector<mpz_class>> poly;
  int r1 = 0;
  int r2 = 0;
  std::vector<Embedding> embeddings;
};

Complex Embedding::root_at(long bits) const {
  if (root_.precision() >= bits) return root_.with_precision(bits);
  Complex z = root_.with_precision(bits + 16);
  for (long have = root_.precision() / 2; have < bits + 16; have *= 2) {
    z -= horner(*poly_, z) / horner_derivative(*poly_, z);
    if (kind_ == EmbeddingKind::real) z.im = Real(bits + 16);
  }
  z -= horner(*poly_, z) / horner_derivative(*poly_, z);
  if (kind_ == EmbeddingKind::real) z.im = Real(bits + 16);
  return z.with_precision(bits);
}

NumberField NumberField::make(std::vector<mpz_class> coeffs, bool assert_irreducible, long isolation_bits) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.empty()) throw ValidationError("zero polynomial");
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) throw ValidationError("polynomial must have degree >= 1");
  if (coeffs.back() != 1) throw ValidationError("polynomial must be monic");
  const QPoly fq = to_qpoly(coeffs);
  if (deg(gcd(fq, derivative(fq))) > 0) throw ValidationError("polynomial is not squarefree");
  if (n >= 2 && n <= 4) {
    if (has_integer_root(coeffs)) throw ValidationError("polynomial is reducible (rational root)");
    if (n == 4 && has_quadratic_factor(coeffs))
      throw ValidationError("polynomial is reducible (quadratic factor)");
  } else if (n > 4 && !assert_irreducible) {
    throw ValidationError("irreducibility is only verified up to degree 4; assert it for degree " +
                          std::to_string(n));
  }

  auto data = std::make_shared<Data>();
  data->poly = std::make_shared<const std::vector<mpz_class>>(coeffs);
  std::vector<Embedding> reals, complexes;
  for (auto& r : isolate_roots(coeffs, isolation_bits)) {
    Embedding e;
    e.poly_ = data->poly;
    e.radius_ = r.radius;
    if (abs(r.z.im) <= r.radius) {
      e.kind_ = EmbeddingKind::real;
      e.root_ = Complex(r.z.re);
      reals.push_back(std::move(e));
    } else if (r.z.im.sign() > 0) {
      e.kind_ = EmbeddingKind::complex;
      e.root_ = r.z;
      complexes.push_back(std::move(e));
    }
  }
  data->r1 = static_cast<int>(reals.size());
  data->r2 = static_cast<int>(complexes.size());
  if (data->r1 + 2 * data->r2 != n) throw ValidationError("root classification inconsistent with degree");
  std::sort(reals.begin(), reals.end(), [](const Embedding& a, const Embedding& b) { return a.root().re < b.root().re; });
  std::sort(complexes.begin(), complexes.end(), [](const Embedding& a, const Embedding& b) {
    if (a.root().re != b.root().re) return a.root().re > b.root().re;
    return a.root().im < b.root().im;
  });
  for (auto& e : reals) data->embeddings.push_back(std::move(e));
  for (auto& e : complexes) data->embeddings.push_back(std::move(e));
  for (std::size_t k = 0; k < data->embeddings.size(); ++k) data->embeddings[k].index_ = static_cast<int>(k);
  NumberField f;
  f.data_ = std::move(data);
  return f;
}

NumberField NumberField::parse(std::string_view text, bool assert_irreducible, long isolation_bits) {
  return make(parse_polynomial(text), assert_irreducible, isolation_bits);
}

int NumberField::degree() const { return static_cast<int>(data_->poly->size()) - 1; }
int NumberField::r1() const { return data_->r1; }
int NumberField::r2() const { return data_->r2; }
const std::vector<mpz_class>& NumberField::min_poly() const { return *data_->poly; }
const std::vector<Embedding>& NumberField::embeddings() const { return data_->embeddings; }

std::vector<Embedding> NumberField::complex_embeddings() const {
  std::vector<Embedding> out;
  for (const auto& e : data_->embeddings)
    if (e.kind() == EmbeddingKind::complex) out.push_back(e);
  return out;
}

std::string NumberField::to_string() const { return format_polynomial(min_poly()); }

FieldElem NumberField::element(std::vector<mpq_class> coeffs) const {
  const auto n = static_cast<std::size_t>(degree());
  if (coeffs.size() > n) {
    // Reduce a longer coefficient list modulo f.
    QPoly p(coeffs.begin(), coeffs.end());
    trim(p);
    p = divmod(p, to_qpoly(min_poly()), nullptr);
    coeffs.assign(p.begin(), p.end());
  }
  coeffs.resize(n, 0);
  for (auto& c : coeffs) c.canonicalize();
  return FieldElem(*this, std::move(coeffs));
}

FieldElem NumberField::from_rational(const mpq_class& q) const { return element({q}); }

FieldElem NumberField::generator() const {
  if (degree() == 1) return element({-mpq_class(min_poly()[0])});
  return element({0, 1});
}

FieldElem NumberField::parse_element(std::string_view text) const {
  std::string s(text);
  auto b = s.find('['), e = s.rfind(']');
  if (b == std::string::npos || e == std::string::npos || e < b)
    throw ParseError(0, "field element must be a bracketed list: '" + s + "'");
  for (std::size_t k = 0; k < b; ++k)
    if (!std::isspace(static_cast<unsigned char>(s[k]))) throw ParseError(0, "junk before '['");
  for (std::size_t k = e + 1; k < s.size(); ++k)
    if (!std::isspace(static_cast<unsigned char>(s[k]))) throw ParseError(0, "junk after ']'");
  std::vector<mpq_class> coeffs;
  std::stringstream body(s.substr(b + 1, e - b - 1));
  std::string item;
  while (std::getline(body, item, ',')) coeffs.push_back(parse_rational(item));
  if (coeffs.size() != static_cast<std::size_t>(degree()))
    throw ParseError(0, "field element needs " + std::to_string(degree()) + " coefficients");
  return element(std::move(coeffs));
}

bool FieldElem::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return c == 0; });
}

bool FieldElem::is_one() const {
  if (coeffs_.empty() || coeffs_[0] != 1) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const mpq_class& c) { return c == 0; });
}

FieldElem FieldElem::operator-() const {
  auto c = coeffs_;
  for (auto& v : c) v = -v;
  return FieldElem(field_, std::move(c));
}

namespace {
void require_same_field(const FieldElem& a, const FieldElem& b) {
  if (!(a.field() == b.field())) throw ValidationError("field elements from different fields");
}
}  // namespace

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  require_same_field(a, b);
  auto c = a.coeffs_;
  for (std::size_t k = 0; k < c.size(); ++k) c[k] += b.coeffs_[k];
  return FieldElem(a.field_, std::move(c));
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  require_same_field(a, b);
  QPoly pa(a.coeffs_.begin(), a.coeffs_.end()), pb(b.coeffs_.begin(), b.coeffs_.end());
  trim(pa);
  trim(pb);
  QPoly r = divmod(mul(pa, pb), to_qpoly(a.field_.min_poly()), nullptr);
  return a.field_.element(std::vector<mpq_class>(r.begin(), r.end()));
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw DomainError("division by zero in number field");
  // Extended Euclid: s * a + t * f = g, g constant since f is irreducible.
  QPoly f = to_qpoly(field_.min_poly());
  QPoly a(coeffs_.begin(), coeffs_.end());
  trim(a);
  QPoly r0 = f, r1 = a, s0{}, s1{1};
  while (deg(r1) > 0) {
    QPoly q;
    QPoly r2 = divmod(r0, r1, &q);
    QPoly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw DomainError("element is not invertible (reducible modulus?)");
  for (auto& c : s1) c /= r1[0];
  return field_.element(std::vector<mpq_class>(s1.begin(), s1.end()));
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

std::string FieldElem::to_string() const {
  std::string s = "[";
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) s += ", ";
    s += format_rational(coeffs_[k]);
  }
  return s + "]";
}

Complex embed(const FieldElem& e, const Embedding& emb, const PrecisionContext& ctx) {
  const long kb = ctx.kernel_bits();
  const Complex root = emb.root_at(kb);
  Complex r(kb);
  const auto& c = e.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    r *= root;
    r.re += Real::from_rational(*it, kb);
  }
  return r.with_precision(ctx.bits());
}

std::string format_polynomial(const std::vector<mpz_class>& coeffs) {
  std::string s;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
    const mpz_class& c = coeffs[k];
    if (c == 0) continue;
    const mpz_class mag = abs(c);
    if (!s.empty()) s += c < 0 ? "-" : "+";
    else if (c < 0) s += "-";
    if (k == 0 || mag != 1) s += mag.get_str();
    if (k >= 1) {
      if (mag != 1) s += "*";
      s += "x";
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s.empty() ? "0" : s;
}

std::vector<mpz_class> parse_polynomial(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError(0, "empty polynomial");
  std::vector<mpz_class> coeffs;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> void {
    throw ParseError(0, "polynomial '" + std::string(text) + "': " + why);
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected '+' or '-'");
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    mpz_class c = 1;
    bool has_num = pos > start;
    if (has_num) c = mpz_class(s.substr(start, pos - start), 10);
    long power = 0;
    if (pos < s.size() && s[pos] == '*') {
      if (!has_num) fail("dangling '*'");
      ++pos;
    }
    if (pos < s.size() && s[pos] == 'x') {
      ++pos;
      power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t e0 = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == e0) fail("missing exponent");
        power = std::stol(s.substr(e0, pos - e0));
      }
    } else if (!has_num) {
      fail("expected a term");
    }
    if (coeffs.size() <= static_cast<std::size_t>(power)) coeffs.resize(power + 1, 0);
    coeffs[power] += sign * c;
  }
  return coeffs;
}

}  // namespace scissors

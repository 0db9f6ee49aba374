#include "scissors/relation.hpp"

#include <algorithm>
#include <cmath>

#include "scissors/errors.hpp"

namespace scissors {

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

void normalize(std::vector<mpz_class>& v) {
  mpz_class g = 0;
  for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) return;
  for (auto& c : v) c /= g;
  for (const auto& c : v) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& d : v) d = -d;
    break;
  }
}

mpz_class max_abs(const std::vector<mpz_class>& v) {
  mpz_class m = 0;
  for (const auto& c : v) m = std::max<mpz_class>(m, abs(c));
  return m;
}

Real dot(std::span<const Real> xs, const std::vector<mpz_class>& c, long bits) {
  Real s(bits);
  for (std::size_t i = 0; i < xs.size(); ++i) s += xs[i].with_precision(bits) * Real::from_integer(c[i], bits);
  return s;
}

double log2_of(const Real& x) {
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

}  // namespace

RelationResult find_relation(std::span<const Real> xs, const PrecisionContext& ctx, const mpz_class& bound,
                             std::optional<Real> tolerance) {
  const std::size_t n = xs.size();
  if (n < 2) throw ValidationError("find_relation needs at least two values");
  for (const auto& x : xs)
    if (!x.is_finite()) throw ValidationError("find_relation: non-finite input");
  if (bound < 1) throw ValidationError("find_relation: bound must be positive");
  const long bits = ctx.bits() + kKernelGuardBits;

  Real norm2(bits);
  for (const auto& x : xs) norm2 += sqr(x.with_precision(bits));
  const Real xnorm = sqrt(norm2);
  RelationResult out;

  // A vector with a zero entry has the obvious unit relation.
  for (std::size_t i = 0; i < n; ++i) {
    if (xs[i].is_zero()) {
      std::vector<mpz_class> c(n, 0);
      c[i] = 1;
      out.status = SearchStatus::found;
      out.relation = Relation{c, Real(ctx.bits()), bound};
      return out;
    }
  }

  const Real tol = tolerance ? tolerance->with_precision(bits) : Real::pow2(-ctx.bits() / 2, bits) * xnorm;
  // Relations with coefficients up to `bound` exist generically at residual
  // ~ bound^-(n-1) |x|; the tolerance must sit well below that.
  const double tol_bits = log2_of(xnorm) - log2_of(tol);
  const double needed = static_cast<double>(n - 1) * std::log2(bound.get_d()) + 8.0;
  if (tol_bits < needed) {
    out.detail = "tolerance/precision too coarse for coefficient bound";
    return out;
  }

  // PSLQ (Ferguson-Bailey), 0-based.
  const Real gamma = sqrt(Real(bits, 4) / 3);
  std::vector<Real> s(n, Real(bits));
  {
    Real acc(bits);
    for (std::size_t k = n; k-- > 0;) {
      acc += sqr(xs[k].with_precision(bits));
      s[k] = sqrt(acc);
    }
  }
  const Real s0 = s[0];
  std::vector<Real> y(n, Real(bits));
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = xs[k].with_precision(bits) / s0;
    s[k] /= s0;
  }
  const std::size_t m1 = n - 1;
  std::vector<std::vector<Real>> H(n, std::vector<Real>(m1, Real(bits)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m1 && j <= i; ++j) {
      if (i == j) H[i][j] = s[j + 1] / s[j];
      else H[i][j] = -(y[i] * y[j]) / (s[j] * s[j + 1]);
    }
  }
  std::vector<std::vector<mpz_class>> A(n, std::vector<mpz_class>(n, 0)), B = A;
  for (std::size_t i = 0; i < n; ++i) A[i][i] = B[i][i] = 1;

  auto reduce_entry = [&](std::size_t i, std::size_t j) {
    if (H[j][j].is_zero()) return;
    const mpz_class t = (H[i][j] / H[j][j]).round();
    if (t == 0) return;
    const Real tr = Real::from_integer(t, bits);
    y[j] += tr * y[i];
    for (std::size_t k = 0; k <= j; ++k) H[i][k] -= tr * H[j][k];
    for (std::size_t k = 0; k < n; ++k) {
      A[i][k] -= t * A[j][k];
      B[k][j] += t * B[k][i];
    }
  };

  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = i; j-- > 0;) reduce_entry(i, j);

  const Real detect = tol / xnorm;
  const mpz_class coeff_limit = mpz_class(1) << static_cast<unsigned long>(ctx.bits() / 2);
  const double bound_norm = bound.get_d() * std::sqrt(static_cast<double>(n));
  const long max_iter = 2000 + 200 * static_cast<long>(n * n) * static_cast<long>(std::log2(bound.get_d()) + 1);

  for (long iter = 0; iter < max_iter; ++iter) {
    // Relation detection.
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j)
      if (abs(y[j]) < detect && (best == n || abs(y[j]) < abs(y[best]))) best = j;
    if (best != n) {
      std::vector<mpz_class> c(n);
      for (std::size_t k = 0; k < n; ++k) c[k] = B[k][best];
      normalize(c);
      if (max_abs(c) > bound) {
        out.status = SearchStatus::none;
        out.detail = "smallest relation found exceeds the bound";
        return out;
      }
      out.status = SearchStatus::found;
      out.relation = Relation{c, abs(dot(xs, c, bits)).with_precision(ctx.bits()), bound};
      return out;
    }
    // Lower bound on the norm of any relation.
    Real hmax(bits);
    for (std::size_t j = 0; j < m1; ++j) hmax = max(hmax, abs(H[j][j]));
    if (!hmax.is_zero() && (Real(bits, 1) / hmax).to_double() > bound_norm) {
      out.status = SearchStatus::none;
      out.detail = "no relation with |coeff| <= bound";
      return out;
    }
    mpz_class amax = 0;
    for (const auto& row : B) amax = std::max(amax, max_abs(row));
    if (amax > coeff_limit) {
      out.detail = "precision exhausted";
      return out;
    }

    // Choose m maximizing gamma^(m+1) |H_mm|.
    std::size_t m = 0;
    Real best_val(bits);
    Real g = gamma;
    for (std::size_t j = 0; j < m1; ++j) {
      const Real v = g * abs(H[j][j]);
      if (v > best_val) {
        best_val = v;
        m = j;
      }
      g *= gamma;
    }
    std::swap(y[m], y[m + 1]);
    std::swap(A[m], A[m + 1]);
    std::swap(H[m], H[m + 1]);
    for (std::size_t k = 0; k < n; ++k) std::swap(B[k][m], B[k][m + 1]);
    if (m + 1 < m1) {
      const Real t0 = hypot(H[m][m], H[m][m + 1]);
      if (!t0.is_zero()) {
        const Real t1 = H[m][m] / t0, t2 = H[m][m + 1] / t0;
        for (std::size_t i = m; i < n; ++i) {
          const Real t3 = H[i][m], t4 = H[i][m + 1];
          H[i][m] = t1 * t3 + t2 * t4;
          H[i][m + 1] = t1 * t4 - t2 * t3;
        }
      }
    }
    for (std::size_t i = m + 1; i < n; ++i)
      for (std::size_t j = std::min(i - 1, m + 1) + 1; j-- > 0;) reduce_entry(i, j);
  }
  out.detail = "iteration limit reached";
  return out;
}

CombinationResult volume_combination_search(const Real& target, std::span<const Real> basis, long maxden,
                                            const PrecisionContext& ctx, std::optional<Real> tolerance) {
  if (basis.empty()) throw ValidationError("volume_combination_search: empty basis");
  if (maxden < 1) throw ValidationError("volume_combination_search: maxden must be positive");
  std::vector<Real> xs;
  xs.push_back(target);
  xs.insert(xs.end(), basis.begin(), basis.end());
  std::optional<Real> tol;
  if (tolerance) tol = *tolerance * maxden;
  const mpz_class bound = mpz_class(maxden) * 100;
  RelationResult r = find_relation(xs, ctx, bound, tol);
  CombinationResult out;
  out.status = r.status;
  out.detail = r.detail;
  if (r.status != SearchStatus::found) return out;
  const auto& c = r.relation->coeffs;
  if (c[0] == 0) {
    out.status = SearchStatus::inconclusive;
    out.detail = "basis values are themselves rationally dependent";
    return out;
  }
  if (abs(c[0]) > maxden) {
    out.status = SearchStatus::none;
    out.detail = "combination needs a denominator above maxden";
    return out;
  }
  RationalCombination combo{{}, Real(ctx.bits())};
  Real resid = target.with_precision(ctx.kernel_bits());
  for (std::size_t i = 1; i < c.size(); ++i) {
    mpq_class q(-c[i], c[0]);
    q.canonicalize();
    resid -= basis[i - 1].with_precision(ctx.kernel_bits()) * q;
    combo.coeffs.push_back(q);
  }
  combo.residual = abs(resid).with_precision(ctx.bits());
  out.combination = std::move(combo);
  return out;
}

// ------------------------------------------------------------------ LLL

namespace {

using IntVec = std::vector<mpz_class>;

mpz_class idot(const IntVec& a, const IntVec& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Integral LLL with delta = 3/4 (Cohen, Algorithm 2.6.7). On return d[i]
// (1-based, d[0] = 1) holds the Gram determinants, so |b*_i|^2 = d[i]/d[i-1].
void integral_lll(std::vector<IntVec>& b, std::vector<mpz_class>& d) {
  const std::size_t n = b.size();
  // 1-based scratch
  std::vector<IntVec> basis(n + 1);
  for (std::size_t i = 0; i < n; ++i) basis[i + 1] = b[i];
  std::vector<std::vector<mpz_class>> lam(n + 1, std::vector<mpz_class>(n + 1, 0));
  d.assign(n + 1, 0);
  d[0] = 1;
  d[1] = idot(basis[1], basis[1]);
  if (n == 1) {
    b[0] = basis[1];
    return;
  }
  std::size_t k = 2, kmax = 1;

  auto red = [&](std::size_t kk, std::size_t l) {
    if (2 * abs(lam[kk][l]) > d[l]) {
      mpz_class q;
      // nearest integer of lam/d
      mpz_class num = 2 * lam[kk][l] + d[l];
      mpz_class den = 2 * d[l];
      mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      for (std::size_t t = 0; t < basis[kk].size(); ++t) basis[kk][t] -= q * basis[l][t];
      lam[kk][l] -= q * d[l];
      for (std::size_t i = 1; i < l; ++i) lam[kk][i] -= q * lam[l][i];
    }
  };

  auto swap_k = [&](std::size_t kk) {
    std::swap(basis[kk], basis[kk - 1]);
    for (std::size_t j = 1; j + 2 <= kk; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
    const mpz_class l = lam[kk][kk - 1];
    const mpz_class B = (d[kk - 2] * d[kk] + l * l) / d[kk - 1];
    for (std::size_t i = kk + 1; i <= kmax; ++i) {
      const mpz_class t = lam[i][kk];
      lam[i][kk] = (d[kk] * lam[i][kk - 1] - l * t) / d[kk - 1];
      lam[i][kk - 1] = (B * t + l * lam[i][kk]) / d[kk];
    }
    d[kk - 1] = B;
  };

  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        mpz_class u = idot(basis[k], basis[j]);
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k) lam[k][j] = u;
        else d[k] = u;
      }
      if (d[k] == 0) throw PrecisionError("LLL: dependent lattice basis");
    }
    red(k, k - 1);
    if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
      swap_k(k);
      if (k > 2) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 1;) red(k, l);
      ++k;
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] = basis[i + 1];
}

}  // namespace

std::vector<std::vector<mpz_class>> relation_lattice(const std::vector<std::vector<Real>>& generators,
                                                     long bound, const PrecisionContext& ctx) {
  const std::size_t n = generators.size();
  if (n == 0) return {};
  const std::size_t d = generators[0].size();
  for (const auto& g : generators)
    if (g.size() != d) throw ValidationError("relation_lattice: generators of unequal dimension");
  const long scale_bits = ctx.bits() - kGuardBits;
  std::vector<IntVec> basis(n, IntVec(n + d, 0));
  for (std::size_t i = 0; i < n; ++i) {
    basis[i][i] = 1;
    for (std::size_t t = 0; t < d; ++t) {
      Real v = generators[i][t].with_precision(ctx.kernel_bits() + 64);
      mpfr_mul_2si(v.get(), v.get(), scale_bits, MPFR_RNDN);
      basis[i][n + t] = v.round();
    }
  }
  std::vector<mpz_class> gram;
  integral_lll(basis, gram);

  const mpz_class cap = mpz_class(bound) * static_cast<long>(n);
  auto is_relation = [&](const IntVec& v) {
    mpz_class l1 = 0, cmax = 0;
    for (std::size_t i = 0; i < n; ++i) {
      l1 += abs(v[i]);
      cmax = std::max<mpz_class>(cmax, abs(v[i]));
    }
    if (cmax > cap) return false;
    for (std::size_t t = 0; t < d; ++t)
      if (abs(v[n + t]) > l1 + 1) return false;
    return true;
  };

  std::vector<std::vector<mpz_class>> relations;
  std::size_t k = 0;
  while (k < n && is_relation(basis[k])) {
    relations.emplace_back(basis[k].begin(), basis[k].begin() + static_cast<long>(n));
    ++k;
  }
  for (std::size_t j = k; j < n; ++j)
    if (is_relation(basis[j])) throw PrecisionError("relation_lattice: relation vectors out of order");
  // Any relation with |r|_inf <= bound has lattice norm at most R; if every
  // remaining Gram-Schmidt vector is longer, such a relation lies in the span
  // of the ones found.
  const double nn = static_cast<double>(n);
  const double r = static_cast<double>(bound) * std::sqrt(nn) +
                   static_cast<double>(bound) * nn * std::sqrt(static_cast<double>(d));
  const mpq_class r2(mpz_class(static_cast<long>(std::ceil(r * r)) + 1));
  for (std::size_t j = k; j < n; ++j) {
    const mpq_class gs2(gram[j + 1], gram[j]);
    if (gs2 <= r2) throw PrecisionError("relation_lattice: cannot certify completeness at this precision");
  }
  for (auto& rel : relations) normalize(rel);
  return relations;
}

RationalBasis rational_basis(std::size_t n, const std::vector<std::vector<mpz_class>>& relations,
                             const std::vector<std::size_t>& absorbed) {
  auto is_absorbed = [&](std::size_t j) { return std::find(absorbed.begin(), absorbed.end(), j) != absorbed.end(); };
  // Columns processed latest-first so pivots (dependent entries) land on the
  // latest entries and earlier ones stay in the basis.
  std::vector<std::size_t> cols;
  for (std::size_t j = n; j-- > 0;)
    if (!is_absorbed(j)) cols.push_back(j);
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& rel : relations) {
    std::vector<mpq_class> row(n, 0);
    bool nonzero = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (is_absorbed(j)) continue;
      row[j] = rel[j];
      nonzero = nonzero || rel[j] != 0;
    }
    if (nonzero) rows.push_back(std::move(row));
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c : cols) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const mpq_class inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const mpq_class f = rows[i][c];
      for (std::size_t j = 0; j < n; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  RationalBasis out;
  std::vector<long> slot(n, -1);
  for (std::size_t j = 0; j < n; ++j) {
    if (is_absorbed(j)) continue;
    if (std::find(pivot_col.begin(), pivot_col.end(), j) != pivot_col.end()) continue;
    slot[j] = static_cast<long>(out.basis.size());
    out.basis.push_back(j);
  }
  out.coords.assign(n, std::vector<mpq_class>(out.basis.size(), 0));
  for (std::size_t j = 0; j < n; ++j)
    if (slot[j] >= 0) out.coords[j][static_cast<std::size_t>(slot[j])] = 1;
  for (std::size_t i = 0; i < pivot_col.size(); ++i) {
    const std::size_t pc = pivot_col[i];
    for (std::size_t b = 0; b < out.basis.size(); ++b) out.coords[pc][b] = -rows[i][out.basis[b]];
  }
  return out;
}

}  // namespace scissors

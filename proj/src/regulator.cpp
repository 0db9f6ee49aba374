#include "scissors/regulator.hpp"

#include <algorithm>
#include <map>

#include "scissors/dilog.hpp"
#include "scissors/errors.hpp"

namespace scissors {
namespace {

const std::map<std::string, std::string>& builtin_texts() {
  static const std::map<std::string, std::string> texts = {
      {"beta1",
       "# 6_1: 2[(1-t^2-t^3)/2] + [1-t] + [(1-t^2+t^3)/2]\n"
       "field: x^4+x^2-x+1\n"
       "2 * [[1/2, 0, -1/2, -1/2]]\n"
       "1 * [[1, -1, 0, 0]]\n"
       "1 * [[1/2, 0, -1/2, 1/2]]\n"},
      {"beta2",
       "# 7_7: 4[2-t-t^3] + 4[t+t^2+t^3]\n"
       "field: x^4+x^2-x+1\n"
       "4 * [[2, -1, 0, -1]]\n"
       "4 * [[0, 1, 1, 1]]\n"},
  };
  return texts;
}

}  // namespace

RegulatorVector borel_regulator(const FormalSum& s, const PrecisionContext& ctx) {
  if (!s.field()) throw ValidationError("borel_regulator needs a sum over a number field");
  RegulatorVector out;
  const Complex one(ctx.bits(), 1, 0);
  for (const auto& emb : s.field()->complex_embeddings()) {
    Real total(ctx.kernel_bits());
    for (const auto& t : s.terms()) {
      const Complex z = embed(std::get<FieldElem>(t.param), emb, ctx);
      if (abs(z) <= ctx.eps() || abs(z - one) <= ctx.eps())
        throw DegenerateError("borel_regulator: parameter " + std::get<FieldElem>(t.param).to_string() +
                              " embeds to 0 or 1");
      total += bloch_wigner(z, ctx).with_precision(ctx.kernel_bits()) * t.coeff;
    }
    out.values.push_back(total.with_precision(ctx.bits()));
  }
  return out;
}

int regulator_rank(const std::vector<FormalSum>& classes, const PrecisionContext& ctx) {
  if (classes.empty()) return 0;
  std::vector<std::vector<Real>> m;
  for (const auto& c : classes) m.push_back(borel_regulator(c, ctx).values);
  const std::size_t cols = m.front().size();
  for (const auto& row : m)
    if (row.size() != cols) throw ValidationError("regulator_rank: classes over different fields");
  Real scale(ctx.bits());
  for (const auto& row : m)
    for (const auto& v : row) scale = max(scale, abs(v));
  if (scale.is_zero()) return 0;
  const Real tol = Real::pow2(-ctx.bits() / 2, ctx.bits()) * scale;

  int rank = 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    for (std::size_t i = r + 1; i < m.size(); ++i)
      if (abs(m[i][c]) > abs(m[piv][c])) piv = i;
    if (abs(m[piv][c]) <= tol) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      const Real f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

FormalSum builtin_class(const std::string& name) {
  return parse_formal_sum(builtin_class_text(name), kDefaultBits);
}

std::vector<std::string> builtin_class_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : builtin_texts()) out.push_back(k);
  return out;
}

std::string builtin_class_text(const std::string& name) {
  const auto& texts = builtin_texts();
  const auto it = texts.find(name);
  if (it == texts.end()) throw ValidationError("unknown built-in class: " + name);
  return it->second;
}

}  // namespace scissors

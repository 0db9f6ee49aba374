#pragma once

// Flattened ideal triangulations and their invariants.
//
// File format (line oriented, `#` comments):
//
//   field: none                       # or a polynomial such as x^2+x+1
//   tet 0: shape=1/2+sqrt(3)/2*i flat=(0,-1)
//   tet 1: shape=exp(i*pi/3) flat=(0,-1)
//   edge: (0,01) (0,23) (0,03) (1,01) (1,23) (1,03)
//   edge: (0,12) (0,02) (0,13) (1,12) (1,02) (1,13)
//
// Shapes are complex expressions, or power-basis vectors `[a, b, ...]` when
// a field is given. A flattening may carry a side tag, `flat=(p,q),+0i`,
// for real shapes outside [0, 1]. Slots 01 and 23 carry z, 03 and 12 carry
// z' = 1/(1-z), 02 and 13 carry z'' = 1 - 1/z; every slot of every tet
// appears in exactly one edge line.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scissors/bloch.hpp"
#include "scissors/extended.hpp"

namespace scissors {

inline constexpr std::array<const char*, 6> kSlotNames{"01", "02", "03", "12", "13", "23"};

/// 0 for z, 1 for z', 2 for z''.
int slot_component(int slot);

struct TetFlattening {
  long p = 0;
  long q = 0;
  Side side = Side::none;
};

struct Tetrahedron {
  Parameter shape;
  std::optional<TetFlattening> flattening;
  int line = 0;
};

struct SlotRef {
  std::size_t tet;
  int slot;  // index into kSlotNames
};

struct Triangulation {
  std::optional<NumberField> field;
  std::vector<Tetrahedron> tets;
  std::vector<std::vector<SlotRef>> edges;
};

/// Throws ParseError (with the offending line) on syntax errors, bad shapes
/// and slot coverage violations.
Triangulation load_triangulation(std::string_view text, long bits);

/// Complex shapes, embedding field shapes by `emb` (default: first complex
/// embedding).
std::vector<Complex> shape_values(const Triangulation& t, const PrecisionContext& ctx,
                                  const std::optional<Embedding>& emb = std::nullopt);

/// Sum of dihedral angles around each edge class minus 2 pi.
std::vector<Real> check_angles(const Triangulation& t, const PrecisionContext& ctx,
                               const std::optional<Embedding>& emb = std::nullopt);

/// Sum of the flattening components around each edge class. Throws
/// ValidationError if some tet has no flattening.
std::vector<Complex> check_flattening(const Triangulation& t, const PrecisionContext& ctx,
                                      const std::optional<Embedding>& emb = std::nullopt);

struct Report {
  FormalSum beta;
  Real volume;
  std::vector<Real> angle_residuals;
  std::vector<Complex> flattening_residuals;  // empty without flattenings
  bool dehn_zero = false;
  std::string dehn_certificate;
  /// Present when every tet is flattened.
  std::optional<Complex> rogers_sum;  // sum s_t R(z_t; p_t, q_t) mod pi^2
  std::optional<Real> cs;             // real part of rogers_sum, in [0, pi^2)
};

/// Orientation sign s_t is -1 for shapes with negative imaginary part.
Report invariants_report(const Triangulation& t, const PrecisionContext& ctx, long maxden = kDefaultMaxden,
                         const std::optional<Embedding>& emb = std::nullopt);

/// Text of the bundled figure-eight knot complement triangulation.
std::string figure_eight_text();

}  // namespace scissors

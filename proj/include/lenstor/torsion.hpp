#pragma once

// Reidemeister-Turaev torsion of lens spaces, its reduction mod Z, recovery
// of the linking form from second differences, and an exhaustive check of
// the quadratic identity
//
//   t(g1 g2 h) - t(g1 h) - t(g2 h) + t(h) = -lk(g1, g2)  mod Z.

#include <cstdint>
#include <optional>
#include <vector>

#include "lenstor/forms.hpp"
#include "lenstor/group.hpp"

namespace lenstor {

struct LensParameters {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t e = 0;  ///< spin^c translation index
  friend bool operator==(const LensParameters&, const LensParameters&) = default;
};

/// A rational function on H with zero augmentation, plus where it came from.
class TorsionFunction {
 public:
  /// Throws NotTorsionLike unless the values sum to zero.
  explicit TorsionFunction(RationalFunction values, std::optional<LensParameters> lens = std::nullopt);

  const RationalFunction& values() const { return values_; }
  const FinAbGroup& group() const { return values_.group(); }
  /// Set for lens-derived torsion; empty means user-supplied.
  const std::optional<LensParameters>& lens() const { return lens_; }

  friend bool operator==(const TorsionFunction&, const TorsionFunction&) = default;

 private:
  RationalFunction values_;
  std::optional<LensParameters> lens_;
};

/// Reduction of a torsion function mod Z.
struct ModZTorsion {
  ResidueFunction values;
  friend bool operator==(const ModZTorsion&, const ModZTorsion&) = default;
};

/// Torsion of L(p, q): the unique t on Z/p with zero augmentation solving
///
///   (x - 1)(x^q - 1) * t = x^-e - (1/p) sum_h x^h
///
/// in the group ring. lens_torsion(p, q, e) = translate(x^e, lens_torsion(p, q, 0)).
/// Throws BadParameters.
TorsionFunction lens_torsion(std::int64_t p, std::int64_t q, std::int64_t e = 0);

/// The exponent r in the multiplier (x - 1)(x^r - 1) used for L(p, q). Fixed
/// to q; L(p, q^-1) is the same space with the generator relabelled.
std::int64_t torsion_exponent(std::int64_t p, std::int64_t q);

/// Coefficient i of a table is the value at x^i.
struct UnitMatch {
  int sign = 1;         ///< +-1
  std::int64_t shift = 0;  ///< table = sign * x^shift * t in the group ring
};

/// Finds sign and k with table(x^i) = sign * t(x^(i - k)) for all i, i.e.
/// equality up to a unit +-x^k of the group ring. Cyclic groups only.
std::optional<UnitMatch> match_up_to_unit(const RationalFunction& t, std::span<const Rational> table);

ModZTorsion reduce_mod_z(const TorsionFunction& t);

/// lk(g_i, g_j) := -(Delta_gi Delta_gj Xi)(identity) on generators. Throws
/// NotTorsionLike if a double difference depends on h or the result is not a
/// symmetric nonsingular form.
BilinearFormQZ extract_linking(const ModZTorsion& xi);

struct TuraevViolation {
  GroupElement g1;
  GroupElement g2;
  GroupElement h;
  QZ lhs;  ///< second difference of t
  QZ rhs;  ///< -lk(g1, g2)
};

struct TuraevReport {
  std::size_t triples_checked = 0;
  std::vector<TuraevViolation> violations;
  /// Violation count is unchanged after translating t by a generator.
  bool translation_invariant = true;
  bool passed() const { return violations.empty(); }
};

/// Checks the identity on every triple (g1, g2, h). Throws TooLarge above the
/// enumeration cap, GroupMismatch if t and lk live on different groups.
TuraevReport verify_turaev(const TorsionFunction& t, const BilinearFormQZ& lk);

}  // namespace lenstor

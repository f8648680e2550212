#pragma once

// Normal form of the mod-Z torsion. Any Xi whose second differences are the
// constant -lk splits as Xi(g h) = c + q(h) for a refinement q of -lk and a
// unique translation g; the constant c is the invariant reported here.

#include <vector>

#include "lenstor/forms.hpp"
#include "lenstor/group.hpp"
#include "lenstor/torsion.hpp"

namespace lenstor {

/// F = constant + character.
struct AffineDecomposition {
  QZ constant;
  Character character;
};

/// c := F(identity), lambda(v) := F(v) - F(identity). Throws NotAffine when
/// lambda is not a character.
AffineDecomposition affine_decompose(const ResidueFunction& f);

struct OrbitEntry {
  QuadraticFormQZ refinement;
  GroupElement shift;
  QZ c;
};

struct StructureResult {
  QZ c;
  GroupElement shift;
  QuadraticFormQZ refinement;
  /// c is the same for every refinement in `orbit`.
  bool c_stable = true;
  /// One entry per refinement examined; the first is `refinement` itself.
  std::vector<OrbitEntry> orbit;
};

enum class Verification {
  structured,   ///< affine decomposition and the shift equation only
  cross_check,  ///< also the exhaustive search over shifts, compared
};

/// Finds g and c with Xi(g h) = c + q(h) for all h.
///
/// Throws RefinementMismatch unless Delta q = -lk(Xi), NoSolution /
/// MultipleSolutions if the shift is not unique, InternalError if the two
/// solution paths disagree.
StructureResult decompose(const ModZTorsion& xi, const QuadraticFormQZ& q,
                          Verification mode = Verification::cross_check);

/// Exhaustive search only: every g for which h |-> Xi(g h) - q(h) is constant.
std::vector<OrbitEntry> brute_force_shifts(const ModZTorsion& xi, const QuadraticFormQZ& q);

struct InvariantReport {
  StructureResult structure;
  BilinearFormQZ linking;
  /// Xi(shift h) = Xi(shift h^-1) for every orbit entry.
  bool symmetric = true;

  const QZ& c() const { return structure.c; }
};

/// The refinement of -lk that canonical_invariant starts from: the cyclic
/// closed form, the discriminant form of `resolution` transported onto H, or
/// standard_refinement for other groups.
QuadraticFormQZ base_refinement(const BilinearFormQZ& lk, const LatticeResolution* resolution = nullptr);

/// Runs decompose for every refinement in the orbit of the base refinement.
InvariantReport canonical_invariant(const ModZTorsion& xi, Verification mode = Verification::cross_check,
                                    const LatticeResolution* resolution = nullptr);

struct Verdict {
  bool distinguished = false;
  QZ c_first;
  QZ c_second;
};

/// Resolutions are optional and used as in canonical_invariant.
Verdict distinguish(const ModZTorsion& a, const ModZTorsion& b, Verification mode = Verification::cross_check,
                    const LatticeResolution* resolution_a = nullptr, const LatticeResolution* resolution_b = nullptr);

}  // namespace lenstor

#pragma once

// Bilinear and quadratic forms with values in Q/Z, lattice resolutions, and
// the discriminant-form construction that turns an integer lattice into a
// quadratic refinement of its linking pairing.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lenstor/exact_arith.hpp"
#include "lenstor/group.hpp"

namespace lenstor {

/// Symmetric bilinear b: H x H -> Q/Z, stored by its values on generator
/// pairs. Construction rejects asymmetric or ill-defined grams (InvalidForm).
class BilinearFormQZ {
 public:
  static BilinearFormQZ zero(FinAbGroup group);
  /// gram is rank x rank, row-major.
  BilinearFormQZ(FinAbGroup group, std::vector<QZ> entries);

  const FinAbGroup& group() const { return group_; }
  const QZ& gram(std::size_t i, std::size_t j) const { return gram_[i * group_.rank() + j]; }

  QZ operator()(const GroupElement& u, const GroupElement& v) const;

  BilinearFormQZ operator-() const;

  friend bool operator==(const BilinearFormQZ&, const BilinearFormQZ&) = default;

 private:
  FinAbGroup group_;
  std::vector<QZ> gram_;
};

/// q: H -> Q/Z as a full value table. Construction only requires totality;
/// use satisfies_quadratic_axioms() / delta_quadratic() to validate.
class QuadraticFormQZ {
 public:
  explicit QuadraticFormQZ(ResidueFunction values) : values_(std::move(values)) {}

  const FinAbGroup& group() const { return values_.group(); }
  const ResidueFunction& values() const { return values_; }
  QZ operator()(const GroupElement& h) const { return values_(h); }

  /// q(0) = 0 and q(k u) = k^2 q(u) for every u and 0 <= k < order(u).
  bool satisfies_quadratic_axioms() const;

  /// q + mu for a character mu.
  QuadraticFormQZ shifted(const Character& mu) const;

  friend bool operator==(const QuadraticFormQZ&, const QuadraticFormQZ&) = default;

 private:
  ResidueFunction values_;
};

/// (Delta q)(u, v) = q(u v) - q(u) - q(v). Throws NotQuadratic unless the
/// result is a well-defined symmetric biadditive pairing.
BilinearFormQZ delta_quadratic(const QuadraticFormQZ& q);

/// The radical of b is trivial.
bool is_nonsingular(const BilinearFormQZ& b);

/// A nondegenerate symmetric integer matrix presenting a finite group and its
/// linking pairing as a cokernel.
class LatticeResolution {
 public:
  /// Throws BadParameters if not square symmetric, SingularMatrix if det = 0.
  explicit LatticeResolution(IntMatrix matrix, std::vector<std::int64_t> continued_fraction = {});

  const IntMatrix& matrix() const { return matrix_; }
  /// |det|, the order of the cokernel.
  const BigInt& order() const { return order_; }
  /// Hirzebruch-Jung expansion when built by lens_resolution, else empty.
  std::span<const std::int64_t> continued_fraction() const { return continued_fraction_; }

 private:
  IntMatrix matrix_;
  BigInt order_;
  std::vector<std::int64_t> continued_fraction_;
};

/// p/q = a1 - 1/(a2 - ... - 1/am), all ai >= 2.
std::vector<std::int64_t> hirzebruch_jung_expansion(std::int64_t p, std::int64_t q);

/// Evaluates a1 - 1/(a2 - ... - 1/am).
Rational evaluate_continued_fraction(std::span<const std::int64_t> a);

/// Negative-definite linear plumbing lattice of p/q: tridiagonal with
/// diagonal (-a1, ..., -am) and off-diagonal 1. |det| = p.
LatticeResolution lens_resolution(std::int64_t p, std::int64_t q);

/// The discriminant data of a lattice: the cokernel group H, the induced
/// pairing b(u, v) = u^T B^-1 v and its refinement q with Delta q = b.
struct DiscriminantForm {
  FinAbGroup group;
  QuadraticFormQZ quadratic;
  BilinearFormQZ bilinear;
  /// Rows of U from the Smith form that survive as nontrivial factors; maps a
  /// dual-lattice vector to residues.
  IntMatrix projection;
  /// Column i: a dual-lattice lift of generator i of the cokernel.
  IntMatrix generator_lifts;

  /// The image of a dual-lattice vector in the cokernel.
  GroupElement project(std::span<const BigInt> dual_vector) const;
};

DiscriminantForm discriminant_form(const LatticeResolution& resolution);

/// The refinement n |-> sign * a * n^2 / (2p) of b(x, x) = sign * a / p on Z/p,
/// with the multiplier (p + 1) for odd p. Throws BadParameters.
QuadraticFormQZ cyclic_refinement(std::int64_t p, std::int64_t a, int sign);

/// Some refinement of b: diagonal generator values as in cyclic_refinement and
/// cross terms r_i r_j b(g_i, g_j).
QuadraticFormQZ standard_refinement(const BilinearFormQZ& b);

/// q + mu over all mu with 2 mu = 0; the first entry is q itself.
std::vector<QuadraticFormQZ> refinement_orbit(const QuadraticFormQZ& q);

/// Searches for a group isomorphism phi: from.group -> to.group with
/// to(phi u, phi v) = from(u, v). Returns the generator images.
std::optional<GroupHom> find_isometry(const BilinearFormQZ& from, const BilinearFormQZ& to);

/// Same for quadratic forms: to(phi u) = from(u).
std::optional<GroupHom> find_isometry(const QuadraticFormQZ& from, const QuadraticFormQZ& to);

}  // namespace lenstor

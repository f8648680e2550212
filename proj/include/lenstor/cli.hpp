#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lenstor/decomp.hpp"
#include "lenstor/json_io.hpp"

namespace lenstor::cli {

enum ExitCode : int {
  kOk = 0,
  kBadParameters = 2,
  kBadInput = 3,             ///< malformed file or not torsion-like
  kDecompositionFailure = 4,
  kVerificationFailure = 5,
};

inline constexpr std::int64_t kMaxGridP = 100;

/// Every check the `verify` command runs on one lens space L(p, q).
struct GridCell {
  std::int64_t p = 0;
  std::int64_t q = 0;
  bool augmentation_zero = false;
  bool spinc_equivariant = false;    ///< lens_torsion(p, q, e) = translate(x^e, t) for e = 1, p - 1
  std::size_t turaev_violations = 0;
  bool turaev_translation_invariant = false;
  bool decomposition_ok = false;     ///< both solution paths agree on every orbit member
  bool symmetric = false;
  bool lattice_ok = false;           ///< discriminant form of the plumbing refines -lk up to isometry
  bool translation_invariant_c = false;
  /// c(L(p, q)) = c(L(p, q^-1)) when c is stable; otherwise the sets of c
  /// over the two refinement orbits agree.
  bool replacement_invariant_c = false;
  bool replacement_same_c = false;   ///< c(L(p, q)) = c(L(p, q^-1)) literally; reported

  bool c_stable = false;             ///< reported, not required
  std::string c;
  std::string error;

  bool passed() const;
  Json to_json() const;
};

GridCell verify_cell(std::int64_t p, std::int64_t q);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lenstor::cli

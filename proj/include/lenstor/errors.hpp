#pragma once

#include <stdexcept>

namespace lenstor {

/// Base of every error raised by the library. Each subclass names one failure
/// mode so callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// exact_arith
class SingularSystem : public Error { using Error::Error; };
class SingularMatrix : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };

// group
class GroupMismatch : public Error { using Error::Error; };
class TooLarge : public Error { using Error::Error; };

// forms
class InvalidForm : public Error { using Error::Error; };
class NotQuadratic : public Error { using Error::Error; };
class BadParameters : public Error { using Error::Error; };

// torsion
class NotTorsionLike : public Error { using Error::Error; };

// decomp
class NotAffine : public Error { using Error::Error; };
class RefinementMismatch : public Error { using Error::Error; };
class NoSolution : public Error { using Error::Error; };
class MultipleSolutions : public Error { using Error::Error; };

/// Raised when the structured and brute-force decompositions disagree. This
/// signals a bug, not bad input.
class InternalError : public Error { using Error::Error; };

}  // namespace lenstor

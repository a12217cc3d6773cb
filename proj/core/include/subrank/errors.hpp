#pragma once

#include <stdexcept>
#include <string>

namespace subrank {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation requires a matrix with at least one nonzero entry.
class ZeroMatrixError : public Error {
 public:
  using Error::Error;
};

// Operation requires a vector with nonzero norm.
class ZeroVectorError : public Error {
 public:
  using Error::Error;
};

// A per-entry nonzero requirement was violated.
class ZeroEntryError : public Error {
 public:
  using Error::Error;
};

// A row with zero norm cannot be normalized.
class ZeroRowError : public Error {
 public:
  using Error::Error;
};

// Rank-one factoring needs a basis row with nonzero norm.
class ZeroAnchorRowError : public Error {
 public:
  using Error::Error;
};

class NotSquareError : public Error {
 public:
  using Error::Error;
};

// Dense determinants are restricted to small blocks.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// Seed sampling hit its draw budget without an acceptable block.
class ExhaustedError : public Error {
 public:
  using Error::Error;
};

// Biclique extraction needs at least one 1-bit.
class EmptyIndicatorError : public Error {
 public:
  using Error::Error;
};

// Probability arguments must lie strictly inside (0, 1).
class InvalidProbabilityError : public Error {
 public:
  using Error::Error;
};

// Planted block dimensions must fit inside the host matrix.
class DegenerateDimsError : public Error {
 public:
  using Error::Error;
};

// No initialization produced a usable submatrix.
class NoCandidateError : public Error {
 public:
  using Error::Error;
};

// Requested rank exceeds what the input dimensions admit.
class RankTooLargeError : public Error {
 public:
  using Error::Error;
};

}  // namespace subrank

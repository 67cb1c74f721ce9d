#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace holointerp {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;
using CSpan = std::span<const Complex>;

/// Raised when an input violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a point leaves the domain ball of an analytic map.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a user map contradicts a hypothesis it declared, e.g. a
/// nonzero degree-0 component on a map flagged as fixing the origin.
class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Euclidean norm of a plain complex vector (no weights).
double euclidean_norm(CSpan x);

CVector basis_vector(std::size_t dim, std::size_t k, Complex scale = 1.0);

}  // namespace holointerp

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qndsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Every numerical tolerance used by the library lives here.
namespace tolerance {
inline constexpr double kAlgebraic = 1e-12;    // single-step identities
inline constexpr double kAccumulated = 1e-10;  // sums, products, evolved states
inline constexpr double kTruncationDrift = 1e-8;
}  // namespace tolerance

// Shapes or sizes that do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Out-of-domain parameters supplied by a caller.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical invariant was broken: non-Hermitian operator, lost
// normalization, non-unitary evolution.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qndsim

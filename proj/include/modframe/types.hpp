#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace modframe {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Invalid sizes, incompatible dimensions, malformed parameters.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Runtime numerical failure (rank deficiency, non-finite values).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_pow2(Index n) { return n > 0 && (n & (n - 1)) == 0; }

/// log2 of a power of two; throws ConfigError otherwise.
inline int ilog2(Index n) {
    if (!is_pow2(n)) throw ConfigError("ilog2: " + std::to_string(n) + " is not a power of two");
    int d = 0;
    while ((Index(1) << d) < n) ++d;
    return d;
}

}  // namespace modframe

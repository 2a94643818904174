#pragma once

#include <cmath>
#include <complex>
#include <Eigen/Dense>

namespace ringcav {

// Scalar conventions: all rates and detunings are expressed in units of the
// atomic spontaneous-emission rate gamma (gamma defaults to 1), atom
// positions in units of the cavity wavelength lambda.
using Scalar = double;
using Complex = std::complex<Scalar>;

using VectorXd = Eigen::VectorXd;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;
using Vector2c = Eigen::Vector2cd;

inline constexpr Scalar pi = 3.14159265358979323846;
inline constexpr Scalar two_pi = 2.0 * pi;
inline constexpr Complex im{0.0, 1.0};

/// Wraps an angle into (-pi, pi].
inline Scalar wrap_phase(Scalar phi) {
    phi = std::fmod(phi, two_pi);
    if (phi <= -pi) phi += two_pi;
    if (phi > pi) phi -= two_pi;
    return phi;
}

}  // namespace ringcav

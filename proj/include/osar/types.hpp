#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace osar {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;

// Per-pulse frequency-domain forward operator, N_r x N, unit-modulus entries.
using ForwardMatrix = ComplexMatrix;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace osar

#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

namespace isac {

using Index = Eigen::Index;
using Vec3 = Eigen::Vector3d;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RVector = Vector<double>;
using CVector = Vector<std::complex<double>>;
using CMatrix = Matrix<std::complex<double>>;

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kPi = 3.14159265358979323846;

/// BS pairing scheme.
///   A: monostatic + multistatic (every unordered pair incl. self pairs)
///   B: multistatic only (distinct BSs)
///   C: monostatic only (each BS with itself)
enum class SensingMode { A, B, C };

SensingMode parse_mode(std::string_view text);
char mode_letter(SensingMode mode);

}  // namespace isac

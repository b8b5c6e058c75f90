#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "spinflip/linalg.hpp"

namespace spinflip {

// Geometric tolerance for unit-length and on-circle checks.
inline constexpr double kGeometricTol = 1e-9;
// Amplitudes at or below this modulus are treated as zero when fixing the gauge.
inline constexpr double kGaugeZero = 1e-12;

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  double norm() const;
  double dot(const BlochVector& other) const { return x * other.x + y * other.y + z * other.z; }
  BlochVector cross(const BlochVector& other) const;
  BlochVector operator-() const { return {-x, -y, -z}; }

  /// Rescales to unit length. Throws NotUnit for the zero vector.
  BlochVector normalized() const;

  /// Spherical chart: polar angle theta in [0, pi], azimuth phi in [0, 2pi).
  static BlochVector from_angles(double theta, double phi);
  double polar_angle() const;
  double azimuth() const;

  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

/// Throws NotUnit when | |n| - 1 | > kGeometricTol.
void require_unit(const BlochVector& n);

/// Pure qubit state a0|0> + a1|1>. Normalized; the first amplitude with
/// modulus above kGaugeZero is real and non-negative.
struct QubitState {
  Complex a0 = 1.0;
  Complex a1 = 0.0;

  std::array<Complex, 2> amplitudes() const { return {a0, a1}; }
};

/// Multiplies by the unit phase that makes the first significant amplitude
/// real and non-negative. Works for any vector length.
void fix_gauge(std::span<Complex> amplitudes);

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, gauge-fixed. phi := 0 at the south pole.
QubitState qubit_from_bloch(const BlochVector& n);

/// (2 Re(a0* a1), 2 Im(a0* a1), |a0|^2 - |a1|^2). Throws NotNormalized.
BlochVector bloch_from_qubit(const QubitState& psi);

BlochVector antipode(const BlochVector& n);

/// Great circle {n : n . normal = 0}. The normal is canonical: its first
/// coordinate of modulus above kGaugeZero is positive.
struct GreatCircle {
  BlochVector normal;

  static GreatCircle from_normal(const BlochVector& normal);
  bool contains(const BlochVector& n, double tol = kGeometricTol) const;
};

struct CircleFit {
  std::optional<GreatCircle> circle;
  /// max_i |n_i . w| for the best-fitting normal w.
  double residual = 0.0;

  bool found() const { return circle.has_value(); }
};

/// Best plane through the origin: w is the right singular vector of the
/// stacked vectors with the smallest singular value. For one vector, or a
/// parallel/antiparallel pair, a deterministic perpendicular is used; for two
/// other vectors, their normalized cross product.
/// Throws EmptyInput.
CircleFit great_circle_fit(std::span<const BlochVector> vectors, double tol = kGeometricTol);

/// w_x sigma_x + w_y sigma_y + w_z sigma_z. Throws NotUnit.
ComplexMatrix pauli_dot(const BlochVector& w);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace spinflip

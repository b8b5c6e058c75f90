#include "spinflip/bloch.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spinflip/error.hpp"

namespace spinflip {
namespace {

constexpr Complex kI{0.0, 1.0};

BlochVector canonical_sign(BlochVector w) {
  for (double c : {w.x, w.y, w.z}) {
    if (std::abs(c) > kGaugeZero) return c < 0.0 ? -w : w;
  }
  return w;
}

// Cross with the coordinate axis along which v is smallest; ties go to the earlier axis.
BlochVector perpendicular_to(const BlochVector& v) {
  const double ax = std::abs(v.x), ay = std::abs(v.y), az = std::abs(v.z);
  BlochVector axis{1.0, 0.0, 0.0};
  if (ay < ax && ay <= az) {
    axis = {0.0, 1.0, 0.0};
  } else if (az < ax && az < ay) {
    axis = {0.0, 0.0, 1.0};
  }
  return v.cross(axis).normalized();
}

double max_abs_projection(std::span<const BlochVector> vectors, const BlochVector& w) {
  double worst = 0.0;
  for (const auto& n : vectors) worst = std::max(worst, std::abs(n.dot(w)));
  return worst;
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector BlochVector::cross(const BlochVector& o) const {
  return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
}

BlochVector BlochVector::normalized() const {
  const double r = norm();
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::NotUnit, "cannot normalize a zero or non-finite vector");
  }
  return {x / r, y / r, z / r};
}

BlochVector BlochVector::from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double BlochVector::polar_angle() const { return std::atan2(std::hypot(x, y), z); }

double BlochVector::azimuth() const {
  if (x == 0.0 && y == 0.0) return 0.0;
  double phi = std::atan2(y, x);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return phi;
}

void require_unit(const BlochVector& n) {
  const double r = n.norm();
  if (!(std::abs(r - 1.0) <= kGeometricTol)) {
    throw Error(ErrorCode::NotUnit, "|n| = " + std::to_string(r));
  }
}

void fix_gauge(std::span<Complex> amplitudes) {
  const auto lead = std::find_if(amplitudes.begin(), amplitudes.end(),
                                 [](const Complex& a) { return std::abs(a) > kGaugeZero; });
  if (lead == amplitudes.end()) return;
  const double mod = std::abs(*lead);
  const Complex phase = std::conj(*lead) / mod;
  for (Complex& a : amplitudes) a *= phase;
  *lead = Complex(mod, 0.0);
}

QubitState qubit_from_bloch(const BlochVector& n) {
  require_unit(n);
  // atan2 keeps the half-angles accurate near both poles.
  const double half_theta = 0.5 * n.polar_angle();
  const double phi = std::atan2(n.y, n.x);
  std::array<Complex, 2> amps{Complex(std::cos(half_theta), 0.0),
                              std::polar(std::sin(half_theta), phi)};
  fix_gauge(amps);
  return {amps[0], amps[1]};
}

BlochVector bloch_from_qubit(const QubitState& psi) {
  const double norm2 = std::norm(psi.a0) + std::norm(psi.a1);
  if (!(std::abs(norm2 - 1.0) <= kGeometricTol)) {
    throw Error(ErrorCode::NotNormalized, "|psi|^2 = " + std::to_string(norm2));
  }
  const Complex coherence = std::conj(psi.a0) * psi.a1;
  return {2.0 * coherence.real(), 2.0 * coherence.imag(), std::norm(psi.a0) - std::norm(psi.a1)};
}

BlochVector antipode(const BlochVector& n) { return -n; }

GreatCircle GreatCircle::from_normal(const BlochVector& normal) {
  return GreatCircle{canonical_sign(normal.normalized())};
}

bool GreatCircle::contains(const BlochVector& n, double tol) const {
  return std::abs(n.dot(normal)) <= tol;
}

CircleFit great_circle_fit(std::span<const BlochVector> vectors, double tol) {
  if (vectors.empty()) throw Error(ErrorCode::EmptyInput, "great_circle_fit needs a vector");
  if (!(tol > 0.0)) throw std::invalid_argument("circle-fit tolerance must be positive");

  Eigen::MatrixX3d stacked(static_cast<Eigen::Index>(vectors.size()), 3);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    stacked.row(static_cast<Eigen::Index>(i)) << vectors[i].x, vectors[i].y, vectors[i].z;
  }
  Eigen::JacobiSVD<Eigen::MatrixX3d> svd(stacked, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();

  BlochVector w;
  if (vectors.size() == 1 || sigma.size() < 2 || sigma(1) <= kGaugeZero * sigma(0)) {
    // All vectors lie on one axis: any circle through that axis works.
    w = perpendicular_to(vectors.front());
  } else if (vectors.size() == 2) {
    w = vectors[0].cross(vectors[1]).normalized();
  } else {
    const Eigen::Vector3d v = svd.matrixV().col(2);
    w = BlochVector{v(0), v(1), v(2)}.normalized();
  }

  CircleFit fit;
  fit.residual = max_abs_projection(vectors, w);
  if (fit.residual <= tol) fit.circle = GreatCircle::from_normal(w);
  return fit;
}

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, -kI}, {kI, 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix pauli_dot(const BlochVector& w) {
  require_unit(w);
  return {{w.z, Complex(w.x, -w.y)}, {Complex(w.x, w.y), -w.z}};
}

}  // namespace spinflip

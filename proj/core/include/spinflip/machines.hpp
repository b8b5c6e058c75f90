#pragma once

#include "spinflip/bloch.hpp"
#include "spinflip/linalg.hpp"
#include "spinflip/states.hpp"

namespace spinflip {

enum class FlipDirection {
  ParallelToAntiparallel,
  AntiparallelToParallel,
};

/// Exact flip machine for one great circle. u2 = w . sigma acts on the
/// second qubit only; u4 = I (x) u2. No ancilla is carried.
class FlipMachine {
 public:
  const GreatCircle& circle() const noexcept { return circle_; }
  const ComplexMatrix& u2() const noexcept { return u2_; }
  const ComplexMatrix& u4() const noexcept { return u4_; }
  FlipDirection direction() const noexcept { return direction_; }

  TwoQubitState apply(const TwoQubitState& state) const;
  QubitState apply(const QubitState& qubit) const;

 private:
  FlipMachine(GreatCircle circle, ComplexMatrix u2, FlipDirection direction);

  friend FlipMachine flipper_for_circle(const GreatCircle& circle);
  friend FlipMachine antiparallel_to_parallel_machine(const GreatCircle& circle);

  GreatCircle circle_;
  ComplexMatrix u2_;
  ComplexMatrix u4_;
  FlipDirection direction_;
};

/// u2 = w . sigma, the pi rotation about the circle normal. Maps every qubit
/// on the circle to its antipode up to a phase. Throws NotUnit.
FlipMachine flipper_for_circle(const GreatCircle& circle);

/// Inverse machine, u2 replaced by its adjoint (equal to u2 itself).
FlipMachine antiparallel_to_parallel_machine(const GreatCircle& circle);

/// |<target(n)| u4 |source(n)>| where source/target follow the machine
/// direction. Equals sqrt(1 - (n . w)^2).
double machine_fidelity(const FlipMachine& machine, const BlochVector& n);

/// Action of u4 on the basis {|00>, |11>, (|01>+|10>)/sqrt2} of the
/// symmetric subspace, for a circle through both poles:
///   u4|00> = e^{ia}|01>, u4|11> = e^{ib}|10>,
///   u4 (|01>+|10>)/sqrt2 = e^{ic}(c1|00> + c2|11>).
/// Flipped points then have azimuth (a - b + pi)/2 mod pi.
struct BasisActionReport {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  Complex c1;
  Complex c2;
  /// Norm lost outside the expected target of each basis image.
  double leakage = 0.0;
  /// |c1|^2 + |c2|^2.
  double c_norm = 0.0;
  /// (a - b + pi)/2 reduced to [0, pi).
  double predicted_azimuth = 0.0;
  /// Azimuth of the meridian plane, in [0, pi).
  double circle_azimuth = 0.0;
  /// Distance between the two azimuths modulo pi.
  double azimuth_residual = 0.0;

  bool consistent(double tol = kGeometricTol) const {
    return azimuth_residual <= tol && std::abs(c_norm - 1.0) <= tol && leakage <= tol;
  }
};

/// Throws NotMeridian if |w . z| > kGeometricTol.
BasisActionReport verify_basis_action(const FlipMachine& machine);

/// Distance between two angles modulo pi, in [0, pi/2].
double angle_distance_mod_pi(double lhs, double rhs);

}  // namespace spinflip

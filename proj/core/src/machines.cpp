#include "spinflip/machines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spinflip/error.hpp"

namespace spinflip {
namespace {

double reduce_mod_pi(double angle) {
  double r = std::fmod(angle, std::numbers::pi);
  if (r < 0.0) r += std::numbers::pi;
  if (r >= std::numbers::pi) r -= std::numbers::pi;
  return r;
}

TwoQubitState basis_state(std::size_t index) {
  TwoQubitState s;
  s.amplitudes = {0.0, 0.0, 0.0, 0.0};
  s.amplitudes[index] = 1.0;
  return s;
}

}  // namespace

FlipMachine::FlipMachine(GreatCircle circle, ComplexMatrix u2, FlipDirection direction)
    : circle_(circle),
      u2_(std::move(u2)),
      u4_(kron(ComplexMatrix::identity(2), u2_)),
      direction_(direction) {}

TwoQubitState FlipMachine::apply(const TwoQubitState& state) const {
  const auto out = u4_ * std::span<const Complex>(state.amplitudes);
  return {{out[0], out[1], out[2], out[3]}};
}

QubitState FlipMachine::apply(const QubitState& qubit) const {
  const auto amps = qubit.amplitudes();
  const auto out = u2_ * std::span<const Complex>(amps);
  return {out[0], out[1]};
}

FlipMachine flipper_for_circle(const GreatCircle& circle) {
  return FlipMachine(circle, pauli_dot(circle.normal), FlipDirection::ParallelToAntiparallel);
}

FlipMachine antiparallel_to_parallel_machine(const GreatCircle& circle) {
  return FlipMachine(circle, pauli_dot(circle.normal).adjoint(),
                     FlipDirection::AntiparallelToParallel);
}

double machine_fidelity(const FlipMachine& machine, const BlochVector& n) {
  const bool forward = machine.direction() == FlipDirection::ParallelToAntiparallel;
  const TwoQubitState source = forward ? parallel(n) : antiparallel(n);
  const TwoQubitState target = forward ? antiparallel(n) : parallel(n);
  const TwoQubitState image = machine.apply(source);
  return std::min(1.0, std::abs(inner(target.amplitudes, image.amplitudes)));
}

double angle_distance_mod_pi(double lhs, double rhs) {
  const double d = reduce_mod_pi(lhs - rhs);
  return std::min(d, std::numbers::pi - d);
}

BasisActionReport verify_basis_action(const FlipMachine& machine) {
  const BlochVector& w = machine.circle().normal;
  if (std::abs(w.z) > kGeometricTol) {
    throw Error(ErrorCode::NotMeridian,
                "circle normal has z component " + std::to_string(w.z));
  }
  BasisActionReport report;

  const auto image00 = machine.apply(basis_state(0)).amplitudes;
  const auto image11 = machine.apply(basis_state(3)).amplitudes;
  TwoQubitState symmetric;
  symmetric.amplitudes = {0.0, std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0, 0.0};
  const auto image_sym = machine.apply(symmetric).amplitudes;

  report.a = wrap_phase(std::arg(image00[1]));
  report.b = wrap_phase(std::arg(image11[2]));

  std::array<Complex, 2> coefficients{image_sym[0], image_sym[3]};
  const Complex lead = std::abs(coefficients[0]) > kGaugeZero ? coefficients[0] : coefficients[1];
  report.c = wrap_phase(std::arg(lead));
  const Complex unphase = std::polar(1.0, -report.c);
  report.c1 = coefficients[0] * unphase;
  report.c2 = coefficients[1] * unphase;
  report.c_norm = std::norm(report.c1) + std::norm(report.c2);

  report.leakage = std::max({std::abs(std::abs(image00[1]) - 1.0),
                             std::abs(std::abs(image11[2]) - 1.0),
                             std::hypot(std::abs(image_sym[1]), std::abs(image_sym[2]))});

  report.predicted_azimuth = reduce_mod_pi((report.a - report.b + std::numbers::pi) / 2.0);
  // The meridian plane contains the pole axis and the in-plane direction (-w_y, w_x, 0).
  report.circle_azimuth = reduce_mod_pi(std::atan2(w.x, -w.y));
  report.azimuth_residual =
      angle_distance_mod_pi(report.predicted_azimuth, report.circle_azimuth);
  return report;
}

}  // namespace spinflip

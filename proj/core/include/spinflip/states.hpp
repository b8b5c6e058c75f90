#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "spinflip/bloch.hpp"
#include "spinflip/linalg.hpp"

namespace spinflip {

/// Two-qubit pure state, basis order |00>, |01>, |10>, |11>.
struct TwoQubitState {
  std::array<Complex, 4> amplitudes{1.0, 0.0, 0.0, 0.0};

  static TwoQubitState product(const QubitState& first, const QubitState& second);

  double norm() const;
  /// Same state times e^{i angle}.
  TwoQubitState with_phase(double angle) const;
  ComplexVector to_vector() const { return {amplitudes.begin(), amplitudes.end()}; }
};

/// k x k matrix G_ij = <state_i|state_j>.
using GramMatrix = ComplexMatrix;

/// |n, n>.
TwoQubitState parallel(const BlochVector& n);
/// |n, -n>.
TwoQubitState antiparallel(const BlochVector& n);

std::vector<TwoQubitState> parallels(std::span<const BlochVector> vectors);
std::vector<TwoQubitState> antiparallels(std::span<const BlochVector> vectors);

/// Throws EmptyInput.
GramMatrix gram(std::span<const TwoQubitState> states);

/// Numerical rank of the amplitude vectors. Throws EmptyInput.
std::size_t span_dimension(std::span<const TwoQubitState> states, double tol = kDefaultRankTol);

/// Phases theta_i with theta_0 = 0 such that
/// G_in(i,j) = e^{i(theta_j - theta_i)} G_out(i,j) for every pair.
struct ExactTransform {
  std::vector<double> phases;
};

struct Infeasible {
  enum class Kind { Modulus, Phase };
  std::size_t i = 0;
  std::size_t j = 0;
  Kind kind = Kind::Modulus;
  double residual = 0.0;
};

using Transformability = std::variant<ExactTransform, Infeasible>;

inline bool is_exact(const Transformability& t) {
  return std::holds_alternative<ExactTransform>(t);
}

/// Decides whether one unitary maps inputs[i] to outputs[i] up to per-state
/// phases. Moduli of the two Gram matrices must agree within tol; phase
/// differences are then propagated breadth-first along pairs with
/// |G_in(i,j)| > tol, and every remaining such pair is checked. Each
/// connected component gets its own base phase 0. On failure the first
/// violating pair (i < j, lexicographic) is reported.
/// Throws LengthMismatch, EmptyInput.
Transformability exact_transformability(std::span<const TwoQubitState> inputs,
                                        std::span<const TwoQubitState> outputs,
                                        double tol = kGeometricTol);

/// Same test on precomputed Gram matrices. Throws SizeMismatch, EmptyInput.
Transformability exact_transformability(const GramMatrix& g_in, const GramMatrix& g_out,
                                        double tol = kGeometricTol);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

}  // namespace spinflip

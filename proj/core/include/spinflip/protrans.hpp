#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "spinflip/bloch.hpp"
#include "spinflip/states.hpp"

namespace spinflip {

struct RankObstruction {
  std::size_t rank_in = 0;
  std::size_t rank_out = 0;
};

struct PsdInfeasible {};

struct Impossible {
  std::variant<RankObstruction, PsdInfeasible> reason;
};

/// Uniform success probability gamma in (0, 1) with the output phases that
/// achieve it and the smallest eigenvalue of the PSD condition there.
struct ProbabilisticTransform {
  double gamma = 0.0;
  std::vector<double> phases;
  double certificate = 0.0;
};

using FeasibilityResult = std::variant<ExactTransform, ProbabilisticTransform, Impossible>;

/// Tuning for the uniform-gamma search. Defaults follow the documented
/// procedure: bisection to 1e-6, 32 grid points per free phase, coordinate
/// descent down to a 1e-4 phase step.
struct GammaSearchOptions {
  double gamma_width = 1e-6;
  std::size_t grid_points = 32;
  double phase_resolution = 1e-4;
};

/// G_in - D^dagger G_out D with D = diag(sqrt(gamma_i) e^{i phase_i}), i.e.
/// entry (i,j) is G_in(i,j) - sqrt(gamma_i gamma_j) e^{i(phase_j - phase_i)} G_out(i,j).
/// The phases use the same convention as ExactTransform::phases.
ComplexMatrix success_defect(const GramMatrix& g_in, const GramMatrix& g_out,
                             std::span<const double> gammas, std::span<const double> phases);

/// True when success_defect(...) is PSD within tol, i.e. a unitary-reduction
/// with success probabilities `gammas` exists.
/// Throws SizeMismatch, GammaOutOfRange.
bool psd_feasible(const GramMatrix& g_in, const GramMatrix& g_out,
                  std::span<const double> gammas, std::span<const double> phases, double tol);

/// rank_out > rank_in, with ranks taken at kDefaultRankTol.
/// Throws LengthMismatch, EmptyInput.
std::optional<RankObstruction> rank_obstruction(std::span<const TwoQubitState> inputs,
                                                std::span<const TwoQubitState> outputs);

/// Feasibility ladder: Exact if a unitary does it, Impossible on a rank
/// obstruction, otherwise the largest uniform gamma found by bisection over
/// gamma with an inner phase search (phase_0 fixed at 0).
/// Throws LengthMismatch, EmptyInput.
FeasibilityResult max_uniform_gamma(std::span<const TwoQubitState> inputs,
                                    std::span<const TwoQubitState> outputs,
                                    double tol = kGeometricTol,
                                    const GammaSearchOptions& options = {});

struct UsdResult {
  double value = 0.0;
  std::vector<double> gammas;
};

/// Optimal unambiguous discrimination: maximize sum p_i gamma_i subject to
/// G - diag(gamma) PSD. Linearly dependent sets score 0.
/// Throws PriorMismatch, EmptyInput.
UsdResult usd_max_success(std::span<const TwoQubitState> states, std::span<const double> priors);
UsdResult usd_max_success(const GramMatrix& g, std::span<const double> priors);

struct AsymmetryReport {
  std::vector<BlochVector> vectors;
  CircleFit circle;
  std::size_t dim_parallel = 0;
  std::size_t dim_antiparallel = 0;
  Transformability exact_pa;
  Transformability exact_ap;
  FeasibilityResult protrans_pa;
  FeasibilityResult protrans_ap;
  UsdResult usd_parallel;
  UsdResult usd_antiparallel;
};

/// Everything above for P_S and A_S in both directions, with uniform priors.
/// Throws EmptyInput, DuplicateVectors, NotUnit.
AsymmetryReport compare_sets(std::span<const BlochVector> vectors, double tol = kGeometricTol,
                             const GammaSearchOptions& options = {});

inline bool is_probabilistic(const FeasibilityResult& r) {
  return std::holds_alternative<ProbabilisticTransform>(r);
}
inline bool is_impossible(const FeasibilityResult& r) {
  return std::holds_alternative<Impossible>(r);
}
inline bool is_exact(const FeasibilityResult& r) {
  return std::holds_alternative<ExactTransform>(r);
}

}  // namespace spinflip

#include "spinflip/protrans.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "spinflip/error.hpp"

namespace spinflip {
namespace {

using EigenMatrix = Eigen::MatrixXcd;

void require_same_length(std::size_t inputs, std::size_t outputs) {
  if (inputs != outputs) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(inputs) + " inputs vs " + std::to_string(outputs) + " outputs");
  }
  if (inputs == 0) throw Error(ErrorCode::EmptyInput, "no states to transform");
}

std::size_t rank_of(std::span<const TwoQubitState> states) {
  return span_dimension(states, kDefaultRankTol);
}

// Smallest eigenvalue of G_in - gamma D^dagger G_out D for a uniform gamma.
class DefectEvaluator {
 public:
  DefectEvaluator(const GramMatrix& g_in, const GramMatrix& g_out)
      : g_in_(g_in), g_out_(g_out), k_(g_in.rows()), scratch_(k_, k_) {}

  double operator()(double gamma, std::span<const double> phases) {
    for (std::size_t i = 0; i < k_; ++i) {
      scratch_(i, i) = g_in_(i, i) - gamma * g_out_(i, i);
      for (std::size_t j = i + 1; j < k_; ++j) {
        const Complex value =
            g_in_(i, j) - gamma * std::polar(1.0, phases[j] - phases[i]) * g_out_(i, j);
        scratch_(i, j) = value;
        scratch_(j, i) = std::conj(value);
      }
    }
    return smallest_eigenvalue(scratch_);
  }

 private:
  const GramMatrix& g_in_;
  const GramMatrix& g_out_;
  std::size_t k_;
  ComplexMatrix scratch_;
};

struct PhasePoint {
  std::vector<double> phases;
  double value = -std::numeric_limits<double>::infinity();
};

// Maximizes the smallest defect eigenvalue over phases (phase_0 = 0) at a
// fixed gamma. With stop_when_feasible the search returns as soon as some
// point clears -tol.
class PhaseSearch {
 public:
  PhaseSearch(DefectEvaluator& evaluate, std::size_t k, double tol,
              const GammaSearchOptions& options)
      : evaluate_(evaluate), k_(k), tol_(tol), options_(options) {}

  PhasePoint run(double gamma, const PhasePoint* warm_start, bool stop_when_feasible) {
    PhasePoint best;
    best.phases.assign(k_, 0.0);
    if (warm_start != nullptr) {
      best.phases = warm_start->phases;
      best.value = evaluate_(gamma, best.phases);
      if (stop_when_feasible && best.value >= -tol_) return best;
    }

    const std::size_t free = k_ - 1;
    const std::size_t points = std::max<std::size_t>(options_.grid_points, 1);
    const double spacing = 2.0 * std::numbers::pi / static_cast<double>(points);
    std::vector<std::size_t> index(free, 0);
    std::vector<double> trial(k_, 0.0);
    std::vector<double> values;
    while (true) {
      for (std::size_t c = 0; c < free; ++c) trial[c + 1] = spacing * static_cast<double>(index[c]);
      const double value = evaluate_(gamma, trial);
      if (stop_when_feasible && value >= -tol_) return {trial, value};
      values.push_back(value);
      std::size_t c = 0;
      while (c < free && ++index[c] == points) index[c++] = 0;
      if (c == free) break;
    }

    // The best grid point can sit in the wrong basin, so refine from the
    // strongest local maxima of the grid (periodic in every phase).
    std::vector<PhasePoint> candidates;
    for (std::size_t flat = 0; flat < values.size(); ++flat) {
      bool peak = true;
      std::size_t stride = 1;
      for (std::size_t c = 0; c < free && peak; ++c, stride *= points) {
        const std::size_t digit = (flat / stride) % points;
        const std::size_t up = flat - digit * stride + ((digit + 1) % points) * stride;
        const std::size_t down = flat - digit * stride + ((digit + points - 1) % points) * stride;
        peak = values[flat] >= values[up] && values[flat] >= values[down];
      }
      if (!peak) continue;
      PhasePoint candidate{std::vector<double>(k_, 0.0), values[flat]};
      stride = 1;
      for (std::size_t c = 0; c < free; ++c, stride *= points) {
        candidate.phases[c + 1] = spacing * static_cast<double>((flat / stride) % points);
      }
      candidates.push_back(std::move(candidate));
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const PhasePoint& a, const PhasePoint& b) { return a.value > b.value; });
    if (candidates.size() > kRefineStarts) candidates.resize(kRefineStarts);
    if (warm_start != nullptr) candidates.push_back(best);
    for (PhasePoint& candidate : candidates) {
      refine(gamma, candidate, spacing / 2.0, stop_when_feasible);
      if (candidate.value > best.value) best = candidate;
      if (stop_when_feasible && best.value >= -tol_) break;
    }
    return best;
  }

 private:
  static constexpr std::size_t kRefineStarts = 4;

  // Pattern search over every direction in {-1,0,1}^(k-1). Axis moves alone
  // stall on the ridges where the two lowest eigenvalues cross.
  void refine(double gamma, PhasePoint& point, double step, bool stop_when_feasible) {
    const std::size_t free = k_ - 1;
    std::vector<double> trial = point.phases;
    while (step >= options_.phase_resolution) {
      if (stop_when_feasible && point.value >= -tol_) return;
      bool improved = false;
      std::vector<int> move(free, -1);
      while (true) {
        if (std::any_of(move.begin(), move.end(), [](int m) { return m != 0; })) {
          for (std::size_t c = 0; c < free; ++c) {
            trial[c + 1] = point.phases[c + 1] + step * static_cast<double>(move[c]);
          }
          const double value = evaluate_(gamma, trial);
          if (value > point.value) {
            point.value = value;
            point.phases = trial;
            improved = true;
          }
        }
        std::size_t c = 0;
        while (c < free && ++move[c] == 2) move[c++] = -1;
        if (c == free) break;
      }
      if (!improved) step /= 2.0;
    }
  }

  DefectEvaluator& evaluate_;
  std::size_t k_;
  double tol_;
  GammaSearchOptions options_;
};

// Phases alpha with alpha_0 = 0 such that G(i,j) e^{-i(alpha_j - alpha_i)} has a
// real nonnegative first row wherever that row is not negligible.
std::vector<double> first_row_gauge(const GramMatrix& g, double tol) {
  std::vector<double> alpha(g.rows(), 0.0);
  for (std::size_t j = 1; j < g.rows(); ++j) {
    if (std::abs(g(0, j)) > tol) alpha[j] = std::arg(g(0, j));
  }
  return alpha;
}

GramMatrix regauge(const GramMatrix& g, std::span<const double> alpha) {
  GramMatrix out = g;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) out(i, j) *= std::polar(1.0, alpha[i] - alpha[j]);
  }
  return out;
}

// The search runs on first-row-gauged Gram matrices so that per-state phases
// of the inputs or outputs cannot steer it into a different basin. A solution
// phi' there maps back to phi = phi' + alpha_in - alpha_out.
FeasibilityResult search_uniform_gamma(const GramMatrix& g_in_raw, const GramMatrix& g_out_raw,
                                       double tol, const GammaSearchOptions& options) {
  const std::size_t k = g_in_raw.rows();
  const auto alpha_in = first_row_gauge(g_in_raw, tol);
  const auto alpha_out = first_row_gauge(g_out_raw, tol);
  const GramMatrix g_in = regauge(g_in_raw, alpha_in);
  const GramMatrix g_out = regauge(g_out_raw, alpha_out);
  DefectEvaluator evaluate(g_in, g_out);
  PhaseSearch search(evaluate, k, tol, options);

  double lo = 0.0;
  double hi = 1.0;
  PhasePoint feasible_at_lo;
  feasible_at_lo.phases.assign(k, 0.0);
  bool found = false;
  while (hi - lo > options.gamma_width) {
    const double mid = 0.5 * (lo + hi);
    PhasePoint point = search.run(mid, found ? &feasible_at_lo : nullptr, true);
    if (point.value >= -tol) {
      lo = mid;
      feasible_at_lo = std::move(point);
      found = true;
    } else {
      hi = mid;
    }
  }
  if (!found) return Impossible{PsdInfeasible{}};

  // Polish the phases at the accepted gamma so the certificate is the best found.
  PhasePoint polished = search.run(lo, &feasible_at_lo, false);
  if (polished.value < feasible_at_lo.value) polished = feasible_at_lo;
  for (std::size_t i = 0; i < k; ++i) {
    polished.phases[i] = wrap_phase(polished.phases[i] + alpha_in[i] - alpha_out[i]);
  }
  return ProbabilisticTransform{lo, std::move(polished.phases), polished.value};
}

struct UsdBarrier {
  const EigenMatrix& g;
  Eigen::VectorXd priors;

  // Returns false when gamma leaves the domain (gamma_i <= 0 or S not PD).
  bool evaluate(const Eigen::VectorXd& gamma, double t, double& value, Eigen::VectorXd* grad,
                Eigen::MatrixXd* hess) const {
    if ((gamma.array() <= 0.0).any()) return false;
    EigenMatrix s = g;
    s.diagonal() -= gamma.cast<Complex>();
    Eigen::LLT<EigenMatrix> llt(s);
    if (llt.info() != Eigen::Success) return false;
    const auto diag = llt.matrixLLT().diagonal().real();
    if ((diag.array() <= 0.0).any()) return false;
    value = -t * priors.dot(gamma) - 2.0 * diag.array().log().sum() - gamma.array().log().sum();
    if (grad == nullptr) return true;
    const EigenMatrix s_inv = llt.solve(EigenMatrix::Identity(g.rows(), g.cols()));
    *grad = -t * priors + s_inv.diagonal().real() - gamma.cwiseInverse();
    *hess = s_inv.cwiseAbs2();
    hess->diagonal() += gamma.cwiseInverse().cwiseAbs2();
    return true;
  }
};

// Log-barrier Newton method for max p.gamma s.t. G - diag(gamma) > 0, gamma > 0.
std::vector<double> solve_usd_barrier(const GramMatrix& g_in, std::span<const double> priors) {
  const auto k = static_cast<Eigen::Index>(g_in.rows());
  EigenMatrix g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      g(i, j) = g_in(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  UsdBarrier barrier{g, Eigen::Map<const Eigen::VectorXd>(priors.data(), k)};

  const double lambda_min = Eigen::SelfAdjointEigenSolver<EigenMatrix>(g, Eigen::EigenvaluesOnly)
                                .eigenvalues()
                                .minCoeff();
  Eigen::VectorXd gamma = Eigen::VectorXd::Constant(k, 0.5 * lambda_min);

  const double barrier_terms = 2.0 * static_cast<double>(k);
  for (double t = 1.0; barrier_terms / t > 1e-12; t *= 8.0) {
    for (int iteration = 0; iteration < 200; ++iteration) {
      double value = 0.0;
      Eigen::VectorXd grad;
      Eigen::MatrixXd hess;
      barrier.evaluate(gamma, t, value, &grad, &hess);
      const Eigen::VectorXd step = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(step);
      if (decrement < 1e-14) break;
      double alpha = 1.0;
      double trial_value = 0.0;
      while (alpha > 1e-16) {
        const Eigen::VectorXd trial = gamma + alpha * step;
        if (barrier.evaluate(trial, t, trial_value, nullptr, nullptr) &&
            trial_value <= value - 0.25 * alpha * decrement) {
          gamma = trial;
          break;
        }
        alpha *= 0.5;
      }
      if (alpha <= 1e-16) break;
    }
  }
  std::vector<double> out(gamma.data(), gamma.data() + k);
  for (double& x : out) x = std::clamp(x, 0.0, 1.0);
  return out;
}

void require_priors(std::size_t k, std::span<const double> priors) {
  if (priors.size() != k) {
    throw Error(ErrorCode::PriorMismatch,
                std::to_string(priors.size()) + " priors for " + std::to_string(k) + " states");
  }
  double total = 0.0;
  for (double p : priors) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::PriorMismatch, "priors must be finite and non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw Error(ErrorCode::PriorMismatch, "priors sum to " + std::to_string(total));
  }
}

}  // namespace

ComplexMatrix success_defect(const GramMatrix& g_in, const GramMatrix& g_out,
                             std::span<const double> gammas, std::span<const double> phases) {
  const std::size_t k = g_in.rows();
  ComplexMatrix out(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      out(i, j) = g_in(i, j) - std::sqrt(gammas[i] * gammas[j]) *
                                   std::polar(1.0, phases[j] - phases[i]) * g_out(i, j);
    }
  }
  return out;
}

bool psd_feasible(const GramMatrix& g_in, const GramMatrix& g_out,
                  std::span<const double> gammas, std::span<const double> phases, double tol) {
  const std::size_t k = g_in.rows();
  if (!g_in.is_square() || !g_out.is_square() || g_out.rows() != k || gammas.size() != k ||
      phases.size() != k) {
    throw Error(ErrorCode::SizeMismatch, "Gram matrices, gammas and phases must share size");
  }
  for (double gamma : gammas) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
      throw Error(ErrorCode::GammaOutOfRange, "gamma = " + std::to_string(gamma));
    }
  }
  return is_psd(success_defect(g_in, g_out, gammas, phases), tol);
}

std::optional<RankObstruction> rank_obstruction(std::span<const TwoQubitState> inputs,
                                                std::span<const TwoQubitState> outputs) {
  require_same_length(inputs.size(), outputs.size());
  const std::size_t rank_in = rank_of(inputs);
  const std::size_t rank_out = rank_of(outputs);
  if (rank_out > rank_in) return RankObstruction{rank_in, rank_out};
  return std::nullopt;
}

FeasibilityResult max_uniform_gamma(std::span<const TwoQubitState> inputs,
                                    std::span<const TwoQubitState> outputs, double tol,
                                    const GammaSearchOptions& options) {
  require_same_length(inputs.size(), outputs.size());
  const GramMatrix g_in = gram(inputs);
  const GramMatrix g_out = gram(outputs);
  auto exact = exact_transformability(g_in, g_out, tol);
  if (auto* found = std::get_if<ExactTransform>(&exact)) return std::move(*found);
  if (auto obstruction = rank_obstruction(inputs, outputs)) return Impossible{*obstruction};
  return search_uniform_gamma(g_in, g_out, tol, options);
}

UsdResult usd_max_success(const GramMatrix& g, std::span<const double> priors) {
  if (g.rows() == 0) throw Error(ErrorCode::EmptyInput, "no states to discriminate");
  const std::size_t k = g.rows();
  require_priors(k, priors);

  if (max_abs_diff(g, ComplexMatrix::identity(k)) <= kGeometricTol) {
    return {1.0, std::vector<double>(k, 1.0)};
  }
  // Rank of G equals the rank of the states it came from.
  const auto eigenvalues = hermitian_eigenvalues(g);
  const double sigma_max = eigenvalues.back();
  const auto rank = static_cast<std::size_t>(std::count_if(
      eigenvalues.begin(), eigenvalues.end(),
      [&](double l) { return std::sqrt(std::max(l, 0.0)) > kDefaultRankTol * std::sqrt(sigma_max); }));
  if (rank < k) return {0.0, std::vector<double>(k, 0.0)};

  UsdResult result;
  result.gammas = solve_usd_barrier(g, priors);
  result.value = std::inner_product(priors.begin(), priors.end(), result.gammas.begin(), 0.0);
  return result;
}

UsdResult usd_max_success(std::span<const TwoQubitState> states, std::span<const double> priors) {
  if (states.empty()) throw Error(ErrorCode::EmptyInput, "no states to discriminate");
  require_priors(states.size(), priors);
  if (span_dimension(states, kDefaultRankTol) < states.size()) {
    return {0.0, std::vector<double>(states.size(), 0.0)};
  }
  return usd_max_success(gram(states), priors);
}

AsymmetryReport compare_sets(std::span<const BlochVector> vectors, double tol,
                             const GammaSearchOptions& options) {
  if (vectors.empty()) throw Error(ErrorCode::EmptyInput, "no Bloch vectors");
  for (const auto& n : vectors) require_unit(n);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      const BlochVector d{vectors[i].x - vectors[j].x, vectors[i].y - vectors[j].y,
                          vectors[i].z - vectors[j].z};
      if (d.norm() <= kGeometricTol) {
        throw Error(ErrorCode::DuplicateVectors,
                    "vectors " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }

  const auto p = parallels(vectors);
  const auto a = antiparallels(vectors);
  const std::vector<double> uniform(vectors.size(), 1.0 / static_cast<double>(vectors.size()));

  AsymmetryReport report{
      .vectors = {vectors.begin(), vectors.end()},
      .circle = great_circle_fit(vectors, tol),
      .dim_parallel = rank_of(p),
      .dim_antiparallel = rank_of(a),
      .exact_pa = exact_transformability(p, a, tol),
      .exact_ap = exact_transformability(a, p, tol),
      .protrans_pa = max_uniform_gamma(p, a, tol, options),
      .protrans_ap = max_uniform_gamma(a, p, tol, options),
      .usd_parallel = usd_max_success(p, uniform),
      .usd_antiparallel = usd_max_success(a, uniform),
  };
  return report;
}

}  // namespace spinflip

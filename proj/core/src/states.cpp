#include "spinflip/states.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "spinflip/error.hpp"

namespace spinflip {

TwoQubitState TwoQubitState::product(const QubitState& first, const QubitState& second) {
  return {{first.a0 * second.a0, first.a0 * second.a1, first.a1 * second.a0,
           first.a1 * second.a1}};
}

double TwoQubitState::norm() const {
  double sum = 0.0;
  for (const Complex& a : amplitudes) sum += std::norm(a);
  return std::sqrt(sum);
}

TwoQubitState TwoQubitState::with_phase(double angle) const {
  TwoQubitState out = *this;
  const Complex phase = std::polar(1.0, angle);
  for (Complex& a : out.amplitudes) a *= phase;
  return out;
}

TwoQubitState parallel(const BlochVector& n) {
  const QubitState q = qubit_from_bloch(n);
  return TwoQubitState::product(q, q);
}

TwoQubitState antiparallel(const BlochVector& n) {
  return TwoQubitState::product(qubit_from_bloch(n), qubit_from_bloch(antipode(n)));
}

std::vector<TwoQubitState> parallels(std::span<const BlochVector> vectors) {
  std::vector<TwoQubitState> out;
  out.reserve(vectors.size());
  for (const auto& n : vectors) out.push_back(parallel(n));
  return out;
}

std::vector<TwoQubitState> antiparallels(std::span<const BlochVector> vectors) {
  std::vector<TwoQubitState> out;
  out.reserve(vectors.size());
  for (const auto& n : vectors) out.push_back(antiparallel(n));
  return out;
}

GramMatrix gram(std::span<const TwoQubitState> states) {
  if (states.empty()) throw Error(ErrorCode::EmptyInput, "gram of an empty state list");
  const std::size_t k = states.size();
  GramMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    g(i, i) = inner(states[i].amplitudes, states[i].amplitudes);
    for (std::size_t j = i + 1; j < k; ++j) {
      g(i, j) = inner(states[i].amplitudes, states[j].amplitudes);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return g;
}

std::size_t span_dimension(std::span<const TwoQubitState> states, double tol) {
  if (states.empty()) throw Error(ErrorCode::EmptyInput, "span of an empty state list");
  std::vector<ComplexVector> vectors;
  vectors.reserve(states.size());
  for (const auto& s : states) vectors.push_back(s.to_vector());
  return numerical_rank(vectors, tol);
}

double wrap_phase(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::remainder(angle, two_pi);  // [-pi, pi]
  if (wrapped <= -std::numbers::pi) wrapped += two_pi;
  return wrapped;
}

Transformability exact_transformability(const GramMatrix& g_in, const GramMatrix& g_out,
                                        double tol) {
  if (g_in.rows() == 0) throw Error(ErrorCode::EmptyInput, "no states to transform");
  if (!g_in.is_square() || !g_out.is_square() || g_in.rows() != g_out.rows()) {
    throw Error(ErrorCode::SizeMismatch, "Gram matrices must be square and of equal size");
  }
  const std::size_t k = g_in.rows();

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const double gap = std::abs(std::abs(g_in(i, j)) - std::abs(g_out(i, j)));
      if (gap > tol) return Infeasible{i, j, Infeasible::Kind::Modulus, gap};
    }
  }

  // theta_j - theta_i = arg(G_in(i,j) conj(G_out(i,j))) on every edge.
  std::vector<double> phases(k, 0.0);
  std::vector<bool> seen(k, false);
  for (std::size_t root = 0; root < k; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::queue<std::size_t> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const std::size_t i = frontier.front();
      frontier.pop();
      for (std::size_t j = 0; j < k; ++j) {
        if (seen[j] || std::abs(g_in(i, j)) <= tol) continue;
        seen[j] = true;
        phases[j] = wrap_phase(phases[i] + std::arg(g_in(i, j) * std::conj(g_out(i, j))));
        frontier.push(j);
      }
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (std::abs(g_in(i, j)) <= tol) continue;
      const Complex predicted = std::polar(1.0, phases[j] - phases[i]) * g_out(i, j);
      const double residual = std::abs(g_in(i, j) - predicted);
      if (residual > tol) return Infeasible{i, j, Infeasible::Kind::Phase, residual};
    }
  }
  return ExactTransform{std::move(phases)};
}

Transformability exact_transformability(std::span<const TwoQubitState> inputs,
                                        std::span<const TwoQubitState> outputs, double tol) {
  if (inputs.size() != outputs.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(inputs.size()) + " inputs vs " +
                                               std::to_string(outputs.size()) + " outputs");
  }
  if (inputs.empty()) throw Error(ErrorCode::EmptyInput, "no states to transform");
  return exact_transformability(gram(inputs), gram(outputs), tol);
}

}  // namespace spinflip

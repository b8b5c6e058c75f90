// Acceptance suite: one PASS/FAIL line per property, exit status 1 if any fails.
// Expected values come from closed forms or from the brute-force routines in
// support/oracle.hpp, never from the library under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spinflip/spinflip.hpp"
#include "support/oracle.hpp"
#include "support/sampling.hpp"

namespace {

using namespace spinflip;
using spinflip::testing::random_on_circle;
using spinflip::testing::random_phase;
using spinflip::testing::random_unit;
using spinflip::testing::to_dense;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Check = std::function<Outcome(std::mt19937_64&)>;

std::vector<BlochVector> generic_triple(std::mt19937_64& rng) {
  while (true) {
    std::vector<BlochVector> v{random_unit(rng), random_unit(rng), random_unit(rng)};
    if (great_circle_fit(v, kGeometricTol).residual > 0.01) return v;
  }
}

double wrap_pi(double x) {
  x = std::fmod(x, std::numbers::pi);
  return x < 0.0 ? x + std::numbers::pi : x;
}

double distance_mod_pi(double a, double b) {
  const double d = wrap_pi(a - b);
  return std::min(d, std::numbers::pi - d);
}

std::vector<TwoQubitState> rephase(const std::vector<TwoQubitState>& states, std::mt19937_64& rng) {
  std::vector<TwoQubitState> out;
  for (const auto& s : states) out.push_back(s.with_phase(random_phase(rng)));
  return out;
}

// --- 1 ---------------------------------------------------------------------
Outcome fidelity_law(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const BlochVector w = random_unit(rng);
    const BlochVector n = random_unit(rng);
    const double d = w.x * n.x + w.y * n.y + w.z * n.z;
    const double expected = std::sqrt(std::max(0.0, 1.0 - d * d));
    const auto machine = flipper_for_circle(GreatCircle::from_normal(w));
    worst = std::max(worst, std::abs(machine_fidelity(machine, n) - expected));
  }
  return {worst < 1e-10, "1000 pairs, max |F - sqrt(1-(n.w)^2)| = " + std::to_string(worst)};
}

// --- 2 ---------------------------------------------------------------------
Outcome circle_maximality(std::mt19937_64& rng) {
  int on_ok = 0, off_ok = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const BlochVector w = random_unit(rng);
    const std::vector<BlochVector> v{random_on_circle(w, rng), random_on_circle(w, rng),
                                     random_on_circle(w, rng)};
    const auto p = parallels(v), a = antiparallels(v);
    if (is_exact(exact_transformability(p, a)) && is_exact(max_uniform_gamma(p, a))) ++on_ok;
  }
  for (int trial = 0; trial < 500; ++trial) {
    const auto v = generic_triple(rng);
    const auto p = parallels(v), a = antiparallels(v);
    if (!is_exact(exact_transformability(p, a)) && !is_exact(max_uniform_gamma(p, a))) ++off_ok;
  }
  return {on_ok == 500 && off_ok == 500,
          "on-circle Exact " + std::to_string(on_ok) + "/500, off-circle not Exact " +
              std::to_string(off_ok) + "/500"};
}

// --- 3 ---------------------------------------------------------------------
Outcome tetrahedron(std::mt19937_64&) {
  const auto t = fixtures::tetrahedron();
  const auto p = parallels(t), a = antiparallels(t);
  const std::size_t dp = span_dimension(p, 1e-8), da = span_dimension(a, 1e-8);

  bool obstruction = false;
  const auto forward = max_uniform_gamma(p, a);
  if (const auto* imp = std::get_if<Impossible>(&forward)) {
    if (const auto* r = std::get_if<RankObstruction>(&imp->reason)) {
      obstruction = r->rank_in == 3 && r->rank_out == 4;
    }
  }
  double gamma = -1.0;
  const auto backward = max_uniform_gamma(a, p);
  if (const auto* pt = std::get_if<ProbabilisticTransform>(&backward)) gamma = pt->gamma;

  std::ostringstream detail;
  detail << "dims (" << dp << ", " << da << "), P->A rank obstruction 3<4: "
         << (obstruction ? "yes" : "no") << ", A->P gamma* = " << gamma;
  return {dp == 3 && da == 4 && obstruction && gamma > 0.01 && gamma < 0.99, detail.str()};
}

// --- 4 ---------------------------------------------------------------------
Outcome optimizer_vs_oracle(std::mt19937_64& rng) {
  double worst_gap = 0.0, cert_lo = 1e300, cert_hi = -1e300, oracle_lambda = 1e300;
  int probabilistic = 0, within = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = generic_triple(rng);
    const auto p = parallels(v), a = antiparallels(v);
    const auto result = max_uniform_gamma(p, a);
    const auto* pt = std::get_if<ProbabilisticTransform>(&result);
    if (!pt) continue;
    ++probabilistic;
    const auto g_in = to_dense(gram(p)), g_out = to_dense(gram(a));
    const double grid = oracle::grid_uniform_gamma(g_in, g_out, 1000, 100);
    const double gap = std::abs(pt->gamma - grid);
    worst_gap = std::max(worst_gap, gap);
    if (gap <= 2e-2) ++within;
    cert_lo = std::min(cert_lo, pt->certificate);
    cert_hi = std::max(cert_hi, pt->certificate);

    // Independent feasibility check of the optimizer's own point.
    oracle::DenseMatrix d = g_in;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        d[i][j] -= pt->gamma * std::polar(1.0, pt->phases[j] - pt->phases[i]) * g_out[i][j];
      }
    }
    oracle_lambda = std::min(oracle_lambda, oracle::smallest_eigenvalue(d));
  }
  std::ostringstream detail;
  detail << probabilistic << "/20 probabilistic, " << within << "/20 within 2e-2, max |gamma* - grid| = "
         << worst_gap << ", certificates in [" << cert_lo << ", " << cert_hi
         << "], oracle min eigenvalue at optimizer points = " << oracle_lambda;
  return {probabilistic == 20 && worst_gap <= 2e-2 && cert_lo >= -1e-8 && cert_hi <= 1e-3,
          detail.str()};
}

// --- 5 ---------------------------------------------------------------------
Outcome usd_closed_form(std::mt19937_64& rng) {
  const std::vector<double> priors{0.5, 0.5};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<BlochVector> v{random_unit(rng), random_unit(rng)};
    // |<n1 n1|n2 n2>| = |<n1|n2>|^2 = (1 + n1.n2)/2, and the same for |n,-n>.
    const double overlap = 0.5 * (1.0 + v[0].x * v[1].x + v[0].y * v[1].y + v[0].z * v[1].z);
    worst = std::max(worst, std::abs(usd_max_success(parallels(v), priors).value - (1.0 - overlap)));
    worst = std::max(worst, std::abs(usd_max_success(antiparallels(v), priors).value - (1.0 - overlap)));
  }
  const auto t = fixtures::tetrahedron();
  const std::vector<double> uniform(4, 0.25);
  const double pt = usd_max_success(parallels(t), uniform).value;
  const double at = usd_max_success(antiparallels(t), uniform).value;
  std::ostringstream detail;
  detail << "100 pairs, max |P - (1-|overlap|)| = " << worst << "; P_T = " << pt << ", A_T = " << at;
  return {worst < 1e-5 && pt == 0.0 && at > 0.0, detail.str()};
}

// --- 6 ---------------------------------------------------------------------
Outcome gauge_invariance(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::vector<BlochVector> v{random_unit(rng), random_unit(rng)};
    const auto gp = gram(parallels(v)), ga = gram(antiparallels(v));
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        worst = std::max(worst, std::abs(std::abs(gp(i, j)) - std::abs(ga(i, j))));
      }
    }
  }

  auto kind = [](const FeasibilityResult& r) { return r.index(); };
  int mismatches = 0, cases = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<BlochVector> v;
    if (trial % 3 == 0) {
      const BlochVector w = random_unit(rng);
      v = {random_on_circle(w, rng), random_on_circle(w, rng), random_on_circle(w, rng)};
    } else if (trial % 3 == 1) {
      v = generic_triple(rng);
    } else {
      v = fixtures::tetrahedron();
    }
    const auto p = parallels(v), a = antiparallels(v);
    const auto p2 = rephase(p, rng), a2 = rephase(a, rng);
    ++cases;
    bool same = is_exact(exact_transformability(p, a)) == is_exact(exact_transformability(p2, a2)) &&
                is_exact(exact_transformability(a, p)) == is_exact(exact_transformability(a2, p2)) &&
                span_dimension(p) == span_dimension(p2) && span_dimension(a) == span_dimension(a2);
    const auto f1 = max_uniform_gamma(p, a), f2 = max_uniform_gamma(p2, a2);
    same = same && kind(f1) == kind(f2);
    if (same && is_probabilistic(f1)) {
      same = std::abs(std::get<ProbabilisticTransform>(f1).gamma -
                      std::get<ProbabilisticTransform>(f2).gamma) <= 1e-5;
    }
    const std::vector<double> priors(v.size(), 1.0 / static_cast<double>(v.size()));
    same = same && std::abs(usd_max_success(a, priors).value - usd_max_success(a2, priors).value) <= 1e-6;
    if (!same) ++mismatches;
  }
  std::ostringstream detail;
  detail << "1000 pairs, max modulus gap = " << worst << "; verdicts changed under rephasing in "
         << mismatches << "/" << cases << " sets";
  return {worst < 1e-12 && mismatches == 0, detail.str()};
}

// --- 7 ---------------------------------------------------------------------
Outcome basis_action(std::mt19937_64& rng) {
  double worst_azimuth = 0.0, worst_norm = 0.0;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 50; ++trial) {
    const double t = angle(rng);
    const BlochVector w{std::cos(t), std::sin(t), 0.0};
    const auto report = verify_basis_action(flipper_for_circle(GreatCircle::from_normal(w)));
    // The meridian plane contains the z axis and the in-plane direction (-w_y, w_x, 0).
    const double plane_azimuth = std::atan2(w.x, -w.y);
    worst_azimuth = std::max(worst_azimuth, distance_mod_pi(report.predicted_azimuth, plane_azimuth));
    worst_norm = std::max(worst_norm, std::abs(std::norm(report.c1) + std::norm(report.c2) - 1.0));
  }
  std::ostringstream detail;
  detail << "50 meridians, max azimuth error = " << worst_azimuth
         << ", max ||c1|^2+|c2|^2 - 1| = " << worst_norm;
  return {worst_azimuth < 1e-9 && worst_norm < 1e-12, detail.str()};
}

// --- 8 ---------------------------------------------------------------------
Outcome round_trips(std::mt19937_64& rng) {
  double worst_bloch = 0.0, worst_square = 0.0;
  bool antipode_exact = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const BlochVector n = random_unit(rng);
    const BlochVector back = bloch_from_qubit(qubit_from_bloch(n));
    worst_bloch = std::max({worst_bloch, std::abs(back.x - n.x), std::abs(back.y - n.y),
                            std::abs(back.z - n.z)});
    const BlochVector twice = antipode(antipode(n));
    antipode_exact = antipode_exact && twice.x == n.x && twice.y == n.y && twice.z == n.z;
    if (trial < 200) {
      const auto m = flipper_for_circle(GreatCircle::from_normal(random_unit(rng)));
      worst_square = std::max(worst_square, max_abs_diff(m.u2() * m.u2(), ComplexMatrix::identity(2)));
      worst_square = std::max(worst_square, max_abs_diff(m.u4() * m.u4(), ComplexMatrix::identity(4)));
    }
  }
  std::ostringstream detail;
  detail << "bloch<->qubit max error = " << worst_bloch << ", max |U^2 - I| = " << worst_square
         << ", antipode involution exact: " << (antipode_exact ? "yes" : "no");
  return {worst_bloch < 1e-12 && worst_square < 1e-12 && antipode_exact, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Check>> checks{
      {"fidelity law", fidelity_law},
      {"great-circle maximality", circle_maximality},
      {"tetrahedron fixture", tetrahedron},
      {"optimizer vs grid oracle", optimizer_vs_oracle},
      {"USD closed form", usd_closed_form},
      {"gauge and modulus invariants", gauge_invariance},
      {"meridian basis action", basis_action},
      {"round trips and involutions", round_trips},
  };
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    std::mt19937_64 rng(20240 + i);
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = checks[i].second(rng);
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.pass) ++failures;
    std::printf("%s %zu %s: %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL", i + 1, checks[i].first,
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu properties failed\n", failures, checks.size());
  return failures == 0 ? 0 : 1;
}

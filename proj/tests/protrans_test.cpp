#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spinflip/error.hpp"
#include "spinflip/fixtures.hpp"
#include "spinflip/protrans.hpp"
#include "support/oracle.hpp"
#include "support/sampling.hpp"

namespace spinflip {
namespace {

std::vector<BlochVector> first_three(const std::vector<BlochVector>& v) {
  return {v.begin(), v.begin() + 3};
}

std::vector<BlochVector> random_off_circle_triple(std::mt19937_64& rng, double min_residual) {
  while (true) {
    std::vector<BlochVector> triple;
    for (int i = 0; i < 3; ++i) triple.push_back(testing::random_unit(rng));
    if (great_circle_fit(triple).residual > min_residual) return triple;
  }
}

TEST(PsdFeasible, TrivialCases) {
  const auto v = fixtures::tetrahedron();
  const GramMatrix g_p = gram(parallels(v));
  const GramMatrix g_a = gram(antiparallels(v));
  const std::vector<double> zeros(4, 0.0), ones(4, 1.0);
  EXPECT_TRUE(psd_feasible(g_p, g_a, zeros, zeros, 1e-9));
  EXPECT_TRUE(psd_feasible(g_a, g_a, ones, zeros, 1e-9));
  EXPECT_FALSE(psd_feasible(g_p, g_a, ones, zeros, 1e-9));
}

TEST(PsdFeasible, TwoStatesWithCocyclePhases) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<BlochVector> pair{testing::random_unit(rng), testing::random_unit(rng)};
    const auto in = parallels(pair);
    const auto out = antiparallels(pair);
    const auto verdict = exact_transformability(in, out);
    ASSERT_TRUE(is_exact(verdict));
    const auto& phases = std::get<ExactTransform>(verdict).phases;
    EXPECT_TRUE(psd_feasible(gram(in), gram(out), std::vector<double>{1.0, 1.0}, phases, 1e-9));
  }
}

TEST(PsdFeasible, Errors) {
  const GramMatrix g = ComplexMatrix::identity(2);
  const std::vector<double> zeros(2, 0.0);
  try {
    psd_feasible(g, ComplexMatrix::identity(3), zeros, zeros, 1e-9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeMismatch);
  }
  try {
    psd_feasible(g, g, std::vector<double>{0.5, 1.5}, zeros, 1e-9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GammaOutOfRange);
  }
}

TEST(PsdFeasible, MonotoneInGamma) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto triple = random_off_circle_triple(rng, 0.01);
    const GramMatrix g_in = gram(parallels(triple));
    const GramMatrix g_out = gram(antiparallels(triple));
    const std::vector<double> phases{0.0, testing::random_phase(rng), testing::random_phase(rng)};
    const double gamma = unit(rng);
    if (!psd_feasible(g_in, g_out, std::vector<double>(3, gamma), phases, 1e-9)) continue;
    const double lower = gamma * unit(rng);
    EXPECT_TRUE(psd_feasible(g_in, g_out, std::vector<double>(3, lower), phases, 1e-9));
  }
}

TEST(RankObstruction, Tetrahedron) {
  const auto v = fixtures::tetrahedron();
  const auto forward = rank_obstruction(parallels(v), antiparallels(v));
  ASSERT_TRUE(forward.has_value());
  EXPECT_EQ(forward->rank_in, 3u);
  EXPECT_EQ(forward->rank_out, 4u);
  EXPECT_FALSE(rank_obstruction(antiparallels(v), parallels(v)).has_value());
  EXPECT_FALSE(rank_obstruction(parallels(v), parallels(v)).has_value());
  EXPECT_THROW(rank_obstruction(parallels(v), antiparallels(first_three(v))), Error);
}

TEST(MaxUniformGamma, EquatorIsExact) {
  const auto v = fixtures::equator();
  EXPECT_TRUE(is_exact(max_uniform_gamma(parallels(v), antiparallels(v))));
}

TEST(MaxUniformGamma, TetrahedronForwardIsRankObstructed) {
  const auto v = fixtures::tetrahedron();
  const auto result = max_uniform_gamma(parallels(v), antiparallels(v));
  ASSERT_TRUE(is_impossible(result));
  const auto& reason = std::get<Impossible>(result).reason;
  ASSERT_TRUE(std::holds_alternative<RankObstruction>(reason));
  EXPECT_EQ(std::get<RankObstruction>(reason).rank_in, 3u);
  EXPECT_EQ(std::get<RankObstruction>(reason).rank_out, 4u);
}

TEST(MaxUniformGamma, TetrahedronReverseIsProbabilistic) {
  const auto v = fixtures::tetrahedron();
  const auto result = max_uniform_gamma(antiparallels(v), parallels(v));
  ASSERT_TRUE(is_probabilistic(result));
  const auto& p = std::get<ProbabilisticTransform>(result);
  // Grid oracle (gamma step 1e-3, 24 phase points per circle) gives 0.500.
  EXPECT_NEAR(p.gamma, 0.5, 2e-2);
  EXPECT_GE(p.certificate, -1e-8);
  EXPECT_LE(p.certificate, 1e-3);
  EXPECT_EQ(p.phases.size(), 4u);
  EXPECT_EQ(p.phases.front(), 0.0);
}

TEST(MaxUniformGamma, ThreeTetrahedronVerticesMatchGridOracle) {
  const auto v = first_three(fixtures::tetrahedron());
  const GramMatrix g_in = gram(parallels(v));
  const GramMatrix g_out = gram(antiparallels(v));
  const double reference = oracle::grid_uniform_gamma(testing::to_dense(g_in), testing::to_dense(g_out));
  // Frozen oracle value.
  EXPECT_NEAR(reference, 0.499, 1e-12);
  const auto result = max_uniform_gamma(parallels(v), antiparallels(v));
  ASSERT_TRUE(is_probabilistic(result));
  const double gamma = std::get<ProbabilisticTransform>(result).gamma;
  EXPECT_GT(gamma, 0.0);
  EXPECT_LT(gamma, 1.0);
  EXPECT_NEAR(gamma, reference, 2e-2);
}

TEST(MaxUniformGamma, CertificateAndTightness) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto triple = random_off_circle_triple(rng, 0.05);
    const auto in = parallels(triple);
    const auto out = antiparallels(triple);
    const auto result = max_uniform_gamma(in, out);
    ASSERT_TRUE(is_probabilistic(result)) << "trial " << trial;
    const auto& p = std::get<ProbabilisticTransform>(result);
    EXPECT_GE(p.certificate, -1e-8);
    EXPECT_LE(p.certificate, 1e-3);
    const GramMatrix g_in = gram(in), g_out = gram(out);
    EXPECT_NEAR(smallest_eigenvalue(success_defect(g_in, g_out, std::vector<double>(3, p.gamma),
                                                   p.phases)),
                p.certificate, 1e-12);
    // No phase point on a 100-per-circle grid is feasible 1e-3 above the optimum.
    const double above = p.gamma + 1e-3;
    if (above >= 1.0) continue;
    for (int a = 0; a < 100; ++a) {
      for (int b = 0; b < 100; ++b) {
        const std::vector<double> phases{0.0, 2.0 * std::numbers::pi * a / 100.0,
                                         2.0 * std::numbers::pi * b / 100.0};
        ASSERT_FALSE(psd_feasible(g_in, g_out, std::vector<double>(3, above), phases, 1e-9));
      }
    }
  }
}

TEST(MaxUniformGamma, LadderAgreesWithExactTest) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<BlochVector> triple;
    const BlochVector w = testing::random_unit(rng);
    for (int i = 0; i < 3; ++i) {
      triple.push_back(trial % 3 == 0 ? testing::random_unit(rng) : testing::random_on_circle(w, rng));
    }
    const auto in = parallels(triple);
    const auto out = antiparallels(triple);
    EXPECT_EQ(is_exact(max_uniform_gamma(in, out)), is_exact(exact_transformability(in, out)));
  }
}

TEST(MaxUniformGamma, GaugeInvariant) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const auto triple = random_off_circle_triple(rng, 0.01);
    auto in = parallels(triple);
    auto out = antiparallels(triple);
    const double base = std::get<ProbabilisticTransform>(max_uniform_gamma(in, out)).gamma;
    for (auto& s : in) s = s.with_phase(testing::random_phase(rng));
    for (auto& s : out) s = s.with_phase(testing::random_phase(rng));
    const auto rephased = max_uniform_gamma(in, out);
    ASSERT_TRUE(is_probabilistic(rephased));
    EXPECT_NEAR(std::get<ProbabilisticTransform>(rephased).gamma, base, 1e-6);
  }
}

TEST(MaxUniformGamma, Errors) {
  const auto v = fixtures::tetrahedron();
  EXPECT_THROW(max_uniform_gamma(parallels(v), antiparallels(first_three(v))), Error);
  EXPECT_THROW(max_uniform_gamma(std::vector<TwoQubitState>{}, std::vector<TwoQubitState>{}), Error);
}

TEST(UsdMaxSuccess, TwoStateClosedForm) {
  std::mt19937_64 rng(46);
  const std::vector<double> priors{0.5, 0.5};
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<TwoQubitState> pair{antiparallel(testing::random_unit(rng)),
                                          antiparallel(testing::random_unit(rng))};
    const double c = std::abs(inner(pair[0].amplitudes, pair[1].amplitudes));
    const auto result = usd_max_success(pair, priors);
    EXPECT_NEAR(result.value, 1.0 - c, 1e-5);
    EXPECT_LE(result.value, 1.0);
  }
}

TEST(UsdMaxSuccess, Tetrahedron) {
  const auto v = fixtures::tetrahedron();
  const std::vector<double> uniform(4, 0.25);
  const auto p = usd_max_success(parallels(v), uniform);
  EXPECT_EQ(p.value, 0.0);
  for (double g : p.gammas) EXPECT_EQ(g, 0.0);
  const auto a = usd_max_success(antiparallels(v), uniform);
  EXPECT_GT(a.value, 0.0);
  // Symmetric set: the optimum is the smallest Gram eigenvalue, 2/3.
  EXPECT_NEAR(a.value, 2.0 / 3.0, 1e-6);
}

TEST(UsdMaxSuccess, OrthonormalSetReachesOne) {
  const std::vector<TwoQubitState> basis{parallel({0, 0, 1}), antiparallel({0, 0, 1}),
                                         antiparallel({0, 0, -1}), parallel({0, 0, -1})};
  const auto result = usd_max_success(basis, std::vector<double>(4, 0.25));
  EXPECT_EQ(result.value, 1.0);
}

TEST(UsdMaxSuccess, MatchesGridOracleForThreeStates) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<BlochVector> triple;
    for (int i = 0; i < 3; ++i) triple.push_back(testing::random_unit(rng));
    const auto states = trial % 2 ? parallels(triple) : antiparallels(triple);
    std::vector<double> priors{unit(rng), unit(rng), unit(rng)};
    const double total = priors[0] + priors[1] + priors[2];
    for (double& p : priors) p /= total;
    const auto result = usd_max_success(states, priors);
    const double reference = oracle::grid_usd(testing::to_dense(gram(states)), priors, 100);
    // The grid can only undershoot, by at most one step in each coordinate.
    EXPECT_GE(result.value, reference - 1e-9);
    EXPECT_LE(result.value, reference + 0.01 + 1e-9);
    EXPECT_GE(smallest_eigenvalue(gram(states) - ComplexMatrix::diagonal(std::vector<Complex>(
                                                     result.gammas.begin(), result.gammas.end()))),
              -1e-9);
  }
}

TEST(UsdMaxSuccess, PriorErrors) {
  const auto states = antiparallels(fixtures::equator());
  for (const std::vector<double>& bad :
       {std::vector<double>{0.5, 0.5}, std::vector<double>{0.5, 0.5, 0.5},
        std::vector<double>{1.5, -0.25, -0.25}}) {
    try {
      usd_max_success(states, bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::PriorMismatch);
    }
  }
  EXPECT_THROW(usd_max_success(std::vector<TwoQubitState>{}, std::vector<double>{}), Error);
}

TEST(CompareSets, Equator) {
  const auto report = compare_sets(fixtures::equator());
  EXPECT_TRUE(report.circle.found());
  EXPECT_EQ(report.dim_parallel, 3u);
  EXPECT_EQ(report.dim_antiparallel, 3u);
  EXPECT_TRUE(is_exact(report.exact_pa));
  EXPECT_TRUE(is_exact(report.exact_ap));
  EXPECT_TRUE(is_exact(report.protrans_pa));
  EXPECT_TRUE(is_exact(report.protrans_ap));
  EXPECT_GT(report.usd_parallel.value, 0.0);
  EXPECT_GT(report.usd_antiparallel.value, 0.0);
}

TEST(CompareSets, Tetrahedron) {
  const auto report = compare_sets(fixtures::tetrahedron());
  EXPECT_FALSE(report.circle.found());
  EXPECT_EQ(report.dim_parallel, 3u);
  EXPECT_EQ(report.dim_antiparallel, 4u);
  EXPECT_FALSE(is_exact(report.exact_pa));
  EXPECT_TRUE(is_impossible(report.protrans_pa));
  EXPECT_TRUE(is_probabilistic(report.protrans_ap));
  EXPECT_EQ(report.usd_parallel.value, 0.0);
  EXPECT_GT(report.usd_antiparallel.value, 0.0);
}

TEST(CompareSets, SingleVectorAndErrors) {
  const std::vector<BlochVector> one{{0.0, 0.6, 0.8}};
  const auto report = compare_sets(one);
  EXPECT_TRUE(report.circle.found());
  EXPECT_EQ(report.dim_parallel, 1u);
  EXPECT_EQ(report.dim_antiparallel, 1u);
  EXPECT_TRUE(is_exact(report.exact_pa));
  EXPECT_TRUE(is_exact(report.exact_ap));

  try {
    compare_sets(std::vector<BlochVector>{{0, 0, 1}, {0, 0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateVectors);
  }
  EXPECT_THROW(compare_sets(std::vector<BlochVector>{}), Error);
}

}  // namespace
}  // namespace spinflip

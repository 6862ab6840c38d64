#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "torusns/induction.hpp"
#include "torusns/operators.hpp"

namespace torusns {
namespace {

using testing::Rng;

SpectralField single_mode(const LatticePtr& lat, double delta) {
  SpectralField v(lat);
  v.set({1, 0, 0}, Vec3c{{0.0, delta, 0.0}});
  return v;
}

SpectralField two_mode(const LatticePtr& lat, double delta) {
  SpectralField v = single_mode(lat, delta);
  v.set({0, 1, 0}, Vec3c{{0.0, 0.0, delta}});
  return v;
}

DecompositionState state_with_zero_history(SpectralField v0, int m) {
  DecompositionState s = DecompositionState::initial(v0);
  s.m = m;
  s.h1_history.assign(m, SpectralField(v0.lattice_ptr()));
  s.g_history.assign(m, SpectralField(v0.lattice_ptr()));
  return s;
}

SpectralField scale_by_norm_power(SpectralField f, double p) {
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= std::pow(f.lattice().norms()[i], p);
  return f;
}

TEST(DecompositionState, InitialReconstructsTheData) {
  Rng rng(30);
  const auto lat = Lattice::make({3, TruncationRule::euclidean_ball});
  const SpectralField v0 = testing::random_decaying_field(lat, rng, 1e-3, 2.25);
  const auto s = DecompositionState::initial(v0);
  EXPECT_EQ(s.m, 0);
  EXPECT_EQ(reconstruct_v(s, SolverParams{}), v0);
  EXPECT_EQ(assemble_H0(s, TimeGrid(8))[0], v0);

  DecompositionState bad = s;
  bad.m = 1;
  EXPECT_THROW(bad.validate(), std::logic_error);
}

TEST(AssembleH0, HeatDecayOfTheData) {
  const auto lat = Lattice::make({2, TruncationRule::euclidean_ball});
  const auto s = state_with_zero_history(single_mode(lat, 1.0), 2);
  const TimeSlicedField H0 = assemble_H0(s, TimeGrid(8));
  EXPECT_NEAR(H0[4].at({1, 0, 0})[1].real(), std::exp(-2.5), 1e-15);
  EXPECT_TRUE(assemble_H0(DecompositionState::initial(SpectralField(lat)), TimeGrid(8)).is_zero());
}

TEST(AssembleH1, HistoryWeights) {
  Rng rng(31);
  const SolverParams params;
  const auto lat = Lattice::make({3, TruncationRule::euclidean_ball});
  const TimeGrid grid(8);

  const auto empty = DecompositionState::initial(SpectralField(lat));
  EXPECT_TRUE(assemble_H1(empty, TimeSlicedField(grid, lat), params).is_zero());

  auto one = state_with_zero_history(SpectralField(lat), 1);
  one.h1_history[0] = testing::random_field(lat, rng);
  const TimeSlicedField H1 = assemble_H1(one, TimeSlicedField(grid, lat), params);
  EXPECT_LE(testing::relative_difference(H1[0], scale_by_norm_power(one.h1_history[0], -2 * params.epsilon)),
            1e-15);

  auto two = state_with_zero_history(SpectralField(lat), 2);
  two.h1_history[0] = testing::random_field(lat, rng);
  two.h1_history[1] = testing::random_field(lat, rng);
  std::vector<SpectralField> next_slices;
  for (std::size_t n = 0; n < grid.size(); ++n) next_slices.push_back(testing::random_field(lat, rng));
  const TimeSlicedField next(grid, next_slices);
  const TimeSlicedField H1b = assemble_H1(two, next, params);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const double t = grid.time(n);
    SpectralField expected(lat);
    for (std::size_t i = 0; i < lat->size(); ++i) {
      const double k2 = double(lat->site(i).norm_sq());
      Vec3c sum = next_slices[n][i];
      for (int j = 1; j <= 2; ++j) sum += two.h1_history[j - 1][i] * std::exp(-(2 - j + t) * k2);
      expected[i] = sum * std::pow(lat->norms()[i], -2 * params.epsilon);
    }
    EXPECT_LE(testing::relative_difference(H1b[n], expected), 1e-14);
  }
}

TEST(AssembleG, HistoryWeights) {
  Rng rng(32);
  const auto lat = Lattice::make({2, TruncationRule::euclidean_ball});
  const TimeGrid grid(4);
  auto s = state_with_zero_history(SpectralField(lat), 3);
  for (auto& g : s.g_history) g = testing::random_field(lat, rng);
  const TimeSlicedField G = assemble_G(s, grid);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    SpectralField expected(lat);
    for (std::size_t i = 0; i < lat->size(); ++i)
      for (int j = 1; j <= 3; ++j)
        expected[i] += s.g_history[j - 1][i] * std::exp(-(3 - j + grid.time(n)) * double(lat->site(i).norm_sq()));
    EXPECT_LE(testing::relative_difference(G[n], expected), 1e-14);
  }
}

TEST(ComputeH1Next, MatchesDirectEvaluation) {
  const SolverParams params;
  const auto lat = Lattice::make({3, TruncationRule::euclidean_ball});
  const TimeGrid grid(8);
  EXPECT_TRUE(compute_h1_next(TimeSlicedField(grid, lat), params).is_zero());

  const auto single = DecompositionState::initial(single_mode(lat, 1e-3));
  EXPECT_TRUE(compute_h1_next(assemble_H0(single, grid), params).is_zero());

  const auto s = state_with_zero_history(two_mode(lat, 1e-3), 1);
  const TimeSlicedField H0 = assemble_H0(s, grid);
  const TimeSlicedField h = compute_h1_next(H0, params);
  std::vector<SpectralField> source;
  for (std::size_t n = 0; n < grid.size(); ++n) source.push_back(testing::brute_bilinear(H0[n], H0[n]));
  EXPECT_FALSE(h.back().is_zero());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const SpectralField expected = scale_by_norm_power(testing::brute_duhamel(source, grid, n), 2 * params.epsilon);
    EXPECT_LE(testing::relative_difference(h[n], expected), 1e-13);
  }
}

TEST(AssembleI1, TermStructure) {
  Rng rng(33);
  const auto lat = Lattice::make({2, TruncationRule::euclidean_ball});
  const TimeGrid grid(4);
  auto sliced = [&](double scale) {
    std::vector<SpectralField> v;
    for (std::size_t n = 0; n < grid.size(); ++n) v.push_back(testing::random_field(lat, rng, scale));
    return TimeSlicedField(grid, v);
  };
  const TimeSlicedField H0 = sliced(1.0);
  const TimeSlicedField zero(grid, lat);
  EXPECT_TRUE(assemble_I1(H0, zero, zero).is_zero());

  const TimeSlicedField H1 = sliced(0.5);
  const TimeSlicedField expected = star_product(H0, H1) + star_product(H1, H0) + star_product(H1, H1);
  const TimeSlicedField got = assemble_I1(H0, H1, zero);
  for (std::size_t n = 0; n < grid.size(); ++n) EXPECT_LE(testing::relative_difference(got[n], expected[n]), 1e-14);

  const TimeSlicedField G = sliced(0.2);
  const auto terms = assemble_I1_terms(H0, H1, G);
  EXPECT_EQ(terms[0], star_product(H0, H1));
  EXPECT_EQ(terms[1], star_product(H0, G));
  EXPECT_EQ(terms[7], star_product(G, G));

  SpectralField mode(lat);
  mode.set({0, 0, 1}, Vec3c{{1.0, 2.0, 0.0}});
  const TimeSlicedField same(grid, std::vector<SpectralField>(grid.size(), mode));
  EXPECT_TRUE(assemble_I1(same, same, same).is_zero());
}

TEST(FixedPoint, ZeroIsAFixedPoint) {
  const auto lat = Lattice::make({2, TruncationRule::euclidean_ball});
  const TimeSlicedField zero(TimeGrid(8), lat);
  const auto res = fixed_point_solve_g(zero, zero, zero, zero, SolverParams{}, 1);
  EXPECT_TRUE(res.g.is_zero());
  EXPECT_EQ(res.iterations, 1);
}

struct StepInputs {
  TimeSlicedField H0, H1, G, I1;
};

StepInputs generic_inputs(const SolverParams& params, int steps_before) {
  const auto lat = Lattice::make({3, TruncationRule::euclidean_ball});
  Rng rng(34);
  DecompositionState s = DecompositionState::initial(testing::random_decaying_field(lat, rng, params.delta, params.alpha()));
  for (int i = 0; i < steps_before; ++i) s = advance_unit_interval(s, params).state;
  const TimeGrid grid(params.substeps);
  TimeSlicedField H0 = assemble_H0(s, grid);
  TimeSlicedField H1 = assemble_H1(s, compute_h1_next(H0, params), params);
  TimeSlicedField G = assemble_G(s, grid);
  TimeSlicedField I1 = assemble_I1(H0, H1, G);
  return {H0, H1, G, I1};
}

TEST(FixedPoint, ResidualBelowTolerance) {
  const SolverParams params;
  const auto in = generic_inputs(params, 1);
  const int space = 2;
  const auto res = fixed_point_solve_g(in.I1, in.H0, in.H1, in.G, params, space);
  const TimeSlicedField residual = res.g - (in.I1 + apply_I2(in.H0, in.H1, in.G, res.g) + apply_I3(res.g));
  EXPECT_LE(fmc_norm(residual, space, params.decay_c, params.beta), 10 * params.fp_tol);
  EXPECT_FALSE(res.g.is_zero());
  for (double r : res.ratios) EXPECT_LT(r, 0.5);
}

TEST(FixedPoint, MatchesNeumannSeriesWhenQuadraticTermIsNegligible) {
  SolverParams params;
  params.fp_tol = 1e-22;
  const auto in = generic_inputs(params, 1);
  const int space = 2;
  // Shrink I1 so that g * g is far below the tolerance.
  const TimeSlicedField I1 = in.I1 * 1e-6;
  const auto res = fixed_point_solve_g(I1, in.H0, in.H1, in.G, params, space);

  TimeSlicedField term = I1;
  TimeSlicedField sum = I1;
  for (int n = 0; n < 60 && fmc_norm(term, space, params.decay_c, params.beta) > 1e-30; ++n) {
    term = apply_I2(in.H0, in.H1, in.G, term);
    sum += term;
  }
  EXPECT_LE(fmc_norm(res.g - sum, space, params.decay_c, params.beta), 10 * params.fp_tol);
}

TEST(FixedPoint, DivergenceIsReported) {
  SolverParams params;
  params.fp_max_iter = 3;
  params.delta = 1.0;
  const auto lat = Lattice::make({3, TruncationRule::euclidean_ball});
  Rng rng(35);
  const auto s = DecompositionState::initial(testing::random_decaying_field(lat, rng, 5.0, params.alpha()));
  try {
    advance_unit_interval(s, params);
    FAIL() << "expected divergence";
  } catch (const FixedPointDivergence& e) {
    EXPECT_EQ(e.m(), 0);
    EXPECT_LE(e.iterations(), 3);
  }
}

TEST(AdvanceUnitInterval, ZeroDataStaysZero) {
  const SolverParams params;
  const auto lat = Lattice::make({2, TruncationRule::euclidean_ball});
  auto s = DecompositionState::initial(SpectralField(lat));
  for (int m = 0; m < 3; ++m) {
    auto res = advance_unit_interval(s, params);
    EXPECT_TRUE(res.interval.v.is_zero());
    EXPECT_EQ(res.record.D_g, 0.0);
    s = std::move(res.state);
  }
  EXPECT_EQ(s.m, 3);
  EXPECT_TRUE(reconstruct_v(s, params).is_zero());
}

TEST(AdvanceUnitInterval, SingleModeIsPureHeatFlow) {
  const SolverParams params;
  const auto lat = Lattice::make({2, TruncationRule::euclidean_ball});
  const SpectralField v0 = single_mode(lat, params.delta);
  auto s = DecompositionState::initial(v0);
  for (int m = 1; m <= 6; ++m) {
    auto res = advance_unit_interval(s, params);
    for (std::size_t n = 0; n < res.interval.v.size(); ++n) {
      const double t = m - 1 + res.interval.v.grid().time(n);
      EXPECT_LE(testing::relative_difference(res.interval.v[n], heat_multiply(v0, t)), 1e-14);
    }
    s = std::move(res.state);
    EXPECT_TRUE(s.h1_history.back().is_zero());
    EXPECT_TRUE(s.g_history.back().is_zero());
  }
}

TEST(AdvanceUnitInterval, RestartIsConsistent) {
  const SolverParams params;
  const auto lat = Lattice::make({3, TruncationRule::euclidean_ball});
  Rng rng(36);
  auto s = DecompositionState::initial(testing::random_decaying_field(lat, rng, params.delta, params.alpha()));
  for (int m = 0; m < 4; ++m) {
    auto res = advance_unit_interval(s, params);
    EXPECT_EQ(res.state.m, m + 1);
    EXPECT_EQ(res.record.m, m + 1);
    const SpectralField end = reconstruct_v(res.interval, res.interval.v.size() - 1);
    EXPECT_EQ(end, res.interval.v.back());
    const SpectralField restart = reconstruct_v(res.state, params);
    EXPECT_LE(testing::relative_difference(restart, end), 1e-13);
    const auto next = advance_unit_interval(res.state, params);
    EXPECT_LE(testing::relative_difference(next.interval.v[0], end), 1e-13);
    for (std::size_t n = 0; n < res.interval.v.size(); ++n) {
      EXPECT_TRUE(is_divergence_free(res.interval.v[n], params.eps_div));
    }
    s = std::move(res.state);
  }
}

TEST(AdvanceUnitInterval, MirrorSymmetryIsPreserved) {
  const SolverParams params;
  const auto lat = Lattice::make({3, TruncationRule::euclidean_ball});
  Rng rng(37);
  SpectralField v0 = testing::random_decaying_field(lat, rng, params.delta, params.alpha());
  for (std::size_t i = 0; i < lat->size(); ++i) {
    if (lat->site(i) < -lat->site(i)) v0[i] = v0[lat->negated(i)].conj();
  }
  ASSERT_EQ(reality_defect(v0), 0.0);
  auto s = DecompositionState::initial(v0);
  for (int m = 0; m < 3; ++m) {
    auto res = advance_unit_interval(s, params);
    for (std::size_t n = 0; n < res.interval.v.size(); ++n) {
      EXPECT_LE(reality_defect(res.interval.v[n]), 1e-15 * sup_magnitude(res.interval.v[n]));
    }
    s = std::move(res.state);
  }
}

TEST(AdvanceUnitInterval, ThreadCountDoesNotChangeBits) {
  SolverParams params;
  const auto lat = Lattice::make({3, TruncationRule::euclidean_ball});
  Rng rng(38);
  const auto s = DecompositionState::initial(testing::random_decaying_field(lat, rng, params.delta, params.alpha()));
  const auto serial = advance_unit_interval(s, params);
  params.threads = 4;
  const auto threaded = advance_unit_interval(s, params);
  EXPECT_EQ(serial.interval.v, threaded.interval.v);
  EXPECT_EQ(serial.interval.iterations, threaded.interval.iterations);
}

}  // namespace
}  // namespace torusns

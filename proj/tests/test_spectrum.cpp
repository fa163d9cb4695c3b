#include <gtest/gtest.h>

#include "cscale/spectrum.hpp"

using namespace cscale;

namespace {

// Bound states of -1.2 exp(-x^2) from a real symmetric solve.
std::vector<double> well_bound_states(const Grid& g) {
  Eigen::MatrixXd m = laplacian_matrix(g).dense();
  for (int j = 0; j < g.N(); ++j) m(j, j) += -1.2 * std::exp(-g.x(j) * g.x(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (int k = 0; k < g.N(); ++k)
    if (es.eigenvalues()(k) < -0.01) out.push_back(es.eigenvalues()(k));
  return out;
}

const Potential well = Potential::gaussian(1.0, -1.2);
const Grid well_grid(16.0, 400);

}  // namespace

TEST(RotateSpectrum, Examples) {
  const auto r = rotate_spectrum({EigenPair{-1.0, 1e-15, 2}, EigenPair{cplx(0.0, 1.0), 0.0, 1}}, pi / 4.0);
  EXPECT_LT(std::abs(r[0].lambda - cplx(0.0, -1.0)), 1e-15);
  EXPECT_LT(std::abs(r[1].lambda - cplx(-1.0, 0.0)), 1e-15);
  EXPECT_EQ(r[0].multiplicity, 2);
  EXPECT_EQ(r[0].residual, 1e-15);
}

TEST(RotateSpectrum, TildeRotatesOntoFull) {
  const Grid g(10.0, 200);
  const auto v = Potential::gaussian(cplx(1.0, 0.3), cplx(-2.0, 0.4));
  for (double phi : {0.1, 0.3, -0.2}) {
    const auto full = eigenvalues(assemble(g, v, ComplexAngle{phi}, Form::Full));
    const auto tilde = eigenvalues(assemble(g, v, ComplexAngle{phi}, Form::Tilde));
    const auto rotated = rotate_spectrum(tilde, -phi);
    double scale = 0.0;
    for (const auto& p : full) scale = std::max(scale, std::abs(p.lambda));
    EXPECT_LT(multiset_distance(lambdas(full), lambdas(rotated)), 1e-10 * scale) << phi;
  }
}

TEST(Match, GreedyPairsNearestFirst) {
  const std::vector<cplx> a{0.0, 1.0, 5.0};
  const std::vector<cplx> b{1.05, 4.9, 0.01};
  const auto m = greedy_match(a, b);
  EXPECT_EQ(m, (std::vector<int>{2, 0, 1}));
  EXPECT_NEAR(multiset_distance(a, b), 0.1, 1e-12);
  EXPECT_TRUE(std::isinf(multiset_distance(a, {1.0})));
}

TEST(Classify, FreeOperatorIsAllContinuum) {
  const Grid g(10.0, 200);
  const auto c = classify(Potential::free(), g, 0.3, 0.15);
  EXPECT_TRUE(c.isolated.empty());
  EXPECT_TRUE(c.resonance.empty());
  EXPECT_TRUE(c.spurious.empty());
  EXPECT_EQ(static_cast<int>(c.continuum.size()), g.N());
}

TEST(Classify, GaussianWellBoundStatesAreIsolated) {
  const auto want = well_bound_states(well_grid);
  ASSERT_GE(want.size(), 1u);
  const auto c = classify(well, well_grid, 0.2, 0.1);
  ASSERT_EQ(c.isolated.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(c.isolated[i].lambda.real(), want[i], 1e-9);
    EXPECT_LT(std::abs(c.isolated[i].lambda.imag()), 1e-9);
  }
  EXPECT_TRUE(c.resonance.empty());
  EXPECT_LT(c.max_drift, 1e-4);
  EXPECT_LE(c.max_residual, 1e-8);
}

TEST(Classify, ContinuumFitsTheRotatedRay) {
  const auto s = spectra_at(well, well_grid, {0.2}, ClassifyOptions{});
  EXPECT_GE(ray_fit_fraction(s[0], 0.2), 0.9);
}

TEST(Classify, BoundStateSurvivesLargeAngle) {
  // At phi = 0.5 the FD error of the dilated problem moves the bound state of
  // -2 / (1 + x^2)^2 by about 1e-4; it must still count as isolated.
  const Grid g(15.0, 600);
  Eigen::MatrixXd m = laplacian_matrix(g).dense();
  for (int j = 0; j < g.N(); ++j) m(j, j) += -2.0 / std::pow(1.0 + g.x(j) * g.x(j), 2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const auto c = classify(Potential::rational(-2.0, 2.0), g, 0.5, 0.25);
  ASSERT_EQ(c.isolated.size(), 1u);
  EXPECT_NEAR(c.isolated[0].lambda.real(), es.eigenvalues()(0), 1e-9);
  EXPECT_TRUE(c.spurious.empty());
}

TEST(Classify, TwoSidedAgreesOnRealWell) {
  const auto one = classify(well, well_grid, 0.2, 0.1);
  const auto two = classify_two_sided(well, well_grid, 0.2, 0.1);
  ASSERT_EQ(one.isolated.size(), two.isolated.size());
  for (std::size_t i = 0; i < one.isolated.size(); ++i)
    EXPECT_LT(std::abs(one.isolated[i].lambda - two.isolated[i].lambda), 1e-12);
}

TEST(Classify, AngleOrder) {
  for (auto [phi, probe] : {std::pair{0.2, 0.3}, std::pair{0.2, 0.2}, std::pair{0.2, 0.0}, std::pair{0.2, -0.1}}) {
    try {
      classify(well, Grid(5.0, 20), phi, probe);
      FAIL() << phi << " " << probe;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::AngleOrder);
    }
  }
}

TEST(Classify, AngleOutsideStrip) {
  try {
    classify(Potential::gaussian(1.0), Grid(5.0, 20), 0.9, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AngleOutOfStrip);
  }
}

TEST(Classify, DoubleBarrierHasStationaryResonance) {
  const auto v = Potential::gaussian_pair(1.0, 2.5, 3.0);
  const Grid g(20.0, 1000);
  const auto c = classify(v, g, 0.6, 0.55);
  ASSERT_GE(c.resonance.size(), 1u);
  const auto sector = Region::resonance_sector(0.6);
  const auto again = classify(v, g, 0.6, 0.5);
  for (const auto& r : c.resonance) {
    EXPECT_TRUE(sector.contains(r.lambda));
    EXPECT_GT(distance_to_ray(r.lambda, -1.2), ClassifyOptions{}.tol_ray(r.lambda));
    // Stationary under a different probe angle.
    double best = 1e9;
    for (const auto& q : again.resonance) best = std::min(best, std::abs(q.lambda - r.lambda));
    EXPECT_LE(best, 1e-3);
  }
}

TEST(Classify, UndilatedSplitsOnPositiveAxis) {
  const auto v = Potential::tabulate([](double x) { return -2.0 / (std::cosh(x) * std::cosh(x)); }, -15.0, 15.0, 30001);
  const auto c = classify_undilated(v, Grid(15.0, 600));
  ASSERT_EQ(c.isolated.size(), 1u);
  EXPECT_NEAR(c.isolated[0].lambda.real(), -1.0, 1e-3);
}

TEST(Trajectory, FreePathsFollowTheRotation) {
  const Grid g(8.0, 60);
  const std::vector<double> grid{0.0, 0.05, 0.1, 0.15, 0.2};
  const auto paths = trajectory(Potential::free(), g, grid);
  ASSERT_EQ(static_cast<int>(paths.size()), g.N());
  for (const auto& p : paths) {
    ASSERT_EQ(p.phi.size(), grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
      EXPECT_LT(std::abs(p.lambda[k] - p.lambda[0] * std::polar(1.0, -2.0 * grid[k])), 1e-11 * (1.0 + std::abs(p.lambda[0])));
  }
}

TEST(Trajectory, IsolatedPathsAreStationary) {
  const std::vector<double> grid{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
  const auto want = well_bound_states(well_grid);
  const auto paths = trajectory(well, well_grid, grid);
  int found = 0;
  for (const auto& p : paths) {
    if (p.lambda.front().real() >= -0.01) continue;
    ++found;
    ASSERT_EQ(p.phi.size(), grid.size());
    EXPECT_FALSE(p.ambiguous);
    EXPECT_LE(p.total_displacement(), 1e-4 * grid.size());
    EXPECT_LE(p.max_deviation(), 1e-3);
    EXPECT_TRUE(p.constant_multiplicity());
  }
  EXPECT_EQ(found, static_cast<int>(want.size()));
}

TEST(Trajectory, SingleAngleGivesPoints) {
  const auto paths = trajectory(well, Grid(6.0, 40), {0.1});
  ASSERT_EQ(paths.size(), 40u);
  for (const auto& p : paths) {
    EXPECT_EQ(p.phi.size(), 1u);
    EXPECT_EQ(p.total_displacement(), 0.0);
  }
}

TEST(Trajectory, RejectsUnorderedGrid) {
  try {
    trajectory(well, Grid(6.0, 40), {0.1, 0.1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AngleOrder);
  }
}

TEST(Trajectory, ThreadCountDoesNotChangeOutput) {
  ClassifyOptions serial, parallel;
  parallel.threads = 3;
  const std::vector<double> grid{0.0, 0.1, 0.2, 0.3};
  const auto a = trajectory(well, Grid(10.0, 150), grid, serial);
  const auto b = trajectory(well, Grid(10.0, 150), grid, parallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].lambda, b[i].lambda);
}

TEST(Classify, DriftingBoundStateIsUnresolved) {
  const auto coarse = classify_two_sided(well, Grid(10.0, 120), 0.3, 0.15);
  EXPECT_TRUE(coarse.isolated.empty());
  ASSERT_EQ(coarse.unresolved.size(), 1u);
  EXPECT_NEAR(coarse.unresolved[0].real(), -0.464, 1e-3);
  const auto fine = classify_two_sided(well, Grid(10.0, 400), 0.3, 0.15);
  EXPECT_EQ(fine.isolated.size(), 1u);
  EXPECT_TRUE(fine.unresolved.empty());
}

#include <gtest/gtest.h>

#include "cscale/lt_bounds.hpp"

using namespace cscale;

namespace {

const LTConstants k32(1.5, 1);

SpectrumClassification with_isolated(std::vector<EigenPair> eigs) {
  SpectrumClassification c;
  c.isolated = std::move(eigs);
  return c;
}

std::vector<std::pair<Theorem, BoundParams>> every_theorem(double kappa, double phi) {
  std::vector<std::pair<Theorem, BoundParams>> jobs;
  for (Theorem t : all_theorems()) {
    BoundParams prm;
    if (needs_kappa(t)) prm.kappa = kappa;
    if (t == Theorem::Resonance) prm.phi = phi;
    jobs.emplace_back(t, prm);
  }
  return jobs;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Constants, ThreeHalvesInOneDimension) {
  EXPECT_NEAR(k32.L(), 3.0 / 16.0, 1e-15);
  EXPECT_NEAR(k32.C(), 0.75, 1e-15);
  EXPECT_DOUBLE_EQ(k32.p(), 2.0);
}

TEST(Constants, SemiclassicalFormula) {
  for (int d : {1, 2, 3})
    for (double g : {1.0, 1.5, 2.0, 3.5}) {
      const double want = std::tgamma(g + 1.0) / (std::pow(2.0, d) * std::pow(pi, d / 2.0) * std::tgamma(g + d / 2.0 + 1.0));
      const LTConstants k(g, d);
      EXPECT_NEAR(k.L(), want, 1e-14 * want);
      EXPECT_NEAR(k.C() / k.L(), std::pow(2.0, 1.0 + g / 2.0 + d / 4.0), 1e-14);
    }
}

TEST(Constants, Policies) {
  EXPECT_DOUBLE_EQ(LTConstants(1.5, 1, LPolicy::SemiclassicalTimes, 2.0).L(), 2.0 * 3.0 / 16.0);
  EXPECT_DOUBLE_EQ(LTConstants(1.5, 1, LPolicy::UserSupplied, 0.4).L(), 0.4);
  EXPECT_THROW(LTConstants(1.5, 1, LPolicy::SemiclassicalTimes, 0.5), Error);
  EXPECT_THROW(LTConstants(0.25, 1), Error);
  EXPECT_THROW(LTConstants(0.0, 2), Error);
  EXPECT_NO_THROW(LTConstants(0.0, 3));
}

TEST(Constants, ComplexEstimatesNeedGammaAtLeastOne) {
  const LTConstants k(0.5, 1);
  const auto v = Potential::gaussian(1.0, -1.0);
  EXPECT_EQ(kind_of([&] { rhs(Theorem::FLLSpp, k, v); }), ErrorKind::WrongRegime);
  EXPECT_GT(rhs(Theorem::rLT, k, v), 0.0);
}

TEST(Theorems, NamesRoundTrip) {
  EXPECT_EQ(all_theorems().size(), 18u);
  for (Theorem t : all_theorems()) EXPECT_EQ(parse_theorem(to_string(t)), t);
  EXPECT_EQ(kind_of([] { parse_theorem("FLLS3"); }), ErrorKind::InvalidConfig);
}

TEST(Theorems, AlphaRequirements) {
  EXPECT_DOUBLE_EQ(alpha_required(Theorem::So_all), pi / 4.0);
  EXPECT_DOUBLE_EQ(alpha_required(Theorem::QII), pi / 8.0);
  EXPECT_DOUBLE_EQ(alpha_required(Theorem::AllA), 3.0 * pi / 8.0);
  EXPECT_DOUBLE_EQ(alpha_required(Theorem::Embedded), pi / 2.0);
  EXPECT_NEAR(alpha_required(Theorem::Thm23_plus, {1.0, {}}), pi / 8.0, 1e-15);
  EXPECT_NEAR(alpha_required(Theorem::Resonance, {{}, 0.2}), pi / 2.0 - 0.3, 1e-15);
}

TEST(LhsSum, Examples) {
  const auto c = with_isolated({{-1.0, 0.0, 2}, {-0.25, 0.0, 1}, {cplx(1.0, 1.0), 0.0, 1}});
  EXPECT_DOUBLE_EQ(lhs_sum(c, Region::left_half_closed(), 1.5, Use::Isolated), 2.125);
  EXPECT_EQ(lhs_sum(c, Region::quadrant(3), 1.5, Use::Isolated), 0.0);
  EXPECT_EQ(lhs_sum(SpectrumClassification{}, Region::all(), 1.5, Use::Isolated), 0.0);
}

TEST(LhsSum, ResonancesOnThePositiveAxisAreExcluded) {
  SpectrumClassification c;
  c.resonance = {{2.0, 0.0, 1}, {cplx(1.0, -0.5), 0.0, 1}};
  EXPECT_NEAR(lhs_sum(c, Region::all(), 2.0, Use::Resonance), 1.25, 1e-15);
}

TEST(Rhs, PoschlTellerSharpCase) {
  // L * integral (2 sech^2)^2 = (3/16) * 4 * (4/3) = 1
  const auto v = Potential::tabulate([](double x) { return -2.0 / (std::cosh(x) * std::cosh(x)); }, -20.0, 20.0, 40001);
  EXPECT_NEAR(rhs(Theorem::rLT, k32, v), 1.0, 1e-6);
}

TEST(Rhs, GaussianClosedForms) {
  // integral of (a e^{-x^2})^2 = a^2 sqrt(pi / 2)
  const double a = 1.7;
  const auto v = Potential::gaussian(1.0, -a);
  const double norm = a * a * std::sqrt(pi / 2.0);
  EXPECT_NEAR(rhs(Theorem::FLLSpp, k32, v), 0.75 * norm, 1e-10);
  EXPECT_NEAR(rhs(Theorem::rLT, k32, v), 3.0 / 16.0 * norm, 1e-10);
  EXPECT_NEAR(rhs(Theorem::FLLS, k32, v, {2.0, {}}), 0.75 * 4.0 * norm, 1e-9);
  EXPECT_NEAR(rhs(Theorem::FLLSprime, k32, v, {0.5, {}}), 1.5 * 3.0 / 16.0 * norm, 1e-10);
}

TEST(Rhs, ResonanceAtPiOverThreeUsesUndilatedPotential) {
  // Re(e^{-i pi/6} (-a e^{-x^2}))_- = a cos(pi/6) e^{-x^2}
  const double a = 1.3, phi = pi / 3.0;
  const auto v = Potential::gaussian(1.0, -a);
  const double want = (1.0 + std::sqrt(3.0)) * 3.0 / 16.0 * std::pow(a * std::cos(pi / 6.0), 2) * std::sqrt(pi / 2.0);
  EXPECT_NEAR(rhs(Theorem::Resonance, k32, v, {{}, phi}), want, 1e-10);
  bool undilated = false;
  rhs_from_norms(Theorem::Resonance, k32, {{}, phi}, [&](const NormQuery& q) {
    undilated = std::abs(q.theta.phi) < 1e-15 && std::abs(q.phase - std::polar(1.0, -pi / 6.0)) < 1e-15;
    return 1.0;
  });
  EXPECT_TRUE(undilated);
}

TEST(Rhs, QuadrantIIEqualsSectorEstimateAtKappaOne) {
  const auto v = Potential::rational(cplx(-1.5, 0.8), 2.0);
  EXPECT_EQ(rhs(Theorem::QII, k32, v), rhs(Theorem::Thm23_plus, k32, v, {1.0, {}}));
  EXPECT_EQ(rhs(Theorem::QIII, k32, v), rhs(Theorem::Thm23_minus, k32, v, {1.0, {}}));
}

TEST(Rhs, AllADecomposition) {
  const auto v = Potential::rational(cplx(-1.0, -1.0), 1.5);
  EXPECT_DOUBLE_EQ(rhs(Theorem::AllA, k32, v), rhs(Theorem::FLLSpp, k32, v) + rhs(Theorem::RightHalf, k32, v));
  EXPECT_DOUBLE_EQ(rhs(Theorem::RightHalf, k32, v), rhs(Theorem::QI, k32, v) + rhs(Theorem::QIV, k32, v));
  EXPECT_DOUBLE_EQ(rhs(Theorem::So_all, k32, v), rhs(Theorem::So_upper, k32, v) + rhs(Theorem::So_lower, k32, v));
}

TEST(Rhs, KappaMonotonicityAndLimits) {
  const auto v = Potential::gaussian(cplx(1.0, -0.2), cplx(-2.0, -0.5));
  double prev_flls = std::numeric_limits<double>::infinity(), prev_prime = 0.0;
  for (double kappa : {0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 100.0}) {
    const double f = rhs(Theorem::FLLS, k32, v, {kappa, {}});
    const double fp = rhs(Theorem::FLLSprime, k32, v, {kappa, {}});
    EXPECT_LT(f, prev_flls);
    EXPECT_GT(fp, prev_prime);
    prev_flls = f;
    prev_prime = fp;
  }
  const double pp = rhs(Theorem::FLLSpp, k32, v);
  EXPECT_LE(std::abs(rhs(Theorem::FLLS, k32, v, {1e8, {}}) - pp) / pp, 1e-6);
  // kappa -> 0: L * ||(Re V)_-||^p, computed here without the (1 + kappa) prefactor
  const double re_minus = 3.0 / 16.0 * lp_integral(v, NormQuery{{}, 1.0, Part::ReMinus}, 2.0);
  EXPECT_LE(std::abs(rhs(Theorem::FLLSprime, k32, v, {1e-9, {}}) - re_minus) / re_minus, 1e-8);
}

TEST(Rhs, Errors) {
  const auto well = Potential::finite_well(1.0, 1.0);
  EXPECT_EQ(kind_of([&] { rhs(Theorem::So_upper, k32, well); }), ErrorKind::InsufficientAlpha);
  // The real Gaussian sits exactly at alpha = pi/4, which the hypothesis excludes.
  EXPECT_EQ(kind_of([&] { rhs(Theorem::So_upper, k32, Potential::gaussian(1.0, -1.0)); }), ErrorKind::InsufficientAlpha);
  EXPECT_EQ(kind_of([&] { rhs(Theorem::FLLS, k32, well); }), ErrorKind::KappaDomain);
  EXPECT_EQ(kind_of([&] { rhs(Theorem::FLLS, k32, well, {0.0, {}}); }), ErrorKind::KappaDomain);
  EXPECT_EQ(kind_of([&] { rhs(Theorem::Thm23_plus, k32, well, {-1.0, {}}); }), ErrorKind::KappaDomain);
  EXPECT_EQ(kind_of([&] { rhs(Theorem::rLT, k32, Potential::gaussian(1.0, cplx(-1.0, 0.3))); }), ErrorKind::WrongRegime);
  EXPECT_EQ(kind_of([&] { rhs(Theorem::Resonance, k32, Potential::rational(-1.0, 2.0), {{}, pi / 2.0}); }),
            ErrorKind::InvalidArgument);
}

TEST(Rhs, EmbeddedFromProvider) {
  const auto got = rhs_from_norms(Theorem::Embedded, k32, {}, [](const NormQuery& q) {
    EXPECT_DOUBLE_EQ(q.theta.phi, pi / 2.0);
    EXPECT_EQ(q.part, Part::RePlus);
    return 8.0;
  });
  EXPECT_DOUBLE_EQ(got, 1.5);
}

TEST(Verify, ZeroPotentialSatisfiesEverything) {
  VerifyOptions opt;
  opt.box_check = false;
  const auto reports = verify_suite(every_theorem(1.0, pi / 3.0), Potential::free(), Grid(10.0, 120), k32, opt);
  EXPECT_EQ(reports.size(), all_theorems().size());
  for (const auto& r : reports) {
    EXPECT_EQ(r.lhs, 0.0) << to_string(r.theorem);
    EXPECT_EQ(r.rhs, 0.0) << to_string(r.theorem);
    EXPECT_TRUE(r.satisfied) << to_string(r.theorem);
  }
}

TEST(Verify, RealWellAllApplicableSatisfied) {
  const auto v = Potential::rational(-2.0, 2.0);
  const auto reports = verify_suite(every_theorem(1.0, pi / 3.0), v, Grid(15.0, 600), k32);
  EXPECT_GE(reports.size(), 10u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.satisfied) << to_string(r.theorem) << " " << r.lhs << " " << r.rhs;
    EXPECT_TRUE(r.box_converged.value_or(false)) << to_string(r.theorem);
    // One bound state near -0.797 must reach every estimate whose region holds the negative axis.
    if (r.theorem == Theorem::rLT || r.theorem == Theorem::FLLSpp || r.theorem == Theorem::AllA) {
      EXPECT_NEAR(r.lhs, std::pow(0.7974, 1.5), 1e-3) << to_string(r.theorem);
      EXPECT_EQ(r.contributors.size(), 1u);
    }
  }
}

TEST(Verify, ComplexGaussianLeftHalfPlane) {
  const auto v = Potential::gaussian(1.0, cplx(-1.0, 0.3));
  const auto r = verify(Theorem::FLLSpp, v, Grid(15.0, 600), k32);
  EXPECT_GT(r.lhs, 0.0);
  EXPECT_LT(r.ratio, 1.0);
  EXPECT_TRUE(r.satisfied);
  ASSERT_EQ(r.contributors.size(), 1u);
  EXPECT_LT(r.contributors[0].lambda.real(), 0.0);
}

TEST(Verify, InapplicableTheoremsAreSkipped) {
  const auto v = Potential::gaussian(1.0, cplx(-1.0, 0.3));
  const auto reports =
      verify_suite({{Theorem::rLT, {}}, {Theorem::So_all, {}}, {Theorem::QII, {}}}, v, Grid(10.0, 200), k32);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].theorem, Theorem::QII);
  EXPECT_THROW(verify_suite({{Theorem::rLT, {}}}, v, Grid(10.0, 200), k32, {}, false), Error);
}

TEST(Verify, CoarseGridReportsUnresolvedEigenvalue) {
  // On 120 points the bound state of the well moves by ~3e-4 under dilation,
  // which would otherwise drop it from the sum and pass vacuously.
  const auto v = Potential::gaussian(1.0, -1.2);
  EXPECT_EQ(kind_of([&] { verify(Theorem::rLT, v, Grid(10.0, 120), k32); }), ErrorKind::ClassificationUnstable);
  const auto r = verify(Theorem::rLT, v, Grid(10.0, 400), k32);
  EXPECT_GT(r.lhs, 0.3);
  EXPECT_TRUE(r.satisfied);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <ellshell/thinshell.hpp>

using namespace ellshell;

namespace {
const EllipsoidParams kOblate{2.0};

TangentField unit_random(const EllipsoidParams& par, std::uint64_t seed) {
  return scaled_field(random_field(par, seed), 0.25);
}

TangentField unit_divfree(const EllipsoidParams& par, std::uint64_t seed) {
  return scaled_field(random_divfree_field(par, seed), 0.25);
}

TangentField scenario_datum(const EllipsoidParams& par, Scenario s, std::uint64_t seed) {
  return scenario_divfree(s) ? unit_divfree(par, seed) : unit_random(par, seed);
}
}  // namespace

TEST_CASE("scenario tags, charts, operators") {
  for (Scenario s : all_scenarios()) CHECK(parse_scenario(scenario_tag(s)) == s);
  CHECK_THROWS_AS(parse_scenario("spin"), std::invalid_argument);
  CHECK(scenario_operator(Scenario::ScalingNavierTangential) == OperatorKind::O1);
  CHECK(scenario_operator(Scenario::ScalingNavierDivfree) == OperatorKind::O3);
  CHECK(scenario_operator(Scenario::ScalingHodgeTangential) == OperatorKind::O2);
  CHECK(scenario_operator(Scenario::ScalingHodgeDivfree) == OperatorKind::O4);
  CHECK(scenario_operator(Scenario::NormalNavier) == OperatorKind::DefLap);
  CHECK(scenario_operator(Scenario::NormalHodge) == OperatorKind::Hodge);
  CHECK(scenario_chart(Scenario::NormalHodge) == Chart::Normal);
  CHECK(scenario_bc(Scenario::ScalingHodgeDivfree) == BCKind::Hodge);
  CHECK(scenario_divfree(Scenario::ScalingNavierDivfree));
  CHECK(scenario_divfree(Scenario::NormalNavier));
  CHECK_FALSE(scenario_divfree(Scenario::ScalingNavierTangential));
  CHECK_FALSE(scenario_divfree(Scenario::NormalHodge));
}

TEST_CASE("log-log slope fit") {
  CHECK(fit_loglog_slope({1, 2, 4}, {1, 4, 16}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit_loglog_slope({1, 2, 4}, {3, 3, 3}) == doctest::Approx(0.0));
}

TEST_CASE("divergence defect separates field classes") {
  CHECK(divfree_defect(kOblate, unit_divfree(kOblate, 5)) < 1e-10);
  CHECK(divfree_defect(kOblate, unit_random(kOblate, 5)) > 1e-4);
}

TEST_CASE("jets built from the normal-chart matching relations") {
  const TangentField u0 = unit_divfree(kOblate, 12);
  const double phi = 0.9, theta = -0.7;
  {
    const FrameJet jet = solve_bc_coeffs(kOblate, Scenario::NormalNavier, u0);
    const CurvatureData k = curvatures(kOblate, phi);
    CHECK(jet.a[1][0](phi, theta) ==
          doctest::Approx(-k.kappa1 * u0.c1(phi, theta)).epsilon(1e-12));
    CHECK(jet.a[1][1](phi, theta) ==
          doctest::Approx(-k.kappa2 * u0.c2(phi, theta)).epsilon(1e-12));
    CHECK(jet.a[2][0](phi, theta) == doctest::Approx(0.0));
  }
  {
    const TangentField w0 = unit_random(kOblate, 13);
    const FrameJet jet = solve_bc_coeffs(kOblate, Scenario::NormalHodge, w0);
    const CurvatureData k = curvatures(kOblate, phi);
    CHECK(jet.a[1][0](phi, theta) ==
          doctest::Approx(k.kappa1 * w0.c1(phi, theta)).epsilon(1e-12));
    CHECK(jet.a[2][1](phi, theta) ==
          doctest::Approx(k.kappa2 * k.kappa2 * w0.c2(phi, theta)).epsilon(1e-12));
  }
}

TEST_CASE("scaling jets satisfy the surface matching relation") {
  for (Scenario s : {Scenario::ScalingNavierTangential, Scenario::ScalingNavierDivfree,
                     Scenario::ScalingHodgeTangential, Scenario::ScalingHodgeDivfree}) {
    const FrameJet jet = solve_bc_coeffs(kOblate, s, scenario_datum(kOblate, s, 21));
    const AuditResult r =
        eps_relation_audit(kOblate, s, jet, {0.2, 0.1, 0.05, 0.025}, 16, 77, 0.15);
    CHECK(r.inner_residual < 1e-10);
    CHECK(r.slope > 1.8);
  }
}

TEST_CASE("unsolved jets fail the outer-leaf relation at order zero") {
  const Scenario s = Scenario::ScalingNavierTangential;
  FrameJet jet = solve_bc_coeffs(kOblate, s, unit_random(kOblate, 31));
  // wipe the matched coefficients: the relation residual freezes at its
  // surface value and the log-log slope collapses
  for (int i = 0; i < 3; ++i) {
    jet.a[1][i] = ScalarField(0.0);
    jet.a[2][i] = ScalarField(0.0);
  }
  const AuditResult r =
      eps_relation_audit(kOblate, s, jet, {0.2, 0.1, 0.05, 0.025}, 16, 77, 0.15);
  CHECK(std::abs(r.slope) < 0.5);
  CHECK(eps_relation_audit(kOblate, s, solve_bc_coeffs(kOblate, s, unit_random(kOblate, 31)),
                           {0.2, 0.1}, 8, 77, 0.15)
            .inner_residual < 1e-10);
  CHECK_THROWS_AS(
      eps_relation_audit(kOblate, Scenario::NormalNavier, jet, {0.1}, 4, 1, 0.15),
      std::invalid_argument);
}

TEST_CASE("built fields restrict to their surface coefficients") {
  const FrameJet jet = solve_bc_coeffs(kOblate, Scenario::NormalHodge, unit_random(kOblate, 3));
  const AmbientField v = build_field(kOblate, jet);
  const TangentField u = restrict_to_surface(kOblate, v);
  CHECK(u.c1(1.1, 0.4) == doctest::Approx(jet.a[0][0](1.1, 0.4)).epsilon(1e-12));
  CHECK(u.c2(1.1, 0.4) == doctest::Approx(jet.a[0][1](1.1, 0.4)).epsilon(1e-12));
  const FrameJet bad = corrupt_coefficient(jet, 0, 1, 2.0);
  CHECK(bad.a[0][1](1.1, 0.4) == doctest::Approx(2 * jet.a[0][1](1.1, 0.4)));
  CHECK(bad.a[0][0](1.1, 0.4) == doctest::Approx(jet.a[0][0](1.1, 0.4)));
}

TEST_CASE("extrinsic Laplacian oracle on exactly harmonic fields") {
  // each Cartesian component of a linear field is harmonic
  AmbientField lin{Chart::Scaling, [](const ShellPoint& q) {
                     const Vec3 y = embed(EllipsoidParams{2.0}, q);
                     return Vec3{y.y + 2 * y.z, y.x, -y.z};
                   }};
  const TanVec t = extrinsic_laplacian_tangential(kOblate, lin, {1.0, 0.5}, 1e-3, 2);
  CHECK(norm(t) < 1e-8);
  const TanVec t4 = extrinsic_laplacian_tangential(kOblate, lin, {1.0, 0.5}, 1e-3, 4);
  CHECK(norm(t4) < 1e-7);
}

TEST_CASE("tangential Laplacian decomposition against the extrinsic oracle") {
  for (Chart chart : {Chart::Scaling, Chart::Normal}) {
    FrameJet jet;
    jet.chart = chart;
    for (int alpha = 0; alpha < 3; ++alpha) {
      const TangentField f = unit_random(kOblate, 60 + 7 * alpha);
      const TangentField g = unit_random(kOblate, 90 + 7 * alpha);
      jet.a[alpha][0] = f.c1;
      jet.a[alpha][1] = f.c2;
      jet.a[alpha][2] = g.c2;
    }
    jet.a[0][2] = ScalarField(0.0);  // tangential data on the surface
    const AmbientField v = build_field(kOblate, jet);
    for (const SurfacePoint p : {SurfacePoint{0.8, 0.3}, SurfacePoint{1.9, -1.2}}) {
      const GaussCheck gc = gauss_formula_check(kOblate, v, p);
      CHECK(gc.residual < 1e-5);
      CHECK(norm(gc.oracle) > 1e-3);  // the comparison is not trivially 0 = 0
    }
  }
}

TEST_CASE("derivation replay per scenario") {
  for (Scenario s : all_scenarios()) {
    const TangentField u0 = scenario_datum(kOblate, s, 17);
    const ReplayResult r = replay(kOblate, s, u0, {1.1, 0.7});
    CHECK(r.residual < 1e-4);
    CHECK(norm(r.intrinsic) > 1e-4);
  }
}

TEST_CASE("replay enforces the divergence-free hypothesis") {
  CHECK_THROWS_AS(
      replay(kOblate, Scenario::ScalingNavierDivfree, unit_random(kOblate, 9), {1.0, 0.0}),
      std::invalid_argument);
}

TEST_CASE("replay residual scales as h^2 and detects corruption") {
  const Scenario s = Scenario::NormalHodge;
  const TangentField u0 = unit_random(kOblate, 23);
  const SurfacePoint p{1.2, 0.4};
  std::vector<double> hs = {8e-3, 4e-3, 2e-3}, res;
  for (double h : hs) res.push_back(replay(kOblate, s, u0, p, kDefaultH1, h).residual);
  const double slope = fit_loglog_slope(hs, res);
  CHECK(slope == doctest::Approx(2.0).epsilon(0.15));

  const FrameJet good = solve_bc_coeffs(kOblate, s, u0);
  const FrameJet bad = corrupt_coefficient(good, 1, 0, 1.1);
  const double r_good = replay(kOblate, s, u0, p, kDefaultH1, kDefaultH2, 2, &good).residual;
  const double r_bad = replay(kOblate, s, u0, p, kDefaultH1, kDefaultH2, 2, &bad).residual;
  CHECK(r_bad > 10 * r_good);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <ellshell/boundary.hpp>
#include <ellshell/thinshell.hpp>

using namespace ellshell;

namespace {
const EllipsoidParams kOblate{2.0};

// Jet with vanishing surface normal component; higher coefficients arbitrary.
FrameJet tangential_jet(const EllipsoidParams& par, Chart chart, std::uint64_t seed) {
  FrameJet jet;
  jet.chart = chart;
  for (int alpha = 0; alpha < 3; ++alpha) {
    const TangentField f = scaled_field(random_field(par, seed + 11 * alpha), 0.25);
    const TangentField g = scaled_field(random_field(par, seed + 11 * alpha + 5), 0.25);
    jet.a[alpha][0] = f.c1;
    jet.a[alpha][1] = f.c2;
    jet.a[alpha][2] = g.c1;
  }
  jet.a[0][2] = ScalarField(0.0);
  return jet;
}

ShellPoint on_surface(Chart chart, double phi, double theta) {
  return {chart, chart == Chart::Scaling ? 1.0 : 0.0, phi, theta};
}
}  // namespace

TEST_CASE("Navier routes coincide for leaf-tangential fields") {
  for (Chart chart : {Chart::Scaling, Chart::Normal}) {
    const AmbientField v = build_field(kOblate, tangential_jet(kOblate, chart, 42));
    for (double phi : {0.6, 1.3, 2.3}) {
      const BCResidual r = navier_residual(kOblate, v, on_surface(chart, phi, 0.8));
      CHECK(r.max_route_gap < 1e-6);
      CHECK(std::abs(r.penetration) < 1e-12);
    }
  }
}

TEST_CASE("Hodge routes coincide for leaf-tangential fields") {
  for (Chart chart : {Chart::Scaling, Chart::Normal}) {
    const AmbientField v = build_field(kOblate, tangential_jet(kOblate, chart, 43));
    for (double phi : {0.6, 1.3, 2.3}) {
      CHECK(hodge_residual(kOblate, v, on_surface(chart, phi, -0.4)).max_route_gap < 1e-6);
    }
  }
}

TEST_CASE("route gap detects normal components") {
  // a nonconstant normal component breaks the deformation/commutator
  // equivalence by grad(v.n) + v_n D_n n
  FrameJet jet = tangential_jet(kOblate, Chart::Scaling, 44);
  TrigPoly bump;
  bump.terms.push_back({0.5, 2, 0, 0, true});  // 0.5 sin^2(phi)
  jet.a[0][2] = bump.field();
  const AmbientField v = build_field(kOblate, jet);
  const BCResidual r = navier_residual(kOblate, v, on_surface(Chart::Scaling, 0.9, 0.2));
  CHECK(r.max_route_gap > 1e-4);
  CHECK(std::abs(r.penetration) > 1e-3);
}

TEST_CASE("one-form vs vector-field normal derivative bridge") {
  for (Chart chart : {Chart::Scaling, Chart::Normal}) {
    const AmbientField v = build_field(kOblate, tangential_jet(kOblate, chart, 45));
    for (double phi : {0.7, 1.9}) {
      CHECK(nh_relation_residual(kOblate, v, on_surface(chart, phi, 1.5)) < 1e-6);
    }
  }
}

TEST_CASE("friction enters every Navier route linearly") {
  const FrameJet jet = tangential_jet(kOblate, Chart::Scaling, 46);
  const AmbientField v = build_field(kOblate, jet);
  const double phi = 1.1, theta = 0.6, gf = 0.7;
  const ShellPoint q = on_surface(Chart::Scaling, phi, theta);
  const BCResidual r0 = navier_residual(kOblate, v, q, 0.0);
  const BCResidual r1 = navier_residual(kOblate, v, q, gf);
  const TanVec vt{jet.a[0][0](phi, theta), jet.a[0][1](phi, theta)};
  CHECK(norm(r1.route_a - r0.route_a - vt * gf) < 1e-12);
  CHECK(norm(r1.route_b - r0.route_b - vt * gf) < 1e-12);
  CHECK(norm(r1.route_c - r0.route_c - vt * gf) < 1e-12);
}

TEST_CASE("power-matched jets satisfy their boundary condition") {
  for (Scenario s : all_scenarios()) {
    const TangentField u0 = scenario_divfree(s)
                                ? scaled_field(random_divfree_field(kOblate, 7), 0.25)
                                : scaled_field(random_field(kOblate, 7), 0.25);
    const AmbientField v = build_field(kOblate, solve_bc_coeffs(kOblate, s, u0));
    for (double phi : {0.8, 1.7}) {
      const ShellPoint q = on_surface(scenario_chart(s), phi, 0.4);
      if (scenario_bc(s) == BCKind::Navier) {
        const BCResidual r = navier_residual(kOblate, v, q);
        CHECK(norm(r.route_a) < 1e-5);
        CHECK(norm(r.route_b) < 1e-5);
        CHECK(norm(r.route_c) < 1e-5);
      } else {
        const BCResidual r = hodge_residual(kOblate, v, q);
        CHECK(norm(r.route_a) < 1e-5);
        CHECK(norm(r.route_b) < 1e-5);
      }
    }
  }
}

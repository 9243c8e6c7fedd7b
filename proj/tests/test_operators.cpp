#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <ellshell/operators.hpp>

using namespace ellshell;

namespace {
const EllipsoidParams kOblate{2.0};
const EllipsoidParams kSphere{1.0};
constexpr double kPi = 3.14159265358979323846;

TanVec apply_both_max_gap(const EllipsoidParams& par, OperatorKind k,
                          const TangentField& u, const SurfacePoint& p, double& gap) {
  const TanVec s = apply_operator(par, k, Route::Structural, u, p);
  const TanVec c = apply_operator(par, k, Route::Coefficient, u, p);
  gap = norm(s - c);
  return s;
}
}  // namespace

TEST_CASE("operator tag round trip") {
  for (OperatorKind k : {OperatorKind::Bochner, OperatorKind::Hodge, OperatorKind::DefLap,
                         OperatorKind::O1, OperatorKind::O2, OperatorKind::O3,
                         OperatorKind::O4}) {
    CHECK(parse_operator(operator_tag(k)) == k);
  }
  CHECK(operator_tag(OperatorKind::O3) == "o3");
  CHECK_THROWS_AS(parse_operator("laplace"), std::invalid_argument);
}

TEST_CASE("sphere rotation field is an eigenfield") {
  // on the unit sphere the rotation field v = sin(phi) e2 satisfies
  // Bochner v = v and Hodge v = 2 v
  const TangentField rot = preset_field(kSphere, "rotation");
  for (double phi : {0.6, 1.1, 2.2}) {
    const SurfacePoint p{phi, 0.9};
    for (Route r : {Route::Structural, Route::Coefficient}) {
      const TanVec b = apply_operator(kSphere, OperatorKind::Bochner, r, rot, p);
      CHECK(b.c1 == doctest::Approx(0.0).epsilon(1e-6));
      CHECK(b.c2 == doctest::Approx(std::sin(phi)).epsilon(1e-6));
      const TanVec hd = apply_operator(kSphere, OperatorKind::Hodge, r, rot, p);
      CHECK(hd.c2 == doctest::Approx(2 * std::sin(phi)).epsilon(1e-6));
    }
  }
}

TEST_CASE("ricci endomorphism is gauss curvature times identity") {
  const TangentField u{ScalarField(1.0), ScalarField(2.0)};
  const TanVec r = ricci_op(kOblate, u, {kPi / 4, 0.3});
  CHECK(r.c1 == doctest::Approx(0.16).epsilon(1e-14));
  CHECK(r.c2 == doctest::Approx(0.32).epsilon(1e-14));
}

TEST_CASE("c313 field carries analytic phi-derivative") {
  const ScalarField c = c313_field(kOblate);
  CHECK(c(kPi / 4, 1.0) == doctest::Approx(c313(kOblate, kPi / 4)).epsilon(1e-14));
  CHECK(c.fp(kPi / 4, 1.0) == doctest::Approx(dc313_dphi(kOblate, kPi / 4)).epsilon(1e-12));
}

TEST_CASE("route agreement on arbitrary fields: Bochner, Hodge, DefLap") {
  const TangentField u = scaled_field(random_field(kOblate, 11), 0.25);
  const SurfacePoint p{0.9, 1.3};
  double gap = 0;
  for (OperatorKind k : {OperatorKind::Bochner, OperatorKind::Hodge, OperatorKind::DefLap}) {
    apply_both_max_gap(kOblate, k, u, p, gap);
    CHECK(gap < 1e-5);
  }
}

TEST_CASE("route agreement on divergence-free fields: limit candidates") {
  const TangentField u = scaled_field(random_divfree_field(kOblate, 11), 0.25);
  const SurfacePoint p{0.9, 1.3};
  double gap = 0;
  for (OperatorKind k : {OperatorKind::O1, OperatorKind::O2, OperatorKind::O3,
                         OperatorKind::O4}) {
    apply_both_max_gap(kOblate, k, u, p, gap);
    CHECK(gap < 1e-5);
  }
}

TEST_CASE("sphere collapse: candidates reduce to their base operators") {
  const TangentField u = scaled_field(random_divfree_field(kSphere, 5), 0.25);
  const SurfacePoint p{1.0, -0.7};
  const TanVec d = apply_operator(kSphere, OperatorKind::DefLap, Route::Structural, u, p);
  const TanVec h = apply_operator(kSphere, OperatorKind::Hodge, Route::Structural, u, p);
  CHECK(norm(apply_operator(kSphere, OperatorKind::O1, Route::Structural, u, p) - d) < 1e-10);
  CHECK(norm(apply_operator(kSphere, OperatorKind::O3, Route::Structural, u, p) - d) < 1e-10);
  CHECK(norm(apply_operator(kSphere, OperatorKind::O2, Route::Structural, u, p) - h) < 1e-10);
  CHECK(norm(apply_operator(kSphere, OperatorKind::O4, Route::Structural, u, p) - h) < 1e-10);
}

TEST_CASE("candidate differences are the advection shift") {
  // O1 - O3 = 2 c^2 u^1 e1, O2 - O4 likewise; compare across routes
  const TangentField u = scaled_field(random_divfree_field(kOblate, 21), 0.25);
  for (const SurfacePoint p : {SurfacePoint{0.8, 0.2}, SurfacePoint{1.9, -1.0}}) {
    const double c = c313(kOblate, p.phi);
    const TanVec shift{2 * c * c * u.c1(p.phi, p.theta), 0.0};
    const TanVec d13 =
        apply_operator(kOblate, OperatorKind::O1, Route::Structural, u, p) -
        apply_operator(kOblate, OperatorKind::O3, Route::Coefficient, u, p);
    const TanVec d24 =
        apply_operator(kOblate, OperatorKind::O2, Route::Structural, u, p) -
        apply_operator(kOblate, OperatorKind::O4, Route::Coefficient, u, p);
    CHECK(norm(d13 - shift) < 1e-6);
    CHECK(norm(d24 - shift) < 1e-6);
  }
}

TEST_CASE("rotation field is annihilated by the deformation Laplacian") {
  const TangentField rot = preset_field(kOblate, "rotation");
  for (double phi : {0.5, 1.2, 2.4}) {
    const SurfacePoint p{phi, 0.3};
    for (Route r : {Route::Structural, Route::Coefficient}) {
      CHECK(norm(apply_operator(kOblate, OperatorKind::DefLap, r, rot, p)) < 1e-6);
    }
  }
}

TEST_CASE("covariant-derivative lemma for the advection field") {
  const TangentField w = scaled_field(random_field(kOblate, 9), 0.25);
  for (const SurfacePoint p : {SurfacePoint{0.7, 1.1}, SurfacePoint{2.1, -0.4}}) {
    const Key1Residuals r = key1_check(kOblate, w, p);
    CHECK(r.defining < 1e-6);
    CHECK(r.closed_form < 1e-6);
  }
}

TEST_CASE("coefficient tables: curvature form equals rational form") {
  for (double a : {0.5, 1.0, 2.0, 5.0})
    for (double phi : {0.2, 0.8, kPi / 2, 2.7}) {
      CHECK(coefficient_forms_residual(EllipsoidParams{a}, phi) < 1e-12);
    }
}

#include <ellshell/operators.hpp>

#include <cmath>
#include <stdexcept>

namespace ellshell {

OperatorKind parse_operator(const std::string& tag) {
  if (tag == "bochner") return OperatorKind::Bochner;
  if (tag == "hodge") return OperatorKind::Hodge;
  if (tag == "deflap") return OperatorKind::DefLap;
  if (tag == "o1") return OperatorKind::O1;
  if (tag == "o2") return OperatorKind::O2;
  if (tag == "o3") return OperatorKind::O3;
  if (tag == "o4") return OperatorKind::O4;
  throw std::invalid_argument("unknown operator tag: " + tag);
}

std::string operator_tag(OperatorKind k) {
  switch (k) {
    case OperatorKind::Bochner: return "bochner";
    case OperatorKind::Hodge: return "hodge";
    case OperatorKind::DefLap: return "deflap";
    case OperatorKind::O1: return "o1";
    case OperatorKind::O2: return "o2";
    case OperatorKind::O3: return "o3";
    case OperatorKind::O4: return "o4";
  }
  return "?";
}

ScalarField c313_field(const EllipsoidParams& par) {
  const double a = par.a;
  ScalarField f([a](double p, double) { return c313({a}, p); });
  f.fp = [a](double p, double) { return dc313_dphi({a}, p); };
  f.ft = [](double, double) { return 0.0; };
  return f;
}

TanVec ricci_op(const EllipsoidParams& par, const TangentField& u, const SurfacePoint& p) {
  const double k = curvatures(par, p.phi).gauss;
  return {k * u.c1(p.phi, p.theta), k * u.c2(p.phi, p.theta)};
}

// ---- Bochner ----

static TanVec bochner_structural(const EllipsoidParams& par, const TangentField& u,
                                 const SurfacePoint& p, double h) {
  // -sum_i [ covar_{e_i} covar_{e_i} u - covar_{(covar_{e_i} e_i)} u ]
  // with covar_{e1} e1 = 0 and covar_{e2} e2 = -gamma e1.
  const TangentField d1 = covar_e1(par, u, h);
  const TangentField d2 = covar_e2(par, u, h);
  const TangentField d11 = covar_e1(par, d1, h);
  const TangentField d22 = covar_e2(par, d2, h);
  const double g = gamma_conn(par, p.phi);
  const double ph = p.phi, th = p.theta;
  return {-(d11.c1(ph, th) + d22.c1(ph, th) + g * d1.c1(ph, th)),
          -(d11.c2(ph, th) + d22.c2(ph, th) + g * d1.c2(ph, th))};
}

static TanVec bochner_coefficient(const EllipsoidParams& par, const TangentField& u,
                                  const SurfacePoint& p, double h) {
  const double ph = p.phi, th = p.theta;
  const double g = gamma_conn(par, ph);
  const ScalarField e1u1 = e1_of(par, u.c1, h), e1u2 = e1_of(par, u.c2, h);
  const double e11u1 = e1_of(par, e1u1, h)(ph, th);
  const double e11u2 = e1_of(par, e1u2, h)(ph, th);
  const double e22u1 = e2_of(par, e2_of(par, u.c1, h), h)(ph, th);
  const double e22u2 = e2_of(par, e2_of(par, u.c2, h), h)(ph, th);
  const double e2u1 = e2_of(par, u.c1, h)(ph, th);
  const double e2u2 = e2_of(par, u.c2, h)(ph, th);
  const double u1 = u.c1(ph, th), u2 = u.c2(ph, th);
  return {-(e11u1 + e22u1 - 2.0 * g * e2u2 - g * g * u1 + g * e1u1(ph, th)),
          -(e11u2 + e22u2 + 2.0 * g * e2u1 - g * g * u2 + g * e1u2(ph, th))};
}

// ---- Hodge ----

static TanVec hodge_structural(const EllipsoidParams& par, const TangentField& u,
                               const SurfacePoint& p, double h) {
  // (d*d + dd*) u_flat: with xi = coefficient of d(u_flat) and delta = div u,
  // components are (e2 xi - e1 delta, -e1 xi - e2 delta).
  const ScalarField xi = curl2_surface(par, u, h);
  const ScalarField delta = div_surface(par, u, h);
  const double ph = p.phi, th = p.theta;
  return {e2_of(par, xi, h)(ph, th) - e1_of(par, delta, h)(ph, th),
          -e1_of(par, xi, h)(ph, th) - e2_of(par, delta, h)(ph, th)};
}

static TanVec hodge_coefficient(const EllipsoidParams& par, const TangentField& u,
                                const SurfacePoint& p, double h) {
  return bochner_coefficient(par, u, p, h) + ricci_op(par, u, p);
}

// ---- deformation Laplacian ----

static TanVec deflap_structural(const EllipsoidParams& par, const TangentField& u,
                                const SurfacePoint& p, double h) {
  const TangentField d = div_sym_tensor(par, deformation_surface(par, u, h), h);
  return {-2.0 * d.c1(p.phi, p.theta), -2.0 * d.c2(p.phi, p.theta)};
}

static TanVec deflap_coefficient(const EllipsoidParams& par, const TangentField& u,
                                 const SurfacePoint& p, double h) {
  // Bochner - Ric + dd*, where (dd* u_flat)_sharp = -grad(div u)
  const ScalarField delta = div_surface(par, u, h);
  const TanVec grad_div = {e1_of(par, delta, h)(p.phi, p.theta),
                           e2_of(par, delta, h)(p.phi, p.theta)};
  return bochner_coefficient(par, u, p, h) - ricci_op(par, u, p) - grad_div;
}

// ---- candidate operators ----

// zero-order coefficient tables of the summary forms (curvature-interpreted)
static void summary_coefs(const EllipsoidParams& par, double phi, bool hodge_side,
                          double& c1, double& c2) {
  const CurvatureData k = curvatures(par, phi);
  const double K = k.gauss, sK = k.sqrt_gauss;
  const double k1sq = k.kappa1 * k.kappa1;
  const double k1_over_grad = k.kappa1 / k.grad_rho_norm;
  if (!hodge_side) {
    c1 = K - sK - 3.0 * k1sq - 2.0 * k1_over_grad;
    c2 = sK - 2.0 * K;
  } else {
    c1 = 3.0 * sK - 3.0 * K + 5.0 * k1sq + 4.0 * k1_over_grad;
    c2 = 2.0 * K - sK;
  }
}

double coefficient_forms_residual(const EllipsoidParams& par, double phi) {
  const double a2 = par.a * par.a;
  const double l = lambda_of(par, phi);
  const double l2 = l * l, l4 = l2 * l2, l6 = l4 * l2;
  double n1, n2, h1, h2;
  summary_coefs(par, phi, false, n1, n2);
  summary_coefs(par, phi, true, h1, h2);
  const double n1_l = 1.0 / l4 - 3.0 * a2 / l6 - 1.0 / l2 + 2.0 * a2 / l4;
  const double n2_l = 1.0 / l2 - 2.0 / l4;
  const double h1_l = 3.0 / l2 - (3.0 + 4.0 * a2) / l4 + 5.0 * a2 / l6;
  const double h2_l = 2.0 / l4 - 1.0 / l2;
  double r = std::fabs(n1 - n1_l);
  r = std::max(r, std::fabs(n2 - n2_l));
  r = std::max(r, std::fabs(h1 - h1_l));
  r = std::max(r, std::fabs(h2 - h2_l));
  return r;
}

static TanVec summary_coefficient(const EllipsoidParams& par, const TangentField& u,
                                  const SurfacePoint& p, bool hodge_side, double h) {
  const double ph = p.phi, th = p.theta;
  const double c = c313(par, ph);
  const TangentField d1 = covar_e1(par, u, h);
  double z1, z2;
  summary_coefs(par, ph, hodge_side, z1, z2);
  const TanVec base = hodge_side ? hodge_coefficient(par, u, p, h)
                                 : bochner_coefficient(par, u, p, h);
  // hodge_coefficient already contains +Ric; the Hodge summary is written on
  // top of plain Bochner, so subtract it back out.
  const TanVec boch = hodge_side ? base - ricci_op(par, u, p) : base;
  return {boch.c1 + c * d1.c1(ph, th) + z1 * u.c1(ph, th),
          boch.c2 + c * d1.c2(ph, th) + z2 * u.c2(ph, th)};
}

static TanVec csq_term(const EllipsoidParams& par, const TangentField& u,
                       const SurfacePoint& p) {
  const double c = c313(par, p.phi);
  return {2.0 * c * c * u.c1(p.phi, p.theta), 0.0};
}

TanVec apply_operator(const EllipsoidParams& par, OperatorKind kind, Route route,
                      const TangentField& u, const SurfacePoint& p, double h) {
  const bool structural = (route == Route::Structural);
  switch (kind) {
    case OperatorKind::Bochner:
      return structural ? bochner_structural(par, u, p, h) : bochner_coefficient(par, u, p, h);
    case OperatorKind::Hodge:
      return structural ? hodge_structural(par, u, p, h) : hodge_coefficient(par, u, p, h);
    case OperatorKind::DefLap:
      return structural ? deflap_structural(par, u, p, h) : deflap_coefficient(par, u, p, h);
    default:
      break;
  }
  const TangentField cfield{c313_field(par), ScalarField(0.0)};
  if (kind == OperatorKind::O1 || kind == OperatorKind::O3) {
    TanVec r;
    if (structural) {
      const TangentField br = surface_lie_bracket(par, cfield, u, h);
      r = deflap_structural(par, u, p, h) +
          TanVec{br.c1(p.phi, p.theta), br.c2(p.phi, p.theta)};
    } else {
      r = summary_coefficient(par, u, p, false, h);
    }
    if (kind == OperatorKind::O1) r = r + csq_term(par, u, p);
    return r;
  }
  // O2 / O4
  TanVec r;
  if (structural) {
    r = hodge_structural(par, u, p, h) +
        lie_deriv_oneform_covariant(par, cfield, u, p, h);
    if (kind == OperatorKind::O4) r = r - csq_term(par, u, p);
  } else {
    r = summary_coefficient(par, u, p, true, h);
    if (kind == OperatorKind::O2) r = r + csq_term(par, u, p);
  }
  return r;
}

Key1Residuals key1_check(const EllipsoidParams& par, const TangentField& w,
                         const SurfacePoint& p, double h) {
  const TangentField cfield{c313_field(par), ScalarField(0.0)};
  const double ph = p.phi, th = p.theta;
  const double w1 = w.c1(ph, th), w2 = w.c2(ph, th);

  // defining identity: sum_i g(w, covar_{e_i}(c e1)) e_i vs covar_w(c e1)
  const TangentField d1 = covar_e1(par, cfield, h);
  const TangentField d2 = covar_e2(par, cfield, h);
  const TanVec lhs = {w1 * d1.c1(ph, th) + w2 * d1.c2(ph, th),
                      w1 * d2.c1(ph, th) + w2 * d2.c2(ph, th)};
  const TanVec rhs = covar_surface(par, w, cfield, p, h);

  Key1Residuals out;
  out.defining = norm(lhs - rhs);

  double z1, z2;
  summary_coefs(par, ph, false, z1, z2);
  const TanVec closed = ricci_op(par, w, p) + TanVec{z1 * w1, z2 * w2};
  out.closed_form = norm((TanVec{-rhs.c1, -rhs.c2}) - closed);
  return out;
}

}  // namespace ellshell

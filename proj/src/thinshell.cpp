#include <ellshell/thinshell.hpp>
#include <ellshell/rng.hpp>

#include <cmath>
#include <stdexcept>

namespace ellshell {

Scenario parse_scenario(const std::string& tag) {
  for (Scenario s : all_scenarios())
    if (scenario_tag(s) == tag) return s;
  throw std::invalid_argument("unknown scenario: " + tag);
}

std::string scenario_tag(Scenario s) {
  switch (s) {
    case Scenario::ScalingNavierTangential: return "scaling-navier-tangential";
    case Scenario::ScalingNavierDivfree: return "scaling-navier-divfree";
    case Scenario::ScalingHodgeTangential: return "scaling-hodge-tangential";
    case Scenario::ScalingHodgeDivfree: return "scaling-hodge-divfree";
    case Scenario::NormalNavier: return "normal-navier";
    case Scenario::NormalHodge: return "normal-hodge";
  }
  return "?";
}

const std::vector<Scenario>& all_scenarios() {
  static const std::vector<Scenario> v = {
      Scenario::ScalingNavierTangential, Scenario::ScalingNavierDivfree,
      Scenario::ScalingHodgeTangential,  Scenario::ScalingHodgeDivfree,
      Scenario::NormalNavier,            Scenario::NormalHodge};
  return v;
}

Chart scenario_chart(Scenario s) {
  return (s == Scenario::NormalNavier || s == Scenario::NormalHodge) ? Chart::Normal
                                                                     : Chart::Scaling;
}

OperatorKind scenario_operator(Scenario s) {
  switch (s) {
    case Scenario::ScalingNavierTangential: return OperatorKind::O1;
    case Scenario::ScalingNavierDivfree: return OperatorKind::O3;
    case Scenario::ScalingHodgeTangential: return OperatorKind::O2;
    case Scenario::ScalingHodgeDivfree: return OperatorKind::O4;
    case Scenario::NormalNavier: return OperatorKind::DefLap;
    case Scenario::NormalHodge: return OperatorKind::Hodge;
  }
  return OperatorKind::Bochner;
}

BCKind scenario_bc(Scenario s) {
  switch (s) {
    case Scenario::ScalingNavierTangential:
    case Scenario::ScalingNavierDivfree:
    case Scenario::NormalNavier: return BCKind::Navier;
    default: return BCKind::Hodge;
  }
}

bool scenario_divfree(Scenario s) {
  return s == Scenario::ScalingNavierDivfree || s == Scenario::ScalingHodgeDivfree ||
         s == Scenario::NormalNavier;
}

namespace {

// scaling-direction relations, kappa sign flipped between Navier and Hodge:
//   Navier eps^0:  k_j A0 + (l/a) A1 + a g^rp e1(A0) = 0
//   Navier eps^1: (k_j + l/a) A1 + 2 (l/a) A2 + a g^rp e1(A1) = 0
ScalarField scaling_next_coef(const EllipsoidParams& par, const ScalarField& prev,
                              int j, int alpha, bool hodge_side, double h) {
  const double a = par.a;
  const ScalarField e1prev = e1_of(par, prev, h);
  const ScalarField prev_copy = prev;
  return ScalarField([=](double ph, double th) {
    const double l = lambda_of({a}, ph);
    const CurvatureData k = curvatures({a}, ph);
    double kj = (j == 1) ? k.kappa1 : k.kappa2;
    if (hodge_side) kj = -kj;
    const double grp = g_up_rho_phi({a}, 1.0, ph);
    const double drv = a * grp * e1prev(ph, th);
    if (alpha == 1) return -(a / l) * (kj * prev_copy(ph, th) + drv);
    return -(a / (2.0 * l)) * ((kj + l / a) * prev_copy(ph, th) + drv);
  });
}

}  // namespace

FrameJet solve_bc_coeffs(const EllipsoidParams& par, Scenario s, const TangentField& u0,
                         double h) {
  FrameJet jet;
  jet.chart = scenario_chart(s);
  jet.a[0][0] = u0.c1;
  jet.a[0][1] = u0.c2;
  jet.a[0][2] = ScalarField(0.0);
  for (int i = 0; i < 3; ++i) jet.a[1][i] = jet.a[2][i] = ScalarField(0.0);

  const double a = par.a;
  if (jet.chart == Chart::Scaling) {
    const bool hodge_side = scenario_bc(s) == BCKind::Hodge;
    for (int j = 1; j <= 2; ++j) {
      jet.a[1][j - 1] = scaling_next_coef(par, jet.a[0][j - 1], j, 1, hodge_side, h);
      jet.a[2][j - 1] = scaling_next_coef(par, jet.a[1][j - 1], j, 2, hodge_side, h);
    }
    if (scenario_divfree(s)) {
      const ScalarField u1 = u0.c1;
      jet.a[1][2] = ScalarField([a, u1](double ph, double th) {
        return (a / lambda_of({a}, ph)) * c313({a}, ph) * u1(ph, th);
      });
    }
  } else {
    const bool hodge_side = scenario_bc(s) == BCKind::Hodge;
    for (int j = 1; j <= 2; ++j) {
      const ScalarField u0j = (j == 1) ? u0.c1 : u0.c2;
      jet.a[1][j - 1] = ScalarField([a, u0j, j, hodge_side](double ph, double th) {
        const CurvatureData k = curvatures({a}, ph);
        const double kj = (j == 1) ? k.kappa1 : k.kappa2;
        return (hodge_side ? kj : -kj) * u0j(ph, th);
      });
      if (hodge_side) {
        jet.a[2][j - 1] = ScalarField([a, u0j, j](double ph, double th) {
          const CurvatureData k = curvatures({a}, ph);
          const double kj = (j == 1) ? k.kappa1 : k.kappa2;
          return kj * kj * u0j(ph, th);
        });
      }
    }
  }
  return jet;
}

AmbientField build_field(const EllipsoidParams& par, const FrameJet& jet) {
  AmbientField v;
  v.chart = jet.chart;
  const auto coeffs = jet.a;
  const Chart chart = jet.chart;
  v.eval = [par, coeffs, chart](const ShellPoint& q) {
    const Frame fr = frame_at(par, q);
    const double t = (chart == Chart::Scaling) ? q.radial - 1.0 : q.radial;
    Vec3 out{};
    double tp = 1.0;
    for (int alpha = 0; alpha < 3; ++alpha) {
      out += tp * (coeffs[alpha][0](q.phi, q.theta) * fr.e1 +
                   coeffs[alpha][1](q.phi, q.theta) * fr.e2 +
                   coeffs[alpha][2](q.phi, q.theta) * fr.n);
      tp *= t;
    }
    return out;
  };
  return v;
}

FrameJet corrupt_coefficient(const FrameJet& jet, int alpha, int i, double factor) {
  FrameJet bad = jet;
  const ScalarField orig = jet.a[alpha][i];
  bad.a[alpha][i] = ScalarField([orig, factor](double p, double t) {
    return factor * orig(p, t);
  });
  return bad;
}

TanVec extrinsic_laplacian_tangential(const EllipsoidParams& par, const AmbientField& v,
                                      const SurfacePoint& p, double h2, int order) {
  const ShellPoint q{v.chart, v.chart == Chart::Scaling ? 1.0 : 0.0, p.phi, p.theta};
  const Vec3 x0 = embed(par, q);
  const Frame fr = frame_at(par, q);
  const Vec3 es[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  Vec3 lap{};
  const Vec3 vc = ambient_eval(par, v, x0);
  for (int axis = 0; axis < 3; ++axis) {
    if (order == 2) {
      const Vec3 vp = ambient_eval(par, v, x0 + h2 * es[axis]);
      const Vec3 vm = ambient_eval(par, v, x0 - h2 * es[axis]);
      lap += (vp - 2.0 * vc + vm) / (h2 * h2);
    } else {
      const Vec3 vp1 = ambient_eval(par, v, x0 + h2 * es[axis]);
      const Vec3 vm1 = ambient_eval(par, v, x0 - h2 * es[axis]);
      const Vec3 vp2 = ambient_eval(par, v, x0 + 2.0 * h2 * es[axis]);
      const Vec3 vm2 = ambient_eval(par, v, x0 - 2.0 * h2 * es[axis]);
      lap += (-1.0 * vp2 + 16.0 * vp1 - 30.0 * vc + 16.0 * vm1 - 1.0 * vm2) /
             (12.0 * h2 * h2);
    }
  }
  const Vec3 neg = -lap;
  return {dot(neg, fr.e1), dot(neg, fr.e2)};
}

TangentField restrict_to_surface(const EllipsoidParams& par, const AmbientField& v) {
  const Chart chart = v.chart;
  const double base = (chart == Chart::Scaling) ? 1.0 : 0.0;
  auto comp = [par, v, chart, base](int i) {
    return ScalarField([par, v, chart, base, i](double ph, double th) {
      const ShellPoint q{chart, base, ph, th};
      const Frame fr = frame_at(par, q);
      const Vec3 val = v.eval(q);
      return dot(val, i == 1 ? fr.e1 : fr.e2);
    });
  };
  return {comp(1), comp(2)};
}

GaussCheck gauss_formula_check(const EllipsoidParams& par, const AmbientField& v,
                               const SurfacePoint& p, double h1, double h2) {
  const ShellPoint q{v.chart, v.chart == Chart::Scaling ? 1.0 : 0.0, p.phi, p.theta};
  const Vec3 x0 = embed(par, q);
  const Frame fr = frame_at(par, q);
  const CurvatureData k = curvatures(par, p.phi);

  GaussCheck out;
  // 4th-order stencil: the oracle must not dominate the error budget of the
  // h^2-limited nested normal-derivative terms assembled below.
  out.oracle = extrinsic_laplacian_tangential(par, v, p, h2, 4);

  const TangentField u0 = restrict_to_surface(par, v);
  const TanVec boch = apply_operator(par, OperatorKind::Bochner, Route::Coefficient, u0, p, h1);
  const TanVec ric = ricci_op(par, u0, p);

  // [n, v]_tan with the chart's normal extension
  const Vec3 dnv = dir_deriv_cart(par, v, x0, fr.n, h1);
  const Vec3 v0 = v.eval(q);
  const Vec3 np = normal_field(par, v.chart, x0 + h1 * v0);
  const Vec3 nm = normal_field(par, v.chart, x0 - h1 * v0);
  const Vec3 br = dnv - (np - nm) / (2.0 * h1);
  const TanVec bracket = {dot(br, fr.e1), dot(br, fr.e2)};

  // (D_n D_n v)_tan by nested centered differences along the normal field;
  // a quarter step keeps this term's truncation below the oracle's while
  // staying far above the roundoff floor of the double division
  const double hn = 0.25 * h2;
  auto dnv_at = [&](const Vec3& x) {
    const Vec3 n = normal_field(par, v.chart, x);
    return (ambient_eval(par, v, x + hn * n) - ambient_eval(par, v, x - hn * n)) /
           (2.0 * hn);
  };
  const Vec3 n0 = fr.n;
  const Vec3 dnn = (dnv_at(x0 + hn * n0) - dnv_at(x0 - hn * n0)) / (2.0 * hn);
  const TanVec second = {dot(dnn, fr.e1), dot(dnn, fr.e2)};

  const double nH = k.kappa1 + k.kappa2;
  TanVec assembled = boch - ric + bracket * nH - second;
  if (v.chart == Chart::Scaling) {
    // D_n n = c e1 for the scaling extension; zero for the tube extension
    const TanVec conv = covar_surface(par, {c313_field(par), ScalarField(0.0)}, u0, p, h1);
    assembled = assembled + conv;
  }
  out.assembled = assembled;
  out.residual = norm(out.oracle - out.assembled);
  return out;
}

double divfree_defect(const EllipsoidParams& par, const TangentField& u0,
                      std::uint64_t seed, double h) {
  return max_surface_divergence(par, u0, 25, seed, 5.0 * kDefaultPoleExclusion, h);
}

ReplayResult replay(const EllipsoidParams& par, Scenario s, const TangentField& u0,
                    const SurfacePoint& p, double h1, double h2, int order,
                    const FrameJet* jet_override) {
  if (scenario_divfree(s) && divfree_defect(par, u0) > 1e-8)
    throw std::invalid_argument("divergence-free scenario needs div_E u0 = 0");
  const FrameJet jet = jet_override ? *jet_override : solve_bc_coeffs(par, s, u0, h1);
  const AmbientField v = build_field(par, jet);
  ReplayResult r;
  r.oracle = extrinsic_laplacian_tangential(par, v, p, h2, order);
  r.intrinsic = apply_operator(par, scenario_operator(s), Route::Structural, u0, p, h1);
  if (s == Scenario::ScalingNavierTangential) {
    // on general tangential data the tangential Navier limit carries a
    // grad(div u0) term that the displayed candidate absorbs only on
    // divergence-free fields; keep the identity exact for the full class
    const ScalarField dv = div_surface(par, u0, h1);
    r.intrinsic = r.intrinsic + TanVec{e1_of(par, dv, h1)(p.phi, p.theta),
                                       e2_of(par, dv, h1)(p.phi, p.theta)};
  }
  r.residual = norm(r.oracle - r.intrinsic);
  return r;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::max(y[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

AuditResult eps_relation_audit(const EllipsoidParams& par, Scenario s, const FrameJet& jet,
                               const std::vector<double>& eps_list, int n_samples,
                               std::uint64_t seed, double delta_pole, double h) {
  if (scenario_chart(s) != Chart::Scaling)
    throw std::invalid_argument("eps relation audit targets the scaling scenarios");
  const bool hodge_side = scenario_bc(s) == BCKind::Hodge;
  const double a = par.a;

  // e1 of each jet coefficient; the radial derivative of the built field is
  // exact (polynomial in eps), only the angular one needs a derivative field.
  std::array<std::array<ScalarField, 3>, 2> e1coef;
  for (int j = 0; j < 2; ++j)
    for (int alpha = 0; alpha < 3; ++alpha) e1coef[j][alpha] = e1_of(par, jet.a[alpha][j], h);

  auto residual_at = [&](double eps, double ph, double th) {
    const double l = lambda_of(par, ph);
    const CurvatureData k = curvatures(par, ph);
    const double grp = g_up_rho_phi(par, 1.0, ph);
    double worst = 0.0;
    for (int j = 0; j < 2; ++j) {
      double v = 0.0, v_rho = 0.0, e1v = 0.0, tp = 1.0;
      for (int alpha = 0; alpha < 3; ++alpha) {
        const double c = jet.a[alpha][j](ph, th);
        v += tp * c;
        if (alpha >= 1) v_rho += alpha * std::pow(eps, alpha - 1) * c;
        e1v += tp * e1coef[j][alpha](ph, th);
        tp *= eps;
      }
      double kj = (j == 0) ? k.kappa1 : k.kappa2;
      if (hodge_side) kj = -kj;
      const double r = kj / (1.0 + eps) * v + (l / a) * v_rho + a * grp / (1.0 + eps) * e1v;
      worst = std::max(worst, std::fabs(r));
    }
    return worst;
  };

  AuditResult out;
  SplitMix64 rng(seed);
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < n_samples; ++i)
    pts.emplace_back(rng.uniform(delta_pole, M_PI - delta_pole), rng.uniform(-M_PI, M_PI));

  for (double e : eps_list) {
    double worst = 0.0;
    for (const auto& [ph, th] : pts) worst = std::max(worst, residual_at(e, ph, th));
    out.eps.push_back(e);
    out.residual.push_back(worst);
  }
  double inner = 0.0;
  for (const auto& [ph, th] : pts) inner = std::max(inner, residual_at(0.0, ph, th));
  out.inner_residual = inner;
  out.slope = fit_loglog_slope(out.eps, out.residual);
  return out;
}

}  // namespace ellshell

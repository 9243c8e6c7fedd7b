#include <ellshell/suites.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include <ellshell/rng.hpp>

namespace ellshell {

namespace {

struct Ctx {
  const RunConfig* cfg = nullptr;
  EllipsoidParams par;
  double tol = 1e-6;  // suite tolerance for the FD-class checks
  std::string suite;
  std::vector<CheckResult>* out = nullptr;
};

std::uint64_t seed_for(const Ctx& c, const std::string& name) {
  std::uint64_t bits = 0;
  std::memcpy(&bits, &c.par.a, sizeof bits);
  const std::string id = c.suite + "." + name;
  return c.cfg->seed ^ fnv1a(id.c_str()) ^ (bits * 0x9e3779b97f4a7c15ull);
}

void rec_max(Ctx& c, const std::string& name, double value, double tol, int n,
             const std::string& note = "") {
  c.out->push_back({c.suite, c.suite + "." + name, c.par.a, "max", value, tol, 0.0,
                    value <= tol, n, note});
}

void rec_min(Ctx& c, const std::string& name, double value, double tol, int n,
             const std::string& note = "") {
  c.out->push_back({c.suite, c.suite + "." + name, c.par.a, "min", value, tol, 0.0,
                    value >= tol, n, note});
}

void rec_band(Ctx& c, const std::string& name, double value, double target, double width,
              int n, const std::string& note = "") {
  c.out->push_back({c.suite, c.suite + "." + name, c.par.a, "band", value, width, target,
                    std::fabs(value - target) <= width, n, note});
}

void rec_info(Ctx& c, const std::string& name, double value, int n,
              const std::string& note = "") {
  c.out->push_back({c.suite, c.suite + "." + name, c.par.a, "info", value, 0.0, 0.0, true,
                    n, note});
}

double rphi(SplitMix64& g, const Ctx& c, double extra = 0.0) {
  const double d = std::max(c.cfg->delta_pole, extra);
  return g.uniform(d, M_PI - d);
}

double rtheta(SplitMix64& g) { return g.uniform(-M_PI, M_PI); }

ShellPoint band_point(SplitMix64& g, const Ctx& c, Chart chart, double extra_pole = 0.0) {
  ShellPoint q;
  q.chart = chart;
  q.phi = rphi(g, c, extra_pole);
  q.theta = rtheta(g);
  if (chart == Chart::Scaling)
    q.radial = g.uniform(1.0 - 0.38, 1.0 + 0.38);
  else
    q.radial = g.uniform(-0.8, 0.8) * sigma_max(c.par);
  return q;
}

ShellPoint surface_q(Chart chart, double phi, double theta) {
  return {chart, chart == Chart::Scaling ? 1.0 : 0.0, phi, theta};
}

// Seeded smooth data at unit scale: raw presets stack four unit-coefficient
// trig terms, so 1/4 keeps values and low-order derivatives O(1).
constexpr double kSeedScale = 0.25;

TangentField unit_random(const EllipsoidParams& par, std::uint64_t seed) {
  return scaled_field(random_field(par, seed), kSeedScale);
}

TangentField unit_divfree(const EllipsoidParams& par, std::uint64_t seed) {
  return scaled_field(random_divfree_field(par, seed), kSeedScale);
}

// Random second-order jet; tangential_surface forces a vanishing normal
// component on the surface itself (the class the boundary identities assume),
// higher coefficients stay fully random as a stress test.
FrameJet random_jet(const EllipsoidParams& par, Chart chart, std::uint64_t seed,
                    bool tangential_surface) {
  FrameJet jet;
  jet.chart = chart;
  for (int alpha = 0; alpha < 3; ++alpha) {
    const TangentField f = unit_random(par, seed + 101 * alpha);
    const TangentField g = unit_random(par, seed + 101 * alpha + 57);
    jet.a[alpha][0] = f.c1;
    jet.a[alpha][1] = f.c2;
    jet.a[alpha][2] = g.c1;
  }
  if (tangential_surface) jet.a[0][2] = ScalarField(0.0);
  return jet;
}

Frame frame_on_surface(const EllipsoidParams& par, double phi, double theta) {
  return frame_at(par, surface_q(Chart::Scaling, phi, theta));
}

// ---------------------------------------------------------------- geometry --

void geometry_frames(Ctx& c) {
  SplitMix64 g(seed_for(c, "frame_orthonormality"));
  const int n = c.cfg->samples;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Chart chart = (i % 2 == 0) ? Chart::Scaling : Chart::Normal;
    const ShellPoint q = band_point(g, c, chart);
    const Frame fr = frame_at(c.par, q);
    const Vec3 v[3] = {fr.e1, fr.e2, fr.n};
    for (int r = 0; r < 3; ++r)
      for (int s = 0; s < 3; ++s)
        worst = std::max(worst, std::fabs(dot(v[r], v[s]) - (r == s ? 1.0 : 0.0)));
    worst = std::max(worst, norm(cross(fr.e1, fr.e2) - fr.n));
  }
  rec_max(c, "frame_orthonormality", worst, 1e-12, n, "Gram matrix and orientation");
}

void geometry_chart_coincidence(Ctx& c) {
  SplitMix64 g(seed_for(c, "chart_frame_coincidence"));
  const int n = c.cfg->samples;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double phi = rphi(g, c), theta = rtheta(g);
    const ShellPoint qs = surface_q(Chart::Scaling, phi, theta);
    const ShellPoint qn = surface_q(Chart::Normal, phi, theta);
    worst = std::max(worst, norm(embed(c.par, qs) - embed(c.par, qn)));
    const Frame fs = frame_at(c.par, qs), fn = frame_at(c.par, qn);
    worst = std::max(worst, norm(fs.e1 - fn.e1));
    worst = std::max(worst, norm(fs.e2 - fn.e2));
    worst = std::max(worst, norm(fs.n - fn.n));
    // both normal extensions restrict to the frame normal on the surface
    const Vec3 x = embed(c.par, qs);
    worst = std::max(worst, norm(normal_field(c.par, Chart::Scaling, x) - fs.n));
    worst = std::max(worst, norm(normal_field(c.par, Chart::Normal, x) - fs.n));
  }
  rec_max(c, "chart_frame_coincidence", worst, 1e-12, n);
}

void geometry_frame_roundtrip(Ctx& c) {
  SplitMix64 g(seed_for(c, "frame_component_roundtrip"));
  const int n = c.cfg->samples;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Chart chart = (i % 2 == 0) ? Chart::Scaling : Chart::Normal;
    const ShellPoint q = band_point(g, c, chart);
    const Frame fr = frame_at(c.par, q);
    const double c1 = g.uniform(-2, 2), c2 = g.uniform(-2, 2), c3 = g.uniform(-2, 2);
    const auto comps = frame_components(c.par, c1 * fr.e1 + c2 * fr.e2 + c3 * fr.n, q);
    worst = std::max({worst, std::fabs(comps[0] - c1), std::fabs(comps[1] - c2),
                      std::fabs(comps[2] - c3)});
  }
  rec_max(c, "frame_component_roundtrip", worst, 1e-12, n);
}

void geometry_metric_inverse(Ctx& c) {
  SplitMix64 g(seed_for(c, "metric_inverse"));
  const int n = c.cfg->samples;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const ShellPoint q = band_point(g, c, Chart::Scaling);
    Mat3 gm, gi;
    metric_scaling(c.par, q, gm, gi);
    worst = std::max(worst, (gm * gi).max_abs_diff(Mat3::identity()));
    // metric entries versus dot products of the closed-form basis
    const ScalingBasis b = scaling_basis(c.par, q);
    const Vec3 col[3] = {b.d_rho, b.d_phi, b.d_theta};
    for (int r = 0; r < 3; ++r)
      for (int s = 0; s < 3; ++s)
        worst = std::max(worst, std::fabs(dot(col[r], col[s]) - gm(r, s)));
  }
  rec_max(c, "metric_inverse", worst, 1e-12, n, "g*g^-1 and basis Gram");
}

void geometry_metric_vs_embedding(Ctx& c) {
  SplitMix64 g(seed_for(c, "metric_vs_embedding_fd"));
  const int n = c.cfg->samples;
  const double h = c.cfg->h1;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Chart chart = (i % 2 == 0) ? Chart::Scaling : Chart::Normal;
    const ShellPoint q = band_point(g, c, chart, 0.05);
    Vec3 col[3];
    for (int k = 0; k < 3; ++k) {
      ShellPoint qp = q, qm = q;
      double* coord_p = (k == 0) ? &qp.radial : (k == 1 ? &qp.phi : &qp.theta);
      double* coord_m = (k == 0) ? &qm.radial : (k == 1 ? &qm.phi : &qm.theta);
      *coord_p += h;
      *coord_m -= h;
      col[k] = (embed(c.par, qp) - embed(c.par, qm)) / (2.0 * h);
    }
    Mat3 gm, gi, gfd;
    if (chart == Chart::Scaling) {
      metric_scaling(c.par, q, gm, gi);
    } else {
      metric_normal(c.par, q.radial, q.phi, gm);
    }
    double scale = 1.0;
    for (int r = 0; r < 3; ++r)
      for (int s = 0; s < 3; ++s) {
        gfd(r, s) = dot(col[r], col[s]);
        scale = std::max(scale, std::fabs(gm(r, s)));
      }
    worst = std::max(worst, gfd.max_abs_diff(gm) / scale);
  }
  rec_max(c, "metric_vs_embedding_fd", worst, c.tol, n, "relative to max metric entry");
}

void geometry_chart_roundtrip(Ctx& c) {
  SplitMix64 g(seed_for(c, "chart_roundtrip"));
  const int n = c.cfg->samples;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Chart chart = (i % 2 == 0) ? Chart::Scaling : Chart::Normal;
    const ShellPoint q = band_point(g, c, chart);
    const ShellPoint r = cart_to_chart(c.par, chart, embed(c.par, q));
    double dth = std::fabs(r.theta - q.theta);
    dth = std::min(dth, 2.0 * M_PI - dth);
    worst = std::max({worst, std::fabs(r.radial - q.radial), std::fabs(r.phi - q.phi),
                      dth * std::sin(q.phi)});
  }
  rec_max(c, "chart_roundtrip", worst, 1e-10, n);
}

void geometry_weingarten(Ctx& c) {
  SplitMix64 g(seed_for(c, "weingarten_eigen"));
  const int n = c.cfg->samples;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Chart chart = (i % 2 == 0) ? Chart::Scaling : Chart::Normal;
    const ShellPoint q = band_point(g, c, chart, 0.05);
    const Frame fr = frame_at(c.par, q);
    double k1 = 0, k2 = 0;
    shell_curvatures(c.par, q, k1, k2);
    // Richardson pair lifts the 2nd-order primitive to 4th order here; the
    // slope check below still consumes the raw primitive
    const double h = c.cfg->h1;
    const Vec3 s1 =
        (4.0 * shape_operator_fd(c.par, q, 1, h / 2) - shape_operator_fd(c.par, q, 1, h)) / 3.0;
    const Vec3 s2 =
        (4.0 * shape_operator_fd(c.par, q, 2, h / 2) - shape_operator_fd(c.par, q, 2, h)) / 3.0;
    worst = std::max(worst, norm(s1 - k1 * fr.e1));
    worst = std::max(worst, norm(s2 - k2 * fr.e2));
  }
  rec_max(c, "weingarten_eigen", worst, c.tol, n, "principal directions on shell leaves");
}

void geometry_weingarten_slope(Ctx& c) {
  SplitMix64 g(seed_for(c, "weingarten_fd_slope"));
  ShellPoint pts[3];
  pts[0] = surface_q(Chart::Scaling, g.uniform(0.5, M_PI - 0.5), rtheta(g));
  pts[1] = band_point(g, c, Chart::Scaling, 0.5);
  pts[2] = band_point(g, c, Chart::Normal, 0.5);
  const std::vector<double> hs = {4e-2, 2e-2, 1e-2, 5e-3};
  std::vector<double> res;
  for (double h : hs) {
    double r = 0.0;
    for (const ShellPoint& q : pts) {
      const Frame fr = frame_at(c.par, q);
      double k1 = 0, k2 = 0;
      shell_curvatures(c.par, q, k1, k2);
      r = std::max(r, norm(shape_operator_fd(c.par, q, 1, h) - k1 * fr.e1));
      r = std::max(r, norm(shape_operator_fd(c.par, q, 2, h) - k2 * fr.e2));
    }
    res.push_back(r);
  }
  rec_band(c, "weingarten_fd_slope", fit_loglog_slope(hs, res), 2.0, 0.2,
           static_cast<int>(hs.size()) * 3, "centered-difference order");
}

void geometry_c313(Ctx& c) {
  SplitMix64 g(seed_for(c, "c313_triple"));
  const int n = c.cfg->samples;
  const double h = c.cfg->h1;
  const double a = c.par.a;
  double worst = 0.0, worst_d = 0.0, worst_sphere = 0.0;
  // 4th-order stencil keeps the FD error below the identity tolerance at
  // extreme aspect ratios
  auto d4 = [&](auto&& f, double p) {
    return (-f(p + 2 * h) + 8.0 * f(p + h) - 8.0 * f(p - h) + f(p - 2 * h)) / (12.0 * h);
  };
  for (int i = 0; i < n; ++i) {
    const double phi = rphi(g, c, 0.05);
    const double l = lambda_of(c.par, phi);
    const double c_formula = c313(c.par, phi);
    // -1/4 e1(log K) with K = 1/lambda^4
    auto logk = [&](double p) { return -4.0 * std::log(lambda_of(c.par, p)); };
    const double c_logk = -0.25 * d4(logk, phi) / l;
    // e1(|grad rho|)/|grad rho| with |grad rho| = lambda/a
    auto gr = [&](double p) { return lambda_of(c.par, p) / a; };
    const double c_grad = d4(gr, phi) / l / gr(phi);
    worst = std::max({worst, std::fabs(c_formula - c_logk), std::fabs(c_formula - c_grad),
                      std::fabs(c_logk - c_grad)});
    const double c_fd = d4([&](double p) { return c313(c.par, p); }, phi);
    worst_d = std::max(worst_d, std::fabs(dc313_dphi(c.par, phi) - c_fd));
    if (a == 1.0) worst_sphere = std::max(worst_sphere, std::fabs(c_formula));
  }
  rec_max(c, "c313_triple", worst, c.tol, n, "formula vs log-curvature vs grad-rho routes");
  rec_max(c, "c313_derivative", worst_d, c.tol, n);
  if (a == 1.0)
    rec_max(c, "sphere_c_vanishes", worst_sphere, 1e-15, n, "structure function on the sphere");
}

void geometry_connection(Ctx& c) {
  SplitMix64 g(seed_for(c, "connection_embedding_fd"));
  const int n = c.cfg->samples;
  const double h = c.cfg->h1;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double phi = rphi(g, c, 0.05), theta = rtheta(g);
    const Frame fr = frame_on_surface(c.par, phi, theta);
    const CurvatureData k = curvatures(c.par, phi);
    const double l = lambda_of(c.par, phi);
    const double gam = gamma_conn(c.par, phi);
    auto e1f = [&](double p, double t) { return frame_on_surface(c.par, p, t).e1; };
    auto e2f = [&](double p, double t) { return frame_on_surface(c.par, p, t).e2; };
    // ambient derivatives of the frame along e1 (phi line) and e2 (theta line)
    const double sp1 = l, sp2 = c.par.a * std::sin(phi);
    const Vec3 d11 = (e1f(phi + h, theta) - e1f(phi - h, theta)) / (2.0 * h * sp1);
    const Vec3 d12 = (e2f(phi + h, theta) - e2f(phi - h, theta)) / (2.0 * h * sp1);
    const Vec3 d21 = (e1f(phi, theta + h) - e1f(phi, theta - h)) / (2.0 * h * sp2);
    const Vec3 d22 = (e2f(phi, theta + h) - e2f(phi, theta - h)) / (2.0 * h * sp2);
    worst = std::max(worst, norm(d11 - k.kappa1 * fr.n));
    worst = std::max(worst, norm(d12));
    worst = std::max(worst, norm(d21 - gam * fr.e2));
    worst = std::max(worst, norm(d22 - (-gam * fr.e1 + k.kappa2 * fr.n)));
  }
  rec_max(c, "connection_embedding_fd", worst, c.tol, n,
          "frame derivatives vs connection + second fundamental form");
}

void run_geometry(Ctx& c) {
  geometry_frames(c);
  geometry_chart_coincidence(c);
  geometry_frame_roundtrip(c);
  geometry_metric_inverse(c);
  geometry_metric_vs_embedding(c);
  geometry_chart_roundtrip(c);
  geometry_weingarten(c);
  geometry_weingarten_slope(c);
  geometry_c313(c);
  geometry_connection(c);
}

// -------------------------------------------------------------- identities --

void identities_helpful(Ctx& c) {
  SplitMix64 g(seed_for(c, "helpful_formulas"));
  const int n = c.cfg->samples;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const HelpfulResiduals r = helpful_suite(c.par, rphi(g, c, 0.05), c.cfg->h1);
    worst = std::max({worst, r.sq_identity, r.e1_a_grp, r.e1_lambda, r.e1_c, r.c_squared});
  }
  rec_max(c, "helpful_formulas", worst, c.tol, n, "five closed-form e1/lambda identities");
}

void identities_normal_derivative_of_normal(Ctx& c) {
  SplitMix64 g(seed_for(c, "normal_derivative_of_normal"));
  const int n = c.cfg->samples;
  const double h = c.cfg->h1;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double phi = rphi(g, c, 0.05), theta = rtheta(g);
    const Frame fr = frame_on_surface(c.par, phi, theta);
    const Vec3 x = embed(c.par, surface_q(Chart::Scaling, phi, theta));
    for (Chart chart : {Chart::Scaling, Chart::Normal}) {
      const Vec3 np = normal_field(c.par, chart, x + h * fr.n);
      const Vec3 nm = normal_field(c.par, chart, x - h * fr.n);
      const Vec3 dn = (np - nm) / (2.0 * h);
      const Vec3 expect =
          (chart == Chart::Scaling) ? c313(c.par, phi) * fr.e1 : Vec3{0, 0, 0};
      worst = std::max(worst, norm(dn - expect));
    }
  }
  rec_max(c, "normal_derivative_of_normal", worst, c.tol, n,
          "c*e1 for the scaling extension, 0 for the tube extension");
}

void identities_normal_derivative_chart(Ctx& c) {
  SplitMix64 g(seed_for(c, "normal_derivative_chart_formula"));
  const int n = c.cfg->samples;
  auto F = [](const Vec3& x) {
    return x.x * x.x * x.z + 0.5 * x.y * x.y - x.z + 0.3 * x.x * x.y;
  };
  const EllipsoidParams par = c.par;
  std::function<double(const ShellPoint&)> fq = [par, F](const ShellPoint& q) {
    return F(embed(par, q));
  };
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Chart chart = (i % 2 == 0) ? Chart::Scaling : Chart::Normal;
    const ShellPoint q = band_point(g, c, chart, 0.05);
    const Vec3 x = embed(c.par, q);
    const Vec3 nrm = frame_at(c.par, q).n;
    const double di = n_deriv_intrinsic(c.par, fq, q, c.cfg->h1);
    const double dc = n_deriv_cartesian(c.par, F, x, nrm, c.cfg->h1);
    worst = std::max(worst, std::fabs(di - dc));
  }
  rec_max(c, "normal_derivative_chart_formula", worst, c.tol, n,
          "two-term chart formula vs Cartesian line derivative");
}

void identities_wedge(Ctx& c) {
  SplitMix64 g(seed_for(c, "wedge_cross_star"));
  const int n = c.cfg->samples;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec3 al{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
    const Vec3 be{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
    worst = std::max(worst, cross_wedge_residual(al, be));
  }
  rec_max(c, "wedge_cross_star", worst, 1e-12, n);
}

void identities_curl_star(Ctx& c) {
  SplitMix64 g(seed_for(c, "curl_exterior_bookkeeping"));
  const int n = std::max(8, c.cfg->samples / 4);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Chart chart = (i % 2 == 0) ? Chart::Scaling : Chart::Normal;
    const AmbientField v = build_field(c.par, random_jet(c.par, chart, g.next(), false));
    const ShellPoint q = band_point(g, c, chart, 0.1);
    worst = std::max(worst, curl_star_residual(c.par, v, embed(c.par, q), c.cfg->h1));
  }
  rec_max(c, "curl_exterior_bookkeeping", worst, 1e-12, n,
          "curl vs sharp-star-d on a shared Jacobian");
}

void identities_lie(Ctx& c) {
  SplitMix64 g(seed_for(c, "lie_derivative_two_route"));
  const int n = c.cfg->samples;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const TangentField x = unit_random(c.par, g.next());
    const TangentField u = unit_random(c.par, g.next());
    const SurfacePoint p{rphi(g, c, 0.05), rtheta(g)};
    const TanVec covariant = lie_deriv_oneform_covariant(c.par, x, u, p, c.cfg->h1);
    const TanVec cartan = lie_deriv_oneform_cartan(c.par, x, u, p, c.cfg->h1);
    worst = std::max(worst, norm(covariant - cartan));
  }
  rec_max(c, "lie_derivative_two_route", worst, c.tol, n, "covariant vs Cartan assembly");
}

void identities_killing(Ctx& c) {
  SplitMix64 g(seed_for(c, "killing_rotation_deformation"));
  const int n = c.cfg->samples;
  const TangentField rot = preset_field(c.par, "rotation");
  const SymTensorField def = deformation_surface(c.par, rot, c.cfg->h1);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double phi = rphi(g, c, 0.05), theta = rtheta(g);
    worst = std::max({worst, std::fabs(def.t11(phi, theta)), std::fabs(def.t12(phi, theta)),
                      std::fabs(def.t22(phi, theta))});
  }
  rec_max(c, "killing_rotation_deformation", worst, 1e-10, n,
          "the rotation field is Killing for every a");
}

void identities_stream(Ctx& c) {
  SplitMix64 g(seed_for(c, "stream_divergence_free"));
  const int nf = 8;
  double worst = 0.0;
  for (int i = 0; i < nf; ++i) {
    const TangentField u = random_divfree_field(c.par, g.next());
    worst = std::max(worst, max_surface_divergence(c.par, u, c.cfg->samples / nf + 1,
                                                   g.next(), c.cfg->delta_pole, c.cfg->h1));
  }
  rec_max(c, "stream_divergence_free", worst, 1e-10, c.cfg->samples,
          "rotated stream gradients have exact zero divergence");
}

void run_identities(Ctx& c) {
  identities_helpful(c);
  identities_normal_derivative_of_normal(c);
  identities_normal_derivative_chart(c);
  identities_wedge(c);
  identities_curl_star(c);
  identities_lie(c);
  identities_killing(c);
  identities_stream(c);
}

// ---------------------------------------------------------------- boundary --

void boundary_navier(Ctx& c) {
  SplitMix64 g(seed_for(c, "navier_routes"));
  const int n = c.cfg->samples;
  double worst = 0.0, worst_pen = 0.0;
  for (int i = 0; i < n; ++i) {
    const Chart chart = (i % 2 == 0) ? Chart::Scaling : Chart::Normal;
    const AmbientField v = build_field(c.par, random_jet(c.par, chart, g.next(), true));
    const ShellPoint q = surface_q(chart, rphi(g, c, 0.1), rtheta(g));
    const BCResidual r = navier_residual(c.par, v, q, 0.0, c.cfg->h1);
    worst = std::max(worst, r.max_route_gap);
    worst_pen = std::max(worst_pen, std::fabs(r.penetration));
  }
  rec_max(c, "navier_routes", worst, c.tol, n, "deformation vs bracket vs curl routes");
  rec_max(c, "tangential_penetration", worst_pen, 1e-12, n,
          "surface-tangential jets have no normal component");
}

void boundary_hodge(Ctx& c) {
  SplitMix64 g(seed_for(c, "hodge_routes"));
  const int n = c.cfg->samples;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Chart chart = (i % 2 == 0) ? Chart::Scaling : Chart::Normal;
    const AmbientField v = build_field(c.par, random_jet(c.par, chart, g.next(), true));
    const ShellPoint q = surface_q(chart, rphi(g, c, 0.1), rtheta(g));
    worst = std::max(worst, hodge_residual(c.par, v, q, c.cfg->h1).max_route_gap);
  }
  rec_max(c, "hodge_routes", worst, c.tol, n, "curl-cross vs interior-product routes");
}

void boundary_nh(Ctx& c) {
  SplitMix64 g(seed_for(c, "nh_relation"));
  const int n = c.cfg->samples;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Chart chart = (i % 2 == 0) ? Chart::Scaling : Chart::Normal;
    const AmbientField v = build_field(c.par, random_jet(c.par, chart, g.next(), true));
    const ShellPoint q = surface_q(chart, rphi(g, c, 0.1), rtheta(g));
    worst = std::max(worst, nh_relation_residual(c.par, v, q, c.cfg->h1));
  }
  rec_max(c, "nh_relation", worst, c.tol, n,
          "one-form Lie derivative vs bracket-minus-shape bridge");
}

void boundary_friction(Ctx& c) {
  SplitMix64 g(seed_for(c, "friction_linearity"));
  const int n = std::max(8, c.cfg->samples / 4);
  const double gamma_f = 0.7;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Chart chart = (i % 2 == 0) ? Chart::Scaling : Chart::Normal;
    const FrameJet jet = random_jet(c.par, chart, g.next(), true);
    const AmbientField v = build_field(c.par, jet);
    const double phi = rphi(g, c, 0.1), theta = rtheta(g);
    const ShellPoint q = surface_q(chart, phi, theta);
    const BCResidual r0 = navier_residual(c.par, v, q, 0.0, c.cfg->h1);
    const BCResidual r1 = navier_residual(c.par, v, q, gamma_f, c.cfg->h1);
    const TanVec vt{jet.a[0][0](phi, theta), jet.a[0][1](phi, theta)};
    worst = std::max(worst, norm(r1.route_a - r0.route_a - vt * gamma_f));
    worst = std::max(worst, norm(r1.route_b - r0.route_b - vt * gamma_f));
    worst = std::max(worst, norm(r1.route_c - r0.route_c - vt * gamma_f));
  }
  rec_max(c, "friction_linearity", worst, 1e-12, n,
          "friction shifts every route by gamma * v_tan exactly");
}

void boundary_solved_jets(Ctx& c) {
  SplitMix64 g(seed_for(c, "solved_jet_surface_residual"));
  const int npts = std::clamp(c.cfg->samples / 16, 3, 12);
  double worst = 0.0;
  for (Scenario s : all_scenarios()) {
    const TangentField u0 = scenario_divfree(s) ? unit_divfree(c.par, g.next())
                                                : unit_random(c.par, g.next());
    const FrameJet jet = solve_bc_coeffs(c.par, s, u0, c.cfg->h1);
    const AmbientField v = build_field(c.par, jet);
    for (int i = 0; i < npts; ++i) {
      const ShellPoint q = surface_q(scenario_chart(s), rphi(g, c, 0.15), rtheta(g));
      if (scenario_bc(s) == BCKind::Navier) {
        const BCResidual r = navier_residual(c.par, v, q, 0.0, c.cfg->h1);
        worst = std::max({worst, norm(r.route_a), norm(r.route_b), norm(r.route_c)});
      } else {
        const BCResidual r = hodge_residual(c.par, v, q, c.cfg->h1);
        worst = std::max({worst, norm(r.route_a), norm(r.route_b)});
      }
    }
  }
  rec_max(c, "solved_jet_surface_residual", worst, 1e-5, npts * 6,
          "power-matched jets satisfy their boundary condition on the surface");
}

void run_boundary(Ctx& c) {
  boundary_navier(c);
  boundary_hodge(c);
  boundary_nh(c);
  boundary_friction(c);
  boundary_solved_jets(c);
}

// --------------------------------------------------------------- operators --

const std::vector<OperatorKind>& all_operators() {
  static const std::vector<OperatorKind> v = {
      OperatorKind::Bochner, OperatorKind::Hodge, OperatorKind::DefLap, OperatorKind::O1,
      OperatorKind::O2,      OperatorKind::O3,    OperatorKind::O4};
  return v;
}

bool needs_divfree(OperatorKind k) {
  return k == OperatorKind::O1 || k == OperatorKind::O2 || k == OperatorKind::O3 ||
         k == OperatorKind::O4;
}

void operators_routes(Ctx& c) {
  for (OperatorKind k : all_operators()) {
    const std::string tag = operator_tag(k);
    if (!c.cfg->op_filter.empty() && tag != c.cfg->op_filter) continue;
    SplitMix64 g(seed_for(c, "route_agreement." + tag));
    const int n = c.cfg->samples;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const TangentField u = needs_divfree(k) ? unit_divfree(c.par, g.next())
                                              : unit_random(c.par, g.next());
      const SurfacePoint p{rphi(g, c, 0.05), rtheta(g)};
      const TanVec s = apply_operator(c.par, k, Route::Structural, u, p, c.cfg->h1);
      const TanVec cc = apply_operator(c.par, k, Route::Coefficient, u, p, c.cfg->h1);
      worst = std::max(worst, norm(s - cc));
    }
    rec_max(c, "route_agreement." + tag, worst, c.tol, n,
            needs_divfree(k) ? "divergence-free data" : "unconstrained data");
  }
}

void operators_key1(Ctx& c) {
  SplitMix64 g(seed_for(c, "key1"));
  const int n = c.cfg->samples;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const TangentField w = unit_random(c.par, g.next());
    const SurfacePoint p{rphi(g, c, 0.05), rtheta(g)};
    const Key1Residuals r = key1_check(c.par, w, p, c.cfg->h1);
    worst = std::max({worst, r.defining, r.closed_form});
  }
  rec_max(c, "key1", worst, 1e-6, n, "covariant derivative of the c*e1 field");
}

void operators_differences(Ctx& c) {
  SplitMix64 g(seed_for(c, "difference_o1_o3"));
  const int n = c.cfg->samples;
  double worst13 = 0.0, worst24 = 0.0;
  for (int i = 0; i < n; ++i) {
    const TangentField u = unit_divfree(c.par, g.next());
    const SurfacePoint p{rphi(g, c, 0.05), rtheta(g)};
    const double cc = c313(c.par, p.phi);
    const TanVec shift{2.0 * cc * cc * u.c1(p.phi, p.theta), 0.0};
    // cross-route differences do not cancel the stencil error, so lift the
    // h^2 term with a Richardson pair
    auto diff4 = [&](OperatorKind oa, OperatorKind ob) {
      auto d = [&](double h) {
        return apply_operator(c.par, oa, Route::Structural, u, p, h) -
               apply_operator(c.par, ob, Route::Coefficient, u, p, h) - shift;
      };
      return (d(c.cfg->h1 / 2) * 4.0 - d(c.cfg->h1)) * (1.0 / 3.0);
    };
    worst13 = std::max(worst13, norm(diff4(OperatorKind::O1, OperatorKind::O3)));
    worst24 = std::max(worst24, norm(diff4(OperatorKind::O2, OperatorKind::O4)));
  }
  rec_max(c, "difference_o1_o3", worst13, 1e-6, n, "cross-route gap equals 2 c^2 u^1 e1");
  rec_max(c, "difference_o2_o4", worst24, 1e-6, n, "cross-route gap equals 2 c^2 u^1 e1");
}

void operators_sphere(Ctx& c) {
  if (c.par.a != 1.0) return;
  SplitMix64 g(seed_for(c, "sphere_collapse"));
  const int n = std::max(16, c.cfg->samples / 4);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const TangentField u = unit_random(c.par, g.next());
    const SurfacePoint p{rphi(g, c, 0.05), rtheta(g)};
    auto st = [&](OperatorKind k) {
      return apply_operator(c.par, k, Route::Structural, u, p, c.cfg->h1);
    };
    const TanVec dl = st(OperatorKind::DefLap), hg = st(OperatorKind::Hodge);
    worst = std::max(worst, norm(st(OperatorKind::O1) - dl));
    worst = std::max(worst, norm(st(OperatorKind::O3) - dl));
    worst = std::max(worst, norm(st(OperatorKind::O2) - hg));
    worst = std::max(worst, norm(st(OperatorKind::O4) - hg));
  }
  rec_max(c, "sphere_collapse", worst, 1e-10, n,
          "all four candidates degenerate at a = 1");
}

void operators_killing(Ctx& c) {
  SplitMix64 g(seed_for(c, "killing_annihilation"));
  const int n = std::max(16, c.cfg->samples / 4);
  const TangentField rot = preset_field(c.par, "rotation");
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const SurfacePoint p{rphi(g, c, 0.05), rtheta(g)};
    for (Route r : {Route::Structural, Route::Coefficient})
      worst = std::max(worst, norm(apply_operator(c.par, OperatorKind::DefLap, r, rot, p,
                                                  c.cfg->h1)));
  }
  rec_max(c, "killing_annihilation", worst, 1e-6, n,
          "the deformation Laplacian kills the rotation field");
}

void operators_coefficient_forms(Ctx& c) {
  SplitMix64 g(seed_for(c, "coefficient_interpretation"));
  const int n = c.cfg->samples;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    worst = std::max(worst, coefficient_forms_residual(c.par, rphi(g, c, 0.01)));
  rec_max(c, "coefficient_interpretation", worst, 1e-10, n,
          "curvature-interpreted tables equal the rational-in-lambda forms");
}

void operators_selfadjoint(Ctx& c) {
  SplitMix64 g(seed_for(c, "weak_selfadjoint"));
  const TangentField u = unit_random(c.par, g.next());
  const TangentField w = unit_random(c.par, g.next());
  // composite Gauss-Legendre in phi, periodic midpoint in theta
  static const double glx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                0.5384693101056831, 0.9061798459386640};
  static const double glw[5] = {0.2369268850561891, 0.4786286704993665,
                                0.5688888888888889, 0.4786286704993665,
                                0.2369268850561891};
  const double dq = std::max(c.cfg->delta_pole, 0.02);
  const int nseg = 16, nth = 24;
  const double dth = 2.0 * M_PI / nth;
  auto pairing = [&](OperatorKind k, const TangentField& x, const TangentField& y) {
    double acc = 0.0;
    const double seg = (M_PI - 2.0 * dq) / nseg;
    for (int s = 0; s < nseg; ++s) {
      const double mid = dq + (s + 0.5) * seg;
      for (int node = 0; node < 5; ++node) {
        const double phi = mid + 0.5 * seg * glx[node];
        const double wphi = 0.5 * seg * glw[node];
        const double area = c.par.a * lambda_of(c.par, phi) * std::sin(phi);
        for (int t = 0; t < nth; ++t) {
          const double th = -M_PI + (t + 0.5) * dth;
          const TanVec ax = apply_operator(c.par, k, Route::Structural, x, {phi, th},
                                           c.cfg->h1);
          acc += wphi * dth * area * (ax.c1 * y.c1(phi, th) + ax.c2 * y.c2(phi, th));
        }
      }
    }
    return acc;
  };
  double worst = 0.0;
  for (OperatorKind k : {OperatorKind::Bochner, OperatorKind::Hodge, OperatorKind::DefLap}) {
    const double i1 = pairing(k, u, w);
    const double i2 = pairing(k, w, u);
    worst = std::max(worst, std::fabs(i1 - i2) / std::max({std::fabs(i1), std::fabs(i2), 1.0}));
  }
  rec_max(c, "weak_selfadjoint", worst, 1e-4, nseg * 5 * nth,
          "L2 pairing symmetry of the three classical operators");
}

void run_operators(Ctx& c) {
  operators_routes(c);
  operators_key1(c);
  operators_differences(c);
  operators_sphere(c);
  operators_killing(c);
  operators_coefficient_forms(c);
  operators_selfadjoint(c);
}

// ------------------------------------------------------------------ limits --

void limits_gauss(Ctx& c) {
  SplitMix64 g(seed_for(c, "gauss_formula"));
  const int n = c.cfg->samples;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Chart chart = (i % 2 == 0) ? Chart::Scaling : Chart::Normal;
    const AmbientField v = build_field(c.par, random_jet(c.par, chart, g.next(), true));
    const SurfacePoint p{rphi(g, c, 0.15), rtheta(g)};
    worst = std::max(worst, gauss_formula_check(c.par, v, p, c.cfg->h1, c.cfg->h2).residual);
  }
  rec_max(c, "gauss_formula", worst, 1e-5, n,
          "extrinsic Laplacian vs curvature-assembled surface terms");
}

TangentField scenario_datum(const EllipsoidParams& par, Scenario s, std::uint64_t seed) {
  return scenario_divfree(s) ? unit_divfree(par, seed) : unit_random(par, seed);
}

void limits_replay(Ctx& c) {
  const int npts = std::clamp(c.cfg->samples / 8, 4, 40);
  for (Scenario s : all_scenarios()) {
    const std::string tag = scenario_tag(s);
    SplitMix64 g(seed_for(c, "replay." + tag));
    const TangentField u0 = scenario_datum(c.par, s, g.next());
    double worst = 0.0;
    for (int i = 0; i < npts; ++i) {
      const SurfacePoint p{rphi(g, c, 0.3), rtheta(g)};
      // 4th-order oracle: the residual gauges the identity, not the stencil;
      // the h^2 decay has its own check below on the 2nd-order oracle
      worst = std::max(worst, replay(c.par, s, u0, p, c.cfg->h1, c.cfg->h2, 4).residual);
    }
    rec_max(c, "replay." + tag, worst, c.tol, npts,
            "extrinsic oracle vs intrinsic " + operator_tag(scenario_operator(s)));
  }
}

void limits_replay_slope(Ctx& c) {
  const std::vector<double> hs = {8e-3, 4e-3, 2e-3};
  for (Scenario s : all_scenarios()) {
    const std::string tag = scenario_tag(s);
    SplitMix64 g(seed_for(c, "replay_slope." + tag));
    const TangentField u0 = scenario_datum(c.par, s, g.next());
    SurfacePoint pts[3];
    for (auto& p : pts) p = {rphi(g, c, 0.3), rtheta(g)};
    std::vector<double> res;
    for (double h : hs) {
      double r = 0.0;
      for (const SurfacePoint& p : pts)
        r = std::max(r, replay(c.par, s, u0, p, c.cfg->h1, h, 2).residual);
      res.push_back(r);
    }
    rec_band(c, "replay_slope." + tag, fit_loglog_slope(hs, res), 2.0, 0.3,
             static_cast<int>(hs.size()) * 3, "oracle step refinement");
  }
}

void limits_replay_negative(Ctx& c) {
  SplitMix64 g(seed_for(c, "replay_negative_control"));
  double worst_ratio = 1e300;
  for (Scenario s : all_scenarios()) {
    const TangentField u0 = scenario_datum(c.par, s, g.next());
    const FrameJet jet = solve_bc_coeffs(c.par, s, u0, c.cfg->h1);
    const FrameJet bad = corrupt_coefficient(jet, 1, 0, 1.1);
    double base = 0.0, corrupted = 0.0;
    for (int i = 0; i < 3; ++i) {
      const SurfacePoint p{rphi(g, c, 0.3), rtheta(g)};
      base = std::max(base, replay(c.par, s, u0, p, c.cfg->h1, c.cfg->h2, 2, &jet).residual);
      corrupted = std::max(
          corrupted, replay(c.par, s, u0, p, c.cfg->h1, c.cfg->h2, 2, &bad).residual);
    }
    worst_ratio = std::min(worst_ratio, corrupted / std::max(base, 1e-300));
  }
  rec_min(c, "replay_negative_control", worst_ratio, 10.0, 18,
          "a 10 percent first-order corruption must inflate the residual");
}

void limits_eps_audit(Ctx& c) {
  const std::vector<double> eps = {0.2, 0.1, 0.05, 0.025};
  const std::vector<Scenario> scaling = {
      Scenario::ScalingNavierTangential, Scenario::ScalingNavierDivfree,
      Scenario::ScalingHodgeTangential, Scenario::ScalingHodgeDivfree};
  double inner_worst = 0.0;
  for (Scenario s : scaling) {
    const std::string tag = scenario_tag(s);
    SplitMix64 g(seed_for(c, "eps_audit." + tag));
    const TangentField u0 = scenario_datum(c.par, s, g.next());
    const FrameJet jet = solve_bc_coeffs(c.par, s, u0, c.cfg->h1);
    const AuditResult ar = eps_relation_audit(c.par, s, jet, eps, 32, g.next(),
                                              std::max(c.cfg->delta_pole, 0.15), c.cfg->h1);
    inner_worst = std::max(inner_worst, ar.inner_residual);
    const double res_max = *std::max_element(ar.residual.begin(), ar.residual.end());
    if (res_max < 1e-12) {
      // degenerate shapes (sphere, Navier side) satisfy the relation at every
      // eps, not just to second order; a decay slope is unmeasurable then
      rec_max(c, "eps_audit." + tag, res_max, 1e-12, 32,
              "outer-leaf relation holds identically on this shape");
    } else {
      rec_min(c, "eps_audit." + tag, ar.slope, 1.8, 32,
              "outer-leaf relation decays quadratically for solved jets");
    }
  }
  rec_info(c, "audit_inner_residual", inner_worst, 32,
           "surface relation for solved jets; same derivative path, near roundoff");

  SplitMix64 g(seed_for(c, "eps_audit_negative"));
  double worst = 0.0;
  for (Scenario s : {Scenario::ScalingNavierTangential, Scenario::ScalingHodgeTangential}) {
    const TangentField u0 = unit_random(c.par, g.next());
    FrameJet flat;
    flat.chart = Chart::Scaling;
    flat.a[0][0] = u0.c1;
    flat.a[0][1] = u0.c2;
    const AuditResult ar = eps_relation_audit(c.par, s, flat, eps, 32, g.next(),
                                              std::max(c.cfg->delta_pole, 0.15), c.cfg->h1);
    worst = std::max(worst, std::fabs(ar.slope));
  }
  rec_max(c, "eps_audit_negative", worst, 0.5, 32,
          "unsolved jets show no decay in the outer-leaf relation");
}

void run_limits(Ctx& c) {
  limits_gauss(c);
  limits_replay(c);
  limits_replay_slope(c);
  limits_replay_negative(c);
  limits_eps_audit(c);
}

double suite_default_tol(const std::string& suite) {
  if (suite == "operators") return 1e-5;
  if (suite == "limits") return 1e-4;
  return 1e-6;  // geometry, identities, boundary
}

}  // namespace

const std::vector<std::string>& all_suite_names() {
  static const std::vector<std::string> v = {"geometry", "identities", "boundary",
                                             "operators", "limits"};
  return v;
}

std::vector<CheckResult> run_suite(const std::string& suite, const RunConfig& cfg) {
  std::vector<CheckResult> out;
  for (double a : cfg.a_values) {
    Ctx c;
    c.cfg = &cfg;
    c.par = EllipsoidParams{a};
    c.suite = suite;
    c.out = &out;
    c.tol = suite_default_tol(suite);
    if (auto it = cfg.tol_override.find(suite); it != cfg.tol_override.end())
      c.tol = it->second;
    if (suite == "geometry")
      run_geometry(c);
    else if (suite == "identities")
      run_identities(c);
    else if (suite == "boundary")
      run_boundary(c);
    else if (suite == "operators")
      run_operators(c);
    else if (suite == "limits")
      run_limits(c);
    else
      throw std::invalid_argument("unknown suite: " + suite);
  }
  return out;
}

std::vector<CheckResult> run_all(const RunConfig& cfg) {
  std::vector<CheckResult> out;
  const std::vector<std::string>& names =
      cfg.suites.empty() ? all_suite_names() : cfg.suites;
  for (const std::string& s : names) {
    std::vector<CheckResult> part = run_suite(s, cfg);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

int count_failures(const std::vector<CheckResult>& results) {
  int n = 0;
  for (const CheckResult& r : results)
    if (!r.passed) ++n;
  return n;
}

}  // namespace ellshell

#include <ellshell/fields.hpp>
#include <ellshell/rng.hpp>

#include <cmath>
#include <stdexcept>

namespace ellshell {

ScalarField ScalarField::d_phi(double h) const {
  if (fp) {
    ScalarField d(fp);
    if (fpp) d.fp = fpp;
    if (fpt) d.ft = fpt;
    return d;
  }
  auto g = f;
  return ScalarField([g, h](double p, double t) { return (g(p + h, t) - g(p - h, t)) / (2.0 * h); });
}

ScalarField ScalarField::d_theta(double h) const {
  if (ft) {
    ScalarField d(ft);
    if (fpt) d.fp = fpt;
    if (ftt) d.ft = ftt;
    return d;
  }
  auto g = f;
  return ScalarField([g, h](double p, double t) { return (g(p, t + h) - g(p, t - h)) / (2.0 * h); });
}

double TrigPoly::eval(double phi, double theta) const {
  double s = 0.0;
  const double sp = std::sin(phi), cp = std::cos(phi);
  for (const auto& t : terms) {
    double v = t.coef * std::pow(sp, t.p) * std::pow(cp, t.q);
    v *= t.is_cos ? std::cos(t.m * theta) : std::sin(t.m * theta);
    s += v;
  }
  return s;
}

TrigPoly TrigPoly::d_phi() const {
  TrigPoly r;
  for (const auto& t : terms) {
    if (t.p > 0) r.terms.push_back({t.coef * t.p, t.p - 1, t.q + 1, t.m, t.is_cos});
    if (t.q > 0) r.terms.push_back({-t.coef * t.q, t.p + 1, t.q - 1, t.m, t.is_cos});
  }
  return r;
}

TrigPoly TrigPoly::d_theta() const {
  TrigPoly r;
  for (const auto& t : terms) {
    if (t.m == 0) continue;
    // cos(m th) -> -m sin(m th); sin(m th) -> m cos(m th)
    r.terms.push_back({t.is_cos ? -t.coef * t.m : t.coef * t.m, t.p, t.q, t.m, !t.is_cos});
  }
  return r;
}

TrigPoly TrigPoly::scaled(double s) const {
  TrigPoly r = *this;
  for (auto& t : r.terms) t.coef *= s;
  return r;
}

TrigPoly TrigPoly::div_sin() const {
  TrigPoly r = *this;
  for (auto& t : r.terms) {
    if (t.p < 1) throw std::invalid_argument("div_sin needs sin^p with p >= 1 in every term");
    t.p -= 1;
  }
  return r;
}

ScalarField TrigPoly::field() const {
  const TrigPoly p0 = *this;
  const TrigPoly dp = d_phi(), dt = d_theta();
  const TrigPoly dpp = dp.d_phi(), dpt = dp.d_theta(), dtt = dt.d_theta();
  auto wrap = [](const TrigPoly& tp) {
    return [tp](double phi, double theta) { return tp.eval(phi, theta); };
  };
  ScalarField f(wrap(p0));
  f.fp = wrap(dp);
  f.ft = wrap(dt);
  f.fpp = wrap(dpp);
  f.fpt = wrap(dpt);
  f.ftt = wrap(dtt);
  return f;
}

Vec3 ambient_eval(const EllipsoidParams& par, const AmbientField& v, const Vec3& x) {
  return v.eval(cart_to_chart(par, v.chart, x));
}

std::array<double, 3> frame_components(const EllipsoidParams& par, const Vec3& v,
                                       const ShellPoint& q) {
  const Frame fr = frame_at(par, q);
  return {dot(v, fr.e1), dot(v, fr.e2), dot(v, fr.n)};
}

ScalarField e1_of(const EllipsoidParams& par, const ScalarField& f, double h) {
  const ScalarField d = f.d_phi(h);
  const double a = par.a;
  return ScalarField([d, a](double p, double t) { return d(p, t) / lambda_of({a}, p); });
}

ScalarField e2_of(const EllipsoidParams& par, const ScalarField& f, double h) {
  const ScalarField d = f.d_theta(h);
  const double a = par.a;
  return ScalarField([d, a](double p, double t) { return d(p, t) / (a * std::sin(p)); });
}

TangentField covar_e1(const EllipsoidParams& par, const TangentField& u, double h) {
  return {e1_of(par, u.c1, h), e1_of(par, u.c2, h)};
}

TangentField covar_e2(const EllipsoidParams& par, const TangentField& u, double h) {
  const ScalarField d1 = e2_of(par, u.c1, h), d2 = e2_of(par, u.c2, h);
  const ScalarField u1 = u.c1, u2 = u.c2;
  const double a = par.a;
  TangentField r;
  r.c1 = ScalarField([d1, u2, a](double p, double t) {
    return d1(p, t) - gamma_conn({a}, p) * u2(p, t);
  });
  r.c2 = ScalarField([d2, u1, a](double p, double t) {
    return d2(p, t) + gamma_conn({a}, p) * u1(p, t);
  });
  return r;
}

TanVec covar_surface(const EllipsoidParams& par, const TangentField& x,
                     const TangentField& y, const SurfacePoint& p, double h) {
  const TangentField d1 = covar_e1(par, y, h), d2 = covar_e2(par, y, h);
  const double x1 = x.c1(p.phi, p.theta), x2 = x.c2(p.phi, p.theta);
  return {x1 * d1.c1(p.phi, p.theta) + x2 * d2.c1(p.phi, p.theta),
          x1 * d1.c2(p.phi, p.theta) + x2 * d2.c2(p.phi, p.theta)};
}

TangentField surface_lie_bracket(const EllipsoidParams& par, const TangentField& x,
                                 const TangentField& y, double h) {
  // torsion-free: [x,y] = covar_x y - covar_y x
  const TangentField dy1 = covar_e1(par, y, h), dy2 = covar_e2(par, y, h);
  const TangentField dx1 = covar_e1(par, x, h), dx2 = covar_e2(par, x, h);
  auto comp = [=](int j) {
    return ScalarField([=](double p, double t) {
      const double x1 = x.c1(p, t), x2 = x.c2(p, t);
      const double y1 = y.c1(p, t), y2 = y.c2(p, t);
      const auto& a1 = (j == 1) ? dy1.c1 : dy1.c2;
      const auto& a2 = (j == 1) ? dy2.c1 : dy2.c2;
      const auto& b1 = (j == 1) ? dx1.c1 : dx1.c2;
      const auto& b2 = (j == 1) ? dx2.c1 : dx2.c2;
      return x1 * a1(p, t) + x2 * a2(p, t) - y1 * b1(p, t) - y2 * b2(p, t);
    });
  };
  return {comp(1), comp(2)};
}

ScalarField div_surface(const EllipsoidParams& par, const TangentField& u, double h) {
  const ScalarField d1 = e1_of(par, u.c1, h), d2 = e2_of(par, u.c2, h);
  const ScalarField u1 = u.c1;
  const double a = par.a;
  return ScalarField([d1, d2, u1, a](double p, double t) {
    return d1(p, t) + d2(p, t) + gamma_conn({a}, p) * u1(p, t);
  });
}

ScalarField curl2_surface(const EllipsoidParams& par, const TangentField& u, double h) {
  const ScalarField d1 = e1_of(par, u.c2, h), d2 = e2_of(par, u.c1, h);
  const ScalarField u2 = u.c2;
  const double a = par.a;
  return ScalarField([d1, d2, u2, a](double p, double t) {
    return d1(p, t) - d2(p, t) + gamma_conn({a}, p) * u2(p, t);
  });
}

SymTensorField deformation_surface(const EllipsoidParams& par, const TangentField& u, double h) {
  const ScalarField e1u1 = e1_of(par, u.c1, h), e1u2 = e1_of(par, u.c2, h);
  const ScalarField e2u1 = e2_of(par, u.c1, h), e2u2 = e2_of(par, u.c2, h);
  const ScalarField u1 = u.c1, u2 = u.c2;
  const double a = par.a;
  SymTensorField r;
  r.t11 = e1u1;
  r.t22 = ScalarField([e2u2, u1, a](double p, double t) {
    return e2u2(p, t) + gamma_conn({a}, p) * u1(p, t);
  });
  r.t12 = ScalarField([e1u2, e2u1, u2, a](double p, double t) {
    return 0.5 * (e1u2(p, t) + e2u1(p, t) - gamma_conn({a}, p) * u2(p, t));
  });
  return r;
}

TangentField div_sym_tensor(const EllipsoidParams& par, const SymTensorField& t, double h) {
  const ScalarField a11 = e1_of(par, t.t11, h), a12 = e2_of(par, t.t12, h);
  const ScalarField b12 = e1_of(par, t.t12, h), b22 = e2_of(par, t.t22, h);
  const ScalarField t11 = t.t11, t12 = t.t12, t22 = t.t22;
  const double a = par.a;
  TangentField r;
  r.c1 = ScalarField([a11, a12, t11, t22, a](double p, double th) {
    return a11(p, th) + a12(p, th) + gamma_conn({a}, p) * (t11(p, th) - t22(p, th));
  });
  r.c2 = ScalarField([b12, b22, t12, a](double p, double th) {
    return b12(p, th) + b22(p, th) + 2.0 * gamma_conn({a}, p) * t12(p, th);
  });
  return r;
}

TanVec lie_deriv_oneform_covariant(const EllipsoidParams& par, const TangentField& x,
                                   const TangentField& u, const SurfacePoint& p, double h) {
  // (L_x u)_i = g(covar_x u, e_i) + g(u, covar_{e_i} x)
  const TanVec cxu = covar_surface(par, x, u, p, h);
  const TangentField dx1 = covar_e1(par, x, h), dx2 = covar_e2(par, x, h);
  const double u1 = u.c1(p.phi, p.theta), u2 = u.c2(p.phi, p.theta);
  return {cxu.c1 + u1 * dx1.c1(p.phi, p.theta) + u2 * dx1.c2(p.phi, p.theta),
          cxu.c2 + u1 * dx2.c1(p.phi, p.theta) + u2 * dx2.c2(p.phi, p.theta)};
}

TanVec lie_deriv_oneform_cartan(const EllipsoidParams& par, const TangentField& x,
                                const TangentField& u, const SurfacePoint& p, double h) {
  // i_x d(u_flat) + d i_x(u_flat); d(u_flat) = xi e^1 ^ e^2
  const double xi = curl2_surface(par, u, h)(p.phi, p.theta);
  const double x1 = x.c1(p.phi, p.theta), x2 = x.c2(p.phi, p.theta);
  const ScalarField ux([xc1 = x.c1, xc2 = x.c2, uc1 = u.c1, uc2 = u.c2](double ph, double th) {
    return xc1(ph, th) * uc1(ph, th) + xc2(ph, th) * uc2(ph, th);
  });
  const double d1 = e1_of(par, ux, h)(p.phi, p.theta);
  const double d2 = e2_of(par, ux, h)(p.phi, p.theta);
  return {-xi * x2 + d1, xi * x1 + d2};
}

Vec3 dir_deriv_cart(const EllipsoidParams& par, const AmbientField& v, const Vec3& x,
                    const Vec3& dir, double h) {
  const Vec3 vp = ambient_eval(par, v, x + h * dir);
  const Vec3 vm = ambient_eval(par, v, x - h * dir);
  return (vp - vm) / (2.0 * h);
}

Mat3 jacobian_cart(const EllipsoidParams& par, const AmbientField& v, const Vec3& x, double h) {
  Mat3 j;
  const Vec3 es[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int c = 0; c < 3; ++c) {
    const Vec3 d = dir_deriv_cart(par, v, x, es[c], h);
    j(0, c) = d.x;
    j(1, c) = d.y;
    j(2, c) = d.z;
  }
  return j;
}

double divergence_cart(const EllipsoidParams& par, const AmbientField& v, const Vec3& x, double h) {
  const Mat3 j = jacobian_cart(par, v, x, h);
  return j(0, 0) + j(1, 1) + j(2, 2);
}

Vec3 curl_cart(const EllipsoidParams& par, const AmbientField& v, const Vec3& x, double h) {
  const Mat3 j = jacobian_cart(par, v, x, h);
  return {j(2, 1) - j(1, 2), j(0, 2) - j(2, 0), j(1, 0) - j(0, 1)};
}

Vec3 lie_bracket_cart(const EllipsoidParams& par, const AmbientField& xf,
                      const AmbientField& yf, const Vec3& x, double h) {
  const Vec3 xv = ambient_eval(par, xf, x);
  const Vec3 yv = ambient_eval(par, yf, x);
  return dir_deriv_cart(par, yf, x, xv, h) - dir_deriv_cart(par, xf, x, yv, h);
}

double n_deriv_intrinsic(const EllipsoidParams& par,
                         const std::function<double(const ShellPoint&)>& f,
                         const ShellPoint& q, double h) {
  if (q.chart == Chart::Normal) {
    ShellPoint qp = q, qm = q;
    qp.radial += h;
    qm.radial -= h;
    return (f(qp) - f(qm)) / (2.0 * h);
  }
  ShellPoint rp = q, rm = q, pp = q, pm = q;
  rp.radial += h;
  rm.radial -= h;
  pp.phi += h;
  pm.phi -= h;
  const double l = lambda_of(par, q.phi);
  const double f_rho = (f(rp) - f(rm)) / (2.0 * h);
  const double e1f = (f(pp) - f(pm)) / (2.0 * h * q.radial * l);
  return (l / par.a) * f_rho + par.a * q.radial * g_up_rho_phi(par, q.radial, q.phi) * e1f;
}

double n_deriv_cartesian(const EllipsoidParams& par,
                         const std::function<double(const Vec3&)>& f, const Vec3& x,
                         const Vec3& n, double h) {
  (void)par;
  return (f(x + h * n) - f(x - h * n)) / (2.0 * h);
}

double cross_wedge_residual(const Vec3& alpha, const Vec3& beta) {
  // wedge coefficients of alpha ^ beta on dx^dy, dx^dz, dy^dz
  const double cxy = alpha.x * beta.y - alpha.y * beta.x;
  const double cxz = alpha.x * beta.z - alpha.z * beta.x;
  const double cyz = alpha.y * beta.z - alpha.z * beta.y;
  // star: dx^dy -> dz, dx^dz -> -dy, dy^dz -> dx
  const Vec3 star = {cyz, -cxz, cxy};
  return norm(cross(alpha, beta) - star);
}

double curl_star_residual(const EllipsoidParams& par, const AmbientField& v, const Vec3& x,
                          double h) {
  const Mat3 j = jacobian_cart(par, v, x, h);
  // (dv)_ij = d_i v_j - d_j v_i with d_i = column index of the Jacobian
  const double dxy = j(1, 0) - j(0, 1);
  const double dxz = j(2, 0) - j(0, 2);
  const double dyz = j(2, 1) - j(1, 2);
  const Vec3 star_du = {dyz, -dxz, dxy};
  return norm(curl_cart(par, v, x, h) - star_du);
}

// ---- presets ----

static ScalarField over_lambda(const EllipsoidParams& par, const TrigPoly& g) {
  // g(phi,theta)/lambda(phi) with analytic first partials
  const double a = par.a;
  const TrigPoly gp = g.d_phi(), gt = g.d_theta();
  ScalarField f([g, a](double p, double t) { return g.eval(p, t) / lambda_of({a}, p); });
  f.fp = [g, gp, a](double p, double t) {
    const double l = lambda_of({a}, p);
    return gp.eval(p, t) / l - g.eval(p, t) * dlambda_dphi({a}, p) / (l * l);
  };
  f.ft = [gt, a](double p, double t) { return gt.eval(p, t) / lambda_of({a}, p); };
  return f;
}

TangentField stream_to_field(const EllipsoidParams& par, const TrigPoly& psi) {
  // u = (-e2 psi) e1 + (e1 psi) e2; exactly divergence-free on E
  TangentField u;
  u.c1 = psi.d_theta().div_sin().scaled(-1.0 / par.a).field();
  u.c2 = over_lambda(par, psi.d_phi());
  return u;
}

static TrigPoly random_trig(SplitMix64& rng, bool for_stream) {
  TrigPoly tp;
  const int n_terms = 4;
  for (int i = 0; i < n_terms; ++i) {
    TrigTerm t;
    t.coef = rng.uniform(-1.0, 1.0);
    t.m = rng.uniform_int(0, 2);
    // theta-dependent terms need p >= 2 so that rotated gradients stay smooth
    t.p = (for_stream && t.m > 0) ? rng.uniform_int(2, 4) : rng.uniform_int(2, 3);
    t.q = rng.uniform_int(0, 1);
    t.is_cos = rng.uniform_int(0, 1) == 1;
    tp.terms.push_back(t);
  }
  return tp;
}

TangentField random_field(const EllipsoidParams& par, std::uint64_t seed) {
  (void)par;
  SplitMix64 rng(seed);
  return {random_trig(rng, false).field(), random_trig(rng, false).field()};
}

TangentField random_divfree_field(const EllipsoidParams& par, std::uint64_t seed) {
  SplitMix64 rng(seed ^ 0x5eedf1e1dULL);
  return stream_to_field(par, random_trig(rng, true));
}

TangentField preset_field(const EllipsoidParams& par, const std::string& name) {
  if (name == "rotation") {
    // the coordinate field d_theta: components (0, a sin phi)
    TrigPoly p{{{par.a, 1, 0, 0, true}}};
    return {ScalarField(0.0), p.field()};
  }
  if (name == "meridian") {
    TrigPoly p{{{1.0, 2, 0, 0, true}}};
    return {p.field(), ScalarField(0.0)};
  }
  auto starts = [&name](const char* pre) { return name.rfind(pre, 0) == 0; };
  if (starts("mixed:m=")) {
    const int m = std::stoi(name.substr(8));
    TrigPoly p1{{{1.0, 2, 0, m, true}}};
    TrigPoly p2{{{1.0, 2, 0, m, false}}};
    return {p1.field(), p2.field()};
  }
  if (starts("random:seed=")) return random_field(par, std::stoull(name.substr(12)));
  if (starts("stream:seed=")) return random_divfree_field(par, std::stoull(name.substr(12)));
  throw std::invalid_argument("unknown field preset: " + name);
}

double max_surface_divergence(const EllipsoidParams& par, const TangentField& u,
                              int n_samples, std::uint64_t seed, double delta_pole,
                              double h) {
  SplitMix64 rng(seed);
  const ScalarField d = div_surface(par, u, h);
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double phi = rng.uniform(delta_pole, M_PI - delta_pole);
    const double theta = rng.uniform(-M_PI, M_PI);
    worst = std::max(worst, std::fabs(d(phi, theta)));
  }
  return worst;
}

ScalarField scaled_field(const ScalarField& f, double s) {
  ScalarField r;
  auto wrap = [s](const ScalarField::Fn& fn) -> ScalarField::Fn {
    if (!fn) return nullptr;
    return [s, fn](double p, double t) { return s * fn(p, t); };
  };
  r.f = wrap(f.f);
  r.fp = wrap(f.fp);
  r.ft = wrap(f.ft);
  r.fpp = wrap(f.fpp);
  r.fpt = wrap(f.fpt);
  r.ftt = wrap(f.ftt);
  return r;
}

TangentField scaled_field(const TangentField& u, double s) {
  return {scaled_field(u.c1, s), scaled_field(u.c2, s)};
}

}  // namespace ellshell

#include <ellshell/geometry.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace ellshell {

double lambda_of(const EllipsoidParams& par, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return std::sqrt(par.a * par.a * c * c + s * s);
}

double dlambda_dphi(const EllipsoidParams& par, double phi) {
  // d/dphi sqrt(a^2 c^2 + s^2) = (1 - a^2) s c / lambda
  return (1.0 - par.a * par.a) * std::sin(phi) * std::cos(phi) / lambda_of(par, phi);
}

static Vec3 embed_scaling(const EllipsoidParams& par, double rho, double phi, double theta) {
  const double s = std::sin(phi);
  return {par.a * rho * s * std::cos(theta), par.a * rho * s * std::sin(theta),
          rho * std::cos(phi)};
}

static Vec3 surface_normal(const EllipsoidParams& par, double phi, double theta) {
  // grad rho / |grad rho| on E: (sin phi cos theta, sin phi sin theta, a cos phi)/lambda
  const double l = lambda_of(par, phi), s = std::sin(phi);
  return {s * std::cos(theta) / l, s * std::sin(theta) / l, par.a * std::cos(phi) / l};
}

Vec3 embed(const EllipsoidParams& par, const ShellPoint& q) {
  if (q.chart == Chart::Scaling) return embed_scaling(par, q.radial, q.phi, q.theta);
  return embed_scaling(par, 1.0, q.phi, q.theta) + q.radial * surface_normal(par, q.phi, q.theta);
}

ShellPoint cart_to_chart(const EllipsoidParams& par, Chart chart, const Vec3& x) {
  const double r = std::hypot(x.x, x.y);
  const double theta = std::atan2(x.y, x.x);
  if (chart == Chart::Scaling) {
    const double rho = std::sqrt(r * r + par.a * par.a * x.z * x.z) / par.a;
    return {Chart::Scaling, rho, std::atan2(r / par.a, x.z), theta};
  }
  // Normal chart: solve r = sin(phi)(a + sigma/lambda), z = cos(phi)(1 + a sigma/lambda)
  double phi = std::atan2(r / par.a, x.z);
  double sigma = 0.0;
  for (int it = 0; it < 50; ++it) {
    const double s = std::sin(phi), c = std::cos(phi);
    const double l = lambda_of(par, phi), dl = dlambda_dphi(par, phi);
    const double f1 = s * (par.a + sigma / l) - r;
    const double f2 = c * (1.0 + par.a * sigma / l) - x.z;
    // Jacobian in (phi, sigma)
    const double j11 = c * (par.a + sigma / l) - s * sigma * dl / (l * l);
    const double j12 = s / l;
    const double j21 = -s * (1.0 + par.a * sigma / l) - c * par.a * sigma * dl / (l * l);
    const double j22 = par.a * c / l;
    const double det = j11 * j22 - j12 * j21;
    const double dphi = (f1 * j22 - f2 * j12) / det;
    const double dsig = (j11 * f2 - j21 * f1) / det;
    phi -= dphi;
    sigma -= dsig;
    if (std::fabs(dphi) + std::fabs(dsig) < 1e-15) break;
  }
  return {Chart::Normal, sigma, phi, theta};
}

ScalingBasis scaling_basis(const EllipsoidParams& par, const ShellPoint& q) {
  const double s = std::sin(q.phi), c = std::cos(q.phi);
  const double ct = std::cos(q.theta), st = std::sin(q.theta);
  const double rho = q.radial;
  ScalingBasis b;
  b.d_rho = {par.a * s * ct, par.a * s * st, c};
  b.d_phi = {par.a * rho * c * ct, par.a * rho * c * st, -rho * s};
  b.d_theta = {-par.a * rho * s * st, par.a * rho * s * ct, 0.0};
  return b;
}

double g_up_rho_phi(const EllipsoidParams& par, double rho, double phi) {
  return (1.0 - par.a * par.a) * std::sin(phi) * std::cos(phi) / (par.a * par.a * rho);
}

void metric_scaling(const EllipsoidParams& par, const ShellPoint& q, Mat3& g, Mat3& g_inv) {
  const double a = par.a, rho = q.radial;
  const double s = std::sin(q.phi), c = std::cos(q.phi);
  const double l2 = a * a * c * c + s * s;
  g = Mat3{};
  g(0, 0) = a * a * s * s + c * c;
  g(0, 1) = g(1, 0) = (a * a - 1.0) * rho * s * c;
  g(1, 1) = rho * rho * l2;
  g(2, 2) = a * a * rho * rho * s * s;
  g_inv = Mat3{};
  g_inv(0, 0) = l2 / (a * a);
  g_inv(0, 1) = g_inv(1, 0) = g_up_rho_phi(par, rho, q.phi);
  g_inv(1, 1) = (a * a * s * s + c * c) / (a * a * rho * rho);
  g_inv(2, 2) = 1.0 / (a * a * rho * rho * s * s);
}

void metric_normal(const EllipsoidParams& par, double sigma, double phi, Mat3& g) {
  const double l = lambda_of(par, phi), s = std::sin(phi);
  const double f1 = 1.0 + sigma * par.a / (l * l * l);   // = 1 - sigma*kappa1
  const double f2 = 1.0 + sigma / (par.a * l);           // = 1 - sigma*kappa2
  g = Mat3{};
  g(0, 0) = 1.0;
  g(1, 1) = f1 * f1 * l * l;
  g(2, 2) = f2 * f2 * par.a * par.a * s * s;
}

Frame frame_at(const EllipsoidParams& par, const ShellPoint& q) {
  // Both charts: the frame of the base surface point, which is transported
  // unchanged along rays (scaling) and normal lines (normal).
  const double l = lambda_of(par, q.phi);
  const double s = std::sin(q.phi), c = std::cos(q.phi);
  const double ct = std::cos(q.theta), st = std::sin(q.theta);
  Frame f;
  f.e1 = {par.a * c * ct / l, par.a * c * st / l, -s / l};
  f.e2 = {-st, ct, 0.0};
  f.n = surface_normal(par, q.phi, q.theta);
  return f;
}

Vec3 normal_field(const EllipsoidParams& par, Chart chart, const Vec3& x) {
  if (chart == Chart::Scaling) {
    // grad rho direction: (x/a^2, y/a^2, z), normalized
    Vec3 g = {x.x / (par.a * par.a), x.y / (par.a * par.a), x.z};
    return normalized(g);
  }
  const ShellPoint q = cart_to_chart(par, Chart::Normal, x);
  return surface_normal(par, q.phi, q.theta);
}

CurvatureData curvatures(const EllipsoidParams& par, double phi) {
  const double l = lambda_of(par, phi);
  CurvatureData k;
  k.kappa1 = -par.a / (l * l * l);
  k.kappa2 = -1.0 / (par.a * l);
  k.gauss = k.kappa1 * k.kappa2;
  k.sqrt_gauss = 1.0 / (l * l);
  k.grad_rho_norm = l / par.a;
  return k;
}

void shell_curvatures(const EllipsoidParams& par, const ShellPoint& q,
                      double& k1, double& k2) {
  const CurvatureData k = curvatures(par, q.phi);
  if (q.chart == Chart::Scaling) {
    k1 = k.kappa1 / q.radial;
    k2 = k.kappa2 / q.radial;
  } else {
    k1 = k.kappa1 / (1.0 - q.radial * k.kappa1);
    k2 = k.kappa2 / (1.0 - q.radial * k.kappa2);
  }
}

Vec3 shape_operator_fd(const EllipsoidParams& par, const ShellPoint& q, int dir, double h) {
  // -D_X n with X = e1 or e2, stepping the chart coordinate and rescaling by
  // the coordinate speed; coordinate stepping keeps truncation bounded at the
  // pole band edge.
  ShellPoint qp = q, qm = q;
  double speed;
  const double l = lambda_of(par, q.phi);
  if (dir == 1) {
    qp.phi += h;
    qm.phi -= h;
    if (q.chart == Chart::Scaling) {
      speed = q.radial * l;
    } else {
      const CurvatureData k = curvatures(par, q.phi);
      speed = (1.0 - q.radial * k.kappa1) * l;
    }
  } else {
    qp.theta += h;
    qm.theta -= h;
    const double base = par.a * std::sin(q.phi);
    if (q.chart == Chart::Scaling) {
      speed = q.radial * base;
    } else {
      const CurvatureData k = curvatures(par, q.phi);
      speed = (1.0 - q.radial * k.kappa2) * base;
    }
  }
  const Vec3 np = normal_field(par, q.chart, embed(par, qp));
  const Vec3 nm = normal_field(par, q.chart, embed(par, qm));
  return (nm - np) / (2.0 * h * speed);
}

double c313(const EllipsoidParams& par, double phi) {
  const double l = lambda_of(par, phi);
  return (1.0 - par.a * par.a) * std::sin(phi) * std::cos(phi) / (l * l * l);
}

double dc313_dphi(const EllipsoidParams& par, double phi) {
  // dc/dphi = lambda * e1(c), with e1(c) in closed form below
  const double l = lambda_of(par, phi), a2 = par.a * par.a;
  const double l2 = l * l, l4 = l2 * l2, l6 = l4 * l2;
  return l * (-2.0 * (1.0 + a2) / l4 + 1.0 / l2 + 3.0 * a2 / l6);
}

double c313_shell(const EllipsoidParams& par, double rho, double phi) {
  return c313(par, phi) / rho;
}

double gamma_conn(const EllipsoidParams& par, double phi) {
  return std::cos(phi) / (std::sin(phi) * lambda_of(par, phi));
}

HelpfulResiduals helpful_suite(const EllipsoidParams& par, double phi, double h) {
  const double a = par.a, a2 = a * a;
  const double l = lambda_of(par, phi);
  const double l2 = l * l, l4 = l2 * l2, l6 = l4 * l2;
  const double grp = g_up_rho_phi(par, 1.0, phi);
  const double c = c313(par, phi);

  // 4th-order centered stencil: the residuals gauge the identities, so the
  // stencil error must stay below them even at extreme aspect ratios
  auto e1_fd = [&](auto&& f) {
    return (-f(phi + 2 * h) + 8.0 * f(phi + h) - 8.0 * f(phi - h) + f(phi - 2 * h)) /
           (12.0 * h * l);
  };

  HelpfulResiduals r;
  r.sq_identity = std::fabs(a2 * grp * grp - (l2 - a2 - l4 + a2 * l2) / a2);
  r.e1_a_grp = std::fabs(e1_fd([&](double p) { return a * g_up_rho_phi(par, 1.0, p); }) -
                         (1.0 / (a * l) + a / l - 2.0 * l / a));
  r.e1_lambda = std::fabs(e1_fd([&](double p) { return lambda_of(par, p); }) - a2 * grp / l2);
  r.e1_c = std::fabs(e1_fd([&](double p) { return c313(par, p); }) -
                     (-2.0 * (1.0 + a2) / l4 + 1.0 / l2 + 3.0 * a2 / l6));
  r.c_squared = std::fabs(c * c - (1.0 / l4 - a2 / l6 - 1.0 / l2 + a2 / l4));
  return r;
}

double sigma_max(const EllipsoidParams& par) {
  const double a = par.a;
  const double max_kappa = (a >= 1.0) ? a : 1.0 / (a * a);
  return 0.5 / max_kappa;
}

void validate_point(const EllipsoidParams& par, const ShellPoint& q, double delta_pole) {
  if (!(q.phi >= delta_pole && q.phi <= M_PI - delta_pole))
    throw std::domain_error("shell point inside pole exclusion band, phi=" + std::to_string(q.phi));
  if (q.chart == Chart::Scaling) {
    if (std::fabs(q.radial - 1.0) > kRhoBandHalfWidth)
      throw std::domain_error("rho outside shell band");
  } else {
    if (std::fabs(q.radial) > sigma_max(par))
      throw std::domain_error("sigma outside tube radius");
  }
}

}  // namespace ellshell

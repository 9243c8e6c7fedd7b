#pragma once

#include <ellshell/vec3.hpp>

namespace ellshell {

// Ellipsoid of revolution E = { x^2 + y^2 + a^2 z^2 = a^2 }, a > 0.
// a > 1 oblate, a < 1 prolate, a = 1 unit sphere.
struct EllipsoidParams {
  double a = 1.0;
};

// Two charts on the shell around E:
//   Scaling: level sets of rho(x,y,z) = sqrt((x^2+y^2+a^2 z^2)/a^2), i.e.
//            rescaled ellipsoids rho*E. radial = rho, surface at rho = 1.
//   Normal:  tube coordinates x = p(phi,theta) + sigma*N_p. radial = sigma,
//            surface at sigma = 0.
enum class Chart { Scaling, Normal };

struct SurfacePoint {
  double phi = 0.0;    // colatitude in (0, pi)
  double theta = 0.0;  // azimuth
};

struct ShellPoint {
  Chart chart = Chart::Scaling;
  double radial = 1.0;
  double phi = 0.0;
  double theta = 0.0;
};

// Orthonormal frame {e1 (meridian), e2 (azimuth), n (outward normal)}.
struct Frame {
  Vec3 e1, e2, n;
};

struct CurvatureData {
  double kappa1 = 0.0;        // principal curvature, e1 direction: -a/lambda^3
  double kappa2 = 0.0;        // principal curvature, e2 direction: -1/(a*lambda)
  double gauss = 0.0;         // kappa1*kappa2 = 1/lambda^4
  double sqrt_gauss = 0.0;    // 1/lambda^2
  double grad_rho_norm = 0.0; // |grad rho| on E = lambda/a
};

// lambda(phi) = sqrt(a^2 cos^2 phi + sin^2 phi); the single profile function
// almost every closed form below is rational in.
double lambda_of(const EllipsoidParams& par, double phi);
double dlambda_dphi(const EllipsoidParams& par, double phi);

// Chart maps and their inverses. Scaling inversion is exact; Normal inversion
// runs a 2d Newton iteration in (phi, sigma).
Vec3 embed(const EllipsoidParams& par, const ShellPoint& q);
ShellPoint cart_to_chart(const EllipsoidParams& par, Chart chart, const Vec3& x);

// Coordinate vector fields of the scaling chart at q.
struct ScalingBasis {
  Vec3 d_rho, d_phi, d_theta;
};
ScalingBasis scaling_basis(const EllipsoidParams& par, const ShellPoint& q);

// Scaling-chart metric and its closed-form inverse, order (rho, phi, theta).
void metric_scaling(const EllipsoidParams& par, const ShellPoint& q, Mat3& g, Mat3& g_inv);

// Normal-chart metric diag(1, (1-sigma*kappa1)^2 lambda^2,
// (1-sigma*kappa2)^2 a^2 sin^2 phi), order (sigma, phi, theta).
void metric_normal(const EllipsoidParams& par, double sigma, double phi, Mat3& g);

// g^{rho phi} of the scaling chart, the one off-diagonal inverse entry.
double g_up_rho_phi(const EllipsoidParams& par, double rho, double phi);

// Orthonormal frame at a shell point. In the scaling chart the frame is
// constant along rays; in the normal chart it is constant along normal lines,
// so both charts return the frame of the underlying surface point.
Frame frame_at(const EllipsoidParams& par, const ShellPoint& q);

// Outward unit normal field as a function of an arbitrary nearby Cartesian
// point (the extension used by finite differences): Scaling extends by
// grad rho/|grad rho|, Normal extends by parallel transport along normal lines.
Vec3 normal_field(const EllipsoidParams& par, Chart chart, const Vec3& x);

CurvatureData curvatures(const EllipsoidParams& par, double phi);

// Principal curvatures of the shell leaf through q: kappa_i/rho for rescaled
// ellipsoids, kappa_i/(1 - sigma*kappa_i) for tube offsets.
void shell_curvatures(const EllipsoidParams& par, const ShellPoint& q,
                      double& k1, double& k2);

// Weingarten map -D_X n of the shell leaf through q, by centered FD of the
// normal field along the coordinate line of frame direction dir (1 or 2).
Vec3 shape_operator_fd(const EllipsoidParams& par, const ShellPoint& q, int dir, double h);

// Structure function c(phi) with [e1, n] = ... + c*n and D_n n = c*e1:
// c = a^2 g^{rho phi} / lambda^3 = (1-a^2) sin phi cos phi / lambda^3 at rho=1.
double c313(const EllipsoidParams& par, double phi);
double dc313_dphi(const EllipsoidParams& par, double phi);
double c313_shell(const EllipsoidParams& par, double rho, double phi);  // ~ 1/rho

// Surface connection in the frame: the only nonzero coefficients are
// Gamma^2_{21} = cot(phi)/lambda and Gamma^1_{22} = -cot(phi)/lambda.
double gamma_conn(const EllipsoidParams& par, double phi);

// Closed-form identities tying lambda, g^{rho phi} and c together; each value
// is |lhs - rhs| with the derivative sides evaluated by 4th-order centered FD
// of step h.
struct HelpfulResiduals {
  double sq_identity;      // a^2 (g^rp)^2 = (l^2 - a^2 - l^4 + a^2 l^2)/a^2
  double e1_a_grp;         // e1(a g^rp) = 1/(a l) + a/l - 2 l/a
  double e1_lambda;        // e1(lambda) = a^2 g^rp / l^2
  double e1_c;             // e1(c) = -2(1+a^2)/l^4 + 1/l^2 + 3 a^2/l^6
  double c_squared;        // c^2 = 1/l^4 - a^2/l^6 - 1/l^2 + a^2/l^4
};
HelpfulResiduals helpful_suite(const EllipsoidParams& par, double phi, double h);

// Validity bounds. Shell band for the scaling chart and the tube radius for
// the normal chart (half the global focal distance 1/max|kappa|).
double sigma_max(const EllipsoidParams& par);
constexpr double kRhoBandHalfWidth = 0.5;
constexpr double kDefaultPoleExclusion = 1e-2;

// Throws std::domain_error outside the chart's validity region.
void validate_point(const EllipsoidParams& par, const ShellPoint& q,
                    double delta_pole = kDefaultPoleExclusion);

}  // namespace ellshell

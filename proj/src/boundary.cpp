#include <ellshell/boundary.hpp>

#include <algorithm>
#include <cmath>

namespace ellshell {

namespace {

struct PointData {
  Vec3 x, v0;
  Frame fr;
  Vec3 dnv;        // D_n v
  Vec3 dv1, dv2;   // D_{e1} v, D_{e2} v
  double k1, k2;   // leaf principal curvatures
};

PointData gather(const EllipsoidParams& par, const AmbientField& v, const ShellPoint& q,
                 double h) {
  PointData d;
  d.x = embed(par, q);
  d.fr = frame_at(par, q);
  d.v0 = v.eval(q);
  d.dnv = dir_deriv_cart(par, v, d.x, d.fr.n, h);
  d.dv1 = dir_deriv_cart(par, v, d.x, d.fr.e1, h);
  d.dv2 = dir_deriv_cart(par, v, d.x, d.fr.e2, h);
  shell_curvatures(par, q, d.k1, d.k2);
  return d;
}

// [n, v] = D_n v - D_v n with the chart's normal extension
Vec3 bracket_nv(const EllipsoidParams& par, const PointData& d, Chart chart, double h) {
  const Vec3 np = normal_field(par, chart, d.x + h * d.v0);
  const Vec3 nm = normal_field(par, chart, d.x - h * d.v0);
  return d.dnv - (np - nm) / (2.0 * h);
}

double pairwise_gap(const TanVec& a, const TanVec& b, const TanVec& c, bool three) {
  double g = norm(a - b);
  if (three) g = std::max({g, norm(a - c), norm(b - c)});
  return g;
}

}  // namespace

BCResidual navier_residual(const EllipsoidParams& par, const AmbientField& v,
                           const ShellPoint& q, double gamma_friction, double h) {
  const PointData d = gather(par, v, q, h);
  const double v1 = dot(d.v0, d.fr.e1), v2 = dot(d.v0, d.fr.e2);
  const TanVec friction = {gamma_friction * v1, gamma_friction * v2};

  BCResidual r;
  r.penetration = dot(d.v0, d.fr.n);

  // a) 2 (Def v n)_i = g(D_n v, e_i) + g(D_{e_i} v, n)
  r.route_a = TanVec{dot(d.dnv, d.fr.e1) + dot(d.dv1, d.fr.n),
                     dot(d.dnv, d.fr.e2) + dot(d.dv2, d.fr.n)} + friction;

  // b) [n, v]_tan
  const Vec3 br = bracket_nv(par, d, v.chart, h);
  r.route_b = TanVec{dot(br, d.fr.e1), dot(br, d.fr.e2)} + friction;

  // c) curl v x n + 2 s v
  const Vec3 cxn = cross(curl_cart(par, v, d.x, h), d.fr.n);
  r.route_c = TanVec{dot(cxn, d.fr.e1) + 2.0 * d.k1 * v1,
                     dot(cxn, d.fr.e2) + 2.0 * d.k2 * v2} + friction;

  r.max_route_gap = pairwise_gap(r.route_a, r.route_b, r.route_c, true);
  return r;
}

BCResidual hodge_residual(const EllipsoidParams& par, const AmbientField& v,
                          const ShellPoint& q, double h) {
  const PointData d = gather(par, v, q, h);

  BCResidual r;
  r.penetration = dot(d.v0, d.fr.n);

  // a) curl v x n
  const Vec3 cxn = cross(curl_cart(par, v, d.x, h), d.fr.n);
  r.route_a = {dot(cxn, d.fr.e1), dot(cxn, d.fr.e2)};

  // b) (i_n d v_flat)_i = g(D_n v, e_i) - g(D_{e_i} v, n)
  r.route_b = {dot(d.dnv, d.fr.e1) - dot(d.dv1, d.fr.n),
               dot(d.dnv, d.fr.e2) - dot(d.dv2, d.fr.n)};

  r.route_c = r.route_b;
  r.max_route_gap = pairwise_gap(r.route_a, r.route_b, r.route_c, false);
  return r;
}

double nh_relation_residual(const EllipsoidParams& par, const AmbientField& v,
                            const ShellPoint& q, double h) {
  const PointData d = gather(par, v, q, h);

  // lhs: pullback of L_n(v_flat) = i_n d(v_flat) + d(i_n v_flat); the second
  // term is the leaf differential of g(v,n), kept for fields that are only
  // approximately tangential.
  TanVec lhs = {dot(d.dnv, d.fr.e1) - dot(d.dv1, d.fr.n),
                dot(d.dnv, d.fr.e2) - dot(d.dv2, d.fr.n)};
  auto vn = [&](const ShellPoint& s) {
    return dot(v.eval(s), frame_at(par, s).n);
  };
  ShellPoint pp = q, pm = q, tp = q, tm = q;
  pp.phi += h;
  pm.phi -= h;
  tp.theta += h;
  tm.theta -= h;
  double speed1, speed2;
  const double l = lambda_of(par, q.phi);
  if (q.chart == Chart::Scaling) {
    speed1 = q.radial * l;
    speed2 = q.radial * par.a * std::sin(q.phi);
  } else {
    const CurvatureData k = curvatures(par, q.phi);
    speed1 = (1.0 - q.radial * k.kappa1) * l;
    speed2 = (1.0 - q.radial * k.kappa2) * par.a * std::sin(q.phi);
  }
  lhs.c1 += (vn(pp) - vn(pm)) / (2.0 * h * speed1);
  lhs.c2 += (vn(tp) - vn(tm)) / (2.0 * h * speed2);

  // rhs: [n,v]_tan - 2 s v
  const Vec3 br = bracket_nv(par, d, v.chart, h);
  const double v1 = dot(d.v0, d.fr.e1), v2 = dot(d.v0, d.fr.e2);
  const TanVec rhs = {dot(br, d.fr.e1) - 2.0 * d.k1 * v1,
                      dot(br, d.fr.e2) - 2.0 * d.k2 * v2};
  return norm(lhs - rhs);
}

}  // namespace ellshell

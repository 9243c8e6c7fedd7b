#pragma once

#include <ellshell/fields.hpp>

namespace ellshell {

enum class BCKind { Navier, Hodge };

// Tangential boundary-condition residual at a shell point, assembled by
// independent routes that must agree for fields tangential to the leaf:
//   Navier: a) 2 (Def v  n)_tan        (deformation route)
//           b) [n, v]_tan              (commutator route)
//           c) curl v x n + 2 s v      (rotation / shape-operator route)
//   Hodge:  a) curl v x n
//           b) i_n d(v_flat) tangential components
// plus gamma * v_tan on every Navier route when friction is present.
struct BCResidual {
  TanVec route_a, route_b, route_c;
  double max_route_gap = 0.0;  // max pairwise route disagreement
  double penetration = 0.0;    // g(v, n), reported, not part of the gap
};

BCResidual navier_residual(const EllipsoidParams& par, const AmbientField& v,
                           const ShellPoint& q, double gamma_friction = 0.0,
                           double h = kDefaultH1);

BCResidual hodge_residual(const EllipsoidParams& par, const AmbientField& v,
                          const ShellPoint& q, double h = kDefaultH1);

// | ((L_n v_flat)_sharp)_tan - ([n,v]_tan - 2 s v) | : the bridge identity
// between the one-form and vector-field normal derivatives.
double nh_relation_residual(const EllipsoidParams& par, const AmbientField& v,
                            const ShellPoint& q, double h = kDefaultH1);

}  // namespace ellshell

#pragma once

#include <vector>

#include "wnls/functionals.hpp"

namespace wnls {

// Everything here works on the cached component integrals; no field is ever
// rescaled inside these routines. Along u^t(x,y) = t^(d/2) u(tx,y):
//   E(u^t) = a_y/2 B + t^2/2 A + s_p t^(pd/2) P + s_q t^(qd/2) R
//   Q(u^t) = t^2 A + (pd/2) s_p t^(pd/2) P + (qd/2) s_q t^(qd/2) R
//   d/dt E(u^t) = Q(u^t) / t =: y(t)
double fiber_energy(const CoeffSet& c, const Components& v, double t);
double fiber_q(const CoeffSet& c, const Components& v, double t);
double fiber_y(const CoeffSet& c, const Components& v, double t);

struct FiberProfileRow {
  double t, energy, q;
};

struct FiberResult {
  double t_star = 0.0;
  double q_at_tstar = 0.0;         // Q(u^{t*}), the root residual
  double bracket_lo = 0.0, bracket_hi = 0.0;
  std::vector<FiberProfileRow> profile;
  bool unique_sign_change = false;
};

// Locates the zero of y(t): bracketed bisection (bracket [1e-6, T] with T
// doubling until y(T) < 0), then Newton inside the bracket.
FiberResult find_tstar_scalar(const CoeffSet& c, const Components& v,
                              double tol);

FiberResult find_tstar(Workspace& ws, const Field& u, const ModelParams& mp,
                       double tol);

std::vector<FiberProfileRow> fiber_profile(Workspace& ws, const Field& u,
                                           const ModelParams& mp,
                                           const std::vector<double>& t_grid);

}  // namespace wnls

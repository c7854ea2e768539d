#pragma once

#include <limits>

#include "wnls/grid.hpp"

namespace wnls {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Equation parameters. mu is the sign of the lower-order power term; the
// higher power q is always focusing.
struct ModelParams {
  int mu = -1;  // -1 or +1
  double p = 5.0;
  double q = 6.0;
  int d = 1;

  // Enforces 4/d < p < q < 4/(d-1) (the upper bound is +inf for d = 1).
  void validate() const;
};

// Signed coefficient set for one member of the functional family:
//   E(u) = 1/2 |grad_x u|^2 + a_y/2 |d_y u|^2 + s_p |u|_{p+2}^{p+2}
//        + s_q |u|_{q+2}^{q+2}.
// The core equation, the two rescaled families and their limits are all
// instances; every derived quantity (semivirial, reduced functional,
// multiplier, fibering map) is computed from one of these.
struct CoeffSet {
  double p, q;
  int d;
  double a_y;  // coefficient of |d_y u|^2 relative to |grad_x u|^2
  double s_p;  // signed coefficient of the (p+2)-integral
  double s_q;  // signed coefficient of the (q+2)-integral
};

enum class Family { sub, sup };  // lambda on the p-term / on the q-term

CoeffSet core_coeffs(const ModelParams& mp);
// H_lambda / K_lambda: coefficient lambda^(p/q-1) on the p-term, lambda on
// the d_y term. lambda = inf is allowed (the p-coefficient is exactly zero).
CoeffSet sub_coeffs(const ModelParams& mp, double lambda);
// H^lambda / K^lambda: coefficient lambda^(q/p-1) on the q-term. lambda = 0
// is allowed (single p-power limit); lambda = inf is not defined.
CoeffSet sup_coeffs(const ModelParams& mp, double lambda);
CoeffSet family_coeffs(const ModelParams& mp, Family f, double lambda);

// The five component integrals of a field.
struct Components {
  double M = 0;  // |u|_2^2
  double A = 0;  // |grad_x u|_2^2
  double B = 0;  // |d_y u|_2^2
  double P = 0;  // |u|_{p+2}^{p+2}
  double R = 0;  // |u|_{q+2}^{q+2}
};

Components compute_components(Workspace& ws, const Field& u, double p,
                              double q);

// Scalar formulas on a component set.
double energy_of(const CoeffSet& c, const Components& v);
double semivirial_of(const CoeffSet& c, const Components& v);
double reduced_of(const CoeffSet& c, const Components& v);
double action_of(const CoeffSet& c, const Components& v, double omega);
double multiplier_of(const CoeffSet& c, const Components& v);

struct FunctionalRecord {
  double mass, energy, action, semivirial, reduced;
  double omega;  // the omega the action was evaluated at
  Components c;
};

FunctionalRecord eval_core(Workspace& ws, const Field& u,
                           const ModelParams& mp, double omega);

struct RescaledRecord {
  Family family;
  double lambda;
  bool hatted;
  double H, K, I, S1;  // S1 = 1/2 M + H (omega = 1)
  Components c;        // on R^d when hatted (waveguide integrals / 2pi)
};

// Exact transliteration of the rescaled families; `hatted` interprets a
// y-independent field on R^d (also accepts fields on reduced grids).
RescaledRecord eval_rescaled(Workspace& ws, const Field& u,
                             const ModelParams& mp, double lambda, Family fam,
                             bool hatted);

struct ScaledField {
  Field f;
  double interp_error;  // relative mass drift of the resampling
};

// u^t(x,y) = t^(d/2) u(tx, y), trigonometric resampling on the same grid.
ScaledField fiber_scale(Workspace& ws, const Field& u, double t);

// T_{lambda,alpha} u(x,y) = lambda^(2/alpha) u(lambda x, y).
ScaledField t_lambda_scale(Workspace& ws, const Field& u, double lambda,
                           double alpha);

// omega making the stationary equation hold weakly against u.
double multiplier_omega(Workspace& ws, const Field& u, const ModelParams& mp);

// LHS/RHS of the scale-invariant Gagliardo-Nirenberg inequality at exponent
// alpha.
double gn_ratio(Workspace& ws, const Field& u, const ModelParams& mp,
                double alpha);

// L2 norm of -lap_x u - a_y d_y^2 u + omega u + (p+2) s_p |u|^p u
//            + (q+2) s_q |u|^q u.
double residual_stationary_gen(Workspace& ws, const Field& u,
                               const CoeffSet& c, double omega);
double residual_stationary(Workspace& ws, const Field& u, double omega,
                           const ModelParams& mp);

// Support radius enclosing all but `frac` of the mass (x-distance).
double mass_radius(const Field& u, double frac = 1e-6);

}  // namespace wnls

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wnls/fibering.hpp"
#include "wnls/functionals.hpp"

namespace wnls {

enum class Method { fiber_reduced, relaxed_I };

struct SolveOptions {
  int max_iter = 50000;
  double tol_grad = 1e-8;   // reduced-gradient norm, scaled by sqrt(c)
  double tol_q = 1e-8;      // |Q| at the reported field
  double tol_resid = 1e-5;  // stationary-equation defect
  double penalty_w0 = 10.0;
  double penalty_factor = 10.0;
  double penalty_cap = 1e6;
  bool precondition = true;  // spectral (alpha - lap)^-1 metric
  int restarts = 2;          // random restarts beyond the two seeded inits
  std::uint64_t seed = 1;
  double init_sigma = 1.0;   // width of the Gaussian initializations
  double broken_eps = 0.1;   // 1 + eps*cos(y) symmetry breaking
  bool quiet = true;
};

struct GroundStateResult {
  Field field;
  double objective = 0.0;     // m_c / gamma_omega / rescaled value
  double multiplier = 0.0;    // omega (Lagrange for mass problems)
  double q_residual = 0.0;    // |Q(u)|
  double mass = 0.0;
  double stationary_residual = 0.0;
  double y_dependence = 0.0;  // |d_y u|^2 / |u|^2
  Method method = Method::fiber_reduced;
  bool converged = false;
  int iterations = 0;
  Components comp;
};

// Generic constrained descent over one member of the functional family.
// Mass problems support both algorithms; action problems use the penalized
// reduced functional with a fibering projection at convergence.
struct VariationalProblem {
  CoeffSet coeffs;
  bool mass_constrained = true;
  double c = 1.0;       // mass (when constrained)
  double omega = 1.0;   // frequency (action problems)
  Method method = Method::fiber_reduced;
};

GroundStateResult solve_variational(Workspace& ws, const VariationalProblem& pb,
                                    const Field& init, const SolveOptions& opt);

// Best over the standard initialization set (y-independent Gaussian,
// symmetry-broken Gaussian, seeded random restarts).
GroundStateResult solve_best(Workspace& ws, const VariationalProblem& pb,
                             const SolveOptions& opt);

// m_c: minimize E over {M(u) = c, Q(u) = 0} (mu = -1 only). `method`
// selects the algorithm; solve_mc_both returns the pair for cross-checks.
GroundStateResult solve_mc(Workspace& ws, double c, const ModelParams& mp,
                           const SolveOptions& opt,
                           Method method = Method::fiber_reduced);
std::pair<GroundStateResult, GroundStateResult> solve_mc_both(
    Workspace& ws, double c, const ModelParams& mp, const SolveOptions& opt);

// gamma_omega: minimize S_omega over {Q = 0} (mu = +1, omega > 0).
GroundStateResult solve_gamma_omega(Workspace& ws, double omega,
                                    const ModelParams& mp,
                                    const SolveOptions& opt);

struct ReducedTarget {
  enum Kind { mass, frequency } kind;
  double value;
};

// The R^d (hatted) problems on a reduced grid; at lambda = inf (sub family)
// the single-power limit.
GroundStateResult solve_reduced_rd(Workspace& ws, const ReducedTarget& target,
                                   const ModelParams& mp, double lambda,
                                   Family family, const SolveOptions& opt);

// Closed-form single-power soliton on R (d = 1):
//   -phi'' + omega phi = |phi|^alpha phi,
//   phi(x) = ((alpha+2) omega / 2)^(1/alpha) sech^(2/alpha)(alpha sqrt(omega) x / 2)
double sech_soliton_value(double alpha, double omega, double x);
Field sech_soliton_field(GridPtr g, double alpha, double omega);
// closed-form L2 mass via Gamma functions
double sech_soliton_mass(double alpha, double omega);
// omega with prescribed mass (d = 1, mass-supercritical alpha > 4)
double sech_soliton_omega_for_mass(double alpha, double c);

// ---- sweeps and probes ------------------------------------------------

struct SweepPoint {
  double param = 0.0;  // c (mu = -1) or omega (mu = +1)
  GroundStateResult best;
  double hat_value_2pi = 0.0;  // 2pi * reduced objective at matched target
  int y_class = 0;             // +1 dependent, -1 independent, 0 undecided
  bool equality = false;       // |obj - hat| <= tol_eq * |hat|
  bool strict_below = false;   // obj < hat - tol_eq * |hat| (mass side)
};

struct SweepOptions {
  SolveOptions solve;
  double tol_eq_rel = 1e-3;
  double ydep_cut = 1e-3;    // above: y-dependent
  double yindep_cut = 1e-8;  // below: y-independent
  // per-point grids; if only one entry it is shared
  std::vector<GridPtr> grids;
  std::vector<GridPtr> reduced_grids;
};

struct SweepReport {
  std::vector<SweepPoint> points;
  // bracketing intervals for the two thresholds (c_* / c^* or
  // omega_* / omega^*); zero width if not localized inside the sweep
  double lower_lo = 0.0, lower_hi = 0.0;
  double upper_lo = 0.0, upper_hi = 0.0;
  bool thresholds_ordered = false;
};

SweepReport sweep_dichotomy(const std::vector<double>& params,
                            const ModelParams& mp, const SweepOptions& opt);

struct ScalingCheck {
  double c = 0.0;
  double mc = 0.0;
  // paper-text relation: m_c = c^e_alpha * m at lambda = kappa^2
  double via_q_printed = 0.0, via_p_printed = 0.0;
  double err_q_printed = 0.0, err_p_printed = 0.0;
  // change-of-variables relation (y-coefficient 1/lambda, lambda = kappa^-2)
  double via_q_exact = 0.0, via_p_exact = 0.0;
  double err_q_exact = 0.0, err_p_exact = 0.0;
  bool printed_relation_consistent = false;
};

ScalingCheck check_scaling_relation(double c, const ModelParams& mp,
                                    const SweepOptions& opt);

struct ProbeRow {
  double lambda = 0.0;
  double m_1_lambda = 0.0;
  double lambda_dy = 0.0;  // lambda * |d_y u_lambda|^2
  double hat_lambda_2pi = 0.0;
  double gap = 0.0;  // |m_1_lambda - limit|
  bool converged = false;
  double y_dependence = 0.0;
};

struct ProbeReport {
  std::vector<ProbeRow> rows;
  double limit_value = 0.0;  // 2pi * hat m_{(2pi)^{-1}, inf}
  bool tail_dy_decreasing = false;
  bool tail_gap_decreasing = false;
  bool upper_bound_ok = false;
};

ProbeReport limit_family_probe(const std::vector<double>& lambdas,
                               const ModelParams& mp, const SweepOptions& opt);

struct RhoProfile {
  std::vector<double> values;  // on the y-grid (n_y samples of [0, 2pi))
  double l2sq = 0.0, lp = 0.0, lq = 0.0;  // |rho|_2^2, |rho|_{p+2}^{p+2}, ...
  bool chain_ok = false;  // l2sq == lp < min(2pi, lq) within quadrature error
};

// piecewise-linear tent profile on the torus
RhoProfile build_rho(double a, const ModelParams& mp, int n_y);

}  // namespace wnls

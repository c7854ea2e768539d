#include <cmath>

#include "wnls/kernels.hpp"

namespace wnls::kern {
namespace {

void s_cmul(cplx* z, const cplx* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] *= m[i];
}

void s_scale(cplx* z, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) z[i] *= s;
}

void s_axpy(cplx* y, const cplx* x, std::size_t n, cplx a) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double s_pow_sum(const cplx* z, std::size_t n, double r) {
  double acc = 0.0;
  if (r == 2.0) {
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(z[i]);
    return acc;
  }
  const double half_r = 0.5 * r;
  for (std::size_t i = 0; i < n; ++i) {
    const double a2 = std::norm(z[i]);
    acc += (a2 > 0.0) ? std::pow(a2, half_r) : 0.0;
  }
  return acc;
}

cplx s_dotc(const cplx* u, const cplx* v, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx t = u[i] * std::conj(v[i]);
    re += t.real();
    im += t.imag();
  }
  return {re, im};
}

void s_phase_nl(cplx* u, std::size_t n, double dt, double cp, double p,
                double cq, double q) {
  const double hp = 0.5 * p, hq = 0.5 * q;
  for (std::size_t i = 0; i < n; ++i) {
    const double a2 = std::norm(u[i]);
    double nl = 0.0;
    if (a2 > 0.0) {
      if (cp != 0.0) nl += cp * std::pow(a2, hp);
      if (cq != 0.0) nl += cq * std::pow(a2, hq);
    }
    const double ph = -dt * nl;
    u[i] *= cplx(std::cos(ph), std::sin(ph));
  }
}

void s_nl_mul(cplx* out, const cplx* u, std::size_t n, double c0, double cp,
              double p, double cq, double q) {
  const double hp = 0.5 * p, hq = 0.5 * q;
  for (std::size_t i = 0; i < n; ++i) {
    const double a2 = std::norm(u[i]);
    double c = c0;
    if (a2 > 0.0) {
      if (cp != 0.0) c += cp * std::pow(a2, hp);
      if (cq != 0.0) c += cq * std::pow(a2, hq);
    }
    out[i] = c * u[i];
  }
}

double s_wsum2(const double* w, const cplx* u, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::norm(u[i]);
  return acc;
}

double s_sup_abs(const cplx* u, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::norm(u[i]));
  return std::sqrt(m);
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops t = {"scalar", s_cmul,     s_scale,  s_axpy, s_pow_sum,
                        s_dotc,   s_phase_nl, s_nl_mul, s_wsum2, s_sup_abs};
  return t;
}

}  // namespace wnls::kern

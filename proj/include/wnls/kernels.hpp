#pragma once

#include <complex>
#include <cstddef>

// Hot pointwise/reduction kernels. Every entry has a scalar reference
// implementation and a SIMD variant; which one runs is decided once at
// startup (WNLS_SIMD=scalar|simd overrides the automatic choice). The two
// variants are equivalence-tested against each other.
//
// Reductions accumulate in fixed order (per-lane, then lane-combine), so a
// given build + kernel selection is bitwise deterministic.

namespace wnls::kern {

using cplx = std::complex<double>;

struct Ops {
  const char* name;

  // z[i] *= m[i]
  void (*cmul)(cplx* z, const cplx* m, std::size_t n);

  // z[i] *= s
  void (*scale)(cplx* z, std::size_t n, double s);

  // y[i] += a * x[i]
  void (*axpy)(cplx* y, const cplx* x, std::size_t n, cplx a);

  // sum_i |z[i]|^r  (r >= 0 real; r==2 is special-cased)
  double (*pow_sum)(const cplx* z, std::size_t n, double r);

  // sum_i u[i] * conj(v[i])
  cplx (*dotc)(const cplx* u, const cplx* v, std::size_t n);

  // u[i] *= exp(-i * dt * (cp*|u[i]|^p + cq*|u[i]|^q))
  void (*phase_nl)(cplx* u, std::size_t n, double dt, double cp, double p,
                   double cq, double q);

  // out[i] = (c0 + cp*|u[i]|^p + cq*|u[i]|^q) * u[i]
  void (*nl_mul)(cplx* out, const cplx* u, std::size_t n, double c0, double cp,
                 double p, double cq, double q);

  // sum_i w[i] * |u[i]|^2   (real weight table)
  double (*wsum2)(const double* w, const cplx* u, std::size_t n);

  // out[i] = max(|u[i]|, out_so_far); returns max_i |u[i]|
  double (*sup_abs)(const cplx* u, std::size_t n);
};

const Ops& scalar_ops();
const Ops& simd_ops();

// Active table (set once on first use; honors WNLS_SIMD).
const Ops& ops();

// Force a selection ("scalar", "simd", "auto"); used by tests.
void select(const char* which);

}  // namespace wnls::kern

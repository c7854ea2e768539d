#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "wnls/kernels.hpp"

#if defined(__has_include)
#if __has_include(<experimental/simd>)
#include <experimental/simd>
#define WNLS_HAVE_STDX_SIMD 1
#endif
#endif

namespace wnls::kern {

#ifdef WNLS_HAVE_STDX_SIMD

namespace {

namespace stdx = std::experimental;
using vd = stdx::native_simd<double>;
constexpr std::size_t W = vd::size();

struct Lanes {
  vd re, im;
};

inline Lanes load(const cplx* z, std::size_t i) {
  const double* d = reinterpret_cast<const double*>(z + i);
  vd re([&](auto j) { return d[2 * j]; });
  vd im([&](auto j) { return d[2 * j + 1]; });
  return {re, im};
}

inline void store(cplx* z, std::size_t i, const Lanes& v) {
  double* d = reinterpret_cast<double*>(z + i);
  for (std::size_t j = 0; j < W; ++j) {
    d[2 * j] = v.re[j];
    d[2 * j + 1] = v.im[j];
  }
}

inline vd vpow(const vd& base, double e) {
  // guard against pow(0, e) lane-wise; base >= 0 here
  vd b = stdx::max(base, vd(1e-300));
  return stdx::pow(b, vd(e));
}

void v_cmul(cplx* z, const cplx* m, std::size_t n) {
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    Lanes a = load(z, i), b = load(m, i);
    Lanes r{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    store(z, i, r);
  }
  for (; i < n; ++i) z[i] *= m[i];
}

void v_scale(cplx* z, std::size_t n, double s) {
  double* d = reinterpret_cast<double*>(z);
  const std::size_t n2 = 2 * n;
  std::size_t i = 0;
  const vd vs(s);
  for (; i + W <= n2; i += W) {
    vd v(d + i, stdx::element_aligned);
    v *= vs;
    v.copy_to(d + i, stdx::element_aligned);
  }
  for (; i < n2; ++i) d[i] *= s;
}

void v_axpy(cplx* y, const cplx* x, std::size_t n, cplx a) {
  if (a.imag() == 0.0) {
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    const std::size_t n2 = 2 * n;
    std::size_t i = 0;
    const vd va(a.real());
    for (; i + W <= n2; i += W) {
      vd vy(yd + i, stdx::element_aligned);
      vd vx(xd + i, stdx::element_aligned);
      vy += va * vx;
      vy.copy_to(yd + i, stdx::element_aligned);
    }
    for (; i < n2; ++i) yd[i] += a.real() * xd[i];
    return;
  }
  std::size_t i = 0;
  const vd ar(a.real()), ai(a.imag());
  for (; i + W <= n; i += W) {
    Lanes vy = load(y, i), vx = load(x, i);
    vy.re += ar * vx.re - ai * vx.im;
    vy.im += ar * vx.im + ai * vx.re;
    store(y, i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double v_pow_sum(const cplx* z, std::size_t n, double r) {
  vd acc(0.0);
  std::size_t i = 0;
  if (r == 2.0) {
    for (; i + W <= n; i += W) {
      Lanes v = load(z, i);
      acc += v.re * v.re + v.im * v.im;
    }
  } else {
    const double hr = 0.5 * r;
    for (; i + W <= n; i += W) {
      Lanes v = load(z, i);
      vd a2 = v.re * v.re + v.im * v.im;
      vd t = vpow(a2, hr);
      stdx::where(a2 <= 0.0, t) = 0.0;
      acc += t;
    }
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    const double a2 = std::norm(z[i]);
    tail += (r == 2.0) ? a2 : ((a2 > 0.0) ? std::pow(a2, 0.5 * r) : 0.0);
  }
  double s = 0.0;
  for (std::size_t j = 0; j < W; ++j) s += acc[j];
  return s + tail;
}

cplx v_dotc(const cplx* u, const cplx* v, std::size_t n) {
  vd are(0.0), aim(0.0);
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    Lanes a = load(u, i), b = load(v, i);
    are += a.re * b.re + a.im * b.im;
    aim += a.im * b.re - a.re * b.im;
  }
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < W; ++j) {
    re += are[j];
    im += aim[j];
  }
  for (; i < n; ++i) {
    const cplx t = u[i] * std::conj(v[i]);
    re += t.real();
    im += t.imag();
  }
  return {re, im};
}

void v_phase_nl(cplx* u, std::size_t n, double dt, double cp, double p,
                double cq, double q) {
  const double hp = 0.5 * p, hq = 0.5 * q;
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    Lanes v = load(u, i);
    vd a2 = v.re * v.re + v.im * v.im;
    vd nl(0.0);
    if (cp != 0.0) {
      vd t = vd(cp) * vpow(a2, hp);
      stdx::where(a2 <= 0.0, t) = 0.0;
      nl += t;
    }
    if (cq != 0.0) {
      vd t = vd(cq) * vpow(a2, hq);
      stdx::where(a2 <= 0.0, t) = 0.0;
      nl += t;
    }
    vd ph = vd(-dt) * nl;
    vd c = stdx::cos(ph), s = stdx::sin(ph);
    Lanes r{v.re * c - v.im * s, v.re * s + v.im * c};
    store(u, i, r);
  }
  if (i < n) scalar_ops().phase_nl(u + i, n - i, dt, cp, p, cq, q);
}

void v_nl_mul(cplx* out, const cplx* u, std::size_t n, double c0, double cp,
              double p, double cq, double q) {
  const double hp = 0.5 * p, hq = 0.5 * q;
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    Lanes v = load(u, i);
    vd a2 = v.re * v.re + v.im * v.im;
    vd c(c0);
    if (cp != 0.0) {
      vd t = vd(cp) * vpow(a2, hp);
      stdx::where(a2 <= 0.0, t) = 0.0;
      c += t;
    }
    if (cq != 0.0) {
      vd t = vd(cq) * vpow(a2, hq);
      stdx::where(a2 <= 0.0, t) = 0.0;
      c += t;
    }
    Lanes r{v.re * c, v.im * c};
    store(out, i, r);
  }
  if (i < n) scalar_ops().nl_mul(out + i, u + i, n - i, c0, cp, p, cq, q);
}

double v_wsum2(const double* w, const cplx* u, std::size_t n) {
  vd acc(0.0);
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    Lanes v = load(u, i);
    vd vw(w + i, stdx::element_aligned);
    acc += vw * (v.re * v.re + v.im * v.im);
  }
  double s = 0.0;
  for (std::size_t j = 0; j < W; ++j) s += acc[j];
  for (; i < n; ++i) s += w[i] * std::norm(u[i]);
  return s;
}

double v_sup_abs(const cplx* u, std::size_t n) {
  vd m(0.0);
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    Lanes v = load(u, i);
    m = stdx::max(m, v.re * v.re + v.im * v.im);
  }
  double s = 0.0;
  for (std::size_t j = 0; j < W; ++j) s = std::max(s, static_cast<double>(m[j]));
  for (; i < n; ++i) s = std::max(s, std::norm(u[i]));
  return std::sqrt(s);
}

}  // namespace

const Ops& simd_ops() {
  static const Ops t = {"simd",  v_cmul,     v_scale,  v_axpy,  v_pow_sum,
                        v_dotc,  v_phase_nl, v_nl_mul, v_wsum2, v_sup_abs};
  return t;
}

#else

const Ops& simd_ops() { return scalar_ops(); }

#endif  // WNLS_HAVE_STDX_SIMD

namespace {
const Ops* g_active = nullptr;
}

void select(const char* which) {
  std::string w = which ? which : "auto";
  if (w == "scalar") {
    g_active = &scalar_ops();
  } else if (w == "simd") {
    g_active = &simd_ops();
  } else {
    g_active = &simd_ops();
  }
}

const Ops& ops() {
  if (!g_active) {
    const char* env = std::getenv("WNLS_SIMD");
    select(env ? env : "auto");
  }
  return *g_active;
}

}  // namespace wnls::kern

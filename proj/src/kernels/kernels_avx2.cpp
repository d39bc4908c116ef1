// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "hardy/kernels.hpp"

namespace hardy::kernels {
namespace {

const double* AsDoubles(const cplx* p) { return reinterpret_cast<const double*>(p); }
double* AsDoubles(cplx* p) { return reinterpret_cast<double*>(p); }

// Two complex products per register: [ar0 ai0 ar1 ai1] * [br0 bi0 br1 bi1].
inline __m256d Mul2(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_swap = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_swap, b_im));
}

inline __m256d ConjMask() { return _mm256_setr_pd(0.0, -0.0, 0.0, -0.0); }

void CmulAvx2(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  const double* pa = AsDoubles(a);
  const double* pb = AsDoubles(b);
  double* po = AsDoubles(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(po + 2 * i, Mul2(va, vb));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br - ai * bi, ar * bi + ai * br);
  }
}

void CmulConjAvx2(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  const double* pa = AsDoubles(a);
  const double* pb = AsDoubles(b);
  double* po = AsDoubles(out);
  const __m256d mask = ConjMask();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_xor_pd(_mm256_loadu_pd(pb + 2 * i), mask);
    _mm256_storeu_pd(po + 2 * i, Mul2(va, vb));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br + ai * bi, ai * br - ar * bi);
  }
}

inline double HorizontalSum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double AbsPowSumAvx2(const cplx* x, std::size_t n, double p) {
  const double* px = AsDoubles(x);
  const int mode = p == 1.0 ? 1 : p == 2.0 ? 2 : p == 3.0 ? 3 : p == 4.0 ? 4 : 0;
  const double half = 0.5 * p;
  __m256d acc = _mm256_setzero_pd();
  double tail = 0.0;
  std::size_t i = 0;
  alignas(32) double lane[4];
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(px + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(px + 2 * i + 4);
    // [|x0|^2, |x2|^2, |x1|^2, |x3|^2]
    const __m256d m2 = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    switch (mode) {
      case 1:
        acc = _mm256_add_pd(acc, _mm256_sqrt_pd(m2));
        break;
      case 2:
        acc = _mm256_add_pd(acc, m2);
        break;
      case 3:
        acc = _mm256_fmadd_pd(m2, _mm256_sqrt_pd(m2), acc);
        break;
      case 4:
        acc = _mm256_fmadd_pd(m2, m2, acc);
        break;
      default:
        _mm256_store_pd(lane, m2);
        tail += std::pow(lane[0], half) + std::pow(lane[1], half) + std::pow(lane[2], half) +
                std::pow(lane[3], half);
        break;
    }
  }
  double total = HorizontalSum(acc) + tail;
  for (; i < n; ++i) {
    const double m2 = std::norm(x[i]);
    switch (mode) {
      case 1: total += std::sqrt(m2); break;
      case 2: total += m2; break;
      case 3: total += m2 * std::sqrt(m2); break;
      case 4: total += m2 * m2; break;
      default: total += std::pow(m2, half); break;
    }
  }
  return total;
}

void HornerAvx2(const cplx* c, std::size_t m, const cplx* pts, cplx* out, std::size_t npts) {
  const double* pp = AsDoubles(pts);
  double* po = AsDoubles(out);
  const double* pc = AsDoubles(c);
  std::size_t i = 0;
  for (; i + 4 <= npts; i += 4) {
    const __m256d w0 = _mm256_loadu_pd(pp + 2 * i);
    const __m256d w1 = _mm256_loadu_pd(pp + 2 * i + 4);
    const __m256d w0_re = _mm256_movedup_pd(w0), w0_im = _mm256_permute_pd(w0, 0xF);
    const __m256d w1_re = _mm256_movedup_pd(w1), w1_im = _mm256_permute_pd(w1, 0xF);
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    for (std::size_t k = m; k-- > 0;) {
      const __m256d ck = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(pc + 2 * k));
      const __m256d s0 = _mm256_permute_pd(a0, 0x5);
      const __m256d s1 = _mm256_permute_pd(a1, 0x5);
      a0 = _mm256_add_pd(_mm256_fmaddsub_pd(a0, w0_re, _mm256_mul_pd(s0, w0_im)), ck);
      a1 = _mm256_add_pd(_mm256_fmaddsub_pd(a1, w1_re, _mm256_mul_pd(s1, w1_im)), ck);
    }
    _mm256_storeu_pd(po + 2 * i, a0);
    _mm256_storeu_pd(po + 2 * i + 4, a1);
  }
  if (i < npts) scalar_table().horner(c, m, pts + i, out + i, npts - i);
}

void AxpyAvx2(cplx s, const cplx* y, cplx* x, std::size_t n) {
  const double* py = AsDoubles(y);
  double* px = AsDoubles(x);
  const __m256d vs = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vy = _mm256_loadu_pd(py + 2 * i);
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    _mm256_storeu_pd(px + 2 * i, _mm256_add_pd(vx, Mul2(vy, vs)));
  }
  if (i < n) scalar_table().axpy(s, y + i, x + i, n - i);
}

}  // namespace

const KernelTable& avx2_table_impl() {
  static const KernelTable table{"avx2", CmulAvx2, CmulConjAvx2, AbsPowSumAvx2, HornerAvx2,
                                 AxpyAvx2};
  return table;
}

}  // namespace hardy::kernels

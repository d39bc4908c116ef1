#include <cmath>

#include "hardy/kernels.hpp"

namespace hardy::kernels {
namespace {

void CmulScalar(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br - ai * bi, ar * bi + ai * br);
  }
}

void CmulConjScalar(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br + ai * bi, ai * br - ar * bi);
  }
}

double AbsPowSumScalar(const cplx* x, std::size_t n, double p) {
  double acc = 0.0;
  if (p == 1.0) {
    for (std::size_t i = 0; i < n; ++i) {
      acc += std::sqrt(std::norm(x[i]));
    }
  } else if (p == 2.0) {
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
  } else if (p == 3.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double m2 = std::norm(x[i]);
      acc += m2 * std::sqrt(m2);
    }
  } else if (p == 4.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double m2 = std::norm(x[i]);
      acc += m2 * m2;
    }
  } else {
    const double half = 0.5 * p;
    for (std::size_t i = 0; i < n; ++i) acc += std::pow(std::norm(x[i]), half);
  }
  return acc;
}

void HornerScalar(const cplx* c, std::size_t m, const cplx* pts, cplx* out, std::size_t npts) {
  for (std::size_t i = 0; i < npts; ++i) {
    const double wr = pts[i].real(), wi = pts[i].imag();
    double ar = 0.0, ai = 0.0;
    for (std::size_t k = m; k-- > 0;) {
      const double tr = ar * wr - ai * wi;
      const double ti = ar * wi + ai * wr;
      ar = tr + c[k].real();
      ai = ti + c[k].imag();
    }
    out[i] = cplx(ar, ai);
  }
}

void AxpyScalar(cplx s, const cplx* y, cplx* x, std::size_t n) {
  const double sr = s.real(), si = s.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double yr = y[i].real(), yi = y[i].imag();
    x[i] = cplx(x[i].real() + sr * yr - si * yi, x[i].imag() + sr * yi + si * yr);
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", CmulScalar, CmulConjScalar, AbsPowSumScalar,
                                 HornerScalar, AxpyScalar};
  return table;
}

}  // namespace hardy::kernels

#pragma once
// Pointwise arithmetic kernels on complex sample arrays.
//
// Every kernel has a scalar reference implementation. On x86-64 an AVX2+FMA
// variant is compiled into a separate translation unit and selected at
// runtime when the CPU supports it. Setting HARDY_KERNELS=scalar in the
// environment forces the reference path.
//
// Arrays are std::complex<double>, which is layout-compatible with double[2].

#include <complex>
#include <cstddef>

namespace hardy::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;

  // out[i] = a[i] * b[i]
  void (*cmul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // out[i] = a[i] * conj(b[i])
  void (*cmul_conj)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // sum_i |x[i]|^p, with exact fast paths for p in {1, 2, 3, 4}
  double (*abs_pow_sum)(const cplx* x, std::size_t n, double p);
  // out[i] = sum_{k<m} c[k] * pts[i]^k
  void (*horner)(const cplx* c, std::size_t m, const cplx* pts, cplx* out, std::size_t npts);
  // x[i] += s * y[i]
  void (*axpy)(cplx s, const cplx* y, cplx* x, std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_table();

// Chosen once per process.
const KernelTable& active();

}  // namespace hardy::kernels

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace qfreq::kernels {

using cplx = std::complex<double>;

// Statevector inner-loop kernels. A backend is a table of function pointers;
// the scalar table is the reference semantics and the AVX2 table must agree
// with it (see tests/test_kernels.cpp). `dim` is the amplitude count (a power
// of two); gate kernels address the target bit by its index stride.
struct Backend {
  const char* name;

  // For every index pair (i0, i1 = i0 | stride):
  //   new0 = u00*a0 + u01*a1, new1 = u10*a0 + u11*a1.
  void (*apply2x2)(cplx* amps, std::size_t dim, std::size_t stride, cplx u00,
                   cplx u01, cplx u10, cplx u11);

  // Swap amps[i] <-> amps[i | tstride] for every i with the control bit set
  // and the target bit clear.
  void (*cnot)(cplx* amps, std::size_t dim, std::size_t cstride,
               std::size_t tstride);

  // Sum of (-1)^popcount(i & mask) * |amps[i]|^2.
  double (*expect_zmask)(const cplx* amps, std::size_t dim, std::size_t mask);

  // Sum of conj(a[i]) * b[i].
  cplx (*inner)(const cplx* a, const cplx* b, std::size_t dim);
};

const Backend& scalar_backend();

// True when the AVX2 variant was compiled in and this CPU supports it.
bool avx2_available();
const Backend& avx2_backend();

// Active backend used by the statevector module. Defaults to the best
// available variant; the QFREQ_SIMD environment variable ("scalar", "avx2",
// "auto") or select() overrides it.
const Backend& active();
void select(std::string_view name);

}  // namespace qfreq::kernels

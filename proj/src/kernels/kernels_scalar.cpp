#include <bit>

#include "qfreq/kernels.hpp"

namespace qfreq::kernels {
namespace {

void apply2x2_scalar(cplx* amps, std::size_t dim, std::size_t stride, cplx u00,
                     cplx u01, cplx u10, cplx u11) {
  const std::size_t block = stride << 1;
  for (std::size_t base = 0; base < dim; base += block) {
    cplx* a = amps + base;
    cplx* b = a + stride;
    for (std::size_t k = 0; k < stride; ++k) {
      const cplx x = a[k];
      const cplx y = b[k];
      a[k] = u00 * x + u01 * y;
      b[k] = u10 * x + u11 * y;
    }
  }
}

void cnot_scalar(cplx* amps, std::size_t dim, std::size_t cstride,
                 std::size_t tstride) {
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & cstride) != 0 && (i & tstride) == 0) {
      const std::size_t j = i | tstride;
      const cplx tmp = amps[i];
      amps[i] = amps[j];
      amps[j] = tmp;
    }
  }
}

double expect_zmask_scalar(const cplx* amps, std::size_t dim,
                           std::size_t mask) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double p = amps[i].real() * amps[i].real() +
                     amps[i].imag() * amps[i].imag();
    acc += (std::popcount(i & mask) & 1U) ? -p : p;
  }
  return acc;
}

cplx inner_scalar(const cplx* a, const cplx* b, std::size_t dim) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend{"scalar", apply2x2_scalar, cnot_scalar,
                               expect_zmask_scalar, inner_scalar};
  return backend;
}

}  // namespace qfreq::kernels

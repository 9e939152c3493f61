// AVX2 variants of the statevector kernels. This translation unit is compiled
// with -mavx2 and must only be entered after a runtime CPU check (see
// kernels_dispatch.cpp). Amplitudes are interleaved re/im doubles, so one
// __m256d register holds two complex values.

#include "qfreq/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <bit>

namespace qfreq::kernels {
namespace {

// Complex product of two packed complexes against a per-lane constant given
// as split real/imag registers: (x + iy)(c + is) = (xc - ys) + i(xs + yc).
inline __m256d cmul(__m256d v, __m256d wr, __m256d wi) {
  const __m256d t = _mm256_mul_pd(v, wr);
  const __m256d s = _mm256_mul_pd(_mm256_permute_pd(v, 0x5), wi);
  return _mm256_addsub_pd(t, s);
}

void apply2x2_avx2(cplx* amps, std::size_t dim, std::size_t stride, cplx u00,
                   cplx u01, cplx u10, cplx u11) {
  double* d = reinterpret_cast<double*>(amps);
  if (stride == 1) {
    // Adjacent pairs: one register holds [a | b]; combine the matrix columns
    // per 128-bit lane so the result lands as [new_a | new_b].
    const __m256d wr0 = _mm256_setr_pd(u00.real(), u00.real(), u10.real(), u10.real());
    const __m256d wi0 = _mm256_setr_pd(u00.imag(), u00.imag(), u10.imag(), u10.imag());
    const __m256d wr1 = _mm256_setr_pd(u01.real(), u01.real(), u11.real(), u11.real());
    const __m256d wi1 = _mm256_setr_pd(u01.imag(), u01.imag(), u11.imag(), u11.imag());
    for (std::size_t i = 0; i < dim; i += 2) {
      const __m256d v = _mm256_loadu_pd(d + 2 * i);
      const __m256d va = _mm256_permute2f128_pd(v, v, 0x00);
      const __m256d vb = _mm256_permute2f128_pd(v, v, 0x11);
      const __m256d res = _mm256_add_pd(cmul(va, wr0, wi0), cmul(vb, wr1, wi1));
      _mm256_storeu_pd(d + 2 * i, res);
    }
    return;
  }
  const __m256d r00 = _mm256_set1_pd(u00.real()), i00 = _mm256_set1_pd(u00.imag());
  const __m256d r01 = _mm256_set1_pd(u01.real()), i01 = _mm256_set1_pd(u01.imag());
  const __m256d r10 = _mm256_set1_pd(u10.real()), i10 = _mm256_set1_pd(u10.imag());
  const __m256d r11 = _mm256_set1_pd(u11.real()), i11 = _mm256_set1_pd(u11.imag());
  const std::size_t block = stride << 1;
  for (std::size_t base = 0; base < dim; base += block) {
    double* a = d + 2 * base;
    double* b = a + 2 * stride;
    for (std::size_t k = 0; k < stride; k += 2) {
      const __m256d va = _mm256_loadu_pd(a + 2 * k);
      const __m256d vb = _mm256_loadu_pd(b + 2 * k);
      const __m256d na = _mm256_add_pd(cmul(va, r00, i00), cmul(vb, r01, i01));
      const __m256d nb = _mm256_add_pd(cmul(va, r10, i10), cmul(vb, r11, i11));
      _mm256_storeu_pd(a + 2 * k, na);
      _mm256_storeu_pd(b + 2 * k, nb);
    }
  }
}

inline void swap_run(cplx* a, cplx* b, std::size_t len) {
  double* da = reinterpret_cast<double*>(a);
  double* db = reinterpret_cast<double*>(b);
  std::size_t k = 0;
  for (; k + 2 <= len; k += 2) {
    const __m256d va = _mm256_loadu_pd(da + 2 * k);
    const __m256d vb = _mm256_loadu_pd(db + 2 * k);
    _mm256_storeu_pd(da + 2 * k, vb);
    _mm256_storeu_pd(db + 2 * k, va);
  }
  for (; k < len; ++k) {
    const cplx tmp = a[k];
    a[k] = b[k];
    b[k] = tmp;
  }
}

void cnot_avx2(cplx* amps, std::size_t dim, std::size_t cstride,
               std::size_t tstride) {
  const std::size_t block = tstride << 1;
  if (cstride > tstride) {
    // Control bit lives above the target block, so whole runs swap.
    for (std::size_t base = 0; base < dim; base += block) {
      if ((base & cstride) == 0) continue;
      swap_run(amps + base, amps + base + tstride, tstride);
    }
    return;
  }
  for (std::size_t base = 0; base < dim; base += block) {
    for (std::size_t kb = cstride; kb < tstride; kb += cstride << 1) {
      swap_run(amps + base + kb, amps + base + kb + tstride, cstride);
    }
  }
}

double expect_zmask_avx2(const cplx* amps, std::size_t dim, std::size_t mask) {
  // Two indices per step; the odd index flips sign iff mask has bit 0 set.
  static const double sign_table[2][2][2] = {
      {{+1.0, +1.0}, {+1.0, -1.0}},
      {{-1.0, -1.0}, {-1.0, +1.0}},
  };
  const double* d = reinterpret_cast<const double*>(amps);
  const unsigned low = static_cast<unsigned>(mask & 1U);
  __m128d acc = _mm_setzero_pd();
  for (std::size_t i = 0; i < dim; i += 2) {
    const __m256d v = _mm256_loadu_pd(d + 2 * i);
    const __m256d sq = _mm256_mul_pd(v, v);
    const __m128d lo = _mm256_castpd256_pd128(sq);
    const __m128d hi = _mm256_extractf128_pd(sq, 1);
    const __m128d ps = _mm_hadd_pd(lo, hi);  // [ |a_i|^2, |a_{i+1}|^2 ]
    const unsigned s0 = std::popcount(i & mask) & 1U;
    const __m128d sg = _mm_loadu_pd(sign_table[s0][low]);
    acc = _mm_add_pd(acc, _mm_mul_pd(ps, sg));
  }
  return _mm_cvtsd_f64(_mm_hadd_pd(acc, acc));
}

cplx inner_avx2(const cplx* a, const cplx* b, std::size_t dim) {
  const double* da = reinterpret_cast<const double*>(a);
  const double* db = reinterpret_cast<const double*>(b);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  for (std::size_t i = 0; i < dim; i += 2) {
    const __m256d va = _mm256_loadu_pd(da + 2 * i);
    const __m256d vb = _mm256_loadu_pd(db + 2 * i);
    acc_re = _mm256_add_pd(acc_re, _mm256_mul_pd(va, vb));
    acc_im = _mm256_add_pd(acc_im, _mm256_mul_pd(_mm256_permute_pd(va, 0x5), vb));
  }
  // re = sum of all lanes; im = (odd lanes) - (even lanes).
  const __m128d re2 = _mm_add_pd(_mm256_castpd256_pd128(acc_re),
                                 _mm256_extractf128_pd(acc_re, 1));
  const double re = _mm_cvtsd_f64(_mm_hadd_pd(re2, re2));
  const __m256d flip = _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0);
  const __m256d im_signed = _mm256_mul_pd(acc_im, flip);
  const __m128d im2 = _mm_add_pd(_mm256_castpd256_pd128(im_signed),
                                 _mm256_extractf128_pd(im_signed, 1));
  const double im = _mm_cvtsd_f64(_mm_hadd_pd(im2, im2));
  return {re, im};
}

}  // namespace

const Backend& avx2_backend() {
  static const Backend backend{"avx2", apply2x2_avx2, cnot_avx2,
                               expect_zmask_avx2, inner_avx2};
  return backend;
}

bool avx2_compiled_in() { return true; }

}  // namespace qfreq::kernels

#else  // !__AVX2__

namespace qfreq::kernels {

const Backend& avx2_backend() { return scalar_backend(); }
bool avx2_compiled_in() { return false; }

}  // namespace qfreq::kernels

#endif

#pragma once

#include <map>
#include <span>
#include <vector>

#include "qfreq/ansatz.hpp"
#include "qfreq/statevector.hpp"

namespace qfreq {

// Frequency grid with complex amplitudes A(k) e^{i phi(k)}.
struct SpectrumSeries {
  std::vector<double> k_values;  // strictly increasing
  std::vector<cplx> amplitudes;

  std::size_t size() const { return k_values.size(); }
  // Index of k in the grid (within 1e-9); throws index_error when absent.
  std::size_t index_of(double k) const;
  cplx at(double k) const { return amplitudes[index_of(k)]; }
};

struct ProjectionDirection {
  std::vector<double> components;  // unit norm
};

// Unitary DFT of samples on the uniform grid x_i = 2*pi*i/N over [0, 2*pi):
// y_hat(k) = N^{-1/2} sum_i y_i exp(-i k x_i), k in {-floor(N/2), ...,
// ceil(N/2)-1}. Energy-preserving.
SpectrumSeries dft_uniform(std::span<const double> values);
SpectrumSeries dft_uniform_complex(std::span<const cplx> values);

// Direct non-uniform transform along a projection direction:
// y_hat_p(k) = N^{-1/2} sum_i y_i exp(-i (p . x_i) k).
SpectrumSeries nudft_projected(const std::vector<std::vector<double>>& points,
                               std::span<const double> values,
                               const ProjectionDirection& p,
                               std::span<const double> k_grid);

// Leading eigenvector of the sample covariance via power iteration; the
// largest-magnitude component is made positive.
ProjectionDirection principal_direction(
    const std::vector<std::vector<double>>& points);

// |f_hat(k) - y_hat(k)| / |y_hat(k)|.
double relative_error(const SpectrumSeries& f_hat, const SpectrumSeries& y_hat,
                      double k);

// Restrict to k >= 0 (top_peaks operates on the half-spectrum).
SpectrumSeries half_spectrum(const SpectrumSeries& series);

// Strict local maxima of |amplitude| on the k >= 0 half-spectrum, sorted by
// descending amplitude with ties broken toward smaller k; at most m entries.
std::vector<double> top_peaks(const SpectrumSeries& series, int m);

// Exact Fourier coefficients C(omega) of the circuit output over its
// accessible spectrum, recovered from 2E+1 uniform samples.
std::map<int, cplx> pqc_fourier_coefficients(const AnsatzSpec& spec,
                                             const ParamVector& params);

// | sum |eps(x)|^2 - sum |eps_hat(k)|^2 |, a Parseval test oracle.
double parseval_gap(std::span<const double> x_residuals,
                    const SpectrumSeries& k_residuals);

}  // namespace qfreq

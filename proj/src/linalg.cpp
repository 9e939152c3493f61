#include "qfreq/linalg.hpp"

#include <cmath>

#include "qfreq/errors.hpp"

namespace qfreq {

namespace {

double off_diagonal_norm(const std::vector<double>& a, int n) {
  double acc = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) acc += a[p * n + q] * a[p * n + q];
  return std::sqrt(2.0 * acc);
}

}  // namespace

SymEig jacobi_eigh(std::vector<double> a, int n, int max_sweeps, double tol) {
  if (n < 1 || static_cast<std::size_t>(n) * n != a.size())
    throw shape_error("jacobi_eigh: matrix size mismatch");
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;

  double frob = 0.0;
  for (double x : a) frob += x * x;
  frob = std::sqrt(frob);
  const double target = tol * std::max(frob, 1e-300);

  int sweep = 0;
  while (off_diagonal_norm(a, n) > target) {
    if (++sweep > max_sweeps)
      throw numeric_error("jacobi_eigh: no convergence after " +
                          std::to_string(max_sweeps) + " sweeps");
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = a[i * n + p];
          const double aiq = a[i * n + q];
          a[i * n + p] = c * aip - s * aiq;
          a[i * n + q] = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = a[p * n + i];
          const double aqi = a[q * n + i];
          a[p * n + i] = c * api - s * aqi;
          a[q * n + i] = s * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v[i * n + p];
          const double viq = v[i * n + q];
          v[i * n + p] = c * vip - s * viq;
          v[i * n + q] = s * vip + c * viq;
        }
      }
    }
  }

  SymEig out;
  out.n = n;
  out.values.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.values[i] = a[i * n + i];
  out.vectors = std::move(v);
  return out;
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw shape_error("fit_line: need two equal-length samples");
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300)
    throw degenerate_data_error("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double mean_y = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double pred = fit.slope * xs[i] + fit.intercept;
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  fit.r2 = ss_tot < 1e-300 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

double min_eigenvalue(const std::vector<double>& sym, int n) {
  const SymEig eig = jacobi_eigh(sym, n);
  double mn = eig.values[0];
  for (double v : eig.values) mn = std::min(mn, v);
  return mn;
}

HermitianEig::HermitianEig(const std::vector<std::complex<double>>& h, int n)
    : n_(n) {
  if (n < 1 || static_cast<std::size_t>(n) * n != h.size())
    throw shape_error("HermitianEig: matrix size mismatch");
  const int m = 2 * n;
  std::vector<double> embed(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = h[i * n + j].real();
      const double im = h[i * n + j].imag();
      embed[i * m + j] = re;
      embed[(n + i) * m + (n + j)] = re;
      embed[i * m + (n + j)] = -im;
      embed[(n + i) * m + j] = im;
    }
  }
  eig_ = jacobi_eigh(std::move(embed), m);
}

std::vector<std::complex<double>> HermitianEig::apply_exp(
    double s, const std::vector<std::complex<double>>& v) const {
  if (static_cast<int>(v.size()) != n_)
    throw shape_error("HermitianEig::apply_exp: vector size mismatch");
  const int m = 2 * n_;
  std::vector<double> x(static_cast<std::size_t>(m));
  for (int i = 0; i < n_; ++i) {
    x[i] = v[static_cast<std::size_t>(i)].real();
    x[n_ + i] = v[static_cast<std::size_t>(i)].imag();
  }
  std::vector<double> w(static_cast<std::size_t>(m), 0.0);
  for (int j = 0; j < m; ++j) {
    double acc = 0.0;
    for (int i = 0; i < m; ++i) acc += eig_.vectors[i * m + j] * x[i];
    w[j] = acc * std::exp(s * eig_.values[j]);
  }
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    double re = 0.0;
    double im = 0.0;
    for (int j = 0; j < m; ++j) {
      re += eig_.vectors[i * m + j] * w[j];
      im += eig_.vectors[(n_ + i) * m + j] * w[j];
    }
    out[static_cast<std::size_t>(i)] = {re, im};
  }
  return out;
}

}  // namespace qfreq

#pragma once

#include <complex>
#include <vector>

namespace qfreq {

// Eigendecomposition of a real symmetric matrix: A = V diag(values) V^T with
// V stored row-major, column j = eigenvector j. Cyclic Jacobi, chosen for
// robustness at the small sizes used here (N <= 128 after embedding).
struct SymEig {
  int n = 0;
  std::vector<double> values;
  std::vector<double> vectors;
};

SymEig jacobi_eigh(std::vector<double> a, int n, int max_sweeps = 100,
                   double tol = 1e-12);

double min_eigenvalue(const std::vector<double>& sym, int n);

// Least-squares line fit with the coefficient of determination.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

// N x N Hermitian matrix embedded as the 2N x 2N real symmetric
// [[Re, -Im], [Im, Re]]; exposes exp(s*H) v through the embedding.
class HermitianEig {
 public:
  HermitianEig(const std::vector<std::complex<double>>& h, int n);

  std::vector<std::complex<double>> apply_exp(
      double s, const std::vector<std::complex<double>>& v) const;

 private:
  int n_;
  SymEig eig_;
};

}  // namespace qfreq

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qfreq/ansatz.hpp"
#include "qfreq/fourier.hpp"
#include "qfreq/rng.hpp"
#include "qfreq/training.hpp"

using namespace qfreq;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("dft_uniform examples") {
  // constant signal: only the DC bin, (1/sqrt(4)) * 4 = 2
  const std::vector<double> ones{1.0, 1.0, 1.0, 1.0};
  const SpectrumSeries dc = dft_uniform(ones);
  CHECK(std::abs(dc.at(0.0) - cplx{2.0, 0.0}) < 1e-12);
  for (double k : {-2.0, -1.0, 1.0})
    CHECK(std::abs(dc.at(k)) < 1e-12);

  // sine: spikes at +-1 of magnitude sqrt(N)/2
  const int n = 64;
  std::vector<double> sine(n);
  for (int i = 0; i < n; ++i) sine[i] = std::sin(kTwoPi * i / n);
  const SpectrumSeries s = dft_uniform(sine);
  CHECK(std::abs(s.at(1.0)) == doctest::Approx(std::sqrt(64.0) / 2.0));
  CHECK(std::abs(s.at(-1.0)) == doctest::Approx(std::sqrt(64.0) / 2.0));
  for (std::size_t j = 0; j < s.size(); ++j)
    if (std::abs(std::abs(s.k_values[j]) - 1.0) > 0.5)
      CHECK(std::abs(s.amplitudes[j]) < 1e-12);

  // unit impulse: flat spectrum of magnitude 1/sqrt(N)
  std::vector<double> impulse(16, 0.0);
  impulse[0] = 1.0;
  const SpectrumSeries imp = dft_uniform(impulse);
  for (const cplx& a : imp.amplitudes)
    CHECK(std::abs(a) == doctest::Approx(0.25));

  CHECK_THROWS_AS(dft_uniform(std::vector<double>{}), shape_error);
}

TEST_CASE("dft properties: unitarity, linearity, conjugate symmetry") {
  Rng rng(31);
  const int n = 48;
  std::vector<double> u(n), v(n);
  for (int i = 0; i < n; ++i) {
    u[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
    v[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
  }
  const SpectrumSeries fu = dft_uniform(u);
  const SpectrumSeries fv = dft_uniform(v);

  double ex = 0.0, ek = 0.0;
  for (double x : u) ex += x * x;
  for (const cplx& a : fu.amplitudes) ek += std::norm(a);
  CHECK(std::abs(ex - ek) / ex < 1e-10);

  std::vector<double> mix(n);
  for (int i = 0; i < n; ++i)
    mix[static_cast<std::size_t>(i)] = 0.7 * u[static_cast<std::size_t>(i)] -
                                       1.3 * v[static_cast<std::size_t>(i)];
  const SpectrumSeries fm = dft_uniform(mix);
  for (std::size_t j = 0; j < fm.size(); ++j)
    CHECK(std::abs(fm.amplitudes[j] -
                   (0.7 * fu.amplitudes[j] - 1.3 * fv.amplitudes[j])) < 1e-12);

  for (std::size_t j = 0; j < fu.size(); ++j) {
    const double k = fu.k_values[j];
    if (k > 0.0 && k < n / 2)
      CHECK(std::abs(fu.at(-k) - std::conj(fu.at(k))) < 1e-12);
  }
}

TEST_CASE("nudft_projected") {
  // reduces to dft_uniform for 1-D uniform data along p = [1]
  const int n = 32;
  std::vector<std::vector<double>> points;
  std::vector<double> values;
  Rng rng(33);
  for (int i = 0; i < n; ++i) {
    points.push_back({kTwoPi * i / n});
    values.push_back(rng.uniform(-1.0, 1.0));
  }
  const ProjectionDirection p1{{1.0}};
  const SpectrumSeries uni = dft_uniform(values);
  const SpectrumSeries pro = nudft_projected(points, values, p1, uni.k_values);
  for (std::size_t j = 0; j < uni.size(); ++j)
    CHECK(std::abs(uni.amplitudes[j] - pro.amplitudes[j]) < 1e-12);

  // all-zero values give an all-zero spectrum
  const std::vector<double> zeros(static_cast<std::size_t>(n), 0.0);
  const SpectrumSeries z = nudft_projected(points, zeros, p1, uni.k_values);
  for (const cplx& a : z.amplitudes) CHECK(std::abs(a) == 0.0);

  // 2-D points on a line along p with y = sin(p.x): peak at k = 1
  std::vector<std::vector<double>> line;
  std::vector<double> ly;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 64; ++i) {
    const double t = kTwoPi * i / 64;
    line.push_back({t * inv_sqrt2, t * inv_sqrt2});
    ly.push_back(std::sin(t));
  }
  const ProjectionDirection diag{{inv_sqrt2, inv_sqrt2}};
  std::vector<double> kgrid;
  for (int k = 0; k <= 4; ++k) kgrid.push_back(static_cast<double>(k));
  const SpectrumSeries ls = nudft_projected(line, ly, diag, kgrid);
  const auto peaks = top_peaks(ls, 1);
  CHECK(peaks[0] == doctest::Approx(1.0));
  // direct-sum oracle at three decimals
  cplx direct{0.0, 0.0};
  for (int i = 0; i < 64; ++i) {
    const double proj = diag.components[0] * line[static_cast<std::size_t>(i)][0] +
                        diag.components[1] * line[static_cast<std::size_t>(i)][1];
    direct += cplx{std::cos(-proj), std::sin(-proj)} * ly[static_cast<std::size_t>(i)];
  }
  direct /= std::sqrt(64.0);
  CHECK(std::abs(ls.at(1.0) - direct) < 1e-3);

  CHECK_THROWS_AS(nudft_projected(line, values, diag, kgrid), shape_error);
}

TEST_CASE("principal_direction") {
  // points on the line (t, 2t)
  std::vector<std::vector<double>> line;
  for (int i = -5; i <= 5; ++i)
    line.push_back({static_cast<double>(i), 2.0 * i});
  const ProjectionDirection p = principal_direction(line);
  CHECK(p.components[0] == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK(p.components[1] == doctest::Approx(2.0 / std::sqrt(5.0)));

  const std::vector<std::vector<double>> axis0{{1.0, 0.0}, {-1.0, 0.0}};
  const ProjectionDirection p0 = principal_direction(axis0);
  CHECK(p0.components[0] == doctest::Approx(1.0));
  CHECK(std::abs(p0.components[1]) < 1e-12);

  // 4-D cloud against a test-local Jacobi eigendecomposition
  Rng rng(37);
  std::vector<std::vector<double>> cloud;
  for (int i = 0; i < 120; ++i) {
    const double t = rng.normal();
    cloud.push_back({2.0 * t + 0.1 * rng.normal(), t + 0.1 * rng.normal(),
                     0.5 * t + 0.1 * rng.normal(), 0.1 * rng.normal()});
  }
  const ProjectionDirection pc = principal_direction(cloud);
  std::vector<double> mean(4, 0.0);
  for (const auto& x : cloud)
    for (int d = 0; d < 4; ++d) mean[static_cast<std::size_t>(d)] += x[static_cast<std::size_t>(d)];
  for (double& m : mean) m /= static_cast<double>(cloud.size());
  std::vector<double> cov(16, 0.0);
  for (const auto& x : cloud)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        cov[static_cast<std::size_t>(a * 4 + b)] +=
            (x[static_cast<std::size_t>(a)] - mean[static_cast<std::size_t>(a)]) *
            (x[static_cast<std::size_t>(b)] - mean[static_cast<std::size_t>(b)]);
  for (double& c : cov) c /= static_cast<double>(cloud.size() - 1);
  std::vector<double> vecs;
  oracles::jacobi_small(cov, vecs, 4);
  int arg = 0;
  for (int j = 1; j < 4; ++j)
    if (cov[static_cast<std::size_t>(j * 4 + j)] >
        cov[static_cast<std::size_t>(arg * 4 + arg)])
      arg = j;
  std::vector<double> lead(4);
  for (int i = 0; i < 4; ++i) lead[static_cast<std::size_t>(i)] =
      vecs[static_cast<std::size_t>(i * 4 + arg)];
  int big = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(lead[static_cast<std::size_t>(i)]) >
        std::abs(lead[static_cast<std::size_t>(big)]))
      big = i;
  if (lead[static_cast<std::size_t>(big)] < 0)
    for (double& c : lead) c = -c;
  for (int i = 0; i < 4; ++i)
    CHECK(pc.components[static_cast<std::size_t>(i)] ==
          doctest::Approx(lead[static_cast<std::size_t>(i)]).epsilon(1e-8));

  const std::vector<std::vector<double>> flat{{1.0, 1.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(principal_direction(flat), degenerate_data_error);
}

TEST_CASE("relative_error") {
  SpectrumSeries y;
  y.k_values = {0.0, 1.0};
  y.amplitudes = {cplx{1.0, 0.0}, cplx{0.5, 0.5}};
  SpectrumSeries f = y;
  CHECK(relative_error(f, y, 1.0) == doctest::Approx(0.0));
  f.amplitudes[1] = {0.0, 0.0};
  CHECK(relative_error(f, y, 1.0) == doctest::Approx(1.0));
  f.amplitudes[1] = 2.0 * y.amplitudes[1];
  CHECK(relative_error(f, y, 1.0) == doctest::Approx(1.0));

  SpectrumSeries tiny = y;
  tiny.amplitudes[0] = {1e-13, 0.0};
  CHECK_THROWS_AS(relative_error(f, tiny, 0.0), numeric_error);
}

TEST_CASE("top_peaks") {
  // f_L labels: peak order [1, 3, 8] with the 3-vs-8 tie broken low
  const Dataset data = curve_dataset(CurveKind::Low, 64);
  const auto peaks = top_peaks(dft_uniform(data.labels), 3);
  REQUIRE(peaks.size() == 3);
  CHECK(peaks[0] == doctest::Approx(1.0));
  CHECK(peaks[1] == doctest::Approx(3.0));
  CHECK(peaks[2] == doctest::Approx(8.0));

  const Dataset high = curve_dataset(CurveKind::High, 64);
  CHECK(top_peaks(dft_uniform(high.labels), 3)[0] == doctest::Approx(8.0));

  // monotone spectrum with its single maximum at k = 0
  SpectrumSeries mono;
  for (int k = 0; k < 6; ++k) {
    mono.k_values.push_back(static_cast<double>(k));
    mono.amplitudes.push_back(cplx{1.0 / (1.0 + k), 0.0});
  }
  const auto m = top_peaks(mono, 3);
  REQUIRE(m.size() == 1);
  CHECK(m[0] == doctest::Approx(0.0));
}

TEST_CASE("pqc_fourier_coefficients") {
  // constant circuit: C(0) only
  AnsatzSpec ry;
  ry.name = "const";
  ry.num_qubits = 1;
  ry.num_layers = 1;
  ry.feature_dim = 1;
  ry.observable = Observable::single_z(0);
  ry.gates.push_back({SlotRole::Trainable, Axis::Y, 0, -1, 0, 0, 1.0});
  ry.parameter_count = 1;
  validate_spec(ry);
  const auto cc = pqc_fourier_coefficients(ry, {0.4});
  CHECK(cc.size() == 1);
  CHECK(std::abs(cc.at(0) - cplx{std::cos(0.4), 0.0}) < 1e-12);

  // f = cos(x): C(+-1) = 1/2, C(0) = 0
  AnsatzSpec rx;
  rx.name = "cos";
  rx.num_qubits = 1;
  rx.num_layers = 1;
  rx.feature_dim = 1;
  rx.observable = Observable::single_z(0);
  rx.gates.push_back({SlotRole::Encoding, Axis::X, 0, -1, -1, 0, 1.0});
  rx.parameter_count = 0;
  rx.encoding_count = 1;
  validate_spec(rx);
  const auto cos_coeffs = pqc_fourier_coefficients(rx, {});
  CHECK(std::abs(cos_coeffs.at(1) - cplx{0.5, 0.0}) < 1e-12);
  CHECK(std::abs(cos_coeffs.at(-1) - cplx{0.5, 0.0}) < 1e-12);
  CHECK(std::abs(cos_coeffs.at(0)) < 1e-12);

  // reconstruction oracle on a small curve family
  Rng rng(41);
  const AnsatzSpec small = curve_ansatz(2, 3);
  const ParamVector params = random_params(small, 5, 0.0, kTwoPi);
  const auto coeffs = pqc_fourier_coefficients(small, params);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = rng.uniform(0.0, kTwoPi);
    cplx acc{0.0, 0.0};
    for (const auto& [w, c] : coeffs)
      acc += c * cplx{std::cos(w * x), std::sin(w * x)};
    CHECK(std::abs(acc.imag()) < 1e-9);
    CHECK(std::abs(acc.real() - evaluate(small, params, {&x, 1})) < 1e-9);
  }
  // conjugate symmetry of real outputs
  for (const auto& [w, c] : coeffs)
    CHECK(std::abs(c - std::conj(coeffs.at(-w))) < 1e-12);
}

TEST_CASE("parseval_gap") {
  Rng rng(43);
  std::vector<double> eps(64);
  for (double& e : eps) e = rng.uniform(-2.0, 2.0);
  CHECK(parseval_gap(eps, dft_uniform(eps)) <= 1e-10);

  const std::vector<double> zeros(16, 0.0);
  CHECK(parseval_gap(zeros, dft_uniform(zeros)) == 0.0);

  std::vector<double> delta(16, 0.0);
  delta[0] = 1.0;
  CHECK(parseval_gap(delta, dft_uniform(delta)) <= 1e-12);
}

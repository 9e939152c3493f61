#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qfreq/rng.hpp"
#include "qfreq/statevector.hpp"

using namespace qfreq;

namespace {
constexpr double kPi = std::numbers::pi;

StateVector random_gates(Rng& rng, int n, int count) {
  StateVector state = init_zero(n);
  for (int g = 0; g < count; ++g) {
    const int pick = static_cast<int>(rng.below(4));
    const int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (pick == 3 && n > 1) {
      int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (t == q) t = (t + 1) % n;
      apply_cnot(state, q, t);
    } else {
      const Axis axis = pick == 0 ? Axis::X : pick == 1 ? Axis::Y : Axis::Z;
      apply_rotation(state, axis, q, rng.uniform(-kPi, kPi));
    }
  }
  return state;
}
}  // namespace

TEST_CASE("init_zero") {
  const StateVector one = init_zero(1);
  CHECK(one.amplitudes[0] == cplx{1.0, 0.0});
  CHECK(one.amplitudes[1] == cplx{0.0, 0.0});
  const StateVector two = init_zero(2);
  CHECK(two.dim() == 4);
  CHECK(two.amplitudes[0] == cplx{1.0, 0.0});
  for (std::size_t i = 1; i < 4; ++i) CHECK(two.amplitudes[i] == cplx{0.0, 0.0});
  CHECK_THROWS_AS(init_zero(0), config_error);
  CHECK_THROWS_AS(init_zero(21), config_error);
}

TEST_CASE("rotation examples") {
  StateVector s = init_zero(1);
  apply_rotation(s, Axis::X, 0, kPi);
  CHECK(std::abs(s.amplitudes[0]) < 1e-15);
  CHECK(std::abs(s.amplitudes[1] - cplx{0.0, -1.0}) < 1e-15);

  s = init_zero(1);
  apply_rotation(s, Axis::Y, 0, kPi / 2);
  const double r = std::sqrt(2.0) / 2.0;
  CHECK(std::abs(s.amplitudes[0] - cplx{r, 0.0}) < 1e-15);
  CHECK(std::abs(s.amplitudes[1] - cplx{r, 0.0}) < 1e-15);

  s = init_zero(1);
  apply_rotation(s, Axis::Z, 0, 0.37);
  CHECK(std::abs(s.amplitudes[0] -
                 cplx{std::cos(0.185), -std::sin(0.185)}) < 1e-15);
  CHECK(expectation(s, Observable::single_z(0)) == doctest::Approx(1.0));

  CHECK_THROWS_AS(apply_rotation(s, Axis::X, 1, 0.1), index_error);
  CHECK_THROWS_AS(apply_rotation(s, Axis::X, 0, std::nan("")), numeric_error);
}

TEST_CASE("cnot examples") {
  // |10> -> |11>
  StateVector s = init_zero(2);
  apply_rotation(s, Axis::X, 0, kPi);  // puts qubit 0 into |1> (up to phase)
  apply_cnot(s, 0, 1);
  CHECK(std::abs(std::abs(s.amplitudes[3]) - 1.0) < 1e-15);

  // control 0 is the identity
  s = init_zero(2);
  apply_cnot(s, 0, 1);
  CHECK(std::abs(s.amplitudes[0] - cplx{1.0, 0.0}) < 1e-15);

  // Bell state
  s = init_zero(2);
  apply_rotation(s, Axis::Y, 0, kPi / 2);  // (|00> + |10>)/sqrt(2)
  apply_cnot(s, 0, 1);
  CHECK(std::abs(s.amplitudes[0] - cplx{std::sqrt(0.5), 0.0}) < 1e-12);
  CHECK(std::abs(s.amplitudes[3] - cplx{std::sqrt(0.5), 0.0}) < 1e-12);

  CHECK_THROWS_AS(apply_cnot(s, 1, 1), index_error);
}

TEST_CASE("expectation examples") {
  StateVector s = init_zero(1);
  CHECK(expectation(s, Observable::single_z(0)) == doctest::Approx(1.0));

  apply_rotation(s, Axis::Y, 0, kPi / 2);
  CHECK(std::abs(expectation(s, Observable::single_z(0))) < 1e-12);

  // |01>: product of eigenvalues (+1)(-1) = -1
  StateVector t = init_zero(2);
  apply_rotation(t, Axis::X, 1, kPi);
  CHECK(expectation(t, Observable::full_z()) == doctest::Approx(-1.0));
}

TEST_CASE("observable traces") {
  const Observable full = Observable::full_z();
  for (int n = 1; n <= 4; ++n) {
    CHECK(full.trace_m(n) == 0.0);
    CHECK(full.trace_m2(n) == doctest::Approx(std::ldexp(1.0, n)));
  }
  // Brute-force dense check for n <= 4: M = diag(+-1) over the mask.
  for (int n = 1; n <= 4; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t mask = full.mask(n);
    double tr = 0.0, tr2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      int bits = 0;
      for (std::size_t b = i & mask; b != 0; b >>= 1) bits += b & 1;
      const double d = bits % 2 == 0 ? 1.0 : -1.0;
      tr += d;
      tr2 += d * d;
    }
    CHECK(tr == doctest::Approx(full.trace_m(n)));
    CHECK(tr2 == doctest::Approx(full.trace_m2(n)));
  }
  CHECK_THROWS_AS(Observable::z_subset({}), config_error);
}

TEST_CASE("inner product") {
  Rng rng(5);
  const StateVector psi = random_gates(rng, 3, 30);
  CHECK(std::abs(inner_product(psi, psi) - cplx{1.0, 0.0}) < 1e-12);

  StateVector zero = init_zero(1);
  StateVector one = init_zero(1);
  apply_rotation(one, Axis::X, 0, kPi);
  CHECK(std::abs(inner_product(zero, one)) < 1e-15);

  // fidelity between RX(0.3)|0> and RX(0.7)|0> is cos^2(0.2)
  StateVector a = init_zero(1);
  StateVector b = init_zero(1);
  apply_rotation(a, Axis::X, 0, 0.3);
  apply_rotation(b, Axis::X, 0, 0.7);
  const double fid = std::norm(inner_product(a, b));
  CHECK(fid == doctest::Approx(std::cos(0.2) * std::cos(0.2)).epsilon(1e-9));
  CHECK(fid == doctest::Approx(0.960530).epsilon(1e-5));

  const StateVector c = init_zero(2);
  CHECK_THROWS_AS(inner_product(zero, c), shape_error);
}

TEST_CASE("norm preservation over long random sequences") {
  Rng rng(42);
  for (int n = 1; n <= 8; ++n) {
    const StateVector s = random_gates(rng, n, 100);
    CHECK(std::abs(squared_norm(s) - 1.0) <= 1e-10);
  }
}

TEST_CASE("rotation followed by its inverse restores the state") {
  Rng rng(43);
  StateVector s = random_gates(rng, 4, 40);
  const StateVector before = s;
  for (const Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    for (int q = 0; q < 4; ++q) {
      const double phi = rng.uniform(-kPi, kPi);
      apply_rotation(s, axis, q, phi);
      apply_rotation(s, axis, q, -phi);
    }
  }
  for (std::size_t i = 0; i < s.dim(); ++i)
    CHECK(std::abs(s.amplitudes[i] - before.amplitudes[i]) < 1e-12);
}

TEST_CASE("expectation bounds") {
  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector s = random_gates(rng, 5, 60);
    const double e = expectation(s, Observable::full_z());
    CHECK(e >= -1.0 - 1e-12);
    CHECK(e <= 1.0 + 1e-12);
  }
}

TEST_CASE("gate application agrees with the dense-matrix oracle") {
  Rng rng(7);
  for (int n = 1; n <= 3; ++n) {
    StateVector s = init_zero(n);
    std::vector<cplx> dense(s.amplitudes.begin(), s.amplitudes.end());
    for (int step = 0; step < 25; ++step) {
      const int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      const int pick = static_cast<int>(rng.below(4));
      if (pick == 3 && n > 1) {
        int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (t == q) t = (t + 1) % n;
        apply_cnot(s, q, t);
        dense = oracles::matvec(oracles::cnot_matrix(q, t, n), dense);
      } else {
        const double phi = rng.uniform(-kPi, kPi);
        const Axis axis = pick == 0 ? Axis::X : pick == 1 ? Axis::Y : Axis::Z;
        apply_rotation(s, axis, q, phi);
        const auto u = pick == 0   ? oracles::rx(phi)
                       : pick == 1 ? oracles::ry(phi)
                                   : oracles::rz(phi);
        dense = oracles::matvec(oracles::embed_single(u, q, n), dense);
      }
      for (std::size_t i = 0; i < s.dim(); ++i)
        REQUIRE(std::abs(s.amplitudes[i] - dense[i]) < 1e-12);
    }
  }
}

TEST_CASE("pauli_bilinear against dense matrices") {
  Rng rng(8);
  const StateVector bra = random_gates(rng, 3, 20);
  const StateVector ket = random_gates(rng, 3, 20);
  const std::array<std::array<cplx, 4>, 3> paulis = {{
      {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}},    // X
      {cplx{0, 0}, cplx{0, -1}, cplx{0, 1}, cplx{0, 0}},   // Y
      {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}},   // Z
  }};
  for (int axis = 0; axis < 3; ++axis) {
    for (int q = 0; q < 3; ++q) {
      const auto full = oracles::embed_single(paulis[axis], q, 3);
      const auto av = oracles::matvec(full, ket.amplitudes);
      cplx expected{0.0, 0.0};
      for (std::size_t i = 0; i < av.size(); ++i)
        expected += std::conj(bra.amplitudes[i]) * av[i];
      const cplx got = pauli_bilinear(bra, ket, static_cast<Axis>(axis), q);
      CHECK(std::abs(got - expected) < 1e-12);
    }
  }
}

#include "qfreq/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qfreq/kernels.hpp"

namespace qfreq {

namespace {

void check_qubit(int num_qubits, int qubit, const char* what) {
  if (qubit < 0 || qubit >= num_qubits)
    throw index_error(std::string(what) + " index " + std::to_string(qubit) +
                      " out of range for " + std::to_string(num_qubits) +
                      " qubits");
}

}  // namespace

Observable Observable::z_subset(std::vector<int> qs) {
  if (qs.empty())
    throw config_error("ZSubset observable needs at least one qubit");
  return {ObservableKind::ZSubset, std::move(qs)};
}

std::size_t Observable::mask(int num_qubits) const {
  if (kind == ObservableKind::FullZString)
    return (std::size_t{1} << num_qubits) - 1;
  std::size_t m = 0;
  for (int q : qubits) {
    check_qubit(num_qubits, q, "observable qubit");
    m |= bit_stride(num_qubits, q);
  }
  return m;
}

double Observable::trace_m(int num_qubits) const {
  const double dim = std::ldexp(1.0, num_qubits);
  return mask(num_qubits) == 0 ? dim : 0.0;
}

double Observable::trace_m2(int num_qubits) const {
  return std::ldexp(1.0, num_qubits);  // M^2 = I for any Z string
}

StateVector init_zero(int num_qubits) {
  if (num_qubits < 1 || num_qubits > 20)
    throw config_error("qubit count " + std::to_string(num_qubits) +
                       " outside supported range [1, 20]");
  StateVector state;
  state.num_qubits = num_qubits;
  state.amplitudes.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
  state.amplitudes[0] = cplx{1.0, 0.0};
  return state;
}

std::size_t bit_stride(int num_qubits, int qubit) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

void apply_rotation(StateVector& state, Axis axis, int qubit, double angle) {
  check_qubit(state.num_qubits, qubit, "rotation qubit");
  if (!std::isfinite(angle))
    throw numeric_error("rotation angle is not finite");
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  cplx u00, u01, u10, u11;
  switch (axis) {
    case Axis::X:
      u00 = {c, 0.0};
      u01 = {0.0, -s};
      u10 = {0.0, -s};
      u11 = {c, 0.0};
      break;
    case Axis::Y:
      u00 = {c, 0.0};
      u01 = {-s, 0.0};
      u10 = {s, 0.0};
      u11 = {c, 0.0};
      break;
    case Axis::Z:
      u00 = {c, -s};
      u01 = {0.0, 0.0};
      u10 = {0.0, 0.0};
      u11 = {c, s};
      break;
  }
  kernels::active().apply2x2(state.amplitudes.data(), state.dim(),
                             bit_stride(state.num_qubits, qubit), u00, u01,
                             u10, u11);
}

void apply_cnot(StateVector& state, int control, int target) {
  check_qubit(state.num_qubits, control, "cnot control");
  check_qubit(state.num_qubits, target, "cnot target");
  if (control == target)
    throw index_error("cnot control and target must differ");
  kernels::active().cnot(state.amplitudes.data(), state.dim(),
                         bit_stride(state.num_qubits, control),
                         bit_stride(state.num_qubits, target));
}

double expectation(const StateVector& state, const Observable& obs) {
  return kernels::active().expect_zmask(state.amplitudes.data(), state.dim(),
                                        obs.mask(state.num_qubits));
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits != b.num_qubits)
    throw shape_error("inner_product: qubit counts differ");
  return kernels::active().inner(a.amplitudes.data(), b.amplitudes.data(),
                                 a.dim());
}

double squared_norm(const StateVector& state) {
  double acc = 0.0;
  for (const cplx& a : state.amplitudes) acc += std::norm(a);
  return acc;
}

void apply_zmask(StateVector& state, std::size_t mask) {
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (std::popcount(i & mask) & 1U) state.amplitudes[i] = -state.amplitudes[i];
  }
}

cplx pauli_bilinear(const StateVector& bra, const StateVector& ket, Axis axis,
                    int qubit) {
  if (bra.num_qubits != ket.num_qubits)
    throw shape_error("pauli_bilinear: qubit counts differ");
  check_qubit(ket.num_qubits, qubit, "pauli qubit");
  const std::size_t m = bit_stride(ket.num_qubits, qubit);
  const std::size_t dim = ket.dim();
  const cplx* u = bra.amplitudes.data();
  const cplx* v = ket.amplitudes.data();
  cplx acc{0.0, 0.0};
  switch (axis) {
    case Axis::X:
      for (std::size_t i = 0; i < dim; ++i) acc += std::conj(u[i]) * v[i ^ m];
      break;
    case Axis::Y:
      // (Y v)_i = i * (-1 if bit clear else +1) * v_{i^m}
      for (std::size_t i = 0; i < dim; ++i) {
        const cplx t = std::conj(u[i]) * v[i ^ m];
        acc += (i & m) ? cplx{-t.imag(), t.real()} : cplx{t.imag(), -t.real()};
      }
      break;
    case Axis::Z:
      for (std::size_t i = 0; i < dim; ++i) {
        const cplx t = std::conj(u[i]) * v[i];
        acc += (i & m) ? -t : t;
      }
      break;
  }
  return acc;
}

}  // namespace qfreq

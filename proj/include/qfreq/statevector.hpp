#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qfreq/errors.hpp"

namespace qfreq {

using cplx = std::complex<double>;

enum class Axis { X, Y, Z };

// Dense n-qubit state. Qubit 0 is the leftmost bit of the basis-state label
// (big-endian), so |q0 q1 ... q_{n-1}> sits at index q0*2^{n-1} + ... + q_{n-1}.
struct StateVector {
  int num_qubits = 0;
  std::vector<cplx> amplitudes;

  std::size_t dim() const { return amplitudes.size(); }
};

enum class ObservableKind { FullZString, SingleZ, ZSubset };

// Pauli-Z string observables: Z on every qubit, on one qubit, or on a subset.
struct Observable {
  ObservableKind kind = ObservableKind::FullZString;
  std::vector<int> qubits;  // used by SingleZ / ZSubset

  static Observable full_z() { return {ObservableKind::FullZString, {}}; }
  static Observable single_z(int qubit) {
    return {ObservableKind::SingleZ, {qubit}};
  }
  static Observable z_subset(std::vector<int> qs);

  // Bit mask of the measured qubits in index space; validates indices.
  std::size_t mask(int num_qubits) const;

  // Tr M and Tr M^2 for the dense 2^n x 2^n matrix.
  double trace_m(int num_qubits) const;
  double trace_m2(int num_qubits) const;
};

StateVector init_zero(int num_qubits);

// Index stride of a qubit under the big-endian convention.
std::size_t bit_stride(int num_qubits, int qubit);

// R_A(angle) = exp(-i * angle * A / 2), applied in place.
void apply_rotation(StateVector& state, Axis axis, int qubit, double angle);

void apply_cnot(StateVector& state, int control, int target);

double expectation(const StateVector& state, const Observable& obs);

cplx inner_product(const StateVector& a, const StateVector& b);

double squared_norm(const StateVector& state);

// state <- M|state> for a Z-mask observable (sign flips only).
void apply_zmask(StateVector& state, std::size_t mask);

// <bra| A_qubit |ket> for a single-qubit Pauli A; used by gradient sweeps.
cplx pauli_bilinear(const StateVector& bra, const StateVector& ket, Axis axis,
                    int qubit);

}  // namespace qfreq

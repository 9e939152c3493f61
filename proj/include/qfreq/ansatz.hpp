#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qfreq/statevector.hpp"

namespace qfreq {

enum class SlotRole { Trainable, Encoding, Entangler };

// One circuit position: a trainable rotation, a data-encoding rotation, or a
// CNOT. Encoding slots rotate by feature_scale * x[feature_index].
struct GateSlot {
  SlotRole role = SlotRole::Trainable;
  Axis axis = Axis::Y;
  int qubit = 0;
  int target = -1;        // entangler only
  int param_index = -1;   // trainable only
  int feature_index = 0;  // encoding only
  double feature_scale = 1.0;
};

// Declarative circuit layout. Built by the preset constructors below or
// loaded from a config document; immutable once constructed.
struct AnsatzSpec {
  std::string name;
  int num_qubits = 0;
  int num_layers = 0;
  std::vector<GateSlot> gates;  // flattened, circuit order
  Observable observable = Observable::full_z();
  bool trailing_trainable_block = false;
  double output_scale = 1.0;
  int parameter_count = 0;
  int encoding_count = 0;
  int feature_dim = 0;
};

using ParamVector = std::vector<double>;

// Integer frequencies the circuit output can carry: {-E, ..., E}.
struct FrequencySpectrum {
  int max_frequency = 0;
  std::vector<int> frequencies;
};

// Named layouts: "curve-4x20" (160 params), "iris-2x6" (12 params),
// "dlp-8x24" (192 params).
AnsatzSpec preset(std::string_view name);

// Curve-fitting family: each layer is trainable RY on every qubit, a CNOT
// chain, a second trainable RY round, then RX(x) on every qubit.
AnsatzSpec curve_ansatz(int num_qubits, int num_layers);

// Iris family: per cycle two RY encodings cycling through the features,
// trainable RY per qubit, then CNOT(0,1).
AnsatzSpec iris_ansatz();

// DLP family: per layer trainable RY on every qubit, a CNOT ring, then
// RX(2*pi*x/p) on every qubit.
AnsatzSpec dlp_ansatz(int num_qubits, int num_layers, long prime);

// Consistency checks shared by builders and the config loader.
void validate_spec(const AnsatzSpec& spec);

StateVector prepare_state(const AnsatzSpec& spec, const ParamVector& params,
                          std::span<const double> x);

// output_scale * <psi(x,theta)| M |psi(x,theta)>.
double evaluate(const AnsatzSpec& spec, const ParamVector& params,
                std::span<const double> x);

// d f / d theta_l for every l. Values equal the two-point parameter-shift
// rule [f(theta_l + pi/2) - f(theta_l - pi/2)] / 2 (exact for this gate set);
// computed with a forward/backward sweep so a full gradient costs O(gates)
// instead of O(params * gates).
std::vector<double> gradient(const AnsatzSpec& spec, const ParamVector& params,
                             std::span<const double> x);

// Literal two-evaluation shift rule, kept as the slow reference path.
std::vector<double> gradient_shift_rule(const AnsatzSpec& spec,
                                        const ParamVector& params,
                                        std::span<const double> x);

// Accessible spectrum; requires unit-scale single-feature encodings.
FrequencySpectrum spectrum(const AnsatzSpec& spec);

}  // namespace qfreq

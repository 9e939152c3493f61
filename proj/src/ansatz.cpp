#include "qfreq/ansatz.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qfreq {

namespace {

double slot_angle(const GateSlot& g, const ParamVector& params,
                  std::span<const double> x) {
  if (g.role == SlotRole::Trainable) return params[g.param_index];
  return g.feature_scale * x[g.feature_index];
}

void apply_slot(StateVector& state, const GateSlot& g,
                const ParamVector& params, std::span<const double> x) {
  if (g.role == SlotRole::Entangler) {
    apply_cnot(state, g.qubit, g.target);
  } else {
    apply_rotation(state, g.axis, g.qubit, slot_angle(g, params, x));
  }
}

void apply_slot_inverse(StateVector& state, const GateSlot& g,
                        const ParamVector& params, std::span<const double> x) {
  if (g.role == SlotRole::Entangler) {
    apply_cnot(state, g.qubit, g.target);
  } else {
    apply_rotation(state, g.axis, g.qubit, -slot_angle(g, params, x));
  }
}

void check_call(const AnsatzSpec& spec, const ParamVector& params,
                std::span<const double> x) {
  if (static_cast<int>(params.size()) != spec.parameter_count)
    throw shape_error("parameter vector length " +
                      std::to_string(params.size()) + " does not match spec '" +
                      spec.name + "' (" + std::to_string(spec.parameter_count) +
                      ")");
  if (static_cast<int>(x.size()) < spec.feature_dim)
    throw shape_error("feature vector length " + std::to_string(x.size()) +
                      " below spec feature dimension " +
                      std::to_string(spec.feature_dim));
}

}  // namespace

void validate_spec(const AnsatzSpec& spec) {
  if (spec.num_qubits < 1 || spec.num_qubits > 20)
    throw config_error("ansatz qubit count outside [1, 20]");
  std::vector<char> seen(static_cast<std::size_t>(spec.parameter_count), 0);
  int trainables = 0;
  int encodings = 0;
  for (const GateSlot& g : spec.gates) {
    if (g.qubit < 0 || g.qubit >= spec.num_qubits)
      throw config_error("gate qubit out of range in ansatz '" + spec.name + "'");
    switch (g.role) {
      case SlotRole::Trainable:
        if (g.param_index < 0 || g.param_index >= spec.parameter_count)
          throw config_error("trainable slot parameter index out of range");
        if (seen[static_cast<std::size_t>(g.param_index)]++)
          throw config_error("parameter index " +
                             std::to_string(g.param_index) +
                             " used by more than one slot");
        ++trainables;
        break;
      case SlotRole::Encoding:
        if (g.feature_index < 0 || g.feature_index >= spec.feature_dim)
          throw config_error("encoding slot feature index out of range");
        ++encodings;
        break;
      case SlotRole::Entangler:
        if (g.target < 0 || g.target >= spec.num_qubits || g.target == g.qubit)
          throw config_error("entangler target invalid in ansatz '" +
                             spec.name + "'");
        break;
    }
  }
  if (trainables != spec.parameter_count)
    throw config_error("trainable slot count " + std::to_string(trainables) +
                       " does not match declared parameter count " +
                       std::to_string(spec.parameter_count));
  if (encodings != spec.encoding_count)
    throw config_error("encoding slot count mismatch in ansatz '" + spec.name +
                       "'");
  spec.observable.mask(spec.num_qubits);  // validates observable qubits
}

AnsatzSpec curve_ansatz(int num_qubits, int num_layers) {
  AnsatzSpec spec;
  spec.name = "curve-" + std::to_string(num_qubits) + "x" +
              std::to_string(num_layers);
  spec.num_qubits = num_qubits;
  spec.num_layers = num_layers;
  spec.feature_dim = 1;
  spec.observable = Observable::full_z();
  int p = 0;
  for (int layer = 0; layer < num_layers; ++layer) {
    for (int q = 0; q < num_qubits; ++q)
      spec.gates.push_back({SlotRole::Trainable, Axis::Y, q, -1, p++, 0, 1.0});
    for (int q = 0; q + 1 < num_qubits; ++q)
      spec.gates.push_back({SlotRole::Entangler, Axis::Y, q, q + 1, -1, 0, 1.0});
    for (int q = 0; q < num_qubits; ++q)
      spec.gates.push_back({SlotRole::Trainable, Axis::Y, q, -1, p++, 0, 1.0});
    for (int q = 0; q < num_qubits; ++q)
      spec.gates.push_back({SlotRole::Encoding, Axis::X, q, -1, -1, 0, 1.0});
  }
  spec.parameter_count = p;
  spec.encoding_count = num_qubits * num_layers;
  validate_spec(spec);
  return spec;
}

AnsatzSpec iris_ansatz() {
  AnsatzSpec spec;
  spec.name = "iris-2x6";
  spec.num_qubits = 2;
  spec.num_layers = 6;
  spec.feature_dim = 4;
  spec.observable = Observable::full_z();
  int p = 0;
  for (int cycle = 0; cycle < 6; ++cycle) {
    spec.gates.push_back(
        {SlotRole::Encoding, Axis::Y, 0, -1, -1, (2 * cycle) % 4, 1.0});
    spec.gates.push_back(
        {SlotRole::Encoding, Axis::Y, 1, -1, -1, (2 * cycle + 1) % 4, 1.0});
    spec.gates.push_back({SlotRole::Trainable, Axis::Y, 0, -1, p++, 0, 1.0});
    spec.gates.push_back({SlotRole::Trainable, Axis::Y, 1, -1, p++, 0, 1.0});
    spec.gates.push_back({SlotRole::Entangler, Axis::Y, 0, 1, -1, 0, 1.0});
  }
  spec.parameter_count = p;
  spec.encoding_count = 12;
  validate_spec(spec);
  return spec;
}

AnsatzSpec dlp_ansatz(int num_qubits, int num_layers, long prime) {
  if (prime < 3) throw config_error("dlp ansatz needs a prime >= 3");
  AnsatzSpec spec;
  spec.name = "dlp-" + std::to_string(num_qubits) + "x" +
              std::to_string(num_layers);
  spec.num_qubits = num_qubits;
  spec.num_layers = num_layers;
  spec.feature_dim = 1;
  spec.observable = Observable::full_z();
  const double scale = 2.0 * std::numbers::pi / static_cast<double>(prime);
  int p = 0;
  for (int layer = 0; layer < num_layers; ++layer) {
    for (int q = 0; q < num_qubits; ++q)
      spec.gates.push_back({SlotRole::Trainable, Axis::Y, q, -1, p++, 0, 1.0});
    for (int q = 0; q < num_qubits; ++q)
      spec.gates.push_back({SlotRole::Entangler, Axis::Y, q,
                            (q + 1) % num_qubits, -1, 0, 1.0});
    for (int q = 0; q < num_qubits; ++q)
      spec.gates.push_back({SlotRole::Encoding, Axis::X, q, -1, -1, 0, scale});
  }
  spec.parameter_count = p;
  spec.encoding_count = num_qubits * num_layers;
  validate_spec(spec);
  return spec;
}

AnsatzSpec preset(std::string_view name) {
  if (name == "curve-4x20") return curve_ansatz(4, 20);
  if (name == "iris-2x6") return iris_ansatz();
  if (name == "dlp-8x24") return dlp_ansatz(8, 24, 67);
  throw config_error("unknown ansatz preset '" + std::string(name) + "'");
}

StateVector prepare_state(const AnsatzSpec& spec, const ParamVector& params,
                          std::span<const double> x) {
  check_call(spec, params, x);
  StateVector state = init_zero(spec.num_qubits);
  for (const GateSlot& g : spec.gates) apply_slot(state, g, params, x);
  return state;
}

double evaluate(const AnsatzSpec& spec, const ParamVector& params,
                std::span<const double> x) {
  const StateVector state = prepare_state(spec, params, x);
  return spec.output_scale * expectation(state, spec.observable);
}

std::vector<double> gradient(const AnsatzSpec& spec, const ParamVector& params,
                             std::span<const double> x) {
  check_call(spec, params, x);
  std::vector<double> grad(params.size(), 0.0);

  StateVector ket = init_zero(spec.num_qubits);
  for (const GateSlot& g : spec.gates) apply_slot(ket, g, params, x);

  StateVector bra = ket;
  apply_zmask(bra, spec.observable.mask(spec.num_qubits));

  // Walk the circuit backwards keeping ket = U_{1..l}|0> and
  // bra = U_{l+1..G}^dag M U_{1..G}|0>; then
  // df/dtheta_l = 2 Re <bra| (-i/2) A |ket> = Im <bra| A |ket>.
  for (auto it = spec.gates.rbegin(); it != spec.gates.rend(); ++it) {
    const GateSlot& g = *it;
    if (g.role == SlotRole::Trainable) {
      grad[g.param_index] =
          spec.output_scale * pauli_bilinear(bra, ket, g.axis, g.qubit).imag();
    }
    apply_slot_inverse(ket, g, params, x);
    apply_slot_inverse(bra, g, params, x);
  }
  return grad;
}

std::vector<double> gradient_shift_rule(const AnsatzSpec& spec,
                                        const ParamVector& params,
                                        std::span<const double> x) {
  check_call(spec, params, x);
  const double half_pi = std::numbers::pi / 2.0;
  std::vector<double> grad(params.size());
  ParamVector shifted = params;
  for (std::size_t l = 0; l < params.size(); ++l) {
    shifted[l] = params[l] + half_pi;
    const double plus = evaluate(spec, shifted, x);
    shifted[l] = params[l] - half_pi;
    const double minus = evaluate(spec, shifted, x);
    shifted[l] = params[l];
    grad[l] = 0.5 * (plus - minus);
  }
  return grad;
}

FrequencySpectrum spectrum(const AnsatzSpec& spec) {
  int count = 0;
  for (const GateSlot& g : spec.gates) {
    if (g.role != SlotRole::Encoding) continue;
    if (g.feature_scale != 1.0)
      throw unsupported_error(
          "spectrum: encoding scale must be 1 (ansatz '" + spec.name + "')");
    if (g.feature_index != 0 || spec.feature_dim != 1)
      throw unsupported_error(
          "spectrum: only single-feature ansatze are supported");
    ++count;
  }
  FrequencySpectrum result;
  result.max_frequency = count;
  result.frequencies.reserve(2 * count + 1);
  for (int k = -count; k <= count; ++k) result.frequencies.push_back(k);
  return result;
}

}  // namespace qfreq

#include "qfreq/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "qfreq/io.hpp"
#include "qfreq/kernels.hpp"
#include "qfreq/linalg.hpp"
#include "qfreq/qkernel.hpp"
#include "qfreq/qntk.hpp"

namespace qfreq {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!obj.is_object())
    throw config_error("config: '" + where + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (allowed.find(key) == allowed.end())
      throw config_error("config: unknown key '" + key + "' in " + where);
  }
}

void validate_document(const json& doc) {
  check_keys(doc, "top level",
             {"experiment", "out", "threads", "simd", "ansatz", "dataset",
              "train", "alignment", "svm", "qntk"});
  if (doc.contains("ansatz")) {
    check_keys(doc["ansatz"], "ansatz",
               {"preset", "output_scale", "qubits", "layers", "custom"});
    if (doc["ansatz"].contains("custom")) {
      const json& c = doc["ansatz"]["custom"];
      check_keys(c, "ansatz.custom",
                 {"num_qubits", "feature_dim", "output_scale", "observable",
                  "gates"});
      if (c.contains("observable"))
        check_keys(c["observable"], "ansatz.custom.observable",
                   {"kind", "qubit", "qubits"});
      if (c.contains("gates")) {
        if (!c["gates"].is_array())
          throw config_error("config: ansatz.custom.gates must be an array");
        for (const json& g : c["gates"])
          check_keys(g, "ansatz.custom.gates[]",
                     {"gate", "qubit", "feature", "scale", "control", "target"});
      }
    }
  }
  if (doc.contains("dataset"))
    check_keys(doc["dataset"], "dataset",
               {"kind", "samples", "path", "classes", "prime", "generator",
                "interval_start", "train_fraction", "features"});
  if (doc.contains("train"))
    check_keys(doc["train"], "train",
               {"eta", "iterations", "seed", "init", "record_every",
                "tracked_peaks"});
  if (doc.contains("alignment"))
    check_keys(doc["alignment"], "alignment", {"steps", "eta"});
  if (doc.contains("svm")) check_keys(doc["svm"], "svm", {"c"});
  if (doc.contains("qntk")) check_keys(doc["qntk"], "qntk", {"mode"});
}

template <class T>
T fetch(const json& obj, const char* key, const char* where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw config_error("config: bad value for '" + std::string(where) + "." +
                       key + "': " + e.what());
  }
}

}  // namespace

json default_config(std::string_view experiment) {
  json doc;
  doc["experiment"] = std::string(experiment);
  doc["out"] = "runs/" + std::string(experiment);
  doc["threads"] = 0;
  doc["simd"] = "auto";
  doc["train"] = {{"eta", defaults::kCurveEta},
                  {"iterations", defaults::kCurveIterations},
                  {"seed", 7},
                  {"init", {0.0, kTwoPi}},
                  {"record_every", 1},
                  {"tracked_peaks", defaults::kTrackedPeaks}};
  if (experiment == "fit-curve") {
    doc["ansatz"] = {{"preset", "curve-4x20"},
                     {"output_scale", defaults::kCurveOutputScale}};
    doc["dataset"] = {{"kind", "low"}, {"samples", defaults::kCurveSamples}};
  } else if (experiment == "spectrum") {
    doc["ansatz"] = {{"preset", "curve-4x20"}, {"output_scale", 1.0}};
    doc["dataset"] = {{"kind", "low"}, {"samples", defaults::kCurveSamples}};
  } else if (experiment == "qntk-compare") {
    doc["ansatz"] = {{"qubits", defaults::kQntkQubits},
                     {"layers", defaults::kQntkLayers},
                     {"output_scale", 1.0}};
    doc["dataset"] = {{"kind", "low"}, {"samples", defaults::kCurveSamples}};
    doc["train"]["iterations"] = defaults::kQntkIterations;
    doc["qntk"] = {{"mode", "continuous"}};
  } else if (experiment == "iris") {
    doc["ansatz"] = {{"preset", "iris-2x6"}, {"output_scale", 1.0}};
    doc["dataset"] = {{"path", ""},
                      {"classes", {"Iris-setosa", "Iris-versicolor"}}};
    doc["train"]["eta"] = defaults::kIrisEta;
    doc["train"]["iterations"] = defaults::kIrisIterations;
  } else if (experiment == "dlp") {
    doc["ansatz"] = {{"preset", "dlp-8x24"}};
    doc["dataset"] = {{"prime", 67},         {"generator", 2},
                      {"interval_start", 0}, {"samples", 40},
                      {"train_fraction", 0.75}, {"features", "group_element"}};
    doc["alignment"] = {{"steps", defaults::kAlignSteps},
                        {"eta", defaults::kAlignEta}};
    doc["svm"] = {{"c", defaults::kSvmC}};
  } else {
    throw config_error("unknown experiment '" + std::string(experiment) +
                       "' (expected fit-curve, spectrum, qntk-compare, iris "
                       "or dlp)");
  }
  return doc;
}

RunConfig make_config(const json& document) {
  if (!document.is_object() || !document.contains("experiment"))
    throw config_error("config: missing required key 'experiment'");
  const std::string experiment =
      fetch<std::string>(document, "experiment", "top level");
  validate_document(document);

  json merged = default_config(experiment);
  merged.merge_patch(document);

  RunConfig config;
  config.experiment = experiment;
  config.out_dir = fetch<std::string>(merged, "out", "top level");
  config.threads = fetch<int>(merged, "threads", "top level");
  config.simd = fetch<std::string>(merged, "simd", "top level");

  const json& ansatz = merged["ansatz"];
  if (ansatz.contains("custom") && !ansatz["custom"].is_null()) {
    config.custom = ansatz["custom"];
  } else if (ansatz.contains("preset")) {
    config.preset = fetch<std::string>(ansatz, "preset", "ansatz");
  }
  if (ansatz.contains("output_scale"))
    config.output_scale = fetch<double>(ansatz, "output_scale", "ansatz");
  if (ansatz.contains("qubits"))
    config.ansatz_qubits = fetch<int>(ansatz, "qubits", "ansatz");
  if (ansatz.contains("layers"))
    config.ansatz_layers = fetch<int>(ansatz, "layers", "ansatz");

  const json& dataset = merged["dataset"];
  if (dataset.contains("kind"))
    config.curve_kind = fetch<std::string>(dataset, "kind", "dataset");
  if (dataset.contains("samples"))
    config.samples = fetch<int>(dataset, "samples", "dataset");
  if (dataset.contains("path"))
    config.iris_path = fetch<std::string>(dataset, "path", "dataset");
  if (dataset.contains("classes")) {
    const auto classes =
        fetch<std::vector<std::string>>(dataset, "classes", "dataset");
    if (classes.size() != 2)
      throw config_error("config: dataset.classes must list two class names");
    config.classes = {classes[0], classes[1]};
  }
  if (dataset.contains("prime"))
    config.dlp.prime = fetch<long>(dataset, "prime", "dataset");
  if (dataset.contains("generator"))
    config.dlp.generator = fetch<long>(dataset, "generator", "dataset");
  if (dataset.contains("interval_start"))
    config.dlp.interval_start = fetch<long>(dataset, "interval_start", "dataset");
  if (dataset.contains("train_fraction"))
    config.dlp.train_fraction =
        fetch<double>(dataset, "train_fraction", "dataset");
  if (dataset.contains("features")) {
    const std::string f = fetch<std::string>(dataset, "features", "dataset");
    if (f == "group_element") {
      config.dlp.features = DlpConfig::Feature::GroupElement;
    } else if (f == "logarithm") {
      config.dlp.features = DlpConfig::Feature::Logarithm;
    } else {
      throw config_error(
          "config: dataset.features must be group_element or logarithm");
    }
  }
  if (experiment == "dlp") config.dlp.sample_count = config.samples =
      dataset.contains("samples") ? fetch<int>(dataset, "samples", "dataset") : 40;

  const json& train = merged["train"];
  config.train.eta = fetch<double>(train, "eta", "train");
  config.train.iterations = fetch<int>(train, "iterations", "train");
  config.train.seed = fetch<std::uint64_t>(train, "seed", "train");
  const auto init = fetch<std::vector<double>>(train, "init", "train");
  if (init.size() != 2)
    throw config_error("config: train.init must be [lo, hi]");
  config.train.init_lo = init[0];
  config.train.init_hi = init[1];
  config.train.record_every = fetch<int>(train, "record_every", "train");
  config.train.tracked_peaks = fetch<int>(train, "tracked_peaks", "train");
  config.train.output_scale = config.output_scale;
  config.train.threads = config.threads;
  config.dlp.seed = config.train.seed;

  if (merged.contains("alignment")) {
    config.align_steps = fetch<int>(merged["alignment"], "steps", "alignment");
    config.align_eta = fetch<double>(merged["alignment"], "eta", "alignment");
  }
  if (merged.contains("svm"))
    config.svm_c = fetch<double>(merged["svm"], "c", "svm");
  if (merged.contains("qntk")) {
    config.qntk_mode = fetch<std::string>(merged["qntk"], "mode", "qntk");
    if (config.qntk_mode != "continuous" && config.qntk_mode != "discrete")
      throw config_error("config: qntk.mode must be continuous or discrete");
  }

  config.echo = merged;
  return config;
}

namespace {

Observable observable_from_json(const json& obs) {
  const std::string kind = fetch<std::string>(obs, "kind", "observable");
  if (kind == "full_z") return Observable::full_z();
  if (kind == "single_z")
    return Observable::single_z(fetch<int>(obs, "qubit", "observable"));
  if (kind == "z_subset")
    return Observable::z_subset(
        fetch<std::vector<int>>(obs, "qubits", "observable"));
  throw config_error("config: unknown observable kind '" + kind + "'");
}

Axis axis_from_gate(const std::string& gate, const char* where) {
  if (gate == "rx") return Axis::X;
  if (gate == "ry") return Axis::Y;
  if (gate == "rz") return Axis::Z;
  throw config_error("config: unknown gate '" + gate + "' in " +
                     std::string(where));
}

AnsatzSpec custom_ansatz(const json& custom) {
  AnsatzSpec spec;
  spec.name = "custom";
  spec.num_qubits = fetch<int>(custom, "num_qubits", "ansatz.custom");
  spec.num_layers = 1;
  spec.feature_dim = custom.contains("feature_dim")
                         ? fetch<int>(custom, "feature_dim", "ansatz.custom")
                         : 1;
  spec.output_scale =
      custom.contains("output_scale")
          ? fetch<double>(custom, "output_scale", "ansatz.custom")
          : 1.0;
  spec.observable = custom.contains("observable")
                        ? observable_from_json(custom["observable"])
                        : Observable::full_z();
  if (!custom.contains("gates"))
    throw config_error("config: ansatz.custom.gates is required");
  int p = 0;
  for (const json& g : custom["gates"]) {
    const std::string gate = fetch<std::string>(g, "gate", "gates[]");
    if (gate == "cnot") {
      spec.gates.push_back({SlotRole::Entangler, Axis::Y,
                            fetch<int>(g, "control", "gates[]"),
                            fetch<int>(g, "target", "gates[]"), -1, 0, 1.0});
      continue;
    }
    const Axis axis = axis_from_gate(gate, "gates[]");
    const int qubit = fetch<int>(g, "qubit", "gates[]");
    if (g.contains("feature")) {
      const double scale =
          g.contains("scale") ? fetch<double>(g, "scale", "gates[]") : 1.0;
      spec.gates.push_back({SlotRole::Encoding, axis, qubit, -1, -1,
                            fetch<int>(g, "feature", "gates[]"), scale});
      ++spec.encoding_count;
    } else {
      spec.gates.push_back({SlotRole::Trainable, axis, qubit, -1, p++, 0, 1.0});
    }
  }
  spec.parameter_count = p;
  validate_spec(spec);
  return spec;
}

}  // namespace

AnsatzSpec config_ansatz(const RunConfig& config) {
  AnsatzSpec spec;
  if (!config.custom.is_null() && !config.custom.empty()) {
    spec = custom_ansatz(config.custom);
  } else if (config.ansatz_qubits > 0 || config.ansatz_layers > 0) {
    const int q = config.ansatz_qubits > 0 ? config.ansatz_qubits : 4;
    const int l = config.ansatz_layers > 0 ? config.ansatz_layers : 20;
    spec = config.experiment == "dlp" ? dlp_ansatz(q, l, config.dlp.prime)
                                      : curve_ansatz(q, l);
  } else if (config.preset == "dlp-8x24") {
    spec = dlp_ansatz(8, 24, config.dlp.prime);
  } else {
    spec = preset(config.preset);
  }
  spec.output_scale = config.output_scale;
  return spec;
}

Dataset config_dataset(const RunConfig& config) {
  if (config.experiment == "iris") {
    std::filesystem::path path = config.iris_path;
    if (path.empty()) {
      path = config.out_dir / "iris_synthetic.csv";
      write_synthetic_iris_csv(path, config.train.seed);
    }
    return iris_load(path, config.classes);
  }
  if (config.experiment == "dlp") return dlp_dataset(config.dlp);
  return curve_dataset(curve_kind_from_string(config.curve_kind),
                       config.samples);
}

namespace {

struct Outputs {
  std::vector<std::filesystem::path> files;
  json results;
  std::string status = "complete";
};

json tracked_json(const TrainLog& log) {
  json j = json::array();
  for (double k : log.tracked_ks) j.push_back(k);
  return j;
}

double relative_l2(const std::vector<double>& eps,
                   const std::vector<double>& labels) {
  double num = 0.0, den = 0.0;
  for (double e : eps) num += e * e;
  for (double y : labels) den += y * y;
  return std::sqrt(num / den);
}

Outputs run_fit_curve(const RunConfig& config) {
  Outputs out;
  const AnsatzSpec spec = config_ansatz(config);
  const Dataset data = config_dataset(config);
  const ParamVector init = random_params(spec, config.train.seed,
                                         config.train.init_lo,
                                         config.train.init_hi);
  const TrainLog log = train(spec, init, data, config.train);

  io::write_train_log_csv(config.out_dir / "train_log.csv", log);
  out.files.push_back(config.out_dir / "train_log.csv");
  io::write_residuals_csv(config.out_dir / "residuals.csv", log);
  out.files.push_back(config.out_dir / "residuals.csv");

  std::vector<double> final_outputs(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    final_outputs[i] = evaluate(spec, log.final_params, data.inputs[i]);
  io::write_spectrum_csv(config.out_dir / "spectrum.csv",
                         dft_uniform(final_outputs));
  out.files.push_back(config.out_dir / "spectrum.csv");
  io::write_spectrum_csv(config.out_dir / "label_spectrum.csv",
                         dft_uniform(data.labels));
  out.files.push_back(config.out_dir / "label_spectrum.csv");

  out.results["initial_loss"] = log.records.front().loss;
  out.results["final_loss"] = log.final_loss;
  std::vector<double> final_eps = final_outputs;
  for (std::size_t i = 0; i < data.size(); ++i) final_eps[i] -= data.labels[i];
  out.results["relative_l2"] = relative_l2(final_eps, data.labels);
  out.results["tracked_ks"] = tracked_json(log);
  const int first = first_peak_below(log, defaults::kLearnedThreshold);
  out.results["first_peak_below_threshold"] =
      first >= 0 ? json(log.tracked_ks[static_cast<std::size_t>(first)])
                 : json(nullptr);
  if (!log.complete) out.status = "partial";
  return out;
}

Outputs run_spectrum(const RunConfig& config) {
  Outputs out;
  const AnsatzSpec spec = config_ansatz(config);
  const ParamVector params = random_params(spec, config.train.seed,
                                           config.train.init_lo,
                                           config.train.init_hi);
  const auto coeffs = pqc_fourier_coefficients(spec, params);
  SpectrumSeries circuit;
  for (const auto& [w, c] : coeffs) {
    circuit.k_values.push_back(static_cast<double>(w));
    circuit.amplitudes.push_back(c);
  }
  io::write_spectrum_csv(config.out_dir / "circuit_spectrum.csv", circuit);
  out.files.push_back(config.out_dir / "circuit_spectrum.csv");

  const Dataset data = config_dataset(config);
  io::write_spectrum_csv(config.out_dir / "label_spectrum.csv",
                         dft_uniform(data.labels));
  out.files.push_back(config.out_dir / "label_spectrum.csv");

  out.results["max_frequency"] = spectrum(spec).max_frequency;
  double energy = 0.0;
  for (const auto& [w, c] : coeffs) energy += std::norm(c);
  out.results["coefficient_energy"] = energy;
  out.results["label_peaks"] =
      json(top_peaks(dft_uniform(data.labels), config.train.tracked_peaks));
  return out;
}

Outputs run_qntk_compare(const RunConfig& config) {
  Outputs out;
  const AnsatzSpec spec = config_ansatz(config);
  const Dataset data = config_dataset(config);
  const ParamVector theta0 = random_params(spec, config.train.seed,
                                           config.train.init_lo,
                                           config.train.init_hi);
  const TrainLog log = train(spec, theta0, data, config.train);
  if (!log.complete) out.status = "partial";

  const KernelMatrix empirical0 =
      empirical_qntk(spec, theta0, data.inputs, config.threads);
  const KernelMatrix frozen = frozen_qntk(spec, theta0, data.inputs);
  const ComplexKernel kspace =
      kernel_to_kspace(frozen, static_cast<int>(data.size()));

  const SpectrumSeries eps0 = dft_uniform(log.records.front().residuals);
  std::vector<int> times;
  for (const TrainRecord& rec : log.records) times.push_back(rec.iter);
  const DynamicsMode mode = config.qntk_mode == "discrete"
                                ? DynamicsMode::Discrete
                                : DynamicsMode::Continuous;
  const auto predicted =
      predict_residual_series(kspace, eps0, config.train.eta, times, mode);
  const auto rows = compare_dynamics(log, predicted, log.tracked_ks);

  io::write_dynamics_csv(config.out_dir / "qntk_compare.csv", rows,
                         log.tracked_ks);
  out.files.push_back(config.out_dir / "qntk_compare.csv");
  io::write_kernel_csv(config.out_dir / "kernel.csv", frozen);
  out.files.push_back(config.out_dir / "kernel.csv");
  io::write_kernel_csv(config.out_dir / "empirical_kernel.csv", empirical0);
  out.files.push_back(config.out_dir / "empirical_kernel.csv");
  io::write_train_log_csv(config.out_dir / "train_log.csv", log);
  out.files.push_back(config.out_dir / "train_log.csv");

  const KernelMatrix empirical_end =
      empirical_qntk(spec, log.final_params, data.inputs, config.threads);
  out.results["qntk_frobenius_drift"] =
      frobenius_distance(empirical0, empirical_end) / frobenius_norm(empirical0);
  out.results["tracked_ks"] = tracked_json(log);

  // Log-linearity and prediction ratio for the dominant peak.
  const double k_dom = log.tracked_ks.front();
  std::vector<double> ts, lns;
  double max_factor = 0.0;
  for (std::size_t r = 0; r < log.records.size(); ++r) {
    const DynamicsRow& row = rows[r * log.tracked_ks.size()];
    if (row.actual_abs > 0.0) {
      ts.push_back(static_cast<double>(row.iter));
      lns.push_back(std::log(row.actual_abs));
    }
    const double factor = std::max(row.ratio, 1.0 / row.ratio);
    max_factor = std::max(max_factor, factor);
  }
  const LineFit fit = fit_line(ts, lns);
  out.results["dominant_k"] = k_dom;
  out.results["dominant_log_r2"] = fit.r2;
  out.results["dominant_decay_rate"] = -fit.slope;
  out.results["dominant_max_prediction_factor"] = max_factor;
  return out;
}

Outputs run_iris(const RunConfig& config) {
  Outputs out;
  const AnsatzSpec spec = config_ansatz(config);
  const Dataset data = config_dataset(config);
  if (config.iris_path.empty())
    out.files.push_back(config.out_dir / "iris_synthetic.csv");
  const ParamVector init = random_params(spec, config.train.seed,
                                         config.train.init_lo,
                                         config.train.init_hi);
  const TrainLog log = train(spec, init, data, config.train);
  if (!log.complete) out.status = "partial";

  io::write_train_log_csv(config.out_dir / "train_log.csv", log);
  out.files.push_back(config.out_dir / "train_log.csv");
  io::write_residuals_csv(config.out_dir / "residuals.csv", log);
  out.files.push_back(config.out_dir / "residuals.csv");

  const ProjectedGrid grid = make_projected_grid(data);
  io::write_spectrum_csv(
      config.out_dir / "label_spectrum.csv",
      nudft_projected(data.inputs, data.labels, grid.direction, grid.k_grid));
  out.files.push_back(config.out_dir / "label_spectrum.csv");

  int correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double f = evaluate(spec, log.final_params, data.inputs[i]);
    if ((f >= 0.0 ? 1.0 : -1.0) == data.labels[i]) ++correct;
  }
  out.results["train_accuracy"] =
      static_cast<double>(correct) / static_cast<double>(data.size());
  out.results["final_loss"] = log.final_loss;
  out.results["tracked_ks"] = tracked_json(log);
  out.results["principal_direction"] = grid.direction.components;
  const int first = first_peak_below(log, defaults::kLearnedThreshold);
  out.results["first_peak_below_threshold"] =
      first >= 0 ? json(log.tracked_ks[static_cast<std::size_t>(first)])
                 : json(nullptr);
  return out;
}

Outputs run_dlp(const RunConfig& config) {
  Outputs out;
  const AnsatzSpec spec = config_ansatz(config);
  const Dataset data = config_dataset(config);

  const ParamVector theta0 = random_params(spec, config.train.seed,
                                           config.train.init_lo,
                                           config.train.init_hi);
  const AlignmentResult aligned =
      optimize_alignment(spec, theta0, data, config.align_steps,
                         config.align_eta, config.threads);
  if (aligned.warning) out.status = "partial";

  const KernelMatrix kernel =
      kernel_matrix(spec, aligned.params, data.inputs, config.threads);
  const SvmModel model = svm_train(kernel, data.labels, config.svm_c);

  io::write_kernel_csv(config.out_dir / "kernel.csv", kernel);
  out.files.push_back(config.out_dir / "kernel.csv");

  json model_json;
  model_json["alpha"] = model.alpha;
  model_json["bias"] = model.bias;
  model_json["c"] = model.c;
  model_json["support_indices"] = model.support_indices;
  model_json["labels"] = model.labels;
  std::ofstream model_out(config.out_dir / "model.json");
  model_out << model_json.dump(2) << '\n';
  out.files.push_back(config.out_dir / "model.json");

  std::vector<StateVector> train_states;
  train_states.reserve(data.size());
  for (const auto& x : data.inputs)
    train_states.push_back(prepare_state(spec, aligned.params, x));

  std::vector<int> predicted;
  int correct = 0;
  for (std::size_t h = 0; h < data.heldout_inputs.size(); ++h) {
    const StateVector held =
        prepare_state(spec, aligned.params, data.heldout_inputs[h]);
    std::vector<double> row(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
      row[i] = std::norm(inner_product(train_states[i], held));
    const int label = svm_predict(model, row);
    predicted.push_back(label);
    if (static_cast<double>(label) == data.heldout_labels[h]) ++correct;
  }
  io::write_predictions_csv(config.out_dir / "predictions.csv", predicted,
                            data.heldout_labels);
  out.files.push_back(config.out_dir / "predictions.csv");

  int train_correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::vector<double> row(data.size());
    for (std::size_t j = 0; j < data.size(); ++j) row[j] = kernel.at(
        static_cast<int>(j), static_cast<int>(i));
    if (static_cast<double>(svm_predict(model, row)) == data.labels[i])
      ++train_correct;
  }

  out.results["alignment_initial"] = aligned.initial;
  out.results["alignment_final"] = aligned.final;
  out.results["alignment_warning"] = aligned.warning;
  out.results["heldout_accuracy"] =
      data.heldout_labels.empty()
          ? json(nullptr)
          : json(static_cast<double>(correct) /
                 static_cast<double>(data.heldout_labels.size()));
  out.results["train_accuracy"] =
      static_cast<double>(train_correct) / static_cast<double>(data.size());
  out.results["support_vector_count"] = model.support_indices.size();
  return out;
}

}  // namespace

RunManifest run(const RunConfig& config) {
  kernels::select(config.simd);
  std::filesystem::create_directories(config.out_dir);
  const auto start = std::chrono::steady_clock::now();

  Outputs out;
  if (config.experiment == "fit-curve") {
    out = run_fit_curve(config);
  } else if (config.experiment == "spectrum") {
    out = run_spectrum(config);
  } else if (config.experiment == "qntk-compare") {
    out = run_qntk_compare(config);
  } else if (config.experiment == "iris") {
    out = run_iris(config);
  } else if (config.experiment == "dlp") {
    out = run_dlp(config);
  } else {
    throw config_error("unknown experiment '" + config.experiment + "'");
  }

  const auto stop = std::chrono::steady_clock::now();
  RunManifest manifest;
  manifest.status = out.status;
  json& doc = manifest.document;
  doc["artifact_version"] = kArtifactVersion;
  doc["experiment"] = config.experiment;
  doc["seed"] = config.train.seed;
  doc["threads"] = config.threads;
  doc["simd_backend"] = kernels::active().name;
  doc["duration_seconds"] =
      std::chrono::duration<double>(stop - start).count();
  doc["config"] = config.echo;
  doc["status"] = out.status;
  doc["results"] = out.results;
  doc["files"] = json::array();
  for (const auto& file : out.files) {
    doc["files"].push_back(
        {{"name", file.filename().string()},
         {"bytes", std::filesystem::file_size(file)},
         {"fnv1a64", io::hex64(io::fnv1a64_file(file))}});
  }
  manifest.path = config.out_dir / "manifest.json";
  std::ofstream mout(manifest.path);
  if (!mout) throw config_error("cannot write " + manifest.path.string());
  mout << doc.dump(2) << '\n';
  return manifest;
}

}  // namespace qfreq

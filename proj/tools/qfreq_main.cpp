// Experiment driver: one subcommand per experiment, JSON config with flag
// overrides, deterministic seeds, CSV/JSON outputs plus a run manifest.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfreq/errors.hpp"
#include "qfreq/runner.hpp"

namespace {

struct CliValues {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out;
  int threads = 0;
  int iterations = 0;
  double eta = 0.0;
  std::string kind;
  std::string data_path;
  std::string mode;
  long prime = 0;
  int qubits = 0;
  int layers = 0;
  double scale = 0.0;
  int samples = 0;
};

void add_common_options(CLI::App* sub, CliValues& v) {
  sub->add_option("--config", v.config_path, "JSON config file");
  sub->add_option("--seed", v.seed, "RNG seed");
  sub->add_option("--out", v.out, "output directory");
  sub->add_option("--threads", v.threads, "worker thread cap (0 = auto)");
  sub->add_option("--iterations", v.iterations, "training iterations");
  sub->add_option("--eta", v.eta, "learning rate");
}

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qfreq::config_error("cannot open config file " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw qfreq::config_error("config file " + path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qfreq - statevector training of data-reloading circuits with "
      "frequency-domain diagnostics"};
  app.require_subcommand(1);

  CliValues v;
  const char* experiments[] = {"fit-curve", "spectrum", "qntk-compare", "iris",
                               "dlp"};
  const char* descriptions[] = {
      "train a circuit on a synthetic curve and log frequency diagnostics",
      "dump the accessible circuit spectrum and the label spectrum",
      "compare actual residual dynamics against the frozen-kernel forecast",
      "train on the Iris two-class task with projected spectral tracking",
      "alignment-trained quantum-kernel SVM on the discrete-log task"};
  for (int i = 0; i < 5; ++i) {
    CLI::App* sub = app.add_subcommand(experiments[i], descriptions[i]);
    add_common_options(sub, v);
    const std::string name = experiments[i];
    if (name == "fit-curve" || name == "spectrum" || name == "qntk-compare") {
      sub->add_option("--kind", v.kind, "target curve: low, mid or high");
      sub->add_option("--samples", v.samples, "training grid size");
      sub->add_option("--scale", v.scale, "output scale applied to f");
    }
    if (name == "qntk-compare") {
      sub->add_option("--qubits", v.qubits, "curve-family qubit count");
      sub->add_option("--layers", v.layers, "curve-family layer count");
      sub->add_option("--mode", v.mode, "forecast mode: continuous|discrete");
    }
    if (name == "iris")
      sub->add_option("--data", v.data_path,
                      "Iris CSV path (default: bundled synthetic stand-in)");
    if (name == "dlp") {
      sub->add_option("--prime", v.prime, "modulus p");
      sub->add_option("--samples", v.samples, "dataset size");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string experiment = sub->get_name();

  try {
    nlohmann::json doc;
    if (sub->count("--config") > 0) doc = load_config_file(v.config_path);
    doc["experiment"] = experiment;
    if (sub->count("--seed") > 0) doc["train"]["seed"] = v.seed;
    if (sub->count("--out") > 0) doc["out"] = v.out;
    if (sub->count("--threads") > 0) doc["threads"] = v.threads;
    if (sub->count("--iterations") > 0) doc["train"]["iterations"] = v.iterations;
    if (sub->count("--eta") > 0) doc["train"]["eta"] = v.eta;
    if (sub->count("--kind") > 0) doc["dataset"]["kind"] = v.kind;
    if (sub->count("--samples") > 0) doc["dataset"]["samples"] = v.samples;
    if (sub->count("--scale") > 0) doc["ansatz"]["output_scale"] = v.scale;
    if (sub->count("--qubits") > 0) doc["ansatz"]["qubits"] = v.qubits;
    if (sub->count("--layers") > 0) doc["ansatz"]["layers"] = v.layers;
    if (sub->count("--mode") > 0) doc["qntk"]["mode"] = v.mode;
    if (sub->count("--data") > 0) doc["dataset"]["path"] = v.data_path;
    if (sub->count("--prime") > 0) doc["dataset"]["prime"] = v.prime;

    const qfreq::RunConfig config = qfreq::make_config(doc);
    const qfreq::RunManifest manifest = qfreq::run(config);

    std::cout << experiment << ": " << manifest.status << ", manifest at "
              << manifest.path.string() << '\n';
    const auto& results = manifest.document["results"];
    for (const auto& [key, value] : results.items())
      std::cout << "  " << key << " = " << value.dump() << '\n';
    return manifest.status == "complete" ? 0 : 3;
  } catch (const qfreq::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const qfreq::unsupported_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const qfreq::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

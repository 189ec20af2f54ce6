#include <fmt/format.h>
#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qf/appendix.hpp"
#include "qf/io.hpp"
#include "qf/scan.hpp"
#include "qf/thermal.hpp"

namespace {

using nlohmann::ordered_json;

ordered_json observable_to_json(const qf::Observable& obs) {
  ordered_json j;
  j["matrix"] = qf::matrix_to_json(obs.matrix);
  if (obs.declared_spectrum) {
    std::vector<double> s(obs.declared_spectrum->begin(), obs.declared_spectrum->end());
    j["spectrum"] = s;
  }
  return j;
}

void emit_report(const ordered_json& config, const ordered_json& results) {
  ordered_json report;
  report["config"] = config;
  report["config_digest"] = qf::config_digest(config);
  report["results"] = results;
  std::cout << report.dump(2) << "\n";
}

const char* method_name(qf::QfMethod m) {
  switch (m) {
    case qf::QfMethod::closed_form: return "closed_form";
    case qf::QfMethod::alternating: return "alternating";
    case qf::QfMethod::pure_schmidt: return "pure_schmidt";
  }
  return "?";
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::string token;
  for (char c : text) {
    if (c == ',') {
      dims.push_back(std::stoi(token));
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) dims.push_back(std::stoi(token));
  if (dims.empty()) throw qf::ParseFailure("empty dimension list");
  return dims;
}

const qf::Matrix& pauli_by_letter(const std::string& letter) {
  if (letter == "x") return qf::pauli_x();
  if (letter == "y") return qf::pauli_y();
  if (letter == "z") return qf::pauli_z();
  throw qf::ParseFailure(fmt::format("unknown pauli '{}', expected x|y|z", letter));
}

struct ComputeArgs {
  std::string state_path, f_token, obs_a_path, obs_b_path;
};

void run_compute(const ComputeArgs& args) {
  qf::FOpSpec f = qf::FOpSpec::parse(args.f_token);
  qf::DensityMatrix rho = qf::load_state(args.state_path);
  if (rho.dims.size() != 2)
    throw qf::DimensionMismatch("compute expects a bipartite state file");

  qf::Observable local_a, local_b;
  if (args.obs_a_path.empty() || args.obs_b_path.empty()) {
    qf::EquispacedSpectrum eq = qf::equispaced_spectrum(rho.dims[0], rho.dims[1]);
    local_a = qf::Observable{qf::Matrix(eq.values_a.cast<qf::cx>().asDiagonal()),
                             eq.values_a};
    local_b = qf::Observable{qf::Matrix(eq.values_b.cast<qf::cx>().asDiagonal()),
                             eq.values_b};
  }
  if (!args.obs_a_path.empty()) local_a = qf::load_observable(args.obs_a_path);
  if (!args.obs_b_path.empty()) local_b = qf::load_observable(args.obs_b_path);

  qf::Observable a{qf::embed_local(local_a.matrix, rho.dims, 0), std::nullopt};
  qf::Observable b{qf::embed_local(local_b.matrix, rho.dims, 1), std::nullopt};

  ordered_json config;
  config["command"] = "compute";
  config["state"] = args.state_path;
  config["f"] = f.name();
  config["obs_a"] = args.obs_a_path.empty() ? "equispaced-diagonal" : args.obs_a_path;
  config["obs_b"] = args.obs_b_path.empty() ? "equispaced-diagonal" : args.obs_b_path;

  ordered_json results;
  results["masi_a"] = qf::masi(rho, a, f);
  results["masi_b"] = qf::masi(rho, b, f);
  results["covariance"] = qf::covariance(rho, a, b);
  results["f_covariance"] = qf::f_covariance(rho, a, b, f);
  results["f_correlation"] = qf::f_correlation(rho, a, b, f);
  results["nonadditivity_gap"] = qf::nonadditivity_gap(rho, a, b, f);
  emit_report(config, results);
}

struct QuantifyArgs {
  std::string state_path, f_token, method = "auto";
  int restarts = 20;
  std::uint64_t seed = 0;
};

void run_quantify(const QuantifyArgs& args) {
  qf::FOpSpec f = qf::FOpSpec::parse(args.f_token);
  qf::DensityMatrix rho = qf::load_state(args.state_path);
  if (rho.dims.size() != 2)
    throw qf::DimensionMismatch("quantify expects a bipartite state file");

  std::string method = args.method;
  if (method == "auto") {
    if (rho.dims == std::vector<int>{2, 2}) {
      method = "closed";
    } else {
      double purity = (rho.matrix * rho.matrix).trace().real();
      bool pure = purity > 1.0 - 1e-8;
      method = (pure && std::min(rho.dims[0], rho.dims[1]) == 2) ? "pure" : "opt";
    }
  }

  ordered_json config;
  config["command"] = "quantify";
  config["state"] = args.state_path;
  config["f"] = f.name();
  config["method"] = method;

  ordered_json results;
  if (method == "closed") {
    qf::QfResult res = qf::qf_two_qubit(rho, f);
    results["value"] = res.value;
    results["method"] = method_name(res.method);
    results["observable_a"] = observable_to_json(res.observable_a);
    results["observable_b"] = observable_to_json(res.observable_b);
  } else if (method == "pure") {
    qf::SpectralDecomposition dec = qf::spectral_decompose(rho.matrix);
    qf::Vector psi = dec.eigenvectors.col(0);
    results["value"] = qf::pure_qf(psi, rho.dims);
    results["method"] = "pure_schmidt";
  } else if (method == "opt") {
    qf::QfOptimizeOptions opts;
    opts.restarts = args.restarts;
    opts.seed = args.seed;
    config["restarts"] = args.restarts;
    config["seed"] = args.seed;
    qf::QfResult res = qf::qf_optimize(rho, f, opts);
    results["value"] = res.value;
    results["method"] = method_name(res.method);
    results["converged"] = res.converged;
    results["restarts"] = res.restarts;
    results["observable_a"] = observable_to_json(res.observable_a);
    results["observable_b"] = observable_to_json(res.observable_b);
  } else {
    throw qf::ParseFailure(fmt::format("unknown method '{}'", method));
  }
  emit_report(config, results);
}

struct ScanArgs {
  std::int64_t samples = 10000;
  std::string f_token = "wy", out_path = "scan.csv";
  std::uint64_t seed = 0;
  std::string channel = "unital", ensemble = "mixed-rank", side = "a";
  double threshold = 1e-8;
  bool serial = false, full = false;
};

void run_scan(const ScanArgs& args) {
  qf::FOpSpec f = qf::FOpSpec::parse(args.f_token);
  qf::ScanOptions opts;
  if (args.channel == "unital")
    opts.family = qf::ChannelFamily::unital;
  else if (args.channel == "semiclassical")
    opts.family = qf::ChannelFamily::semiclassical;
  else
    throw qf::ParseFailure(fmt::format("unknown channel family '{}'", args.channel));
  if (args.ensemble == "hs")
    opts.ensemble = qf::StateEnsemble::hilbert_schmidt;
  else if (args.ensemble == "mixed-rank")
    opts.ensemble = qf::StateEnsemble::mixed_rank;
  else
    throw qf::ParseFailure(fmt::format("unknown ensemble '{}'", args.ensemble));
  if (args.side == "a")
    opts.side = qf::Side::a;
  else if (args.side == "b")
    opts.side = qf::Side::b;
  else
    throw qf::ParseFailure(fmt::format("unknown side '{}'", args.side));
  opts.violation_threshold = args.threshold;
  opts.parallel = !args.serial;

  qf::ScanReport report = qf::monotonicity_scan(args.samples, f, args.seed, opts);

  std::ofstream csv(args.out_path);
  if (!csv) throw qf::FileNotFound(fmt::format("cannot write: {}", args.out_path));
  qf::write_scan_csv(csv, report, args.full);
  csv.close();

  ordered_json config;
  config["command"] = "scan";
  config["samples"] = args.samples;
  config["f"] = f.name();
  config["seed"] = args.seed;
  config["channel"] = qf::to_string(report.family);
  config["ensemble"] = qf::to_string(report.ensemble);
  config["side"] = args.side;
  config["threshold"] = args.threshold;
  config["out"] = args.out_path;
  config["serial"] = args.serial;
  config["full"] = args.full;

  ordered_json results;
  results["n_samples"] = report.n_samples;
  results["violation_count"] = report.violation_count;
  results["violation_fraction"] = report.violation_fraction;
  results["max_violation"] = report.max_violation;
  results["mean_q_in"] = report.mean_q_in;
  emit_report(config, results);
}

struct ThermalArgs {
  int sites = 2, site_a = 0, site_b = 1;
  double coupling = 1.0, field = 1.0, temperature = 1.0, delta = 0.0;
  std::string pauli_a = "z", pauli_b = "z";
};

void run_thermal(const ThermalArgs& args) {
  if (args.site_a < 0 || args.site_a >= args.sites || args.site_b < 0 ||
      args.site_b >= args.sites)
    throw qf::DimensionMismatch("site indices must lie inside the chain");

  qf::SpinChainSpec spec{args.sites, args.coupling, args.field};
  qf::Matrix h = qf::tfi_hamiltonian(spec);
  std::vector<int> dims = qf::chain_dims(args.sites);
  qf::Observable a{qf::embed_local(pauli_by_letter(args.pauli_a), dims, args.site_a),
                   std::nullopt};
  qf::Observable b{qf::embed_local(pauli_by_letter(args.pauli_b), dims, args.site_b),
                   std::nullopt};

  qf::GibbsModel model = qf::gibbs(h, args.temperature, dims);
  double delta = args.delta > 0.0 ? args.delta : qf::default_fd_delta(b);
  double cov = qf::covariance(model.state, a, b);
  double chi = qf::susceptibility_fd(h, args.temperature, a, b, delta);
  double upsilon_thermo = cov - args.temperature * chi;
  double upsilon_spectral =
      qf::f_correlation(model.decomposition, a, b, qf::FOpSpec::qvar());
  double km = qf::kubo_mori_cov(model, a, b);

  ordered_json config;
  config["command"] = "thermal";
  config["sites"] = args.sites;
  config["coupling"] = args.coupling;
  config["field"] = args.field;
  config["temperature"] = args.temperature;
  config["site_a"] = args.site_a;
  config["site_b"] = args.site_b;
  config["pauli_a"] = args.pauli_a;
  config["pauli_b"] = args.pauli_b;
  config["delta"] = delta;

  ordered_json results;
  results["log_partition"] = model.log_partition;
  results["covariance"] = cov;
  results["susceptibility"] = chi;
  results["t_times_chi"] = args.temperature * chi;
  results["kubo_mori"] = km;
  results["upsilon_thermo"] = upsilon_thermo;
  results["upsilon_spectral"] = upsilon_spectral;
  results["route_delta"] = std::abs(upsilon_thermo - upsilon_spectral);
  results["quantum_variance_a"] =
      qf::quantum_variance(model, a, qf::VarianceRoute::closed_form);
  emit_report(config, results);
}

struct AppendixArgs {
  int trials = 100;
  std::string f_token = "bu", side = "a";
  std::uint64_t seed = 0;
};

void run_appendix(const AppendixArgs& args) {
  qf::FOpSpec f = qf::FOpSpec::parse(args.f_token);
  qf::Side side = args.side == "b" ? qf::Side::b : qf::Side::a;
  if (args.side != "a" && args.side != "b")
    throw qf::ParseFailure(fmt::format("unknown side '{}'", args.side));

  double max_residual = 0.0, max_violation = 0.0;
  for (int k = 0; k < args.trials; ++k) {
    qf::RngStream rng(args.seed, static_cast<std::uint64_t>(k));
    int rank = 1 + static_cast<int>(rng.uniform() * 4.0);
    qf::DensityMatrix rho = qf::random_density_induced({2, 2}, std::min(rank, 4), rng);
    qf::UnitalQubitChannel ch = qf::random_unital_qubit(rng);
    qf::ContractionReport rep = qf::contraction_check(rho, ch, f, side);
    max_residual = std::max(max_residual, rep.identity_residual);
    max_violation = std::max(max_violation, rep.contraction_violation);
  }

  ordered_json config;
  config["command"] = "appendix-check";
  config["trials"] = args.trials;
  config["f"] = f.name();
  config["seed"] = args.seed;
  config["side"] = args.side;

  ordered_json results;
  results["max_identity_residual"] = max_residual;
  results["max_contraction_violation"] = max_violation;
  emit_report(config, results);
}

struct RandomStateArgs {
  std::string dims_text = "2,2", out_path = "state.json", ensemble = "hs";
  int rank = 0;
  std::uint64_t seed = 0, stream = 0;
};

void run_random_state(const RandomStateArgs& args) {
  std::vector<int> dims = parse_dims(args.dims_text);
  qf::RngStream rng(args.seed, args.stream);
  qf::DensityMatrix rho;
  std::string how;
  if (args.rank > 0) {
    rho = qf::random_density_induced(dims, args.rank, rng);
    how = fmt::format("induced-rank-{}", args.rank);
  } else if (args.ensemble == "hs") {
    rho = qf::random_density_hs(dims, rng);
    how = "hs";
  } else if (args.ensemble == "mixed-rank") {
    int d = qf::dim_product(dims);
    int rank = 1 + static_cast<int>(rng.uniform() * d);
    rho = qf::random_density_induced(dims, std::min(rank, d), rng);
    how = fmt::format("mixed-rank (drew {})", rank);
  } else {
    throw qf::ParseFailure(fmt::format("unknown ensemble '{}'", args.ensemble));
  }
  qf::save_state(args.out_path, rho);

  qf::SpectralDecomposition dec = qf::spectral_decompose(rho.matrix);
  std::vector<double> eigs(dec.eigenvalues.begin(), dec.eigenvalues.end());

  ordered_json config;
  config["command"] = "random-state";
  config["dims"] = dims;
  config["seed"] = args.seed;
  config["stream"] = args.stream;
  config["ensemble"] = args.ensemble;
  config["rank"] = args.rank;
  config["out"] = args.out_path;

  ordered_json results;
  results["path"] = args.out_path;
  results["drawn_from"] = how;
  results["eigenvalues"] = eigs;
  results["purity"] = (rho.matrix * rho.matrix).trace().real();
  emit_report(config, results);
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("QF_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }

  CLI::App app{"metric-adjusted correlation toolkit"};
  app.require_subcommand(1);

  ComputeArgs compute_args;
  auto* compute = app.add_subcommand("compute", "correlation functionals on a state file");
  compute->add_option("--state", compute_args.state_path, "state json file")->required();
  compute->add_option("--f", compute_args.f_token, "bu|wy|wyd:<alpha>|qvar")->required();
  compute->add_option("--obs-a", compute_args.obs_a_path, "local observable on side a");
  compute->add_option("--obs-b", compute_args.obs_b_path, "local observable on side b");
  compute->callback([&] { run_compute(compute_args); });

  QuantifyArgs quantify_args;
  auto* quantify = app.add_subcommand("quantify", "correlation quantifier of a state");
  quantify->add_option("--state", quantify_args.state_path, "state json file")->required();
  quantify->add_option("--f", quantify_args.f_token, "bu|wy|wyd:<alpha>|qvar")->required();
  quantify->add_option("--method", quantify_args.method, "auto|closed|opt|pure");
  quantify->add_option("--restarts", quantify_args.restarts, "optimizer restarts");
  quantify->add_option("--seed", quantify_args.seed, "optimizer seed");
  quantify->callback([&] { run_quantify(quantify_args); });

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "monte carlo monotonicity scan");
  scan->add_option("--samples", scan_args.samples, "number of samples")->required();
  scan->add_option("--f", scan_args.f_token, "bu|wy|wyd:<alpha>|qvar");
  scan->add_option("--seed", scan_args.seed, "master seed");
  scan->add_option("--out", scan_args.out_path, "csv output path");
  scan->add_option("--channel", scan_args.channel, "unital|semiclassical");
  scan->add_option("--ensemble", scan_args.ensemble, "mixed-rank|hs");
  scan->add_option("--side", scan_args.side, "a|b");
  scan->add_option("--threshold", scan_args.threshold, "violation threshold");
  scan->add_flag("--serial", scan_args.serial, "disable the parallel path");
  scan->add_flag("--full", scan_args.full, "write every record");
  scan->callback([&] { run_scan(scan_args); });

  ThermalArgs thermal_args;
  auto* thermal = app.add_subcommand("thermal", "fluctuation-dissipation routes on a tfi chain");
  thermal->add_option("--sites", thermal_args.sites, "chain length")->required();
  thermal->add_option("--coupling", thermal_args.coupling, "ising coupling");
  thermal->add_option("--field", thermal_args.field, "transverse field");
  thermal->add_option("--temperature", thermal_args.temperature, "temperature")->required();
  thermal->add_option("--site-a", thermal_args.site_a, "first site");
  thermal->add_option("--site-b", thermal_args.site_b, "second site");
  thermal->add_option("--pauli-a", thermal_args.pauli_a, "x|y|z");
  thermal->add_option("--pauli-b", thermal_args.pauli_b, "x|y|z");
  thermal->add_option("--delta", thermal_args.delta, "finite-difference step, 0 = auto");
  thermal->callback([&] { run_thermal(thermal_args); });

  AppendixArgs appendix_args;
  auto* appendix = app.add_subcommand("appendix-check", "dilation identity and contraction check");
  appendix->add_option("--trials", appendix_args.trials, "number of random triples");
  appendix->add_option("--f", appendix_args.f_token, "bu|wy|wyd:<alpha>|qvar");
  appendix->add_option("--seed", appendix_args.seed, "master seed");
  appendix->add_option("--side", appendix_args.side, "a|b");
  appendix->callback([&] { run_appendix(appendix_args); });

  RandomStateArgs random_args;
  auto* random_state = app.add_subcommand("random-state", "draw and save a random state");
  random_state->add_option("--dims", random_args.dims_text, "comma-separated dimensions");
  random_state->add_option("--seed", random_args.seed, "master seed");
  random_state->add_option("--stream", random_args.stream, "stream index");
  random_state->add_option("--ensemble", random_args.ensemble, "hs|mixed-rank");
  random_state->add_option("--rank", random_args.rank, "fixed rank (overrides ensemble)");
  random_state->add_option("--out", random_args.out_path, "output state file");
  random_state->callback([&] { run_random_state(random_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const qf::FileNotFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qf::ParseFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

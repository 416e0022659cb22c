#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gridid/estimation.hpp"
#include "gridid/measurements.hpp"
#include "gridid/report_json.hpp"
#include "gridid/rigidity.hpp"
#include "gridid/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
// The run itself succeeded but the data does not determine a unique answer
// (estimate) or the consistency check did not hold (rigidity-check).
constexpr int kExitCheckFailed = 2;

// Writes to --output when given, standard output otherwise.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw gridid::Error("cannot open output file: " + path);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct EstimateOptions {
  std::string measurements_path;
  double rank_tol = gridid::kDefaultRankTol;
  double zero_tol = gridid::kDefaultZeroTol;
  std::string output_path;
};

int run_estimate(const EstimateOptions& options) {
  std::vector<gridid::Diagnostic> diagnostics;
  const gridid::MeasurementSet set =
      gridid::read_measurements_csv(std::filesystem::path(options.measurements_path),
                                    &diagnostics);
  for (const auto& diagnostic : diagnostics) {
    std::cerr << "warning: " << diagnostic.message() << '\n';
  }

  const gridid::EdgeIndexing indexing(set.node_count());
  const Eigen::MatrixXd incidence = gridid::build_incidence_matrix(indexing);
  const gridid::CoefficientMatrix coefficient =
      gridid::build_stacked_coefficient(incidence, set);
  const gridid::EstimationResult estimate = gridid::estimate_admittance(
      coefficient, gridid::stacked_currents(set), options.rank_tol);
  const gridid::IdentifiedNetwork network = gridid::extract_topology(
      estimate.admittances, coefficient.indexing, options.zero_tol,
      estimate.residual_norm);

  OutputTarget output(options.output_path);
  output.stream() << gridid::estimation_report_json(estimate.report, network)
                         .dump(2)
                  << '\n';
  if (!estimate.report.unique) {
    std::cerr << "not identifiable: rank " << estimate.report.achieved_rank
              << " of " << estimate.report.edge_count << " unknowns; need tau >= "
              << estimate.report.min_tau << " snapshots\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

struct IdentifiabilityOptions {
  int nodes = 0;
  int tau = 0;
  std::string output_path;
};

int run_identifiability(const IdentifiabilityOptions& options) {
  OutputTarget output(options.output_path);
  output.stream()
      << gridid::identifiability_forecast_json(options.nodes, options.tau)
             .dump(2)
      << '\n';
  return kExitOk;
}

struct SimulateOptions {
  std::string network_path;
  int tau = 0;
  std::uint64_t seed = 0;
  std::string profile = "perturbed";
  double nominal = 1.0;
  double perturb = 0.05;
  std::string output_path;
};

int run_simulate(const SimulateOptions& options) {
  const gridid::GroundTruthNetwork network =
      gridid::read_network_json(std::filesystem::path(options.network_path));

  gridid::VoltageProfileSpec spec;
  spec.mode = options.profile == "random"
                  ? gridid::ProfileMode::kRandomComplex
                  : gridid::ProfileMode::kPerturbedNominal;
  spec.nominal_magnitude = options.nominal;
  spec.perturbation = options.perturb;
  spec.seed = options.seed;

  const gridid::MeasurementSet set =
      gridid::generate_measurements(network, spec, options.tau);

  const int n = network.node_count();
  std::cerr << "forecast: n=" << n << " tau=" << options.tau
            << " unknowns=" << n * (n - 1) / 2
            << " min_tau=" << gridid::min_measurements(gridid::NodeCount(n));
  if (n >= options.tau) {
    std::cerr << " expected_rank=" << gridid::expected_rank(n, options.tau);
  }
  std::cerr << " unique_expected="
            << (options.tau >= n - 1 ? "true" : "false") << '\n';

  OutputTarget output(options.output_path);
  gridid::write_measurements_csv(set, output.stream());
  return kExitOk;
}

struct RigidityOptions {
  std::string measurements_path;
  double rank_tol = gridid::kDefaultRankTol;
  std::string output_path;
};

int run_rigidity_check(const RigidityOptions& options) {
  std::vector<gridid::Diagnostic> diagnostics;
  const gridid::MeasurementSet set =
      gridid::read_measurements_csv(std::filesystem::path(options.measurements_path),
                                    &diagnostics);
  for (const auto& diagnostic : diagnostics) {
    std::cerr << "warning: " << diagnostic.message() << '\n';
  }

  const gridid::EdgeIndexing indexing(set.node_count());
  const Eigen::MatrixXd incidence = gridid::build_incidence_matrix(indexing);
  const gridid::CoefficientMatrix coefficient =
      gridid::build_stacked_coefficient(incidence, set);
  const gridid::RigidityCheckReport report =
      gridid::check_equivalence(coefficient, set, options.rank_tol);

  OutputTarget output(options.output_path);
  output.stream() << gridid::rigidity_report_json(report).dump(2) << '\n';
  return report.nullspace_match && report.trivial_motions_annihilated
             ? kExitOk
             : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gridid: identify electrical network topology and admittance "
      "parameters from node-level voltage/current phasor measurements"};
  app.require_subcommand(1);

  EstimateOptions estimate_options;
  auto* estimate = app.add_subcommand(
      "estimate",
      "Estimate edge admittances and topology from a measurement CSV");
  estimate
      ->add_option("--measurements", estimate_options.measurements_path,
                   "Measurement CSV (k,node,v_re,v_im,i_re,i_im)")
      ->required();
  estimate->add_option("--rank-tol", estimate_options.rank_tol,
                       "Relative singular-value cutoff for rank decisions");
  estimate->add_option("--zero-tol", estimate_options.zero_tol,
                       "Relative magnitude below which an edge is pruned");
  estimate->add_option("--output", estimate_options.output_path,
                       "Report path (default: stdout)");

  IdentifiabilityOptions identifiability_options;
  auto* identifiability = app.add_subcommand(
      "identifiability",
      "Evaluate the measurement-count requirement for given n and tau");
  identifiability
      ->add_option("--nodes", identifiability_options.nodes, "Node count")
      ->required();
  identifiability
      ->add_option("--tau", identifiability_options.tau, "Snapshot count")
      ->required();
  identifiability->add_option("--output", identifiability_options.output_path,
                              "Report path (default: stdout)");

  SimulateOptions simulate_options;
  auto* simulate = app.add_subcommand(
      "simulate", "Forward-simulate a network into a measurement CSV");
  simulate
      ->add_option("--network", simulate_options.network_path,
                   "Network JSON file")
      ->required();
  simulate->add_option("--tau", simulate_options.tau, "Snapshot count")
      ->required();
  simulate->add_option("--seed", simulate_options.seed, "Random seed");
  simulate
      ->add_option("--profile", simulate_options.profile,
                   "Voltage profile mode")
      ->check(CLI::IsMember({"random", "perturbed"}));
  simulate->add_option("--nominal", simulate_options.nominal,
                       "Nominal voltage magnitude");
  simulate->add_option("--perturb", simulate_options.perturb,
                       "Relative perturbation scale in (0, 1)");
  simulate->add_option("--output", simulate_options.output_path,
                       "CSV path (default: stdout)");

  RigidityOptions rigidity_options;
  auto* rigidity = app.add_subcommand(
      "rigidity-check",
      "Certify the rigidity-matrix rank/null-space equivalence on a "
      "measurement CSV");
  rigidity
      ->add_option("--measurements", rigidity_options.measurements_path,
                   "Measurement CSV")
      ->required();
  rigidity->add_option("--rank-tol", rigidity_options.rank_tol,
                       "Relative singular-value cutoff and residual tolerance");
  rigidity->add_option("--output", rigidity_options.output_path,
                       "Report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (estimate->parsed()) return run_estimate(estimate_options);
    if (identifiability->parsed())
      return run_identifiability(identifiability_options);
    if (simulate->parsed()) return run_simulate(simulate_options);
    if (rigidity->parsed()) return run_rigidity_check(rigidity_options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

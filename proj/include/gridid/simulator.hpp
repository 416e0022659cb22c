#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gridid/estimation.hpp"
#include "gridid/measurements.hpp"
#include "gridid/topology.hpp"

namespace gridid {

struct NetworkEdge {
  int i = 0;
  int j = 0;
  std::complex<double> admittance;
};

// Known network used to synthesize measurement campaigns: a sparse edge list
// over n nodes; candidate edges not listed have zero admittance.
class GroundTruthNetwork {
 public:
  GroundTruthNetwork(NodeCount n, std::vector<NetworkEdge> edges,
                     std::string name = "");

  int node_count() const { return n_; }
  const std::vector<NetworkEdge>& edges() const { return edges_; }
  const std::string& name() const { return name_; }

  // Dense e-vector in canonical edge order; absent edges are zero.
  Eigen::VectorXcd admittance_vector(const EdgeIndexing& indexing) const;

 private:
  int n_;
  std::vector<NetworkEdge> edges_;
  std::string name_;
};

enum class ProfileMode { kRandomComplex, kPerturbedNominal, kExplicit };

// Deterministic voltage-profile generator settings; `seed` fully determines
// the generated snapshots.
struct VoltageProfileSpec {
  ProfileMode mode = ProfileMode::kPerturbedNominal;
  double nominal_magnitude = 1.0;  // volts
  double perturbation = 0.05;      // relative, in (0, 1)
  std::uint64_t seed = 0;
  // kExplicit only: one voltage vector per snapshot.
  std::vector<Eigen::VectorXcd> explicit_profiles;
};

// Injected node currents of the network under the given voltages.
Eigen::VectorXcd forward_currents(const GroundTruthNetwork& network,
                                  const Eigen::VectorXcd& voltages);

// Draws `snapshot_count` voltage snapshots per the spec and pairs each with
// its forward-simulated currents. The result passes validation.
MeasurementSet generate_measurements(const GroundTruthNetwork& network,
                                     const VoltageProfileSpec& spec,
                                     int snapshot_count);

// Connected random network: each candidate edge is kept with probability
// `edge_density`, resampling (up to a bounded retry budget) until the graph
// is connected. Admittances have positive real and negative imaginary parts
// with magnitude in [min_magnitude, max_magnitude).
GroundTruthNetwork generate_random_network(NodeCount n, double edge_density,
                                           double min_magnitude,
                                           double max_magnitude,
                                           std::uint64_t seed);

// Network file: {"n": int, "edges": [{"i", "j", "y_re", "y_im"}],
// "name": string}.
GroundTruthNetwork read_network_json(std::istream& in);
GroundTruthNetwork read_network_json(const std::filesystem::path& path);
void write_network_json(const GroundTruthNetwork& network, std::ostream& out);
void write_network_json(const GroundTruthNetwork& network,
                        const std::filesystem::path& path);

}  // namespace gridid

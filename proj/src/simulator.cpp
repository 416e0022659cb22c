#include "gridid/simulator.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <utility>

#include "json.hpp"

namespace gridid {

GroundTruthNetwork::GroundTruthNetwork(NodeCount n,
                                       std::vector<NetworkEdge> edges,
                                       std::string name)
    : n_(n.value()), edges_(std::move(edges)), name_(std::move(name)) {
  std::set<std::pair<int, int>> seen;
  for (const auto& edge : edges_) {
    if (edge.i < 1 || edge.j <= edge.i || edge.j > n_) {
      throw ValidationError("network edge (" + std::to_string(edge.i) + ", " +
                            std::to_string(edge.j) +
                            ") violates 1 <= i < j <= " + std::to_string(n_));
    }
    if (!(std::abs(edge.admittance) > 0.0)) {
      throw ValidationError("network edge (" + std::to_string(edge.i) + ", " +
                            std::to_string(edge.j) +
                            ") has zero admittance; omit absent edges");
    }
    if (!seen.insert({edge.i, edge.j}).second) {
      throw ValidationError("duplicate network edge (" +
                            std::to_string(edge.i) + ", " +
                            std::to_string(edge.j) + ")");
    }
  }
}

Eigen::VectorXcd GroundTruthNetwork::admittance_vector(
    const EdgeIndexing& indexing) const {
  if (indexing.node_count() != n_) {
    throw ShapeError("edge indexing is for " +
                     std::to_string(indexing.node_count()) +
                     " nodes but network has " + std::to_string(n_));
  }
  Eigen::VectorXcd admittances =
      Eigen::VectorXcd::Zero(indexing.edge_count());
  for (const auto& edge : edges_) {
    admittances(indexing.position_of(edge.i, edge.j)) = edge.admittance;
  }
  return admittances;
}

Eigen::VectorXcd forward_currents(const GroundTruthNetwork& network,
                                  const Eigen::VectorXcd& voltages) {
  if (voltages.size() != network.node_count()) {
    throw ShapeError("voltage vector has " + std::to_string(voltages.size()) +
                     " entries but network has " +
                     std::to_string(network.node_count()) + " nodes");
  }
  EdgeIndexing indexing(network.node_count());
  const Eigen::MatrixXcd admittance_matrix =
      assemble_admittance_matrix(network.admittance_vector(indexing), indexing);
  return admittance_matrix * voltages;
}

namespace {

Eigen::VectorXcd draw_profile(const VoltageProfileSpec& spec, int n,
                              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXcd profile(n);
  switch (spec.mode) {
    case ProfileMode::kRandomComplex:
      for (int i = 0; i < n; ++i) {
        const double re = spec.nominal_magnitude * unit(rng);
        const double im = spec.nominal_magnitude * unit(rng);
        profile(i) = {re, im};
      }
      break;
    case ProfileMode::kPerturbedNominal:
      for (int i = 0; i < n; ++i) {
        const double re =
            spec.nominal_magnitude * (1.0 + spec.perturbation * unit(rng));
        const double im =
            spec.nominal_magnitude * spec.perturbation * unit(rng);
        profile(i) = {re, im};
      }
      break;
    case ProfileMode::kExplicit:
      break;  // handled by the caller
  }
  return profile;
}

void check_profile_spec(const VoltageProfileSpec& spec, int n,
                        int snapshot_count) {
  if (spec.mode == ProfileMode::kExplicit) {
    if (static_cast<int>(spec.explicit_profiles.size()) != snapshot_count) {
      throw ShapeError("explicit profile list has " +
                       std::to_string(spec.explicit_profiles.size()) +
                       " entries, expected " + std::to_string(snapshot_count));
    }
    for (const auto& profile : spec.explicit_profiles) {
      if (profile.size() != n) {
        throw ShapeError("explicit profile has " +
                         std::to_string(profile.size()) +
                         " entries, expected " + std::to_string(n));
      }
    }
    return;
  }
  if (!(spec.nominal_magnitude > 0.0)) {
    throw ValidationError("nominal magnitude must be positive");
  }
  if (spec.mode == ProfileMode::kPerturbedNominal &&
      !(spec.perturbation > 0.0 && spec.perturbation < 1.0)) {
    throw ValidationError("perturbation must lie in (0, 1)");
  }
}

}  // namespace

MeasurementSet generate_measurements(const GroundTruthNetwork& network,
                                     const VoltageProfileSpec& spec,
                                     int snapshot_count) {
  if (snapshot_count < 1) {
    throw DomainError("snapshot count must be >= 1, got " +
                      std::to_string(snapshot_count));
  }
  const int n = network.node_count();
  check_profile_spec(spec, n, snapshot_count);

  std::mt19937_64 rng(spec.seed);
  std::vector<PhasorSnapshot> snapshots;
  snapshots.reserve(static_cast<std::size_t>(snapshot_count));
  for (int k = 1; k <= snapshot_count; ++k) {
    PhasorSnapshot snapshot;
    snapshot.index = k;
    snapshot.voltages = spec.mode == ProfileMode::kExplicit
                            ? spec.explicit_profiles[k - 1]
                            : draw_profile(spec, n, rng);
    snapshot.currents = forward_currents(network, snapshot.voltages);
    snapshots.push_back(std::move(snapshot));
  }
  return MeasurementSet::validate(std::move(snapshots));
}

namespace {

bool is_connected(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) parent[i] = i;
  auto find = [&parent](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  int components = n;
  for (const auto& [i, j] : edges) {
    const int ri = find(i);
    const int rj = find(j);
    if (ri != rj) {
      parent[ri] = rj;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

GroundTruthNetwork generate_random_network(NodeCount n, double edge_density,
                                           double min_magnitude,
                                           double max_magnitude,
                                           std::uint64_t seed) {
  if (!(edge_density > 0.0 && edge_density <= 1.0)) {
    throw ValidationError("edge density must lie in (0, 1]");
  }
  if (!(min_magnitude > 0.0 && min_magnitude <= max_magnitude)) {
    throw ValidationError("magnitude range must satisfy 0 < min <= max");
  }

  const EdgeIndexing indexing(n);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(edge_density);

  constexpr int kMaxAttempts = 100;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<std::pair<int, int>> kept;
    for (const Edge& edge : indexing.edges()) {
      if (keep(rng)) kept.emplace_back(edge.i, edge.j);
    }
    if (!is_connected(n.value(), kept)) continue;

    std::uniform_real_distribution<double> magnitude(min_magnitude,
                                                     max_magnitude);
    // Angles in [-pi/2, 0): positive conductance, negative susceptance.
    std::uniform_real_distribution<double> angle(-std::numbers::pi / 2, 0.0);
    std::vector<NetworkEdge> edges;
    edges.reserve(kept.size());
    for (const auto& [i, j] : kept) {
      const double r = magnitude(rng);
      const double theta = angle(rng);
      edges.push_back(
          NetworkEdge{i, j, {r * std::cos(theta), r * std::sin(theta)}});
    }
    return GroundTruthNetwork(n, std::move(edges),
                              "random-n" + std::to_string(n.value()) + "-seed" +
                                  std::to_string(seed));
  }
  throw GenerationError(
      "could not sample a connected network in " +
      std::to_string(kMaxAttempts) +
      " attempts; increase edge density or change the seed");
}

GroundTruthNetwork read_network_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid network JSON: ") + e.what());
  }
  try {
    const int n = doc.at("n").get<int>();
    std::vector<NetworkEdge> edges;
    for (const auto& item : doc.at("edges")) {
      NetworkEdge edge;
      edge.i = item.at("i").get<int>();
      edge.j = item.at("j").get<int>();
      edge.admittance = {item.at("y_re").get<double>(),
                         item.at("y_im").get<double>()};
      edges.push_back(edge);
    }
    const std::string name = doc.value("name", std::string{});
    return GroundTruthNetwork(NodeCount(n), std::move(edges), name);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid network JSON: ") + e.what());
  }
}

GroundTruthNetwork read_network_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open network file: " + path.string());
  }
  return read_network_json(in);
}

void write_network_json(const GroundTruthNetwork& network, std::ostream& out) {
  nlohmann::json doc;
  doc["n"] = network.node_count();
  doc["name"] = network.name();
  doc["edges"] = nlohmann::json::array();
  for (const auto& edge : network.edges()) {
    doc["edges"].push_back({{"i", edge.i},
                            {"j", edge.j},
                            {"y_re", edge.admittance.real()},
                            {"y_im", edge.admittance.imag()}});
  }
  out << doc.dump(2) << '\n';
}

void write_network_json(const GroundTruthNetwork& network,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open output file: " + path.string());
  }
  write_network_json(network, out);
}

}  // namespace gridid

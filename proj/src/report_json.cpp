#include "gridid/report_json.hpp"

#include <cmath>

namespace gridid {

nlohmann::json estimation_report_json(const IdentifiabilityReport& report,
                                      const IdentifiedNetwork& network) {
  nlohmann::json doc;
  doc["n"] = report.node_count;
  doc["tau"] = report.snapshot_count;
  doc["e"] = report.edge_count;
  doc["achieved_rank"] = report.achieved_rank;
  if (report.expected_rank.has_value()) {
    doc["expected_rank"] = *report.expected_rank;
  } else {
    doc["expected_rank"] = nullptr;
  }
  doc["min_tau"] = report.min_tau;
  doc["unique"] = report.unique;
  doc["singular_values"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < report.singular_values.size(); ++i) {
    doc["singular_values"].push_back(report.singular_values(i));
  }
  if (std::isfinite(report.condition_number)) {
    doc["condition_number"] = report.condition_number;
  } else {
    doc["condition_number"] = nullptr;
  }
  doc["residual_norm"] = network.residual_norm;
  doc["edges"] = nlohmann::json::array();
  for (const auto& edge : network.edges) {
    doc["edges"].push_back({{"i", edge.i},
                            {"j", edge.j},
                            {"y_re", edge.admittance.real()},
                            {"y_im", edge.admittance.imag()}});
  }
  doc["pruned"] = nlohmann::json::array();
  for (const auto& edge : network.pruned) {
    doc["pruned"].push_back(
        {{"i", edge.i}, {"j", edge.j}, {"magnitude", edge.magnitude}});
  }
  return doc;
}

nlohmann::json rigidity_report_json(const RigidityCheckReport& report) {
  nlohmann::json doc;
  doc["rank_R"] = report.rigidity_rank;
  doc["rank_At"] = report.coefficient_rank;
  if (report.expected_rank.has_value()) {
    doc["expected"] = *report.expected_rank;
  } else {
    doc["expected"] = nullptr;
  }
  doc["nullspace_match"] = report.nullspace_match;
  doc["max_cross_residual"] = report.max_cross_residual;
  doc["trivial_motions_annihilated"] = report.trivial_motions_annihilated;
  return doc;
}

nlohmann::json identifiability_forecast_json(int node_count,
                                             int snapshot_count) {
  const int unknowns = node_count * (node_count - 1) / 2;
  const int rank = expected_rank(node_count, snapshot_count);
  nlohmann::json doc;
  doc["expected_rank"] = rank;
  doc["unknowns"] = unknowns;
  doc["min_tau"] = min_measurements(NodeCount(node_count));
  doc["unique_expected"] = rank == unknowns;
  return doc;
}

}  // namespace gridid

#pragma once

#include "json.hpp"

#include "gridid/estimation.hpp"
#include "gridid/rigidity.hpp"

namespace gridid {

// Combined estimation report:
// {n, tau, e, achieved_rank, expected_rank, min_tau, unique, singular_values,
//  condition_number, residual_norm, edges: [{i, j, y_re, y_im}],
//  pruned: [{i, j, magnitude}]}.
// expected_rank is null when undefined (n < tau); condition_number is null
// when infinite.
nlohmann::json estimation_report_json(const IdentifiabilityReport& report,
                                      const IdentifiedNetwork& network);

// {rank_R, rank_At, expected, nullspace_match, max_cross_residual,
//  trivial_motions_annihilated}.
nlohmann::json rigidity_report_json(const RigidityCheckReport& report);

// Pure formula evaluation, no data needed:
// {expected_rank, unknowns, min_tau, unique_expected}.
// Throws DomainError when n < tau.
nlohmann::json identifiability_forecast_json(int node_count,
                                             int snapshot_count);

}  // namespace gridid

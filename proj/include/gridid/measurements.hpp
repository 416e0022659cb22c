#pragma once

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gridid/errors.hpp"
#include "gridid/topology.hpp"

namespace gridid {

// One synchronized measurement: voltage and injected-current phasors at
// every node.
struct PhasorSnapshot {
  int index = 0;              // k, 1-based within a set; 0 means unassigned
  Eigen::VectorXcd voltages;  // volts
  Eigen::VectorXcd currents;  // amperes
};

// Non-fatal data-quality finding. Equal consecutive phasors at a node make
// the campaign less informative but do not invalidate it; the rank analysis
// downstream is the authoritative test.
struct Diagnostic {
  enum class Kind { kDuplicateVoltage, kDuplicateCurrent };
  Kind kind = Kind::kDuplicateVoltage;
  int node = 0;      // 1-based
  int snapshot = 0;  // k such that the value at k equals the value at k+1
  std::string message() const;
};

// A validated measurement campaign: tau snapshots of n nodes each, indices
// 1..tau, all entries finite. Immutable after construction.
class MeasurementSet {
 public:
  // Checks shapes and finiteness (hard errors) and consecutive per-node
  // distinctness (appended to `diagnostics` when given). Snapshots with
  // indices already assigned may arrive in any order and are sorted; a list
  // of all-unassigned indices is numbered 1..tau as given.
  static MeasurementSet validate(std::vector<PhasorSnapshot> snapshots,
                                 std::vector<Diagnostic>* diagnostics = nullptr);

  int node_count() const { return n_; }
  int snapshot_count() const { return static_cast<int>(snapshots_.size()); }
  const std::vector<PhasorSnapshot>& snapshots() const { return snapshots_; }
  const PhasorSnapshot& snapshot(int k) const;  // k is 1-based

  friend bool operator==(const MeasurementSet& a, const MeasurementSet& b);

 private:
  MeasurementSet(std::vector<PhasorSnapshot> snapshots, int n)
      : snapshots_(std::move(snapshots)), n_(n) {}

  std::vector<PhasorSnapshot> snapshots_;
  int n_ = 0;
};

// Voltage trajectory of one node across the campaign.
struct NodalVoltageProfile {
  int node = 0;             // 1-based
  Eigen::VectorXcd values;  // length tau
};

std::vector<NodalVoltageProfile> nodal_profiles(const MeasurementSet& set);

// CSV interchange, header required:
//   k,node,v_re,v_im,i_re,i_im
// One row per (snapshot, node) pair; rows may appear in any order; every
// (k, node) cell in 1..tau x 1..n must be present exactly once. Parsing is
// locale-independent; '\n' and '\r\n' are both accepted and '\n' is written.
// Written floats use the shortest representation that round-trips to the
// same double.
MeasurementSet read_measurements_csv(std::istream& in,
                                     std::vector<Diagnostic>* diagnostics = nullptr);
MeasurementSet read_measurements_csv(const std::filesystem::path& path,
                                     std::vector<Diagnostic>* diagnostics = nullptr);
void write_measurements_csv(const MeasurementSet& set, std::ostream& out);
void write_measurements_csv(const MeasurementSet& set,
                            const std::filesystem::path& path);

}  // namespace gridid

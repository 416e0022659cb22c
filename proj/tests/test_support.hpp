#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "gridid/measurements.hpp"

namespace gridid::testing {

inline std::filesystem::path fixture_path(const char* name) {
  return std::filesystem::path(GRIDID_DATA_DIR) / name;
}

inline Eigen::VectorXcd random_complex_vector(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = {unit(rng), unit(rng)};
  return v;
}

inline Eigen::VectorXcd random_real_vector(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = {unit(rng), 0.0};
  return v;
}

// Random measurement set with independently drawn voltages and currents;
// complex entries when `complex_field`, zero imaginary parts otherwise.
inline MeasurementSet random_measurement_set(int n, int tau,
                                             std::uint64_t seed,
                                             bool complex_field = true) {
  std::mt19937_64 rng(seed);
  std::vector<PhasorSnapshot> snapshots;
  for (int k = 1; k <= tau; ++k) {
    PhasorSnapshot snapshot;
    snapshot.index = k;
    snapshot.voltages = complex_field ? random_complex_vector(n, rng)
                                      : random_real_vector(n, rng);
    snapshot.currents = complex_field ? random_complex_vector(n, rng)
                                      : random_real_vector(n, rng);
    snapshots.push_back(std::move(snapshot));
  }
  return MeasurementSet::validate(std::move(snapshots));
}

}  // namespace gridid::testing

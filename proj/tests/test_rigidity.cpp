#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "gridid/rigidity.hpp"
#include "test_support.hpp"

using namespace gridid;
using gridid::testing::fixture_path;
using gridid::testing::random_measurement_set;

namespace {

using Complex = std::complex<double>;

CoefficientMatrix stacked_for(const MeasurementSet& set) {
  const EdgeIndexing indexing(set.node_count());
  return build_stacked_coefficient(build_incidence_matrix(indexing), set);
}

Realization random_realization(int n, int tau, std::uint64_t seed,
                               bool complex_field = true) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::MatrixXcd points(n, tau);
  for (int i = 0; i < n; ++i) {
    for (int d = 0; d < tau; ++d) {
      points(i, d) = {unit(rng), complex_field ? unit(rng) : 0.0};
    }
  }
  return Realization(std::move(points));
}

}  // namespace

TEST_CASE("single-edge rigidity matrix in one dimension") {
  Eigen::MatrixXcd points(2, 1);
  const Complex a{4.0, 1.0};
  const Complex b{-2.0, 0.5};
  points << a, b;
  const Realization realization(points);
  const Eigen::MatrixXcd rigidity =
      build_rigidity_matrix(realization, EdgeIndexing(2));
  REQUIRE(rigidity.rows() == 1);
  REQUIRE(rigidity.cols() == 2);
  CHECK(rigidity(0, 0) == a - b);
  CHECK(rigidity(0, 1) == b - a);
  CHECK(linalg::singular_spectrum(rigidity, kDefaultRankTol).rank == 1);
}

TEST_CASE("three collinear points in one dimension, hand value") {
  Eigen::MatrixXcd points(3, 1);
  points << Complex{0, 0}, Complex{1, 0}, Complex{3, 0};
  const Realization realization(points);
  const Eigen::MatrixXcd rigidity =
      build_rigidity_matrix(realization, EdgeIndexing(3));
  Eigen::MatrixXcd expected(3, 3);
  expected << Complex{-1, 0}, Complex{1, 0}, Complex{0, 0},
      Complex{-3, 0}, Complex{0, 0}, Complex{3, 0},
      Complex{0, 0}, Complex{-2, 0}, Complex{2, 0};
  CHECK(rigidity == expected);
  CHECK(linalg::singular_spectrum(rigidity, kDefaultRankTol).rank == 2);
}

TEST_CASE("coincident endpoints give a zero row") {
  Eigen::MatrixXcd points(3, 2);
  points << Complex{1, 1}, Complex{0, 2},
      Complex{1, 1}, Complex{0, 2},
      Complex{3, -1}, Complex{2, 0};
  const Realization realization(points);
  const EdgeIndexing indexing(3);
  const Eigen::MatrixXcd rigidity =
      build_rigidity_matrix(realization, indexing);
  CHECK(rigidity.row(indexing.position_of(1, 2)).isZero(0.0));
  CHECK(!rigidity.row(indexing.position_of(1, 3)).isZero(0.0));
}

TEST_CASE("zero-dimensional realizations are rejected") {
  CHECK_THROWS_AS(Realization(Eigen::MatrixXcd(3, 0)), ShapeError);
}

TEST_CASE("trivial motions in one dimension: a single translation") {
  const Realization realization = random_realization(4, 1, 7);
  const auto motions = trivial_motion_basis(realization);
  REQUIRE(motions.size() == 1);
  CHECK(motions[0] == Eigen::VectorXcd::Ones(4));
}

TEST_CASE("two translations and one rotation in two dimensions") {
  const Realization realization = random_realization(3, 2, 8);
  const auto motions = trivial_motion_basis(realization);
  CHECK(motions.size() == 3);
}

TEST_CASE("rigidity matrices annihilate every trivial motion") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 20; ++trial) {
    const int tau = 1 + static_cast<int>(rng() % 5);
    const int n = std::max(2, tau + static_cast<int>(rng() % 4));
    const Realization realization =
        random_realization(n, tau, rng(), trial % 2 == 0);
    const Eigen::MatrixXcd rigidity =
        build_rigidity_matrix(realization, EdgeIndexing(n));
    const auto motions = trivial_motion_basis(realization);
    CHECK(motions.size() ==
          static_cast<std::size_t>(tau) * (tau + 1) / 2);
    for (const auto& motion : motions) {
      CHECK((rigidity * motion).norm() <=
            1e-10 * rigidity.norm() * motion.norm());
    }
  }
}

TEST_CASE("fixture campaign: coefficient and rigidity ranks match at 6") {
  const MeasurementSet set =
      read_measurements_csv(fixture_path("ieee4_tab1.csv"));
  const CoefficientMatrix coefficient = stacked_for(set);
  const RigidityCheckReport report = check_equivalence(coefficient, set);
  CHECK(report.rigidity_rank == 6);
  CHECK(report.coefficient_rank == 6);
  CHECK(report.expected_rank == 6);
  CHECK(report.nullspace_match);
  CHECK(report.max_cross_residual <= 1e-8);
  CHECK(report.trivial_motions_annihilated);
}

TEST_CASE("generic five-node three-snapshot campaign has rank 9") {
  const MeasurementSet set = random_measurement_set(5, 3, 4242);
  const CoefficientMatrix coefficient = stacked_for(set);
  const RigidityCheckReport report = check_equivalence(coefficient, set);
  CHECK(report.rigidity_rank == 9);  // 5*3 - 6
  CHECK(report.coefficient_rank == 9);
  CHECK(report.nullspace_match);
}

TEST_CASE("collapsed realizations match trivially at rank 0") {
  // Every node at the same point: flat voltage profiles per snapshot.
  std::vector<PhasorSnapshot> snapshots;
  for (int k = 1; k <= 2; ++k) {
    PhasorSnapshot s;
    s.index = k;
    s.voltages = Eigen::VectorXcd::Constant(4, Complex(k * 1.5, -k));
    s.currents = Eigen::VectorXcd::Constant(4, Complex(k, k));
    snapshots.push_back(std::move(s));
  }
  const MeasurementSet set = MeasurementSet::validate(std::move(snapshots));
  const CoefficientMatrix coefficient = stacked_for(set);
  const RigidityCheckReport report = check_equivalence(coefficient, set);
  CHECK(report.rigidity_rank == 0);
  CHECK(report.coefficient_rank == 0);
  CHECK(report.nullspace_match);
  CHECK(report.max_cross_residual == 0.0);
  CHECK(report.trivial_motions_annihilated);
}

TEST_CASE("duplicated snapshots stay equivalent despite rank deficiency") {
  const MeasurementSet base = random_measurement_set(4, 2, 66);
  std::vector<PhasorSnapshot> snapshots = base.snapshots();
  PhasorSnapshot copy = snapshots.back();
  copy.index = 3;
  snapshots.push_back(copy);
  const MeasurementSet set = MeasurementSet::validate(std::move(snapshots));
  const CoefficientMatrix coefficient = stacked_for(set);
  const RigidityCheckReport report = check_equivalence(coefficient, set);
  CHECK(report.rigidity_rank == report.coefficient_rank);
  CHECK(report.nullspace_match);
  // Below the generic value for tau = 3: the third snapshot adds nothing.
  CHECK(report.expected_rank == 4 * 3 - 6);
  CHECK(report.rigidity_rank < *report.expected_rank);
}

TEST_CASE("null-space equivalence holds across fields and sizes") {
  for (const bool complex_field : {false, true}) {
    for (int n = 2; n <= 6; ++n) {
      for (int tau = 1; tau <= n; ++tau) {
        const MeasurementSet set = random_measurement_set(
            n, tau, 2000 + n * 100 + tau * 10 + (complex_field ? 1 : 0),
            complex_field);
        const CoefficientMatrix coefficient = stacked_for(set);
        const RigidityCheckReport report = check_equivalence(coefficient, set);
        CHECK(report.nullspace_match);
        CHECK(report.max_cross_residual <= 1e-8);
        CHECK(report.rigidity_rank == n * tau - tau * (tau + 1) / 2);
      }
    }
  }
}

TEST_CASE("expected rank is marked undefined when n < tau") {
  const MeasurementSet set = random_measurement_set(2, 3, 31);
  const CoefficientMatrix coefficient = stacked_for(set);
  const RigidityCheckReport report = check_equivalence(coefficient, set);
  CHECK_FALSE(report.expected_rank.has_value());
  CHECK(report.nullspace_match);
}

TEST_CASE("collinear realizations are detected as nongeneric") {
  // Points on a line through the origin: x_i = c_i * direction.
  std::mt19937_64 rng(919);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int n = 3; n <= 6; ++n) {
    const int tau = 2;
    Eigen::RowVectorXcd direction(tau);
    direction << Complex{unit(rng), unit(rng)}, Complex{unit(rng), unit(rng)};
    Eigen::MatrixXcd points(n, tau);
    for (int i = 0; i < n; ++i) {
      points.row(i) = Complex(static_cast<double>(i + 1), 0) * direction;
    }
    const Eigen::MatrixXcd rigidity =
        build_rigidity_matrix(Realization(points), EdgeIndexing(n));
    const int rank = linalg::singular_spectrum(rigidity, kDefaultRankTol).rank;
    CHECK(rank < n * tau - tau * (tau + 1) / 2);
  }
}

TEST_CASE("provenance mismatches throw") {
  const MeasurementSet set = random_measurement_set(4, 2, 12);
  const MeasurementSet other = random_measurement_set(4, 3, 12);
  const CoefficientMatrix coefficient = stacked_for(set);
  CHECK_THROWS_AS(check_equivalence(coefficient, other), ShapeError);
}

#pragma once

#include <random>
#include <string>

#include "delayh2/io.hpp"
#include "delayh2/pattern.hpp"
#include "delayh2/plant.hpp"

namespace delayh2::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(DELAYH2_FIXTURE_DIR) + "/" + name;
}

inline Plant chain_plant() { return parse_plant(read_text_file(fixture_path("chain.json"))); }
inline Plant sweep_plant() { return parse_plant(read_text_file(fixture_path("sweep.json"))); }

inline InformationPattern chain_fixture_pattern() {
  return chain_pattern(BlockPartition::units(3), BlockPartition::units(3));
}

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

// Random square matrix rescaled to the given spectral radius.
inline Matrix random_stable(std::mt19937_64& rng, Eigen::Index n, double radius) {
  Matrix a = random_matrix(rng, n, n);
  const double rho = spectral_radius(a);
  return rho > 0.0 ? Matrix(a * (radius / rho)) : a;
}

inline StateSpace random_system(std::uint64_t seed, Eigen::Index n, Eigen::Index p,
                                Eigen::Index m, double radius = 0.8, bool with_d = true) {
  std::mt19937_64 rng(seed);
  Matrix a = random_stable(rng, n, radius);
  Matrix b = random_matrix(rng, n, m);
  Matrix c = random_matrix(rng, p, n);
  Matrix d = with_d ? random_matrix(rng, p, m) : Matrix::Zero(p, m);
  return StateSpace(a, b, c, d);
}

// Random stable plant with two control and two measurement channels
// (n <= 4). D12 and D21 carry an identity block so the definiteness
// assumptions hold with margin.
inline Plant random_plant(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_real_distribution<double> radius(0.3, 0.8);
  const Eigen::Index n = dim(rng);
  const Eigen::Index p2 = 2, q2 = 2;
  const Eigen::Index m1 = q2 + 1 + dim(rng) % 2;
  const Eigen::Index q1 = p2 + 1 + dim(rng) % 2;
  PlantMatrices m;
  m.A = random_stable(rng, n, radius(rng));
  m.B1 = random_matrix(rng, n, m1);
  m.B2 = random_matrix(rng, n, p2);
  m.C1 = random_matrix(rng, q1, n);
  m.C2 = random_matrix(rng, q2, n);
  m.D12 = Matrix::Zero(q1, p2);
  m.D12.bottomRows(p2) = Matrix::Identity(p2, p2) + 0.3 * random_matrix(rng, p2, p2);
  m.D12.topRows(q1 - p2) = 0.5 * random_matrix(rng, q1 - p2, p2);
  m.D21 = Matrix::Zero(q2, m1);
  m.D21.rightCols(q2) = Matrix::Identity(q2, q2) + 0.3 * random_matrix(rng, q2, q2);
  m.D21.leftCols(m1 - q2) = 0.5 * random_matrix(rng, q2, m1 - q2);
  return Plant(std::move(m));
}

// A pattern for random_plant, varied with the seed.
inline InformationPattern random_plant_pattern(std::uint64_t seed) {
  const BlockPartition u = BlockPartition::units(2);
  const BlockPartition y = BlockPartition::units(2);
  switch (seed % 4) {
    case 0: return family_pattern("di", u, y, 2);
    case 1: return family_pattern("tri", u, y, 2);
    case 2: return family_pattern("low", u, y, 3);
    default: return from_delay_matrix({{1, 2}, {3, 1}}, u, y, 2);
  }
}

}  // namespace delayh2::testing

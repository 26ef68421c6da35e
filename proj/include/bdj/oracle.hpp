#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bdj/model.hpp"

namespace bdj {

/// Conservative finite-state restriction of the generator to {0..N}: rates
/// that would jump past N are lumped onto the transition into N, so rows
/// still sum to zero and the truncated chain is an honest CTMC.
struct TruncatedGenerator {
  std::int64_t N = 0;
  std::vector<double> q;  // (N+1)^2, row-major
  std::string boundary_policy = "lump";

  double& at(std::int64_t i, std::int64_t j) {
    return q[static_cast<std::size_t>(i) * static_cast<std::size_t>(N + 1) +
             static_cast<std::size_t>(j)];
  }
  double at(std::int64_t i, std::int64_t j) const {
    return q[static_cast<std::size_t>(i) * static_cast<std::size_t>(N + 1) +
             static_cast<std::size_t>(j)];
  }
};

/// Throws TooSmall when N < R + 1.
TruncatedGenerator truncate(const ProcessModel& model, std::int64_t N);

/// Left null vector of Q normalized to a probability vector, by dense
/// Gaussian elimination with partial pivoting (one balance equation is traded
/// for the normalization). Throws SingularSystem on pivot breakdown.
std::vector<double> solve_stationary(const TruncatedGenerator& gen);

/// Same machinery for the embedded chain: pi (P - I) = 0, sum pi = 1.
std::vector<double> solve_embedded_stationary(const ProcessModel& model, std::int64_t N);

struct CompareRow {
  std::int64_t k = 0;
  double formula = 0.0;
  double oracle = 0.0;
  double abs_diff = 0.0;
};

/// Formula-vs-oracle comparison over 0..kmax for both psi and pi.
struct CompareReport {
  std::int64_t N = 0;
  std::int64_t kmax = 0;
  std::vector<CompareRow> psi;
  std::vector<CompareRow> pi;
  double sup_norm_psi = 0.0;
  double tv_distance_psi = 0.0;
  double sup_norm_pi = 0.0;
  double tv_distance_pi = 0.0;
};

/// kmax < 0 defaults to N / 2 (keeps the lumped boundary out of the
/// comparison window).
CompareReport compare(const ProcessModel& model, std::int64_t N, std::int64_t kmax = -1);

}  // namespace bdj

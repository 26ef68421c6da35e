#pragma once

#include <cstdint>
#include <vector>

#include "bdj/model.hpp"

namespace bdj {

/// Counts of upward crossings of one level within an excursion, by overshoot
/// type: u[r-1] crossings landed r-1 sites above the level they crossed.
using OffspringVector = std::vector<std::int64_t>;

struct PmfValue {
  double probability = 0.0;
  bool impossible = false;  // support constraint violated (type >= 2 parents
                            // always place one child at coordinate type-1)
};

/// Offspring law of one level-i individual of the given parent type
/// (1-based). Multinomial coefficients are accumulated through lgamma.
PmfValue offspring_pmf(const ProcessModel& model, Site i, int parent_type,
                       const OffspringVector& children);

/// Row parent_type of the mean matrix A_i.
std::vector<double> offspring_mean_row(const ProcessModel& model, Site i, int parent_type);

/// E(U_i): mean crossing counts at level i for a whole excursion, i.e. the
/// first-jump law pushed through the mean matrices A_1 ... A_{i-1}.
std::vector<double> expected_type_counts(const ProcessModel& model, Site i);

/// Crossing counts of a complete excursion path (starts at 0, ends at its
/// first return to 0). Element [i] is U_i for levels 1..max state; element
/// [0] is unused and zero. Throws NotAnExcursion for malformed paths.
std::vector<OffspringVector> count_crossings(int R, const std::vector<Site>& path);

}  // namespace bdj

#include "bdj/branching.hpp"

#include <cmath>
#include <stdexcept>

#include "bdj/linalg.hpp"
#include "bdj/stationary.hpp"

namespace bdj {

PmfValue offspring_pmf(const ProcessModel& model, Site i, int parent_type,
                       const OffspringVector& children) {
  const int R = model.R();
  if (i < 1) throw std::invalid_argument("offspring_pmf needs a level i >= 1");
  if (parent_type < 1 || parent_type > R) {
    throw std::invalid_argument("parent_type must lie in 1..R");
  }
  if (static_cast<int>(children.size()) != R) {
    throw std::invalid_argument("children vector must have R entries");
  }
  for (std::int64_t u : children) {
    if (u < 0) throw std::invalid_argument("children counts must be nonnegative");
  }

  OffspringVector u = children;
  if (parent_type >= 2) {
    // (type l) parents carry their own jump across level i+1: one child of
    // type l-1 is mandatory.
    std::int64_t& inherited = u[static_cast<std::size_t>(parent_type - 2)];
    if (inherited < 1) return {0.0, true};
    --inherited;
  }

  const RateRow& row = model.rates_at(i);
  const double total = model.total_rate(i);
  std::int64_t count = 0;
  for (std::int64_t x : u) count += x;

  double logp = std::lgamma(static_cast<double>(count) + 1.0) + std::log(row.mu / total);
  for (int r = 0; r < R; ++r) {
    const std::int64_t ur = u[static_cast<std::size_t>(r)];
    if (ur == 0) continue;
    const double p = row.lambda[static_cast<std::size_t>(r)] / total;
    if (p == 0.0) return {0.0, false};
    logp += static_cast<double>(ur) * std::log(p) - std::lgamma(static_cast<double>(ur) + 1.0);
  }
  return {std::exp(logp), false};
}

std::vector<double> offspring_mean_row(const ProcessModel& model, Site i, int parent_type) {
  const SmallMatrix a = matrix_A(model, i);
  std::vector<double> row(static_cast<std::size_t>(model.R()));
  for (int c = 0; c < model.R(); ++c) row[static_cast<std::size_t>(c)] = a(parent_type - 1, c);
  return row;
}

std::vector<double> expected_type_counts(const ProcessModel& model, Site i) {
  if (i < 1) throw std::invalid_argument("expected_type_counts needs i >= 1");
  ProductSweep sweep(model, ProductSweep::Kind::A, root_jump_distribution(model));
  for (Site k = 0; k < i - 1; ++k) sweep.advance();
  std::vector<double> out(static_cast<std::size_t>(model.R()));
  for (int c = 0; c < model.R(); ++c) out[static_cast<std::size_t>(c)] = sweep.state().component(c).to_double();
  return out;
}

std::vector<OffspringVector> count_crossings(int R, const std::vector<Site>& path) {
  if (path.size() < 3 || path.front() != 0 || path.back() != 0) {
    throw NotAnExcursion("path must start at 0 and end at its first return to 0");
  }
  Site max_state = 0;
  for (std::size_t k = 1; k < path.size(); ++k) {
    if (path[k] == 0 && k + 1 != path.size()) {
      throw NotAnExcursion("path revisits 0 before its final step");
    }
    const Site step = path[k] - path[k - 1];
    if (step != -1 && (step < 1 || step > R)) {
      throw NotAnExcursion("step of size " + std::to_string(step) +
                           " is not a legal jump");
    }
    max_state = std::max(max_state, path[k]);
  }

  std::vector<OffspringVector> u(static_cast<std::size_t>(max_state) + 1,
                                 OffspringVector(static_cast<std::size_t>(R), 0));
  for (std::size_t k = 1; k < path.size(); ++k) {
    const Site from = path[k - 1];
    const Site to = path[k];
    if (to <= from) continue;
    // An upward jump from x to y crosses every level in (x, y]; the crossing
    // of level i lands y - i sites above it (type y - i + 1).
    for (Site level = from + 1; level <= to; ++level) {
      ++u[static_cast<std::size_t>(level)][static_cast<std::size_t>(to - level)];
    }
  }
  return u;
}

}  // namespace bdj

#include "bdj/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bdj {

namespace {

void check_row(const RateRow& row, int R, Site site) {
  if (static_cast<int>(row.lambda.size()) != R) {
    throw std::invalid_argument("rate row at site " + std::to_string(site) +
                                " has " + std::to_string(row.lambda.size()) +
                                " birth rates, expected " + std::to_string(R));
  }
  if (!std::isfinite(row.mu) || row.mu < 0.0) throw NegativeRate(site, "mu");
  for (int r = 0; r < R; ++r) {
    if (!std::isfinite(row.lambda[r]) || row.lambda[r] < 0.0) {
      throw NegativeRate(site, "lambda" + std::to_string(r + 1));
    }
  }
}

// Margin by which the reported condition bounds are pushed strictly past
// the exact inf/sup of the total rates.
constexpr double kBoundMargin = 1e-9;

}  // namespace

ProcessModel build_model(RateProfile profile) {
  if (profile.R < 1) throw std::invalid_argument("R must be at least 1");
  if (profile.prefix.empty()) throw EmptyPrefix();

  std::vector<RateRow> tail_rows = profile.tail.block;
  if (profile.tail.kind == TailKind::constant) {
    if (tail_rows.empty()) tail_rows.push_back(profile.prefix.back());
    if (tail_rows.size() != 1) {
      throw std::invalid_argument("constant tail takes at most one row");
    }
  } else if (tail_rows.empty()) {
    throw std::invalid_argument("periodic tail needs a non-empty block");
  }

  const Site L = static_cast<Site>(profile.prefix.size());
  for (Site i = 0; i < L; ++i) check_row(profile.prefix[i], profile.R, i);
  for (std::size_t k = 0; k < tail_rows.size(); ++k) {
    check_row(tail_rows[k], profile.R, L + static_cast<Site>(k));
  }

  if (profile.prefix[0].mu != 0.0) throw Mu0NotZero(profile.prefix[0].mu);
  for (Site i = 1; i < L; ++i) {
    if (profile.prefix[i].mu == 0.0) throw ZeroDeathRate(i);
  }
  for (std::size_t k = 0; k < tail_rows.size(); ++k) {
    if (tail_rows[k].mu == 0.0) throw ZeroDeathRate(L + static_cast<Site>(k));
  }
  if (profile.prefix[0].total() == 0.0) throw ZeroTotalRate(0);

  ProcessModel m;
  m.profile_ = std::move(profile);
  m.rows_ = m.profile_.prefix;
  m.rows_.insert(m.rows_.end(), tail_rows.begin(), tail_rows.end());
  m.totals_.reserve(m.rows_.size());

  double inf = std::numeric_limits<double>::infinity();
  double sup = 0.0;
  for (const RateRow& row : m.rows_) {
    const double t = row.total();
    m.totals_.push_back(t);
    inf = std::min(inf, t);
    sup = std::max(sup, t);
  }
  m.kappa_ = inf * (1.0 - kBoundMargin);
  m.big_k_ = sup * (1.0 + kBoundMargin);
  return m;
}

double ProcessModel::embedded_transition(Site i, Site j) const {
  if (i < 0 || j < 0) return 0.0;
  const RateRow& row = rates_at(i);
  const double total = total_rate(i);
  if (j == i - 1) return row.mu / total;
  const Site step = j - i;
  if (step >= 1 && step <= R()) return row.lambda[static_cast<std::size_t>(step - 1)] / total;
  return 0.0;
}

GeneratorRow ProcessModel::generator_row(Site i) const {
  const RateRow& row = rates_at(i);
  GeneratorRow g;
  g.site = i;
  g.diagonal = -total_rate(i);
  g.down = row.mu;
  g.up = row.lambda;
  return g;
}

}  // namespace bdj

#include "bdj/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "bdj/stationary.hpp"

namespace bdj {

namespace {

// Solves B x = rhs in place by Gaussian elimination with partial pivoting.
std::vector<double> solve_dense(std::vector<double> b, std::vector<double> rhs,
                                std::int64_t n) {
  auto at = [&](std::int64_t r, std::int64_t c) -> double& {
    return b[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(c)];
  };
  for (std::int64_t col = 0; col < n; ++col) {
    std::int64_t pivot = col;
    double best = std::fabs(at(col, col));
    for (std::int64_t r = col + 1; r < n; ++r) {
      const double v = std::fabs(at(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (!(best > 0.0) || !std::isfinite(best)) {
      throw SingularSystem("elimination broke down at column " + std::to_string(col));
    }
    if (pivot != col) {
      for (std::int64_t c = col; c < n; ++c) std::swap(at(pivot, c), at(col, c));
      std::swap(rhs[static_cast<std::size_t>(pivot)], rhs[static_cast<std::size_t>(col)]);
    }
    const double d = at(col, col);
    for (std::int64_t r = col + 1; r < n; ++r) {
      const double f = at(r, col) / d;
      if (f == 0.0) continue;
      at(r, col) = 0.0;
      for (std::int64_t c = col + 1; c < n; ++c) at(r, c) -= f * at(col, c);
      rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (std::int64_t r = n - 1; r >= 0; --r) {
    double s = rhs[static_cast<std::size_t>(r)];
    for (std::int64_t c = r + 1; c < n; ++c) s -= at(r, c) * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(r)] = s / at(r, r);
  }
  return x;
}

// Left null vector with simplex constraint: transpose the system, trade the
// last balance equation for sum = 1, and clamp sub-roundoff negatives.
std::vector<double> null_left_normalized(const std::vector<double>& m, std::int64_t n) {
  std::vector<double> b(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      b[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
        static_cast<std::size_t>(j)] =
          m[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(i)];
    }
  }
  for (std::int64_t j = 0; j < n; ++j) {
    b[static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(n) +
      static_cast<std::size_t>(j)] = 1.0;
  }
  std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);
  rhs[static_cast<std::size_t>(n - 1)] = 1.0;
  std::vector<double> x = solve_dense(std::move(b), std::move(rhs), n);
  double sum = 0.0;
  for (double& v : x) {
    if (v < 0.0) {
      if (v < -1e-12) {
        throw SingularSystem("stationary solve produced a negative component " +
                             std::to_string(v));
      }
      v = 0.0;
    }
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

}  // namespace

TruncatedGenerator truncate(const ProcessModel& model, std::int64_t N) {
  if (N < model.R() + 1) {
    throw TooSmall("truncation level must be at least R + 1 = " +
                   std::to_string(model.R() + 1));
  }
  TruncatedGenerator gen;
  gen.N = N;
  gen.q.assign(static_cast<std::size_t>(N + 1) * static_cast<std::size_t>(N + 1), 0.0);
  for (std::int64_t i = 0; i <= N; ++i) {
    const RateRow& row = model.rates_at(i);
    gen.at(i, i) -= model.total_rate(i);
    if (i >= 1) gen.at(i, i - 1) += row.mu;
    for (int r = 0; r < model.R(); ++r) {
      const std::int64_t j = std::min<std::int64_t>(i + r + 1, N);
      gen.at(i, j) += row.lambda[static_cast<std::size_t>(r)];
    }
  }
  return gen;
}

std::vector<double> solve_stationary(const TruncatedGenerator& gen) {
  return null_left_normalized(gen.q, gen.N + 1);
}

std::vector<double> solve_embedded_stationary(const ProcessModel& model, std::int64_t N) {
  if (N < model.R() + 1) {
    throw TooSmall("truncation level must be at least R + 1 = " +
                   std::to_string(model.R() + 1));
  }
  const std::int64_t n = N + 1;
  // P - I for the embedded chain with the same lump-into-N boundary.
  std::vector<double> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  auto at = [&](std::int64_t i, std::int64_t j) -> double& {
    return m[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(j)];
  };
  for (std::int64_t i = 0; i <= N; ++i) {
    at(i, i) -= 1.0;
    if (i >= 1) at(i, i - 1) += model.embedded_transition(i, i - 1);
    for (int r = 0; r < model.R(); ++r) {
      const std::int64_t j = std::min<std::int64_t>(i + r + 1, N);
      at(i, j) += model.embedded_transition(i, i + r + 1);
    }
  }
  return null_left_normalized(m, n);
}

CompareReport compare(const ProcessModel& model, std::int64_t N, std::int64_t kmax) {
  if (kmax < 0) kmax = N / 2;
  kmax = std::min(kmax, N);

  const StationaryResult formula = psi_stationary(model, kmax, kStationaryTol);
  const std::vector<double> psi_oracle = solve_stationary(truncate(model, N));
  const std::vector<double> pi_oracle = solve_embedded_stationary(model, N);

  CompareReport rep;
  rep.N = N;
  rep.kmax = kmax;
  for (std::int64_t k = 0; k <= kmax; ++k) {
    const std::size_t idx = static_cast<std::size_t>(k);
    CompareRow psi_row{k, formula.psi[idx], psi_oracle[idx],
                       std::fabs(formula.psi[idx] - psi_oracle[idx])};
    CompareRow pi_row{k, formula.pi[idx], pi_oracle[idx],
                      std::fabs(formula.pi[idx] - pi_oracle[idx])};
    rep.sup_norm_psi = std::max(rep.sup_norm_psi, psi_row.abs_diff);
    rep.sup_norm_pi = std::max(rep.sup_norm_pi, pi_row.abs_diff);
    rep.tv_distance_psi += 0.5 * psi_row.abs_diff;
    rep.tv_distance_pi += 0.5 * pi_row.abs_diff;
    rep.psi.push_back(psi_row);
    rep.pi.push_back(pi_row);
  }
  return rep;
}

}  // namespace bdj

#include "bdj/linalg.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace bdj {

SmallMatrix SmallMatrix::operator*(const SmallMatrix& other) const {
  assert(n_ == other.n_);
  SmallMatrix out(n_);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) {
      const double v = (*this)(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < n_; ++j) out(i, j) += v * other(k, j);
    }
  }
  return out;
}

void ScaledVector::renormalize() {
  double max = 0.0;
  for (double x : dir_) max = std::max(max, std::fabs(x));
  if (max == 0.0) {
    zero_ = true;
    exp2_ = 0;
    return;
  }
  zero_ = false;
  const int e = std::ilogb(max);  // max in [2^e, 2^{e+1})
  if (e != 0) {
    for (double& x : dir_) x = std::ldexp(x, -e);
    exp2_ += e;
  }
}

void ScaledVector::mul_row(const SmallMatrix& m) {
  const int n = order();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int l = 0; l < n; ++l) {
    const double v = dir_[static_cast<std::size_t>(l)];
    if (v == 0.0) continue;
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] += v * m(l, j);
  }
  dir_ = std::move(out);
  renormalize();
}

void ScaledVector::mul_col(const SmallMatrix& m) {
  const int n = order();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += m(i, j) * dir_[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s;
  }
  dir_ = std::move(out);
  renormalize();
}

SmallMatrix matrix_M(const ProcessModel& model, Site i) {
  assert(i >= 1);
  const int R = model.R();
  const RateRow& row = model.rates_at(i);
  SmallMatrix m(R);
  double suffix = 0.0;
  for (int k = R; k >= 1; --k) {
    suffix += row.lambda[static_cast<std::size_t>(k - 1)];
    m(0, k - 1) = suffix / row.mu;
  }
  for (int l = 1; l < R; ++l) m(l, l - 1) = 1.0;
  return m;
}

SmallMatrix matrix_A(const ProcessModel& model, Site i) {
  assert(i >= 1);
  const int R = model.R();
  const RateRow& row = model.rates_at(i);
  SmallMatrix m(R);
  for (int l = 0; l < R; ++l) {
    for (int r = 0; r < R; ++r) m(l, r) = row.lambda[static_cast<std::size_t>(r)] / row.mu;
  }
  for (int l = 1; l < R; ++l) m(l, l - 1) += 1.0;
  return m;
}

ProductSweep::ProductSweep(const ProcessModel& model, Kind kind, std::vector<double> start)
    : model_(&model), kind_(kind), v_(ScaledVector(std::move(start))) {
  const std::size_t rows = static_cast<std::size_t>(model.prefix_length()) +
                           static_cast<std::size_t>(model.tail_period());
  cache_.reserve(rows);
  for (std::size_t k = 0; k < rows; ++k) cache_.emplace_back(model.R());
  cached_.assign(rows, 0);
}

void ProductSweep::advance() {
  const Site site = steps_ + 1;
  const Site L = model_->prefix_length();
  std::size_t idx;
  if (site < L) {
    idx = static_cast<std::size_t>(site);
  } else {
    idx = static_cast<std::size_t>(L + (site - L) % model_->tail_period());
  }
  if (!cached_[idx]) {
    cache_[idx] = (kind_ == Kind::M) ? matrix_M(*model_, site) : matrix_A(*model_, site);
    cached_[idx] = 1;
  }
  v_.mul_row(cache_[idx]);
  ++steps_;
}

ScaledScalar phi(const ProcessModel& model, std::int64_t n) {
  assert(n >= 0);
  ProductSweep sweep(model, ProductSweep::Kind::M, [&] {
    std::vector<double> e1(static_cast<std::size_t>(model.R()), 0.0);
    e1[0] = 1.0;
    return e1;
  }());
  for (std::int64_t k = 0; k < n; ++k) sweep.advance();
  return sweep.first();
}

ScaledScalar phi_window(const ProcessModel& model, Site j, Site b) {
  if (!(1 <= j && j <= b)) throw BadWindow("phi_window needs 1 <= j <= b");
  // Column sweep: M_j (M_{j+1} (... M_{b-1} e1^T)).
  ScaledVector u = ScaledVector::unit(model.R(), 0);
  for (Site site = b - 1; site >= j; --site) u.mul_col(matrix_M(model, site));
  return u.component(0);
}

ScaledScalar a_product_mass(const ProcessModel& model, std::int64_t n) {
  assert(n >= 1);
  ProductSweep sweep(model, ProductSweep::Kind::A, [&] {
    std::vector<double> e1(static_cast<std::size_t>(model.R()), 0.0);
    e1[0] = 1.0;
    return e1;
  }());
  for (std::int64_t k = 0; k < n - 1; ++k) sweep.advance();
  return sweep.state().sum();
}

namespace {

// Gelfand estimate: rho = lim ||M^m||^(1/m) via repeated squaring with
// exact power-of-two rescaling. Converges for every nonnegative matrix,
// including periodic ones where plain power iteration cycles.
double squaring_estimate(const SmallMatrix& m) {
  const int n = m.order();
  SmallMatrix c = m;
  double log2rho = 0.0;
  const int kSquarings = 60;
  for (int j = 1; j <= kSquarings; ++j) {
    c = c * c;
    double max = 0.0;
    for (int r = 0; r < n; ++r) {
      for (int s = 0; s < n; ++s) max = std::max(max, c(r, s));
    }
    if (max == 0.0) return 0.0;  // nilpotent
    const int k = std::ilogb(max);
    if (k != 0) {
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) c(r, s) = std::ldexp(c(r, s), -k);
      }
    }
    log2rho += std::ldexp(static_cast<double>(k), -j);
  }
  double maxrow = 0.0;
  for (int r = 0; r < n; ++r) {
    double rowsum = 0.0;
    for (int s = 0; s < n; ++s) rowsum += c(r, s);
    maxrow = std::max(maxrow, rowsum);
  }
  log2rho += std::ldexp(std::log2(maxrow), -kSquarings);
  return std::exp2(log2rho);
}

}  // namespace

double spectral_radius(const SmallMatrix& m, double tol) {
  const int n = m.order();
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (!(m(r, c) >= 0.0) || !std::isfinite(m(r, c))) {
        throw std::invalid_argument("spectral_radius expects a finite nonnegative matrix");
      }
    }
  }
  if (n == 1) return m(0, 0);

  std::vector<double> v(static_cast<std::size_t>(n), 1.0);
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  double prev = -1.0;
  int stable = 0;
  const int kDirectCap = 512;
  for (int it = 0; it < kDirectCap; ++it) {
    double vv = 0.0, vw = 0.0, max = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += m(i, j) * v[static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)] = s;
      vv += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
      vw += v[static_cast<std::size_t>(i)] * s;
      max = std::max(max, s);
    }
    if (max == 0.0) return 0.0;
    const double rayleigh = vw / vv;
    if (prev >= 0.0 && std::fabs(rayleigh - prev) <= tol * std::max(1.0, std::fabs(rayleigh))) {
      if (++stable >= 3) {
        // Residual check guards against a cycling iteration that happens to
        // produce matching quotients.
        double resid = 0.0, scale = 0.0;
        for (int i = 0; i < n; ++i) {
          resid = std::max(resid, std::fabs(w[static_cast<std::size_t>(i)] -
                                            rayleigh * v[static_cast<std::size_t>(i)]));
          scale = std::max(scale, std::fabs(v[static_cast<std::size_t>(i)]));
        }
        if (resid <= 1e3 * tol * std::max(1.0, rayleigh) * scale) return rayleigh;
        break;
      }
    } else {
      stable = 0;
    }
    prev = rayleigh;
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] / max;
  }

  const double est = squaring_estimate(m);
  if (!std::isfinite(est)) throw NoConvergence(kDirectCap);
  return est;
}

}  // namespace bdj

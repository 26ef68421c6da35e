#pragma once

#include <cstdint>
#include <vector>

#include "bdj/model.hpp"
#include "bdj/scaled.hpp"

namespace bdj {

/// Dense square matrix of tiny order (R is expected to stay <= ~16).
class SmallMatrix {
public:
  explicit SmallMatrix(int order) : n_(order), a_(static_cast<std::size_t>(order) * order, 0.0) {}

  static SmallMatrix identity(int order) {
    SmallMatrix m(order);
    for (int i = 0; i < order; ++i) m(i, i) = 1.0;
    return m;
  }

  int order() const { return n_; }
  double& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * n_ + c]; }
  double operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * n_ + c]; }

  SmallMatrix operator*(const SmallMatrix& other) const;

private:
  int n_;
  std::vector<double> a_;
};

/// Nonnegative R-vector with a base-2 exponent pulled out, so long chains of
/// vector-matrix products neither overflow nor underflow. The stored entries
/// have max-norm in [1, 2) (rescaling is by exact powers of two), or are all
/// zero.
class ScaledVector {
public:
  explicit ScaledVector(std::vector<double> entries) : dir_(std::move(entries)) { renormalize(); }

  static ScaledVector unit(int order, int index) {
    std::vector<double> v(static_cast<std::size_t>(order), 0.0);
    v[static_cast<std::size_t>(index)] = 1.0;
    return ScaledVector(std::move(v));
  }

  int order() const { return static_cast<int>(dir_.size()); }
  bool is_zero() const { return zero_; }
  std::int64_t exponent() const { return exp2_; }
  const std::vector<double>& entries() const { return dir_; }

  ScaledScalar component(int i) const {
    return ScaledScalar(dir_[static_cast<std::size_t>(i)], exp2_);
  }

  ScaledScalar dot(const std::vector<double>& w) const {
    double s = 0.0;
    for (std::size_t i = 0; i < dir_.size(); ++i) s += dir_[i] * w[i];
    return ScaledScalar(s, exp2_);
  }

  ScaledScalar sum() const {
    double s = 0.0;
    for (double x : dir_) s += x;
    return ScaledScalar(s, exp2_);
  }

  /// v <- v * M (row vector times matrix).
  void mul_row(const SmallMatrix& m);

  /// v <- M * v (matrix times column vector).
  void mul_col(const SmallMatrix& m);

private:
  void renormalize();

  std::vector<double> dir_;
  std::int64_t exp2_ = 0;
  bool zero_ = true;
};

/// M_i: first row holds a_i^k = (sum_{l>=k} lambda_i^l) / mu_i, rows below
/// carry a shifted identity. Requires i >= 1.
SmallMatrix matrix_M(const ProcessModel& model, Site i);

/// A_i: every row holds b_i^r = lambda_i^r / mu_i, with entry (l, l-1)
/// incremented by one for rows l >= 2. Requires i >= 1.
SmallMatrix matrix_A(const ProcessModel& model, Site i);

/// phi_n = e1 M_1 M_2 ... M_n e1^T; the empty product (n = 0) is 1.
ScaledScalar phi(const ProcessModel& model, std::int64_t n);

/// e1 M_j ... M_{b-1} e1^T; equals 1 when j = b.
ScaledScalar phi_window(const ProcessModel& model, Site j, Site b);

/// e1 A_1 ... A_{n-1} 1; equals 1 when n = 1.
ScaledScalar a_product_mass(const ProcessModel& model, std::int64_t n);

/// Dominant eigenvalue of a nonnegative matrix (Perron root). Power
/// iteration with a Rayleigh-quotient test; falls back to a scaled
/// repeated-squaring norm estimate when the iteration cycles.
double spectral_radius(const SmallMatrix& m, double tol = 1e-12);

/// Iterates a row vector through the site matrices M_i (or A_i),
/// renormalizing after every step. After k advances the state equals
/// start * B_1 * ... * B_k.
class ProductSweep {
public:
  enum class Kind { M, A };

  ProductSweep(const ProcessModel& model, Kind kind, std::vector<double> start);

  void advance();
  std::int64_t steps() const { return steps_; }
  const ScaledVector& state() const { return v_; }
  ScaledScalar first() const { return v_.component(0); }

private:
  const ProcessModel* model_;
  Kind kind_;
  ScaledVector v_;
  std::int64_t steps_ = 0;
  std::vector<SmallMatrix> cache_;   // one matrix per distinct rate row
  std::vector<char> cached_;
};

}  // namespace bdj

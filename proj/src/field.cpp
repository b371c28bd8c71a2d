#include "nsreg/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nsreg/error.hpp"

namespace nsreg {

ScalarField3::ScalarField3(const Grid3& grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField3::ScalarField3(const Grid3& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ValidationError("field has " + std::to_string(values_.size()) + " values, grid needs " +
                          std::to_string(grid_.size()));
  }
  require_finite();
}

ScalarField3 ScalarField3::from_function(const Grid3& grid,
                                         const std::function<double(double, double, double)>& fn) {
  const int n = grid.n();
  const double h = grid.spacing();
  std::vector<double> v(grid.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) v[grid.index(i, j, k)] = fn(i * h, j * h, k * h);
  return ScalarField3(grid, std::move(v));
}

ScalarField3 ScalarField3::constant(const Grid3& grid, double c) {
  return ScalarField3(grid, std::vector<double>(grid.size(), c));
}

double ScalarField3::mean() const noexcept {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double ScalarField3::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

ScalarField3& ScalarField3::operator+=(const ScalarField3& o) {
  require_same_grid(grid_, o.grid_, "field addition");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ScalarField3& ScalarField3::operator-=(const ScalarField3& o) {
  require_same_grid(grid_, o.grid_, "field subtraction");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ScalarField3& ScalarField3::operator*=(double c) {
  if (!std::isfinite(c)) throw ValidationError("scale factor must be finite");
  for (double& v : values_) v *= c;
  return *this;
}

void ScalarField3::require_finite(const char* what) const {
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError(std::string(what) + " contains NaN or Inf");
  }
}

ScalarField3 multiply(const ScalarField3& a, const ScalarField3& b) {
  require_same_grid(a.grid(), b.grid(), "pointwise product");
  ScalarField3 out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

ScalarField3 abs(const ScalarField3& f) {
  ScalarField3 out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::abs(f[i]);
  return out;
}

VectorField3::VectorField3(const Grid3& grid)
    : c_{ScalarField3(grid), ScalarField3(grid), ScalarField3(grid)} {}

VectorField3::VectorField3(ScalarField3 u1, ScalarField3 u2, ScalarField3 u3)
    : c_{std::move(u1), std::move(u2), std::move(u3)} {
  require_same_grid(c_[0].grid(), c_[1].grid(), "vector field components");
  require_same_grid(c_[0].grid(), c_[2].grid(), "vector field components");
}

VectorField3& VectorField3::operator*=(double c) {
  for (auto& f : c_) f *= c;
  return *this;
}

ScalarField3 VectorField3::norm_squared() const {
  ScalarField3 out(grid());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = c_[0][i] * c_[0][i] + c_[1][i] * c_[1][i] + c_[2][i] * c_[2][i];
  }
  return out;
}

double VectorField3::max_norm() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < c_[0].size(); ++i) {
    m = std::max(m, c_[0][i] * c_[0][i] + c_[1][i] * c_[1][i] + c_[2][i] * c_[2][i]);
  }
  return std::sqrt(m);
}

void require_same_grid(const Grid3& a, const Grid3& b, const char* what) {
  if (!(a == b)) {
    throw ValidationError(std::string("grid mismatch in ") + what + ": n=" + std::to_string(a.n()) +
                          ", L=" + std::to_string(a.box_len()) + " vs n=" + std::to_string(b.n()) +
                          ", L=" + std::to_string(b.box_len()));
  }
}

ScalarField3 ball_mask(const Grid3& grid, const Ball& ball) {
  ScalarField3 m(grid);
  for (std::size_t idx : ball_indices(grid, ball)) m[idx] = 1.0;
  return m;
}

}  // namespace nsreg

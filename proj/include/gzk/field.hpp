#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gzk/fft.hpp"
#include "gzk/grid.hpp"

namespace gzk {

using cplx = std::complex<double>;

enum class Representation : std::uint8_t { physical = 0, spectral = 1 };

/// One real scalar field on a periodic grid, held either as physical samples
/// or as Fourier coefficients.
///
/// Transform normalization: the forward transform carries the quadrature
/// weight dx*dy, so the spectral coefficients approximate the continuous
/// Fourier transform and sum(|f_hat|^2) / (Lx*Ly) equals the L2 norm squared
/// of the physical samples.
class Field {
 public:
  Field() = default;

  Field(GridSpec grid, Representation rep)
      : grid_(std::move(grid)), rep_(rep), data_(grid_.size(), cplx{0.0, 0.0}) {}

  Field(GridSpec grid, Representation rep, std::vector<cplx> data)
      : grid_(std::move(grid)), rep_(rep), data_(std::move(data)) {
    if (data_.size() != grid_.size()) {
      throw std::invalid_argument("field: data size does not match grid");
    }
  }

  /// Physical field sampled from f(x, y).
  template <class F>
  static Field from_function(const GridSpec& grid, F&& f) {
    Field out(grid, Representation::physical);
    for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
      const double y = grid.y(iy);
      for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
        out.data_[grid.index(ix, iy)] = cplx{static_cast<double>(f(grid.x(ix), y)), 0.0};
      }
    }
    return out;
  }

  /// Physical field from real samples in grid order.
  static Field from_real(const GridSpec& grid, std::span<const double> values) {
    if (values.size() != grid.size()) {
      throw std::invalid_argument("field: sample count does not match grid");
    }
    Field out(grid, Representation::physical);
    for (std::size_t i = 0; i < values.size(); ++i) out.data_[i] = cplx{values[i], 0.0};
    return out;
  }

  const GridSpec& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  bool is_physical() const { return rep_ == Representation::physical; }
  bool is_spectral() const { return rep_ == Representation::spectral; }

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }
  std::size_t size() const { return data_.size(); }

  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }
  cplx& at(std::size_t ix, std::size_t iy) { return data_[grid_.index(ix, iy)]; }
  const cplx& at(std::size_t ix, std::size_t iy) const { return data_[grid_.index(ix, iy)]; }

  /// Real parts of the samples (physical fields only).
  std::vector<double> real_values() const {
    require(Representation::physical, "real_values");
    std::vector<double> out(data_.size());
    std::transform(data_.begin(), data_.end(), out.begin(), [](cplx z) { return z.real(); });
    return out;
  }

  void require(Representation rep, const char* what) const {
    if (rep_ != rep) {
      throw std::invalid_argument(std::string(what) + ": field is in the wrong representation");
    }
  }

  Field& operator+=(const Field& other) {
    check_compatible(other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }
  Field& operator-=(const Field& other) {
    check_compatible(other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
  }
  Field& operator*=(double a) {
    for (auto& z : data_) z *= a;
    return *this;
  }

  /// this += a * other
  Field& axpy(double a, const Field& other) {
    check_compatible(other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * other.data_[i];
    return *this;
  }

  void check_compatible(const Field& other) const {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("field: grid mismatch");
    if (rep_ != other.rep_) throw std::invalid_argument("field: representation mismatch");
  }

 private:
  GridSpec grid_;
  Representation rep_ = Representation::physical;
  std::vector<cplx> data_;
};

inline Field operator+(Field a, const Field& b) { return a += b; }
inline Field operator-(Field a, const Field& b) { return a -= b; }
inline Field operator*(double s, Field a) { return a *= s; }
inline Field operator*(Field a, double s) { return a *= s; }

inline Field to_spectral(const Field& f) {
  f.require(Representation::physical, "to_spectral");
  const auto& g = f.grid();
  std::vector<cplx> out(g.size());
  fft::forward(g.ny(), g.nx(), f.data(), out);
  const double w = g.cell_area();
  for (auto& z : out) z *= w;
  return Field(g, Representation::spectral, std::move(out));
}

inline Field to_physical(const Field& f) {
  f.require(Representation::spectral, "to_physical");
  const auto& g = f.grid();
  std::vector<cplx> out(g.size());
  fft::backward(g.ny(), g.nx(), f.data(), out);
  const double w = 1.0 / g.area();
  for (auto& z : out) z *= w;
  return Field(g, Representation::physical, std::move(out));
}

inline Field as_spectral(const Field& f) { return f.is_spectral() ? f : to_spectral(f); }
inline Field as_physical(const Field& f) { return f.is_physical() ? f : to_physical(f); }

/// Drops imaginary round-off from a physical field.
inline Field real_part(Field f) {
  f.require(Representation::physical, "real_part");
  for (auto& z : f.data()) z = cplx{z.real(), 0.0};
  return f;
}

/// Applies a spectral multiplier m(jx, jy) and returns a spectral field.
template <class M>
Field apply_multiplier(const Field& f, M&& m) {
  Field out = as_spectral(f);
  const auto& g = out.grid();
  for (std::size_t jy = 0; jy < g.ny(); ++jy) {
    for (std::size_t jx = 0; jx < g.nx(); ++jx) {
      out.at(jx, jy) *= m(jx, jy);
    }
  }
  return out;
}

/// Same as apply_multiplier, but returns the representation of the input.
template <class M>
Field filter(const Field& f, M&& m) {
  Field out = apply_multiplier(f, std::forward<M>(m));
  return f.is_physical() ? real_part(to_physical(out)) : out;
}

/// Largest deviation from Hermitian symmetry F(-k) = conj(F(k)), relative to
/// the largest coefficient.
inline double hermitian_defect(const Field& spectral) {
  spectral.require(Representation::spectral, "hermitian_defect");
  const auto& g = spectral.grid();
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t jy = 0; jy < g.ny(); ++jy) {
    const std::size_t my = (g.ny() - jy) % g.ny();
    for (std::size_t jx = 0; jx < g.nx(); ++jx) {
      const std::size_t mx = (g.nx() - jx) % g.nx();
      const cplx a = spectral.at(jx, jy);
      const cplx b = spectral.at(mx, my);
      worst = std::max(worst, std::abs(a - std::conj(b)));
      scale = std::max(scale, std::abs(a));
    }
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

}  // namespace gzk

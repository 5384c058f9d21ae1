#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace gzk {

enum class Axis { x, y };

/// Uniform periodic 2D grid on [-Lx/2, Lx/2) x [-Ly/2, Ly/2).
///
/// Physical samples are stored row-major with x fastest: index = iy * nx + ix,
/// and the sample sits at (-Lx/2 + ix * dx, -Ly/2 + iy * dy). Spectral
/// samples use the same index layout in FFT order, so mode jx carries the
/// wavenumber 2*pi*jx/Lx for jx < nx/2 and 2*pi*(jx - nx)/Lx otherwise. The
/// Nyquist mode jx = nx/2 is reported as -nx/2.
class GridSpec {
 public:
  GridSpec() = default;

  GridSpec(std::size_t nx, std::size_t ny, double lx, double ly)
      : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
    if (nx < 8 || ny < 8) {
      throw std::invalid_argument("grid: nx and ny must be at least 8");
    }
    if (nx % 2 != 0 || ny % 2 != 0) {
      throw std::invalid_argument("grid: nx and ny must be even");
    }
    if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
      throw std::invalid_argument("grid: box lengths must be positive and finite");
    }
    xi_.resize(nx);
    eta_.resize(ny);
    for (std::size_t j = 0; j < nx; ++j) xi_[j] = wavenumber(j, nx, lx);
    for (std::size_t j = 0; j < ny; ++j) eta_[j] = wavenumber(j, ny, ly);
  }

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t size() const { return nx_ * ny_; }
  double lx() const { return lx_; }
  double ly() const { return ly_; }
  double dx() const { return lx_ / static_cast<double>(nx_); }
  double dy() const { return ly_ / static_cast<double>(ny_); }
  double cell_area() const { return dx() * dy(); }
  double area() const { return lx_ * ly_; }

  double x(std::size_t ix) const { return -0.5 * lx_ + static_cast<double>(ix) * dx(); }
  double y(std::size_t iy) const { return -0.5 * ly_ + static_cast<double>(iy) * dy(); }

  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * nx_ + ix; }

  /// Wavenumber of spectral column jx / row jy.
  double xi(std::size_t jx) const { return xi_[jx]; }
  double eta(std::size_t jy) const { return eta_[jy]; }

  /// Wavenumber used by odd symbols (i*xi, xi^3 + xi*eta^2). The Nyquist
  /// mode has no conjugate partner, so odd symbols vanish there; this keeps
  /// real fields real under every odd multiplier.
  double xi_odd(std::size_t jx) const { return jx == nx_ / 2 ? 0.0 : xi_[jx]; }
  double eta_odd(std::size_t jy) const { return jy == ny_ / 2 ? 0.0 : eta_[jy]; }

  /// Signed lattice index in {-n/2, ..., n/2 - 1}.
  long mode_x(std::size_t jx) const { return signed_mode(jx, nx_); }
  long mode_y(std::size_t jy) const { return signed_mode(jy, ny_); }

  /// Storage column/row of a signed lattice index (periodic wrap).
  std::size_t column_of(long m) const { return wrap(m, nx_); }
  std::size_t row_of(long m) const { return wrap(m, ny_); }

  const std::vector<double>& xi_lattice() const { return xi_; }
  const std::vector<double>& eta_lattice() const { return eta_; }

  double max_wavenumber_x() const { return std::numbers::pi / dx(); }
  double max_wavenumber_y() const { return std::numbers::pi / dy(); }

  /// Same resolution, box lengths divided by `factor`.
  GridSpec scaled(double factor) const { return GridSpec(nx_, ny_, lx_ / factor, ly_ / factor); }

  bool operator==(const GridSpec& other) const {
    return nx_ == other.nx_ && ny_ == other.ny_ && lx_ == other.lx_ && ly_ == other.ly_;
  }

  std::string describe() const {
    return std::to_string(nx_) + "x" + std::to_string(ny_);
  }

 private:
  static long signed_mode(std::size_t j, std::size_t n) {
    const long jj = static_cast<long>(j);
    const long nn = static_cast<long>(n);
    return jj < nn / 2 ? jj : jj - nn;
  }
  static double wavenumber(std::size_t j, std::size_t n, double length) {
    return 2.0 * std::numbers::pi * static_cast<double>(signed_mode(j, n)) / length;
  }
  static std::size_t wrap(long m, std::size_t n) {
    const long nn = static_cast<long>(n);
    return static_cast<std::size_t>(((m % nn) + nn) % nn);
  }

  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  double lx_ = 0.0;
  double ly_ = 0.0;
  std::vector<double> xi_;
  std::vector<double> eta_;
};

inline GridSpec make_grid(std::size_t nx, std::size_t ny, double lx, double ly) {
  return GridSpec(nx, ny, lx, ly);
}

/// Square grid of side `box` centred on the origin.
inline GridSpec make_square_grid(std::size_t n, double box) { return GridSpec(n, n, box, box); }

}  // namespace gzk

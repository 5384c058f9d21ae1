#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

namespace gzk::fft {

using cplx = std::complex<double>;

namespace detail {

enum class Kind { forward, backward, r2c, c2r };

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are created once per (kind, ny, nx) under a lock and never freed.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(Kind kind, std::size_t ny, std::size_t nx) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_tuple(static_cast<int>(kind), ny, nx);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const int n0 = static_cast<int>(ny);
    const int n1 = static_cast<int>(nx);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = nullptr;
    switch (kind) {
      case Kind::forward:
      case Kind::backward: {
        std::vector<cplx> a(ny * nx), b(ny * nx);
        plan = fftw_plan_dft_2d(n0, n1, reinterpret_cast<fftw_complex*>(a.data()),
                                reinterpret_cast<fftw_complex*>(b.data()),
                                kind == Kind::forward ? FFTW_FORWARD : FFTW_BACKWARD, flags);
        break;
      }
      case Kind::r2c: {
        std::vector<double> a(ny * nx);
        std::vector<cplx> b(ny * (nx / 2 + 1));
        plan = fftw_plan_dft_r2c_2d(n0, n1, a.data(), reinterpret_cast<fftw_complex*>(b.data()),
                                    flags);
        break;
      }
      case Kind::c2r: {
        std::vector<cplx> a(ny * (nx / 2 + 1));
        std::vector<double> b(ny * nx);
        plan = fftw_plan_dft_c2r_2d(n0, n1, reinterpret_cast<fftw_complex*>(a.data()), b.data(),
                                    flags);
        break;
      }
    }
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<std::tuple<int, std::size_t, std::size_t>, fftw_plan> plans_;
};

inline fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace detail

/// Unnormalized forward transform: out_j = sum_n in_n exp(-2 pi i j.n / N).
inline void forward(std::size_t ny, std::size_t nx, std::span<const cplx> in, std::span<cplx> out) {
  auto plan = detail::PlanCache::instance().get(detail::Kind::forward, ny, nx);
  fftw_execute_dft(plan, detail::as_fftw(const_cast<cplx*>(in.data())), detail::as_fftw(out.data()));
}

/// Unnormalized backward transform (positive exponent).
inline void backward(std::size_t ny, std::size_t nx, std::span<const cplx> in, std::span<cplx> out) {
  auto plan = detail::PlanCache::instance().get(detail::Kind::backward, ny, nx);
  fftw_execute_dft(plan, detail::as_fftw(const_cast<cplx*>(in.data())), detail::as_fftw(out.data()));
}

/// Real-to-half-complex forward transform; `out` has ny * (nx/2 + 1) entries.
inline void forward_real(std::size_t ny, std::size_t nx, std::span<const double> in,
                         std::span<cplx> out) {
  auto plan = detail::PlanCache::instance().get(detail::Kind::r2c, ny, nx);
  fftw_execute_dft_r2c(plan, const_cast<double*>(in.data()), detail::as_fftw(out.data()));
}

/// Half-complex-to-real backward transform. FFTW overwrites the input of
/// multi-dimensional c2r transforms, so `in` is scratch.
inline void backward_real(std::size_t ny, std::size_t nx, std::span<cplx> in, std::span<double> out) {
  auto plan = detail::PlanCache::instance().get(detail::Kind::c2r, ny, nx);
  fftw_execute_dft_c2r(plan, detail::as_fftw(in.data()), out.data());
}

}  // namespace gzk::fft

#pragma once

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "halfspace/core.hpp"

namespace halfspace {
namespace fft {

namespace detail {

/// Process-wide plan cache. FFTW's planner is not thread safe, so creation
/// is serialized; new-array execution of cached plans is thread safe for
/// distinct buffers. Plans are created with FFTW_UNALIGNED so they can be
/// executed on any array of the right shape.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache c;
    return c;
  }

  fftw_plan complex_plan(const std::vector<int>& dims, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(dims, sign);
    auto it = c2c_.find(key);
    if (it != c2c_.end()) return it->second;
    std::size_t n = 1;
    for (int d : dims) n *= static_cast<std::size_t>(d);
    std::vector<cplx> a(n), b(n);
    fftw_plan p = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(),
                                reinterpret_cast<fftw_complex*>(a.data()),
                                reinterpret_cast<fftw_complex*>(b.data()), sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw Error("fftw: failed to create complex plan");
    c2c_[key] = p;
    return p;
  }

  fftw_plan r2r_plan(int n, fftw_r2r_kind kind) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, static_cast<int>(kind));
    auto it = r2r_.find(key);
    if (it != r2r_.end()) return it->second;
    std::vector<double> a(n), b(n);
    fftw_plan p = fftw_plan_r2r_1d(n, a.data(), b.data(), kind,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw Error("fftw: failed to create r2r plan");
    r2r_[key] = p;
    return p;
  }

 private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<std::pair<std::vector<int>, int>, fftw_plan> c2c_;
  std::map<std::pair<int, int>, fftw_plan> r2r_;
};

}  // namespace detail

/// Unnormalized forward DFT: out_k = sum_n in_n exp(-2 pi i k.n / P).
inline std::vector<cplx> forward(const std::vector<int>& dims, const std::vector<cplx>& in) {
  std::vector<cplx> out(in.size());
  fftw_plan p = detail::PlanCache::instance().complex_plan(dims, FFTW_FORWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

/// Unnormalized backward DFT: out_n = sum_k in_k exp(+2 pi i k.n / P).
inline std::vector<cplx> backward(const std::vector<int>& dims, const std::vector<cplx>& in) {
  std::vector<cplx> out(in.size());
  fftw_plan p = detail::PlanCache::instance().complex_plan(dims, FFTW_BACKWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

/// DST-I on n points (FFTW RODFT00, unnormalized):
/// out_k = 2 sum_j in_j sin(pi (j+1)(k+1) / (n+1)). Self-inverse up to 2(n+1).
inline void dst1(int n, const double* in, double* out) {
  fftw_plan p = detail::PlanCache::instance().r2r_plan(n, FFTW_RODFT00);
  fftw_execute_r2r(p, const_cast<double*>(in), out);
}

/// DCT-II on n points (FFTW REDFT10, unnormalized):
/// out_k = 2 sum_j in_j cos(pi (j+1/2) k / n).
inline void dct2(int n, const double* in, double* out) {
  fftw_plan p = detail::PlanCache::instance().r2r_plan(n, FFTW_REDFT10);
  fftw_execute_r2r(p, const_cast<double*>(in), out);
}

/// DCT-III on n points (FFTW REDFT01, unnormalized); inverse of dct2 up to 2n.
inline void dct3(int n, const double* in, double* out) {
  fftw_plan p = detail::PlanCache::instance().r2r_plan(n, FFTW_REDFT01);
  fftw_execute_r2r(p, const_cast<double*>(in), out);
}

/// Apply a real 1-d r2r transform to the real and imaginary parts of a
/// complex line.
template <void (*Transform)(int, const double*, double*)>
inline void complex_line(int n, const cplx* in, cplx* out) {
  std::vector<double> re(n), im(n), tre(n), tim(n);
  for (int i = 0; i < n; ++i) {
    re[i] = in[i].real();
    im[i] = in[i].imag();
  }
  Transform(n, re.data(), tre.data());
  Transform(n, im.data(), tim.data());
  for (int i = 0; i < n; ++i) out[i] = cplx(tre[i], tim[i]);
}

}  // namespace fft
}  // namespace halfspace

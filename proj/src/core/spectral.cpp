#include "spectral.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

namespace deepwave::detail {

namespace {

struct PlanCache {
  std::mutex mutex;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans;
  std::map<std::size_t, std::shared_ptr<const Spectrum>> pv_kernels;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

constexpr int kForward = 0;
constexpr int kBackward = 1;

fftw_plan plan_for(std::size_t n, int direction) {
  PlanCache& c = cache();
  std::lock_guard lock(c.mutex);
  auto it = c.plans.find({n, direction});
  if (it != c.plans.end()) return it->second;
  // FFTW_ESTIMATE does not touch the arrays, so temporary buffers suffice
  std::vector<double> r(n);
  std::vector<std::complex<double>> s(n / 2 + 1);
  auto* cs = reinterpret_cast<fftw_complex*>(s.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan p = direction == kForward ? fftw_plan_dft_r2c_1d(static_cast<int>(n), r.data(), cs, flags)
                                      : fftw_plan_dft_c2r_1d(static_cast<int>(n), cs, r.data(), flags);
  c.plans.emplace(std::make_pair(n, direction), p);
  return p;
}

std::shared_ptr<const Spectrum> pv_kernel(std::size_t n) {
  {
    std::lock_guard lock(cache().mutex);
    auto it = cache().pv_kernels.find(n);
    if (it != cache().pv_kernels.end()) return it->second;
  }
  const std::size_t m = 2 * n;
  std::vector<double> k(m, 0.0);
  for (std::size_t d = 1; d < n; d += 2) {
    const double c = 2.0 / (std::numbers::pi * static_cast<double>(d));
    k[d] = c;
    k[m - d] = -c;
  }
  auto spec = std::make_shared<const Spectrum>(rfft(k));
  std::lock_guard lock(cache().mutex);
  return cache().pv_kernels.emplace(n, spec).first->second;
}

}  // namespace

Spectrum rfft(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<double> in(v.begin(), v.end());
  Spectrum out(n / 2 + 1);
  fftw_execute_dft_r2c(plan_for(n, kForward), in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> irfft(Spectrum s, std::size_t n) {
  std::vector<double> out(n);
  fftw_execute_dft_c2r(plan_for(n, kBackward), reinterpret_cast<fftw_complex*>(s.data()), out.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& x : out) x *= scale;
  return out;
}

std::vector<double> pv_odd_even(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<double> padded(2 * n, 0.0);
  std::copy(v.begin(), v.end(), padded.begin());
  Spectrum s = rfft(padded);
  auto kernel = pv_kernel(n);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= (*kernel)[i];
  std::vector<double> full = irfft(std::move(s), 2 * n);
  full.resize(n);
  return full;
}

}  // namespace deepwave::detail

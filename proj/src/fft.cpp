#include "ncqm/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "ncqm/error.hpp"

namespace ncqm::fft {

namespace {

using Key = std::tuple<int, int, int, int>;  // kind, n1, n2, sign

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [k, p] : plans_) fftw_destroy_plan(p);
  }

  fftw_plan get(const Key& key) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    auto [kind, n1, n2, sign] = key;
    const std::size_t total = static_cast<std::size_t>(n1) * n2;
    fftw_complex* buf = fftw_alloc_complex(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = nullptr;
    if (kind == 0) {
      p = fftw_plan_dft_1d(n1, buf, buf, sign, flags);
    } else if (kind == 1) {
      p = fftw_plan_dft_2d(n1, n2, buf, buf, sign, flags);
    } else if (kind == 2) {  // along x1: n2 interleaved transforms of length n1
      int n[1] = {n1};
      p = fftw_plan_many_dft(1, n, n2, buf, nullptr, n2, 1, buf, nullptr, n2, 1, sign, flags);
    } else {  // along x2: n1 contiguous transforms of length n2
      int n[1] = {n2};
      p = fftw_plan_many_dft(1, n, n1, buf, nullptr, 1, n2, buf, nullptr, 1, n2, sign, flags);
    }
    fftw_free(buf);
    if (!p) throw DomainError("fft", "plan creation failed");
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

fftw_complex* raw(std::span<std::complex<double>> d) { return reinterpret_cast<fftw_complex*>(d.data()); }

}  // namespace

void transform_1d(std::span<std::complex<double>> data, int sign) {
  fftw_plan p = cache().get({0, static_cast<int>(data.size()), 1, sign});
  fftw_execute_dft(p, raw(data), raw(data));
}

void transform_2d(std::span<std::complex<double>> data, int n1, int n2, int sign) {
  fftw_plan p = cache().get({1, n1, n2, sign});
  fftw_execute_dft(p, raw(data), raw(data));
}

void transform_axis(std::span<std::complex<double>> data, int n1, int n2, int axis, int sign) {
  fftw_plan p = cache().get({axis == 0 ? 2 : 3, n1, n2, sign});
  fftw_execute_dft(p, raw(data), raw(data));
}

}  // namespace ncqm::fft

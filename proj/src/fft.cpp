#include "snls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace snls::fft {
namespace {

// FFTW planning is not thread safe; execution of an existing plan is.
// FFTW_ESTIMATE keeps the chosen algorithm, and hence the rounding, fixed
// from run to run.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.fwd);
      fftw_destroy_plan(p.bwd);
    }
  }

  const PlanPair& get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    auto* buf = fftw_alloc_complex(n);
    const int ni = static_cast<int>(n);
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(ni, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(ni, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    return plans_.emplace(n, p).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

fftw_complex* as_fftw(std::span<cplx> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

void forward(std::span<cplx> data) {
  const auto& p = cache().get(data.size());
  fftw_execute_dft(p.fwd, as_fftw(data), as_fftw(data));
}

void inverse(std::span<cplx> data) {
  const auto& p = cache().get(data.size());
  fftw_execute_dft(p.bwd, as_fftw(data), as_fftw(data));
}

void inverse_normalized(std::span<cplx> data) {
  inverse(data);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

}  // namespace snls::fft

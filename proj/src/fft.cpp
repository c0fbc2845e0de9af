#include "gsqg/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gsqg::fft {

namespace {

struct PlanPair {
  fftw_plan fwd_out = nullptr;
  fftw_plan bwd_out = nullptr;
  fftw_plan fwd_in = nullptr;
  fftw_plan bwd_in = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.fwd_out);
      fftw_destroy_plan(p.bwd_out);
      fftw_destroy_plan(p.fwd_in);
      fftw_destroy_plan(p.bwd_in);
    }
  }

  const PlanPair& get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<std::complex<double>> a(n), b(n);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = reinterpret_cast<fftw_complex*>(b.data());
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.fwd_out = fftw_plan_dft_1d(len, pa, pb, FFTW_FORWARD, flags);
    p.bwd_out = fftw_plan_dft_1d(len, pa, pb, FFTW_BACKWARD, flags);
    p.fwd_in = fftw_plan_dft_1d(len, pa, pa, FFTW_FORWARD, flags);
    p.bwd_in = fftw_plan_dft_1d(len, pa, pa, FFTW_BACKWARD, flags);
    return plans_.emplace(n, p).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out, bool forward) {
  if (in.size() != out.size() || in.empty())
    throw std::invalid_argument("fft: input and output lengths differ");
  const auto& p = cache().get(in.size());
  auto* pin = reinterpret_cast<fftw_complex*>(
      const_cast<std::complex<double>*>(in.data()));
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  const bool in_place = in.data() == out.data();
  fftw_plan plan = forward ? (in_place ? p.fwd_in : p.fwd_out)
                           : (in_place ? p.bwd_in : p.bwd_out);
  fftw_execute_dft(plan, pin, pout);
}

}  // namespace

void forward(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out) {
  execute(in, out, true);
}

void backward(std::span<const std::complex<double>> in,
              std::span<std::complex<double>> out) {
  execute(in, out, false);
}

}  // namespace gsqg::fft

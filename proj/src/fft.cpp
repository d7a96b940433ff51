#include "saddlemg/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "saddlemg/error.hpp"

namespace saddlemg::fft {

namespace {

// Planning in FFTW is not thread-safe, execution with the new-array interface
// is. Plans are unaligned, estimated (so results do not depend on timing), and
// live for the life of the process.
class PlanCache {
 public:
  fftw_plan get(int n, int sign, bool in_place) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(n, sign, in_place);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    fftw_complex* a = fftw_alloc_complex(static_cast<size_t>(n));
    fftw_complex* b = in_place ? a : fftw_alloc_complex(static_cast<size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, a, b, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    if (b != a) fftw_free(b);
    fftw_free(a);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void transform(std::span<const cplx> in, std::span<cplx> out, int sign) {
  if (in.size() != out.size()) throw SizeMismatch("fft: input and output lengths differ");
  if (in.empty()) return;
  const int n = static_cast<int>(out.size());
  const bool in_place = in.data() == out.data();
  // The plan preserves its input, so the const_cast never leads to a write.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(cache().get(n, sign, in_place), src, dst);
}

}  // namespace

// Positive exponent: bin j pairs with the eigenvector e^{-imθ_j} of C_n(f), eigenvalue f(θ_j).
void forward(std::span<const cplx> in, std::span<cplx> out) { transform(in, out, FFTW_BACKWARD); }

void inverse(std::span<const cplx> in, std::span<cplx> out) {
  transform(in, out, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
}

}  // namespace saddlemg::fft

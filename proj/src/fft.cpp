#include "hardy/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hardy/circlefft.hpp"
#include "hardy/errors.hpp"

namespace hardy::fft {
namespace {

// FFTW_ESTIMATE picks the same plan on every run, which keeps reports
// byte-stable; FFTW_UNALIGNED lets one plan serve any std::vector buffer.
// Planning is not thread-safe and is serialized here; fftw_execute_dft is.
fftw_plan GetPlan(std::size_t n, int sign) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({n, sign});
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> scratch(n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const fftw_plan plan =
      fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan == nullptr) throw NumericError("FFTW could not plan a transform of length " + std::to_string(n));
  cache.emplace(std::make_pair(n, sign), plan);
  return plan;
}

void Transform(std::span<std::complex<double>> data, int sign) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  if (!is_power_of_two(n)) throw ConfigurationError("FFT length must be a power of two");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(GetPlan(n, sign), buf, buf);
}

}  // namespace

void forward(std::span<std::complex<double>> data) { Transform(data, FFTW_FORWARD); }
void inverse(std::span<std::complex<double>> data) { Transform(data, FFTW_BACKWARD); }

}  // namespace hardy::fft

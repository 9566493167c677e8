// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include "fft.hpp"

#include <fftw3.h>
#include <omp.h>

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "ednse/spectral.hpp"

namespace ednse {

namespace {

std::atomic<int> g_threads{1};
std::mutex g_planner_mutex;

// In-place complex 3D FFT over an aligned buffer. FFTW_ESTIMATE keeps the
// chosen algorithm independent of timing, so results are reproducible.
class FftEngine {
 public:
  FftEngine(int n, int threads) : n_(n) {
    const std::size_t total = static_cast<std::size_t>(n) * n * n;
    buffer_ = fftw_alloc_complex(total);
    std::lock_guard lock(g_planner_mutex);
    static const bool threads_ready = fftw_init_threads() != 0;
    if (threads_ready) fftw_plan_with_nthreads(threads);
    forward_ = fftw_plan_dft_3d(n, n, n, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_3d(n, n, n, buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftEngine() {
    std::lock_guard lock(g_planner_mutex);
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buffer_);
  }
  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

  std::span<Complex> buffer() {
    return {reinterpret_cast<Complex*>(buffer_), static_cast<std::size_t>(n_) * n_ * n_};
  }
  void forward() { fftw_execute(forward_); }
  void backward() { fftw_execute(backward_); }

 private:
  int n_;
  fftw_complex* buffer_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

FftEngine& engine(int n) {
  thread_local std::map<std::pair<int, int>, std::unique_ptr<FftEngine>> cache;
  const int threads = g_threads.load();
  auto& slot = cache[{n, threads}];
  if (!slot) slot = std::make_unique<FftEngine>(n, threads);
  return *slot;
}

}  // namespace

void set_thread_count(int threads) {
  if (threads < 1) threads = 1;
  g_threads.store(threads);
  omp_set_num_threads(threads);
}

int thread_count() { return g_threads.load(); }

namespace detail {

void forward_real_pair(const GridSpec& grid, std::span<const double> a, std::span<const double> b,
                       std::span<Complex> out_a, std::span<Complex> out_b) {
  FftEngine& fft = engine(grid.n);
  auto buf = fft.buffer();
  const std::size_t total = grid.size();
  const bool pair = !b.empty();
  for (std::size_t i = 0; i < total; ++i) buf[i] = Complex(a[i], pair ? b[i] : 0.0);
  fft.forward();
  const double scale = 1.0 / static_cast<double>(total);
  if (!pair) {
    for (std::size_t i = 0; i < total; ++i) out_a[i] = buf[i] * scale;
    return;
  }
  const int n = grid.n;
#pragma omp parallel for schedule(static)
  for (int i0 = 0; i0 < n; ++i0) {
    const int r0 = grid.mirror(i0);
    for (int i1 = 0; i1 < n; ++i1) {
      const int r1 = grid.mirror(i1);
      for (int i2 = 0; i2 < n; ++i2) {
        const std::size_t idx = grid.flat(i0, i1, i2);
        const Complex z = buf[idx];
        const Complex zr = std::conj(buf[grid.flat(r0, r1, grid.mirror(i2))]);
        out_a[idx] = 0.5 * scale * (z + zr);
        out_b[idx] = Complex(0.0, -0.5 * scale) * (z - zr);
      }
    }
  }
}

void inverse_real_pair(const GridSpec& grid, std::span<const Complex> a, std::span<const Complex> b,
                       std::span<double> out_a, std::span<double> out_b) {
  FftEngine& fft = engine(grid.n);
  auto buf = fft.buffer();
  const std::size_t total = grid.size();
  const bool pair = !b.empty();
  if (pair) {
    for (std::size_t i = 0; i < total; ++i) buf[i] = a[i] + Complex(-b[i].imag(), b[i].real());
  } else {
    for (std::size_t i = 0; i < total; ++i) buf[i] = a[i];
  }
  fft.backward();
  for (std::size_t i = 0; i < total; ++i) out_a[i] = buf[i].real();
  if (pair) {
    for (std::size_t i = 0; i < total; ++i) out_b[i] = buf[i].imag();
  }
}

}  // namespace detail
}  // namespace ednse

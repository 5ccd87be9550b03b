// Thin FFTW wrapper for forward complex transforms in double or long double.

#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <new>
#include <type_traits>
#include <vector>

namespace blaschke::detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

template <class T>
struct fftw_api;

template <>
struct fftw_api<double> {
  using plan = fftw_plan;
  using cpx = fftw_complex;
  static void* malloc(std::size_t b) { return fftw_malloc(b); }
  static void free(void* p) { fftw_free(p); }
  static plan plan_1d(int m, cpx* in, cpx* out, int sign) { return fftw_plan_dft_1d(m, in, out, sign, FFTW_ESTIMATE); }
  static void execute(plan p) { fftw_execute(p); }
  static void destroy(plan p) { fftw_destroy_plan(p); }
};

template <>
struct fftw_api<long double> {
  using plan = fftwl_plan;
  using cpx = fftwl_complex;
  static void* malloc(std::size_t b) { return fftwl_malloc(b); }
  static void free(void* p) { fftwl_free(p); }
  static plan plan_1d(int m, cpx* in, cpx* out, int sign) { return fftwl_plan_dft_1d(m, in, out, sign, FFTW_ESTIMATE); }
  static void execute(plan p) { fftwl_execute(p); }
  static void destroy(plan p) { fftwl_destroy_plan(p); }
};

/// out[k] = sum_j in[j] exp(sign * 2 pi i j k / M), unnormalized.
template <class T>
std::vector<std::complex<T>> fft(const std::vector<std::complex<T>>& in, int sign = FFTW_FORWARD) {
  static_assert(std::is_same_v<T, double> || std::is_same_v<T, long double>);
  using api = fftw_api<T>;
  const std::size_t m = in.size();
  std::vector<std::complex<T>> result(m);
  if (m == 0) return result;
  auto* buf = static_cast<typename api::cpx*>(api::malloc(sizeof(typename api::cpx) * m));
  if (!buf) throw std::bad_alloc();
  typename api::plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = api::plan_1d(static_cast<int>(m), buf, buf, sign);
  }
  for (std::size_t i = 0; i < m; ++i) {
    buf[i][0] = in[i].real();
    buf[i][1] = in[i].imag();
  }
  api::execute(plan);
  for (std::size_t i = 0; i < m; ++i) result[i] = {buf[i][0], buf[i][1]};
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    api::destroy(plan);
  }
  api::free(buf);
  return result;
}

}  // namespace blaschke::detail

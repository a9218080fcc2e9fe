#include "kahler/parallel.hpp"

#include <limits>

#include <omp.h>

namespace kahler {
namespace {

int g_threads = 0;

double pairwise(const double* xs, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s += xs[i];
    }
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise(xs, half) + pairwise(xs + half, n - half);
}

} // namespace

void set_thread_count(int n) { g_threads = n > 0 ? n : 0; }

int thread_count() { return g_threads > 0 ? g_threads : omp_get_max_threads(); }

void for_each_index(std::size_t n, Execution exec, const std::function<void(std::size_t)>& f) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) {
      f(i);
    }
    return;
  }
  std::exception_ptr first_error;
  std::size_t first_index = std::numeric_limits<std::size_t>::max();
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count())
  for (long long i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(kahler_for_each_error)
      {
        if (static_cast<std::size_t>(i) < first_index) {
          first_index = static_cast<std::size_t>(i);
          first_error = std::current_exception();
        }
      }
    }
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

double pairwise_sum(std::span<const double> xs) { return pairwise(xs.data(), xs.size()); }

} // namespace kahler

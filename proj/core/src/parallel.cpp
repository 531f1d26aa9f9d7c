#include "cusped/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace cusped {

int worker_count() {
  if (const char* env = std::getenv("CUSPED_ZETA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(worker_count()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

template <class T>
T tree_sum(const T* p, std::size_t n) {
  if (n == 0) return T{};
  if (n <= 8) {
    T s = p[0];
    for (std::size_t i = 1; i < n; ++i) s += p[i];
    return s;
  }
  const std::size_t h = n / 2;
  return tree_sum(p, h) + tree_sum(p + h, n - h);
}

}  // namespace

double pairwise_sum(const std::vector<double>& v) { return tree_sum(v.data(), v.size()); }

std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v) {
  return tree_sum(v.data(), v.size());
}

}  // namespace cusped

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace cusped {

/// Worker count: CUSPED_ZETA_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
int worker_count();

/// Run fn(i) for i in [0, n) on up to worker_count() threads. The first
/// exception thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Pairwise tree sum; the result depends only on the order of `v`.
double pairwise_sum(const std::vector<double>& v);
std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v);

}  // namespace cusped

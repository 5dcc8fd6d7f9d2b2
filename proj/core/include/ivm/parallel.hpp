#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ivm {

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Work is striped by
/// index, so each fn(i) must depend only on i; callers write results into
/// slot i and reduce afterwards in index order. If several indices throw,
/// the exception from the lowest index is rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t count = std::min<std::size_t>(workers, n);
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::size_t> error_index(count, n);
  {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += count) {
          try {
            fn(i);
          } catch (...) {
            errors[w] = std::current_exception();
            error_index[w] = i;
            return;
          }
        }
      });
    }
  }
  std::size_t first = count;
  for (std::size_t w = 0; w < count; ++w)
    if (errors[w] && (first == count || error_index[w] < error_index[first])) first = w;
  if (first != count) std::rethrow_exception(errors[first]);
}

}  // namespace ivm

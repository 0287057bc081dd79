#pragma once

#include <cstddef>
#include <future>
#include <utility>

namespace frontlab {

/// Upper bound on worker threads: FRONTLAB_THREADS if set to a positive
/// integer, otherwise the hardware concurrency (at least 1).
std::size_t thread_limit();

/// Evaluates f() and g(), concurrently when more than one thread is allowed.
/// Exceptions propagate to the caller (f's first).
template <class F, class G>
auto run_pair(F&& f, G&& g) -> std::pair<decltype(f()), decltype(g())> {
  if (thread_limit() < 2) {
    auto a = f();
    auto b = g();
    return {std::move(a), std::move(b)};
  }
  auto fut = std::async(std::launch::async, std::forward<G>(g));
  auto a = f();
  auto b = fut.get();
  return {std::move(a), std::move(b)};
}

}  // namespace frontlab

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cgi {

/// Inclusive arithmetic range start, start + step, ..., <= stop.
struct SweepRange {
  double start;
  double stop;
  double step;

  std::vector<double> values() const {
    std::vector<double> out;
    if (!(step > 0.0) || stop < start) return out;
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
};

/*
  out[i] = fn(in[i]) on up to `threads` workers. Each slot is written by exactly
  one task, so results and their order do not depend on scheduling. The first
  exception thrown by any task is rethrown after all workers join.
*/
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& in, unsigned threads, Fn&& fn) {
  using Out = decltype(fn(in.front()));
  std::vector<Out> out(in.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(in.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (std::size_t i = next++; i < in.size(); i = next++) {
      try {
        out[i] = fn(in[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = in.size();
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace cgi

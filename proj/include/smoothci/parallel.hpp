#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace smoothci {

//! Runs body(i) for i in [0, count) on `workers` threads. Work is dealt
//! round-robin by index, so each i runs exactly once whatever the worker
//! count; callers write results into slot i and fold them afterwards in
//! index order. The first exception (lowest worker) is rethrown.
inline void parallel_for(std::size_t count,
                         unsigned workers,
                         const std::function<void(std::size_t)>& body)
{
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }
  const std::size_t nthreads = std::min<std::size_t>(workers, count);
  std::vector<std::exception_ptr> errors(nthreads);
  std::vector<std::thread> threads;
  threads.reserve(nthreads);
  for (std::size_t w = 0; w < nthreads; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += nthreads)
          body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads)
    t.join();
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
}

}  // namespace smoothci

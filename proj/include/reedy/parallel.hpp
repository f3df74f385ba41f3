#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <thread>
#include <type_traits>
#include <vector>

namespace reedy {

// Evaluates f(0), ..., f(n-1) on worker threads; results keep their index order.
template <class F>
auto parallel_map(std::size_t n, F f) -> std::vector<std::invoke_result_t<F, std::size_t>> {
  using R = std::invoke_result_t<F, std::size_t>;
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::vector<std::future<std::vector<R>>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [w, workers, n, &f] {
      std::vector<R> out;
      for (std::size_t i = w; i < n; i += workers) out.push_back(f(i));
      return out;
    }));
  std::vector<std::vector<R>> parts;
  for (auto& j : jobs) parts.push_back(j.get());
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::move(parts[i % workers][i / workers]));
  return out;
}

}  // namespace reedy

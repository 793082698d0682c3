#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace chipfire {

/// Worker count: explicit request, else CHIPFIRE_THREADS, else 1.
int resolve_workers(std::optional<int> requested);

/// Runs fn(0) .. fn(tasks - 1) on `workers` threads and returns the results
/// in task order, so the merged output does not depend on scheduling.
/// Workers pull the next task index from a shared counter. An exception in
/// a task becomes on_error(index, message) in that task's slot.
template <class Result, class Fn, class OnError>
std::vector<Result> run_parallel(std::size_t tasks, int workers, Fn&& fn, OnError&& on_error) {
  std::vector<std::optional<Result>> slots(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (const std::exception& err) {
        slots[i].emplace(on_error(i, std::string(err.what())));
      } catch (...) {
        slots[i].emplace(on_error(i, std::string("unknown exception")));
      }
    }
  };
  const auto count = static_cast<std::size_t>(workers < 1 ? 1 : workers);
  if (count == 1 || tasks <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (std::size_t k = 0; k < count; ++k) pool.emplace_back(worker);
  }
  std::vector<Result> out;
  out.reserve(tasks);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

}  // namespace chipfire

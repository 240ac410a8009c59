// Copyright 2026 The tsobs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef TSOBS_PARALLEL_HPP_
#define TSOBS_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace tsobs {

// Resolves a job count: explicit value if positive, else the
// TS_OBSERVER_JOBS environment variable, else hardware concurrency.
unsigned resolve_jobs(int requested);

// Computes make(i) for i in [0, n) on up to jobs threads and hands the
// results to consume(i, result) strictly in index order, one call at a time.
// The consumed sequence is therefore the same for every job count. The first
// exception thrown by make or consume is rethrown after all workers stop.
template <class Make, class Consume>
void ordered_parallel_for(std::size_t n, unsigned jobs, Make make,
                          Consume consume) {
  using Result = decltype(make(std::size_t{0}));
  jobs = std::max(
      1u, std::min<unsigned>(
              jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) consume(i, make(i));
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  std::map<std::size_t, Result> pending;
  std::size_t next_to_consume = 0;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        Result r = make(i);
        std::lock_guard<std::mutex> lock(mu);
        pending.emplace(i, std::move(r));
        while (!pending.empty() && pending.begin()->first == next_to_consume) {
          auto node = pending.extract(pending.begin());
          consume(node.key(), std::move(node.mapped()));
          ++next_to_consume;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace tsobs

#endif  // TSOBS_PARALLEL_HPP_

// Copyright 2026 The lpplab Authors.
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

#ifndef LPPLAB_SRC_TRIAL_POOL_HPP_
#define LPPLAB_SRC_TRIAL_POOL_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lpp::detail {

struct TrialOut {
  std::vector<double> values;
  std::uint64_t ties = 0;
};

// Runs f(0) .. f(count - 1) on up to `workers` threads. Output slot t always
// holds f(t), so the result does not depend on the number of workers. The
// first exception thrown by any trial is rethrown after all threads stop.
template <class F>
std::vector<TrialOut> run_trials(int count, int workers, F&& f) {
  std::vector<TrialOut> out(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    while (true) {
      const int t = next.fetch_add(1);
      if (t >= count) return;
      try {
        out[static_cast<std::size_t>(t)] = f(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  const int threads = std::min(workers, count);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace lpp::detail

#endif  // LPPLAB_SRC_TRIAL_POOL_HPP_

// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace sandprod
{
  /// Fixed-width fork-join pool. Work is split into one contiguous chunk per
  /// worker, so the partition (and therefore every reduction order built on
  /// worker indices) is a pure function of (n, worker_count) — runs repeat
  /// bit-identically for a fixed worker count.
  class ThreadPool
  {
  public:
    explicit ThreadPool(int workers)
      : count_(workers < 1 ? 1 : workers)
    {
      for (int w = 1; w < count_; ++w)
        threads_.emplace_back([this, w] { worker_loop(w); });
    }

    ~ThreadPool()
    {
      {
        std::lock_guard<std::mutex> lock(mutex_);
        stop_ = true;
        ++epoch_;
      }
      cv_.notify_all();
      for (auto& t : threads_)
        t.join();
    }

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    int worker_count() const { return count_; }

    /// fn(worker_index, begin, end) over [0, n), chunked contiguously.
    void parallel_range(std::size_t n,
                        const std::function<void(int, std::size_t, std::size_t)>& fn)
    {
      if (count_ == 1 || n == 0)
        {
          if (n > 0)
            fn(0, 0, n);
          return;
        }
      {
        std::lock_guard<std::mutex> lock(mutex_);
        job_  = &fn;
        n_    = n;
        pending_.store(count_ - 1, std::memory_order_relaxed);
        ++epoch_;
      }
      cv_.notify_all();
      run_chunk(0);
      while (pending_.load(std::memory_order_acquire) != 0)
        std::this_thread::yield();
    }

  private:
    void run_chunk(int w)
    {
      const std::size_t begin = n_ * static_cast<std::size_t>(w) /
                                static_cast<std::size_t>(count_);
      const std::size_t end = n_ * static_cast<std::size_t>(w + 1) /
                              static_cast<std::size_t>(count_);
      if (begin < end)
        (*job_)(w, begin, end);
    }

    void worker_loop(int w)
    {
      std::uint64_t seen = 0;
      for (;;)
        {
          {
            std::unique_lock<std::mutex> lock(mutex_);
            cv_.wait(lock, [&] { return epoch_ != seen; });
            seen = epoch_;
            if (stop_)
              return;
          }
          run_chunk(w);
          pending_.fetch_sub(1, std::memory_order_release);
        }
    }

    const int                 count_;
    std::vector<std::thread>  threads_;
    std::mutex                mutex_;
    std::condition_variable   cv_;
    std::uint64_t             epoch_ = 0;
    bool                      stop_  = false;
    const std::function<void(int, std::size_t, std::size_t)>* job_ = nullptr;
    std::size_t               n_ = 0;
    std::atomic<int>          pending_{0};
  };
} // namespace sandprod

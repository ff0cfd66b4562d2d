#include "gess/thread_pool.hpp"

#include <stdexcept>
#include <utility>

namespace gess {

WorkerPool::WorkerPool(int n_workers) : n_workers_(n_workers) {
    if (n_workers < 1) {
        throw std::invalid_argument("WorkerPool: need at least one worker");
    }
    threads_.reserve(static_cast<std::size_t>(n_workers - 1));
    for (int i = 0; i + 1 < n_workers; ++i) {
        threads_.emplace_back([this] { worker_loop(); });
    }
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard lock(mutex_);
        stop_ = true;
    }
    start_cv_.notify_all();
    for (auto& t : threads_) {
        t.join();
    }
}

void WorkerPool::drain(std::size_t n_items, const std::function<void(std::size_t)>& fn) {
    // Claim items until exhausted; after a failure keep claiming (so the
    // epoch still finishes) but stop doing work.
    for (;;) {
        const std::size_t i = next_item_.fetch_add(1, std::memory_order_relaxed);
        if (i >= n_items) {
            return;
        }
        if (failed_.load(std::memory_order_relaxed)) {
            continue;
        }
        try {
            fn(i);
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!error_) {
                error_ = std::current_exception();
            }
            failed_.store(true, std::memory_order_relaxed);
        }
    }
}

void WorkerPool::run(std::size_t n_items, const std::function<void(std::size_t)>& fn) {
    if (n_items == 0) {
        return;
    }
    if (threads_.empty()) {
        next_item_.store(0, std::memory_order_relaxed);
        failed_.store(false, std::memory_order_relaxed);
        error_ = nullptr;
        drain(n_items, fn);
        if (error_) {
            std::rethrow_exception(std::exchange(error_, nullptr));
        }
        return;
    }

    {
        std::lock_guard lock(mutex_);
        job_ = &fn;
        job_items_ = n_items;
        next_item_.store(0, std::memory_order_relaxed);
        failed_.store(false, std::memory_order_relaxed);
        error_ = nullptr;
        in_flight_ = threads_.size();
        ++job_epoch_;
    }
    start_cv_.notify_all();

    drain(n_items, fn); // the calling thread works too

    std::unique_lock lock(mutex_);
    done_cv_.wait(lock, [this] { return in_flight_ == 0; });
    job_ = nullptr;
    if (error_) {
        std::rethrow_exception(std::exchange(error_, nullptr));
    }
}

void WorkerPool::worker_loop() {
    std::uint64_t seen_epoch = 0;
    for (;;) {
        const std::function<void(std::size_t)>* job = nullptr;
        std::size_t n_items = 0;
        {
            std::unique_lock lock(mutex_);
            start_cv_.wait(lock, [&] { return stop_ || job_epoch_ != seen_epoch; });
            if (stop_) {
                return;
            }
            seen_epoch = job_epoch_;
            job = job_;
            n_items = job_items_;
        }
        drain(n_items, *job);
        {
            std::lock_guard lock(mutex_);
            if (--in_flight_ == 0) {
                done_cv_.notify_one();
            }
        }
    }
}

} // namespace gess

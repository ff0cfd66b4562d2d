#ifndef GESS_THREAD_POOL_HPP
#define GESS_THREAD_POOL_HPP

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gess {

/// Fork-join pool. run() blocks until every index in [0, n) has been
/// processed; items are claimed atomically, so the assignment of items to
/// threads is unspecified and callers must not depend on it. With one worker
/// everything runs inline on the calling thread.
class WorkerPool {
public:
    explicit WorkerPool(int n_workers);
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    int size() const { return n_workers_; }

    /// Runs fn(i) for i in [0, n_items). The first exception thrown by any
    /// item is rethrown here once the batch has drained.
    void run(std::size_t n_items, const std::function<void(std::size_t)>& fn);

private:
    void worker_loop();
    void drain(std::size_t n_items, const std::function<void(std::size_t)>& fn);

    int n_workers_;
    std::vector<std::thread> threads_;

    std::mutex mutex_;
    std::condition_variable start_cv_;
    std::condition_variable done_cv_;
    const std::function<void(std::size_t)>* job_ = nullptr;
    std::size_t job_items_ = 0;
    std::uint64_t job_epoch_ = 0;
    std::atomic<std::size_t> next_item_{0};
    std::atomic<bool> failed_{false};
    std::exception_ptr error_;
    std::size_t in_flight_ = 0;
    bool stop_ = false;
};

} // namespace gess

#endif

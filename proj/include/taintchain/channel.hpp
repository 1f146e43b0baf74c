#pragma once

#include <condition_variable>
#include <deque>
#include <mutex>
#include <utility>

namespace taintchain {

/// Unbounded multi-producer single-consumer FIFO channel.
template <typename T>
class Channel {
public:
    void send(T msg) {
        {
            std::lock_guard lock(mu_);
            queue_.push_back(std::move(msg));
        }
        cv_.notify_one();
    }

    T recv() {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] { return !queue_.empty(); });
        T msg = std::move(queue_.front());
        queue_.pop_front();
        return msg;
    }

private:
    std::mutex mu_;
    std::condition_variable cv_;
    std::deque<T> queue_;
};

}  // namespace taintchain

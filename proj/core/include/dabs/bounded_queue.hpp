#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <cstddef>
#include <deque>
#include <mutex>
#include <optional>

namespace dabs {

/// Wakes a thread that waits for "something changed" across several queues.
class Signal {
 public:
  void notify() {
    {
      std::lock_guard lock(mutex_);
      ++generation_;
    }
    cv_.notify_all();
  }

  std::uint64_t generation() const {
    std::lock_guard lock(mutex_);
    return generation_;
  }

  /// Blocks until the generation moves past `seen` or `deadline` passes.
  template <class Clock, class Duration>
  void wait_until(std::uint64_t seen, const std::chrono::time_point<Clock, Duration>& deadline) {
    std::unique_lock lock(mutex_);
    cv_.wait_until(lock, deadline, [&] { return generation_ != seen; });
  }

 private:
  mutable std::mutex mutex_;
  std::condition_variable cv_;
  std::uint64_t generation_ = 0;
};

/// Fixed-capacity FIFO between two threads. After close(), pushes fail and
/// pops return nullopt without draining what is left.
template <class T>
class BoundedQueue {
 public:
  explicit BoundedQueue(std::size_t capacity, Signal* on_change = nullptr)
      : capacity_(capacity), on_change_(on_change) {}

  /// Blocks while full. Returns false if the queue was closed.
  bool push(T item) {
    {
      std::unique_lock lock(mutex_);
      not_full_.wait(lock, [&] { return closed_ || items_.size() < capacity_; });
      if (closed_) return false;
      items_.push_back(std::move(item));
    }
    not_empty_.notify_one();
    if (on_change_) on_change_->notify();
    return true;
  }

  bool try_push(T item) {
    {
      std::lock_guard lock(mutex_);
      if (closed_ || items_.size() >= capacity_) return false;
      items_.push_back(std::move(item));
    }
    not_empty_.notify_one();
    if (on_change_) on_change_->notify();
    return true;
  }

  /// Enqueues ahead of everything else, ignoring capacity. For control
  /// messages that must not wait behind work items.
  bool push_front(T item) {
    {
      std::lock_guard lock(mutex_);
      if (closed_) return false;
      items_.push_front(std::move(item));
    }
    not_empty_.notify_one();
    if (on_change_) on_change_->notify();
    return true;
  }

  /// Blocks while empty. nullopt once closed.
  std::optional<T> pop() {
    std::optional<T> out;
    {
      std::unique_lock lock(mutex_);
      not_empty_.wait(lock, [&] { return closed_ || !items_.empty(); });
      if (closed_) return std::nullopt;
      out.emplace(std::move(items_.front()));
      items_.pop_front();
    }
    not_full_.notify_one();
    if (on_change_) on_change_->notify();
    return out;
  }

  std::optional<T> try_pop() {
    std::optional<T> out;
    {
      std::lock_guard lock(mutex_);
      if (closed_ || items_.empty()) return std::nullopt;
      out.emplace(std::move(items_.front()));
      items_.pop_front();
    }
    not_full_.notify_one();
    if (on_change_) on_change_->notify();
    return out;
  }

  void close() {
    {
      std::lock_guard lock(mutex_);
      closed_ = true;
    }
    not_empty_.notify_all();
    not_full_.notify_all();
    if (on_change_) on_change_->notify();
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return items_.size();
  }

  std::size_t capacity() const noexcept { return capacity_; }

  bool closed() const {
    std::lock_guard lock(mutex_);
    return closed_;
  }

 private:
  mutable std::mutex mutex_;
  std::condition_variable not_empty_;
  std::condition_variable not_full_;
  std::deque<T> items_;
  std::size_t capacity_;
  bool closed_ = false;
  Signal* on_change_;
};

}  // namespace dabs

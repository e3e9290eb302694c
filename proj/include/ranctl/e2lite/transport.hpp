#pragma once

#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "ranctl/e2lite/frame.hpp"

namespace ranctl::e2lite {

/// Unbounded blocking queue; pop() returns nullopt once closed and drained.
template <typename T>
class MessageQueue {
 public:
  void push(T value) {
    {
      std::lock_guard lock(mu_);
      items_.push_back(std::move(value));
    }
    cv_.notify_one();
  }

  std::optional<T> pop() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return closed_ || !items_.empty(); });
    return take();
  }

  std::optional<T> try_pop() {
    std::lock_guard lock(mu_);
    return take();
  }

  void close() {
    {
      std::lock_guard lock(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

 private:
  std::optional<T> take() {
    if (items_.empty()) return std::nullopt;
    T v = std::move(items_.front());
    items_.pop_front();
    return v;
  }

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<T> items_;
  bool closed_ = false;
};

/// Newline-delimited text over a stream file descriptor it owns.
class LineStream {
 public:
  explicit LineStream(int fd) : fd_(fd) {}
  ~LineStream();
  LineStream(const LineStream&) = delete;
  LineStream& operator=(const LineStream&) = delete;

  /// Appends '\n' if missing. Throws std::system_error on failure.
  void write_line(const std::string& line);
  /// nullopt at end of stream.
  std::optional<std::string> read_line();
  /// Half-closes the write side so the peer sees end of stream.
  void shutdown_write();

 private:
  int fd_;
  std::string buffer_;
};

/// Connected AF_UNIX stream pair.
std::pair<int, int> make_socket_pair();

class FrameChannel {
 public:
  explicit FrameChannel(int fd) : stream_(fd) {}
  void send(const Frame& frame) { stream_.write_line(encode_frame(frame)); }
  std::optional<Frame> receive();
  void shutdown_write() { stream_.shutdown_write(); }

 private:
  LineStream stream_;
};

}  // namespace ranctl::e2lite

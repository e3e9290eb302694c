#include "ranctl/e2lite/transport.hpp"

#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <system_error>

namespace ranctl::e2lite {

LineStream::~LineStream() {
  if (fd_ >= 0) ::close(fd_);
}

void LineStream::write_line(const std::string& line) {
  std::string data = line;
  if (data.empty() || data.back() != '\n') data.push_back('\n');
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::send(fd_, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::system_error(errno, std::generic_category(), "frame write");
    }
    off += static_cast<std::size_t>(n);
  }
}

std::optional<std::string> LineStream::read_line() {
  while (true) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    char chunk[4096];
    const ssize_t n = ::read(fd_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::system_error(errno, std::generic_category(), "frame read");
    }
    if (n == 0) {
      if (buffer_.empty()) return std::nullopt;
      std::string tail = std::move(buffer_);
      buffer_.clear();
      return tail;
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

void LineStream::shutdown_write() { ::shutdown(fd_, SHUT_WR); }

std::pair<int, int> make_socket_pair() {
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) {
    throw std::system_error(errno, std::generic_category(), "socketpair");
  }
  return {fds[0], fds[1]};
}

std::optional<Frame> FrameChannel::receive() {
  auto line = stream_.read_line();
  if (!line) return std::nullopt;
  return decode_frame(*line);
}

}  // namespace ranctl::e2lite

// Copyright 2026 The ELSA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "elsa/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <optional>

#include "elsa/errors.hpp"

namespace elsa {

namespace {

constexpr std::uint32_t kMaxFrame = 256u << 20;
constexpr long kCallTimeoutSeconds = 120;

class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

void write_all(int fd, const std::uint8_t* p, std::size_t n) {
  while (n > 0) {
    const ssize_t w = ::send(fd, p, n, MSG_NOSIGNAL);
    if (w < 0 && errno == EINTR) continue;
    require(w > 0, Errc::kTransport, std::string("send: ") + std::strerror(errno));
    p += w;
    n -= static_cast<std::size_t>(w);
  }
}

bool read_all(int fd, std::uint8_t* p, std::size_t n) {
  while (n > 0) {
    const ssize_t r = ::recv(fd, p, n, 0);
    if (r < 0 && errno == EINTR) continue;
    if (r == 0) return false;
    require(r > 0, Errc::kTransport, std::string("recv: ") + std::strerror(errno));
    p += r;
    n -= static_cast<std::size_t>(r);
  }
  return true;
}

void write_frame(int fd, const Bytes& payload) {
  require(payload.size() <= kMaxFrame, Errc::kTransport, "frame too large");
  Bytes header;
  put_be32(header, static_cast<std::uint32_t>(payload.size()));
  write_all(fd, header.data(), header.size());
  write_all(fd, payload.data(), payload.size());
}

std::optional<Bytes> read_frame(int fd) {
  std::uint8_t header[4];
  if (!read_all(fd, header, 4)) return std::nullopt;
  const std::uint32_t len = get_be32(header);
  require(len <= kMaxFrame, Errc::kTransport, "frame too large");
  Bytes payload(len);
  require(read_all(fd, payload.data(), len), Errc::kTransport, "connection closed mid-frame");
  return payload;
}

}  // namespace

Bytes RecordingTransport::call(const Bytes& request) {
  {
    std::lock_guard lock(mu_);
    requests_.push_back(request);
  }
  return inner_->call(request);
}

std::vector<Bytes> RecordingTransport::requests() const {
  std::lock_guard lock(mu_);
  return requests_;
}

TcpTransport::TcpTransport(std::string host, std::uint16_t port)
    : host_(std::move(host)), port_(port) {}

std::shared_ptr<TcpTransport> TcpTransport::from_url(const std::string& url) {
  const std::string prefix = "tcp://";
  require(url.starts_with(prefix), Errc::kConfig, "expected tcp://host:port, got " + url);
  const std::string rest = url.substr(prefix.size());
  const auto colon = rest.rfind(':');
  require(colon != std::string::npos && colon > 0, Errc::kConfig, "missing port in " + url);
  int port = 0;
  try {
    port = std::stoi(rest.substr(colon + 1));
  } catch (const std::exception&) {
    fail(Errc::kConfig, "bad port in " + url);
  }
  require(port > 0 && port < 65536, Errc::kConfig, "bad port in " + url);
  return std::make_shared<TcpTransport>(rest.substr(0, colon), static_cast<std::uint16_t>(port));
}

Bytes TcpTransport::call(const Bytes& request) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string port = std::to_string(port_);
  require(::getaddrinfo(host_.c_str(), port.c_str(), &hints, &res) == 0, Errc::kUnavailable,
          "cannot resolve " + host_);
  int fd = -1;
  for (addrinfo* a = res; a != nullptr; a = a->ai_next) {
    fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  require(fd >= 0, Errc::kUnavailable, "cannot connect to " + host_ + ":" + port);
  Fd sock(fd);
  timeval timeout{kCallTimeoutSeconds, 0};
  ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &timeout, sizeof(timeout));
  write_frame(sock.get(), request);
  auto response = read_frame(sock.get());
  require(response.has_value(), Errc::kTransport, "no response from " + host_ + ":" + port);
  return std::move(*response);
}

TcpServer::TcpServer(std::string bind_host, std::uint16_t port, Handler handler)
    : handler_(std::move(handler)) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  require(listen_fd_ >= 0, Errc::kTransport, "socket failed");
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, bind_host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    fail(Errc::kConfig, "bad bind address " + bind_host);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(listen_fd_, 16) != 0) {
    const std::string err = std::strerror(errno);
    ::close(listen_fd_);
    fail(Errc::kTransport, "bind/listen: " + err);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpServer::~TcpServer() {
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void TcpServer::run() {
  while (!stopping_) {
    pollfd pfd{listen_fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 100);
    if (ready <= 0) continue;
    const int client = ::accept(listen_fd_, nullptr, nullptr);
    if (client < 0) continue;
    Fd conn(client);
    timeval timeout{kCallTimeoutSeconds, 0};
    ::setsockopt(client, SOL_SOCKET, SO_RCVTIMEO, &timeout, sizeof(timeout));
    try {
      while (auto request = read_frame(conn.get())) write_frame(conn.get(), handler_(*request));
    } catch (const Error&) {
      // A broken connection only affects that client.
    }
  }
}

void TcpServer::stop() { stopping_ = true; }

}  // namespace elsa

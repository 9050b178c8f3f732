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

#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "elsa/bytes.hpp"

namespace elsa {

// Synchronous request/response channel.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual Bytes call(const Bytes& request) = 0;
};

using Handler = std::function<Bytes(const Bytes&)>;

// Calls the handler in-process.
class LoopbackTransport final : public Transport {
 public:
  explicit LoopbackTransport(Handler handler) : handler_(std::move(handler)) {}
  Bytes call(const Bytes& request) override { return handler_(request); }

 private:
  Handler handler_;
};

// Keeps a copy of every request passed to the inner transport.
class RecordingTransport final : public Transport {
 public:
  explicit RecordingTransport(std::shared_ptr<Transport> inner) : inner_(std::move(inner)) {}
  Bytes call(const Bytes& request) override;
  std::vector<Bytes> requests() const;

 private:
  std::shared_ptr<Transport> inner_;
  mutable std::mutex mu_;
  std::vector<Bytes> requests_;
};

// Frames are a 4-byte big-endian length followed by the payload. One
// connection per call.
class TcpTransport final : public Transport {
 public:
  TcpTransport(std::string host, std::uint16_t port);
  // Parses "tcp://host:port".
  static std::shared_ptr<TcpTransport> from_url(const std::string& url);
  Bytes call(const Bytes& request) override;

 private:
  std::string host_;
  std::uint16_t port_;
};

// Serves framed requests sequentially, so handlers see a single writer.
class TcpServer {
 public:
  // Port 0 picks a free port.
  TcpServer(std::string bind_host, std::uint16_t port, Handler handler);
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const { return port_; }
  // Blocks until stop().
  void run();
  void stop();

 private:
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  Handler handler_;
  std::atomic<bool> stopping_{false};
};

}  // namespace elsa

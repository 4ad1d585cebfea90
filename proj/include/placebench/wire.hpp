#pragma once

// Newline-delimited JSON model-client protocol over a local TCP socket.
// Requests: {"op":"detect|segment|inpaint","image":<base64 png>, ...};
// responses mirror the ModelClient types. One JSON object per line.

#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "placebench/datapipe.hpp"

namespace placebench {

std::string base64_encode(const std::vector<uint8_t>& data);
std::vector<uint8_t> base64_decode(const std::string& text);

// Client side of the wire: each call sends one request line and blocks for
// one response line. Safe for concurrent in-flight calls (serialized
// internally).
class SocketModelClient : public ModelClient {
 public:
  // address: "host:port"; throws std::runtime_error when unreachable
  explicit SocketModelClient(const std::string& address);
  ~SocketModelClient() override;

  std::vector<Detection> detect(const ImageRGB& image) override;
  std::vector<ScoredMask> segment(const ImageRGB& image, Pixel point) override;
  ImageRGB inpaint(const ImageRGB& image, const BinaryMask& mask) override;

 private:
  std::string roundtrip(const std::string& request_line);
  int fd_ = -1;
  std::mutex mutex_;
  std::string rx_buffer_;
};

// Serves a backend ModelClient over the wire protocol; used by tests and as a
// reference for external model processes.
class ModelClientServer {
 public:
  // port 0 binds an ephemeral port; see port()
  ModelClientServer(ModelClient& backend, int port = 0);
  ~ModelClientServer();

  int port() const { return port_; }
  void stop();

 private:
  void serve();
  void handle_connection(int fd);

  ModelClient& backend_;
  int listen_fd_ = -1;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace placebench

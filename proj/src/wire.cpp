#include "placebench/wire.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <stdexcept>

#include <json.hpp>

namespace placebench {

namespace {

const char kB64[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_value(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

}  // namespace

std::string base64_encode(const std::vector<uint8_t>& data) {
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  for (size_t i = 0; i < data.size(); i += 3) {
    uint32_t chunk = data[i] << 16;
    if (i + 1 < data.size()) chunk |= data[i + 1] << 8;
    if (i + 2 < data.size()) chunk |= data[i + 2];
    out.push_back(kB64[(chunk >> 18) & 63]);
    out.push_back(kB64[(chunk >> 12) & 63]);
    out.push_back(i + 1 < data.size() ? kB64[(chunk >> 6) & 63] : '=');
    out.push_back(i + 2 < data.size() ? kB64[chunk & 63] : '=');
  }
  return out;
}

std::vector<uint8_t> base64_decode(const std::string& text) {
  std::vector<uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  uint32_t chunk = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '=' || c == '\n' || c == '\r') continue;
    int v = b64_value(c);
    if (v < 0) throw std::invalid_argument("base64: invalid character");
    chunk = (chunk << 6) | static_cast<uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<uint8_t>((chunk >> bits) & 0xff));
    }
  }
  return out;
}

namespace {

nlohmann::ordered_json mask_json(const BinaryMask& mask) {
  return {{"w", mask.width()}, {"h", mask.height()}, {"rle", mask_to_rle(mask)}};
}

BinaryMask mask_from_json(const nlohmann::json& j) {
  return mask_from_rle(j.at("w").get<int>(), j.at("h").get<int>(),
                       j.at("rle").get<std::vector<int64_t>>());
}

std::string image_b64(const ImageRGB& image) {
  return base64_encode(encode_png(image));
}

ImageRGB image_from_b64(const std::string& b64) {
  return png_to_rgb(base64_decode(b64));
}

nlohmann::ordered_json detection_json(const Detection& d) {
  nlohmann::ordered_json j;
  j["category"] = d.category;
  j["bbox"] = {d.bbox.x_min, d.bbox.y_min, d.bbox.x_max, d.bbox.y_max};
  j["score"] = d.score;
  if (d.mask) j["mask"] = mask_json(*d.mask);
  return j;
}

Detection detection_from_json(const nlohmann::json& j) {
  Detection d;
  d.category = j.at("category").get<std::string>();
  d.bbox = BBox{j.at("bbox")[0].get<double>(), j.at("bbox")[1].get<double>(),
                j.at("bbox")[2].get<double>(), j.at("bbox")[3].get<double>(),
                BBox::Units::Pixel};
  d.score = j.at("score").get<double>();
  if (j.contains("mask")) d.mask = mask_from_json(j.at("mask"));
  return d;
}

void send_all(int fd, const std::string& data) {
  size_t sent = 0;
  while (sent < data.size()) {
    ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n <= 0) throw std::runtime_error("socket: send failed");
    sent += static_cast<size_t>(n);
  }
}

// Reads one newline-terminated line; buffer carries over between calls.
bool recv_line(int fd, std::string& buffer, std::string& line) {
  while (true) {
    size_t pos = buffer.find('\n');
    if (pos != std::string::npos) {
      line = buffer.substr(0, pos);
      buffer.erase(0, pos + 1);
      return true;
    }
    char chunk[4096];
    ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
    if (n <= 0) return false;
    buffer.append(chunk, static_cast<size_t>(n));
  }
}

}  // namespace

SocketModelClient::SocketModelClient(const std::string& address) {
  size_t colon = address.rfind(':');
  if (colon == std::string::npos)
    throw std::runtime_error("socket address must be host:port, got " + address);
  std::string host = address.substr(0, colon);
  int port = std::stoi(address.substr(colon + 1));
  if (host.empty() || host == "localhost") host = "127.0.0.1";

  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw std::runtime_error("socket: cannot create socket");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<uint16_t>(port));
  if (inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd_);
    throw std::runtime_error("socket: bad host " + host);
  }
  if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw std::runtime_error("socket: cannot connect to " + address);
  }
}

SocketModelClient::~SocketModelClient() {
  if (fd_ >= 0) ::close(fd_);
}

std::string SocketModelClient::roundtrip(const std::string& request_line) {
  std::lock_guard<std::mutex> lock(mutex_);
  send_all(fd_, request_line + "\n");
  std::string line;
  if (!recv_line(fd_, rx_buffer_, line))
    throw std::runtime_error("socket: connection closed by server");
  return line;
}

namespace {

nlohmann::json parse_response(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line);
  if (!j.value("ok", false))
    throw std::runtime_error("model client error: " +
                             j.value("error", std::string("unknown")));
  return j;
}

}  // namespace

std::vector<Detection> SocketModelClient::detect(const ImageRGB& image) {
  nlohmann::ordered_json req;
  req["op"] = "detect";
  req["image"] = image_b64(image);
  nlohmann::json resp = parse_response(roundtrip(req.dump()));
  std::vector<Detection> out;
  for (const auto& d : resp.at("detections")) out.push_back(detection_from_json(d));
  return out;
}

std::vector<ScoredMask> SocketModelClient::segment(const ImageRGB& image,
                                                   Pixel point) {
  nlohmann::ordered_json req;
  req["op"] = "segment";
  req["image"] = image_b64(image);
  req["point"] = {point.col, point.row};
  nlohmann::json resp = parse_response(roundtrip(req.dump()));
  std::vector<ScoredMask> out;
  for (const auto& m : resp.at("masks"))
    out.push_back({mask_from_json(m.at("mask")), m.at("score").get<double>()});
  return out;
}

ImageRGB SocketModelClient::inpaint(const ImageRGB& image, const BinaryMask& mask) {
  nlohmann::ordered_json req;
  req["op"] = "inpaint";
  req["image"] = image_b64(image);
  req["mask"] = mask_json(mask);
  nlohmann::json resp = parse_response(roundtrip(req.dump()));
  return image_from_b64(resp.at("image").get<std::string>());
}

ModelClientServer::ModelClientServer(ModelClient& backend, int port)
    : backend_(backend) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw std::runtime_error("server: cannot create socket");
  int yes = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(static_cast<uint16_t>(port));
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(listen_fd_, 4) != 0) {
    ::close(listen_fd_);
    throw std::runtime_error("server: cannot bind/listen");
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  thread_ = std::thread([this] { serve(); });
}

ModelClientServer::~ModelClientServer() { stop(); }

void ModelClientServer::stop() {
  if (listen_fd_ >= 0) {
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
  if (thread_.joinable()) thread_.join();
}

void ModelClientServer::serve() {
  while (true) {
    int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) return;  // listener closed
    handle_connection(fd);
    ::close(fd);
  }
}

void ModelClientServer::handle_connection(int fd) {
  std::string buffer, line;
  while (recv_line(fd, buffer, line)) {
    nlohmann::ordered_json resp;
    try {
      nlohmann::json req = nlohmann::json::parse(line);
      std::string op = req.at("op").get<std::string>();
      ImageRGB image = image_from_b64(req.at("image").get<std::string>());
      if (op == "detect") {
        resp["ok"] = true;
        resp["detections"] = nlohmann::ordered_json::array();
        for (const Detection& d : backend_.detect(image))
          resp["detections"].push_back(detection_json(d));
      } else if (op == "segment") {
        Pixel point{req.at("point")[1].get<int>(), req.at("point")[0].get<int>()};
        resp["ok"] = true;
        resp["masks"] = nlohmann::ordered_json::array();
        for (const ScoredMask& m : backend_.segment(image, point))
          resp["masks"].push_back({{"mask", mask_json(m.mask)}, {"score", m.score}});
      } else if (op == "inpaint") {
        ImageRGB result = backend_.inpaint(image, mask_from_json(req.at("mask")));
        resp["ok"] = true;
        resp["image"] = image_b64(result);
      } else {
        resp["ok"] = false;
        resp["error"] = "unknown op: " + op;
      }
    } catch (const std::exception& e) {
      resp = nlohmann::ordered_json{};
      resp["ok"] = false;
      resp["error"] = e.what();
    }
    try {
      send_all(fd, resp.dump() + "\n");
    } catch (const std::exception&) {
      return;
    }
  }
}

}  // namespace placebench

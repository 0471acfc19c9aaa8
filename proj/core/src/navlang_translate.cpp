// Copyright 2026 The IVLMap Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "ivlmap/navlang.hpp"

namespace ivlmap::navlang {

namespace {

class Socket {
 public:
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket() {
    if (fd_ >= 0) ::close(fd_);
  }
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

using Clock = std::chrono::steady_clock;

int remaining_ms(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return left.count() > 0 ? int(left.count()) : 0;
}

void wait_for(int fd, short events, Clock::time_point deadline) {
  pollfd p{fd, events, 0};
  for (;;) {
    const int rc = ::poll(&p, 1, remaining_ms(deadline));
    if (rc > 0) return;
    if (rc == 0) throw Error("translator timed out");
    if (errno != EINTR) throw Error(std::string("poll failed: ") + std::strerror(errno));
  }
}

std::string exchange(const std::string& request, const TranslatorEndpoint& ep) {
  const auto deadline = Clock::now() + ep.timeout;
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string port = std::to_string(ep.port);
  if (const int rc = ::getaddrinfo(ep.host.c_str(), port.c_str(), &hints, &res); rc != 0)
    throw Error("cannot resolve " + ep.host + ": " + ::gai_strerror(rc));
  Socket sock(::socket(res->ai_family, res->ai_socktype | SOCK_NONBLOCK, res->ai_protocol));
  if (sock.get() < 0) {
    ::freeaddrinfo(res);
    throw Error(std::string("socket: ") + std::strerror(errno));
  }
  const int rc = ::connect(sock.get(), res->ai_addr, res->ai_addrlen);
  ::freeaddrinfo(res);
  if (rc != 0) {
    if (errno != EINPROGRESS) throw Error(std::string("connect: ") + std::strerror(errno));
    wait_for(sock.get(), POLLOUT, deadline);
    int err = 0;
    socklen_t len = sizeof err;
    ::getsockopt(sock.get(), SOL_SOCKET, SO_ERROR, &err, &len);
    if (err != 0) throw Error(std::string("connect: ") + std::strerror(err));
  }
  std::size_t sent = 0;
  while (sent < request.size()) {
    wait_for(sock.get(), POLLOUT, deadline);
    const ssize_t n = ::send(sock.get(), request.data() + sent, request.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EAGAIN || errno == EINTR) continue;
      throw Error(std::string("send: ") + std::strerror(errno));
    }
    sent += std::size_t(n);
  }
  std::string reply;
  char buf[4096];
  for (;;) {
    if (auto pos = reply.find("\n\n"); pos != std::string::npos) {
      reply.resize(pos + 1);
      break;
    }
    wait_for(sock.get(), POLLIN, deadline);
    const ssize_t n = ::recv(sock.get(), buf, sizeof buf, 0);
    if (n < 0) {
      if (errno == EAGAIN || errno == EINTR) continue;
      throw Error(std::string("recv: ") + std::strerror(errno));
    }
    if (n == 0) break;
    reply.append(buf, std::size_t(n));
  }
  return reply;
}

}  // namespace

std::string translator_prompt() {
  std::string p =
      "Translate the user command into a navigation program for a mobile robot.\n"
      "Write one call per line. Bind results with `name = call(...)`.\n"
      "Loops are written `repeat N { ... }`; inside a loop `contour[i]` reads the\n"
      "i-th side length of a bound contour, cycling through its 4 sides.\n"
      "Ordinals are 1-based and 0 means the nearest instance. Use None for an\n"
      "unspecified color. Finish every visited goal with stop().\n"
      "Available calls:\n";
  for (const auto& f : function_library()) {
    p += "  " + std::string(f.name) + "(";
    for (std::size_t k = 0; k < f.params.size(); ++k) {
      if (k) p += ", ";
      if (int(k) >= f.required) p += "[";
      switch (f.params[k]) {
        case ParamKind::string: p += "text"; break;
        case ParamKind::number: p += "number"; break;
        case ParamKind::object: p += "object"; break;
        case ParamKind::position: p += "position"; break;
        case ParamKind::ordering: p += "ordering"; break;
      }
      if (int(k) >= f.required) p += "]";
    }
    p += ")";
    switch (f.returns) {
      case ValueKind::attr: p += " -> object"; break;
      case ValueKind::position: p += " -> position"; break;
      case ValueKind::contour: p += " -> contour"; break;
      case ValueKind::none: break;
    }
    p += "\n";
  }
  p +=
      "Example:\n"
      "  command: go to the second blue chair\n"
      "  obj = get_obj_attributes(\"chair\", 2, \"blue\")\n"
      "  move_to_object(obj)\n"
      "  stop()\n";
  return p;
}

std::string translator_request(std::string_view command) {
  std::string line(command);
  for (char& c : line)
    if (c == '\n' || c == '\r') c = ' ';
  return line + "\n\n" + translator_prompt() + "\n";
}

TranslationResult external_translate(std::string_view command, const TranslatorEndpoint& endpoint,
                                     const vocab::Vocabulary& categories,
                                     const vocab::Vocabulary& colors) {
  TranslationResult result;
  try {
    result.response = exchange(translator_request(command), endpoint);
    result.program = parse_program(result.response);
    if (result.program.statements.empty()) throw Error("translator returned an empty program");
    return result;
  } catch (const ParseError& e) {
    result.warnings.push_back(std::string("translation rejected: ") + e.what());
  } catch (const Error& e) {
    result.warnings.push_back(std::string("translator unavailable: ") + e.what());
  }
  auto extracted = extract_attributes(command, categories, colors);
  for (auto& w : extracted.warnings) result.warnings.push_back(std::move(w));
  result.program = visit_program(extracted.tuples);
  result.fallback = true;
  return result;
}

}  // namespace ivlmap::navlang

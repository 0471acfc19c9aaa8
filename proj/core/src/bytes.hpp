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

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivlmap/error.hpp"

namespace ivlmap::io::detail {

/// Little-endian append-only buffer.
class ByteWriter {
 public:
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void text(std::string_view s) {
    out_.insert(out_.end(), reinterpret_cast<const std::uint8_t*>(s.data()),
                reinterpret_cast<const std::uint8_t*>(s.data()) + s.size());
  }
  template <typename T>
  void le(T v) {
    using U = std::conditional_t<sizeof(T) == 1, std::uint8_t,
              std::conditional_t<sizeof(T) == 2, std::uint16_t,
              std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>>;
    U u = std::bit_cast<U>(v);
    for (std::size_t k = 0; k < sizeof(T); ++k) out_.push_back(std::uint8_t(u >> (8 * k)));
  }
  template <typename T>
  void le_all(const std::vector<T>& v) {
    out_.reserve(out_.size() + v.size() * sizeof(T));
    for (const T& x : v) le(x);
  }
  std::vector<std::uint8_t>& buffer() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

/// Bounds-checked little-endian reader; overruns raise FormatError.
class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> in, std::string context)
      : in_(in), context_(std::move(context)) {}

  std::span<const std::uint8_t> take(std::size_t n) {
    if (n > in_.size() - pos_) throw FormatError(context_ + ": unexpected end of data");
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  template <typename T>
  T le() {
    using U = std::conditional_t<sizeof(T) == 1, std::uint8_t,
              std::conditional_t<sizeof(T) == 2, std::uint16_t,
              std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>>;
    auto b = take(sizeof(T));
    U u = 0;
    for (std::size_t k = 0; k < sizeof(T); ++k) u |= U(U(b[k]) << (8 * k));
    return std::bit_cast<T>(u);
  }
  template <typename T>
  void le_all(std::vector<T>& v, std::size_t n) {
    if (n > (in_.size() - pos_) / sizeof(T)) throw FormatError(context_ + ": unexpected end of data");
    v.resize(n);
    for (auto& x : v) x = le<T>();
  }
  std::size_t remaining() const { return in_.size() - pos_; }
  const std::string& context() const { return context_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::string context_;
};

}  // namespace ivlmap::io::detail

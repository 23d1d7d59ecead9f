// Copyright 2026 The unraw Authors
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

#include "unraw/container.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>
#include <system_error>

#include "unraw/error.hpp"

namespace unraw {

namespace {

constexpr char kMagic[4] = {'U', 'R', 'A', 'W'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::span<const std::uint8_t> take(std::size_t n) {
    if (n > bytes_.size() - pos_) {
      throw Error(ErrorCode::kFormat, "container is truncated");
    }
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint32_t u32() {
    auto b = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }

  std::uint64_t u64() {
    auto b = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }

  bool done() const noexcept { return pos_ == bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_container(const Container& c) {
  const std::size_t n = c.block_size();
  if (n == 0) throw Error(ErrorCode::kArgument, "container geometry is empty");
  std::vector<std::uint8_t> out;
  out.reserve(32 + c.blocks.size() * n * 4 + 8 + c.sidecar.size());
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u32(out, Container::kVersion);
  put_u32(out, c.height);
  put_u32(out, c.width);
  put_u32(out, c.channels);
  put_u32(out, Container::kDtypeFloat32);
  put_u32(out, static_cast<std::uint32_t>(c.blocks.size()));
  for (const auto& block : c.blocks) {
    if (block.size() != n) {
      throw Error(ErrorCode::kArgument, "container block does not match its geometry");
    }
    for (float v : block) put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  put_u64(out, c.sidecar.size());
  out.insert(out.end(), c.sidecar.begin(), c.sidecar.end());
  return out;
}

Container decode_container(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  auto magic = r.take(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kFormat, "not a URAW container");
  }
  const auto version = r.u32();
  if (version != Container::kVersion) {
    throw Error(ErrorCode::kFormat, "unsupported container version " + std::to_string(version));
  }
  Container c;
  c.height = r.u32();
  c.width = r.u32();
  c.channels = r.u32();
  if (r.u32() != Container::kDtypeFloat32) {
    throw Error(ErrorCode::kFormat, "unsupported container sample type");
  }
  const auto count = r.u32();
  const std::size_t n = c.block_size();
  if (n == 0) throw Error(ErrorCode::kFormat, "container geometry is empty");
  for (std::uint32_t b = 0; b < count; ++b) {
    auto raw = r.take(n * 4);
    std::vector<float> block(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t v = 0;
      for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(raw[i * 4 + k]) << (8 * k);
      block[i] = std::bit_cast<float>(v);
    }
    c.blocks.push_back(std::move(block));
  }
  const auto length = r.u64();
  auto text = r.take(static_cast<std::size_t>(length));
  c.sidecar.assign(reinterpret_cast<const char*>(text.data()), text.size());
  if (!r.done()) throw Error(ErrorCode::kFormat, "trailing bytes after container sidecar");
  return c;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading " + path.string());
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIo, "error writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot move " + tmp.string() + ": " + ec.message());
}

void write_container(const std::filesystem::path& path, const Container& container) {
  write_file_bytes(path, encode_container(container));
}

Container read_container(const std::filesystem::path& path) {
  return decode_container(read_file_bytes(path));
}

}  // namespace unraw

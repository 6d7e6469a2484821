// Copyright 2026 The lexannot Authors.
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

#include "lexannot/zip_archive.h"

#include <zlib.h>

#include <limits>

#include "lexannot/error.h"

namespace lexannot::zip {

namespace {

constexpr uint32_t kLocalSig = 0x04034b50;
constexpr uint32_t kCentralSig = 0x02014b50;
constexpr uint32_t kEndSig = 0x06054b50;
constexpr size_t kLocalHeaderSize = 30;
constexpr size_t kCentralHeaderSize = 46;
constexpr size_t kEndSize = 22;
constexpr uint16_t kStored = 0;
constexpr uint16_t kDeflated = 8;
// 1980-01-01 00:00:00 in DOS format.
constexpr uint16_t kDosTime = 0;
constexpr uint16_t kDosDate = (1 << 5) | 1;

uint16_t get16(std::string_view d, size_t at) {
  if (at + 2 > d.size()) throw ZipError("truncated zip structure");
  return static_cast<uint16_t>(static_cast<uint8_t>(d[at]) |
                               static_cast<uint8_t>(d[at + 1]) << 8);
}

uint32_t get32(std::string_view d, size_t at) {
  return static_cast<uint32_t>(get16(d, at)) |
         static_cast<uint32_t>(get16(d, at + 2)) << 16;
}

void put16(std::string& out, uint16_t v) {
  out += static_cast<char>(v & 0xFF);
  out += static_cast<char>(v >> 8);
}

void put32(std::string& out, uint32_t v) {
  put16(out, static_cast<uint16_t>(v & 0xFFFF));
  put16(out, static_cast<uint16_t>(v >> 16));
}

uint32_t crc_of(std::string_view data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  return static_cast<uint32_t>(
      crc32(crc, reinterpret_cast<const Bytef*>(data.data()),
            static_cast<uInt>(data.size())));
}

std::string inflate_raw(std::string_view in, size_t expected) {
  std::string out(expected, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) throw ZipError("inflateInit failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const size_t produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected) {
    throw ZipError("corrupt deflate stream");
  }
  return out;
}

std::string deflate_raw(std::string_view in) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw ZipError("deflateInit failed");
  }
  std::string out(deflateBound(&zs, static_cast<uLong>(in.size())), '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw ZipError("deflate failed");
  return out;
}

}  // namespace

Reader::Reader(std::string_view data) : data_(data) {
  if (data_.size() < kEndSize) throw ZipError("not a zip archive");
  // The end record sits within the last 64 KiB + 22 bytes (comment length).
  size_t end = std::string_view::npos;
  const size_t lowest = data_.size() > kEndSize + 0xFFFF
                            ? data_.size() - kEndSize - 0xFFFF
                            : 0;
  for (size_t at = data_.size() - kEndSize + 1; at-- > lowest;) {
    if (get32(data_, at) == kEndSig) {
      end = at;
      break;
    }
  }
  if (end == std::string_view::npos) throw ZipError("no end of central directory");
  if (get16(data_, end + 4) != 0 || get16(data_, end + 6) != 0) {
    throw ZipError("multi-disk archives are not supported");
  }
  const uint16_t count = get16(data_, end + 10);
  const uint32_t cd_offset = get32(data_, end + 16);
  if (cd_offset == 0xFFFFFFFF || count == 0xFFFF) {
    throw ZipError("ZIP64 archives are not supported");
  }

  size_t at = cd_offset;
  for (uint16_t i = 0; i < count; ++i) {
    if (get32(data_, at) != kCentralSig) throw ZipError("bad central directory");
    Entry e;
    e.flags = get16(data_, at + 8);
    e.method = get16(data_, at + 10);
    e.crc = get32(data_, at + 16);
    e.compressed_size = get32(data_, at + 20);
    e.size = get32(data_, at + 24);
    const uint16_t name_len = get16(data_, at + 28);
    const uint16_t extra_len = get16(data_, at + 30);
    const uint16_t comment_len = get16(data_, at + 32);
    e.local_offset = get32(data_, at + 42);
    if (at + kCentralHeaderSize + name_len > data_.size()) {
      throw ZipError("truncated central directory");
    }
    e.name = std::string(data_.substr(at + kCentralHeaderSize, name_len));
    entries_.push_back(std::move(e));
    at += kCentralHeaderSize + name_len + extra_len + comment_len;
  }
}

std::vector<std::string> Reader::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

const Reader::Entry* Reader::find(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

bool Reader::contains(std::string_view name) const { return find(name) != nullptr; }

std::optional<std::string> Reader::read(std::string_view name) const {
  const Entry* e = find(name);
  if (e == nullptr) return std::nullopt;
  if (e->flags & 1) throw ZipError("encrypted entry " + e->name);
  if (get32(data_, e->local_offset) != kLocalSig) {
    throw ZipError("bad local header for " + e->name);
  }
  const size_t start = e->local_offset + kLocalHeaderSize +
                       get16(data_, e->local_offset + 26) +
                       get16(data_, e->local_offset + 28);
  if (start + e->compressed_size > data_.size()) {
    throw ZipError("truncated entry " + e->name);
  }
  const std::string_view raw = data_.substr(start, e->compressed_size);
  std::string out;
  if (e->method == kStored) {
    if (e->compressed_size != e->size) throw ZipError("bad stored size");
    out = std::string(raw);
  } else if (e->method == kDeflated) {
    out = inflate_raw(raw, e->size);
  } else {
    throw ZipError("unsupported compression method " + std::to_string(e->method));
  }
  if (crc_of(out) != e->crc) throw ZipError("CRC mismatch in " + e->name);
  return out;
}

void Writer::add(std::string_view name, std::string_view contents,
                 bool deflate) {
  if (finished_) throw ZipError("archive already finished");
  if (contents.size() > std::numeric_limits<uint32_t>::max() ||
      out_.size() > std::numeric_limits<uint32_t>::max()) {
    throw ZipError("entry too large");
  }
  const std::string packed = deflate ? deflate_raw(contents) : std::string();
  const std::string_view body = deflate ? std::string_view(packed) : contents;
  Central c{std::string(name), deflate ? kDeflated : kStored, crc_of(contents),
            static_cast<uint32_t>(body.size()),
            static_cast<uint32_t>(contents.size()),
            static_cast<uint32_t>(out_.size())};
  put32(out_, kLocalSig);
  put16(out_, 20);
  put16(out_, 0x0800);  // UTF-8 names
  put16(out_, c.method);
  put16(out_, kDosTime);
  put16(out_, kDosDate);
  put32(out_, c.crc);
  put32(out_, c.compressed_size);
  put32(out_, c.size);
  put16(out_, static_cast<uint16_t>(c.name.size()));
  put16(out_, 0);
  out_ += c.name;
  out_.append(body);
  central_.push_back(std::move(c));
}

std::string Writer::finish() {
  if (finished_) throw ZipError("archive already finished");
  finished_ = true;
  const uint32_t cd_offset = static_cast<uint32_t>(out_.size());
  for (const auto& c : central_) {
    put32(out_, kCentralSig);
    put16(out_, 20);
    put16(out_, 20);
    put16(out_, 0x0800);
    put16(out_, c.method);
    put16(out_, kDosTime);
    put16(out_, kDosDate);
    put32(out_, c.crc);
    put32(out_, c.compressed_size);
    put32(out_, c.size);
    put16(out_, static_cast<uint16_t>(c.name.size()));
    put16(out_, 0);
    put16(out_, 0);
    put16(out_, 0);
    put16(out_, 0);
    put32(out_, 0);
    put32(out_, c.local_offset);
    out_ += c.name;
  }
  const uint32_t cd_size = static_cast<uint32_t>(out_.size()) - cd_offset;
  put32(out_, kEndSig);
  put16(out_, 0);
  put16(out_, 0);
  put16(out_, static_cast<uint16_t>(central_.size()));
  put16(out_, static_cast<uint16_t>(central_.size()));
  put32(out_, cd_size);
  put32(out_, cd_offset);
  put16(out_, 0);
  return std::move(out_);
}

}  // namespace lexannot::zip

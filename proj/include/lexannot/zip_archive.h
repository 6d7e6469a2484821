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

#ifndef LEXANNOT_ZIP_ARCHIVE_H_
#define LEXANNOT_ZIP_ARCHIVE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexannot::zip {

// Read-only view of a zip archive held in memory. Supports stored and
// deflated entries; encrypted, multi-disk and ZIP64 archives are rejected
// with ZipError. The buffer must outlive the reader.
class Reader {
 public:
  explicit Reader(std::string_view data);

  std::vector<std::string> names() const;
  bool contains(std::string_view name) const;
  // Uncompressed entry contents, or nullopt if absent. Checks the CRC.
  std::optional<std::string> read(std::string_view name) const;

 private:
  struct Entry {
    std::string name;
    uint16_t method = 0;
    uint16_t flags = 0;
    uint32_t crc = 0;
    uint32_t compressed_size = 0;
    uint32_t size = 0;
    uint32_t local_offset = 0;
  };

  const Entry* find(std::string_view name) const;

  std::string_view data_;
  std::vector<Entry> entries_;
};

// Builds a zip archive in memory with a fixed timestamp so identical inputs
// give identical bytes.
class Writer {
 public:
  void add(std::string_view name, std::string_view contents,
           bool deflate = true);
  std::string finish();

 private:
  struct Central {
    std::string name;
    uint16_t method;
    uint32_t crc;
    uint32_t compressed_size;
    uint32_t size;
    uint32_t local_offset;
  };

  std::string out_;
  std::vector<Central> central_;
  bool finished_ = false;
};

}  // namespace lexannot::zip

#endif  // LEXANNOT_ZIP_ARCHIVE_H_

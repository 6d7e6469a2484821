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

#ifndef LEXANNOT_ERROR_H_
#define LEXANNOT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexannot {

// Base of every error raised by the library. The CLI maps any Error to exit
// code 1 (data/validation error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfBounds : public Error {
 public:
  using Error::Error;
};

class InvalidSpan : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class MalformedXml : public FormatError {
 public:
  MalformedXml(const std::string& what, size_t offset)
      : FormatError("malformed XML at byte " + std::to_string(offset) + ": " +
                    what),
        offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

class ZipError : public FormatError {
 public:
  using FormatError::FormatError;
};

class DuplicateCommentId : public Error {
 public:
  explicit DuplicateCommentId(const std::string& id)
      : Error("duplicate comment id " + id), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class UnpairedRange : public Error {
 public:
  explicit UnpairedRange(const std::string& id)
      : Error("unpaired comment range " + id), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class ParseError : public Error {
 public:
  ParseError(size_t position, const std::string& expected)
      : Error("parse error at " + std::to_string(position) + ": expected " +
              expected),
        position_(position),
        expected_(expected) {}
  size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  size_t position_;
  std::string expected_;
};

class MissingMeta : public Error {
 public:
  explicit MissingMeta(const std::string& field)
      : Error("missing metadata field " + field), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class BadRow : public FormatError {
 public:
  BadRow(size_t line_no, const std::string& why)
      : FormatError("bad row at line " + std::to_string(line_no) + ": " + why),
        line_no_(line_no) {}
  size_t line_no() const { return line_no_; }

 private:
  size_t line_no_;
};

class BadTag : public FormatError {
 public:
  BadTag(size_t line_no, const std::string& tag)
      : FormatError("bad tag '" + tag + "' at line " + std::to_string(line_no)),
        line_no_(line_no) {}
  size_t line_no() const { return line_no_; }

 private:
  size_t line_no_;
};

class AnnotatorMissing : public Error {
 public:
  AnnotatorMissing(const std::string& annotator, const std::string& doc_id)
      : Error("annotator " + annotator + " missing for document " + doc_id),
        doc_id_(doc_id) {}
  const std::string& doc_id() const { return doc_id_; }

 private:
  std::string doc_id_;
};

class TokenizationMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

class DegenerateMarginals : public Error {
 public:
  DegenerateMarginals()
      : Error("all ratings fall in one category but agreement is imperfect") {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ConfigNotFound : public ConfigError {
 public:
  explicit ConfigNotFound(const std::string& path)
      : ConfigError("config file not found: " + path) {}
};

class BadKey : public ConfigError {
 public:
  explicit BadKey(const std::string& name)
      : ConfigError("unknown config key '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class BadValue : public ConfigError {
 public:
  BadValue(const std::string& name, const std::string& why)
      : ConfigError("bad value for config key '" + name + "': " + why),
        name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace lexannot

#endif  // LEXANNOT_ERROR_H_

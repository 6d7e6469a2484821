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

#ifndef LEXANNOT_UNICODE_H_
#define LEXANNOT_UNICODE_H_

// UTF-8 <-> scalar-value conversion and the handful of character classes the
// parsers need. All document offsets in lexannot count Unicode scalar values.

#include <string>
#include <string_view>

namespace lexannot::unicode {

// Decodes UTF-8. Ill-formed sequences become U+FFFD; if `lossy` is given it
// is set to true when that happened.
std::u32string decode(std::string_view utf8, bool* lossy = nullptr);

std::string encode(std::u32string_view text);
void append(std::string& out, char32_t c);

// Number of scalar values in a UTF-8 string (ill-formed bytes count as one
// replacement character each, matching decode()).
size_t length(std::string_view utf8);

bool is_letter(char32_t c);
bool is_space(char32_t c);
bool is_punct(char32_t c);
inline bool is_ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
inline bool is_ascii_lower(char32_t c) { return c >= U'a' && c <= U'z'; }
inline bool is_ascii_upper(char32_t c) { return c >= U'A' && c <= U'Z'; }
char32_t to_lower(char32_t c);

// Word character as understood by Python's `re` \w: letters, digits, '_'.
bool is_word(char32_t c);

}  // namespace lexannot::unicode

#endif  // LEXANNOT_UNICODE_H_

/* Copyright 2026 The SMSMix Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SMSMIX_TEXT_HPP_
#define SMSMIX_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace smsmix {

// ASCII lowercase; bytes outside ASCII pass through unchanged.
std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s);

// Splits on runs of ASCII whitespace, dropping empty pieces.
std::vector<std::string> split_whitespace(std::string_view s);

// Splits on a single delimiter, keeping empty pieces. At most max_parts
// pieces are produced; the last one holds the remainder.
std::vector<std::string> split(std::string_view s, char delim,
                               std::size_t max_parts = std::string::npos);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Lowercased word tokens of a gloss with surrounding punctuation stripped.
std::vector<std::string> gloss_tokens(std::string_view gloss);

}  // namespace smsmix

#endif  // SMSMIX_TEXT_HPP_

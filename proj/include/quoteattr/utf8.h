// Copyright 2026 The quoteattr Authors.
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

// UTF-8 <-> code point conversion. All offsets in this library count code
// points of the novel text, never bytes.

#ifndef QUOTEATTR_UTF8_H_
#define QUOTEATTR_UTF8_H_

#include <string>
#include <string_view>

namespace quoteattr {

// Throws ParseError on malformed input.
std::u32string Utf8Decode(std::string_view text);
std::string Utf8Encode(std::u32string_view text);
std::string Utf8Encode(char32_t c);

// Number of code points; throws ParseError on malformed input.
std::size_t Utf8Length(std::string_view text);

bool IsWhitespace(char32_t c);
bool IsAsciiAlnum(char32_t c);
// Letters/digits for word-boundary purposes, including Latin-1 and Latin
// extended letters (accented names).
bool IsWordChar(char32_t c);
bool IsCjk(char32_t c);

// ASCII-only lowercase; other code points are unchanged.
std::u32string AsciiFold(std::u32string_view text);
std::string AsciiFold(std::string_view text);

}  // namespace quoteattr

#endif  // QUOTEATTR_UTF8_H_

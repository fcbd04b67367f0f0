// Copyright 2026 The contrastive-eval Authors
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

#ifndef CONTRASTIVE_TEXT_HPP_
#define CONTRASTIVE_TEXT_HPP_

#include <string>
#include <string_view>

namespace contrastive::text {

bool is_valid_utf8(std::string_view s);

/// Canonical composition (NFC). Input must be valid UTF-8.
std::string to_nfc(std::string_view s);

bool is_nfc(std::string_view s);

/// Strips ASCII whitespace from both ends.
std::string_view trim(std::string_view s);
std::string_view trim_right(std::string_view s);

}  // namespace contrastive::text

#endif  // CONTRASTIVE_TEXT_HPP_

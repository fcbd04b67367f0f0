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

#ifndef CONTRASTIVE_CONVERT_HPP_
#define CONTRASTIVE_CONVERT_HPP_

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "contrastive/corpus.hpp"
#include "contrastive/intent.hpp"

namespace contrastive {

/// Lenient label parsing for third-party releases: case, spaces, hyphens and
/// slashes are ignored, and the table spellings ("Yes/no Q", "Commands",
/// "Rhetorical C", ...) and short tags ("YN", "RC") are accepted.
std::optional<Intent> parse_intent_alias(std::string_view s);
/// Accepts the wire labels, English spellings ("how many") and the Hangul
/// particles.
std::optional<WhParticle> parse_wh_particle_alias(std::string_view s);

struct ConvertOptions {
  char delimiter = '\t';
  /// Corpus field name -> column header in the input. Fields not listed are
  /// looked up under their own name. utterance_id and transcription_id may be
  /// absent from the input, in which case they are derived ("u<row>" and
  /// "t<n>" in order of first appearance of the transcription text).
  std::map<std::string, std::string> columns;
};

/// Converts a delimited table with a header row (RFC 4180 quoting when the
/// delimiter is a comma) into a validated corpus.
Corpus convert_delimited(std::istream& in, const ConvertOptions& options);

}  // namespace contrastive

#endif  // CONTRASTIVE_CONVERT_HPP_

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

#include "support/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

namespace contrastive::testing {
namespace {

const char* const kTexts[] = {
    "누가 가입했대요", "뭐 먹었어요", "어디 갔어요", "언제 와요",
    "어떻게 했어요", "몇 개 샀어요", "누구 만났어요", "뭐 샀어",
};

std::string translation_for(Intent i, std::size_t t) {
  return std::string(label(i)) + " translation of transcription " + std::to_string(t);
}

}  // namespace

Corpus nuga_corpus() {
  const std::string tid = "t-nuga";
  const std::string text = "누가 가입했대요";
  std::vector<UtteranceRecord> u = {
      {"u-s", tid, "audio/u-s.wav", "F", Intent::kStatement, WhParticle::kWho,
       "I heard somebody is joining in."},
      {"u-yn", tid, "audio/u-yn.wav", "F", Intent::kYesNoQuestion,
       WhParticle::kWho, "Has somebody joined in?"},
      {"u-wh", tid, "audio/u-wh.wav", "F", Intent::kWhQuestion, WhParticle::kWho,
       "Who joined in?"},
  };
  return Corpus({{tid, text}}, std::move(u));
}

Corpus synthetic_corpus(std::uint64_t seed, std::size_t n_transcriptions) {
  std::mt19937_64 rng(seed);
  std::vector<Transcription> ts;
  std::vector<UtteranceRecord> us;
  std::vector<Intent> intents(kAllIntents.begin(), kAllIntents.end());
  for (std::size_t t = 0; t < n_transcriptions; ++t) {
    const std::string tid = "t" + std::to_string(t);
    ts.push_back({tid, std::string(kTexts[t % std::size(kTexts)]) + " " +
                           std::to_string(t)});
    std::size_t size = 1 + rng() % kMaxCandidatesPerSet;
    std::shuffle(intents.begin(), intents.end(), rng);
    // Guarantee every intent and particle appears in the first transcriptions.
    if (t < kNumIntents) {
      auto pos = std::find(intents.begin(), intents.end(), kAllIntents[t]);
      std::iter_swap(intents.begin(), pos);
    }
    const WhParticle particle =
        t < kNumWhParticles ? kAllWhParticles[t] : kAllWhParticles[rng() % kNumWhParticles];
    for (std::size_t k = 0; k < size; ++k) {
      UtteranceRecord u;
      u.utterance_id = "u" + std::to_string(t) + "-" + std::to_string(k);
      u.transcription_id = tid;
      u.speaker = (k % 2) ? "M" : "F";
      u.intent = intents[k];
      u.wh_particle = particle;
      u.gold_translation = translation_for(u.intent, t);
      us.push_back(std::move(u));
    }
  }
  return Corpus(std::move(ts), std::move(us));
}

Corpus corpus_with_group_sizes(const std::vector<std::size_t>& sizes,
                               const std::vector<Intent>& pool) {
  std::vector<Transcription> ts;
  std::vector<UtteranceRecord> us;
  for (std::size_t t = 0; t < sizes.size(); ++t) {
    const std::string tid = "g" + std::to_string(t);
    ts.push_back({tid, "누가 왔어요 " + std::to_string(t)});
    for (std::size_t k = 0; k < sizes[t]; ++k) {
      UtteranceRecord u;
      u.utterance_id = tid + "-" + std::to_string(k);
      u.transcription_id = tid;
      u.intent = pool[k];
      u.wh_particle = WhParticle::kWho;
      u.gold_translation = translation_for(u.intent, t);
      us.push_back(std::move(u));
    }
  }
  return Corpus(std::move(ts), std::move(us));
}

std::vector<ScoreRecord> mock_scores(const std::vector<ContrastiveSet>& sets,
                                     MockPolicy policy,
                                     const std::string& system_id,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logprob(-6.0, -0.01);
  std::vector<ScoreRecord> out;
  for (const ContrastiveSet& s : sets) {
    std::vector<const Candidate*> cands{&s.gold};
    for (const Candidate& c : s.alternatives) cands.push_back(&c);
    for (std::size_t k = 0; k < cands.size(); ++k) {
      ScoreRecord r;
      r.system_id = system_id;
      r.set_id = s.set_id;
      r.candidate_id = cands[k]->candidate_id;
      const std::size_t len = 2 + rng() % 8;
      if (policy == MockPolicy::kSeededRandom) {
        for (std::size_t i = 0; i < len; ++i) r.token_logprobs.push_back(logprob(rng));
      } else {
        // Alternatives sit 0.5 per step below (oracle) or above
        // (adversarial) the gold mean.
        const double gold = policy == MockPolicy::kOracle ? -0.5 : -3.5;
        const double step = policy == MockPolicy::kOracle ? -0.5 : 0.5;
        const double mean = gold + step * static_cast<double>(k);
        r.token_logprobs.assign(len, mean);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::string mock_score_file(const std::vector<ContrastiveSet>& sets,
                            MockPolicy policy, const std::string& system_id,
                            const std::string& kind, const std::string& model_size,
                            std::uint64_t seed) {
  nlohmann::ordered_json header;
  header["record_type"] = "header";
  header["system_id"] = system_id;
  nlohmann::ordered_json config;
  config["kind"] = kind;
  config["model_size"] = model_size;
  config["punctuation_mode"] = "as_is";
  header["config"] = config;
  std::ostringstream out;
  out << header.dump() << '\n';
  for (const ScoreRecord& r : mock_scores(sets, policy, system_id, seed))
    write_score_record(r, out);
  return out.str();
}

std::string serialize(const Corpus& corpus) {
  std::ostringstream out;
  serialize_corpus(corpus, out);
  return out.str();
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("contrastive-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace contrastive::testing

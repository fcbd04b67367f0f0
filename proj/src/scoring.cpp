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

#include "contrastive/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "contrastive/error.hpp"
#include "contrastive/text.hpp"
#include "json.hpp"

namespace contrastive {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kModule = "scoring";

[[noreturn]] void fail_at(std::size_t line, std::string_view field,
                          const std::string& what) {
  std::ostringstream msg;
  msg << "line " << line;
  if (!field.empty()) msg << ": field '" << field << "'";
  msg << ": " << what;
  throw Error(kModule, msg.str());
}

std::string required_string(const json& obj, const char* key,
                            std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end()) fail_at(line_no, key, "missing");
  if (!it->is_string()) fail_at(line_no, key, "expected a string");
  std::string v = it->get<std::string>();
  if (v.empty()) fail_at(line_no, key, "empty");
  return v;
}

ScoreRecord record_from_json(const json& obj, std::size_t line_no) {
  static const std::array<std::string_view, 6> kKnown = {
      "record_type", "system_id",      "set_id",
      "candidate_id", "token_logprobs", "token_texts"};
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::find(kKnown.begin(), kKnown.end(), it.key()) == kKnown.end())
      fail_at(line_no, it.key(), "unknown field");

  ScoreRecord r;
  r.system_id = required_string(obj, "system_id", line_no);
  r.set_id = required_string(obj, "set_id", line_no);
  r.candidate_id = required_string(obj, "candidate_id", line_no);

  auto lp = obj.find("token_logprobs");
  if (lp == obj.end()) fail_at(line_no, "token_logprobs", "missing");
  if (!lp->is_array()) fail_at(line_no, "token_logprobs", "expected an array");
  if (lp->empty()) fail_at(line_no, "token_logprobs", "empty");
  r.token_logprobs.reserve(lp->size());
  for (const json& v : *lp) {
    if (!v.is_number())
      fail_at(line_no, "token_logprobs", "element is not a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
      fail_at(line_no, "token_logprobs", "element is not finite");
    if (d > kLogprobSlack)
      fail_at(line_no, "token_logprobs",
              "log-probability " + std::to_string(d) + " exceeds 0");
    r.token_logprobs.push_back(d);
  }

  if (auto tt = obj.find("token_texts"); tt != obj.end() && !tt->is_null()) {
    if (!tt->is_array()) fail_at(line_no, "token_texts", "expected an array");
    std::vector<std::string> texts;
    for (const json& v : *tt) {
      if (!v.is_string()) fail_at(line_no, "token_texts", "element is not a string");
      texts.push_back(v.get<std::string>());
    }
    if (texts.size() != r.token_logprobs.size())
      fail_at(line_no, "token_texts", "length differs from token_logprobs");
    r.token_texts = std::move(texts);
  }
  return r;
}

}  // namespace

std::vector<std::string> ScoreFile::systems() const {
  std::vector<std::string> out;
  for (const ScoreRecord& r : records) out.push_back(r.system_id);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ScoreFile read_score_file(std::istream& in) {
  ScoreFile file;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      fail_at(line_no, {}, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) fail_at(line_no, {}, "record is not a JSON object");

    std::string type = "score";
    if (auto rt = obj.find("record_type"); rt != obj.end()) {
      if (!rt->is_string()) fail_at(line_no, "record_type", "expected a string");
      type = rt->get<std::string>();
    }
    if (type == "header") {
      std::string system;
      if (auto s = obj.find("system_id"); s != obj.end() && s->is_string())
        system = s->get<std::string>();
      if (!file.headers.emplace(system, obj.dump()).second)
        fail_at(line_no, {}, "second header for system '" + system + "'");
      continue;
    }
    if (type != "score")
      fail_at(line_no, "record_type", "unknown record type '" + type + "'");

    ScoreRecord r = record_from_json(obj, line_no);
    auto [it, inserted] =
        seen.try_emplace({r.system_id, r.set_id, r.candidate_id}, line_no);
    if (!inserted)
      fail_at(line_no, {},
              "duplicate record (" + r.system_id + ", " + r.set_id + ", " +
                  r.candidate_id + "), first seen on line " +
                  std::to_string(it->second));
    file.records.push_back(std::move(r));
  }
  if (in.bad()) throw Error(kModule, "read error");
  return file;
}

void write_score_record(const ScoreRecord& record, std::ostream& out) {
  ordered_json obj;
  obj["system_id"] = record.system_id;
  obj["set_id"] = record.set_id;
  obj["candidate_id"] = record.candidate_id;
  obj["token_logprobs"] = record.token_logprobs;
  if (record.token_texts) obj["token_texts"] = *record.token_texts;
  out << obj.dump() << '\n';
}

double normalized_score(std::span<const double> token_logprobs) {
  if (token_logprobs.empty())
    throw Error(kModule, "cannot score an empty token sequence");
  // Neumaier summation.
  double sum = 0.0;
  double comp = 0.0;
  for (double v : token_logprobs) {
    if (!std::isfinite(v)) throw Error(kModule, "non-finite token log-probability");
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return (sum + comp) / static_cast<double>(token_logprobs.size());
}

SystemScores::SystemScores(std::string system_id,
                           std::span<const ScoreRecord> records)
    : system_id_(std::move(system_id)) {
  for (const ScoreRecord& r : records) {
    if (r.system_id != system_id_) continue;
    auto& cands = by_set_[r.set_id];
    if (!cands.emplace(r.candidate_id, &r).second)
      throw Error(kModule, "duplicate record (" + system_id_ + ", " + r.set_id +
                               ", " + r.candidate_id + ")");
  }
}

const ScoreRecord* SystemScores::find(std::string_view set_id,
                                      std::string_view candidate_id) const {
  auto s = by_set_.find(set_id);
  if (s == by_set_.end()) return nullptr;
  auto c = s->second.find(candidate_id);
  return c == s->second.end() ? nullptr : c->second;
}

std::vector<std::string> SystemScores::candidates_of(
    std::string_view set_id) const {
  std::vector<std::string> out;
  if (auto s = by_set_.find(set_id); s != by_set_.end())
    for (const auto& [cand, rec] : s->second) out.push_back(cand);
  return out;
}

std::vector<std::string> SystemScores::set_ids() const {
  std::vector<std::string> out;
  for (const auto& [set, cands] : by_set_) out.push_back(set);
  return out;
}

namespace {

std::vector<const Candidate*> candidates(const ContrastiveSet& set) {
  std::vector<const Candidate*> out{&set.gold};
  for (const Candidate& c : set.alternatives) out.push_back(&c);
  return out;
}

// Lists "(set, candidate)" pairs without a record and records naming a
// candidate outside the set.
void collect_problems(const ContrastiveSet& set, const SystemScores& scores,
                      std::vector<std::string>& missing,
                      std::vector<std::string>& extra) {
  const auto cands = candidates(set);
  for (const Candidate* c : cands)
    if (scores.find(set.set_id, c->candidate_id) == nullptr)
      missing.push_back("(" + set.set_id + ", " + c->candidate_id + ")");
  for (const std::string& id : scores.candidates_of(set.set_id)) {
    const bool known = std::any_of(cands.begin(), cands.end(), [&](auto* c) {
      return c->candidate_id == id;
    });
    if (!known) extra.push_back("(" + set.set_id + ", " + id + ")");
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

SetOutcome evaluate_set(const ContrastiveSet& set, const SystemScores& scores,
                        const IntentPunctuationMap& map) {
  std::vector<std::string> missing, extra;
  collect_problems(set, scores, missing, extra);
  if (!missing.empty())
    throw Error(kModule, "system '" + scores.system_id() +
                             "': missing score records for " + join(missing));
  if (!extra.empty())
    throw Error(kModule, "system '" + scores.system_id() +
                             "': records for candidates not in the set: " +
                             join(extra));

  SetOutcome out;
  out.set_id = set.set_id;
  out.system_id = scores.system_id();
  out.gold_candidate_id = set.gold.candidate_id;
  out.gold_intent = set.gold.intent;
  out.ambiguity = classify_set(set, map);
  out.candidate_count = set.size();
  for (const Candidate* c : candidates(set)) {
    const ScoreRecord* r = scores.find(set.set_id, c->candidate_id);
    out.scores.push_back(
        {c->candidate_id, c->intent, normalized_score(r->token_logprobs)});
  }

  // Best alternative: highest score, smallest intent among equals.
  const CandidateScore* best_alt = nullptr;
  for (std::size_t i = 1; i < out.scores.size(); ++i) {
    const CandidateScore& c = out.scores[i];
    if (best_alt == nullptr || c.score > best_alt->score ||
        (c.score == best_alt->score && index(c.intent) < index(best_alt->intent)))
      best_alt = &c;
  }
  const CandidateScore& gold = out.scores.front();
  if (best_alt == nullptr || gold.score > best_alt->score) {
    out.predicted_candidate_id = gold.candidate_id;
    out.predicted_intent = gold.intent;
  } else {
    out.predicted_candidate_id = best_alt->candidate_id;
    out.predicted_intent = best_alt->intent;
  }
  out.correct = out.predicted_candidate_id == out.gold_candidate_id;
  return out;
}

std::vector<SetOutcome> evaluate_system(const std::vector<ContrastiveSet>& sets,
                                        const SystemScores& scores,
                                        const EvaluateOptions& options) {
  std::vector<const ContrastiveSet*> todo;
  std::vector<std::string> missing, extra;
  std::set<std::string, std::less<>> known_sets;
  for (const ContrastiveSet& s : sets) {
    known_sets.insert(s.set_id);
    if (options.skip_sets.contains(s.set_id)) continue;
    todo.push_back(&s);
    collect_problems(s, scores, missing, extra);
  }
  for (const std::string& id : scores.set_ids())
    if (!known_sets.contains(id))
      extra.push_back("(" + id + ", *): unknown set");
  if (!missing.empty())
    throw Error(kModule, "system '" + scores.system_id() + "': " +
                             std::to_string(missing.size()) +
                             " missing score record(s): " + join(missing));
  if (!extra.empty())
    throw Error(kModule, "system '" + scores.system_id() +
                             "': score records do not match the sets: " +
                             join(extra));

  std::vector<SetOutcome> outcomes(todo.size());
  const unsigned jobs =
      std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(todo.size())));
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      outcomes[i] = evaluate_set(*todo[i], scores, options.punct_map);
  };
  if (jobs <= 1) {
    work(0, todo.size());
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (todo.size() + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::size_t begin = j * chunk;
      const std::size_t end = std::min(todo.size(), begin + chunk);
      if (begin < end) workers.emplace_back(work, begin, end);
    }
  }
  std::sort(outcomes.begin(), outcomes.end(),
            [](const SetOutcome& a, const SetOutcome& b) {
              return a.set_id < b.set_id;
            });
  return outcomes;
}

void write_outcome(const SetOutcome& o, std::ostream& out) {
  ordered_json obj;
  obj["set_id"] = o.set_id;
  obj["system_id"] = o.system_id;
  obj["gold_candidate_id"] = o.gold_candidate_id;
  obj["predicted_candidate_id"] = o.predicted_candidate_id;
  obj["correct"] = o.correct;
  obj["gold_intent"] = label(o.gold_intent);
  obj["predicted_intent"] = label(o.predicted_intent);
  obj["ambiguity"] = label(o.ambiguity);
  obj["candidate_count"] = o.candidate_count;
  ordered_json scores = ordered_json::array();
  for (const CandidateScore& c : o.scores) {
    ordered_json s;
    s["candidate_id"] = c.candidate_id;
    s["intent"] = label(c.intent);
    s["score"] = c.score;
    scores.push_back(std::move(s));
  }
  obj["scores"] = std::move(scores);
  out << obj.dump() << '\n';
}

std::vector<SetOutcome> read_outcomes(std::istream& in) {
  std::vector<SetOutcome> out;
  std::string line;
  std::size_t line_no = 0;
  auto intent_of = [&](const json& v, const char* key) {
    const auto i = parse_intent(v.at(key).get<std::string>());
    if (!i) fail_at(line_no, key, "unknown intent");
    return *i;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      const json obj = json::parse(line);
      SetOutcome o;
      o.set_id = obj.at("set_id").get<std::string>();
      o.system_id = obj.at("system_id").get<std::string>();
      o.gold_candidate_id = obj.at("gold_candidate_id").get<std::string>();
      o.predicted_candidate_id = obj.at("predicted_candidate_id").get<std::string>();
      o.correct = obj.at("correct").get<bool>();
      o.gold_intent = intent_of(obj, "gold_intent");
      o.predicted_intent = intent_of(obj, "predicted_intent");
      const auto amb = obj.at("ambiguity").get<std::string>();
      if (amb != "ambiguous" && amb != "unambiguous")
        fail_at(line_no, "ambiguity", "unknown label '" + amb + "'");
      o.ambiguity = amb == "ambiguous" ? Ambiguity::kAmbiguous : Ambiguity::kUnambiguous;
      o.candidate_count = obj.at("candidate_count").get<std::size_t>();
      for (const json& s : obj.at("scores"))
        o.scores.push_back({s.at("candidate_id").get<std::string>(),
                            intent_of(s, "intent"), s.at("score").get<double>()});
      out.push_back(std::move(o));
    } catch (const json::exception& e) {
      fail_at(line_no, {}, std::string("malformed outcome: ") + e.what());
    }
  }
  return out;
}

}  // namespace contrastive

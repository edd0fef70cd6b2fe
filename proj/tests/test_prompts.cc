// Copyright 2026 The Neutrapipe Authors.
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

#include "doctest.h"
#include "neutrapipe/pipeline.h"
#include "neutrapipe/prompts.h"
#include "test_util.h"

namespace neutrapipe {
namespace {

using nlohmann::ordered_json;
using testing::DataPath;
using testing::GoldenPath;
using testing::ReadFixture;
using testing::WarningCapture;

PronounInstance At(const std::string &pmid, size_t offset,
                   const std::string &surface) {
  std::string lemma = Lowercase(surface);
  return {MakeInstanceId(pmid, offset), pmid, offset, surface, lemma,
          GenderOfLemma(lemma).value_or(Gender::kCompound)};
}

TEST_SUITE("prompts") {

TEST_CASE("highlight wraps exactly the pronoun") {
  std::string text = "to spend most of his time";
  CHECK(HighlightPronoun(text, At("1", 17, "his")) ==
        "to spend most of [START]his[END] time");
  CHECK(HighlightPronoun("He said so.", At("1", 0, "He")) ==
        "[START]He[END] said so.");
  CHECK(HighlightPronoun("Ødegaard and his staff", At("1", 13, "his")) ==
        "Ødegaard and [START]his[END] staff");
}

TEST_CASE("highlight rejects stale offsets") {
  CHECK_THROWS_AS(HighlightPronoun("He said so.", At("1", 1, "He")),
                  IntegrityError);
  CHECK_THROWS_AS(HighlightPronoun("He", At("1", 5, "He")), IntegrityError);
}

TEST_CASE("highlight is reversible and adds the marker lengths") {
  for (const Abstract &a : ReadFixture<Abstract>("corpus.jsonl")) {
    for (const PronounInstance &p : ScanAbstract(a, DefaultPronounLexicon())) {
      std::string h = HighlightPronoun(a.text, p);
      CHECK(CodePointLength(h) ==
            CodePointLength(a.text) + kStartMarker.size() + kEndMarker.size());
      std::string back = h;
      back.erase(back.find(kStartMarker), kStartMarker.size());
      back.erase(back.find(kEndMarker), kEndMarker.size());
      CHECK(back == a.text);
    }
  }
}

TEST_CASE("resolution template substitution") {
  Abstract a{"1", std::nullopt, "X he Y"};
  PromptPair p = BuildResolutionPrompt(At("1", 2, "he"), a, "B");
  CHECK(p.system_content ==
        "You are a helpful assistant with identifying the direct antecedent "
        "of a pronoun. Here is your antecedent_background knowledge: B");
  CHECK(p.user_content ==
        "Identify the direct antecedent of the pronoun marked with [START] "
        "and [END] in the following abstract: X [START]he[END] Y. Only "
        "answer with the antecedent.");
  CHECK(DetectQueryKind(p) == QueryKind::kResolution);
}

TEST_CASE("compound highlight depends on merging") {
  Abstract a = ReadFixture<Abstract>("rewrites/abstracts.jsonl")[1];
  std::vector<PronounInstance> raw = ScanAbstract(a, DefaultPronounLexicon());
  REQUIRE(raw.size() == 2);
  CHECK(BuildResolutionPrompt(raw[0], a, "B").user_content.find(
            "[START]he[END] or she") != std::string::npos);
  std::vector<PronounInstance> merged = DetectCompounds(a.text, raw);
  REQUIRE(merged.size() == 1);
  CHECK(BuildResolutionPrompt(merged[0], a, "B").user_content.find(
            "[START]he or she[END] should observe") != std::string::npos);
}

TEST_CASE("classification template") {
  Abstract a = ReadFixture<Abstract>("rewrites/abstracts.jsonl")[0];
  ResolvedInstance r{At("5598532", 90, "his"), "the surgeon", std::nullopt};
  PromptPair p = BuildClassificationPrompt(r, a, "R");
  CHECK(p.system_content ==
        "You are a helpful assistant following these classification rules R.");
  CHECK(p.user_content.find("the noun \"the surgeon\"") != std::string::npos);
  CHECK(p.user_content.find(a.text.substr(0, 40)) != std::string::npos);
  CHECK(DetectQueryKind(p) == QueryKind::kClassification);

  ResolvedInstance r2{At("834688", 70, "he or she"), "any physician",
                      std::nullopt};
  Abstract b = ReadFixture<Abstract>("rewrites/abstracts.jsonl")[1];
  std::string user = BuildClassificationPrompt(r2, b, "R").user_content;
  for (AntecedentLabel l : AllLabels()) {
    std::string quoted = "\"" + std::string(LabelName(l));
    CHECK((user.find(quoted + ",\"") != std::string::npos ||
           user.find(quoted + ".\"") != std::string::npos));
  }
  CHECK(user.find("Only output the label, no other text.") !=
        std::string::npos);
}

TEST_CASE("empty background or rules warns but still builds") {
  Abstract a{"1", std::nullopt, "X he Y"};
  WarningCapture w;
  PromptPair p = BuildResolutionPrompt(At("1", 2, "he"), a, "");
  CHECK(p.system_content.ends_with("knowledge: "));
  ResolvedInstance r{At("1", 2, "he"), "X", std::nullopt};
  PromptPair q = BuildClassificationPrompt(r, a, "");
  CHECK(q.system_content ==
        "You are a helpful assistant following these classification rules .");
  CHECK(w.messages.size() == 2);
}

TEST_CASE("rendered prompts match the golden file") {
  std::vector<Abstract> abstracts =
      ReadFixture<Abstract>("rewrites/abstracts.jsonl");
  auto index = IndexByPmid(abstracts);
  std::string background = ReadTextFile(DataPath("antecedent_background.txt"));
  std::string rules = ReadTextFile(DataPath("classification_rules.txt"));
  std::vector<PronounInstance> instances =
      MergeCompounds(ScanCorpus(abstracts, DefaultPronounLexicon()), index);
  std::map<std::string, PronounInstance> by_id;
  for (const PronounInstance &p : instances) by_id[p.instance_id] = p;

  std::ifstream in(GoldenPath("prompts.jsonl"));
  std::string line;
  size_t checked = 0;
  while (std::getline(in, line)) {
    ordered_json g = ordered_json::parse(line);
    const PronounInstance &p = by_id.at(g["instance_id"].get<std::string>());
    const Abstract &a = index.at(p.pmid);
    PromptPair rendered;
    if (g["kind"] == "resolution") {
      rendered = BuildResolutionPrompt(p, a, background);
    } else {
      ResolvedInstance r{p, g["antecedent_text"].get<std::string>(),
                         std::nullopt};
      rendered = BuildClassificationPrompt(r, a, rules);
    }
    CHECK(rendered.system_content == g["system_content"].get<std::string>());
    CHECK(rendered.user_content == g["user_content"].get<std::string>());
    ++checked;
  }
  CHECK(checked == 6);
}

TEST_CASE("prompt hash is SHA-256 of system, separator, user") {
  CHECK(PromptHash({"S", "U"}) ==
        "958aa2073625669a0129f2e2f5f535734ab7f7ea3a5325968d1e7f45dd4c9f5c");
  CHECK(PromptHash({"naïve", "[START]he[END]"}) ==
        "c1c7904d257ee3fb6d9c2975fb073ddf86d38d78c1ef682131fce9c78ec419f8");
  CHECK(PromptHash({"S", "U"}) != PromptHash({"SU", ""}));
}

TEST_CASE("resolution replies are trimmed of whitespace and quotes") {
  CHECK(CleanResolutionReply("  Dr. Mora ") == "Dr. Mora");
  CHECK(CleanResolutionReply("\"the surgeon\"\n") == "the surgeon");
  CHECK(CleanResolutionReply("“any physician”") == "any physician");
  CHECK(CleanResolutionReply("'the nurse'") == "the nurse");
  CHECK(CleanResolutionReply("   ") == "");
  CHECK(CleanResolutionReply("the nurse's") == "the nurse's");
}

TEST_CASE("label replies are normalized leniently") {
  CHECK(ParseLabelReply("occupation") == AntecedentLabel::kOccupation);
  CHECK(ParseLabelReply("Named Individual.") ==
        AntecedentLabel::kNamedIndividual);
  CHECK(ParseLabelReply(" \"Patient,\" ") ==
        AntecedentLabel::kPatientTrialParticipant);
  CHECK(ParseLabelReply("Trial participant") ==
        AntecedentLabel::kPatientTrialParticipant);
  CHECK(ParseLabelReply("AUTHOR") == AntecedentLabel::kAuthorOfAbstract);
  CHECK(ParseLabelReply("animal!") == AntecedentLabel::kAnimal);
  CHECK(ParseLabelReply("Other") == AntecedentLabel::kOther);
  CHECK(ParseLabelReply("Proper name") == AntecedentLabel::kNamedIndividual);
  CHECK_FALSE(ParseLabelReply("unsure").has_value());
  CHECK_FALSE(ParseLabelReply("").has_value());
  CHECK_FALSE(ParseLabelReply("occupation or patient").has_value());
}

}  // TEST_SUITE

}  // namespace
}  // namespace neutrapipe

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
#include "neutrapipe/scanner.h"
#include "test_util.h"

namespace neutrapipe {
namespace {

using testing::ReadFixture;

void CheckOffsetSound(const Abstract &abstract,
                      const std::vector<PronounInstance> &instances) {
  std::u32string text = DecodeUtf8(abstract.text);
  for (const PronounInstance &p : instances) {
    std::u32string surface = DecodeUtf8(p.surface);
    REQUIRE(p.offset + surface.size() <= text.size());
    CHECK(text.substr(p.offset, surface.size()) == surface);
    CHECK(IsWordBoundaryBefore(text, p.offset));
    CHECK(IsWordBoundaryAfter(text, p.offset + surface.size()));
    CHECK(p.instance_id == MakeInstanceId(p.pmid, p.offset));
    CHECK(p.lemma == Lowercase(p.surface));
  }
  for (size_t i = 1; i < instances.size(); ++i) {
    CHECK(instances[i - 1].offset < instances[i].offset);
  }
}

TEST_SUITE("scanner") {

TEST_CASE("reference sentence yields one masculine possessive instance") {
  Abstract a{"5598532", "1968-10-25",
             "Some compromise must be reached between the unwillingness of "
             "the surgeon to spend most of his time performing abortions and "
             "the freedom for women to have them."};
  std::vector<PronounInstance> found = ScanAbstract(a, DefaultPronounLexicon());
  REQUIRE(found.size() == 1);
  CHECK(found[0].surface == "his");
  CHECK(found[0].lemma == "his");
  CHECK(found[0].gender == Gender::kMasculine);
  CHECK(found[0].offset == 90);
  CHECK(found[0].instance_id == "5598532:90");
}

TEST_CASE("three pronouns give three instances") {
  Abstract a{"7", std::nullopt,
             "When he arrived, his colleague greeted him at the door."};
  std::vector<PronounInstance> found = ScanAbstract(a, DefaultPronounLexicon());
  REQUIRE(found.size() == 3);
  CHECK(found[0].offset != found[1].offset);
  CHECK(found[1].offset != found[2].offset);
  CHECK(found[0].lemma == "he");
  CHECK(found[1].lemma == "his");
  CHECK(found[2].lemma == "him");
}

TEST_CASE("no pronouns inside other words") {
  Abstract a{"8", std::nullopt, "The theory held."};
  CHECK(ScanAbstract(a, DefaultPronounLexicon()).empty());
}

TEST_CASE("gender from lemma") {
  CHECK(GenderOfLemma("himself") == Gender::kMasculine);
  CHECK(GenderOfLemma("hers") == Gender::kFeminine);
  CHECK(GenderOfLemma("his or her") == Gender::kCompound);
  CHECK_FALSE(GenderOfLemma("they").has_value());
}

TEST_CASE("corpus scan is additive") {
  std::vector<Abstract> corpus = {
      {"1", std::nullopt, "She left."},
      {"2", std::nullopt, "He said his piece."},
  };
  CHECK(ScanCorpus(corpus, DefaultPronounLexicon()).size() == 3);
  CHECK(ScanCorpus({}, DefaultPronounLexicon()).empty());
}

TEST_CASE("year range filter") {
  std::vector<Abstract> corpus = {
      {"7470698", "1981-05-21", "He was there."},
      {"5598532", "1968-10-25", "He was there."},
      {"9", std::nullopt, "He was there."},
      {"10", "1965-01-01", "He was there."},
      {"11", "1980-12-31", "He was there."},
  };
  YearRange range = ParseYearRange("1965-1980");
  std::vector<PronounInstance> found =
      ScanCorpus(corpus, DefaultPronounLexicon(), range);
  std::vector<std::string> pmids;
  for (const PronounInstance &p : found) pmids.push_back(p.pmid);
  CHECK(pmids == std::vector<std::string>{"5598532", "10", "11"});
  CHECK(ScanCorpus(corpus, DefaultPronounLexicon()).size() == 5);
}

TEST_CASE("year range parsing") {
  CHECK(ParseYearRange("1970").first == 1970);
  CHECK(ParseYearRange("1970").last == 1970);
  CHECK(ParseYearRange(" 1965 - 1980 ").last == 1980);
  CHECK_THROWS_AS(ParseYearRange("1980-1965"), ConfigError);
  CHECK_THROWS_AS(ParseYearRange("abc"), ConfigError);
  CHECK_THROWS_AS(ParseYearRange(""), ConfigError);
}

TEST_CASE("offset soundness over every fixture corpus") {
  for (const char *name : {"corpus.jsonl", "rewrites/abstracts.jsonl",
                           "mask/abstracts.jsonl"}) {
    CAPTURE(name);
    for (const Abstract &a : ReadFixture<Abstract>(name)) {
      std::vector<PronounInstance> found =
          ScanAbstract(a, DefaultPronounLexicon());
      CHECK(found.size() == DefaultPronounLexicon().Match(a.text).size());
      CheckOffsetSound(a, found);
    }
  }
}

TEST_CASE("fixture corpus instance count") {
  auto corpus = ReadFixture<Abstract>("corpus.jsonl");
  CHECK(ScanCorpus(corpus, DefaultPronounLexicon()).size() == 41);
}

TEST_CASE("scan is deterministic") {
  auto corpus = ReadFixture<Abstract>("corpus.jsonl");
  std::stringstream a, b;
  WriteRecords(ScanCorpus(corpus, DefaultPronounLexicon()), a);
  WriteRecords(ScanCorpus(corpus, DefaultPronounLexicon()), b);
  CHECK(a.str() == b.str());
}

}  // TEST_SUITE

}  // namespace
}  // namespace neutrapipe

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

#include <sstream>

#include "doctest.h"
#include "neutrapipe/lexicon.h"
#include "neutrapipe/metrics.h"
#include "test_util.h"

namespace neutrapipe {
namespace {

using testing::DataPath;
using testing::ReadFixture;

Lexicon FromText(const std::string &text) {
  std::istringstream in(text);
  return LoadLexicon(in, "test");
}

std::vector<std::string> Surfaces(const std::vector<TermMatch> &matches) {
  std::vector<std::string> out;
  for (const TermMatch &m : matches) out.push_back(m.surface);
  return out;
}

TEST_SUITE("lexicon") {

TEST_CASE("load marks case-sensitive entries") {
  Lexicon lex = FromText("nurse\nRN\tcs\n");
  REQUIRE(lex.size() == 2);
  CHECK(lex.entries()[0].term == "RN");
  CHECK(lex.entries()[0].case_sensitive);
  CHECK(lex.entries()[1].term == "nurse");
  CHECK_FALSE(lex.entries()[1].case_sensitive);
}

TEST_CASE("comments only is an empty lexicon") {
  try {
    FromText("# one\n# two\n\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError &e) {
    CHECK(std::string(e.what()).find("empty lexicon") != std::string::npos);
  }
}

TEST_CASE("duplicates collapse, case-insensitive terms are lowercased") {
  Lexicon lex = FromText("nurse\nnurse\nNurse\n  general   practitioner \n");
  REQUIRE(lex.size() == 2);
  CHECK(lex.entries()[0].term == "general practitioner");
  CHECK(lex.entries()[0].multiword);
  CHECK(lex.entries()[1].term == "nurse");
}

TEST_CASE("unknown flag is a configuration error") {
  CHECK_THROWS_AS(FromText("nurse\tci\n"), ConfigError);
}

TEST_CASE("missing lexicon file is a configuration error") {
  CHECK_THROWS_AS(LoadLexiconFile("/nonexistent/lexicon.txt", "x"),
                  ConfigError);
}

TEST_CASE("pronoun inside a word never matches") {
  std::vector<TermMatch> m = MatchTerms("therapy for her",
                                        DefaultPronounLexicon());
  REQUIRE(m.size() == 1);
  CHECK(m[0].surface == "her");
  CHECK(m[0].start == 12);
  CHECK(m[0].end == 15);
}

TEST_CASE("case-sensitive acronym does not match inside a word or lowercase") {
  Lexicon lex("occ", {{"surgeon", false}, {"RN", true}});
  std::vector<TermMatch> m = MatchTerms("the surgeon was born", lex);
  REQUIRE(m.size() == 1);
  CHECK(m[0].term == "surgeon");
  CHECK(MatchTerms("an rn on duty", lex).empty());
  CHECK(Surfaces(MatchTerms("an RN on duty", lex)) ==
        std::vector<std::string>{"RN"});
}

TEST_CASE("occupational and pronoun lexicons on a reference sentence") {
  const std::string text = "the surgeon to spend most of his time";
  Lexicon occ = LoadLexiconFile(DataPath("occupations.txt"), "occ");
  CHECK(Surfaces(MatchTerms(text, occ)) ==
        std::vector<std::string>{"surgeon"});
  CHECK(Surfaces(MatchTerms(text, DefaultPronounLexicon())) ==
        std::vector<std::string>{"his"});
}

TEST_CASE("case-insensitive entries match any casing") {
  CHECK(Surfaces(MatchTerms("HE and She and hIs", DefaultPronounLexicon())) ==
        std::vector<std::string>{"HE", "She", "hIs"});
}

TEST_CASE("multiword entries need single spaces") {
  Lexicon lex("occ", {{"general practitioner", false}});
  CHECK(MatchTerms("a General Practitioner", lex).size() == 1);
  CHECK(MatchTerms("a general  practitioner", lex).empty());
  CHECK(MatchTerms("a general\npractitioner", lex).empty());
}

TEST_CASE("hyphens, digits and apostrophes are boundaries") {
  Lexicon lex("occ", {{"nurse", false}});
  CHECK(MatchTerms("nurse-led", lex).size() == 1);
  CHECK(MatchTerms("2nurse", lex).size() == 1);
  CHECK(MatchTerms("nurse’s", lex).size() == 1);
  CHECK(MatchTerms("nurses", lex).empty());
  CHECK(MatchTerms("ｎurse", lex).empty());
  CHECK(MatchTerms("énurse", lex).empty());
}

TEST_CASE("offsets count code points") {
  std::vector<TermMatch> m =
      MatchTerms("Müller’s nurse said she", DefaultPronounLexicon());
  REQUIRE(m.size() == 1);
  CHECK(m[0].start == 20);
}

TEST_CASE("matches are left to right and non-overlapping per entry") {
  Lexicon lex("x", {{"aa", false}, {"nurse", false},
                     {"theatre nurse", false}});
  std::vector<TermMatch> m = MatchTerms("aa aa theatre nurse", lex);
  REQUIRE(m.size() == 4);
  CHECK(m[0].start == 0);
  CHECK(m[1].start == 3);
  CHECK(m[2].term == "theatre nurse");
  CHECK(m[3].term == "nurse");
  for (size_t i = 1; i < m.size(); ++i) CHECK(m[i - 1].start <= m[i].start);
}

TEST_CASE("contains_occupational_term") {
  Lexicon occ = LoadLexiconFile(DataPath("occupations.txt"), "occ");
  CHECK(ContainsOccupationalTerm("the surgeon", occ));
  CHECK_FALSE(ContainsOccupationalTerm("Dr. Mora", occ));
  CHECK_FALSE(ContainsOccupationalTerm("", occ));
  CHECK(ContainsOccupationalTerm("the RN", occ));
  CHECK_FALSE(ContainsOccupationalTerm("the rn", occ));
}

TEST_CASE("shipped lexicon has the top reference terms and acronyms") {
  Lexicon occ = LoadLexiconFile(DataPath("occupations.txt"), "occ");
  for (const char *term :
       {"physician", "surgeon", "doctor", "practitioner", "nurse"}) {
    CHECK_MESSAGE(ContainsOccupationalTerm(term, occ), term);
  }
  bool rn = false, md = false;
  for (const LexiconEntry &e : occ.entries()) {
    rn = rn || (e.term == "RN" && e.case_sensitive);
    md = md || (e.term == "MD" && e.case_sensitive);
  }
  CHECK(rn);
  CHECK(md);
}

TEST_CASE("shipped pronoun file equals the built-in set") {
  Lexicon file = LoadLexiconFile(DataPath("pronouns.txt"), "pronouns");
  CHECK(file.entries() == DefaultPronounLexicon().entries());
}

TEST_CASE("shipped lexicon recall on the gold fixture is 1.0") {
  Lexicon occ = LoadLexiconFile(DataPath("occupations.txt"), "occ");
  auto gold = ReadFixture<ClassifiedInstance>("occupation_gold.jsonl");
  RecallResult r = LexiconRecall(gold, occ);
  CHECK(r.relevant == 13);
  CHECK(r.retrieved == 13);
  CHECK(r.recall == 1.0);
}

}  // TEST_SUITE

}  // namespace
}  // namespace neutrapipe

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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "neutrapipe/cli.h"
#include "neutrapipe/errors.h"
#include "neutrapipe/lexicon.h"
#include "neutrapipe/metrics.h"
#include "neutrapipe/mlm_eval.h"
#include "neutrapipe/neutralizer.h"
#include "neutrapipe/prompts.h"
#include "neutrapipe/scanner.h"

namespace py = pybind11;
using nlohmann::ordered_json;

namespace neutrapipe {
namespace {

// Records cross the boundary as plain dicts in their JSONL wire form.
py::object ToPy(const ordered_json &j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

ordered_json FromPy(const py::handle &obj) {
  py::str text = py::module_::import("json").attr("dumps")(obj);
  return ordered_json::parse(std::string(text));
}

template <typename T>
T Record(const py::handle &obj) {
  return FromPy(obj).get<T>();
}

template <typename T>
std::vector<T> Records(const py::iterable &objs) {
  std::vector<T> out;
  for (py::handle h : objs) out.push_back(Record<T>(h));
  return out;
}

template <typename T>
py::list ToPyList(const std::vector<T> &records) {
  py::list out;
  for (const T &r : records) out.append(ToPy(ordered_json(r)));
  return out;
}

std::vector<AntecedentLabel> Labels(const std::vector<std::string> &names) {
  std::vector<AntecedentLabel> out;
  for (const std::string &n : names) out.push_back(ParseLabel(n));
  return out;
}

py::dict MatchDict(const TermMatch &m) {
  py::dict d;
  d["term"] = m.term;
  d["start"] = m.start;
  d["end"] = m.end;
  d["surface"] = m.surface;
  return d;
}

}  // namespace
}  // namespace neutrapipe

PYBIND11_MODULE(_core, m) {
  using namespace neutrapipe;
  m.doc() = "Gendered-pronoun detection, neutralization and evaluation.";

  static py::exception<Error> error(m, "Error");
  static py::exception<ConfigError> config_error(m, "ConfigError",
                                                 error.ptr());
  static py::exception<ArgumentError> argument_error(m, "ArgumentError",
                                                     error.ptr());
  static py::exception<IntegrityError> integrity_error(m, "IntegrityError",
                                                       error.ptr());
  static py::exception<OracleError> oracle_error(m, "OracleError",
                                                 error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError &e) {
      config_error(e.what());
    } catch (const ArgumentError &e) {
      argument_error(e.what());
    } catch (const IntegrityError &e) {
      integrity_error(e.what());
    } catch (const OracleError &e) {
      oracle_error(e.what());
    } catch (const Error &e) {
      error(e.what());
    } catch (const nlohmann::json::exception &e) {
      argument_error(e.what());
    }
  });

  py::class_<Lexicon>(m, "Lexicon")
      .def(py::init([](const std::string &name,
                       const std::vector<std::pair<std::string, bool>> &terms) {
             std::vector<LexiconEntry> entries;
             for (const auto &[term, cs] : terms) entries.push_back({term, cs});
             return Lexicon(name, entries);
           }),
           py::arg("name"), py::arg("terms"))
      .def_static("load", &LoadLexiconFile, py::arg("path"),
                  py::arg("name") = "lexicon")
      .def_static("pronouns", &DefaultPronounLexicon)
      .def_property_readonly("name", &Lexicon::name)
      .def("__len__", &Lexicon::size)
      .def(
          "match",
          [](const Lexicon &lex, const std::string &text) {
            py::list out;
            for (const TermMatch &t : lex.Match(std::string_view(text))) {
              out.append(MatchDict(t));
            }
            return out;
          },
          py::arg("text"));

  m.def(
      "scan_abstract",
      [](const py::dict &abstract, const Lexicon *pronouns) {
        Lexicon lex = pronouns ? *pronouns : DefaultPronounLexicon();
        return ToPyList(ScanAbstract(Record<Abstract>(abstract), lex));
      },
      py::arg("abstract"), py::arg("pronouns") = nullptr,
      "Gendered pronoun instances in one abstract record.");

  m.def(
      "neutralize_abstract",
      [](const py::dict &abstract, const py::iterable &classified,
         bool verb_agreement, bool gender_guard) {
        NeutralizeOptions options{verb_agreement, gender_guard};
        NeutralizeResult r = NeutralizeAbstract(
            Record<Abstract>(abstract),
            Records<ClassifiedInstance>(classified), options);
        return py::make_tuple(r.text, ToPyList(r.edits));
      },
      py::arg("abstract"), py::arg("classified"),
      py::arg("verb_agreement") = true, py::arg("gender_guard") = false,
      "Returns (new_text, edits).");

  m.def(
      "revert_edits",
      [](const std::string &text, const py::iterable &edits) {
        return RevertEdits(text, Records<EditRecord>(edits));
      },
      py::arg("text"), py::arg("edits"));

  m.def(
      "cohen_kappa",
      [](const std::vector<std::string> &a, const std::vector<std::string> &b) {
        return ToPy(ToJson(CohenKappa(Labels(a), Labels(b))));
      },
      py::arg("labels_a"), py::arg("labels_b"));

  m.def(
      "classification_metrics",
      [](const std::vector<std::string> &predicted,
         const std::vector<std::string> &gold) {
        return ToPy(
            ToJson(ClassificationMetrics(Labels(predicted), Labels(gold))));
      },
      py::arg("predicted"), py::arg("gold"));

  m.def(
      "prompt_hash",
      [](const std::string &system, const std::string &user) {
        return PromptHash({system, user});
      },
      py::arg("system_content"), py::arg("user_content"));

  m.def("split_sentences",
        py::overload_cast<std::string_view>(&SplitSentences), py::arg("text"));

  m.def(
      "candidates_for_role",
      [](const std::string &role) {
        CandidateSet c = CandidatesForRole(ParseRole(role));
        return py::make_tuple(c.masculine, c.feminine, c.inclusive);
      },
      py::arg("role"), "(masculine, feminine, inclusive) for a role name.");

  m.def(
      "run_masking_eval",
      [](const py::iterable &cases,
         const std::function<std::map<std::string, double>(py::dict)> &score,
         const std::string &model_name) {
        FunctionScorer scorer([&](const MaskTestCase &c) {
          return score(py::dict(ToPy(ordered_json(c))));
        });
        return ToPy(ordered_json(
            RunMaskingEval(Records<MaskTestCase>(cases), scorer, model_name)));
      },
      py::arg("cases"), py::arg("score"), py::arg("model_name"),
      "Scores cases with a callable taking a case dict and returning "
      "{candidate: score}.");

  m.def(
      "compare_models",
      [](const py::iterable &reports) {
        py::list out;
        for (const ComparisonRow &r :
             CompareModels(Records<EvalReport>(reports))) {
          py::dict d;
          d["model_name"] = r.model_name;
          d["inclusive_rate"] = r.inclusive_rate;
          d["n_cases"] = r.n_cases;
          out.append(d);
        }
        return out;
      },
      py::arg("reports"));

  m.def(
      "run_cli",
      [](const std::vector<std::string> &args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = RunCli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one CLI command; returns (code, stdout, stderr).");
}

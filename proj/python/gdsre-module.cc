// Copyright 2026 The gdsre Authors.
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

// Python bindings for corpus building, corpus files, gold sampling and
// metrics. Structured results cross the boundary as JSON-shaped dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gdsre/corpus.h"
#include "gdsre/error.h"
#include "gdsre/labeller.h"
#include "gdsre/metrics.h"
#include "gdsre/pipeline.h"

namespace py = pybind11;

namespace gdsre {
namespace {

py::object ToPython(const nlohmann::ordered_json &j) {
  // Intentionally leaked: must outlive interpreter finalization.
  static auto *loads = new py::object(py::module_::import("json").attr("loads"));
  return (*loads)(j.dump());
}

std::vector<Relation> Relations(const std::vector<std::string> &names) {
  std::vector<Relation> out;
  out.reserve(names.size());
  for (const auto &n : names) out.push_back(RelationFromName(n));
  return out;
}

Method MethodOrThrow(const std::string &name) {
  auto m = ParseMethod(name);
  if (!m) throw Error(ErrorCode::kInvalidArgument, "unknown method " + name, {name});
  return *m;
}

py::dict BuildSummary(const BuildResult &result) {
  py::dict out;
  py::list corpora;
  for (const Corpus &c : result.corpora) {
    py::dict d;
    d["method"] = std::string(MethodName(c.meta.method));
    d["instances"] = c.instances.size();
    d["config_digest"] = c.meta.config_digest;
    corpora.append(d);
  }
  out["corpora"] = corpora;
  out["written"] = result.written;
  out["report"] = ToPython(result.report);
  return out;
}

py::list InstancesToPython(const std::vector<RelationInstance> &instances) {
  py::list out;
  for (const auto &i : instances) out.append(ToPython(InstanceToJson(i)));
  return out;
}

}  // namespace
}  // namespace gdsre

PYBIND11_MODULE(gdsre, m) {
  using namespace gdsre;
  m.doc() = "Distantly supervised relation corpus builder";

  // Intentionally leaked: must outlive interpreter finalization.
  static auto *error_type = new py::exception<Error>(m, "GdsreError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error &e) {
      py::object exc = py::handle(error_type->ptr())(std::string(ErrorCodeName(e.code())), e.what(),
                                  py::cast(e.offending_ids()));
      exc.attr("code") = std::string(ErrorCodeName(e.code()));
      exc.attr("offending_ids") = py::cast(e.offending_ids());
      PyErr_SetObject(error_type->ptr(), exc.ptr());
    }
  });

  m.def(
      "run_build",
      [](const std::string &config_path, std::optional<std::string> output_dir,
         std::optional<int> workers, std::optional<uint64_t> seed,
         std::optional<std::string> build_timestamp) {
        PipelineConfig config = LoadPipelineConfig(config_path);
        if (output_dir) config.paths.output_dir = *output_dir;
        if (workers) config.workers = *workers;
        if (seed) config.seed = *seed;
        if (build_timestamp) config.build_timestamp = *build_timestamp;
        BuildResult result;
        {
          py::gil_scoped_release release;
          result = RunBuild(config);
        }
        return BuildSummary(result);
      },
      py::arg("config_path"), py::arg("output_dir") = py::none(), py::arg("workers") = py::none(),
      py::arg("seed") = py::none(), py::arg("build_timestamp") = py::none(),
      "Builds the configured corpora and returns the written files and stage counters.");

  m.def(
      "read_corpus",
      [](const std::string &path) {
        Corpus c = ReadCorpus(path);
        py::dict out;
        out["meta"] = py::dict(py::arg("language") = c.meta.language,
                               py::arg("method") = std::string(MethodName(c.meta.method)),
                               py::arg("build_timestamp") = c.meta.build_timestamp,
                               py::arg("config_digest") = c.meta.config_digest,
                               py::arg("seed") = c.meta.seed);
        out["instances"] = InstancesToPython(c.instances);
        return out;
      },
      py::arg("path"), "Reads a corpus file (JSON lines or TSV by extension).");

  m.def(
      "corpus_stats",
      [](const std::vector<std::string> &paths) {
        std::vector<std::pair<std::string, StatsTable>> columns;
        for (const auto &p : paths) {
          Corpus c = ReadCorpus(p);
          columns.emplace_back(c.meta.language + " " + std::string(MethodName(c.meta.method)),
                               ComputeStats(c));
        }
        return ToPython(StatsToJson(columns));
      },
      py::arg("paths"), "Per-relation counts for each corpus file.");

  m.def(
      "sample_gold",
      [](const std::string &normal_path, const std::string &skip_path, int n_per_relation,
         uint64_t seed, std::optional<std::string> out_path) {
        GoldSample sample =
            SampleGold(ReadCorpus(normal_path), ReadCorpus(skip_path), n_per_relation, seed);
        if (out_path) WriteGoldSample(sample, *out_path);
        py::list shortfalls;
        for (const Shortfall &s : sample.shortfalls) {
          shortfalls.append(py::dict(py::arg("relation") = std::string(RelationName(s.relation)),
                                     py::arg("method") = std::string(MethodName(s.method)),
                                     py::arg("requested") = s.requested,
                                     py::arg("available") = s.available));
        }
        py::dict out;
        out["items"] = InstancesToPython(sample.items);
        out["shortfalls"] = shortfalls;
        return out;
      },
      py::arg("normal_path"), py::arg("skip_path"), py::arg("n_per_relation") = 100,
      py::arg("seed") = 0, py::arg("out_path") = py::none(),
      "Draws the stratified gold annotation sample.");

  m.def(
      "prf_report",
      [](const std::vector<std::string> &gold, const std::vector<std::string> &pred) {
        return ToPython(ReportToJson(PrfReport(Relations(gold), Relations(pred))));
      },
      py::arg("gold"), py::arg("pred"), "Per-class, macro and weighted precision/recall/F1.");

  m.def(
      "cohens_kappa",
      [](const std::vector<std::string> &a, const std::vector<std::string> &b) {
        return CohensKappa(Relations(a), Relations(b));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "evaluate_predictions",
      [](const std::string &predictions_path, const std::string &gold_path) {
        return ToPython(
            ReportToJson(EvaluatePredictions(ReadPredictions(predictions_path),
                                             ReadPredictions(gold_path))));
      },
      py::arg("predictions_path"), py::arg("gold_path"));

  m.def(
      "insert_markers",
      [](const std::string &text, std::pair<std::size_t, std::size_t> e1,
         std::pair<std::size_t, std::size_t> e2) {
        return InsertMarkers(text, {e1.first, e1.second}, {e2.first, e2.second});
      },
      py::arg("text"), py::arg("e1"), py::arg("e2"), "Spans are byte offsets [start, end).");

  m.def("strip_markers", [](const std::string &marked) { return StripMarkers(marked); },
        py::arg("marked_text"));

  m.def(
      "parse_marked_text",
      [](const std::string &marked) {
        UnmarkedSentence s = ParseMarkedText(marked);
        return py::make_tuple(s.text, py::make_tuple(s.e1.start, s.e1.end),
                              py::make_tuple(s.e2.start, s.e2.end));
      },
      py::arg("marked_text"));

  m.def(
      "instance_id",
      [](int64_t article_id, int sentence_index, std::pair<std::size_t, std::size_t> e1,
         std::pair<std::size_t, std::size_t> e2, const std::string &label,
         const std::string &method) {
        return ComputeInstanceId(article_id, sentence_index, {e1.first, e1.second},
                                 {e2.first, e2.second}, RelationFromName(label),
                                 MethodOrThrow(method));
      },
      py::arg("article_id"), py::arg("sentence_index"), py::arg("e1"), py::arg("e2"),
      py::arg("label"), py::arg("method"));

  m.attr("relations") = [] {
    std::vector<std::string> names;
    for (Relation r : kAllRelations) names.emplace_back(RelationName(r));
    return names;
  }();
}

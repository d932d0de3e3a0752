/* Copyright 2026 The seqbatch Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "seqbatch/batchify.h"
#include "seqbatch/cli.h"
#include "seqbatch/core.h"
#include "seqbatch/datasets.h"
#include "seqbatch/errors.h"
#include "seqbatch/loader.h"
#include "seqbatch/sampler.h"
#include "seqbatch/zoo.h"

namespace py = pybind11;
using namespace seqbatch;

namespace {

Dataset MakeDataset(std::vector<VarSeq> tokens,
                    std::optional<std::vector<double>> labels) {
  if (labels.has_value() && labels->size() != tokens.size()) {
    throw InvalidArgumentError("labels and tokens differ in length");
  }
  Schema schema{FieldSchema::VarSeqField()};
  if (labels.has_value()) schema.push_back(FieldSchema::FixedField());
  std::vector<Sample> samples;
  samples.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Sample s;
    s.fields.emplace_back(std::move(tokens[i]));
    if (labels.has_value()) s.fields.emplace_back(Fixed::Scalar((*labels)[i]));
    samples.push_back(std::move(s));
  }
  return Dataset(std::move(schema), std::move(samples));
}

py::object FieldToPython(const FieldValue& value) {
  if (const auto* seq = std::get_if<VarSeq>(&value)) return py::cast(*seq);
  const Fixed& fixed = std::get<Fixed>(value);
  if (fixed.shape.empty()) return py::float_(fixed.values.front());
  py::array_t<double> out(fixed.shape);
  std::copy(fixed.values.begin(), fixed.values.end(), out.mutable_data());
  return out;
}

py::tuple SampleToPython(const Sample& sample) {
  py::tuple out(sample.fields.size());
  for (std::size_t k = 0; k < sample.fields.size(); ++k) {
    out[k] = FieldToPython(sample.fields[k]);
  }
  return out;
}

py::array_t<TokenId> PaddedValues(const PaddedBlock& block) {
  py::array_t<TokenId> out({block.rows, block.padded_len});
  std::copy(block.values.begin(), block.values.end(), out.mutable_data());
  return out;
}

py::array_t<double> StackedValues(const StackedBlock& block) {
  py::array_t<double> out(block.shape);
  std::copy(block.values.begin(), block.values.end(), out.mutable_data());
  return out;
}

py::list BatchToPython(const Batch& batch) {
  py::list out;
  for (const Block& block : batch.fields) {
    if (const auto* padded = std::get_if<PaddedBlock>(&block)) {
      out.append(py::make_tuple(PaddedValues(*padded), padded->valid_lengths));
    } else {
      out.append(StackedValues(std::get<StackedBlock>(block)));
    }
  }
  return out;
}

ParetoQuery MakeQuery(std::optional<std::string> task,
                      std::optional<std::string> source,
                      std::optional<std::string> metric) {
  ParetoQuery query;
  query.task = std::move(task);
  query.metric = std::move(metric);
  if (source.has_value()) query.source = ParseRecordSource(*source);
  return query;
}

}  // namespace

PYBIND11_MODULE(_seqbatch, m) {
  m.doc() = "Bucketed batching, deterministic loading and model zoo queries";

  // Translators registered later are tried first, so subclasses follow the
  // base class.
  auto& error = py::register_exception<Error>(m, "Error");
  py::register_exception<SchemaError>(m, "SchemaError", error.ptr());
  py::register_exception<IntegrityError>(m, "IntegrityError", error.ptr());
  py::register_exception<NotFoundError>(m, "NotFoundError", error.ptr());
  py::register_exception<DataError>(m, "DataError", error.ptr());
  py::register_exception<IncompleteRecordError>(m, "IncompleteRecordError",
                                                error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgumentError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<Dataset>(m, "Dataset")
      .def(py::init(&MakeDataset), py::arg("tokens"),
           py::arg("labels") = py::none())
      .def("__len__", &Dataset::size)
      .def("__getitem__",
           [](const Dataset& d, std::size_t i) { return SampleToPython(d.at(i)); })
      .def_property_readonly("schema", [](const Dataset& d) {
        return ToString(d.schema());
      });

  py::class_<LengthStats>(m, "LengthStats")
      .def(py::init(&LengthStats::FromLengths), py::arg("lengths"))
      .def_readonly("lengths", &LengthStats::lengths)
      .def_readonly("min_length", &LengthStats::min_length)
      .def_readonly("max_length", &LengthStats::max_length)
      .def_readonly("histogram", &LengthStats::histogram)
      .def("__len__", &LengthStats::size);

  m.def("compute_lengths", &ComputeLengths, py::arg("dataset"),
        py::arg("key_field") = 0);

  py::class_<PaddedBlock>(m, "PaddedBlock")
      .def_property_readonly("values", &PaddedValues)
      .def_readonly("valid_lengths", &PaddedBlock::valid_lengths)
      .def_readonly("pad_value", &PaddedBlock::pad_value)
      .def("pad_count", &PaddedBlock::pad_count)
      .def("depad", &Depad);

  m.def(
      "pad",
      [](const std::vector<VarSeq>& rows, TokenId pad_value,
         std::optional<std::size_t> round_to) {
        return Pad(rows, PadSpec{pad_value, round_to});
      },
      py::arg("sequences"), py::arg("pad_value") = 0,
      py::arg("round_to") = py::none());

  py::class_<BucketSpec>(m, "BucketSpec")
      .def_property_readonly("buckets",
                             [](const BucketSpec& s) {
                               std::vector<std::pair<std::size_t, std::size_t>>
                                   out;
                               for (const Bucket& b : s.buckets) {
                                 out.emplace_back(b.low, b.high);
                               }
                               return out;
                             })
      .def_property_readonly(
          "scheme", [](const BucketSpec& s) { return ToString(s.scheme); })
      .def("__len__", &BucketSpec::num_buckets);

  m.def(
      "make_buckets",
      [](const LengthStats& stats, std::size_t num_buckets,
         const std::string& scheme) {
        return MakeBuckets(stats, num_buckets, ParseBucketScheme(scheme));
      },
      py::arg("stats"), py::arg("num_buckets"),
      py::arg("scheme") = "constant");

  py::class_<EpochPlan>(m, "EpochPlan")
      .def_readonly("batches", &EpochPlan::batches)
      .def_readonly("seed", &EpochPlan::seed)
      .def_readonly("drop_last", &EpochPlan::drop_last)
      .def("serialize", &SerializePlan)
      .def("__len__", [](const EpochPlan& p) { return p.batches.size(); });

  m.def("plan_fixed_bucket", &PlanFixedBucket, py::arg("stats"),
        py::arg("spec"), py::arg("batch_size"), py::arg("shuffle") = true,
        py::arg("seed") = 0, py::arg("drop_last") = false);
  m.def("plan_random", &PlanRandom, py::arg("n"), py::arg("batch_size"),
        py::arg("seed") = 0, py::arg("drop_last") = false);
  m.def("plan_sequential", &PlanSequential, py::arg("n"),
        py::arg("batch_size"), py::arg("drop_last") = false);
  m.def("padding_ratio", &PaddingRatio, py::arg("plan"), py::arg("stats"));

  py::class_<BatchStream>(m, "BatchStream")
      .def("__iter__", [](BatchStream& s) -> BatchStream& { return s; })
      .def("__next__",
           [](BatchStream& s) {
             std::optional<Batch> batch;
             {
               py::gil_scoped_release release;
               batch = s.Next();
             }
             if (!batch.has_value()) throw py::stop_iteration();
             return BatchToPython(*batch);
           })
      .def("__len__", &BatchStream::num_batches)
      .def_property_readonly("max_buffered", &BatchStream::max_buffered);

  m.def(
      "load",
      [](const Dataset& dataset, const EpochPlan& plan, std::size_t num_workers,
         std::optional<std::size_t> prefetch_depth) {
        LoaderConfig config;
        config.num_workers = num_workers;
        config.prefetch_depth = prefetch_depth;
        return Load(dataset, plan, DefaultBatchifyFor(dataset.schema()),
                    config);
      },
      py::arg("dataset"), py::arg("plan"), py::arg("num_workers") = 0,
      py::arg("prefetch_depth") = py::none());

  m.def(
      "measure_throughput",
      [](const Dataset& dataset, const EpochPlan& plan, std::size_t num_workers,
         std::uint64_t per_token_cost) {
        LoaderConfig config;
        config.num_workers = num_workers;
        ThroughputResult r;
        {
          py::gil_scoped_release release;
          r = MeasureThroughput(dataset, plan,
                                DefaultBatchifyFor(dataset.schema()), config,
                                per_token_cost);
        }
        py::dict out;
        out["batches"] = r.batches;
        out["samples"] = r.samples;
        out["padded_slots"] = r.padded_slots;
        out["total_slots"] = r.total_slots;
        out["wall_seconds"] = r.wall_seconds;
        out["samples_per_sec"] = r.samples_per_sec();
        return out;
      },
      py::arg("dataset"), py::arg("plan"), py::arg("num_workers") = 0,
      py::arg("per_token_cost") = 0);

  m.def(
      "generate_synthetic",
      [](const std::string& flag) {
        return GenerateSynthetic(ParseSyntheticFlag(flag));
      },
      py::arg("spec"), "Spec string such as 'uniform:1:100:10000:42'.");
  m.def("ingest_jsonl", [](const std::filesystem::path& path) {
    return IngestJsonl(path);
  });
  m.def("ingest_plaintext", &IngestPlaintext, py::arg("path"),
        py::arg("vocab_size"));
  m.def("registry_get", &RegistryGet, py::arg("manifest"), py::arg("name"),
        py::arg("split"));
  m.def("sha256_file", &Sha256File);

  py::class_<ModelRecord>(m, "ModelRecord")
      .def_readonly("task", &ModelRecord::task)
      .def_readonly("dataset", &ModelRecord::dataset)
      .def_readonly("model", &ModelRecord::model)
      .def_property_readonly("source",
                             [](const ModelRecord& r) { return ToString(r.source); })
      .def_readonly("citation", &ModelRecord::citation)
      .def_readonly("throughput", &ModelRecord::throughput)
      .def_readonly("memory_bytes", &ModelRecord::memory_bytes)
      .def_readonly("latency_notes", &ModelRecord::latency_notes)
      .def_property_readonly("metrics",
                             [](const ModelRecord& r) {
                               py::dict out;
                               for (const Metric& metric : r.metrics) {
                                 out[py::str(metric.name)] =
                                     py::cast(metric.value);
                               }
                               return out;
                             })
      .def("__repr__", [](const ModelRecord& r) {
        return "<ModelRecord " + r.model + " " + r.dataset + " " +
               ToString(r.source) + ">";
      });

  m.def("load_catalog", &LoadCatalog, py::arg("path"));
  m.def("default_catalog_path", &DefaultCatalogPath);
  m.def(
      "pareto_frontier",
      [](const std::vector<ModelRecord>& records, std::optional<std::string> task,
         std::optional<std::string> source, std::optional<std::string> metric) {
        return ParetoFrontier(records, MakeQuery(task, source, metric));
      },
      py::arg("records"), py::arg("task") = py::none(),
      py::arg("source") = py::none(), py::arg("metric") = py::none());
  m.def(
      "export_scatter",
      [](const std::vector<ModelRecord>& records,
         const std::filesystem::path& out, std::optional<std::string> task,
         std::optional<std::string> source, std::optional<std::string> metric) {
        ExportScatter(records, MakeQuery(task, source, metric), out);
      },
      py::arg("records"), py::arg("out"), py::arg("task") = py::none(),
      py::arg("source") = py::none(), py::arg("metric") = py::none());

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = RunCli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line; returns (exit_code, stdout, stderr).");
}

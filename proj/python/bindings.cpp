#include "bgc/bgc.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;

namespace {

py::dict verification_dict(const bgc::VerificationReport& report) {
  py::dict out;
  out["mode"] = report.mode == bgc::VerifyOptions::Mode::Exhaustive ? "exhaustive" : "sampled";
  out["checked"] = report.checked;
  out["failures"] = report.failures;
  out["passed"] = report.passed();
  out["column_sums_ok"] = report.column_sums_ok;
  out["class_coverage_ok"] = report.class_coverage_ok;
  out["total_load_ok"] = report.total_load_ok;
  if (report.counterexample) {
    py::dict ce;
    ce["kind"] = report.counterexample->kind;
    ce["stragglers"] = report.counterexample->stragglers;
    ce["detail"] = report.counterexample->detail;
    out["counterexample"] = ce;
  } else {
    out["counterexample"] = py::none();
  }
  return out;
}

bgc::VerifyOptions verify_options(std::optional<std::uint64_t> sample, std::uint64_t seed, unsigned threads) {
  bgc::VerifyOptions options;
  options.seed = seed;
  options.threads = threads;
  if (sample) {
    options.mode = bgc::VerifyOptions::Mode::Sampled;
    options.sample_count = *sample;
  }
  return options;
}

py::dict plan_dict(const bgc::HeteroPlan& plan) {
  py::dict out;
  out["s"] = plan.s;
  out["k"] = plan.k;
  std::vector<std::string> real;
  for (const auto& r : plan.real_loads) real.push_back(bgc::to_string(r));
  out["real_loads"] = real;
  out["worker_loads"] = plan.worker_loads;
  out["total_assigned"] = plan.total_assigned;
  out["target_total"] = plan.target_total();
  out["equalization_error"] =
      plan.equalization_error ? py::object(py::str(bgc::to_string(*plan.equalization_error))) : py::object(py::none());
  out["warnings"] = plan.warnings;
  return out;
}

std::vector<bgc::WorkerTypeSpec> type_specs(const std::vector<std::pair<std::int64_t, std::string>>& types) {
  std::vector<bgc::WorkerTypeSpec> specs;
  for (const auto& [count, time] : types) specs.push_back({count, bgc::parse_rational(time)});
  return specs;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Binary gradient coding core (C++)";

  py::register_exception<bgc::ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<bgc::InfeasibleScenario>(m, "InfeasibleScenario", PyExc_RuntimeError);
  py::register_exception<bgc::MissingWorker>(m, "MissingWorker", PyExc_KeyError);
  py::register_exception<bgc::FormatError>(m, "FormatError", PyExc_ValueError);

  py::class_<bgc::CodeParams>(m, "CodeParams")
      .def_readonly("n", &bgc::CodeParams::n)
      .def_readonly("k", &bgc::CodeParams::k)
      .def_readonly("s", &bgc::CodeParams::s)
      .def_readonly("ell", &bgc::CodeParams::ell)
      .def_readonly("r", &bgc::CodeParams::r)
      .def_readonly("t", &bgc::CodeParams::t)
      .def_readonly("q", &bgc::CodeParams::q)
      .def_readonly("lambda_", &bgc::CodeParams::lambda)
      .def_readonly("rtilde", &bgc::CodeParams::rtilde)
      .def_readonly("f", &bgc::CodeParams::f)
      .def("__eq__", [](const bgc::CodeParams& a, const bgc::CodeParams& b) { return a == b; })
      .def("__repr__", [](const bgc::CodeParams& p) {
        std::ostringstream out;
        out << "CodeParams(n=" << p.n << ", s=" << p.s << ", ell=" << p.ell << ", r=" << p.r << ", t=" << p.t
            << ", q=" << p.q << ", lambda_=" << p.lambda << ", rtilde=" << p.rtilde << ")";
        return out.str();
      });
  m.def("derive_params", &bgc::derive_params, py::arg("n"), py::arg("s"));

  py::class_<bgc::RowInterval>(m, "RowInterval")
      .def_readonly("start", &bgc::RowInterval::start)
      .def_readonly("width", &bgc::RowInterval::width)
      .def("__repr__", [](const bgc::RowInterval& r) {
        return "RowInterval(start=" + std::to_string(r.start) + ", width=" + std::to_string(r.width) + ")";
      });

  py::class_<bgc::WorkerAssignment>(m, "WorkerAssignment")
      .def_readonly("worker", &bgc::WorkerAssignment::worker)
      .def_readonly("cls", &bgc::WorkerAssignment::cls)
      .def_readonly("block", &bgc::WorkerAssignment::block)
      .def_readonly("interval", &bgc::WorkerAssignment::interval);
  m.def("build_c1", &bgc::build_c1, py::arg("params"));
  m.def("build_c2", &bgc::build_c2, py::arg("params"));

  py::class_<bgc::BinaryMatrix>(m, "BinaryMatrix")
      .def(py::init<int, int>(), py::arg("rows"), py::arg("cols"))
      .def_property_readonly("rows", &bgc::BinaryMatrix::rows)
      .def_property_readonly("cols", &bgc::BinaryMatrix::cols)
      .def("get", &bgc::BinaryMatrix::get)
      .def("set", &bgc::BinaryMatrix::set)
      .def("row", &bgc::BinaryMatrix::row)
      .def("column_sums", &bgc::BinaryMatrix::column_sums)
      .def("to_dense", &bgc::BinaryMatrix::to_dense)
      .def("to_triplets", &bgc::BinaryMatrix::to_triplets)
      .def_static("from_triplets", [](const std::string& text, int rows, int cols) {
        std::istringstream in(text);
        return bgc::BinaryMatrix::from_triplets(in, rows, cols);
      });

  py::class_<bgc::EncodingMatrix>(m, "EncodingMatrix")
      .def_property_readonly("params", &bgc::EncodingMatrix::params)
      .def_property_readonly("rows", &bgc::EncodingMatrix::rows)
      .def("class_of", &bgc::EncodingMatrix::class_of)
      .def("load", &bgc::EncodingMatrix::load)
      .def("to_binary", &bgc::EncodingMatrix::to_binary)
      .def("to_dense", &bgc::EncodingMatrix::to_dense)
      .def("dense", [](const bgc::EncodingMatrix& b) {
        std::vector<std::vector<int>> out(static_cast<std::size_t>(b.workers()),
                                          std::vector<int>(static_cast<std::size_t>(b.partitions()), 0));
        for (int i = 0; i < b.workers(); ++i) {
          for (int j = b.row(i).start; j < b.row(i).end(); ++j) out[i][j] = 1;
        }
        return out;
      });
  m.def("build_encoding", &bgc::build_encoding, py::arg("params"));
  m.def("bipartite_edges", [](const bgc::EncodingMatrix& b) { return bgc::to_bipartite(b).edges; });

  py::class_<bgc::DecodingVector>(m, "DecodingVector")
      .def_readonly("class_index", &bgc::DecodingVector::class_index)
      .def_readonly("support", &bgc::DecodingVector::support)
      .def("indicator", &bgc::DecodingVector::indicator);
  m.def("class_vector", &bgc::class_vector, py::arg("params"), py::arg("cls"));
  m.def("scan_order", &bgc::scan_order, py::arg("params"));
  m.def(
      "select_decoder",
      [](const bgc::CodeParams& p, const std::vector<int>& stragglers, bool fast) {
        const auto scenario = bgc::StragglerScenario::from_stragglers(p.n, stragglers);
        bgc::SelectionStats stats;
        auto a = fast ? bgc::select_decoder_fast(p, scenario, &stats) : bgc::select_decoder(p, scenario, &stats);
        return std::make_pair(a, stats.membership_checks);
      },
      py::arg("params"), py::arg("stragglers"), py::arg("fast") = false,
      "Returns (decoding vector, membership checks).");
  m.def("recover_gradient", &bgc::recover_gradient<double>, py::arg("decoder"), py::arg("encoded"));

  m.def("load_vector", py::overload_cast<const bgc::EncodingMatrix&>(&bgc::load_vector));
  m.def("distance_ds", [](const bgc::EncodingMatrix& b) { return bgc::to_string(bgc::distance_ds(b)); });
  m.def("distance_ds_matrix", [](const bgc::BinaryMatrix& b, int s) { return bgc::to_string(bgc::distance_ds(b, s)); });
  m.def("balance_property", py::overload_cast<const bgc::EncodingMatrix&>(&bgc::balance_property));
  m.def(
      "verify_scheme",
      [](const bgc::EncodingMatrix& b, std::optional<std::uint64_t> sample, std::uint64_t seed, unsigned threads) {
        return verification_dict(bgc::verify_scheme(b, verify_options(sample, seed, threads)));
      },
      py::arg("matrix"), py::arg("sample") = py::none(), py::arg("seed") = 0, py::arg("threads") = 1);
  m.def(
      "verify_matrix",
      [](const bgc::BinaryMatrix& b, const bgc::CodeParams& p, std::optional<std::uint64_t> sample,
         std::uint64_t seed, unsigned threads) {
        return verification_dict(bgc::verify_scheme(b, p, verify_options(sample, seed, threads)));
      },
      py::arg("matrix"), py::arg("params"), py::arg("sample") = py::none(), py::arg("seed") = 0,
      py::arg("threads") = 1);
  m.def(
      "check_lemma",
      [](int s_min, int s_max, int a_multiple) {
        std::vector<std::tuple<int, int, int>> out;
        for (const auto& v : bgc::check_lemma({s_min, s_max, a_multiple})) out.emplace_back(v.s, v.a, v.t);
        return out;
      },
      py::arg("s_min") = 3, py::arg("s_max") = 40, py::arg("a_multiple") = 4);

  m.def(
      "plan",
      [](int s, int k, const std::vector<std::pair<std::int64_t, std::string>>& types, bool round) {
        const auto specs = type_specs(types);
        auto plan = specs.size() == 2 ? bgc::plan_two_types(s, k, specs[0], specs[1])
                                      : bgc::plan_m_types(s, k, specs);
        if (round) plan = bgc::round_plan(std::move(plan));
        return plan_dict(plan);
      },
      py::arg("s"), py::arg("k"), py::arg("types"), py::arg("round") = true);
  m.def(
      "plan_m_types",
      [](int s, int k, const std::vector<std::pair<std::int64_t, std::string>>& types) {
        return plan_dict(bgc::plan_m_types(s, k, type_specs(types)));
      },
      py::arg("s"), py::arg("k"), py::arg("types"));

  py::class_<bgc::IterationRecord>(m, "IterationRecord")
      .def_readonly("iteration", &bgc::IterationRecord::iteration)
      .def_readonly("selected_class", &bgc::IterationRecord::selected_class)
      .def_readonly("stragglers", &bgc::IterationRecord::stragglers)
      .def_readonly("reconstruction_error", &bgc::IterationRecord::reconstruction_error)
      .def_readonly("relative_error", &bgc::IterationRecord::relative_error)
      .def_readonly("loss", &bgc::IterationRecord::loss)
      .def_readonly("theta_hash", &bgc::IterationRecord::theta_hash);
  py::class_<bgc::RunLog>(m, "RunLog")
      .def_readonly("initial_loss", &bgc::RunLog::initial_loss)
      .def_readonly("records", &bgc::RunLog::records)
      .def_readonly("final_theta", &bgc::RunLog::final_theta)
      .def("to_jsonl", &bgc::RunLog::to_jsonl)
      .def("to_csv", &bgc::RunLog::to_csv);
  m.def(
      "simulate",
      [](int n, int s, int iters, double lr, std::uint64_t seed, std::optional<std::pair<int, int>> synthetic,
         std::optional<std::string> data, bool header, std::string model, double noise, bool integer_data) {
        bgc::SimConfig config;
        config.n = n;
        config.s = s;
        config.iterations = iters;
        config.lr = lr;
        config.seed = seed;
        config.model = bgc::StragglerModel::parse(model);
        config.data_path = std::move(data);
        config.header = header;
        if (synthetic) {
          config.synthetic_samples = synthetic->first;
          config.synthetic_dim = synthetic->second;
        }
        config.noise = noise;
        config.integer_data = integer_data;
        py::gil_scoped_release release;
        return bgc::run_descent(config);
      },
      py::arg("n"), py::arg("s"), py::arg("iters"), py::arg("lr"), py::arg("seed") = 0,
      py::arg("synthetic") = py::none(), py::arg("data") = py::none(), py::arg("header") = false,
      py::arg("model") = "uniform", py::arg("noise") = 0.0, py::arg("integer_data") = false);
}

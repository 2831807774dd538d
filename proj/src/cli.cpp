#include "bgc/cli.hpp"

#include "bgc/bgc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace bgc::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Output { Json, Csv, Text };

struct Globals {
  std::uint64_t seed = 0;
  Output output = Output::Json;
  bool quiet = false;
  unsigned threads = 1;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
  const Globals& globals;

  void note(const std::string& message) const {
    if (!globals.quiet) err << message << '\n';
  }
};

/// Raised for invocations that parse but make no sense (exit code 2).
struct UsageError : Error {
  using Error::Error;
};

// --- rendering --------------------------------------------------------------

std::string scalar_text(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_null()) return "";
  return value.dump();
}

// Nested objects become dotted keys; arrays of scalars become space-joined.
void flatten(const Json& value, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (value.is_object()) {
    for (const auto& [key, item] : value.items()) {
      flatten(item, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  if (value.is_array()) {
    const bool scalars = std::all_of(value.begin(), value.end(),
                                     [](const Json& v) { return v.is_primitive(); });
    if (scalars) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ' ';
        joined += scalar_text(v);
      }
      out.emplace_back(prefix, joined);
      return;
    }
    out.emplace_back(prefix, value.dump());
    return;
  }
  out.emplace_back(prefix, scalar_text(value));
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void render(const Json& doc, const Streams& io) {
  switch (io.globals.output) {
    case Output::Json:
      io.out << doc.dump() << '\n';
      return;
    case Output::Csv: {
      std::vector<std::pair<std::string, std::string>> cells;
      flatten(doc, "", cells);
      for (std::size_t i = 0; i < cells.size(); ++i) io.out << (i ? "," : "") << csv_field(cells[i].first);
      io.out << '\n';
      for (std::size_t i = 0; i < cells.size(); ++i) io.out << (i ? "," : "") << csv_field(cells[i].second);
      io.out << '\n';
      return;
    }
    case Output::Text: {
      std::vector<std::pair<std::string, std::string>> cells;
      flatten(doc, "", cells);
      for (const auto& [key, value] : cells) io.out << key << ": " << value << '\n';
      return;
    }
  }
}

Json rational_json(const Rational& value) { return to_string(value); }

Json params_json(const CodeParams& p) {
  return Json{{"n", p.n},   {"k", p.k},           {"s", p.s},           {"ell", p.ell},
              {"r", p.r},   {"t", p.t},           {"q", p.q},           {"lambda", p.lambda},
              {"rtilde", p.rtilde}, {"f", p.f}};
}

// --- subcommands ------------------------------------------------------------

struct NsOptions {
  int n = 0;
  int s = 0;
};

void add_ns(CLI::App* cmd, NsOptions& ns) {
  cmd->add_option("--n", ns.n, "number of workers (= partitions)")->required();
  cmd->add_option("--s", ns.s, "stragglers tolerated")->required();
}

int cmd_params(const NsOptions& ns, const Streams& io) {
  const auto p = derive_params(ns.n, ns.s);
  Json doc = params_json(p);
  doc["config"] = Json{{"command", "params"}, {"n", ns.n}, {"s", ns.s}};
  render(doc, io);
  return 0;
}

int cmd_gen(const NsOptions& ns, const std::string& format, const Streams& io) {
  const auto params = derive_params(ns.n, ns.s);
  const auto matrix = build_encoding(params);
  const Json config{{"command", "gen"}, {"n", ns.n}, {"s", ns.s}, {"format", format}};
  if (format == "dense") {
    io.note("# " + config.dump());
    io.out << matrix.to_dense();
  } else if (format == "triplets") {
    io.note("# " + config.dump());
    io.out << matrix.to_binary().to_triplets();
  } else {
    Json rows = Json::array();
    for (int w = 0; w < matrix.workers(); ++w) {
      const auto& row = matrix.row(w);
      rows.push_back(Json{{"worker", w}, {"class", matrix.class_of(w)}, {"start", row.start}, {"width", row.width}});
    }
    io.out << Json{{"params", params_json(params)}, {"rows", rows}, {"config", config}}.dump() << '\n';
  }
  return 0;
}

struct VerifyArgs {
  NsOptions ns;
  bool exhaustive = false;
  std::uint64_t sample = 0;
  std::string from_file;
};

Json counterexample_json(const std::optional<Counterexample>& ce) {
  if (!ce) return nullptr;
  return Json{{"kind", ce->kind}, {"stragglers", ce->stragglers}, {"detail", ce->detail}};
}

int cmd_verify(const VerifyArgs& args, const Streams& io) {
  const auto params = derive_params(args.ns.n, args.ns.s);
  BinaryMatrix matrix;
  if (!args.from_file.empty()) {
    std::ifstream in(args.from_file);
    if (!in) throw UsageError("cannot open '" + args.from_file + "'");
    matrix = BinaryMatrix::from_triplets(in, params.n, params.k);
  } else {
    matrix = build_encoding(params).to_binary();
  }

  VerifyOptions options;
  options.seed = io.globals.seed;
  options.threads = io.globals.threads;
  bool auto_switched = false;
  if (args.sample > 0) {
    options.mode = VerifyOptions::Mode::Sampled;
    options.sample_count = args.sample;
  } else {
    const auto total = binomial(params.n, params.s);
    if (total > kExhaustiveCap) {
      auto_switched = true;
      options.mode = VerifyOptions::Mode::Sampled;
      io.note("exhaustive check needs " + std::to_string(total) + " straggler sets (cap " +
              std::to_string(kExhaustiveCap) + "); sampling " + std::to_string(options.sample_count) +
              " with seed " + std::to_string(options.seed));
    }
  }

  const auto report = verify_scheme(matrix, params, options);
  const bool sampled = options.mode == VerifyOptions::Mode::Sampled;
  Json doc{{"checked", report.checked},
           {"failures", report.failures},
           {"passed", report.passed()},
           {"mode", sampled ? "sampled" : "exhaustive"},
           {"column_sums_ok", report.column_sums_ok},
           {"class_coverage_ok", report.class_coverage_ok},
           {"total_load_ok", report.total_load_ok},
           {"counterexample", counterexample_json(report.counterexample)}};
  doc["config"] = Json{{"command", "verify"},
                       {"n", args.ns.n},
                       {"s", args.ns.s},
                       {"mode", sampled ? "sampled" : "exhaustive"},
                       {"sample", sampled ? Json(options.sample_count) : Json(nullptr)},
                       {"seed", options.seed},
                       {"auto_switched", auto_switched},
                       {"from_file", args.from_file.empty() ? Json(nullptr) : Json(args.from_file)},
                       {"threads", options.threads}};
  render(doc, io);
  return report.passed() ? 0 : 1;
}

int cmd_metrics(const NsOptions& ns, const Streams& io) {
  const auto params = derive_params(ns.n, ns.s);
  const auto matrix = build_encoding(params);
  const auto report = load_report(matrix);
  const Rational target = Rational(params.k) / params.n * (params.s + 1);
  Json doc{{"n", params.n},
           {"s", params.s},
           {"loads", report.loads},
           {"target", rational_json(target)},
           {"ds", rational_json(report.ds_value)},
           {"ds_float", to_double(report.ds_value)},
           {"total", report.total},
           {"spread_c1", report.spread_c1},
           {"spread_c2", report.spread_c2},
           {"balanced", report.spread_c1 <= 1 && report.spread_c2 <= 1}};
  doc["config"] = Json{{"command", "metrics"}, {"n", ns.n}, {"s", ns.s}};
  render(doc, io);
  return 0;
}

int cmd_decode(const NsOptions& ns, const std::vector<int>& stragglers, bool fast, const Streams& io) {
  const auto params = derive_params(ns.n, ns.s);
  std::vector<int> sorted(stragglers);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw UsageError("--stragglers lists a worker twice");
  }
  const auto scenario = StragglerScenario::from_stragglers(params.n, sorted);
  const Json config{{"command", "decode"}, {"n", ns.n}, {"s", ns.s}, {"stragglers", sorted}, {"fast", fast}};
  try {
    const auto a = fast ? select_decoder_fast(params, scenario) : select_decoder(params, scenario);
    render(Json{{"class", a.class_index}, {"support", a.support}, {"config", config}}, io);
    return 0;
  } catch (const InfeasibleScenario& e) {
    io.err << "decode failed: " << e.what() << '\n';
    render(Json{{"class", nullptr}, {"support", Json::array()}, {"config", config}}, io);
    return 1;
  }
}

struct PlanArgs {
  int s = 0;
  int k = 0;
  std::string types;
};

int cmd_plan(const PlanArgs& args, const Streams& io) {
  const auto types = parse_type_list(args.types);
  auto plan = types.size() == 2 ? plan_two_types(args.s, args.k, types[0], types[1])
                                : plan_m_types(args.s, args.k, types);
  for (const auto& w : plan.warnings) io.note("warning: " + w);
  plan = round_plan(std::move(plan));

  Json type_list = Json::array();
  for (std::size_t i = 0; i < plan.types.size(); ++i) {
    const auto& loads = plan.worker_loads[i];
    const auto [lo, hi] = std::minmax_element(loads.begin(), loads.end());
    type_list.push_back(Json{{"count", plan.types[i].count},
                             {"time", rational_json(plan.types[i].unit_time)},
                             {"real_load", rational_json(plan.real_loads[i])},
                             {"real_load_float", to_double(plan.real_loads[i])},
                             {"min_load", *lo},
                             {"max_load", *hi},
                             {"workers_at_max", std::count(loads.begin(), loads.end(), *hi)}});
  }
  Json doc{{"s", plan.s},
           {"k", plan.k},
           {"target_total", plan.target_total()},
           {"total_assigned", plan.total_assigned},
           {"types", type_list},
           {"equalization_error",
            plan.equalization_error ? rational_json(*plan.equalization_error) : Json("inf")},
           {"equalization_error_float",
            plan.equalization_error ? Json(to_double(*plan.equalization_error)) : Json(nullptr)},
           {"warnings", plan.warnings}};
  doc["config"] = Json{{"command", "plan"}, {"s", args.s}, {"k", args.k}, {"types", args.types}};
  render(doc, io);
  return 0;
}

struct SimulateArgs {
  NsOptions ns;
  int iters = 100;
  double lr = 0.0;
  std::string data;
  bool header = false;
  std::string synthetic;
  double noise = 0.0;
  bool integer_data = false;
  std::string model = "uniform";
};

int cmd_simulate(const SimulateArgs& args, const Streams& io) {
  SimConfig config;
  config.n = args.ns.n;
  config.s = args.ns.s;
  config.iterations = args.iters;
  config.lr = args.lr;
  config.seed = io.globals.seed;
  config.model = StragglerModel::parse(args.model);
  config.header = args.header;
  config.noise = args.noise;
  config.integer_data = args.integer_data;
  if (!args.data.empty()) config.data_path = args.data;
  if (!args.synthetic.empty()) {
    const auto comma = args.synthetic.find(',');
    if (comma == std::string::npos) throw UsageError("--synthetic expects N,p");
    try {
      config.synthetic_samples = std::stoi(args.synthetic.substr(0, comma));
      config.synthetic_dim = std::stoi(args.synthetic.substr(comma + 1));
    } catch (const std::exception&) {
      throw UsageError("--synthetic expects N,p, got '" + args.synthetic + "'");
    }
  }
  const auto log = run_descent(config);
  if (io.globals.output == Output::Csv) {
    io.note("# " + log.to_jsonl().substr(0, log.to_jsonl().find('\n')));
    io.out << log.to_csv();
  } else {
    io.out << log.to_jsonl();
  }
  if (!log.records.empty()) {
    double worst = 0.0;
    for (const auto& r : log.records) worst = std::max(worst, r.relative_error);
    std::ostringstream msg;
    msg << "final loss " << log.records.back().loss << " (initial " << log.initial_loss
        << "), max relative reconstruction error " << worst;
    io.note(msg.str());
  }
  return 0;
}

int cmd_lemma(const LemmaSweep& sweep, const Streams& io) {
  const auto violations = check_lemma(sweep);
  Json list = Json::array();
  for (const auto& v : violations) list.push_back(Json{{"s", v.s}, {"a", v.a}, {"t", v.t}});
  Json doc{{"checked", lemma_cases(sweep)}, {"violations", list}};
  doc["config"] = Json{{"command", "lemma-check"},
                       {"s_min", sweep.s_min},
                       {"s_max", sweep.s_max},
                       {"a_multiple", sweep.a_multiple}};
  render(doc, io);
  return violations.empty() ? 0 : 1;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binary gradient coding: construction, decoding, verification and simulation", "bgc"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  std::string output = "json";
  app.add_option("--seed", globals.seed, "seed for sampling and simulation");
  app.add_option("--output", output, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--quiet", globals.quiet, "suppress diagnostics on stderr");
  app.add_option("--threads", globals.threads, "worker threads for verification")->check(CLI::Range(1u, 1024u));

  NsOptions params_ns;
  auto* params_cmd = app.add_subcommand("params", "print the Euclidean-division parameters");
  add_ns(params_cmd, params_ns);

  NsOptions gen_ns;
  std::string gen_format = "dense";
  auto* gen_cmd = app.add_subcommand("gen", "print the encoding matrix");
  add_ns(gen_cmd, gen_ns);
  gen_cmd->add_option("--format", gen_format, "dense | triplets | json")
      ->check(CLI::IsMember({"dense", "triplets", "json"}));

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "check the scheme against every (or sampled) straggler set");
  add_ns(verify_cmd, verify_args.ns);
  auto* exhaustive_flag = verify_cmd->add_flag("--exhaustive", verify_args.exhaustive, "all C(n, s) straggler sets");
  verify_cmd->add_option("--sample", verify_args.sample, "number of uniformly drawn straggler sets")
      ->check(CLI::PositiveNumber)
      ->excludes(exhaustive_flag);
  verify_cmd->add_option("--from-file", verify_args.from_file, "matrix in triplets format instead of the construction");

  NsOptions metrics_ns;
  auto* metrics_cmd = app.add_subcommand("metrics", "row loads, d_s and class-set spreads");
  add_ns(metrics_cmd, metrics_ns);

  NsOptions decode_ns;
  std::vector<int> stragglers;
  bool decode_fast = false;
  auto* decode_cmd = app.add_subcommand("decode", "select the decoding vector for a straggler set");
  add_ns(decode_cmd, decode_ns);
  decode_cmd->add_option("--stragglers", stragglers, "comma-separated worker indices")->delimiter(',');
  decode_cmd->add_flag("--fast", decode_fast, "skip the check of the last class in scan order");

  PlanArgs plan_args;
  auto* plan_cmd = app.add_subcommand("plan", "task loads for heterogeneous worker types");
  plan_cmd->add_option("--s", plan_args.s, "stragglers tolerated")->required();
  plan_cmd->add_option("--k", plan_args.k, "number of partitions")->required();
  plan_cmd->add_option("--types", plan_args.types, "count:time,count:time,... fastest first")->required();

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "coded distributed gradient descent on least squares");
  add_ns(sim_cmd, sim_args.ns);
  sim_cmd->add_option("--iters", sim_args.iters, "iterations")->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--lr", sim_args.lr, "step size")->required();
  auto* data_opt = sim_cmd->add_option("--data", sim_args.data, "CSV file: features then label");
  sim_cmd->add_flag("--header", sim_args.header, "CSV file has a header line");
  sim_cmd->add_option("--synthetic", sim_args.synthetic, "N,p synthetic least-squares problem")->excludes(data_opt);
  sim_cmd->add_option("--noise", sim_args.noise, "label noise standard deviation (synthetic)");
  sim_cmd->add_flag("--integer-data", sim_args.integer_data, "integer-valued synthetic data");
  sim_cmd->add_option("--straggler-model", sim_args.model, "fixed:i,j,... | uniform | race[:unit,noise]");

  LemmaSweep sweep;
  auto* lemma_cmd = app.add_subcommand("lemma-check", "t over n = s^2 + a");
  lemma_cmd->add_option("--s-min", sweep.s_min);
  lemma_cmd->add_option("--s-max", sweep.s_max);
  lemma_cmd->add_option("--a-multiple", sweep.a_multiple, "a ranges over 0..a_multiple*s")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  globals.output = output == "csv" ? Output::Csv : output == "text" ? Output::Text : Output::Json;
  const Streams io{out, err, globals};
  try {
    if (*params_cmd) return cmd_params(params_ns, io);
    if (*gen_cmd) return cmd_gen(gen_ns, gen_format, io);
    if (*verify_cmd) return cmd_verify(verify_args, io);
    if (*metrics_cmd) return cmd_metrics(metrics_ns, io);
    if (*decode_cmd) return cmd_decode(decode_ns, stragglers, decode_fast, io);
    if (*plan_cmd) return cmd_plan(plan_args, io);
    if (*sim_cmd) return cmd_simulate(sim_args, io);
    if (*lemma_cmd) {
      if (sweep.s_min > sweep.s_max) throw UsageError("--s-min exceeds --s-max");
      return cmd_lemma(sweep, io);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace bgc::cli

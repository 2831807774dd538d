#include "bgc/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "bgc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = bgc::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json parse(const Result& r) { return nlohmann::json::parse(r.out); }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::string temp_path(const std::string& name) { return std::string(BGC_TEST_TMPDIR) + "/" + name; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

}  // namespace

TEST_CASE("gen dense") {
  const auto r = run({"gen", "--n", "11", "--s", "3", "--format", "dense"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 11);
  CHECK(rows[3] == "1 1 1 1 1 1 0 0 0 0 0");
  CHECK(rows[7] == "0 0 0 0 0 0 1 1 1 1 1");
  CHECK(r.err.find("\"gen\"") != std::string::npos);
}

TEST_CASE("gen json") {
  const auto doc = parse(run({"gen", "--n", "11", "--s", "3", "--format", "json"}));
  CHECK(doc["params"]["ell"] == 2);
  CHECK(doc["rows"].size() == 11);
  CHECK(doc["config"]["format"] == "json");
}

TEST_CASE("params") {
  const auto doc = parse(run({"params", "--n", "11", "--s", "3"}));
  CHECK(doc["r"] == 3);
  CHECK(doc["lambda"] == 3);
  CHECK(doc["config"]["n"] == 11);
}

TEST_CASE("verify") {
  const auto r = run({"verify", "--n", "14", "--s", "7", "--exhaustive"});
  CHECK(r.code == 0);
  const auto doc = parse(r);
  CHECK(doc["checked"] == 3432);
  CHECK(doc["failures"] == 0);

  const auto threaded = parse(run({"--threads", "4", "verify", "--n", "14", "--s", "7"}));
  CHECK(threaded["checked"] == 3432);

  const auto sampled = parse(run({"--seed", "7", "verify", "--n", "40", "--s", "20", "--sample", "300"}));
  CHECK(sampled["checked"] == 300);
  CHECK(sampled["mode"] == "sampled");
  CHECK(sampled["config"]["seed"] == 7);

  const auto capped = run({"verify", "--n", "40", "--s", "20"});
  CHECK(capped.code == 0);
  CHECK(parse(capped)["config"]["auto_switched"] == true);
  CHECK(!capped.err.empty());
}

TEST_CASE("decode") {
  auto r = run({"decode", "--n", "11", "--s", "3", "--stragglers", "0,1,2"});
  CHECK(r.code == 0);
  auto doc = parse(r);
  CHECK(doc["class"] == 3);
  CHECK(doc["support"] == nlohmann::json::array({3, 7}));

  doc = parse(run({"decode", "--n", "11", "--s", "3", "--stragglers", "3,4,5", "--fast"}));
  CHECK(doc["class"] == 2);

  r = run({"decode", "--n", "11", "--s", "3", "--stragglers", "0,1,2,3"});
  CHECK(r.code == 1);
  CHECK(parse(r)["class"].is_null());

  CHECK(run({"decode", "--n", "11", "--s", "3", "--stragglers", "1,1"}).code == 2);
  CHECK(run({"decode", "--n", "11", "--s", "3", "--stragglers", "11"}).code == 2);
}

TEST_CASE("usage errors name the flag") {
  auto r = run({"gen", "--n", "11"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--s") != std::string::npos);

  r = run({"gen", "--n", "11", "--s", "3", "--bogus"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--bogus") != std::string::npos);

  r = run({"gen", "--n", "11", "--s", "3", "--format", "xml"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--format") != std::string::npos);

  r = run({"params", "--n", "3", "--s", "3"});
  CHECK(r.code == 2);
  CHECK(r.err.find("error") != std::string::npos);

  r = run({});
  CHECK(r.code == 2);

  r = run({"verify", "--n", "5", "--s", "1", "--exhaustive", "--sample", "3"});
  CHECK(r.code == 2);
}

TEST_CASE("triplets round trip") {
  for (const auto& [n, s] : {std::pair{11, 3}, std::pair{13, 5}, std::pair{9, 0}}) {
    const auto ns = std::to_string(n);
    const auto ss = std::to_string(s);
    const auto gen = run({"gen", "--n", ns, "--s", ss, "--format", "triplets"});
    REQUIRE(gen.code == 0);
    const auto path = temp_path("roundtrip_" + ns + "_" + ss + ".txt");
    write_file(path, gen.out);

    auto from_file = parse(run({"verify", "--n", ns, "--s", ss, "--from-file", path}));
    auto in_memory = parse(run({"verify", "--n", ns, "--s", ss}));
    from_file.erase("config");
    in_memory.erase("config");
    CHECK(from_file == in_memory);
  }
}

TEST_CASE("a corrupted matrix fails verification") {
  const auto gen = run({"gen", "--n", "11", "--s", "3", "--format", "triplets"});
  auto rows = lines(gen.out);
  rows.erase(std::find(rows.begin(), rows.end(), "7 10"));
  std::string text;
  for (const auto& row : rows) text += row + "\n";
  const auto path = temp_path("corrupted.txt");
  write_file(path, text);

  const auto r = run({"verify", "--n", "11", "--s", "3", "--from-file", path});
  CHECK(r.code == 1);
  const auto doc = parse(r);
  CHECK(doc["passed"] == false);
  CHECK(doc["counterexample"]["kind"] == "column_sum");

  write_file(path, "0 0\n0 x\n");
  CHECK(run({"verify", "--n", "11", "--s", "3", "--from-file", path}).code == 2);
  CHECK(run({"verify", "--n", "11", "--s", "3", "--from-file", temp_path("missing.txt")}).code == 2);
}

TEST_CASE("metrics") {
  const auto doc = parse(run({"metrics", "--n", "11", "--s", "3"}));
  CHECK(doc["ds"] == "6");
  CHECK(doc["total"] == 44);

  const auto csv = lines(run({"--output", "csv", "metrics", "--n", "11", "--s", "3"}).out);
  REQUIRE(csv.size() == 2);
  CHECK(csv[0].rfind("n,s,loads", 0) == 0);
  CHECK(csv[1].rfind("11,3,4 4 4 6 4 4 4 5 3 3 3", 0) == 0);

  const auto text = run({"--output", "text", "metrics", "--n", "11", "--s", "3"}).out;
  CHECK(text.find("ds: 6") != std::string::npos);
}

TEST_CASE("plan") {
  auto r = run({"plan", "--s", "3", "--k", "12", "--types", "6:1,6:2"});
  CHECK(r.code == 0);
  const auto doc = parse(r);
  CHECK(doc["types"][0]["real_load"] == "16/3");
  CHECK(doc["types"][1]["real_load"] == "8/3");
  CHECK(doc["total_assigned"] == 48);

  r = run({"plan", "--s", "3", "--k", "12", "--types", "6:2,6:1"});
  CHECK(r.code == 2);
  r = run({"plan", "--s", "3", "--k", "12", "--types", "6"});
  CHECK(r.code == 2);
}

TEST_CASE("lemma-check") {
  const auto r = run({"lemma-check", "--s-min", "3", "--s-max", "40"});
  CHECK(r.code == 0);
  CHECK(parse(r)["violations"].empty());
  CHECK(run({"lemma-check", "--s-min", "5", "--s-max", "4"}).code == 2);
}

TEST_CASE("simulate") {
  const std::vector<std::string> args{"--seed", "11", "simulate", "--n", "12", "--s", "3", "--iters", "20",
                                      "--lr", "1e-4", "--synthetic", "240,5", "--straggler-model", "race"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto log = lines(a.out);
  REQUIRE(log.size() == 21);
  const auto head = nlohmann::json::parse(log[0]);
  CHECK(head["config"]["seed"] == 11);
  CHECK(head["config"]["straggler_model"] == "race:1,1");
  for (std::size_t i = 1; i < log.size(); ++i) {
    const auto rec = nlohmann::json::parse(log[i]);
    CHECK(rec["stragglers"].size() == 3);
  }

  const auto csv = lines(run({"--output", "csv", "simulate", "--n", "6", "--s", "1", "--iters", "3", "--lr",
                              "1e-3", "--synthetic", "30,2"})
                             .out);
  CHECK(csv.size() == 4);

  const auto data = temp_path("data.csv");
  write_file(data, "a,b,y\n1,0,1\n0,1,2\n1,1,3\n2,1,4\n");
  const auto file_run = run({"simulate", "--n", "4", "--s", "1", "--iters", "5", "--lr", "0.01", "--data", data,
                             "--header", "--straggler-model", "fixed:2"});
  CHECK(file_run.code == 0);
  CHECK(lines(file_run.out).size() == 6);

  CHECK(run({"simulate", "--n", "12", "--s", "3", "--lr", "0.1"}).code == 2);
  CHECK(run({"simulate", "--n", "12", "--s", "3", "--lr", "0.1", "--synthetic", "abc"}).code == 2);
  CHECK(run({"simulate", "--n", "12", "--s", "3", "--synthetic", "100,2"}).code == 2);
  CHECK(run({"simulate", "--n", "12", "--s", "3", "--lr", "0.1", "--synthetic", "100,2", "--data", data}).code ==
        2);
}

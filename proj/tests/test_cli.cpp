#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "orthomorse/cli.hpp"
#include "orthomorse/io.hpp"

using orthomorse::io::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "orthomorse");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = orthomorse::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempFile {
 public:
  TempFile(const std::string& name, const std::string& content)
      : path_(std::filesystem::temp_directory_path() / ("orthomorse_cli_" + name)) {
    std::ofstream(path_) << content;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("betti --n 3 prints 1 + t + t^2 + t^3") {
  const Result r = run({"betti", "--n", "3"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"i", "b_i", "c_i", "frankel_ok"});
  for (int i = 0; i <= 3; ++i)
    CHECK(rows[i + 1] == std::vector<std::string>{std::to_string(i), "1", "2", "true"});
}

TEST_CASE("betti as JSON carries the same numbers") {
  const Result r = run({"betti", "--n", "5", "--format", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("rows").size() == 11);
  CHECK(j.at("rows")[4].at("b_i") == 2);
  for (const auto& row : j.at("rows")) CHECK(row.at("frankel_ok") == true);
}

TEST_CASE("fillings with all-ones margins for n = 3") {
  const TempFile margins("margins.json", R"({"m":[1,1,1],"n":[1,1,1]})");
  const Result r = run({"fillings", "--margins", margins.path()});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("count") == 6);
  REQUIRE(j.at("fillings").size() == 6);
  for (const auto& f : j.at("fillings")) CHECK(f.at("component_dimension") == 0);
  CHECK(j.at("fillings")[0].at("index") == 0);
  CHECK(j.at("fillings")[5].at("index") == 3);
}

TEST_CASE("frankel report") {
  const Result r = run({"frankel", "--n", "6"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("all_equal") == true);
  CHECK(j.at("reports").size() == 2);
}

TEST_CASE("critical --all-spms agrees with the fillings") {
  const TempFile spectra("spectra.json",
                         R"({"a":{"values":[1,2],"mults":[2,1]},"b":{"values":[0,5],"mults":[1,2]}})");
  const Result r = run({"critical", "--spectra", spectra.path(), "--all-spms"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("all_match") == true);
  CHECK(j.at("spms").size() == 48);
  CHECK(j.at("components").size() == 2);
}

TEST_CASE("critical --decompose honours the caller's eigenvalue order") {
  // a listed as (2, 1): X = identity pairs a=2 with b=0 and a=1 with b=5.
  const TempFile spectra("spectra_unsorted.json",
                         R"({"a":{"values":[2,1],"mults":[1,1]},"b":{"values":[0,5],"mults":[1,1]}})");
  const TempFile x("identity.json", R"({"rows":2,"cols":2,"entries":[1,0,0,1]})");
  const Result r = run({"critical", "--spectra", spectra.path(), "--decompose", x.path()});
  REQUIRE(r.code == 0);
  const json d = json::parse(r.out).at("decomposition");
  // In sorted order (1, 2) against (0, 5) the point is anti-diagonal: index 0.
  CHECK(d.at("filling") == json::parse("[[0,1],[1,0]]"));
  CHECK(d.at("filling_index") == 0);
  CHECK(d.at("hessian").at("index") == 0);
}

TEST_CASE("critical --decompose fails numerically on a non-critical point") {
  const TempFile spectra("spectra3.json",
                         R"({"a":{"values":[1,2,3],"mults":[1,1,1]},"b":{"values":[1,2,3],"mults":[1,1,1]}})");
  const double c = std::cos(0.3), s = std::sin(0.3);
  json m = {{"rows", 3}, {"cols", 3}, {"entries", {c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0}}};
  const TempFile x("rotation.json", m.dump());
  const Result r = run({"critical", "--spectra", spectra.path(), "--decompose", x.path()});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("linear diagnostics") {
  const TempFile a("identity4.json", R"({"rows":4,"cols":4,"entries":[1,0,0,0,0,1,0,0,0,0,1,0,0,0,0,1]})");
  const Result r = run({"linear", "--A", a.path(), "--grassmann", "1", "--morse-report", "4"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("grassmann").at("hessian").at("index") == 3);
  CHECK(j.at("grassmann").at("hessian").at("nullity") == 3);
  CHECK(j.at("grassmann").at("grassmann_k") == 1);
  CHECK(j.at("morse_report").at("all_equal") == true);
  CHECK(run({"linear", "--A", a.path(), "--grassmann", "7"}).code == 1);
  CHECK(run({"linear"}).code == 1);
}

TEST_CASE("flow output is deterministic in the seed") {
  const std::vector<std::string> args{"flow", "--f", "nn", "--n", "4", "--seed", "5", "--count", "3",
                                      "--direction", "both"};
  const Result a = run(args);
  const Result b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j.at("seed") == 5);
  CHECK(j.at("trajectories").size() == 6);
  for (const auto& t : j.at("trajectories")) {
    CHECK(t.at("converged") == true);
    const bool forward = t.at("direction") == "forward";
    CHECK(t.at("classification").at("component") == (forward ? "max" : "min"));
    CHECK(t.at("hessian").at("index") == (forward ? 3 : 0));
    CHECK(t.at("hessian").at("nullity") == 3);
  }
  const Result other = run({"flow", "--f", "nn", "--n", "4", "--seed", "6", "--count", "3"});
  CHECK(other.out != a.out);
}

TEST_CASE("flow needs a seed and valid parameters") {
  CHECK(run({"flow", "--f", "nn", "--n", "4"}).code == 1);
  CHECK(run({"flow", "--f", "nn", "--n", "1", "--seed", "1"}).code == 1);
  CHECK(run({"flow", "--f", "quad", "--seed", "1"}).code == 1);
  CHECK(run({"flow", "--f", "nn", "--n", "3", "--seed", "1", "--step", "-1"}).code == 1);
  CHECK(run({"flow", "--f", "bogus", "--n", "3", "--seed", "1"}).code == 1);
}

TEST_CASE("flow on a quadratic problem classifies limits by filling") {
  const TempFile spectra("spectra_flow.json",
                         R"({"a":{"values":[1,2,3],"mults":[1,1,1]},"b":{"values":[1,2,3],"mults":[1,1,1]}})");
  const Result r = run({"flow", "--f", "quad", "--spectra", spectra.path(), "--seed", "3", "--count", "4"});
  REQUIRE(r.code == 0);
  for (const auto& t : json::parse(r.out).at("trajectories")) {
    CHECK(t.at("converged") == true);
    CHECK(t.at("classification").at("filling_index") == t.at("hessian").at("index"));
  }
}

TEST_CASE("prop-main counts") {
  const Result r = run({"prop-main", "--n", "5", "--samples", "200", "--seed", "9"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("passed") == 200);
  CHECK(j.at("failed") == 0);
  CHECK(j.at("max_deviation").get<double>() <= 1e-9);
  CHECK(j.at("seed") == 9);
  CHECK(run({"prop-main", "--n", "2", "--seed", "1"}).code == 1);
}

TEST_CASE("verify on one module") {
  const Result r = run({"verify", "--seed", "1", "--module", "combinatorics"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("all_passed") == true);
  for (const auto& p : j.at("properties")) {
    CHECK(p.at("module") == "combinatorics");
    CHECK_FALSE(p.contains("seconds"));
  }
  CHECK(run({"verify", "--seed", "1", "--module", "nope"}).code == 1);
}

TEST_CASE("usage errors and help") {
  CHECK(run({}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({"betti"}).code == 1);
  CHECK(run({"betti", "--n", "x"}).code == 1);
  CHECK(run({"betti", "--n", "0"}).code == 1);
  CHECK(run({"fillings", "--margins", "/nonexistent/file.json"}).code == 1);
  const Result help = run({"flow", "--help"});
  CHECK(help.code == 0);
  for (const char* flag : {"--f", "--spectra", "--n", "--seed", "--count", "--direction", "--step", "--grad-tol",
                           "--max-steps", "--reproject-every"})
    CHECK(help.out.find(flag) != std::string::npos);
}

TEST_CASE("JSON numbers round trip exactly") {
  const Result r = run({"prop-main", "--n", "4", "--samples", "10", "--seed", "2"});
  const json j = json::parse(r.out);
  const double v = j.at("max_deviation").get<double>();
  CHECK(json::parse(json(v).dump()).get<double>() == v);
  CHECK(json::parse(j.dump(2)) == j);
}

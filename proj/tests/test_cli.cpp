/*
 * Copyright 2026 The binscore Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "binscore/cli.hpp"
#include "doctest.h"

using binscore::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

int count_lines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("percent display rounds to one decimal") {
  using binscore::cli::percent_display;
  CHECK(percent_display(0.60655) == "60.7");
  CHECK(percent_display(1.00306) == "100.3");
  CHECK(percent_display(0.0) == "0.0");
  CHECK(percent_display(-1e-9) == "0.0");
  CHECK(percent_display(0.5795) == "58.0");
}

TEST_CASE("table1 reproduces all six rows") {
  const Outcome r = call({"table1"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 7);
  CHECK(r.out.find("MISMATCH") == std::string::npos);
  CHECK(r.out.find("specificity,wald,246,248,98.1,100.3") != std::string::npos);
}

TEST_CASE("interval subcommand") {
  const Outcome r = call({"interval", "--x", "29", "--n", "39", "--methods", "wald,wilson"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 3);
  CHECK(r.out.find("wilson,29,39,0.95,") != std::string::npos);

  const Outcome all = call({"interval", "--x", "0", "--n", "4"});
  CHECK(all.code == 0);
  CHECK(count_lines(all.out) == 12);
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(call({}).code == 2);
  CHECK(call({"interval", "--x", "11", "--n", "10"}).code == 2);
  CHECK(call({"interval", "--x", "1", "--n", "0"}).code == 2);
  CHECK(call({"interval", "--x", "1", "--n", "10", "--gamma", "1"}).code == 2);
  CHECK(call({"evaluate", "--n", "10", "--grid", "2"}).code == 2);
  CHECK(call({"evaluate", "--n", "10", "--epsilon", "0"}).code == 2);
  CHECK(call({"rank", "--levels", "0.9,0.95", "--weights", "1"}).code == 2);
  CHECK(call({"rank", "--scale", "log"}).code == 2);
  CHECK(call({"nonsense"}).code == 2);

  const Outcome bad = call({"interval", "--x", "1", "--n", "10", "--methods", "bogus"});
  CHECK(bad.code == 2);
  CHECK(bad.out.empty());
  CHECK(bad.err.find("clopper-pearson") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
  const Outcome r = call({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("evaluate") != std::string::npos);
}

TEST_CASE("evaluate writes sorted rows") {
  const Outcome r = call({"evaluate", "--n", "6", "--grid", "3", "--methods",
                          "wilson,agresti-coull", "--workers", "2"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "method,pi,cp,smoothed_cp,ew,eis,asym_eis,eis_deficit");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].rfind("agresti-coull,0.25,", 0) == 0);
  CHECK(rows[3].rfind("wilson,0.25,", 0) == 0);
  CHECK(rows[5].rfind("wilson,0.75,", 0) == 0);
}

TEST_CASE("rank output and worker independence") {
  const Outcome a = call({"rank", "--n", "8", "--scale", "uniform", "--workers", "1"});
  const Outcome b = call({"rank", "--n", "8", "--scale", "uniform", "--workers", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(count_lines(a.out) == 12);
  const Outcome range = call({"rank", "--n-range", "5:15:5", "--methods", "wald,wilson"});
  CHECK(range.code == 0);
  CHECK(count_lines(range.out) == 1 + 3 * 2 * 2);
  const Outcome wis = call({"rank", "--n", "10", "--levels", "0.9,0.95,0.99",
                            "--scale", "varstab", "--methods", "wald,wilson"});
  CHECK(wis.out.find("wald,10,varstab,0.9:1;0.95:1;0.99:1,") != std::string::npos);
}

TEST_CASE("config file values sit below explicit flags") {
  const auto cfg = temp_file("binscore_cli_test.cfg");
  {
    std::ofstream f(cfg);
    f << "# defaults\nn = 20\nmethods=wald\ngrid=3\n";
  }
  const Outcome from_file = call({"evaluate", "--config", cfg.string()});
  CHECK(from_file.code == 0);
  CHECK(count_lines(from_file.out) == 4);
  CHECK(from_file.out.find("wald,0.25,") != std::string::npos);

  const Outcome overridden = call({"evaluate", "--config", cfg.string(), "--methods", "wilson"});
  CHECK(overridden.code == 0);
  CHECK(overridden.out.find("wilson,0.25,") != std::string::npos);
  CHECK(overridden.out.find("wald") == std::string::npos);

  CHECK(call({"evaluate", "--config", "/nonexistent/file.cfg"}).code == 2);
  std::filesystem::remove(cfg);
}

TEST_CASE("out writes to a file") {
  const auto path = temp_file("binscore_cli_test.csv");
  const Outcome r = call({"table1", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("quantity,method", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("verify exit codes follow the report") {
  CHECK(call({"verify", "--replications", "20000", "--configs", "2"}).code == 0);
  const Outcome fail = call({"verify", "--replications", "20000", "--configs", "2",
                             "--tolerance-scale", "0"});
  CHECK(fail.code == 1);
  CHECK(fail.out.find("FAIL") != std::string::npos);
}

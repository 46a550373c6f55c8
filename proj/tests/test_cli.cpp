// Copyright 2026 The qwproj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() / ("qwproj_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(QWPROJ_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("run writes a normalized distribution") {
  Sandbox box;
  const std::string dist = box.path("d.csv");
  CHECK(run("run --scenario grover2d_to_lazy --steps 30 --out-dist " + dist) == 0);
  std::istringstream lines(slurp(dist));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "x,y,probability");
  double total = 0.0;
  int rows = 0;
  while (std::getline(lines, line)) {
    total += std::stod(line.substr(line.rfind(',') + 1));
    ++rows;
  }
  CHECK(rows > 100);
  CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("run rejects bad configuration") {
  CHECK(run("run --scenario grover2d_to_lazy --steps -1") == 2);
  CHECK(run("run --scenario unknown") == 2);
  CHECK(run("run") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("run --scenario line_to_circle --phi pie") == 2);
}

TEST_CASE("artifacts are byte-identical across runs") {
  Sandbox box;
  const std::string args = "run --scenario line_to_circle --phi pi/3 --steps 25 --projected";
  REQUIRE(run(args + " --out-state " + box.path("a.json") + " --out-dist " + box.path("a.csv")) == 0);
  REQUIRE(run(args + " --out-state " + box.path("b.json") + " --out-dist " + box.path("b.csv")) == 0);
  CHECK(slurp(box.path("a.json")) == slurp(box.path("b.json")));
  CHECK(slurp(box.path("a.csv")) == slurp(box.path("b.csv")));
  const auto state = nlohmann::json::parse(slurp(box.path("a.json")));
  CHECK(state["space"] == "circle");
}

TEST_CASE("verify") {
  Sandbox box;
  const std::string report = box.path("r.json");
  CHECK(run("verify --scenario grover2d_to_lazy --steps 30 --out-report " + report) == 0);
  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["passed"] == true);
  CHECK(j["steps"] == 30);
  CHECK(j["max_residual"].get<double>() < 1e-10);

  // Antisymmetric under rho = x: the projection vanishes.
  std::ofstream(box.path("anti.json"))
      << R"({"space":"z2","support":[{"pos":[0,0],"coin":[[1,0],[0,0],[0,0],[0,0]]},)"
      << R"({"pos":[0,1],"coin":[[-1,0],[0,0],[0,0],[0,0]]}]})";
  CHECK(run("verify --scenario grover2d_to_lazy --init " + box.path("anti.json")) == 3);
  CHECK(run("run --projected --scenario grover2d_to_lazy --init " + box.path("anti.json")) == 3);

  std::ofstream(box.path("id.json"))
      << R"({"space":{"space":"z2"},"coin":{"coin":"grover4"},"projection":{"rho":"identity"}})";
  CHECK(run("verify --config " + box.path("id.json") + " --steps 12 --out-report " + report) == 0);
  CHECK(nlohmann::json::parse(slurp(report))["max_residual"] == 0.0);

  CHECK(run("verify --scenario line_to_circle --phi pi/3 --steps 30") == 0);
  CHECK(run("verify --scenario grover2d_to_lazy --tol 0") == 2);
}

TEST_CASE("reconstruct") {
  Sandbox box;
  const std::string report = box.path("rec.json");
  CHECK(run("reconstruct --scenario grover2d_to_lazy --k 2 --l 1 --steps 10 --out-report " +
            report) == 0);
  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["grid_size"] == 21);
  CHECK(j["max_error"].get<double>() < 1e-10);
  CHECK(j["state"]["space"] == "z2");

  CHECK(run("reconstruct --scenario grover2d_to_lazy --k 2 --l 4") == 2);
  CHECK(run("reconstruct --scenario grover2d_to_lazy --k 2 --l 1 --steps 10 --phi-samples 15") == 2);
  CHECK(run("reconstruct --scenario grover2d_to_lazy --steps 0 --out-report " + report) == 0);
  CHECK(nlohmann::json::parse(slurp(report))["max_error"] == 0.0);
}

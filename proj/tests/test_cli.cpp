/*
 * Copyright 2026 The uwbnlos Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <string>

#include "temp_dir.hpp"

using uwbnlos::testing::slurp;
using uwbnlos::testing::spit;
using uwbnlos::testing::TempDir;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string("\"") + UWBNLOS_CLI_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("help lists the exit codes") {
  const auto r = cli("--help");
  CHECK(r.code == 0);
  CHECK(r.out.find("train") != std::string::npos);
  CHECK(r.out.find("reconstruct") != std::string::npos);
  CHECK(r.out.find("7") != std::string::npos);
}

TEST_CASE("bad arguments exit with 2") {
  CHECK(cli("train").code == 2);
  CHECK(cli("train --data x.csv --mode bogus").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("reconstruct").code == 2);
}

TEST_CASE("synth, train, evaluate and predict") {
  TempDir dir;
  const auto data = dir / "two.csv";
  REQUIRE(cli("synth --kind two_class --n 200 --seed 7 --out " + q(data)).code == 0);
  CHECK(cli("synth --kind two_class --n 200 --seed 7 --out " + q(data)).code == 7);

  const std::string base = "train --data " + q(data) + " --mode raw --ica off --rounds 25 --seed 7 --out-model ";
  const auto a = cli(base + q(dir / "a.json"));
  REQUIRE(a.code == 0);
  CHECK(a.out.find("Accuracy") != std::string::npos);
  CHECK(a.out.find("# csv-begin") != std::string::npos);
  REQUIRE(cli(base + q(dir / "b.json")).code == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(cli(base + q(dir / "a.json")).code == 7);
  CHECK(cli(base + q(dir / "a.json") + " --force").code == 0);

  const auto ev = cli("evaluate --model " + q(dir / "a.json") + " --data " + q(data));
  CHECK(ev.code == 0);
  CHECK(ev.out.find("Accuracy") != std::string::npos);

  spit(dir / "windows.csv", "0.1,5\n-3,0.2\n");
  const auto pr = cli("predict --model " + q(dir / "a.json") + " --data " + q(dir / "windows.csv"));
  CHECK(pr.code == 0);
  CHECK(pr.out.rfind("row,label,margin\n", 0) == 0);
  CHECK(std::count(pr.out.begin(), pr.out.end(), '\n') == 3);

  spit(dir / "wide.csv", "1,0.1,5,7\n0,-3,0.2,1\n");
  CHECK(cli("evaluate --model " + q(dir / "a.json") + " --data " + q(dir / "wide.csv")).code == 4);

  spit(dir / "broken.json", "{\"schema_version\": 1, \"boost\": ");
  CHECK(cli("evaluate --model " + q(dir / "broken.json") + " --data " + q(data)).code == 6);

  spit(dir / "empty.csv", "");
  CHECK(cli("train --data " + q(dir / "empty.csv")).code == 3);
  CHECK(cli("train --data " + q(dir / "missing.csv")).code == 3);
}

TEST_CASE("numerical preconditions exit with 5") {
  TempDir dir;
  // Two columns that are exact copies: whitening cannot keep both.
  std::string text;
  for (int i = 0; i < 40; ++i) {
    const double v = (i * 37 % 11) - 5.0;
    text += std::to_string(i % 2) + "," + std::to_string(v) + "," + std::to_string(v) + "\n";
  }
  spit(dir / "dup.csv", text);
  CHECK(cli("train --data " + q(dir / "dup.csv") + " --mode raw --components 2").code == 5);
}

TEST_CASE("reconstruct finds a hand-made matrix") {
  // tp=3 fp=1 tn=4 fn=2: sens 60, spec 80, prec 75, npv 66.67, acc 70,
  // f1 66.67, mcc 40.82
  const auto r = cli(
      "reconstruct --targets 60,80,75,66.666667,70,66.666667,40.824829 "
      "--n-min 10 --n-max 10 --tol 0.001 --no-rounding");
  CHECK(r.code == 0);
  CHECK(r.out.find("10,3,1,4,2") != std::string::npos);
}

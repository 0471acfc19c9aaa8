// Copyright 2026 The IVLMap Engine Authors
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


#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"
#include "ivlmap/archive.hpp"
#include "ivlmap/io.hpp"
#include "oracles.hpp"

namespace ivlmap {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// One fixture dataset and map archive shared by the tests below.
class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = testing::temp_dir("cli");
    const auto synth = cli({"synth", "--fixture", "--out", (dir_ / "data").string()});
    ASSERT_EQ(synth.code, 0) << synth.err;
    const auto build = cli({"build", "--dataset", manifest(), "--out", archive(), "--log",
                            (dir_ / "frames.jsonl").string()});
    ASSERT_EQ(build.code, 0) << build.err;
    build_out_ = build.out;
  }
  static std::string manifest() { return (dir_ / "data" / "manifest.json").string(); }
  static std::string archive() { return (dir_ / "map.ivlmap").string(); }

  static inline fs::path dir_;
  static inline std::string build_out_;
};

TEST(CliUsage, UnknownSubcommand) {
  const auto r = cli({"fly"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unknown subcommand 'fly'"), std::string::npos);
  EXPECT_NE(r.err.find("synth"), std::string::npos);
}

TEST(CliUsage, MissingArgumentsAndHelp) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"build", "--dataset", "x.json"}).code, 2);
  EXPECT_EQ(cli({"query", "--map", "m.ivlmap"}).code, 2);
  EXPECT_EQ(cli({"synth", "--out", "d", "--sigma", "-1"}).code, 2);
  const auto nav = cli({"navigate", "--map", "m.ivlmap"});
  EXPECT_EQ(nav.code, 2);
  EXPECT_NE(nav.err.find("--program or --command"), std::string::npos);
  const auto help = cli({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("export-fig"), std::string::npos);
}

TEST(CliUsage, DomainErrorsExitOne) {
  const auto r = cli({"query", "--map", "/nonexistent.ivlmap", "table"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u);
  EXPECT_EQ(cli({"build", "--dataset", "/nonexistent/manifest.json", "--out", "x"}).code, 1);
}

TEST_F(Cli, BuildReportsMasksAndWritesLog) {
  EXPECT_NE(build_out_.find("masks 10 (surrogate)"), std::string::npos) << build_out_;
  std::ifstream log(dir_ / "frames.jsonl");
  int lines = 0;
  for (std::string line; std::getline(log, line);) ++lines;
  EXPECT_EQ(std::size_t(lines), scenegen::fixture_scene_spec().path.size());
  // Same inputs, same archive.
  const auto again = (dir_ / "again.ivlmap").string();
  ASSERT_EQ(cli({"build", "--dataset", manifest(), "--out", again}).code, 0);
  EXPECT_EQ(io::read_file(again), io::read_file(archive()));
}

TEST_F(Cli, QueryNamesTheThirdYellowTable) {
  const auto r = cli({"query", "--map", archive(), "table", "3", "yellow"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto map = io::load_map(archive()).map;
  const int id = testing::left_to_right_oracle({"table", 0, "yellow"}, map)[2];
  EXPECT_NE(r.out.find("record " + std::to_string(id) + ": table (yellow)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("ordering left_to_right"), std::string::npos);
  const auto missing = cli({"query", "--map", archive(), "table", "9", "yellow"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_EQ(cli({"query", "--map", archive(), "table", "--ordering", "random"}).code, 1);
}

TEST_F(Cli, NavigateProgramWritesTrajectory) {
  std::ofstream(dir_ / "p.nav") << "obj = get_obj_attributes(\"sofa\", 0, \"red\")\n"
                                   "move_to_right(obj)\nstop()\n";
  const auto csv = (dir_ / "traj.csv").string();
  const auto r = cli({"navigate", "--map", archive(), "--program", (dir_ / "p.nav").string(),
                      "--start", "250,250", "--csv", csv, "--overlay", (dir_ / "o.ppm").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("move_to_right"), std::string::npos);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "step,px,py,x_m,z_m,heading_deg,event,note");
  EXPECT_EQ(io::read_ppm(dir_ / "o.ppm").rows(), 500);

  const auto fig = cli({"export-fig", "--map", archive(), "--out-dir", (dir_ / "fig").string(),
                        "--trajectory", csv});
  ASSERT_EQ(fig.code, 0) << fig.err;
  for (const char* f : {"bev.ppm", "semantic.ppm", "instances.ppm", "trajectory.ppm"})
    EXPECT_TRUE(fs::exists(dir_ / "fig" / f)) << f;
}

TEST_F(Cli, NavigateReportsPositionedErrors) {
  std::ofstream(dir_ / "bad.nav") << "turn(90)\n  dance()\n";
  const auto r = cli({"navigate", "--map", archive(), "--program", (dir_ / "bad.nav").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("bad.nav:2:3: unknown function 'dance'"), std::string::npos) << r.err;
  std::ofstream(dir_ / "run.nav") << "face(\"piano\")\n";
  const auto e = cli({"navigate", "--map", archive(), "--program", (dir_ / "run.nav").string()});
  EXPECT_EQ(e.code, 1);
  EXPECT_NE(e.err.find("line 1:1"), std::string::npos) << e.err;
}

TEST_F(Cli, NavigateCommandWithoutTranslator) {
  const auto r = cli({"navigate", "--map", archive(), "--command",
                      "go to the third yellow table and then the black sofa."});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("attributes [(table, 3, yellow), (sofa, 0, black)]"), std::string::npos);
  EXPECT_EQ(cli({"navigate", "--map", archive(), "--command", "x", "--translator", "nohost"}).code, 1);
}

TEST_F(Cli, EvalOnTheArchive) {
  std::ofstream(dir_ / "cfg.json") << R"({"tasks": {"per_scene": 2, "seed": 4}})";
  const auto report = (dir_ / "report.json").string();
  const auto r = cli({"eval", "--map", archive(), "--dataset", manifest(), "--config",
                      (dir_ / "cfg.json").string(), "--report", report});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("SN 8/8 SR 1.0000 label acc 1.0000 color acc 1.0000"), std::string::npos)
      << r.out;
  EXPECT_TRUE(fs::exists(report));
  EXPECT_EQ(cli({"eval", "--map", archive()}).code, 1);
}

TEST_F(Cli, BadConfigIsADomainError) {
  std::ofstream(dir_ / "bad.json") << R"({"thresholds": {"sucess": 1}})";
  const auto r = cli({"eval", "--config", (dir_ / "bad.json").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("unknown key 'thresholds.sucess'"), std::string::npos) << r.err;
}

}  // namespace
}  // namespace ivlmap

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = NUMERA_CLI_PATH;
const std::string kData = NUMERA_TEST_DATA_DIR;

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" + kCli + "' " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t c = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++c;
  return c;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(CliAnalyze, FibonacciModThree) {
  const auto r = run("analyze fibonacci 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"total_states\": 18"), std::string::npos);
}

TEST(CliAnalyze, FibonacciModTwo) {
  const auto r = run("analyze fibonacci 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"total_states\": 8"), std::string::npos);
}

TEST(CliAnalyze, Sqrt2Plus1ModFour) {
  const auto r = run("analyze sqrt2plus1 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"k\": 2"), std::string::npos);
  EXPECT_NE(r.out.find("\"S\": 8"), std::string::npos);
  EXPECT_NE(r.out.find("\"infinite_states\": 16"), std::string::npos);
}

TEST(CliAnalyze, SystemFile) {
  const auto r = run("analyze '" + kData + "/golden_system.json' 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"system\": \"golden\""), std::string::npos);
  EXPECT_NE(r.out.find("\"infinite_states\": 16"), std::string::npos);
}

TEST(CliAnalyze, OracleLengthFromEnvironment) {
  const auto r = run("analyze fibonacci 2", "NUMERA_ORACLE_LEN=5");
  EXPECT_NE(r.out.find("\"oracle_length\": 5"), std::string::npos);
  const auto flag = run("analyze fibonacci 2 --oracle-length 4", "NUMERA_ORACLE_LEN=5");
  EXPECT_NE(flag.out.find("\"oracle_length\": 4"), std::string::npos);
}

TEST(CliExitCodes, InputErrors) {
  EXPECT_EQ(run("analyze nope 3").code, 1);
  EXPECT_EQ(run("analyze fibonacci 1").code, 1);
  EXPECT_EQ(run("analyze fibonacci three").code, 1);
  EXPECT_EQ(run("analyze '" + kData + "/missing.json' 3").code, 1);
  EXPECT_EQ(run("analyze '" + kData + "/malformed.json' 3").code, 1);
  EXPECT_EQ(run("dot fibonacci banana").code, 1);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("sweep --systems fibonacci --m-min 1 --m-max 3").code, 1);
}

TEST(CliDot, FibonacciNumerationLanguage) {
  const auto r = run("dot fibonacci numlang");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "digraph automaton {\n"
            "  rankdir=LR;\n"
            "  node [shape=circle];\n"
            "  init [shape=point, style=invis];\n"
            "  init -> q0;\n"
            "  q0 [shape=doublecircle];\n"
            "  q1 [shape=doublecircle];\n"
            "  q0 -> q0 [label=\"0\"];\n"
            "  q0 -> q1 [label=\"1\"];\n"
            "  q1 -> q0 [label=\"0\"];\n"
            "}\n");
}

TEST(CliDot, TetranacciNumerationLanguage) {
  const auto r = run("dot lbonacci:4 numlang");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count(r.out, "[shape=doublecircle]"), 4u);
  // 0 returns to q0 from every state; 1 advances along q0 -> q1 -> q2 -> q3.
  for (const char* edge : {"q0 -> q0 [label=\"0\"]", "q1 -> q0 [label=\"0\"]", "q2 -> q0 [label=\"0\"]",
                           "q3 -> q0 [label=\"0\"]", "q0 -> q1 [label=\"1\"]", "q1 -> q2 [label=\"1\"]",
                           "q2 -> q3 [label=\"1\"]"}) {
    EXPECT_NE(r.out.find(edge), std::string::npos) << edge;
  }
  EXPECT_EQ(count(r.out, " -> q"), 8u);
}

TEST(CliDot, FibonacciModThreeHasEighteenNodes) {
  const auto r = run("dot fibonacci 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("  q17"), std::string::npos);
  EXPECT_EQ(r.out.find("q18"), std::string::npos);
  EXPECT_EQ(count(r.out, "[shape=doublecircle]"), 6u);
}

TEST(CliDot, WritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "numera_cli_test.dot";
  std::filesystem::remove(path);
  const auto r = run("dot fibonacci 3 --out '" + path.string() + "'");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(path.string()), run("dot fibonacci 3").out);
  std::filesystem::remove(path);
}

TEST(CliTable, FibonacciModThreeGolden) {
  const auto r = run("table fibonacci 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(kData + "/fibonacci_mod3.table"));
}

TEST(CliHypotheses, Presets) {
  for (const char* name : {"fibonacci", "lbonacci:3", "sqrt2plus1"}) {
    const auto r = run(std::string("hypotheses ") + name);
    EXPECT_EQ(r.code, 0) << name;
    EXPECT_NE(r.out.find("\"h1\": true"), std::string::npos) << name;
    EXPECT_NE(r.out.find("\"h2\": true"), std::string::npos) << name;
  }
}

TEST(CliSweep, FibonacciInfiniteStatesAreTwiceMSquared) {
  const auto r = run("sweep --systems fibonacci --m-min 2 --m-max 10 --oracle-length 8");
  EXPECT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 10u);
  const auto& header = rows.front();
  const auto col = static_cast<std::size_t>(std::find(header.begin(), header.end(), "infinite_states") - header.begin());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int m = std::stoi(rows[i][1]);
    EXPECT_EQ(std::stoi(rows[i][col]), 2 * m * m) << m;
  }
}

TEST(CliSweep, LbonacciRowsInOrder) {
  const auto r = run("sweep --systems lbonacci:2,lbonacci:3 --m-min 2 --m-max 4 --oracle-length 6");
  EXPECT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 7u);
  const int expected[] = {8, 18, 32, 24, 81, 192};
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][0], i <= 3 ? "lbonacci:2" : "lbonacci:3");
    EXPECT_EQ(std::stoi(rows[i][9]), expected[i - 1]);
  }
}

TEST(CliSweep, EmptyRangeIsHeaderOnly) {
  const auto r = run("sweep --systems fibonacci --m-min 5 --m-max 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count(r.out, "\n"), 1u);
  EXPECT_EQ(r.out.rfind("system,m,", 0), 0u);
}

TEST(CliSweep, FailedCellsBecomeErrorRows) {
  const auto r = run("sweep --systems fibonacci,'" + kData + "/missing.json' --m-min 2 --m-max 3 --oracle-length 4");
  EXPECT_EQ(r.code, 2);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[1][0], "fibonacci");
  EXPECT_NE(r.out.find("cannot read"), std::string::npos);
}

TEST(CliDeterminism, ByteIdenticalOutputs) {
  const std::string args = "sweep --systems fibonacci,sqrt2plus1,lbonacci:3 --m-min 2 --m-max 6 --oracle-length 6";
  const auto serial = run(args + " --jobs 1");
  const auto parallel = run(args + " --jobs 4");
  EXPECT_EQ(serial.code, 0);
  EXPECT_EQ(serial.out, parallel.out);
  EXPECT_EQ(run("analyze lbonacci:3 5").out, run("analyze lbonacci:3 5").out);
  EXPECT_EQ(run("dot sqrt2plus1 6").out, run("dot sqrt2plus1 6").out);
}

}  // namespace

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// runs the CLI with stderr folded into stdout
RunResult run(const std::string& args) {
  RunResult r;
  const std::string cmd = std::string(O3SIM_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p))
    r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// data lines only: drop '#' headers and blank lines
std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

std::string strip_timestamp(const std::string& text) {
  std::string out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    if (line.rfind("# generated", 0) != 0) out += line + "\n";
  return out;
}

}  // namespace

TEST_CASE("ed emits the frozen reference row") {
  const auto r = run("ed --L 2 --g2 1 --lmax 3");
  CHECK(r.exit_code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "n_sites,g_sq,l_max,e0_per_site,e1,gap,truncation_error");
  CHECK(lines[1].find("-0.278641900") != std::string::npos);
  CHECK(lines[1].find("0.648232557") != std::string::npos);
}

TEST_CASE("closed-form cc minimization") {
  const auto r = run("cc --L 2 --g2 1");
  CHECK(r.exit_code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].find("0.83945") != std::string::npos);
  CHECK(lines[1].find("-0.2765048") != std::string::npos);
}

TEST_CASE("unknown flag exits 2 with an error object") {
  const auto r = run("ed --frobnicate");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("\"error\"") != std::string::npos);
}

TEST_CASE("missing sub-config exits 2 naming the field") {
  const auto r = run("sphere-ed --L 2 --g2 1 --lmax 3");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("lambda_cutoff") != std::string::npos);
}

TEST_CASE("invalid model rejected with exit 2") {
  const auto r = run("ed --L 1 --g2 1");
  CHECK(r.exit_code == 2);
}

TEST_CASE("byte-identical reruns modulo the timestamp header") {
  const std::string args =
      "cc --L 2 --g2 1 --method mc --alpha 0.839 --samples 5000 --seed 7 "
      "--sampler exact_radial_alpha0";
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(strip_timestamp(a.out) == strip_timestamp(b.out));
  CHECK(a.out.find("# generated ") != std::string::npos);
}

TEST_CASE("config file with flag override; flags win") {
  const fs::path cfg = fs::temp_directory_path() / "o3sim_cfg.json";
  {
    std::ofstream f(cfg);
    f << R"({"command":"ed","model":{"n_sites":2,"g_sq":0.5,"l_max":3}})";
  }
  const auto file_only = run("ed --config " + cfg.string());
  CHECK(file_only.exit_code == 0);
  CHECK(data_lines(file_only.out)[1].rfind("2,0.5,3,", 0) == 0);

  const auto overridden = run("ed --config " + cfg.string() + " --g2 1");
  CHECK(overridden.exit_code == 0);
  CHECK(data_lines(overridden.out)[1].rfind("2,1,3,", 0) == 0);
  CHECK(data_lines(overridden.out)[1].find("-0.278641900") !=
        std::string::npos);
  fs::remove(cfg);
}

TEST_CASE("config echo round-trips through --config") {
  // feed the JSON-emitted config back in; results must be identical
  const auto first = run("ed --L 2 --g2 2 --lmax 2 --format json");
  REQUIRE(first.exit_code == 0);
  const auto cfg_pos = first.out.find("\"config\"");
  REQUIRE(cfg_pos != std::string::npos);
  // extract the config object by brace counting
  const auto start = first.out.find('{', cfg_pos);
  std::size_t depth = 0, end = start;
  for (std::size_t i = start; i < first.out.size(); ++i) {
    if (first.out[i] == '{') ++depth;
    if (first.out[i] == '}' && --depth == 0) {
      end = i + 1;
      break;
    }
  }
  const fs::path cfg = fs::temp_directory_path() / "o3sim_echo.json";
  {
    std::ofstream f(cfg);
    f << first.out.substr(start, end - start);
  }
  const auto second = run("ed --config " + cfg.string() + " --format json");
  CHECK(second.exit_code == 0);
  CHECK(strip_timestamp(second.out)
            .find("\"rows\"") != std::string::npos);
  // identical everything except the "generated" stamp
  auto strip_json_stamp = [](std::string s) {
    const auto p = s.find("\"generated\"");
    if (p == std::string::npos) return s;
    const auto q = s.find('\n', p);
    return s.erase(p, q - p);
  };
  CHECK(strip_json_stamp(first.out) == strip_json_stamp(second.out));
  fs::remove(cfg);
}

TEST_CASE("sweep merges rows and handles the empty list") {
  const auto r =
      run("sweep --command ed --axis model.g_sq --values 0.5,1 --L 2 --lmax 2");
  CHECK(r.exit_code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].rfind("model.g_sq,", 0) == 0);
  CHECK(lines[1].rfind("0.5,", 0) == 0);
  CHECK(lines[2].rfind("1,", 0) == 0);

  const auto empty = run("sweep --command ed --axis model.g_sq --values \"\"");
  CHECK(empty.exit_code == 0);
  CHECK(data_lines(empty.out).size() == 1);  // header only
}

TEST_CASE("output file writing") {
  const fs::path out = fs::temp_directory_path() / "o3sim_out.csv";
  fs::remove(out);
  const auto r = run("ed --L 2 --g2 1 --lmax 2 -o " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out));
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().find("e0_per_site") != std::string::npos);
  fs::remove(out);
}

TEST_CASE("numeric failures exit 1") {
  // a Hilbert space beyond the dimension cap trips the numeric guard
  const auto r = run("ed --L 12 --g2 1 --lmax 5");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("\"type\":\"numeric\"") != std::string::npos);
}

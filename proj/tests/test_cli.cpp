#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(FERMAT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::vector<long long>> parse_csv_matrix(const std::string& text) {
  std::vector<std::vector<long long>> rows;
  std::size_t pos = text.find('\n');  // skip the label header line
  REQUIRE(pos != std::string::npos);
  ++pos;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    std::vector<long long> row;
    std::size_t p = 0;
    while (p <= line.size()) {
      std::size_t q = line.find(',', p);
      if (q == std::string::npos) q = line.size();
      row.push_back(std::stoll(line.substr(p, q - p)));
      p = q + 1;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("basis listing sizes") {
  auto ms = run_cli("basis --n 3 --space ms");
  CHECK(ms.exit_code == 0);
  auto j = nlohmann::json::parse(ms.out);
  CHECK(j["subject"] == "basis");
  CHECK(j["labels"].size() == 10);  // n^2 + 1
  CHECK(j["labels"][0] == "y[1,0]");
  CHECK(j["labels"][9] == "y[0,2]");

  auto h1 = run_cli("basis --n 3 --space h1");
  CHECK(h1.exit_code == 0);
  auto jh = nlohmann::json::parse(h1.out);
  CHECK(jh["subject"] == "homology");
  CHECK(jh["labels"].size() == 2);  // (n-1)(n-2)
  CHECK(jh["payload"].size() == 2);

  auto empty = run_cli("basis --n 2 --space h1");
  CHECK(empty.exit_code == 0);
  CHECK(nlohmann::json::parse(empty.out)["labels"].empty());
}

TEST_CASE("output is byte-identical across runs and JSON round-trips") {
  auto a = run_cli("reduce --n 3 --symbol 1,2,5");
  auto b = run_cli("reduce --n 3 --symbol 1,2,5");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j.dump(2) + "\n" == a.out);
}

TEST_CASE("reduce examples") {
  // [A B^2 alpha_5] = -y[1,2]: position (1-1)*3 + 2 in the y-block.
  auto r = run_cli("reduce --n 3 --symbol 1,2,5");
  auto j = nlohmann::json::parse(r.out);
  std::vector<std::string> expect{"0", "0", "-1", "0", "0", "0", "0", "0", "0", "0"};
  CHECK(j["payload"][0] == expect);

  // [alpha_3] is -x[0,0]: reduce(0,0,3) + reduce(0,0,0) = 0.
  auto a = nlohmann::json::parse(run_cli("reduce --n 3 --symbol 0,0,3").out);
  auto b = nlohmann::json::parse(run_cli("reduce --n 3 --symbol 0,0,0").out);
  for (std::size_t i = 0; i < 10; ++i) {
    long long va = std::stoll(a["payload"][0][i].get<std::string>());
    long long vb = std::stoll(b["payload"][0][i].get<std::string>());
    CHECK(va + vb == 0);
  }
}

TEST_CASE("boundary of x[0,0]") {
  auto r = run_cli("boundary --n 3 --symbol 0,0,0");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  // Cusp order: zero block, one block, infinity block.
  std::vector<std::string> expect{"-1", "0", "0", "0", "0", "0", "1", "0", "0"};
  CHECK(j["payload"][0] == expect);
  CHECK(j["labels"][0] == "(zero,0)");
  CHECK(j["labels"][6] == "(infinity,0)");
}

TEST_CASE("csv and json payloads encode the same matrix") {
  for (const std::string& spec :
       {std::string("action --n 3 --gen e0e1"), std::string("reduce --n 2 --symbol 0,0,0"),
        std::string("boundary --n 3 --symbol 1,1,2"), std::string("basis --n 4 --space h1")}) {
    auto js = run_cli(spec + " --format json");
    auto cs = run_cli(spec + " --format csv");
    CHECK(js.exit_code == 0);
    CHECK(cs.exit_code == 0);
    auto j = nlohmann::json::parse(js.out);
    auto csv = parse_csv_matrix(cs.out);
    REQUIRE(csv.size() == j["payload"].size());
    for (std::size_t r = 0; r < csv.size(); ++r) {
      REQUIRE(csv[r].size() == j["payload"][r].size());
      for (std::size_t c = 0; c < csv[r].size(); ++c)
        CHECK(csv[r][c] ==
              std::stoll(j["payload"][r][c].get<std::string>()));
    }
  }
}

TEST_CASE("monodromy for n = 3 has trace -1 and determinant 1") {
  auto r = run_cli("monodromy --n 3");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["subject"] == "monodromy");
  CHECK(j["convention"] == "columns-are-images");
  auto get = [&](int a, int b) {
    return std::stoll(j["payload"][a][b].get<std::string>());
  };
  CHECK(get(0, 0) + get(1, 1) == -1);
  CHECK(get(0, 0) * get(1, 1) - get(0, 1) * get(1, 0) == 1);
}

TEST_CASE("monodromy for n = 4 has order 4") {
  auto j = nlohmann::json::parse(run_cli("monodromy --n 4").out);
  const std::size_t d = j["payload"].size();
  REQUIRE(d == 6);
  std::vector<std::vector<long long>> m(d, std::vector<long long>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      m[a][b] = std::stoll(j["payload"][a][b].get<std::string>());
  auto matmul = [&](const auto& x, const auto& y) {
    std::vector<std::vector<long long>> z(d, std::vector<long long>(d));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t b = 0; b < d; ++b) z[a][b] += x[a][k] * y[k][b];
    return z;
  };
  auto p = m;
  for (int i = 0; i < 3; ++i) p = matmul(p, m);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      CHECK(p[a][b] == (a == b ? 1 : 0));
}

TEST_CASE("phi action is reported on the symbol space with a note") {
  auto j = nlohmann::json::parse(run_cli("action --n 2 --gen phi").out);
  CHECK(j.contains("note"));
  CHECK(j["labels"].size() == 5);   // n^2 + 1
  CHECK(j["payload"].size() == 5);  // full symbol-space matrix
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("action --n 3 --gen bogus").exit_code == 1);
  CHECK(run_cli("basis --space ms").exit_code == 1);        // missing --n
  CHECK(run_cli("reduce --n 3 --symbol nonsense").exit_code == 1);
  CHECK(run_cli("reduce --n 3 --symbol 0,0,7").exit_code == 1);
  CHECK(run_cli("basis --n 0 --space ms").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
}

TEST_CASE("verify passes cleanly and catches injected corruption") {
  auto ok = run_cli("verify --n-max 2");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);
  CHECK(ok.out.find("FAIL") == std::string::npos);

  auto bad = run_cli("verify --n-max 2 --inject-corruption");
  CHECK(bad.exit_code == 2);
  CHECK(bad.out.find("FAIL") != std::string::npos);

  auto json_report = run_cli("verify --n-max 1 --format json");
  CHECK(json_report.exit_code == 0);
  auto j = nlohmann::json::parse(json_report.out);
  CHECK(j["subject"] == "verify");
  CHECK(!j["checks"].empty());
}

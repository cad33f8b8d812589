#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "kh/cli.hpp"
#include "kh/laurent.hpp"
#include "kh/table.hpp"
#include "support/demo_fixture.hpp"

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p.string();
}

}  // namespace

TEST_CASE("kh subcommand on the unknot") {
  std::string pd = write_temp("kh_unknot.pd", "PD[loops=1]");
  auto res = kh::run_cli({"kh", pd, "--ring", "q", "--format", "json"});
  REQUIRE(res.exit_code == 0);
  auto t = kh::GradedTable::from_json(nlohmann::ordered_json::parse(res.out));
  CHECK(t.rank(0, 1) == 1);
  CHECK(t.rank(0, -1) == 1);
  CHECK(t.total_rank() == 2);
}

TEST_CASE("emitted json tables re-parse to equal tables") {
  std::string pd = write_temp("kh_tref.pd", "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
  for (const char* ring : {"q", "z", "f2"}) {
    auto res = kh::run_cli({"kh", pd, "--ring", ring, "--format", "json"});
    REQUIRE(res.exit_code == 0);
    auto t = kh::GradedTable::from_json(nlohmann::ordered_json::parse(res.out));
    CHECK(t.to_json().dump(2) + "\n" == res.out);
  }
}

TEST_CASE("jones matches the euler characteristic via the cli") {
  std::string pd = write_temp("kh_tref2.pd", "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
  auto jones = kh::run_cli({"jones", pd, "--format", "json"});
  REQUIRE(jones.exit_code == 0);
  auto poly = nlohmann::ordered_json::parse(jones.out)["unnormalized"];
  auto table = kh::run_cli({"kh", pd, "--ring", "q", "--format", "json"});
  auto t = kh::GradedTable::from_json(nlohmann::ordered_json::parse(table.out));
  kh::LaurentPoly euler;
  for (const auto& [tq, cell] : t.cells()) {
    mpz_class c = tq.first % 2 == 0 ? cell.rank : -cell.rank;
    euler.set_coeff(2 * tq.second, euler.coeff(2 * tq.second) + c);
  }
  CHECK(kh::LaurentPoly::from_json(poly) == euler);
}

TEST_CASE("compare exit codes") {
  std::string a = write_temp("cmp_a.pd", "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
  std::string b = write_temp("cmp_b.pd", "PD[loops=1]");
  auto same = kh::run_cli({"compare", a, a, "--ring", "q"});
  CHECK(same.exit_code == 0);
  CHECK(same.out.find("identical") != std::string::npos);
  auto diff = kh::run_cli({"compare", a, b, "--ring", "q"});
  CHECK(diff.exit_code == 1);
  CHECK(diff.out.find("first difference") != std::string::npos);
}

TEST_CASE("input errors give exit code 2") {
  std::string bad = write_temp("bad.pd", "PD[X[1,2,3,4]]");
  CHECK(kh::run_cli({"kh", bad}).exit_code == 2);
  CHECK(kh::run_cli({"kh", "/nonexistent/file.pd"}).exit_code == 2);
  CHECK(kh::run_cli({"kh", bad, "--ring", "f4"}).exit_code == 2);
  CHECK(kh::run_cli({"nonsense"}).exit_code == 2);
}

TEST_CASE("naive engine refuses big diagrams") {
  // 16-crossing twist closure
  std::string big;
  {
    std::string pd = "PD[";
    int next = 1, p = next++, q = next++, ip = p, iq = q;
    std::vector<std::array<int, 4>> xs;
    for (int j = 0; j < 16; ++j) {
      int r = next++, s = next++;
      xs.push_back({q, s, r, p});
      p = r;
      q = s;
    }
    for (auto& x : xs)
      for (auto& a : x) {
        if (a == p) a = ip;
        if (a == q) a = iq;
      }
    for (size_t i = 0; i < xs.size(); ++i) {
      pd += "X[" + std::to_string(xs[i][0]) + "," + std::to_string(xs[i][1]) + "," +
            std::to_string(xs[i][2]) + "," + std::to_string(xs[i][3]) + "]";
      if (i + 1 < xs.size()) pd += ",";
    }
    pd += "]";
    big = write_temp("big.pd", pd);
  }
  auto res = kh::run_cli({"kh", big, "--engine", "naive"});
  CHECK(res.exit_code == 2);
  auto scan = kh::run_cli({"kh", big, "--engine", "scan", "--format", "csv"});
  CHECK(scan.exit_code == 0);
}

TEST_CASE("output is byte identical across thread counts") {
  std::string pd = write_temp("kh_thr.pd", "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
  auto one = kh::run_cli({"kh", pd, "--ring", "z", "--threads", "1", "--format", "json"});
  auto four = kh::run_cli({"kh", pd, "--ring", "z", "--threads", "4", "--format", "json"});
  CHECK(one.exit_code == 0);
  CHECK(one.out == four.out);
}

TEST_CASE("rotant subcommands") {
  kh::FixtureBundle fx = khtest::demo_fixture();
  auto fixture = std::filesystem::temp_directory_path() / "demo_fx.json";
  fx.save(fixture.string());

  auto build = kh::run_cli({"rotant", "build", "--fixture", fixture.string(), "--n", "0",
                            "--format", "json"});
  REQUIRE(build.exit_code == 0);
  auto j = nlohmann::ordered_json::parse(build.out);
  CHECK(j["negative_crossings"].get<int>() >= 20);
  CHECK(j["twist_crossings"].size() == 20);

  std::string kink = write_temp("les_kink.pd", "PD[X[1,2,2,1]]");
  auto les = kh::run_cli({"rotant", "les", kink, "--crossing", "0"});
  CHECK(les.exit_code == 0);
  CHECK(les.out.find("ok") != std::string::npos);

  auto chain = kh::run_cli({"rotant", "chain", "--fixture", fixture.string(), "--nmax",
                            "3", "--cap", "5"});
  CHECK(chain.exit_code == 0);
  CHECK(chain.out.find("arithmetic ok") != std::string::npos);
}

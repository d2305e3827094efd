#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "spectral_chroma/cli.hpp"

using namespace spectral_chroma;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "spectral_chroma_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove_all(p);
  fs::remove_all(p.string() + ".cert");
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("bounds on petersen as JSON") {
  const Run r = run({"bounds", "--family", "petersen", "--format", "json", "--no-timestamp"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["h_bracket"] == nlohmann::json::array({3, 3}));
  CHECK(j["chi_f"] == "5/2");
  CHECK(j["chi"] == 3);
  CHECK(j["alpha"] == 4);
  CHECK(j["hoffman_adj"] == 3);
  CHECK(j["chain_ok"] == true);
  CHECK(!j.contains("timestamp"));
  // 9 significant digits
  CHECK(j["theta_complement"].get<double>() == doctest::Approx(2.5).epsilon(1e-8));
}

TEST_CASE("bounds on K2 and the empty graph") {
  const Run k2 = run({"bounds", "--graph6", "A_", "--format", "json", "--no-timestamp"});
  REQUIRE(k2.code == 0);
  const auto j = nlohmann::json::parse(k2.out);
  CHECK(j["chi"] == 2);
  CHECK(j["h_bracket"] == nlohmann::json::array({2, 2}));

  const Run e = run({"bounds", "--family", "empty", "4", "--format", "json", "--no-timestamp"});
  REQUIRE(e.code == 0);
  const auto k = nlohmann::json::parse(e.out);
  CHECK(k["alpha"] == 4);
  CHECK(k["theta"].get<double>() == doctest::Approx(4.0));
  CHECK(k["chi"] == 1);
  CHECK(k["chi_f"] == "1");
  CHECK(k["theta_complement"].get<double>() == doctest::Approx(1.0));
  CHECK(k["h_bracket"] == nlohmann::json::array({1, 1}));
}

TEST_CASE("identical runs give byte-identical JSON") {
  const std::vector<std::string> args{"bounds", "--family", "cycle", "7", "--format", "json", "--no-timestamp",
                                      "--seed", "3"};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Run stamped = run({"bounds", "--family", "cycle", "7", "--format", "json"});
  CHECK(nlohmann::json::parse(stamped.out).contains("timestamp"));
}

TEST_CASE("theta-k") {
  const Run c5 = run({"theta-k", "--family", "cycle", "5", "--k", "2.5", "--format", "json", "--no-timestamp"});
  REQUIRE(c5.code == 0);
  const auto j = nlohmann::json::parse(c5.out);
  CHECK(j["value"].get<double>() == doctest::Approx(5.0).epsilon(1e-5));
  CHECK(j["relative_gap"].get<double>() <= 1e-6);
  CHECK(!j.contains("witness"));

  const Run k6 = run({"theta-k", "--family", "complete", "6", "--k", "3", "--witness", "--format", "json"});
  REQUIRE(k6.code == 0);
  const auto w = nlohmann::json::parse(k6.out);
  CHECK(w["value"].get<double>() == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(w["witness"]["X"].size() == 6);

  const Run text = run({"theta-k", "--family", "cycle", "5", "--k", "2.5"});
  CHECK(text.out.find("= 5") != std::string::npos);
  CHECK(run({"theta-k", "--family", "cycle", "5", "--k", "6"}).code == 2);
  CHECK(run({"theta-k", "--family", "cycle", "5"}).code == 2);
}

TEST_CASE("theta-k weights file") {
  const fs::path w = scratch("w.txt");
  {
    std::ofstream f(w);
    f << "1\n2\n3\n0\n\n";
  }
  const Run r = run({"theta-k", "--family", "empty", "4", "--k", "2", "--weights", w.string(), "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[1].rfind("empty-4,4,0,2,6,", 0) == 0);
  {
    std::ofstream f(w);
    f << "1\n2\nx\n0\n";
  }
  const Run bad = run({"theta-k", "--family", "empty", "4", "--k", "2", "--weights", w.string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("byte offset 4") != std::string::npos);
  {
    std::ofstream f(w);
    f << "1\n2\n";
  }
  CHECK(run({"theta-k", "--family", "empty", "4", "--k", "2", "--weights", w.string()}).code == 2);
}

TEST_CASE("hbracket writes certificates next to the report") {
  const fs::path out = scratch("h.json");
  const Run r = run({"hbracket", "--family", "cycle", "5", "--format", "json", "--out", out.string(), "--m", "2"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["h_bracket"] == nlohmann::json::array({3, 3}));
  CHECK(j["probe"]["certified"] == true);
  CHECK(fs::exists(out.string() + ".cert/cycle-5.theorem2.json"));
  CHECK(fs::exists(out.string() + ".cert/cycle-5.hoffman-lower.json"));
  CHECK(fs::exists(out.string() + ".cert/cycle-5.hoffman-lower-m2.json"));
  CHECK(run({"hbracket", "--family", "cycle", "5", "--m", "9"}).code == 2);
}

TEST_CASE("batch over a cycle range") {
  const fs::path out = scratch("chain.csv");
  const Run r = run({"batch", "--family", "cycle", "3..11", "--out", out.string(), "--jobs", "2"});
  REQUIRE(r.code == 0);
  const auto ls = lines(slurp(out));
  REQUIRE(ls.size() == 10);
  CHECK(ls[0] ==
        "name,n,m,alpha,theta,theta_complement,chi_f,chi_f_rational,chi,hoffman_adj,ratio_adj,h_lo,h_hi,chain_ok,seconds");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    CHECK(ls[i].rfind("cycle-" + std::to_string(i + 2) + ",", 0) == 0);
    CHECK(ls[i].find(",ok,") != std::string::npos);
  }
  CHECK(ls[3].find(",5/2,") != std::string::npos);

  // resuming only appends what is missing, in input order
  const Run again = run({"batch", "--family", "cycle", "3..13", "--out", out.string()});
  REQUIRE(again.code == 0);
  const auto ls2 = lines(slurp(out));
  REQUIRE(ls2.size() == 12);
  for (std::size_t i = 0; i < ls.size(); ++i) CHECK(ls2[i] == ls[i]);
  CHECK(ls2[10].rfind("cycle-12,", 0) == 0);
  CHECK(ls2[11].rfind("cycle-13,", 0) == 0);
}

TEST_CASE("batch rows keep input order under concurrency") {
  const std::vector<std::string> base{"batch", "--family", "erdos-renyi", "6..9", "0.5", "0..2", "--no-timestamp"};
  auto with_jobs = [&](const std::string& j) {
    auto a = base;
    a.push_back("--jobs");
    a.push_back(j);
    return run(a);
  };
  const Run one = with_jobs("1");
  const Run three = with_jobs("3");
  CHECK(one.code == 0);
  CHECK(one.out == three.out);
  CHECK(lines(one.out).size() == 13);
  ::setenv("SPECTRAL_CHROMA_JOBS", "2", 1);
  CHECK(run(base).out == one.out);
  ::setenv("SPECTRAL_CHROMA_JOBS", "zero", 1);
  CHECK(run(base).code == 2);
  ::unsetenv("SPECTRAL_CHROMA_JOBS");
}

TEST_CASE("batch reads graph6 files") {
  const fs::path in = scratch("graphs.g6");
  {
    std::ofstream f(in);
    f << "A_\nC~\n\nDhc\n";
  }
  const Run r = run({"batch", "--graph6-file", in.string(), "--no-timestamp"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[1].rfind("graphs-1,2,1,", 0) == 0);
  CHECK(ls[2].rfind("graphs-2,4,6,", 0) == 0);
  CHECK(ls[3].rfind("graphs-4,5,5,", 0) == 0);
}

TEST_CASE("other inputs and errors") {
  const fs::path d = scratch("tri.col");
  {
    std::ofstream f(d);
    f << "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";
  }
  const Run r = run({"bounds", "--dimacs", d.string(), "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).at(1).rfind("tri,3,3,1,", 0) == 0);
  const fs::path e = scratch("path.txt");
  {
    std::ofstream f(e);
    f << "0 1\n1 2\n";
  }
  CHECK(run({"bounds", "--edges", e.string()}).code == 0);

  CHECK(run({"bounds", "--graph6", "!!"}).code == 2);
  CHECK(run({"bounds"}).code == 2);
  CHECK(run({"bounds", "--family", "cycle", "5", "--graph6", "A_"}).code == 2);
  CHECK(run({"bounds", "--family", "cycle", "3..5"}).code == 2);
  CHECK(run({"bounds", "--family", "wheel", "5"}).code == 2);
  CHECK(run({"bounds", "--family", "cycle", "5", "--format", "yaml"}).code == 2);
  CHECK(run({"bounds", "--family", "empty", "41"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"bounds", "--dimacs", "/nonexistent/file"}).code == 2);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("theta-k") != std::string::npos);
}

TEST_CASE("ranges") {
  CHECK(expand_range("3..6") == std::vector<long long>{3, 4, 5, 6});
  CHECK(expand_range("7") == std::vector<long long>{7});
  CHECK_THROWS(expand_range("6..3"));
  CHECK_THROWS(expand_range("a..3"));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

Run run(const std::string& args) {
  static int counter = 0;
  const std::string err_path = "test_cli_stderr_" + std::to_string(counter++) + ".txt";
  const std::string cmd = std::string(MAASS_KIT_BIN) + " " + args + " 2>" + err_path;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  const int status = pclose(p);
  Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, slurp(err_path)};
  std::remove(err_path.c_str());
  return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("characters") {
  const Run r = run("characters --m 4 --n 2 --ell 0 --order 20");
  REQUIRE(r.code == 0);
  const auto j = parse(r);
  CHECK(j["schema"] == "maass-kit/1");
  const auto& terms = j["series"]["tr"]["terms"];
  REQUIRE(!terms.empty());
  CHECK(terms[0][0] == 0);
  CHECK(terms[0][1] == "1");
  CHECK(terms[0][2] == "0");
}

TEST_CASE("characters are symmetric in ell") {
  const auto a = parse(run("characters --m 6 --n 2 --ell 3 --order 15"));
  const auto b = parse(run("characters --m 6 --n 2 --ell -3 --order 15"));
  CHECK(a["series"] == b["series"]);
}

TEST_CASE("invalid parameters exit 2") {
  const Run r = run("characters --m 2 --n 4");
  CHECK(r.code == 2);
  CHECK(r.err.find("requires m > n") != std::string::npos);
  CHECK(run("decompose --m 5 --n 2").code == 2);
  CHECK(run("verify --suite no-such-suite").code == 2);
  CHECK(run("characters --format xml").code == 2);
  CHECK(run("characters --digits 40").code == 3);
  CHECK(run("").code == 2);
}

TEST_CASE("verify") {
  const Run jtp = run("verify --suite jtp");
  CHECK(jtp.code == 0);
  const auto j = parse(jtp);
  CHECK(j["pass"] == true);
  CHECK(j["suites"][0]["suite"] == "jtp");
  CHECK(j["suites"][0]["seed"] == 0x4B57);
  CHECK(j["suites"][0]["extra"]["mismatched_coefficients"] == 0);
  CHECK(run("verify --suite decomposition --m 4 --n 2").code == 0);
  // Unreachable tolerance is an honest failure.
  const Run all = run("verify --suite all --tol 1e-99 --points 4");
  CHECK(all.code == 1);
  CHECK(parse(all)["pass"] == false);
}

TEST_CASE("identical configuration gives identical bytes") {
  const std::string args = "verify --suite phi-modular --m 6 --n 4 --seed 1234";
  const Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run("decompose --m 4 --n 2 --tau 0.1,0.9").out == run("decompose --m 4 --n 2 --tau 0.1,0.9").out);
  // A different seed samples different points.
  CHECK(run("verify --suite phi-modular --m 6 --n 4 --seed 99").out != a.out);
}

TEST_CASE("config file with flag override") {
  const std::string path = "test_cli_config.txt";
  {
    std::ofstream f(path);
    f << "# run configuration\nm = 6\nn = 2\nell = 1\norder = 12\n";
  }
  const auto j = parse(run("characters --config " + path + " --n 4"));
  CHECK(j["params"]["m"] == 6);
  CHECK(j["params"]["n"] == 4);
  CHECK(j["params"]["ell"] == 1);
  CHECK(j["params"]["T"] == 12);
  std::remove(path.c_str());
  CHECK(run("characters --config does_not_exist.cfg").code == 4);
}

TEST_CASE("output file and csv") {
  const std::string path = "test_cli_out.csv";
  REQUIRE(run("dtilde --m 6 --n 4 --order 6 --format csv --output " + path).code == 0);
  const std::string csv = slurp(path);
  std::remove(path.c_str());
  CHECK(csv.rfind("series,q_exponent,re,im,pi_exp,re_float,im_float\n", 0) == 0);
  CHECK(csv.find("Dtilde_2,1/4,112/3,0,0,") != std::string::npos);
  CHECK(run("verify --suite jtp --output /nonexistent_dir/x.json").code == 4);
}

TEST_CASE("asymptotics") {
  const Run r = run("asymptotics --m 3 --n 1 --ell 0 --N 1 --t 0.2,0.1");
  REQUIRE(r.code == 0);
  const auto j = parse(r);
  CHECK(j["a"][0]["exact"] == "1");
  CHECK(j["euler_base_case"].is_string());
  // Ratio moves toward 1 as t decreases.
  const double r0 = std::stod(j["comparison"][0]["ratio"].get<std::string>());
  const double r1 = std::stod(j["comparison"][1]["ratio"].get<std::string>());
  CHECK(std::abs(r1 - 1) < std::abs(r0 - 1));
  // The character cannot be certified this close to t = 0.
  CHECK(run("asymptotics --m 4 --n 2 --t 1e-6").code == 3);
}

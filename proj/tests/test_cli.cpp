#include <blaschke/cli.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "blaschke");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = blaschke::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  for (std::string l; std::getline(ss, l);) v.push_back(l);
  return v;
}

int shell_status(const std::string& args) {
  const std::string cmd = std::string(BLASCHKE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string shell_output(const std::string& args) {
  const std::string cmd = std::string(BLASCHKE_CLI_PATH) + " " + args;
  std::string s;
  FILE* p = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf;
  for (std::size_t got; (got = fread(buf.data(), 1, buf.size(), p)) > 0;) s.append(buf.data(), got);
  pclose(p);
  return s;
}

}  // namespace

TEST(Cli, CoeffExample) {
  const Result r = run({"coeff", "--lambda", "1/2", "--n", "3", "--k", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "# lambda=1/2 n=3 provenance=RationalConvolution precision=exact");
  EXPECT_EQ(l[2], "0,-0.125,0");
}

TEST(Cli, CoeffMethodsAgree) {
  const Result rat = run({"coeff", "--lambda", "1/2", "--n", "40", "--k-range", "30:50", "--out", "json"});
  const Result dft = run({"coeff", "--lambda", "1/2", "--n", "40", "--k-range", "30:50", "--method", "dft", "--out", "json"});
  const Result quad = run({"coeff", "--lambda", "1/2", "--n", "40", "--k-range", "30:50", "--method", "quadrature", "--out", "json"});
  ASSERT_EQ(rat.code, 0);
  ASSERT_EQ(dft.code, 0);
  ASSERT_EQ(quad.code, 0);
  const auto a = nlohmann::json::parse(rat.out)["values"], b = nlohmann::json::parse(dft.out)["values"],
             c = nlohmann::json::parse(quad.out)["values"];
  ASSERT_EQ(a.size(), 21u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i].get<double>(), b[i].get<double>(), 1e-13);
    EXPECT_NEAR(a[i].get<double>(), c[i].get<double>(), 1e-11);
  }
}

TEST(Cli, TableHasEightRegions) {
  const Result r = run({"table", "--lambda", "1/2", "--n", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 10u);
  const char* names[] = {"I,", "II,", "III,", "IV,", "V,", "VI,", "VII,", "VIII,"};
  for (int i = 0; i < 8; ++i) EXPECT_EQ(l[i + 2].rfind(names[i], 0), 0u) << l[i + 2];
  const auto j = nlohmann::json::parse(run({"table", "--lambda", "1/2", "--n", "1000", "--out", "json"}).out);
  ASSERT_EQ(j["regions"].size(), 8u);
  for (const auto& row : j["regions"]) EXPECT_LT(row["rel_err"].get<double>(), 0.1) << row["region"];
}

TEST(Cli, CompareCsvAndSummary) {
  const auto path = std::filesystem::temp_directory_path() / "blaschke_cli_summary.json";
  const Result r = run({"compare", "--lambda", "1/2", "--n", "300", "--k-range", "0:2000", "--summary", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  EXPECT_EQ(l[1], "k,region,exact,asym,abs_err,rel_err,env_err,formula,log_err");
  EXPECT_EQ(l.size(), 2003u);
  std::ifstream f(path);
  const auto s = nlohmann::json::parse(f);
  EXPECT_EQ(s.size(), 8u);
  EXPECT_TRUE(s["V"]["fitted_exponent"].is_null());
  EXPECT_LT(s["I"]["max_rel"].get<double>(), 0.1);
  std::filesystem::remove(path);
}

TEST(Cli, OtherSubcommands) {
  EXPECT_EQ(run({"saddle", "--lambda", "1/2", "--n", "1000", "--k", "500"}).code, 0);
  const Result a = run({"airy", "--x-range", "-1:1:5"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(lines(a.out).size(), 7u);
  const Result n = run({"norms", "--lambda", "1/2", "--p", "2,inf", "--n-values", "256,512", "--out", "json"});
  ASSERT_EQ(n.code, 0) << n.err;
  const auto j = nlohmann::json::parse(n.out);
  EXPECT_NEAR(j[0]["norms"][0].get<double>(), 1, 1e-10);
  EXPECT_EQ(j[1]["p"], "inf");
  const Result d = run({"duality", "--lambda", "1/2", "--n", "6", "--k", "2"});
  ASSERT_EQ(d.code, 0);
  EXPECT_LT(std::stod(lines(d.out)[2].substr(2)), 1e-10);
  const Result ann = run({"annular", "--A", "16", "--levels", "2"});
  ASSERT_EQ(ann.code, 0) << ann.err;
  EXPECT_EQ(lines(ann.out)[1], "k,radius,min_modulus,predicted_scale");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"coeff", "--n", "3", "--k", "0"}).code, 2);
  EXPECT_EQ(run({"coeff", "--lambda", "1.5", "--n", "3", "--k", "0"}).code, 2);
  EXPECT_EQ(run({"coeff", "--lambda", "1/2", "--n", "3", "--k", "0", "--k-range", "0:1"}).code, 2);
  EXPECT_EQ(run({"coeff", "--lambda", "1/2", "--n", "3", "--k-range", "5:1"}).code, 2);
  EXPECT_EQ(run({"compare", "--lambda", "1/2", "--n", "500", "--k-range", "0:5", "--alpha", "0.9"}).code, 2);
  EXPECT_EQ(run({"annular", "--A", "16", "--levels", "9"}).code, 4);
  EXPECT_EQ(shell_status("coeff --lambda 1/2 --n 100 --k 3 --method dft --dft-size 64"), 3);
  EXPECT_EQ(shell_status("frobnicate"), 2);
  EXPECT_EQ(shell_status("coeff --lambda 1/2 --n 3 --k 0"), 0);
}

TEST(Cli, DeterministicOutput) {
  const std::string args = "compare --lambda 1/3 --n 200 --k-range 0:900";
  const std::string a = shell_output(args), b = shell_output(args);
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
  EXPECT_EQ(shell_output("norms --lambda 1/2 --out json"), shell_output("norms --lambda 1/2 --out json"));
}

#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "azeta/cli.hpp"

using namespace azeta;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

long count_prefix(const std::string& text, const std::string& prefix, const std::string& needle) {
  std::istringstream in(text);
  long count = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(prefix, 0) == 0 && line.find(needle) != std::string::npos) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("determinant sweep prints one pass line per n") {
  const Result r = invoke({"verify", "determinant", "--n-max", "100"});
  CHECK(r.code == kExitOk);
  CHECK(count_prefix(r.out, "n=", " pass") == 101);
  CHECK(r.out.rfind("# determinant: ", 0) == 0);
}

TEST_CASE("even s reports zero at precision") {
  const Result r = invoke({"zeta", "compute", "--s", "4", "--bits", "64"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("zero-at-precision") != std::string::npos);
  const Result j = invoke({"zeta", "compute", "--s", "5", "--bits", "64", "--format", "json"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["value"]["zero"] == false);
  CHECK(doc["value"]["valuation"] == -3);
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({"verify", "recurrence", "--n-max", "0"}).code == kExitUsage);
  CHECK(invoke({"verify", "nonsense"}).code == kExitUsage);
  CHECK(invoke({"verify", "recurrence", "--bogus"}).code == kExitUsage);
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"verify", "quad-sum", "--n-max", "13"}).code == kExitUsage);
  CHECK(invoke({"zeta", "compute", "--s", "1"}).code == kExitUsage);
  CHECK(invoke({"verify", "determinant", "--format", "xml"}).code == kExitUsage);
}

TEST_CASE("failed check exits 1 with a witness") {
  const Result r = invoke({"verify", "zeta3-coincidence", "--n-max", "2"});
  CHECK(r.code == kExitFailure);
  CHECK(r.out.find("# witness: n=1") != std::string::npos);
}

TEST_CASE("output is independent of the job count") {
  for (const std::string fmt : {"json", "csv", "text"}) {
    const Result a = invoke({"verify", "denominators", "--n-max", "30", "--format", fmt, "--jobs", "1", "--valuations"});
    const Result b = invoke({"verify", "denominators", "--n-max", "30", "--format", fmt, "--jobs", "4", "--valuations"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("json reports carry integers as strings") {
  const Result r = invoke({"verify", "recurrence", "--n-max", "3", "--format", "json"});
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["rows"][2]["rho"] == "14944");
  CHECK(doc["summary"]["pass"] == true);
  const Result m = invoke({"measure", "report", "--n-max", "8", "--format", "json"});
  CHECK(m.code == kExitOk);
  const auto cert = nlohmann::json::parse(m.out);
  CHECK(cert["nonvanishing"] == true);
  CHECK(cert["alpha_n"].size() == 8);
  CHECK(cert["mu_bound"].get<double>() == doctest::Approx(20.342651).epsilon(1e-7));
}

TEST_CASE("forms table as csv") {
  const Result r = invoke({"forms", "table", "--n-max", "2", "--format", "csv"});
  CHECK(r.out == "n,rho0,rho3\n0,0/1,768/1\n1,-1024/1,73728/1\n2,-181248/1,11476992/1\n");
}

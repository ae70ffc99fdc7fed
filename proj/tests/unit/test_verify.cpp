#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fastbench/runner.hpp"
#include "fastbench/verify.hpp"

using namespace fastbench;
namespace fs = std::filesystem;

namespace {

std::string fresh_dir(const char* name) {
  auto p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  return p.string();
}

std::string make_report(const char* name) {
  WorkloadSpec w = builtin_workload("authentication-desk");
  RunConfig cfg;
  cfg.sim = true;
  cfg.seed = 5;
  cfg.duration_cap_s = 30.0;
  RunOutcome out = run_benchmark(w, cfg);
  std::string dir = fresh_dir(name);
  export_report(out.report, dir);
  return dir;
}

void rewrite(const fs::path& file, const std::string& from, const std::string& to) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  std::string text = os.str();
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, from.size(), to);
  std::ofstream outf(file, std::ios::binary | std::ios::trunc);
  outf << text;
}

}  // namespace

TEST_CASE("a freshly exported report verifies clean") {
  std::string dir = make_report("verify_clean");
  VerifyResult r = verify_report(dir);
  CHECK(r.ok);
  CHECK(r.mismatches.empty());
  fs::remove_all(dir);
}

TEST_CASE("a doctored total is caught and named") {
  std::string dir = make_report("verify_total");
  rewrite(fs::path(dir) / "summary.txt", "total_events: 4500", "total_events: 4501");
  VerifyResult r = verify_report(dir);
  CHECK_FALSE(r.ok);
  REQUIRE(!r.mismatches.empty());
  CHECK(r.mismatches[0].find("total_events") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("a doctored violation count is caught") {
  std::string dir = make_report("verify_viol");
  rewrite(fs::path(dir) / "summary.txt", "violations: ", "violations: 9");
  VerifyResult r = verify_report(dir);
  CHECK_FALSE(r.ok);
  bool named = false;
  for (const auto& m : r.mismatches)
    if (m.find("violation") != std::string::npos) named = true;
  CHECK(named);
  fs::remove_all(dir);
}

TEST_CASE("a doctored bucket count is caught") {
  std::string dir = make_report("verify_bucket");
  // First data row of buckets.csv: bump its in_count by prefixing a digit.
  fs::path file = fs::path(dir) / "buckets.csv";
  std::ifstream in(file);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  in.close();
  auto c1 = row.find(',');
  auto c2 = row.find(',', c1 + 1);
  REQUIRE(c2 != std::string::npos);
  rewrite(file, row, row.substr(0, c2 + 1) + "9" + row.substr(c2 + 1));
  VerifyResult r = verify_report(dir);
  CHECK_FALSE(r.ok);
  fs::remove_all(dir);
}

TEST_CASE("a doctored raw sample breaks the recount") {
  std::string dir = make_report("verify_sample");
  // Turn one sample's egress into a huge value: violations and bucket stats
  // both shift, summary no longer matches.
  fs::path file = fs::path(dir) / "latency_samples.csv";
  std::ifstream in(file);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  in.close();
  auto c1 = row.find(',');
  auto c2 = row.find(',', c1 + 1);
  auto c3 = row.find(',', c2 + 1);
  std::string doctored = row.substr(0, c2 + 1) + "999999.000" + row.substr(c3);
  rewrite(file, row, doctored);
  VerifyResult r = verify_report(dir);
  CHECK_FALSE(r.ok);
  fs::remove_all(dir);
}

TEST_CASE("verification reports missing files as parse errors") {
  std::string dir = fresh_dir("verify_missing");
  fs::create_directories(dir);
  CHECK_THROWS_AS(verify_report(dir), std::exception);
  fs::remove_all(dir);
}

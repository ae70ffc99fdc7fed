#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fastbench/planner.hpp"
#include "fastbench/runner.hpp"
#include "fastbench/verify.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace fastbench;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitVerify = 4;

struct CommonOpts {
  std::string workload;
  std::uint64_t seed = 1;
  double rate_scale = 1.0;
  double duration_cap_s = 0.0;
  std::string arrivals = "even";
};

void add_common(CLI::App* app, CommonOpts& c) {
  app->add_option("--workload", c.workload, "builtin workload name or path to a workload file")
      ->envname("BENCH_WORKLOAD")
      ->required();
  app->add_option("--seed", c.seed, "rng seed")->envname("BENCH_SEED");
  app->add_option("--rate-scale", c.rate_scale, "multiply all arrival rates")
      ->envname("BENCH_RATE_SCALE");
  app->add_option("--duration-cap", c.duration_cap_s,
                  "truncate the input profile to this many seconds")
      ->envname("BENCH_DURATION_CAP");
  app->add_option("--arrivals", c.arrivals, "within-bucket arrival shape")
      ->check(CLI::IsMember({"even", "poisson"}))
      ->envname("BENCH_ARRIVALS");
}

Arrivals parse_arrivals(const std::string& s) {
  return s == "poisson" ? Arrivals::poisson : Arrivals::even;
}

ParallelismMap read_parallelism_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open parallelism file: " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.is_object()) throw ValidationError(path + ": expected a JSON object of task: threads");
  ParallelismMap par;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_number_integer())
      throw ValidationError(path + ": " + it.key() + ": expected an integer");
    par.threads[it.key()] = it.value().get<int>();
  }
  return par;
}

/// Creates DIR/<workload>-<timestamp>[-N]; reports are never overwritten.
std::string fresh_report_dir(const std::string& base, const std::string& workload) {
  std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y%m%d-%H%M%S", std::localtime(&now));
  fs::create_directories(base);
  for (int n = 0;; ++n) {
    fs::path p = fs::path(base) / (workload + "-" + stamp + (n ? "-" + std::to_string(n) : ""));
    std::error_code ec;
    if (fs::create_directory(p, ec)) return p.string();
    if (ec && !fs::exists(p)) throw std::runtime_error("cannot create " + p.string());
  }
}

int cmd_gen(const CommonOpts& c, const std::string& out) {
  WorkloadSpec w = resolve_workload(c.workload);
  RunConfig cfg;
  cfg.seed = c.seed;
  cfg.rate_scale = c.rate_scale;
  cfg.duration_cap_s = c.duration_cap_s;
  Trace t = generate(effective_profile(w, cfg), w.histogram, c.seed, parse_arrivals(c.arrivals));
  write_trace(t, out);
  std::printf("wrote %s: %zu events, digest %s\n", out.c_str(), t.records.size(),
              hex64(t.content_digest()).c_str());
  return 0;
}

int cmd_plan(const CommonOpts& c, double headroom) {
  WorkloadSpec w = resolve_workload(c.workload);
  PlanInput plan;
  plan.topology = &w.topology;
  plan.peak_rate_per_s = w.planner.peak_rate_per_s * c.rate_scale;
  plan.headroom = headroom > 0.0 ? headroom : w.planner.headroom;
  plan.threads_per_node_cap = w.planner.threads_per_node_cap;
  plan.slots_per_node = w.planner.slots_per_node;

  ParallelismMap par = min_parallelism(plan);
  auto reach = reach_probabilities(w.topology);

  std::printf("workload: %s\n", w.name.c_str());
  std::printf("peak rate: %.3f events/s, headroom: %.4g\n", plan.peak_rate_per_s, plan.headroom);
  std::printf("%-28s %10s %12s %8s\n", "task", "reach", "latency_ms", "threads");
  for (const auto& t : w.topology.tasks) {
    if (t.kind == TaskKind::source) continue;
    std::printf("%-28s %10.4f %12.3f %8d\n", t.name.c_str(), reach.at(t.name),
                t.service_latency_ms, par.threads.at(t.name));
  }
  std::printf("total threads: %llu\n", static_cast<unsigned long long>(par.total()));
  std::printf("nodes (cap %d threads, %d slots): %d\n", plan.threads_per_node_cap,
              plan.slots_per_node, slot_allocation(par, plan));
  return 0;
}

int cmd_run(const CommonOpts& c, RunConfig& cfg, const std::string& trace_path,
            const std::string& parallelism_arg, const std::string& report_base) {
  WorkloadSpec w = resolve_workload(c.workload);
  cfg.seed = c.seed;
  cfg.rate_scale = c.rate_scale;
  cfg.duration_cap_s = c.duration_cap_s;
  cfg.arrivals = parse_arrivals(c.arrivals);

  if (!trace_path.empty()) {
    Trace t = read_trace(trace_path);
    if (t.meta.profile_digest != effective_profile(w, cfg).digest() ||
        t.meta.histogram_digest != w.histogram.digest())
      std::fprintf(stderr, "warning: trace %s was generated from different inputs\n",
                   trace_path.c_str());
    cfg.trace = std::move(t);
  }

  if (parallelism_arg == "auto") {
    // planner default
  } else if (parallelism_arg == "half") {
    cfg.parallelism = halve_parallelism(planned_parallelism(w, cfg));
  } else {
    cfg.parallelism = read_parallelism_file(parallelism_arg);
  }

  RunOutcome out = run_benchmark(w, cfg);

  std::string dir = fresh_report_dir(report_base, w.name);
  export_report(out.report, dir);

  std::printf("report: %s\n", dir.c_str());
  std::printf("injected: %llu, completed: %llu, violations: %llu (%.2f%%)\n",
              static_cast<unsigned long long>(out.injected),
              static_cast<unsigned long long>(out.report.total),
              static_cast<unsigned long long>(out.report.violations),
              out.report.violation_fraction * 100.0);
  for (const auto& [sink, n] : out.sink_counts)
    std::printf("sink %s: %llu\n", sink.c_str(), static_cast<unsigned long long>(n));
  if (!cfg.sim) {
    std::printf("replay: %llu emitted, scheduling error p50 %.3f ms p95 %.3f ms max %.3f ms\n",
                static_cast<unsigned long long>(out.replay.emitted), out.replay.p50_error_ms,
                out.replay.p95_error_ms, out.replay.max_error_ms);
    if (out.replay.aborted) {
      std::fprintf(stderr, "error: replay fell %.0f ms behind schedule, %llu events not emitted\n",
                   out.replay.worst_lateness_ms,
                   static_cast<unsigned long long>(out.replay.remaining));
      return kExitRuntime;
    }
    if (out.timed_out) {
      std::fprintf(stderr, "error: drain timed out\n%s\n", out.diagnostics.c_str());
      return kExitRuntime;
    }
  }
  return 0;
}

int cmd_verify(const std::string& dir) {
  VerifyResult res = verify_report(dir);
  if (res.ok) {
    std::printf("report %s: consistent\n", dir.c_str());
    return 0;
  }
  std::fprintf(stderr, "report %s: %zu mismatch(es)\n", dir.c_str(), res.mismatches.size());
  for (const auto& m : res.mismatches) std::fprintf(stderr, "  - %s\n", m.c_str());
  return kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stream workload benchmark harness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bench 1.0.0");

  CommonOpts c;
  std::string out_path = "trace.csv";
  double headroom = 0.0;
  RunConfig cfg;
  std::string trace_path;
  std::string parallelism_arg = "auto";
  std::string report_base = "reports";
  std::string verify_dir;
  std::string routing_arg;

  auto* gen = app.add_subcommand("gen", "pre-generate a trace file");
  add_common(gen, c);
  gen->add_option("--out", out_path, "output trace path");

  auto* plan = app.add_subcommand("plan", "print the sizing plan for a workload");
  add_common(plan, c);
  plan->add_option("--headroom", headroom, "override the workload's headroom factor");

  auto* run = app.add_subcommand("run", "execute a workload and export a report");
  add_common(run, c);
  run->add_option("--trace", trace_path, "replay a pre-generated trace instead of generating");
  run->add_option("--time-scale", cfg.time_scale, "divide inter-arrival gaps by this factor")
      ->envname("BENCH_TIME_SCALE");
  run->add_option("--parallelism", parallelism_arg,
                  "auto (planner), half, or a JSON file of task: threads")
      ->envname("BENCH_PARALLELISM");
  run->add_option("--routing", routing_arg, "quota or prob")
      ->check(CLI::IsMember({"quota", "prob"}))
      ->envname("BENCH_ROUTING");
  run->add_option("--headroom", cfg.headroom, "override the workload's headroom factor");
  run->add_option("--queue-capacity", cfg.queue_capacity, "per-edge queue bound");
  run->add_option("--drain-timeout", cfg.drain_timeout_s, "drain watchdog seconds");
  run->add_option("--replay-workers", cfg.replay_workers, "emitter threads");
  run->add_flag("--sim", cfg.sim, "deterministic virtual-clock execution, no sleeping");
  run->add_flag("--host-cpu", cfg.host_cpu, "sample whole-host CPU instead of process CPU");
  run->add_option("--report", report_base, "directory to create the report under")
      ->envname("BENCH_REPORT");

  auto* verify = app.add_subcommand("verify", "recount a report's raw data against its summary");
  verify->add_option("--report", verify_dir, "report directory to check")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (!routing_arg.empty()) cfg.routing = routing_mode_from_string(routing_arg);
    if (gen->parsed()) return cmd_gen(c, out_path);
    if (plan->parsed()) return cmd_plan(c, headroom);
    if (run->parsed()) return cmd_run(c, cfg, trace_path, parallelism_arg, report_base);
    if (verify->parsed()) return cmd_verify(verify_dir);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return 0;
}

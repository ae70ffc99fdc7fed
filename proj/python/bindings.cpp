#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fastbench/planner.hpp"
#include "fastbench/runner.hpp"
#include "fastbench/verify.hpp"

namespace py = pybind11;
using namespace fastbench;

namespace {

RunConfig config_from_kwargs(std::uint64_t seed, double time_scale, double rate_scale,
                             double duration_cap_s, const std::string& routing,
                             const py::object& parallelism, bool sim) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.time_scale = time_scale;
  cfg.rate_scale = rate_scale;
  cfg.duration_cap_s = duration_cap_s;
  cfg.sim = sim;
  if (!routing.empty()) cfg.routing = routing_mode_from_string(routing);
  if (!parallelism.is_none()) {
    ParallelismMap par;
    for (auto item : parallelism.cast<py::dict>())
      par.threads[item.first.cast<std::string>()] = item.second.cast<int>();
    cfg.parallelism = par;
  }
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "stream workload benchmark harness";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("builtin_workloads", &builtin_workload_names);

  m.def("workload_info", [](const std::string& name_or_path) {
    WorkloadSpec w = resolve_workload(name_or_path);
    py::dict d;
    d["name"] = w.name;
    d["digest"] = hex64(w.digest());
    d["sla_ms"] = w.sla_ms;
    d["bucket_s"] = w.bucket_s;
    d["tasks"] = static_cast<int>(w.topology.tasks.size());
    d["edges"] = static_cast<int>(w.topology.edges.size());
    d["sinks"] = w.sink_names();
    d["success_path_latency_ms"] = success_path_latency(w.topology);
    d["expected_events"] = expected_total(w.profile);
    d["terminal_probabilities"] = terminal_probabilities(w.topology);
    return d;
  });

  m.def(
      "generate_trace",
      [](const std::string& workload, std::uint64_t seed, const std::string& out) {
        WorkloadSpec w = resolve_workload(workload);
        Trace t = generate(w.profile, w.histogram, seed);
        write_trace(t, out);
        py::dict d;
        d["events"] = static_cast<std::size_t>(t.records.size());
        d["digest"] = hex64(t.content_digest());
        return d;
      },
      py::arg("workload"), py::arg("seed"), py::arg("out"));

  m.def(
      "plan",
      [](const std::string& workload, double headroom, double rate_scale) {
        WorkloadSpec w = resolve_workload(workload);
        PlanInput plan;
        plan.topology = &w.topology;
        plan.peak_rate_per_s = w.planner.peak_rate_per_s * rate_scale;
        plan.headroom = headroom > 0.0 ? headroom : w.planner.headroom;
        plan.threads_per_node_cap = w.planner.threads_per_node_cap;
        plan.slots_per_node = w.planner.slots_per_node;
        ParallelismMap par = min_parallelism(plan);
        py::dict d;
        d["threads"] = par.threads;
        d["total_threads"] = static_cast<std::uint64_t>(par.total());
        d["nodes"] = slot_allocation(par, plan);
        return d;
      },
      py::arg("workload"), py::arg("headroom") = 0.0, py::arg("rate_scale") = 1.0);

  m.def(
      "run",
      [](const std::string& workload, std::uint64_t seed, double time_scale, double rate_scale,
         double duration_cap_s, const std::string& routing, const py::object& parallelism,
         bool sim, const std::string& report_dir) {
        WorkloadSpec w = resolve_workload(workload);
        RunConfig cfg = config_from_kwargs(seed, time_scale, rate_scale, duration_cap_s, routing,
                                           parallelism, sim);
        RunOutcome out;
        {
          py::gil_scoped_release release;
          out = run_benchmark(w, cfg);
        }
        if (!report_dir.empty()) export_report(out.report, report_dir);
        py::dict d;
        d["injected"] = out.injected;
        d["completed"] = out.report.total;
        d["violations"] = out.report.violations;
        d["violation_fraction"] = out.report.violation_fraction;
        d["sink_counts"] = out.sink_counts;
        d["timed_out"] = out.timed_out;
        d["parallelism_total"] = static_cast<std::uint64_t>(out.parallelism.total());
        if (!sim) {
          d["replay_p95_error_ms"] = out.replay.p95_error_ms;
          d["replay_aborted"] = out.replay.aborted;
        }
        return d;
      },
      py::arg("workload"), py::arg("seed") = 1, py::arg("time_scale") = 1.0,
      py::arg("rate_scale") = 1.0, py::arg("duration_cap_s") = 0.0, py::arg("routing") = "",
      py::arg("parallelism") = py::none(), py::arg("sim") = false, py::arg("report_dir") = "");

  m.def("verify_report", [](const std::string& dir) {
    VerifyResult res = verify_report(dir);
    py::dict d;
    d["ok"] = res.ok;
    d["mismatches"] = res.mismatches;
    return d;
  });
}

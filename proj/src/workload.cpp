#include "fastbench/workload.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fastbench {

using nlohmann::json;

// Generated from the shipped workload files at configure time.
extern const char* builtin_workload_json(const std::string& name);
extern std::vector<std::string> builtin_workload_list();

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& path,
                       const std::string& msg) {
  throw ValidationError(origin + ": " + path + ": " + msg);
}

const json& need(const json& j, const std::string& origin, const std::string& path,
                 const char* key) {
  if (!j.contains(key)) fail(origin, path, std::string("missing field '") + key + "'");
  return j.at(key);
}

double need_number(const json& j, const std::string& origin, const std::string& path,
                   const char* key) {
  const json& v = need(j, origin, path, key);
  if (!v.is_number()) fail(origin, path + "." + key, "expected a number");
  return v.get<double>();
}

std::string need_string(const json& j, const std::string& origin, const std::string& path,
                        const char* key) {
  const json& v = need(j, origin, path, key);
  if (!v.is_string()) fail(origin, path + "." + key, "expected a string");
  return v.get<std::string>();
}

TaskKind parse_kind(const std::string& s, const std::string& origin, const std::string& path) {
  if (s == "source") return TaskKind::source;
  if (s == "worker") return TaskKind::worker;
  if (s == "sink") return TaskKind::sink;
  fail(origin, path, "unknown task kind '" + s + "'");
}

ResourceClass parse_class(const std::string& s, const std::string& origin,
                          const std::string& path) {
  if (s == "cpu") return ResourceClass::cpu;
  if (s == "idle") return ResourceClass::idle;
  fail(origin, path, "unknown resource class '" + s + "'");
}

EdgeLabel parse_label(const std::string& s, const std::string& origin, const std::string& path) {
  if (s == "P") return EdgeLabel::P;
  if (s == "F") return EdgeLabel::F;
  if (s == "default") return EdgeLabel::def;
  fail(origin, path, "unknown edge label '" + s + "'");
}

}  // namespace

std::uint64_t WorkloadSpec::digest() const {
  Fnv1a h;
  h.update(name);
  h.update_u64(topology.digest());
  h.update_u64(profile.digest());
  h.update_u64(histogram.digest());
  h.update_double(sla_ms);
  h.update(to_string(default_routing));
  h.update_double(planner.peak_rate_per_s);
  h.update_double(planner.headroom);
  return h.digest();
}

std::vector<std::string> WorkloadSpec::sink_names() const {
  std::vector<std::string> out;
  for (const auto& t : topology.tasks)
    if (t.kind == TaskKind::sink) out.push_back(t.name);
  return out;
}

WorkloadSpec parse_workload(const std::string& json_text, const std::string& origin) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!j.is_object()) fail(origin, "$", "document must be a JSON object");

  WorkloadSpec w;
  w.name = need_string(j, origin, "$", "name");
  if (j.contains("notes"))
    for (const auto& n : j.at("notes")) w.notes.push_back(n.get<std::string>());

  const json& tasks = need(j, origin, "$", "tasks");
  if (!tasks.is_array()) fail(origin, "$.tasks", "expected an array");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string path = "$.tasks[" + std::to_string(i) + "]";
    const json& t = tasks[i];
    TaskSpec ts;
    ts.name = need_string(t, origin, path, "name");
    ts.service_latency_ms = need_number(t, origin, path, "latency_ms");
    ts.kind = parse_kind(need_string(t, origin, path, "kind"), origin, path + ".kind");
    if (t.contains("resource_class"))
      ts.resource_class = parse_class(t.at("resource_class").get<std::string>(), origin,
                                      path + ".resource_class");
    w.topology.tasks.push_back(ts);
  }

  const json& edges = need(j, origin, "$", "edges");
  if (!edges.is_array()) fail(origin, "$.edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = "$.edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    EdgeSpec es;
    es.from = need_string(e, origin, path, "from");
    es.to = need_string(e, origin, path, "to");
    es.selectivity = need_number(e, origin, path, "selectivity");
    if (e.contains("label"))
      es.label = parse_label(e.at("label").get<std::string>(), origin, path + ".label");
    w.topology.edges.push_back(es);
  }

  const json& sp = need(j, origin, "$", "success_path");
  if (!sp.is_array()) fail(origin, "$.success_path", "expected an array");
  for (const auto& n : sp) w.topology.success_path.push_back(n.get<std::string>());

  if (j.contains("additional_checks_pass")) {
    const double p = j.at("additional_checks_pass").get<double>();
    if (p < 0.0 || p > 1.0) fail(origin, "$.additional_checks_pass", "must be in [0,1]");
    bool applied = false;
    for (auto& e : w.topology.edges) {
      if (e.from != "AdditionalChecks") continue;
      e.selectivity = e.label == EdgeLabel::P ? p : 1.0 - p;
      applied = true;
    }
    if (!applied)
      fail(origin, "$.additional_checks_pass", "no AdditionalChecks edges to apply it to");
  }

  const json& rates = need(j, origin, "$", "rate_profile_hourly");
  if (!rates.is_array() || rates.empty())
    fail(origin, "$.rate_profile_hourly", "expected a non-empty array");
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!rates[i].is_number())
      fail(origin, "$.rate_profile_hourly[" + std::to_string(i) + "]", "expected a number");
    RateBucket b;
    b.duration_s = 3600.0;
    b.rate_per_s = rates[i].get<double>() / 3600.0;
    w.profile.buckets.push_back(b);
  }
  if (j.contains("time_compression")) {
    w.time_compression = j.at("time_compression").get<double>();
    if (w.time_compression <= 0.0) fail(origin, "$.time_compression", "must be positive");
    w.profile = compress_time(w.profile, w.time_compression);
  }
  w.bucket_s = w.profile.buckets.front().duration_s;

  const json& hist = need(j, origin, "$", "size_histogram");
  if (!hist.is_array() || hist.empty())
    fail(origin, "$.size_histogram", "expected a non-empty array");
  for (std::size_t i = 0; i < hist.size(); ++i) {
    const std::string path = "$.size_histogram[" + std::to_string(i) + "]";
    const json& b = hist[i];
    SizeBin sb;
    sb.lo = static_cast<std::uint64_t>(need_number(b, origin, path, "lo_bytes"));
    sb.hi = static_cast<std::uint64_t>(need_number(b, origin, path, "hi_bytes"));
    sb.prob = need_number(b, origin, path, "prob");
    w.histogram.bins.push_back(sb);
  }

  w.sla_ms = need_number(j, origin, "$", "sla_ms");
  if (w.sla_ms <= 0.0) fail(origin, "$.sla_ms", "must be positive");

  if (j.contains("default_routing"))
    w.default_routing = routing_mode_from_string(j.at("default_routing").get<std::string>());

  const json& pl = need(j, origin, "$", "planner");
  if (!pl.is_object()) fail(origin, "$.planner", "expected an object");
  w.planner.peak_rate_per_s = need_number(pl, origin, "$.planner", "peak_events_per_hour") / 3600.0;
  if (pl.contains("headroom")) w.planner.headroom = pl.at("headroom").get<double>();
  if (pl.contains("threads_per_node_cap"))
    w.planner.threads_per_node_cap = pl.at("threads_per_node_cap").get<int>();
  if (pl.contains("slots_per_node"))
    w.planner.slots_per_node = pl.at("slots_per_node").get<int>();

  // Full semantic validation, itemized.
  try {
    w.histogram.validate();
    w.profile.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(origin + ": " + e.what());
  }
  auto violations = validate(w.topology);
  if (!violations.empty()) {
    std::ostringstream os;
    os << origin << ": topology invalid:";
    for (const auto& v : violations) os << "\n  - " << v;
    throw ValidationError(os.str());
  }
  return w;
}

WorkloadSpec load_workload(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open workload file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return parse_workload(os.str(), path);
}

WorkloadSpec builtin_workload(const std::string& name) {
  const char* text = builtin_workload_json(name);
  if (!text) {
    std::ostringstream os;
    os << "unknown workload '" << name << "'; available:";
    for (const auto& n : builtin_workload_list()) os << " " << n;
    throw ValidationError(os.str());
  }
  return parse_workload(text, "builtin:" + name);
}

std::vector<std::string> builtin_workload_names() { return builtin_workload_list(); }

}  // namespace fastbench

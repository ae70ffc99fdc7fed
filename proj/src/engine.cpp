#include "fastbench/engine.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "fastbench/synthetic_work.hpp"

namespace fastbench {

namespace {
using Clock = std::chrono::steady_clock;
}

struct RunningTopology::Task {
  int index = -1;
  std::mutex m;
  std::condition_variable cv_nonempty;
  std::condition_variable cv_nonfull;
  std::vector<std::unique_ptr<Edge>> in_edges;
  // Router shared by all workers of this task; quota exactness needs it
  // serialized per task.
  std::unique_ptr<EdgeRouter> router;
  std::mutex router_m;
  std::atomic<int> live_workers{0};
  std::atomic<std::uint64_t> terminal_count{0};
  int sink_slot = -1;  // index among sinks, task order
  Clock::time_point epoch;
};

RunningTopology::RunningTopology(const TopologySpec& topo, const ParallelismMap& par,
                                 const EngineOptions& opts, MetricsRecorder& recorder)
    : topo_(topo), opts_(opts), recorder_(recorder) {
  require_valid(topo);
  {
    auto v = validate_parallelism(topo, par);
    if (!v.empty()) {
      std::ostringstream os;
      os << "engine start refused:";
      for (const auto& s : v) os << "\n  - " << s;
      throw ValidationError(os.str());
    }
  }
  if (opts.queue_capacity == 0) throw ValidationError("engine: queue capacity must be > 0");

  const int ntasks = static_cast<int>(topo.tasks.size());
  tasks_.resize(ntasks);
  out_edges_.resize(ntasks);
  int sink_slot = 0;
  const auto epoch = Clock::now();
  for (int i = 0; i < ntasks; ++i) {
    tasks_[i] = std::make_unique<Task>();
    tasks_[i]->index = i;
    tasks_[i]->epoch = epoch;
    if (topo.tasks[i].kind == TaskKind::source) source_ = i;
    if (topo.tasks[i].kind == TaskKind::sink) tasks_[i]->sink_slot = sink_slot++;
  }

  // Edges live with their consumer task; producers find them via edges_.
  for (const auto& e : topo.edges) {
    int from = topo.task_index(e.from);
    int to = topo.task_index(e.to);
    auto edge = std::make_unique<Edge>();
    edge->to = to;
    edges_.push_back(edge.get());
    out_edges_[from].push_back(static_cast<int>(edges_.size()) - 1);
    tasks_[to]->in_edges.push_back(std::move(edge));
  }
  for (int i = 0; i < ntasks; ++i) {
    std::vector<double> sel;
    for (const auto& e : topo.edges)
      if (topo.task_index(e.from) == i) sel.push_back(e.selectivity);
    if (!sel.empty())
      tasks_[i]->router = std::make_unique<EdgeRouter>(
          std::move(sel), opts.routing, opts.seed ^ (0x9e3779b97f4a7c15ull * (i + 1)));
  }

  for (int i = 0; i < ntasks; ++i) {
    if (i == source_) continue;
    const int n = par.threads.at(topo.tasks[i].name);
    tasks_[i]->live_workers.store(n);
    for (int w = 0; w < n; ++w) threads_.emplace_back(&RunningTopology::worker_loop, this, i);
  }

  depth_sampler_ = std::thread([this] {
    const auto start = Clock::now();
    int tick = 0;
    while (!stop_sampler_.load()) {
      ++tick;
      const auto next = start + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(
                                        opts_.depth_sample_interval_s * tick));
      while (Clock::now() < next && !stop_sampler_.load())
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
      if (stop_sampler_.load()) break;
      std::size_t depth = 0;
      for (auto& t : tasks_) {
        std::lock_guard<std::mutex> lk(t->m);
        for (const auto& e : t->in_edges) depth = std::max(depth, e->q.size());
      }
      DepthSample s;
      s.t_s = std::chrono::duration<double>(Clock::now() - start).count();
      s.max_edge_depth = depth;
      depth_samples_.push_back(s);
    }
  });
}

RunningTopology::~RunningTopology() {
  if (!drained_) {
    try {
      drain();
    } catch (...) {
    }
  }
}

std::uint64_t RunningTopology::thread_census() const { return threads_.size(); }

std::uint64_t RunningTopology::backlog() const {
  return injected_.load() - completed_.load();
}

void RunningTopology::push_edge(int edge_index, Envelope&& env) {
  Edge* e = edges_[edge_index];
  Task& consumer = *tasks_[e->to];
  std::unique_lock<std::mutex> lk(consumer.m);
  consumer.cv_nonfull.wait(lk, [&] {
    return e->q.size() < opts_.queue_capacity || e->closed;
  });
  if (e->closed) return;  // shutting down, drop
  e->q.push_back(std::move(env));
  e->max_depth = std::max(e->max_depth, e->q.size());
  consumer.cv_nonempty.notify_one();
}

void RunningTopology::inject(const EventRecord& ev, double ingress_ms) {
  if (draining_.load()) throw std::runtime_error("inject after drain initiated");
  Envelope env;
  env.ev = ev;
  env.ingress_ms = ingress_ms;
  // The source consumes no service time; route straight onto an out edge.
  int choice;
  {
    Task& src = *tasks_[source_];
    std::lock_guard<std::mutex> lk(src.router_m);
    choice = src.router->choose();
  }
  push_edge(out_edges_[source_][choice], std::move(env));
  injected_.fetch_add(1);
}

void RunningTopology::close_task_outputs(int task_index) {
  for (int ei : out_edges_[task_index]) {
    Edge* e = edges_[ei];
    Task& consumer = *tasks_[e->to];
    std::lock_guard<std::mutex> lk(consumer.m);
    e->closed = true;
    consumer.cv_nonempty.notify_all();
    consumer.cv_nonfull.notify_all();
  }
}

void RunningTopology::worker_loop(int task_index) {
  Task& task = *tasks_[task_index];
  const TaskSpec& spec = topo_.tasks[task_index];
  auto buffer = recorder_.make_buffer();
  std::size_t rr = 0;
  for (;;) {
    Envelope env;
    bool got = false;
    {
      std::unique_lock<std::mutex> lk(task.m);
      for (;;) {
        const std::size_t n = task.in_edges.size();
        for (std::size_t i = 0; i < n && !got; ++i) {
          Edge* e = task.in_edges[(rr + i) % n].get();
          if (!e->q.empty()) {
            env = std::move(e->q.front());
            e->q.pop_front();
            got = true;
            rr = (rr + i + 1) % n;
            task.cv_nonfull.notify_one();
          }
        }
        if (got) break;
        bool all_closed = true;
        for (const auto& e : task.in_edges)
          if (!e->closed) all_closed = false;
        if (all_closed) break;
        task.cv_nonempty.wait(lk);
      }
    }
    if (!got) break;

    synthetic_work(spec.service_latency_ms, spec.resource_class);

    if (spec.kind == TaskKind::sink) {
      const double egress =
          std::chrono::duration<double, std::milli>(Clock::now() - task.epoch).count();
      LatencySample s;
      s.event_id = env.ev.id;
      s.ingress_ms = env.ingress_ms;
      s.egress_ms = egress;
      s.sink = task.sink_slot;
      s.size_bytes = env.ev.size_bytes;
      buffer->record(s);
      task.terminal_count.fetch_add(1);
      completed_.fetch_add(1);
    } else {
      int choice;
      {
        std::lock_guard<std::mutex> lk(task.router_m);
        choice = task.router->choose();
      }
      push_edge(out_edges_[task_index][choice], std::move(env));
    }
  }
  if (task.live_workers.fetch_sub(1) == 1) close_task_outputs(task_index);
}

DrainResult RunningTopology::drain() {
  DrainResult result;
  if (drained_) throw std::runtime_error("drain called twice");
  draining_.store(true);
  close_task_outputs(source_);

  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(opts_.drain_timeout_s));
  bool timed_out = false;
  for (;;) {
    bool all_done = true;
    for (const auto& t : tasks_)
      if (t->index != source_ && t->live_workers.load() > 0) all_done = false;
    if (all_done) break;
    if (Clock::now() > deadline) {
      timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }

  if (timed_out) {
    std::ostringstream os;
    os << "drain watchdog expired after " << opts_.drain_timeout_s << "s; queue depths:";
    for (const auto& t : tasks_) {
      std::lock_guard<std::mutex> lk(t->m);
      for (std::size_t i = 0; i < t->in_edges.size(); ++i)
        os << "\n  " << topo_.tasks[t->index].name << " in-edge " << i << ": depth "
           << t->in_edges[i]->q.size() << " (max " << t->in_edges[i]->max_depth << ")";
    }
    result.diagnostics = os.str();
    // Force shutdown: close every edge so blocked workers exit.
    for (const auto& t : tasks_) {
      std::lock_guard<std::mutex> lk(t->m);
      for (auto& e : t->in_edges) e->closed = true;
      t->cv_nonempty.notify_all();
      t->cv_nonfull.notify_all();
    }
  }

  for (auto& th : threads_) th.join();
  stop_sampler_.store(true);
  if (depth_sampler_.joinable()) depth_sampler_.join();
  drained_ = true;

  result.injected = injected_.load();
  result.timed_out = timed_out;
  for (const auto& t : tasks_)
    if (topo_.tasks[t->index].kind == TaskKind::sink)
      result.sink_counts[topo_.tasks[t->index].name] = t->terminal_count.load();
  return result;
}

}  // namespace fastbench

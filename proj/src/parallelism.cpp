#include "fastbench/parallelism.hpp"

namespace fastbench {

std::uint64_t ParallelismMap::total() const {
  std::uint64_t sum = 0;
  for (const auto& [_, n] : threads) sum += static_cast<std::uint64_t>(n);
  return sum;
}

std::vector<std::string> validate_parallelism(const TopologySpec& topo,
                                              const ParallelismMap& par) {
  std::vector<std::string> out;
  for (const auto& t : topo.tasks) {
    if (t.kind == TaskKind::source) continue;
    auto it = par.threads.find(t.name);
    if (it == par.threads.end())
      out.push_back("parallelism map missing task " + t.name);
    else if (it->second < 1)
      out.push_back("parallelism for task " + t.name + " must be >= 1");
  }
  for (const auto& [name, _] : par.threads) {
    const TaskSpec* t = topo.find_task(name);
    if (!t)
      out.push_back("parallelism names unknown task " + name);
    else if (t->kind == TaskKind::source)
      out.push_back("parallelism names the source task " + name +
                    "; the source is replay-driven");
  }
  return out;
}

ParallelismMap uniform_parallelism(const TopologySpec& topo, std::uint64_t total) {
  std::vector<std::string> names;
  for (const auto& t : topo.tasks)
    if (t.kind != TaskKind::source) names.push_back(t.name);
  ParallelismMap par;
  if (names.empty()) return par;
  const std::uint64_t base = total / names.size();
  std::uint64_t rem = total % names.size();
  for (const auto& n : names) {
    std::uint64_t v = base + (rem > 0 ? 1 : 0);
    if (rem > 0) --rem;
    par.threads[n] = static_cast<int>(v < 1 ? 1 : v);
  }
  return par;
}

ParallelismMap halve_parallelism(const ParallelismMap& par) {
  ParallelismMap out;
  for (const auto& [name, n] : par.threads) out.threads[name] = n / 2 < 1 ? 1 : n / 2;
  return out;
}

}  // namespace fastbench

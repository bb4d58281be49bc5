#include "treesync/bench.hpp"

#include <chrono>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include "treesync/merge.hpp"

namespace treesync {

namespace {

Path node(std::initializer_list<int> idx) {
  std::vector<std::string> parts;
  for (int i : idx) parts.push_back(std::to_string(i));
  return Path(std::move(parts));
}

int wrap(int a, int s) { return ((a % s) + s) % s; }

}  // namespace

void validate(const BenchConfig& cfg) {
  if (cfg.s < 5 || cfg.s > 64) throw std::invalid_argument("s must be in [5, 64]");
  if (cfg.t < 1 || cfg.t > (cfg.s - 1) / 2) throw std::invalid_argument("t must be in [1, (s-1)/2]");
  if (cfg.users < 2 || cfg.users > cfg.s - 1) throw std::invalid_argument("users must be in [2, s-1]");
  if (cfg.repeats < 1) throw std::invalid_argument("repeats must be positive");
}

int circular_distance(int a, int b, int s) {
  const int d = std::abs(a - b) % s;
  return std::min(d, s - d);
}

Filesystem gen_initial_fs(int s, int t) {
  Filesystem fs;
  for (int i = 0; i < s; ++i) {
    fs.set(node({i}), Value::directory());
    for (int j = 0; j < s; ++j) {
      if (circular_distance(i, j, s) > t) continue;
      fs.set(node({i, j}), Value::directory());
      for (int k = 0; k < s; ++k) {
        if (circular_distance(j, k, s) > t) continue;
        fs.set(node({i, j, k}),
               Value::file("f:" + std::to_string(i) + ":" + std::to_string(j) + ":" +
                           std::to_string(k)));
      }
    }
  }
  return fs;
}

CanonicalSet gen_user_changes(int s, int t, int u) {
  if (u < 0 || u >= s) throw std::invalid_argument("user index out of range");
  const Filesystem fs = gen_initial_fs(s, t);
  std::vector<Command> out;
  for (int i = 0; i < s; ++i) {
    const Path dir = node({i, u});
    if (!fs.read(dir).is_directory()) continue;
    for (int k = 0; k < s; ++k) {
      const Path file = node({i, u, k});
      const Value& v = fs.read(file);
      if (v.is_file()) out.push_back({file, v, Value::empty(), {}});
    }
    out.push_back({dir, Value::directory(), Value::empty(), {}});
  }
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (j == u) continue;
      for (int x : {wrap(u - 1, s), u, wrap(u + 1, s)}) {
        const Path file = node({i, j, x});
        const Value& v = fs.read(file);
        if (!v.is_file()) continue;
        out.push_back({file, v, Value::directory(), {}});
        for (int l = 0; l < s; ++l) {
          out.push_back({node({i, j, x, l}), Value::empty(),
                         Value::file(std::to_string(u) + ":" + std::to_string(i) + ":" +
                                     std::to_string(j) + ":" + std::to_string(x) + ":" +
                                     std::to_string(l)),
                         {}});
        }
      }
    }
  }
  return CanonicalSet::from(std::move(out));
}

std::vector<CanonicalSet> gen_workload(const BenchConfig& cfg) {
  validate(cfg);
  std::vector<CanonicalSet> sets;
  for (int u = 0; u < cfg.users; ++u) sets.push_back(gen_user_changes(cfg.s, cfg.t, u));
  return sets;
}

std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  const auto sets = gen_workload(cfg);
  std::vector<BenchRecord> records;
  for (int run = 0; run < cfg.repeats; ++run) {
    const auto t0 = Clock::now();
    const SortedUnion u = build_sorted_union(sets);
    const auto t1 = Clock::now();
    WorkCounters counters;
    Merger m;
    if (cfg.algorithm == BenchAlgorithm::Greedy) {
      m = greedy_merger(u, &counters);
    } else {
      auto oracle = DecisionOracle::first_wins();
      m = generate_merger(u, oracle, &counters);
    }
    const auto t2 = Clock::now();
    if (m.commands.empty() && !u.commands.empty()) throw std::logic_error("empty merger");

    const auto secs = [](Clock::duration d) { return std::chrono::duration<double>(d).count(); };
    BenchRecord base{cfg.s, cfg.t, cfg.users, u.commands.size(), "", run, 0, {}};
    BenchRecord sort = base, merge = base, total = base;
    sort.phase = "sort";
    sort.elapsed_seconds = secs(t1 - t0);
    merge.phase = "merge";
    merge.elapsed_seconds = secs(t2 - t1);
    merge.counters = counters;
    total.phase = "total";
    total.elapsed_seconds = secs(t2 - t0);
    records.push_back(sort);
    records.push_back(merge);
    records.push_back(total);
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "s,t,users,total_commands,phase,run,elapsed_seconds\n";
  for (const auto& r : records) {
    out << r.s << ',' << r.t << ',' << r.users << ',' << r.total_commands << ',' << r.phase << ','
        << r.run << ',' << r.elapsed_seconds << '\n';
  }
}

}  // namespace treesync

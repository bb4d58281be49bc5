#include "treesync/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "treesync/bench.hpp"
#include "treesync/error.hpp"
#include "treesync/io.hpp"
#include "treesync/merge.hpp"
#include "treesync/reconcile.hpp"
#include "treesync/refluence.hpp"

namespace treesync {

namespace {

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path);
  return in;
}

std::vector<Command> load_commands(const std::string& path) {
  auto in = open_in(path);
  try {
    return read_commands(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.detail(), e.position());
  }
}

CanonicalSet load_set(const std::string& path) {
  auto cmds = load_commands(path);
  if (auto why = canonical_violation(cmds)) throw Error(ErrorKind::NotCanonical, path + ": " + *why);
  return CanonicalSet::from(std::move(cmds));
}

std::vector<CanonicalSet> load_sets(const std::vector<std::string>& paths) {
  std::vector<std::vector<Command>> lists;
  for (const auto& p : paths) lists.push_back(load_commands(p));
  return require_canonical_inputs(lists);
}

Filesystem load_fs(const std::string& path) {
  auto in = open_in(path);
  return read_filesystem(in);
}

std::vector<Command> without_origin(std::span<const Command> cmds) {
  std::vector<Command> out(cmds.begin(), cmds.end());
  for (auto& c : out) c.origin.reset();
  return out;
}

void write_set(std::ostream& out, std::span<const Command> cmds) {
  write_commands(out, without_origin(cmds));
}

std::string class_name(ConflictClass c) {
  switch (c) {
    case ConflictClass::FileInput: return "1 (file input)";
    case ConflictClass::ParentChild: return "2 (parent destructors vs child constructors)";
    case ConflictClass::EmptyInput: return "3 (empty input)";
    case ConflictClass::DirectoryInput: return "4 (directory input)";
  }
  return {};
}

struct Options {
  std::string output;
  std::string file;
  std::vector<std::string> files;
  std::string fs_a, fs_b;
  bool lenient = false;
  bool seq = false;
  std::string policy;
  std::optional<std::uint64_t> seed;
  std::string script;
  std::string extend;
  std::size_t limit = std::numeric_limits<std::size_t>::max();
  BenchConfig bench;
  std::string algorithm = "generate";
  std::string csv;
};

int dispatch(const CLI::App& app, const Options& o, std::ostream& out, std::ostream& err) {
  const auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  if (name == "canonize") {
    const auto seq = load_commands(o.file);
    write_set(out, canonize(seq, o.lenient ? CanonizeMode::Lenient : CanonizeMode::Strict).commands());
  } else if (name == "check-canonical") {
    const auto cmds = load_commands(o.file);
    if (auto why = canonical_violation(cmds)) {
      err << Error(ErrorKind::NotCanonical, *why).what() << '\n';
      return 1;
    }
    out << "canonical\n";
  } else if (name == "order") {
    write_set(out, order_canonical(load_set(o.file)));
  } else if (name == "refluent") {
    const auto sets = load_sets(o.files);
    if (auto why = refluence_violation(sets)) {
      out << "not refluent\n";
      err << Error(ErrorKind::NotRefluent, *why).what() << '\n';
      return 1;
    }
    out << "refluent\n";
  } else if (name == "merge") {
    const auto sets = load_sets(o.files);
    Merger m;
    if (!o.extend.empty()) {
      m = merger_extending(sets, load_set(o.extend));
    } else if (!o.script.empty()) {
      auto in = open_in(o.script);
      auto oracle = DecisionOracle::scripted(read_script(in));
      std::size_t index = 0;
      oracle.set_observer([&](const DecisionPoint& p, std::optional<std::size_t> chosen) {
        if (chosen) {
          err << "#   chose " << *chosen << '\n';
          return;
        }
        err << "# decision " << index++ << " at " << p.node.str() << ", class "
            << class_name(p.conflict) << '\n';
        for (std::size_t i = 0; i < p.candidates.size(); ++i)
          err << "#   [" << i << "] " << p.candidates[i] << '\n';
      });
      m = generate_merger(sets, oracle);
    } else if (o.seed) {
      auto oracle = DecisionOracle::seeded(*o.seed);
      m = generate_merger(sets, oracle);
    } else if (o.policy == "first") {
      auto oracle = DecisionOracle::first_wins();
      m = generate_merger(sets, oracle);
    } else {
      m = greedy_merger(sets);
    }
    write_set(out, m.commands.commands());
  } else if (name == "enumerate") {
    const auto sets = load_sets(o.files);
    const auto all = enumerate_mergers(sets, o.limit);
    for (std::size_t k = 0; k < all.size(); ++k) {
      out << "[merger " << k + 1 << "]\n";
      write_set(out, all[k].commands.commands());
    }
  } else if (name == "diff") {
    write_set(out, diff(load_fs(o.fs_a), load_fs(o.fs_b)).commands());
  } else if (name == "apply") {
    const Filesystem fs = load_fs(o.fs_a);
    const auto cmds = o.seq ? load_commands(o.file) : order_canonical(load_set(o.file));
    write_filesystem(out, apply_sequence(fs, cmds));
  } else if (name == "plan") {
    const CanonicalSet m = load_set(o.file);
    const auto sets = load_sets(o.files);
    const SyncPlan plan = make_plan(sets, m);
    for (std::size_t i = 0; i < plan.per_replica.size(); ++i) {
      const auto& r = plan.per_replica[i];
      out << "[rollback " << i + 1 << "]\n";
      write_set(out, r.rollback);
      out << "[apply " << i + 1 << "]\n";
      write_set(out, r.apply);
      out << "[discarded " << i + 1 << "]\n";
      write_set(out, r.discarded);
    }
  } else if (name == "async-merge") {
    const CanonicalSet current = load_set(o.fs_a);
    const CanonicalSet m = load_set(o.fs_b);
    const auto context = load_sets(o.files);
    const AsyncOutcome r = async_merge(current, m, context);
    out << "[instructions]\n";
    write_set(out, r.instructions);
    out << "[carried-forward]\n";
    write_set(out, r.carried_forward.commands());
    out << "[discarded]\n";
    write_set(out, r.discarded.commands());
  } else if (name == "bench") {
    BenchConfig cfg = o.bench;
    cfg.algorithm = o.algorithm == "greedy" ? BenchAlgorithm::Greedy : BenchAlgorithm::Generate;
    try {
      validate(cfg);
    } catch (const std::invalid_argument& e) {
      err << "usage: " << e.what() << '\n';
      return 2;
    }
    const auto records = run_bench(cfg);
    if (o.csv.empty()) {
      write_csv(out, records);
    } else {
      std::ofstream f(o.csv);
      if (!f) throw IoFailure("cannot write " + o.csv);
      write_csv(f, records);
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tree-structured filesystem reconciliation"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("-o,--output", o.output, "write results to this file");

  auto* canon = app.add_subcommand("canonize", "collapse a command sequence into a canonical set");
  canon->add_option("seq", o.file)->required();
  canon->add_flag("--lenient", o.lenient, "skip the same-node continuity check");

  app.add_subcommand("check-canonical", "validate a command set")
      ->add_option("set", o.file)
      ->required();
  app.add_subcommand("order", "print a canonical set in a valid execution order")
      ->add_option("set", o.file)
      ->required();
  app.add_subcommand("refluent", "check joint refluence of command sets")
      ->add_option("sets", o.files)
      ->required();

  auto* merge = app.add_subcommand("merge", "compute one merger");
  merge->add_option("sets", o.files)->required();
  merge->add_option("--policy", o.policy, "first: first candidate at every decision")
      ->check(CLI::IsMember({"first"}));
  auto* seed = merge->add_option("--seed", o.seed, "random decisions from this seed");
  auto* script = merge->add_option("--script", o.script, "decision script file");
  auto* extend = merge->add_option("--extend", o.extend, "canonical subset to keep");
  seed->excludes(script);
  extend->excludes(seed)->excludes(script);

  auto* enumerate = app.add_subcommand("enumerate", "list every merger");
  enumerate->add_option("sets", o.files)->required();
  enumerate->add_option("--limit", o.limit, "stop after this many");

  auto* diff_cmd = app.add_subcommand("diff", "commands turning one snapshot into another");
  diff_cmd->add_option("from", o.fs_a)->required();
  diff_cmd->add_option("to", o.fs_b)->required();

  auto* apply = app.add_subcommand("apply", "apply a set (or --seq sequence) to a snapshot");
  apply->add_option("fs", o.fs_a)->required();
  apply->add_option("commands", o.file)->required();
  apply->add_flag("--seq", o.seq, "treat the file as an ordered sequence");

  auto* plan = app.add_subcommand("plan", "per-replica rollback and apply instructions");
  plan->add_option("merger", o.file)->required();
  plan->add_option("sets", o.files)->required();

  auto* async = app.add_subcommand("async-merge", "merge a late replica into a merger");
  async->add_option("current", o.fs_a)->required();
  async->add_option("merger", o.fs_b)->required();
  async->add_option("context", o.files, "original sets the merger was built from");

  auto* bench = app.add_subcommand("bench", "synthetic scaling workload");
  bench->add_option("--s", o.bench.s)->required();
  bench->add_option("--t", o.bench.t)->required();
  bench->add_option("--users", o.bench.users)->required();
  bench->add_option("--repeats", o.bench.repeats);
  bench->add_option("--csv", o.csv, "CSV output file");
  bench->add_option("--algorithm", o.algorithm)->check(CLI::IsMember({"generate", "greedy"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream usage_out, usage_err;
    const int code = app.exit(e, usage_out, usage_err);
    out << usage_out.str();
    err << usage_err.str();
    return code == 0 ? 0 : 2;
  }

  if (merge->parsed() && !o.seed && o.script.empty() && o.extend.empty() && o.policy.empty()) {
    if (const char* env = std::getenv("SYNC_SEED")) {
      try {
        o.seed = std::stoull(env);
      } catch (const std::exception&) {
        err << "usage: SYNC_SEED is not a number\n";
        return 2;
      }
    }
  }

  std::ofstream file_out;
  if (!o.output.empty()) {
    file_out.open(o.output);
    if (!file_out) {
      err << "IOError: cannot write " << o.output << '\n';
      return 1;
    }
  }
  std::ostream& sink = o.output.empty() ? out : file_out;
  try {
    return dispatch(app, o, sink, err);
  } catch (const Error& e) {
    err << e.what() << '\n';
  } catch (const IoFailure& e) {
    err << "IOError: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace treesync

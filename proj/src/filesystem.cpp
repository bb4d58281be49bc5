#include "treesync/filesystem.hpp"

#include "treesync/error.hpp"

namespace treesync {

namespace {

const Value kEmpty{};

}  // namespace

Filesystem::Filesystem(Entries entries) {
  for (auto& [p, v] : entries) {
    if (!v.is_empty()) entries_.emplace(p, std::move(v));
  }
}

const Value& Filesystem::read(const Path& p) const {
  auto it = entries_.find(p);
  return it == entries_.end() ? kEmpty : it->second;
}

void Filesystem::set(const Path& p, Value v) {
  if (v.is_empty()) {
    entries_.erase(p);
  } else {
    entries_.insert_or_assign(p, std::move(v));
  }
}

bool Filesystem::has_descendants(const Path& p) const {
  // Descendants sort immediately after p.
  auto it = entries_.upper_bound(p);
  return it != entries_.end() && p.is_ancestor_of(it->first);
}

bool is_valid(const Filesystem& fs) {
  for (const auto& [p, v] : fs.entries()) {
    if (p.is_root()) return false;
    if (p.depth() >= 2 && !fs.read(p.parent()).is_directory()) return false;
  }
  return true;
}

void apply_in_place(Filesystem& fs, const Command& c) {
  if (c.node.is_root()) throw Error(ErrorKind::TreeBroken, "the root cannot hold a value");
  if (fs.read(c.node) != c.input) {
    throw Error(ErrorKind::PreconditionFailed,
                c.node.str() + " holds " + fs.read(c.node).describe() + ", expected " +
                    c.input.describe());
  }
  if (!c.output.is_empty() && c.node.depth() >= 2 && !fs.read(c.node.parent()).is_directory()) {
    throw Error(ErrorKind::TreeBroken, "parent of " + c.node.str() + " is not a directory");
  }
  if (!c.output.is_directory() && fs.has_descendants(c.node)) {
    throw Error(ErrorKind::TreeBroken, c.node.str() + " has non-empty descendants");
  }
  fs.set(c.node, c.output);
}

Filesystem apply_command(Filesystem fs, const Command& c) {
  apply_in_place(fs, c);
  return fs;
}

Filesystem apply_sequence(Filesystem fs, std::span<const Command> seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    try {
      apply_in_place(fs, seq[i]);
    } catch (const Error& e) {
      throw Error(e.kind(), "command " + std::to_string(i) + ": " + e.detail(), i);
    }
  }
  return fs;
}

bool try_apply_sequence(Filesystem& fs, std::span<const Command> seq) {
  Filesystem work = fs;
  try {
    for (const auto& c : seq) apply_in_place(work, c);
  } catch (const Error&) {
    return false;
  }
  fs = std::move(work);
  return true;
}

}  // namespace treesync

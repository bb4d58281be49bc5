#include "treesync/path.hpp"

#include <algorithm>
#include <stdexcept>

namespace treesync {

namespace {

void check_segment(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty path segment");
  if (s.find('/') != std::string_view::npos)
    throw std::invalid_argument("path segment contains '/'");
}

}  // namespace

Path::Path(std::vector<std::string> components) : components_(std::move(components)) {
  for (const auto& c : components_) check_segment(c);
}

Path Path::parse(std::string_view text) {
  if (text.empty() || text.front() != '/')
    throw std::invalid_argument("path must start with '/': " + std::string(text));
  std::vector<std::string> parts;
  if (text.size() == 1) return Path{};
  std::size_t pos = 1;
  while (true) {
    auto next = text.find('/', pos);
    auto seg = text.substr(pos, next == std::string_view::npos ? text.npos : next - pos);
    check_segment(seg);
    parts.emplace_back(seg);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  Path p;
  p.components_ = std::move(parts);
  return p;
}

Path Path::parent() const {
  if (is_root()) throw std::logic_error("root has no parent");
  Path p;
  p.components_.assign(components_.begin(), components_.end() - 1);
  return p;
}

Path Path::child(std::string name) const {
  check_segment(name);
  Path p = *this;
  p.components_.push_back(std::move(name));
  return p;
}

bool Path::is_ancestor_of(const Path& other) const noexcept {
  return components_.size() < other.components_.size() &&
         std::equal(components_.begin(), components_.end(), other.components_.begin());
}

bool Path::is_parent_of(const Path& other) const noexcept {
  return components_.size() + 1 == other.components_.size() && is_ancestor_of(other);
}

bool Path::comparable(const Path& other) const noexcept {
  return *this == other || is_ancestor_of(other) || other.is_ancestor_of(*this);
}

std::string Path::str() const {
  if (components_.empty()) return "/";
  std::string out;
  for (const auto& c : components_) {
    out += '/';
    out += c;
  }
  return out;
}

std::strong_ordering operator<=>(const Path& a, const Path& b) noexcept {
  const auto n = std::min(a.components_.size(), b.components_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = a.components_[i].compare(b.components_[i]); c != 0)
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.components_.size() <=> b.components_.size();
}

}  // namespace treesync

#include "treesync/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include <sodium.h>

#include "treesync/error.hpp"

namespace treesync {

namespace {

constexpr int kVariant = sodium_base64_VARIANT_ORIGINAL;

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

Path parse_path(std::string_view text) {
  try {
    return Path::parse(text);
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::ParseError, "bad path '" + std::string(text) + "': " + e.what());
  }
}

bool skip(std::string_view line) { return line.empty() || line.front() == '#'; }

template <class F>
void for_each_line(std::istream& in, F f) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skip(line)) continue;
    try {
      f(std::string_view(line));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ParseError) throw;
      throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": " + e.detail(),
                  number);
    }
  }
}

}  // namespace

std::string base64_encode(std::string_view bytes) {
  std::string out(sodium_base64_encoded_len(bytes.size(), kVariant), '\0');
  sodium_bin2base64(out.data(), out.size(), reinterpret_cast<const unsigned char*>(bytes.data()),
                    bytes.size(), kVariant);
  out.resize(out.size() - 1);  // drop the terminator
  return out;
}

std::string base64_decode(std::string_view text) {
  std::string out(text.size() / 4 * 3 + 3, '\0');
  std::size_t len = 0;
  const char* end = nullptr;
  if (sodium_base642bin(reinterpret_cast<unsigned char*>(out.data()), out.size(), text.data(),
                        text.size(), nullptr, &len, &end, kVariant) != 0 ||
      end != text.data() + text.size())
    throw Error(ErrorKind::ParseError, "bad base64 '" + std::string(text) + "'");
  out.resize(len);
  return out;
}

std::string format_value(const Value& v) {
  switch (v.type()) {
    case ValueType::Empty: return "E";
    case ValueType::Directory: return "D";
    case ValueType::File: return "F:" + base64_encode(v.content());
  }
  return {};
}

Value parse_value(std::string_view text) {
  if (text == "E") return Value::empty();
  if (text == "D") return Value::directory();
  if (text.starts_with("F:")) return Value::file(base64_decode(text.substr(2)));
  throw Error(ErrorKind::ParseError, "bad value '" + std::string(text) + "'");
}

std::string format_command(const Command& c) {
  std::string out = c.node.str() + '\t' + format_value(c.input) + '\t' + format_value(c.output);
  if (c.origin) out += '\t' + std::to_string(*c.origin);
  return out;
}

Command parse_command(std::string_view line) {
  const auto f = split_tabs(line);
  if (f.size() != 3 && f.size() != 4)
    throw Error(ErrorKind::ParseError, "expected 3 or 4 tab-separated fields");
  Command c{parse_path(f[0]), parse_value(f[1]), parse_value(f[2]), {}};
  if (f.size() == 4) {
    std::uint32_t origin = 0;
    auto [p, ec] = std::from_chars(f[3].data(), f[3].data() + f[3].size(), origin);
    if (ec != std::errc() || p != f[3].data() + f[3].size())
      throw Error(ErrorKind::ParseError, "bad origin '" + std::string(f[3]) + "'");
    c.origin = origin;
  }
  return c;
}

std::vector<Command> read_commands(std::istream& in) {
  std::vector<Command> out;
  for_each_line(in, [&](std::string_view line) { out.push_back(parse_command(line)); });
  return out;
}

void write_commands(std::ostream& out, std::span<const Command> cmds) {
  for (const auto& c : cmds) out << format_command(c) << '\n';
}

Filesystem read_filesystem(std::istream& in) {
  Filesystem fs;
  for_each_line(in, [&](std::string_view line) {
    const auto f = split_tabs(line);
    if (f.size() != 2) throw Error(ErrorKind::ParseError, "expected <path>\\t<value>");
    const Path p = parse_path(f[0]);
    if (!fs.read(p).is_empty())
      throw Error(ErrorKind::ParseError, "duplicate entry " + p.str());
    fs.set(p, parse_value(f[1]));
  });
  if (!is_valid(fs)) throw Error(ErrorKind::TreeBroken, "snapshot violates the tree property");
  return fs;
}

void write_filesystem(std::ostream& out, const Filesystem& fs) {
  for (const auto& [p, v] : fs.entries()) out << p.str() << '\t' << format_value(v) << '\n';
}

std::vector<std::size_t> read_script(std::istream& in) {
  std::vector<std::size_t> out;
  for_each_line(in, [&](std::string_view line) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || p != line.data() + line.size())
      throw Error(ErrorKind::ParseError, "bad choice '" + std::string(line) + "'");
    out.push_back(v);
  });
  return out;
}

}  // namespace treesync

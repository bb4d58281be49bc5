#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "treesync/command.hpp"
#include "treesync/filesystem.hpp"

namespace treesync {

// Line formats. Values: `E`, `D` or `F:<base64>`.
//   filesystem entry: <path>\t<value>             (Empty never written)
//   command:          <path>\t<input>\t<output>[\t<origin>]
// Readers skip blank lines and lines starting with '#'. Malformed input
// raises Error{ParseError} carrying the 1-based line number.

std::string base64_encode(std::string_view bytes);
/// Throws Error{ParseError} on malformed input.
std::string base64_decode(std::string_view text);

std::string format_value(const Value& v);
Value parse_value(std::string_view text);

std::string format_command(const Command& c);
Command parse_command(std::string_view line);

std::vector<Command> read_commands(std::istream& in);
void write_commands(std::ostream& out, std::span<const Command> cmds);

/// Also rejects a snapshot that breaks the tree property.
Filesystem read_filesystem(std::istream& in);
void write_filesystem(std::ostream& out, const Filesystem& fs);

/// One zero-based index per line.
std::vector<std::size_t> read_script(std::istream& in);

}  // namespace treesync

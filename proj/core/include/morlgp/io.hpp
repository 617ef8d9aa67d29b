#ifndef MORLGP_IO_HPP
#define MORLGP_IO_HPP

#include <string>
#include <utility>
#include <vector>

namespace morlgp {

/// Shortest round-trip decimal form of a double (std::to_chars), so repeated
/// runs and re-parses are byte- and bit-exact.
std::string format_double(double v);

/// Whole-file atomic write: temp file in the same directory, then rename.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// "# key=value" provenance lines prepended to CSV outputs.
std::string config_echo(const std::vector<std::pair<std::string, std::string>>& kv);

} // namespace morlgp

#endif

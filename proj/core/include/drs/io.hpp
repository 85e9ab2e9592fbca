#pragma once

#include <string>
#include <vector>

#include "drs/chain.hpp"
#include "drs/data.hpp"

namespace drs {

// Reads a capture table from either format:
//   key-value lines:  x11 = 181
//   delimited:        a header row "x11,x10,x01" followed by one data row
// Blank lines and '#' comments are ignored. Malformed, non-integer, or
// negative counts raise ParseError naming the line.
DrsData read_data_file(const std::string& path);

// One chain per file, header "iter,N,phi,p,p1dot", reals at full precision.
void write_trace_csv(const std::string& path, const ChainTrace& trace);

// Reads a trace written by write_trace_csv. The burn-in index is not part
// of the file; the caller decides it.
ChainTrace read_trace_csv(const std::string& path);

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

// Simple "key = value" configuration file, '#' comments, one entry per
// line. Key validity is the caller's concern; duplicates keep the last.
std::vector<ConfigEntry> read_config_file(const std::string& path);

// Shortest round-trippable decimal form.
std::string format_double(double value);

}  // namespace drs

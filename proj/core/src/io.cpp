#include "drs/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>

#include "drs/errors.hpp"

namespace drs {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string strip_comment(const std::string& s) {
  const auto pos = s.find('#');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

long long parse_count(const std::string& text, const std::string& path,
                      int line) {
  const std::string t = trim(text);
  const std::string where = path + " line " + std::to_string(line);
  if (t.empty()) {
    throw ParseError(where + ": missing count");
  }
  std::size_t consumed = 0;
  long long value = 0;
  try {
    value = std::stoll(t, &consumed);
  } catch (const std::exception&) {
    throw ParseError(where + ": '" + t + "' is not an integer count");
  }
  if (consumed != t.size()) {
    throw ParseError(where + ": '" + t +
                     "' is not an integer count (counts must be whole "
                     "numbers)");
  }
  if (value < 0) {
    throw ParseError(where + ": count " + t + " is negative");
  }
  return value;
}

double parse_real(const std::string& text, const std::string& path, int line) {
  const std::string t = trim(text);
  const std::string where = path + " line " + std::to_string(line);
  // strtod instead of stod: subnormal values must parse, not raise ERANGE
  char* end = nullptr;
  const double value = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) {
    throw ParseError(where + ": '" + t + "' is not a number");
  }
  if (std::isinf(value)) {
    throw ParseError(where + ": '" + t + "' overflows a double");
  }
  return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  return in;
}

}  // namespace

DrsData read_data_file(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::string raw;
  int line_no = 0;
  std::vector<std::pair<std::string, int>> content;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (!line.empty()) content.emplace_back(line, line_no);
  }
  if (content.empty()) {
    throw ParseError(path + ": no data found");
  }

  const std::string first_lower = [&] {
    std::string s = content[0].first;
    for (char& ch : s) ch = static_cast<char>(std::tolower(ch));
    return s;
  }();

  if (first_lower.find(',') != std::string::npos) {
    // delimited form: header then one row
    auto header = split(first_lower, ',');
    for (auto& h : header) h = trim(h);
    if (header.size() != 3 || header[0] != "x11" || header[1] != "x10" ||
        header[2] != "x01") {
      throw ParseError(path + " line " + std::to_string(content[0].second) +
                       ": expected header 'x11,x10,x01'");
    }
    if (content.size() < 2) {
      throw ParseError(path + ": header without a data row");
    }
    if (content.size() > 2) {
      throw ParseError(path + " line " + std::to_string(content[2].second) +
                       ": expected a single data row");
    }
    const auto fields = split(content[1].first, ',');
    if (fields.size() != 3) {
      throw ParseError(path + " line " + std::to_string(content[1].second) +
                       ": expected 3 comma-separated counts");
    }
    DrsData data;
    data.x11 = parse_count(fields[0], path, content[1].second);
    data.x10 = parse_count(fields[1], path, content[1].second);
    data.x01 = parse_count(fields[2], path, content[1].second);
    return data;
  }

  // key-value form
  std::map<std::string, std::pair<long long, int>> seen;
  for (const auto& [line, no] : content) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path + " line " + std::to_string(no) +
                       ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    for (char& ch : key) ch = static_cast<char>(std::tolower(ch));
    if (key != "x11" && key != "x10" && key != "x01") {
      throw ParseError(path + " line " + std::to_string(no) +
                       ": unknown field '" + key +
                       "' (expected x11, x10, x01)");
    }
    if (seen.count(key)) {
      throw ParseError(path + " line " + std::to_string(no) + ": field '" +
                       key + "' already set on line " +
                       std::to_string(seen[key].second));
    }
    seen[key] = {parse_count(line.substr(eq + 1), path, no), no};
  }
  for (const char* key : {"x11", "x10", "x01"}) {
    if (!seen.count(key)) {
      throw ParseError(path + ": missing field '" + std::string(key) + "'");
    }
  }
  return DrsData{seen["x11"].first, seen["x10"].first, seen["x01"].first};
}

void write_trace_csv(const std::string& path, const ChainTrace& trace) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot write '" + path + "'");
  }
  out << "iter,N,phi,p,p1dot\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << (i + 1) << ',' << trace.n[i] << ',' << format_double(trace.phi[i])
        << ',' << format_double(trace.p[i]) << ','
        << format_double(trace.p1dot[i]) << '\n';
  }
  if (!out) {
    throw ParseError("failed writing '" + path + "'");
  }
}

ChainTrace read_trace_csv(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::string raw;
  int line_no = 0;
  ChainTrace trace;
  bool saw_header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (!saw_header) {
      std::string lower = line;
      for (char& ch : lower) ch = static_cast<char>(std::tolower(ch));
      auto header = split(lower, ',');
      for (auto& h : header) h = trim(h);
      if (header != std::vector<std::string>{"iter", "n", "phi", "p",
                                             "p1dot"}) {
        throw ParseError(path + " line " + std::to_string(line_no) +
                         ": expected header 'iter,N,phi,p,p1dot'");
      }
      saw_header = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 5) {
      throw ParseError(path + " line " + std::to_string(line_no) +
                       ": expected 5 comma-separated fields");
    }
    trace.n.push_back(parse_count(fields[1], path, line_no));
    trace.phi.push_back(parse_real(fields[2], path, line_no));
    trace.p.push_back(parse_real(fields[3], path, line_no));
    trace.p1dot.push_back(parse_real(fields[4], path, line_no));
  }
  if (!saw_header) {
    throw ParseError(path + ": missing header 'iter,N,phi,p,p1dot'");
  }
  if (trace.size() == 0) {
    throw ParseError(path + ": no draws found");
  }
  return trace;
}

std::vector<ConfigEntry> read_config_file(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::string raw;
  int line_no = 0;
  std::vector<ConfigEntry> entries;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path + " line " + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    ConfigEntry entry;
    entry.key = trim(line.substr(0, eq));
    entry.value = trim(line.substr(eq + 1));
    entry.line = line_no;
    if (entry.key.empty()) {
      throw ParseError(path + " line " + std::to_string(line_no) +
                       ": empty key");
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::string format_double(double value) {
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

}  // namespace drs

#include "dvflow/serialize.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

namespace dvflow {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// key = value lines; blank lines ignored.  Duplicate keys are an error.
std::map<std::string, std::string, std::less<>> parse_pairs(
    std::string_view text) {
  std::map<std::string, std::string, std::less<>> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    auto line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::parse,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (!out.emplace(key, value).second) {
      throw Error(ErrorCode::parse, "line " + std::to_string(line_no) +
                                        ": duplicate key '" + key + "'");
    }
  }
  return out;
}

const std::string& require(
    const std::map<std::string, std::string, std::less<>>& pairs,
    const std::string& key) {
  const auto it = pairs.find(key);
  if (it == pairs.end()) {
    throw Error(ErrorCode::parse, "missing key '" + key + "'");
  }
  return it->second;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    auto end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(parse_double(text.substr(pos, end - pos)));
    pos = end;
  }
  return out;
}

std::string join(const Field& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  if (text == "inf" || text == "-inf" || text == "nan") {
    throw Error(ErrorCode::parse, "non-finite number '" + std::string(text) + "'");
  }
  const auto res = std::from_chars(text.data(), text.data() + text.size(),
                                   value, std::chars_format::general);
  if (text.empty() || res.ec != std::errc{} ||
      res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::parse, "invalid number '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text) {
  text = trim(text);
  int value = 0;
  const auto res =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} ||
      res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::parse, "invalid integer '" + std::string(text) + "'");
  }
  return value;
}

std::string serialize(const ConstitutiveLaw& law) {
  std::ostringstream os;
  os << "c_p = " << format_double(law.c_p) << '\n'
     << "gamma = " << format_double(law.gamma) << '\n'
     << "c_mu = " << format_double(law.c_mu) << '\n'
     << "alpha = " << format_double(law.alpha) << '\n'
     << "pi_reference = " << to_string(law.pi_reference) << '\n';
  return os.str();
}

ConstitutiveLaw parse_law(std::string_view text) {
  const auto pairs = parse_pairs(text);
  for (const auto& [key, value] : pairs) {
    if (key != "c_p" && key != "gamma" && key != "c_mu" && key != "alpha" &&
        key != "pi_reference") {
      throw Error(ErrorCode::parse, "unknown law key '" + key + "'");
    }
  }
  ConstitutiveLaw law;
  law.c_p = parse_double(require(pairs, "c_p"));
  law.gamma = parse_double(require(pairs, "gamma"));
  law.c_mu = parse_double(require(pairs, "c_mu"));
  law.alpha = parse_double(require(pairs, "alpha"));
  const auto& ref = require(pairs, "pi_reference");
  if (ref == "zero") {
    law.pi_reference = PiReference::zero;
  } else if (ref == "infinity") {
    law.pi_reference = PiReference::infinity;
  } else if (ref == "one") {
    law.pi_reference = PiReference::one;
  } else {
    throw Error(ErrorCode::parse, "invalid pi_reference '" + ref + "'");
  }
  return law;
}

std::string serialize(const FluidState& state) {
  std::ostringstream os;
  os << "t = " << format_double(state.t) << '\n'
     << "n = " << state.rho.size() << '\n'
     << "rho = " << join(state.rho) << '\n'
     << "u = " << join(state.u) << '\n';
  return os.str();
}

FluidState parse_state(std::string_view text) {
  const auto pairs = parse_pairs(text);
  for (const auto& [key, value] : pairs) {
    if (key != "t" && key != "n" && key != "rho" && key != "u") {
      throw Error(ErrorCode::parse, "unknown state key '" + key + "'");
    }
  }
  FluidState state;
  state.t = parse_double(require(pairs, "t"));
  const int n = parse_int(require(pairs, "n"));
  state.rho = parse_list(require(pairs, "rho"));
  state.u = parse_list(require(pairs, "u"));
  if (n < 0 || state.rho.size() != static_cast<std::size_t>(n) ||
      state.u.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::parse, "state arrays do not match n = " +
                                      std::to_string(n));
  }
  return state;
}

}  // namespace dvflow

#include "hypermon/trace.hpp"

#include "hypermon/error.hpp"

#include <istream>
#include <ostream>

namespace hypermon {

namespace {

std::string_view trim(std::string_view s) {
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<Integer> parseInteger(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) return std::nullopt;
  Integer value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

std::string formatTuple(const std::vector<Integer>& tuple) {
  std::string out = "(";
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (k) out += ", ";
    out += tuple[k].str();
  }
  return out + ")";
}

std::string serialize(const IoPair& pair) {
  std::string out;
  for (const auto& v : pair.inputs) {
    out += v.str();
    out += ", ";
  }
  return out + pair.output.str();
}

bool Observation::insert(const IoPair& pair) {
  if (!index_.insert(pair).second) return false;
  pairs_.push_back(pair);
  return true;
}

std::string_view toString(Verdict3 v) {
  switch (v) {
    case Verdict3::Top: return "TOP";
    case Verdict3::Bottom: return "BOTTOM";
    case Verdict3::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::optional<Verdict3> parseVerdict(std::string_view text) {
  if (text == "TOP") return Verdict3::Top;
  if (text == "BOTTOM") return Verdict3::Bottom;
  if (text == "UNKNOWN") return Verdict3::Unknown;
  return std::nullopt;
}

IoPair parseCsvLine(std::string_view line, std::size_t arity, int lineNumber) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() != arity + 1) {
    throw FormatError("expected " + std::to_string(arity + 1) + " fields, found " +
                          std::to_string(fields.size()),
                      lineNumber);
  }
  IoPair pair;
  pair.inputs.reserve(arity);
  for (std::size_t k = 0; k < fields.size(); ++k) {
    auto value = parseInteger(fields[k]);
    if (!value) {
      throw FormatError("field " + std::to_string(k + 1) + " is not an integer: '" +
                            std::string(fields[k]) + "'",
                        lineNumber);
    }
    if (k < arity)
      pair.inputs.push_back(std::move(*value));
    else
      pair.output = std::move(*value);
  }
  return pair;
}

TraceReader::TraceReader(std::istream& in, std::size_t arity, bool strict, Domains domains)
    : in_(in), arity_(arity), strict_(strict), domains_(std::move(domains)) {}

std::optional<TraceLine> TraceReader::next() {
  std::string raw;
  while (std::getline(in_, raw)) {
    ++lineNumber_;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    try {
      IoPair pair = parseCsvLine(line, arity_, lineNumber_);
      for (std::size_t k = 0; k < domains_.size() && k < pair.inputs.size(); ++k) {
        if (!domains_[k].contains(pair.inputs[k])) {
          throw FormatError("input " + std::to_string(k + 1) + " = " + pair.inputs[k].str() +
                                " outside declared domain " + domains_[k].str(),
                            lineNumber_);
        }
      }
      return TraceLine{lineNumber_, std::move(pair)};
    } catch (const FormatError& e) {
      if (strict_) throw;
      diagnostics_.push_back({lineNumber_, e.what()});
    }
  }
  return std::nullopt;
}

std::vector<TraceLine> ingestStream(std::istream& in, std::size_t arity, bool strict) {
  TraceReader reader(in, arity, strict);
  std::vector<TraceLine> out;
  while (auto line = reader.next()) out.push_back(std::move(*line));
  return out;
}

void writeCsv(std::ostream& out, const std::vector<IoPair>& pairs) {
  for (const auto& p : pairs) out << serialize(p) << '\n';
}

}  // namespace hypermon

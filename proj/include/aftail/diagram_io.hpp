#pragma once

// Text format for truncated diagrams:
//
//   BRATTELI 1
//   levels <D>
//   vertices <c0> ... <cD>
//   incidence <n>          (for n = 0..D-1)
//   <c_n rows of c_{n+1} nonnegative integers>
//
// '#' starts a comment and blank lines are ignored. A row of width zero
// (c_{n+1} = 0) occupies no line.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "aftail/diagram.hpp"
#include "aftail/error.hpp"

namespace aftail {

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

inline std::uint64_t parse_natural(const std::string& tok, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a nonnegative integer, got '" + tok + "'");
  }
  return v;
}

}  // namespace detail

inline BratteliDiagram parse_diagram(std::string_view text) {
  auto lines = detail::tokenize(text);
  std::size_t cursor = 0;
  std::size_t last_line = lines.empty() ? 1 : lines.back().number;
  auto next = [&](const char* what) -> const detail::Line& {
    if (cursor == lines.size()) throw ParseError(last_line + 1, std::string("unexpected end of input, expected ") + what);
    return lines[cursor++];
  };

  const auto& header = next("header");
  if (header.tokens.size() != 2 || header.tokens[0] != "BRATTELI" || header.tokens[1] != "1") {
    throw ParseError(header.number, "malformed header, expected 'BRATTELI 1'");
  }
  const auto& levels = next("'levels'");
  if (levels.tokens.size() != 2 || levels.tokens[0] != "levels") {
    throw ParseError(levels.number, "expected 'levels <D>'");
  }
  std::uint64_t depth = detail::parse_natural(levels.tokens[1], levels.number);
  if (depth < 1) throw ParseError(levels.number, "depth must be at least 1");

  const auto& vertices = next("'vertices'");
  if (vertices.tokens.empty() || vertices.tokens[0] != "vertices") {
    throw ParseError(vertices.number, "expected 'vertices <c0> ... <cD>'");
  }
  if (vertices.tokens.size() != depth + 2) {
    throw ParseError(vertices.number, "expected " + std::to_string(depth + 1) + " vertex counts, got " +
                                          std::to_string(vertices.tokens.size() - 1));
  }
  std::vector<std::size_t> counts;
  for (std::size_t k = 1; k < vertices.tokens.size(); ++k) {
    counts.push_back(detail::parse_natural(vertices.tokens[k], vertices.number));
  }

  std::vector<IncidenceMatrix> incidence;
  for (std::size_t n = 0; n < depth; ++n) {
    const auto& head = next("'incidence'");
    if (head.tokens.size() != 2 || head.tokens[0] != "incidence" ||
        detail::parse_natural(head.tokens[1], head.number) != n) {
      throw ParseError(head.number, "expected 'incidence " + std::to_string(n) + "'");
    }
    IncidenceMatrix m;
    for (std::size_t i = 0; i < counts[n]; ++i) {
      std::vector<std::uint64_t> row;
      if (counts[n + 1] > 0) {
        const auto& line = next("incidence row");
        if (line.tokens.size() != counts[n + 1]) {
          throw ParseError(line.number, "incidence " + std::to_string(n) + " row " + std::to_string(i) +
                                            " needs " + std::to_string(counts[n + 1]) + " entries, got " +
                                            std::to_string(line.tokens.size()));
        }
        for (const auto& tok : line.tokens) row.push_back(detail::parse_natural(tok, line.number));
      }
      m.push_back(std::move(row));
    }
    incidence.push_back(std::move(m));
  }
  if (cursor != lines.size()) throw ParseError(lines[cursor].number, "unexpected trailing content");
  return {std::move(counts), std::move(incidence)};
}

inline std::string serialize_diagram(const BratteliDiagram& d) {
  std::ostringstream out;
  out << "BRATTELI 1\nlevels " << d.depth() << "\nvertices";
  for (auto c : d.vertex_counts()) out << ' ' << c;
  out << '\n';
  for (std::size_t n = 0; n < d.depth(); ++n) {
    out << "incidence " << n << '\n';
    for (const auto& row : d.incidence(n)) {
      if (row.empty()) continue;
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
      out << '\n';
    }
  }
  return out.str();
}

inline BratteliDiagram load_diagram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open diagram file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_diagram(buf.str());
}

}  // namespace aftail

#include "polya/network_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "polya/error.hpp"

namespace polya {
namespace {

// Splits a line on whitespace and commas, dropping anything after '#'.
std::vector<std::string_view> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  auto is_sep = [](char c) {
    return c == ' ' || c == '\t' || c == ',' || c == '\r' || c == ';';
  };
  while (pos < line.size()) {
    while (pos < line.size() && is_sep(line[pos])) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && !is_sep(line[pos])) ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

std::vector<std::vector<std::string_view>> token_lines(std::string_view text,
                                                       std::vector<std::size_t>* line_numbers) {
  std::vector<std::vector<std::string_view>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto tokens = tokenize(text.substr(pos, end - pos));
    if (!tokens.empty()) {
      rows.push_back(std::move(tokens));
      line_numbers->push_back(line_no);
    }
    pos = end + 1;
  }
  return rows;
}

std::size_t parse_count(std::string_view tok, std::size_t line_no) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": expected a non-negative integer, got '" +
                     std::string(tok) + "'");
  }
  return value;
}

}  // namespace

Network parse_adjacency_matrix(std::string_view text) {
  std::vector<std::size_t> line_numbers;
  auto rows = token_lines(text, &line_numbers);
  if (rows.empty()) throw ParseError("adjacency matrix is empty");

  std::size_t first_row = 0;
  std::size_t n = 0;
  if (rows[0].size() == 1 && rows.size() > 1) {
    n = parse_count(rows[0][0], line_numbers[0]);
    first_row = 1;
  } else {
    n = rows[0].size();
  }
  if (n == 0) throw ParseError("adjacency matrix declares zero nodes");
  if (rows.size() - first_row != n) {
    throw ParseError("expected " + std::to_string(n) + " matrix rows, found " +
                     std::to_string(rows.size() - first_row));
  }

  std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = rows[first_row + r];
    const std::size_t line_no = line_numbers[first_row + r];
    if (row.size() != n) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(n) + " entries, found " +
                       std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t v = parse_count(row[c], line_no);
      if (v > 1) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": adjacency entries must be 0 or 1");
      }
      a[r][c] = static_cast<char>(v);
    }
  }

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i]) {
      throw ParseError("self-loop on the diagonal at node " +
                       std::to_string(i + 1));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a[i][j] != a[j][i]) {
        throw AsymmetricAdjacencyError(
            "adjacency matrix is not symmetric: entry (" +
            std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " +
            std::to_string(int(a[i][j])) + " but (" + std::to_string(j + 1) +
            "," + std::to_string(i + 1) + ") = " + std::to_string(int(a[j][i])));
      }
      if (a[i][j]) edges.emplace_back(i, j);
    }
  }
  return Network(n, edges);
}

Network parse_edge_list(std::string_view text) {
  std::vector<std::size_t> line_numbers;
  auto rows = token_lines(text, &line_numbers);
  std::vector<Edge> edges;
  std::size_t n = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 2) {
      throw ParseError("line " + std::to_string(line_numbers[r]) +
                       ": expected two node ids");
    }
    std::size_t u = parse_count(row[0], line_numbers[r]);
    std::size_t v = parse_count(row[1], line_numbers[r]);
    if (u == 0 || v == 0) {
      throw ParseError("line " + std::to_string(line_numbers[r]) +
                       ": node ids are 1-indexed");
    }
    if (u == v) {
      throw ParseError("line " + std::to_string(line_numbers[r]) +
                       ": self-loop at node " + std::to_string(u));
    }
    n = std::max({n, u, v});
    edges.emplace_back(u - 1, v - 1);
  }
  if (n == 0) throw ParseError("edge list contains no edges");
  return Network(n, edges);
}

void require_connected(const Network& net) {
  auto comps = net.connected_components();
  if (comps.size() <= 1 && net.size() > 0) return;
  std::ostringstream msg;
  msg << "graph is disconnected (" << comps.size() << " components):";
  for (const auto& c : comps) {
    msg << " {";
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k == 8 && c.size() > 10) {
        msg << ", ... " << c.size() << " nodes";
        break;
      }
      msg << (k ? "," : "") << c[k] + 1;
    }
    msg << "}";
  }
  throw DisconnectedGraphError(msg.str(), std::move(comps));
}

NetworkFormat format_from_extension(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".edges" || ext == ".el" || ext == ".edgelist") {
    return NetworkFormat::kEdgeList;
  }
  return NetworkFormat::kAdjacencyMatrix;
}

Network load_network_text(std::string_view text, NetworkFormat format,
                          bool largest_component) {
  Network net = format == NetworkFormat::kEdgeList
                    ? parse_edge_list(text)
                    : parse_adjacency_matrix(text);
  if (largest_component) {
    auto comps = net.connected_components();
    if (comps.size() > 1) {
      auto best = std::max_element(
          comps.begin(), comps.end(),
          [](const auto& a, const auto& b) { return a.size() < b.size(); });
      net = net.induced_subgraph(*best);
    }
  }
  require_connected(net);
  return net;
}

Network load_network(const std::filesystem::path& path,
                     const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open network file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto format = options.format == NetworkFormat::kAuto
                    ? format_from_extension(path)
                    : options.format;
  return load_network_text(buf.str(), format, options.largest_component);
}

void write_adjacency_matrix(std::ostream& os, const Network& net) {
  os << net.size() << '\n';
  for (NodeId i = 0; i < net.size(); ++i) {
    for (NodeId j = 0; j < net.size(); ++j) {
      os << (j ? " " : "") << (net.adjacent(i, j) ? '1' : '0');
    }
    os << '\n';
  }
}

void write_edge_list(std::ostream& os, const Network& net) {
  for (const auto& [u, v] : net.edges()) os << u + 1 << ' ' << v + 1 << '\n';
}

}  // namespace polya

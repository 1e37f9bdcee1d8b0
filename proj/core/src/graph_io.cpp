#include "qmin/graph_io.hpp"

#include <sstream>

#include "json.hpp"
#include "qmin/error.hpp"

namespace qmin {

std::string to_graph6(const Graph& g) {
  const long n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out += "~~";
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = nbits = 0;
      }
    }
  if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

Graph from_graph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty graph6 string");
  for (char c : text)
    if (c < 63 || c > 126) throw Error(ErrorKind::ParseError, "invalid graph6 character");
  std::size_t pos = 0;
  long n = 0;
  auto take = [&](int count) {
    long v = 0;
    for (int i = 0; i < count; ++i) {
      if (pos >= text.size()) throw Error(ErrorKind::ParseError, "truncated graph6 header");
      v = (v << 6) | (text[pos++] - 63);
    }
    return v;
  };
  if (text[0] != '~') {
    n = take(1);
  } else if (text.size() > 1 && text[1] == '~') {
    pos = 2;
    n = take(6);
  } else {
    pos = 1;
    n = take(3);
  }
  const std::size_t need_bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t need_chars = (need_bits + 5) / 6;
  if (text.size() - pos != need_chars) throw Error(ErrorKind::ParseError, "graph6 length does not match order");
  Graph g(static_cast<int>(n));
  std::size_t k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      const int byte = text[pos + k / 6] - 63;
      if (byte >> (5 - static_cast<int>(k % 6)) & 1) g.add_edge(i, j);
    }
  return g;
}

std::string graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.order();
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({u + 1, v + 1});
  return j.dump();
}

Graph graph_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!j.contains("n") || !j["n"].is_number_integer()) throw Error(ErrorKind::ParseError, "graph JSON needs integer n");
  const int n = j["n"].get<int>();
  Graph g(n);
  if (j.contains("edges"))
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::ParseError, "edge must be a pair");
      const int u = e[0].get<int>() - 1, v = e[1].get<int>() - 1;
      if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw Error(ErrorKind::ParseError, "edge endpoint out of range");
      g.add_edge(u, v);
    }
  return g;
}

std::string describe(const Graph& g) {
  std::ostringstream os;
  os << "n=" << g.order() << " edges=";
  bool first = true;
  for (auto [u, v] : g.edges()) {
    if (!first) os << ',';
    first = false;
    if (g.order() <= 9)
      os << u + 1 << v + 1;
    else
      os << u + 1 << '-' << v + 1;
  }
  return os.str();
}

}  // namespace qmin

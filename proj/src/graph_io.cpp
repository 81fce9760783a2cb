#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "dimerlab/torus_graph.hpp"

namespace dimerlab {

namespace {

double parse_double(const std::string& tok, int line) {
  double x = 0.0;
  const char* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, x);
  if (ec != std::errc() || p != end) throw ParseError(line, "expected a number, got '" + tok + "'");
  return x;
}

int parse_int(const std::string& tok, int line) {
  int x = 0;
  const char* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, x);
  if (ec != std::errc() || p != end) throw ParseError(line, "expected an integer, got '" + tok + "'");
  return x;
}

std::string fmt(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

}  // namespace

GraphPtr parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool have_header = false;
  TorusGraph::Input g;
  std::vector<int> ids;
  struct PendingEdge {
    int tail, head, line;
    Dart dart;
  };
  std::vector<PendingEdge> edges;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    const std::string& kind = tok[0];
    if (kind == "torus") {
      if (tok.size() != 3) throw ParseError(line, "torus line needs 2 fields");
      if (have_header) throw ParseError(line, "duplicate torus header");
      g.tau = {parse_double(tok[1], line), parse_double(tok[2], line)};
      if (!(g.tau.imag() > 0.0)) throw ParseError(line, "Im(tau) must be positive");
      have_header = true;
    } else if (!have_header) {
      throw ParseError(line, "missing torus header");
    } else if (kind == "v") {
      if (tok.size() != 4) throw ParseError(line, "vertex line needs 3 fields");
      ids.push_back(parse_int(tok[1], line));
      g.positions.emplace_back(parse_double(tok[2], line), parse_double(tok[3], line));
    } else if (kind == "e") {
      if (tok.size() != 6) throw ParseError(line, "edge line needs 5 fields");
      PendingEdge e{parse_int(tok[1], line), parse_int(tok[2], line), line, {}};
      e.dart.conductance = parse_double(tok[3], line);
      if (!(e.dart.conductance >= 0.0)) throw ParseError(line, "negative conductance");
      e.dart.crossing = HomologyClass::from_cuts(parse_int(tok[4], line), parse_int(tok[5], line));
      edges.push_back(e);
    } else {
      throw ParseError(line, "unknown record '" + kind + "'");
    }
  }
  if (!have_header) throw ParseError(line, "missing torus header");

  // Vertex ids may be arbitrary distinct integers; map them to 0..V-1 in file order.
  std::vector<std::pair<int, int>> index;
  for (int k = 0; k < int(ids.size()); ++k) index.push_back({ids[k], k});
  std::sort(index.begin(), index.end());
  for (std::size_t k = 1; k < index.size(); ++k)
    if (index[k].first == index[k - 1].first) throw InvariantError("duplicate vertex id " + std::to_string(index[k].first));
  auto lookup = [&](int id, int ln) {
    auto it = std::lower_bound(index.begin(), index.end(), std::pair<int, int>{id, -1});
    if (it == index.end() || it->first != id) throw ParseError(ln, "unknown vertex " + std::to_string(id));
    return it->second;
  };
  for (auto& e : edges) {
    e.dart.tail = lookup(e.tail, e.line);
    e.dart.head = lookup(e.head, e.line);
    g.darts.push_back(e.dart);
  }
  return TorusGraph::create(std::move(g));
}

GraphPtr load_graph(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open graph file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_graph(ss.str());
}

std::string format_graph(const TorusGraph& g) {
  std::ostringstream out;
  out << "torus " << fmt(g.modulus().tau().real()) << ' ' << fmt(g.modulus().tau().imag()) << '\n';
  for (int v = 0; v < g.vertex_count(); ++v)
    out << "v " << v << ' ' << fmt(g.positions()[v].real()) << ' ' << fmt(g.positions()[v].imag()) << '\n';
  for (const Dart& d : g.darts())
    out << "e " << d.tail << ' ' << d.head << ' ' << fmt(d.conductance) << ' ' << d.crossing.a() << ' '
        << d.crossing.b() << '\n';
  return out.str();
}

void save_graph(const TorusGraph& g, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write graph file " + path);
  f << format_graph(g);
}

}  // namespace dimerlab

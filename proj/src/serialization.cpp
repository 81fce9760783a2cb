#include "dimerlab/serialization.hpp"

#include "json.hpp"

namespace dimerlab {

using nlohmann::json;

namespace {

json law_json(const HeightLaw& law) {
  json out;
  out["tau"] = {law.tau.real(), law.tau.imag()};
  out["M"] = law.M;
  out["aliasing"] = law.aliasing;
  out["law"] = json::array();
  for (const auto& [h, p] : law.p) out["law"].push_back({{"r", h.r}, {"s", h.s}, {"p", p}});
  return out;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string law_to_json(const HeightLaw& law) { return law_json(law).dump(2) + "\n"; }

std::string law_to_json(const EmpiricalLaw& law) {
  json out = law_json(law.law);
  out["samples"] = law.samples;
  for (auto& entry : out["law"]) {
    const HomologyClass h{entry["r"].get<int>(), entry["s"].get<int>()};
    auto it = law.std_error.find(h);
    entry["stderr"] = it == law.std_error.end() ? 0.0 : it->second;
  }
  return out.dump(2) + "\n";
}

HeightLaw law_from_json(const std::string& text) {
  const json in = parse(text);
  try {
    HeightLaw law;
    law.tau = {in.at("tau").at(0).get<double>(), in.at("tau").at(1).get<double>()};
    law.M = in.value("M", 0);
    law.aliasing = in.value("aliasing", 0.0);
    for (const auto& e : in.at("law")) law.p[HomologyClass{e.at("r").get<int>(), e.at("s").get<int>()}] = e.at("p").get<double>();
    return law;
  } catch (const json::exception& e) {
    throw Error(std::string("bad law JSON: ") + e.what());
  }
}

std::string matching_to_json(const TemperleyanGraph& G, const Matching& m) {
  json out = json::array();
  for (auto [w, b] : m.pairs(G)) out.push_back({w, b});
  return out.dump() + "\n";
}

Matching matching_from_json(const TemperleyanGraph& G, const std::string& text) {
  const json in = parse(text);
  std::vector<int> white_edge(G.white_count(), -1);
  try {
    for (const auto& pair : in) {
      const int w = pair.at(0).get<int>();
      const int b = pair.at(1).get<int>();
      if (w < 0 || w >= G.white_count()) throw InvariantError("unknown white vertex " + std::to_string(w));
      for (int e : G.white_edges(w))
        if (G.edge(e).black == b) white_edge[w] = e;
      if (white_edge[w] < 0) throw InvariantError("no edge between white " + std::to_string(w) + " and black " + std::to_string(b));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("bad matching JSON: ") + e.what());
  }
  return make_matching(G, std::move(white_edge));
}

std::string crsf_to_json(const Crsf& f) {
  json out = json::array();
  for (int v = 0; v < int(f.field.size()); ++v)
    out.push_back({{"vertex", v}, {"edge", f.field[v]}, {"head", f.graph->dart(f.field[v]).head}});
  return out.dump() + "\n";
}

Crsf crsf_from_json(GraphPtr g, const std::string& text) {
  const json in = parse(text);
  std::vector<int> field(g->vertex_count(), -1);
  try {
    for (const auto& e : in) {
      const int v = e.at("vertex").get<int>();
      if (v < 0 || v >= g->vertex_count()) throw InvariantError("unknown vertex " + std::to_string(v));
      field[v] = e.at("edge").get<int>();
    }
  } catch (const json::exception& e) {
    throw Error(std::string("bad CRSF JSON: ") + e.what());
  }
  return make_crsf(std::move(g), std::move(field));
}

}  // namespace dimerlab

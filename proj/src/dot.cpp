#include "gbp/dot.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace gbp {

namespace {

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string export_dot(const Instance& instance, std::optional<std::span<const EdgeId>> solution) {
  std::vector<char> chosen(instance.edges.size(), 0);
  if (solution)
    for (EdgeId e : *solution) chosen.at(e) = 1;
  std::ostringstream out;
  out << "graph gbp {\n  node [shape=circle];\n";
  for (VertexId v = 0; v < instance.vertex_count; ++v) {
    out << "  " << v;
    if (instance.embedding) out << " [pos=\"" << (*instance.embedding)[v].x << "," << (*instance.embedding)[v].y << "!\"]";
    out << ";\n";
  }
  for (HabitatId h = 0; h < static_cast<HabitatId>(instance.habitats.size()); ++h) {
    out << "  subgraph habitat_" << h << " {\n    node [color=\"" << kPalette[h % kPalette.size()]
        << "\", style=bold];\n    ";
    for (VertexId v : instance.habitats[h]) out << v << "; ";
    out << "\n  }\n";
  }
  for (EdgeId id = 0; id < static_cast<EdgeId>(instance.edges.size()); ++id) {
    const Edge& e = instance.edges[id];
    out << "  " << e.u << " -- " << e.v << " [label=\"" << e.cost << "\"";
    if (e.forced) out << ", color=red, style=dashed";
    if (chosen[id]) out << ", penwidth=3, style=bold";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace gbp

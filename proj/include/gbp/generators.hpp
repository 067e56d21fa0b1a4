#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gbp/model.hpp"

namespace gbp {

/// Seeded source of randomness. Bounded draws use rejection sampling on top
/// of mt19937_64 so sequences agree across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// True with probability num / den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

enum class Regime { kDeg3, kDeg4, kPlanarH3, kGadget };

const char* to_string(Regime regime);
Regime regime_from_string(const std::string& name);

struct GeneratorConfig {
  Regime regime = Regime::kDeg3;
  int n = 12;
  int r = 6;
  std::uint64_t seed = 1;
  Cost cost_min = 0;
  Cost cost_max = 5;
};

/// One random instance of the regime. Degree-bounded regimes produce maximum
/// degree 3 (habitats up to size 6) or 4 (habitats up to size 4); the planar
/// regime carries an embedding and habitats of size at most 3; the gadget
/// regime builds a reduction instance from a small cubic planar graph.
Instance generate(const GeneratorConfig& config);

/// Five-vertex planar instance with one triangle habitat nested around two
/// face habitats. Vertex order: left, right, bottom, top, center.
Instance nested_triangles_example();

}  // namespace gbp

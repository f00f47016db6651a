#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "optwb/tiling.hpp"

namespace optwb::check {

inline TilingInstance checkerboard() {
  return TilingInstance({"a", "b"}, {{"a", "b"}, {"b", "a"}},
                        {{"a", "b"}, {"b", "a"}});
}

inline TilingInstance one_tile_self_compatible() {
  return TilingInstance({"t"}, {{"t", "t"}}, {{"t", "t"}});
}

inline TilingInstance one_tile_empty() { return TilingInstance({"t"}, {}, {}); }

// Tiles t0..t(n-1); each ordered pair enters H and V independently.
inline TilingInstance random_instance(std::mt19937& rng, std::size_t tiles,
                                      double density = 0.5) {
  std::bernoulli_distribution keep(density);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < tiles; ++i) names.push_back("t" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> h, v;
  for (const auto& a : names) {
    for (const auto& b : names) {
      if (keep(rng)) h.emplace_back(a, b);
      if (keep(rng)) v.emplace_back(a, b);
    }
  }
  return TilingInstance(names, h, v);
}

}  // namespace optwb::check

#pragma once

// Tiling instances (tile types with horizontal and vertical adjacency
// relations) and the finite searches used as evidence about them: periodic
// (torus) tilings, rectangle tilings and untileability certificates.
//
// Coordinates: x is horizontal (H relation, left to right), y is vertical
// (V relation, bottom to top). Grids are indexed grid[y][x].

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace optwb {

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using TilePair = std::pair<std::size_t, std::size_t>;

class TilingInstance {
 public:
  /// Validates names and pairs; throws InstanceError.
  TilingInstance(std::vector<std::string> tiles,
                 const std::vector<std::pair<std::string, std::string>>& h,
                 const std::vector<std::pair<std::string, std::string>>& v);

  const std::vector<std::string>& tiles() const { return tiles_; }
  std::size_t size() const { return tiles_.size(); }

  /// Index of a tile name, or nullopt.
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// t2 may sit to the right of t1.
  bool h_compatible(std::size_t t1, std::size_t t2) const {
    return h_.count({t1, t2}) != 0;
  }
  /// t2 may sit above t1.
  bool v_compatible(std::size_t t1, std::size_t t2) const {
    return v_.count({t1, t2}) != 0;
  }

  const std::set<TilePair>& h_pairs() const { return h_; }
  const std::set<TilePair>& v_pairs() const { return v_; }

  /// (T×T) minus the relation, in row-major order over the tile list.
  std::vector<TilePair> h_incompatible() const;
  std::vector<TilePair> v_incompatible() const;

 private:
  std::vector<std::string> tiles_;
  std::set<TilePair> h_;
  std::set<TilePair> v_;
};

/// `{"tiles": [...], "h": [[a, b], ...], "v": [[a, b], ...]}`.
/// Throws InstanceError on schema violations or unknown/duplicate tiles.
TilingInstance parse_instance(std::string_view json_text);
nlohmann::json instance_to_json(const TilingInstance& inst);

/// Width × height grid of tile names.
class TileGrid {
 public:
  TileGrid(std::size_t width, std::size_t height);
  /// rows[y][x]; throws std::invalid_argument if ragged or empty.
  explicit TileGrid(const std::vector<std::vector<std::string>>& rows);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  const std::string& at(std::size_t x, std::size_t y) const {
    return cells_[y * width_ + x];
  }
  void set(std::size_t x, std::size_t y, std::string tile) {
    cells_[y * width_ + x] = std::move(tile);
  }
  std::vector<std::vector<std::string>> rows() const;

  friend bool operator==(const TileGrid&, const TileGrid&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::string> cells_;
};

/// Labeling of a p×q torus; p is the horizontal period, q the vertical one.
struct PeriodicTiling {
  TileGrid grid;

  std::size_t p() const { return grid.width(); }
  std::size_t q() const { return grid.height(); }

  friend bool operator==(const PeriodicTiling&,
                         const PeriodicTiling&) = default;
};

/// Window of a plane tiling: only internal adjacencies are constrained.
struct RectTiling {
  TileGrid grid;

  friend bool operator==(const RectTiling&, const RectTiling&) = default;
};

/// `{"p": n, "q": n, "grid": [[...], ...]}` with grid[y][x].
/// Throws InstanceError on schema violations.
PeriodicTiling parse_periodic_tiling(std::string_view json_text);
nlohmann::json periodic_tiling_to_json(const PeriodicTiling& pt);

bool verify_periodic(const TilingInstance& inst, const PeriodicTiling& pt);
bool verify_rectangle(const TilingInstance& inst, const RectTiling& rt);

/// Tori are tried by increasing area, then p, then q; cells are filled in
/// row-major order trying tiles in instance order.
std::optional<PeriodicTiling> find_periodic(const TilingInstance& inst,
                                            std::size_t max_p,
                                            std::size_t max_q);

std::optional<RectTiling> find_rectangle(const TilingInstance& inst,
                                         std::size_t width,
                                         std::size_t height);

/// Smallest n ≤ max_n such that no n×n square can be tiled.
std::optional<std::size_t> certify_untileable(const TilingInstance& inst,
                                              std::size_t max_n);

/// Repeats the grid horizontally `times_x` and vertically `times_y` times.
PeriodicTiling replicate(const PeriodicTiling& pt, std::size_t times_x,
                         std::size_t times_y);

/// Unrolls the torus into a width × height window starting at (0, 0).
RectTiling unroll(const PeriodicTiling& pt, std::size_t width,
                  std::size_t height);

inline constexpr std::size_t kDefaultMaxPeriod = 6;
inline constexpr std::size_t kDefaultMaxSquare = 6;

}  // namespace optwb

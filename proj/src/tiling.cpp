#include "optwb/tiling.hpp"

#include <algorithm>
#include <tuple>

#include "optwb/core.hpp"

namespace optwb {

namespace {

std::set<TilePair> resolve_pairs(
    const TilingInstance& inst,
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const char* relation) {
  std::set<TilePair> out;
  for (const auto& [a, b] : pairs) {
    auto ia = inst.index_of(a);
    auto ib = inst.index_of(b);
    if (!ia || !ib) {
      throw InstanceError(std::string("relation ") + relation +
                          " references unknown tile '" + (ia ? b : a) + "'");
    }
    out.emplace(*ia, *ib);
  }
  return out;
}

std::vector<TilePair> complement(std::size_t n, const std::set<TilePair>& rel) {
  std::vector<TilePair> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!rel.count({a, b})) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_pairs(
    const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) {
    throw InstanceError(std::string("missing field '") + key + "'");
  }
  const auto& arr = j.at(key);
  if (!arr.is_array()) {
    throw InstanceError(std::string("field '") + key + "' must be an array");
  }
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
        !pair[1].is_string()) {
      throw InstanceError(std::string("entries of '") + key +
                          "' must be [string, string]");
    }
    out.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
  }
  return out;
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceError(std::string("malformed JSON: ") + e.what());
  }
}

// Backtracking fill of a width × height grid of tile indices, row-major.
// With `wrap`, the last column must fit next to the first and the top row
// below the bottom one.
class GridSearch {
 public:
  GridSearch(const TilingInstance& inst, std::size_t width, std::size_t height,
             bool wrap)
      : inst_(inst),
        width_(width),
        height_(height),
        wrap_(wrap),
        cells_(width * height, 0) {}

  bool run() { return fill(0); }

  TileGrid grid() const {
    TileGrid g(width_, height_);
    for (std::size_t y = 0; y < height_; ++y) {
      for (std::size_t x = 0; x < width_; ++x) {
        g.set(x, y, inst_.tiles()[cells_[y * width_ + x]]);
      }
    }
    return g;
  }

 private:
  bool fits(std::size_t x, std::size_t y, std::size_t t) const {
    if (x > 0 && !inst_.h_compatible(at(x - 1, y), t)) return false;
    if (y > 0 && !inst_.v_compatible(at(x, y - 1), t)) return false;
    if (wrap_) {
      if (x + 1 == width_) {
        std::size_t first = x == 0 ? t : at(0, y);
        if (!inst_.h_compatible(t, first)) return false;
      }
      if (y + 1 == height_) {
        std::size_t bottom = y == 0 ? t : at(x, 0);
        if (!inst_.v_compatible(t, bottom)) return false;
      }
    }
    return true;
  }

  std::size_t at(std::size_t x, std::size_t y) const {
    return cells_[y * width_ + x];
  }

  bool fill(std::size_t cell) {
    if (cell == cells_.size()) return true;
    const std::size_t x = cell % width_;
    const std::size_t y = cell / width_;
    for (std::size_t t = 0; t < inst_.size(); ++t) {
      if (!fits(x, y, t)) continue;
      cells_[cell] = t;
      if (fill(cell + 1)) return true;
    }
    return false;
  }

  const TilingInstance& inst_;
  std::size_t width_;
  std::size_t height_;
  bool wrap_;
  std::vector<std::size_t> cells_;
};

// Tile indices for every cell, or nullopt if a cell names an unknown tile.
std::optional<std::vector<std::size_t>> grid_indices(const TilingInstance& inst,
                                                     const TileGrid& g) {
  std::vector<std::size_t> out;
  out.reserve(g.width() * g.height());
  for (std::size_t y = 0; y < g.height(); ++y) {
    for (std::size_t x = 0; x < g.width(); ++x) {
      auto idx = inst.index_of(g.at(x, y));
      if (!idx) return std::nullopt;
      out.push_back(*idx);
    }
  }
  return out;
}

}  // namespace

TilingInstance::TilingInstance(
    std::vector<std::string> tiles,
    const std::vector<std::pair<std::string, std::string>>& h,
    const std::vector<std::pair<std::string, std::string>>& v)
    : tiles_(std::move(tiles)) {
  if (tiles_.empty()) throw InstanceError("instance needs at least one tile");
  std::set<std::string> seen;
  for (const auto& t : tiles_) {
    if (!is_identifier(t)) {
      throw InstanceError("tile name '" + t + "' is not an identifier");
    }
    if (!seen.insert(t).second) {
      throw InstanceError("duplicate tile '" + t + "'");
    }
  }
  h_ = resolve_pairs(*this, h, "h");
  v_ = resolve_pairs(*this, v, "v");
}

std::optional<std::size_t> TilingInstance::index_of(std::string_view name) const {
  auto it = std::find(tiles_.begin(), tiles_.end(), name);
  if (it == tiles_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - tiles_.begin());
}

std::vector<TilePair> TilingInstance::h_incompatible() const {
  return complement(tiles_.size(), h_);
}

std::vector<TilePair> TilingInstance::v_incompatible() const {
  return complement(tiles_.size(), v_);
}

TilingInstance parse_instance(std::string_view json_text) {
  const nlohmann::json j = parse_json(json_text);
  if (!j.is_object()) throw InstanceError("instance must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "tiles" && key != "h" && key != "v") {
      throw InstanceError("unknown field '" + key + "'");
    }
  }
  if (!j.contains("tiles") || !j.at("tiles").is_array()) {
    throw InstanceError("field 'tiles' must be an array");
  }
  std::vector<std::string> tiles;
  for (const auto& t : j.at("tiles")) {
    if (!t.is_string()) throw InstanceError("tile names must be strings");
    tiles.push_back(t.get<std::string>());
  }
  return TilingInstance(std::move(tiles), read_pairs(j, "h"),
                        read_pairs(j, "v"));
}

nlohmann::json instance_to_json(const TilingInstance& inst) {
  auto pairs = [&inst](const std::set<TilePair>& rel) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [a, b] : rel) {
      out.push_back({inst.tiles()[a], inst.tiles()[b]});
    }
    return out;
  };
  return {{"tiles", inst.tiles()},
          {"h", pairs(inst.h_pairs())},
          {"v", pairs(inst.v_pairs())}};
}

TileGrid::TileGrid(std::size_t width, std::size_t height)
    : width_(width), height_(height), cells_(width * height) {}

TileGrid::TileGrid(const std::vector<std::vector<std::string>>& rows)
    : width_(rows.empty() ? 0 : rows.front().size()), height_(rows.size()) {
  if (height_ == 0 || width_ == 0) {
    throw std::invalid_argument("tile grid must be non-empty");
  }
  for (const auto& row : rows) {
    if (row.size() != width_) {
      throw std::invalid_argument("tile grid rows differ in length");
    }
    cells_.insert(cells_.end(), row.begin(), row.end());
  }
}

std::vector<std::vector<std::string>> TileGrid::rows() const {
  std::vector<std::vector<std::string>> out;
  for (std::size_t y = 0; y < height_; ++y) {
    out.emplace_back(cells_.begin() + static_cast<std::ptrdiff_t>(y * width_),
                     cells_.begin() + static_cast<std::ptrdiff_t>((y + 1) * width_));
  }
  return out;
}

PeriodicTiling parse_periodic_tiling(std::string_view json_text) {
  const nlohmann::json j = parse_json(json_text);
  if (!j.is_object() || !j.contains("p") || !j.contains("q") ||
      !j.contains("grid")) {
    throw InstanceError("periodic tiling needs fields 'p', 'q' and 'grid'");
  }
  if (!j.at("p").is_number_unsigned() || !j.at("q").is_number_unsigned()) {
    throw InstanceError("periods must be positive integers");
  }
  const auto p = j.at("p").get<std::size_t>();
  const auto q = j.at("q").get<std::size_t>();
  if (p == 0 || q == 0) throw InstanceError("periods must be positive");
  std::vector<std::vector<std::string>> rows;
  try {
    rows = j.at("grid").get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception&) {
    throw InstanceError("grid must be an array of arrays of strings");
  }
  if (rows.size() != q) {
    throw InstanceError("grid has " + std::to_string(rows.size()) +
                        " rows, expected q = " + std::to_string(q));
  }
  for (const auto& row : rows) {
    if (row.size() != p) {
      throw InstanceError("grid row has " + std::to_string(row.size()) +
                          " cells, expected p = " + std::to_string(p));
    }
  }
  return PeriodicTiling{TileGrid(rows)};
}

nlohmann::json periodic_tiling_to_json(const PeriodicTiling& pt) {
  return {{"p", pt.p()}, {"q", pt.q()}, {"grid", pt.grid.rows()}};
}

bool verify_periodic(const TilingInstance& inst, const PeriodicTiling& pt) {
  const auto idx = grid_indices(inst, pt.grid);
  if (!idx) return false;
  const std::size_t p = pt.p();
  const std::size_t q = pt.q();
  auto at = [&](std::size_t x, std::size_t y) { return (*idx)[y * p + x]; };
  for (std::size_t y = 0; y < q; ++y) {
    for (std::size_t x = 0; x < p; ++x) {
      if (!inst.h_compatible(at(x, y), at((x + 1) % p, y))) return false;
      if (!inst.v_compatible(at(x, y), at(x, (y + 1) % q))) return false;
    }
  }
  return true;
}

bool verify_rectangle(const TilingInstance& inst, const RectTiling& rt) {
  const auto idx = grid_indices(inst, rt.grid);
  if (!idx) return false;
  const std::size_t w = rt.grid.width();
  const std::size_t h = rt.grid.height();
  auto at = [&](std::size_t x, std::size_t y) { return (*idx)[y * w + x]; };
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      if (x + 1 < w && !inst.h_compatible(at(x, y), at(x + 1, y))) return false;
      if (y + 1 < h && !inst.v_compatible(at(x, y), at(x, y + 1))) return false;
    }
  }
  return true;
}

std::optional<PeriodicTiling> find_periodic(const TilingInstance& inst,
                                            std::size_t max_p,
                                            std::size_t max_q) {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> shapes;
  for (std::size_t p = 1; p <= max_p; ++p) {
    for (std::size_t q = 1; q <= max_q; ++q) shapes.emplace_back(p * q, p, q);
  }
  std::sort(shapes.begin(), shapes.end());
  for (const auto& [area, p, q] : shapes) {
    GridSearch search(inst, p, q, /*wrap=*/true);
    if (search.run()) return PeriodicTiling{search.grid()};
  }
  return std::nullopt;
}

std::optional<RectTiling> find_rectangle(const TilingInstance& inst,
                                         std::size_t width,
                                         std::size_t height) {
  if (width == 0 || height == 0) {
    throw std::invalid_argument("rectangle dimensions must be positive");
  }
  GridSearch search(inst, width, height, /*wrap=*/false);
  if (!search.run()) return std::nullopt;
  return RectTiling{search.grid()};
}

std::optional<std::size_t> certify_untileable(const TilingInstance& inst,
                                              std::size_t max_n) {
  for (std::size_t n = 1; n <= max_n; ++n) {
    if (!find_rectangle(inst, n, n)) return n;
  }
  return std::nullopt;
}

PeriodicTiling replicate(const PeriodicTiling& pt, std::size_t times_x,
                         std::size_t times_y) {
  const std::size_t p = pt.p();
  const std::size_t q = pt.q();
  TileGrid g(p * times_x, q * times_y);
  for (std::size_t y = 0; y < g.height(); ++y) {
    for (std::size_t x = 0; x < g.width(); ++x) {
      g.set(x, y, pt.grid.at(x % p, y % q));
    }
  }
  return PeriodicTiling{std::move(g)};
}

RectTiling unroll(const PeriodicTiling& pt, std::size_t width,
                  std::size_t height) {
  TileGrid g(width, height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      g.set(x, y, pt.grid.at(x % pt.p(), y % pt.q()));
    }
  }
  return RectTiling{std::move(g)};
}

}  // namespace optwb

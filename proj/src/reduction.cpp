#include "optwb/reduction.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <stdexcept>

#include "optwb/eval.hpp"

namespace optwb {

namespace rv {

bool is_reserved(std::string_view name) {
  static const std::set<std::string, std::less<>> kFixed = {
      "hType", "inInitRow", "cType",   "Cell",       "hNext", "vNext",
      "bType", "tType",     "BaseSub", "BaseNotSub", "bSub",  "bNotSub",
      "c11",   "c12",       "c21",     "c22"};
  if (kFixed.count(name)) return true;
  // c_<digits>_<digits>
  if (name.size() < 5 || name.substr(0, 2) != "c_") return false;
  auto rest = name.substr(2);
  auto sep = rest.find('_');
  if (sep == std::string_view::npos || sep == 0 || sep + 1 == rest.size()) {
    return false;
  }
  auto digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char ch) {
      return std::isdigit(static_cast<unsigned char>(ch)) != 0;
    });
  };
  return digits(rest.substr(0, sep)) && digits(rest.substr(sep + 1));
}

}  // namespace rv

namespace {

TriplePattern tp(Term s, Term p, Term o) {
  return TriplePattern{std::move(s), std::move(p), std::move(o)};
}

BasicPattern violation_leaf(const Iri& next, const Iri& first,
                            const Iri& second) {
  return BasicPattern{
      tp(rv::b, rv::bType, rv::BaseSub),
      tp(rv::tile1, next, rv::tile2),
      tp(rv::tile1, rv::tType, first),
      tp(rv::tile2, rv::tType, second),
  };
}

}  // namespace

TileNaming name_tiles(const TilingInstance& inst) {
  TileNaming out;
  std::set<std::string> taken(inst.tiles().begin(), inst.tiles().end());
  for (const auto& name : inst.tiles()) {
    if (!rv::is_reserved(name)) {
      out.iris.emplace_back(name);
      continue;
    }
    std::string renamed = "tile_" + name;
    while (rv::is_reserved(renamed) || taken.count(renamed)) {
      renamed = "tile_" + renamed;
    }
    taken.insert(renamed);
    out.iris.emplace_back(renamed);
    out.renamed.emplace_back(name, renamed);
  }
  return out;
}

BasicPattern root_leaf() {
  return BasicPattern{
      tp(rv::r, rv::hType, rv::inInitRow),
      tp(rv::c, rv::cType, rv::Cell),
      tp(rv::s1, rv::hNext, rv::s2),
      tp(rv::s1, rv::vNext, rv::s3),
      tp(rv::s2, rv::vNext, rv::s4),
  };
}

BasicPattern h_violation_leaf(const Iri& left, const Iri& right) {
  return violation_leaf(rv::hNext, left, right);
}

BasicPattern v_violation_leaf(const Iri& below, const Iri& above) {
  return violation_leaf(rv::vNext, below, above);
}

BasicPattern tiling_leaf(const Iri& tile) {
  return BasicPattern{
      tp(rv::b, rv::bType, rv::BaseNotSub),
      tp(rv::r, rv::cType, rv::Cell),
      tp(rv::r, rv::hNext, rv::r_next),
      tp(rv::r_next, rv::hType, rv::inInitRow),
      tp(rv::c, rv::tType, tile),
      tp(rv::c, rv::vNext, rv::c_next),
      tp(rv::c_next, rv::cType, rv::Cell),
      tp(rv::s3, rv::hNext, rv::s4),
  };
}

BasicPattern base_leaf() {
  return BasicPattern{tp(rv::b, rv::bType, rv::BaseSub)};
}

Pattern build_p(const TilingInstance&) {
  return Pattern::leaf(BasicPattern{
      tp(rv::c11, rv::hType, rv::inInitRow),
      tp(rv::c11, rv::cType, rv::Cell),
      tp(rv::c11, rv::hNext, rv::c12),
      tp(rv::c11, rv::vNext, rv::c21),
      tp(rv::c12, rv::vNext, rv::c22),
      tp(rv::b, rv::bType, rv::BaseSub),
  });
}

Pattern build_p_prime(const TilingInstance& inst) {
  const TileNaming naming = name_tiles(inst);
  Pattern chain = Pattern::leaf(root_leaf());
  auto extend = [&chain](BasicPattern leaf) {
    chain = Pattern::opt(chain, Pattern::leaf(std::move(leaf)));
  };
  for (const auto& [a, b] : inst.h_incompatible()) {
    extend(h_violation_leaf(naming.iris[a], naming.iris[b]));
  }
  for (const auto& [a, b] : inst.v_incompatible()) {
    extend(v_violation_leaf(naming.iris[a], naming.iris[b]));
  }
  for (const auto& tile : naming.iris) extend(tiling_leaf(tile));
  extend(base_leaf());
  return chain;
}

Iri cell_iri(std::size_t x, std::size_t y) {
  if (x == 1 && y == 1) return rv::c11;
  if (x == 2 && y == 1) return rv::c12;
  if (x == 1 && y == 2) return rv::c21;
  if (x == 2 && y == 2) return rv::c22;
  return Iri("c_" + std::to_string(x) + "_" + std::to_string(y));
}

PeriodicTiling widen_periods(const PeriodicTiling& pt) {
  return replicate(pt, pt.p() < 2 ? 2 : 1, pt.q() < 2 ? 2 : 1);
}

WitnessPair build_witness(const TilingInstance& inst,
                          const PeriodicTiling& pt) {
  if (!verify_periodic(inst, pt)) {
    throw std::invalid_argument(
        "periodic tiling does not satisfy the instance's relations");
  }
  const PeriodicTiling torus = widen_periods(pt);
  const TileNaming naming = name_tiles(inst);
  const std::size_t p = torus.p();
  const std::size_t q = torus.q();

  Graph g;
  g.insert({rv::bSub, rv::bType, rv::BaseSub});
  g.insert({rv::bNotSub, rv::bType, rv::BaseNotSub});
  for (std::size_t x = 1; x <= p; ++x) {
    g.insert({cell_iri(x, 1), rv::hType, rv::inInitRow});
  }
  for (std::size_t y = 1; y <= q; ++y) {
    for (std::size_t x = 1; x <= p; ++x) {
      const Iri cell = cell_iri(x, y);
      const std::size_t tile = *inst.index_of(torus.grid.at(x - 1, y - 1));
      g.insert({cell, rv::cType, rv::Cell});
      g.insert({cell, rv::tType, naming.iris[tile]});
      g.insert({cell, rv::hNext, cell_iri(x % p + 1, y)});
      g.insert({cell, rv::vNext, cell_iri(x, y % q + 1)});
    }
  }
  return WitnessPair{std::move(g), Mapping{{rv::b, rv::bSub}}};
}

bool verify_witness(const Pattern& p, const Pattern& p2, const WitnessPair& w) {
  if (!evaluate(p, w.graph).contains(w.mapping)) return false;
  const SolutionSet rhs = evaluate(p2, w.graph);
  return std::none_of(rhs.begin(), rhs.end(), [&w](const Mapping& m) {
    return subsumed_mapping(w.mapping, m);
  });
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

nlohmann::json reduction_manifest(
    const TilingInstance& inst, const TileNaming& naming,
    const std::optional<PeriodicTiling>& tiling,
    const std::map<std::string, std::string>& file_contents) {
  nlohmann::json out;
  out["instance"] = instance_to_json(inst);
  out["h_incompatible"] = inst.h_incompatible().size();
  out["v_incompatible"] = inst.v_incompatible().size();
  nlohmann::json renamed = nlohmann::json::array();
  for (const auto& [from, to] : naming.renamed) {
    renamed.push_back({{"tile", from}, {"iri", to}});
  }
  out["renamed_tiles"] = renamed;
  if (tiling) {
    const PeriodicTiling widened = widen_periods(*tiling);
    out["periods"] = {{"p", tiling->p()}, {"q", tiling->q()}};
    out["witness_periods"] = {{"p", widened.p()}, {"q", widened.q()}};
    out["tiling"] = periodic_tiling_to_json(*tiling);
  } else {
    out["periods"] = nullptr;
  }
  nlohmann::json files = nlohmann::json::object();
  for (const auto& [name, content] : file_contents) {
    files[name] = {{"sha256", sha256_hex(content)}, {"bytes", content.size()}};
  }
  out["files"] = files;
  return out;
}

}  // namespace optwb

#pragma once

// Compiles a tiling instance into a pair of weakly well-designed patterns
// (P, P') such that a periodic tiling yields a graph on which P is not
// subsumed by P', and builds and checks that witness graph.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "optwb/core.hpp"
#include "optwb/pattern.hpp"
#include "optwb/tiling.hpp"

namespace optwb {

/// Fixed IRIs and variables of the construction.
namespace rv {
inline const Iri hType{"hType"};
inline const Iri inInitRow{"inInitRow"};
inline const Iri cType{"cType"};
inline const Iri Cell{"Cell"};
inline const Iri hNext{"hNext"};
inline const Iri vNext{"vNext"};
inline const Iri bType{"bType"};
inline const Iri tType{"tType"};
inline const Iri BaseSub{"BaseSub"};
inline const Iri BaseNotSub{"BaseNotSub"};
inline const Iri bSub{"bSub"};
inline const Iri bNotSub{"bNotSub"};
inline const Iri c11{"c11"};
inline const Iri c12{"c12"};
inline const Iri c21{"c21"};
inline const Iri c22{"c22"};

inline const Var r{"r"};
inline const Var c{"c"};
inline const Var s1{"s1"};
inline const Var s2{"s2"};
inline const Var s3{"s3"};
inline const Var s4{"s4"};
inline const Var b{"b"};
inline const Var tile1{"tile1"};
inline const Var tile2{"tile2"};
inline const Var r_next{"r'"};
inline const Var c_next{"c'"};

/// True for the fixed IRI names above and for generated cell names c_X_Y.
bool is_reserved(std::string_view name);
}  // namespace rv

/// IRIs used for the tiles of an instance. Tiles whose names clash with the
/// reserved vocabulary are renamed `tile_<name>`.
struct TileNaming {
  std::vector<Iri> iris;  // indexed like TilingInstance::tiles()
  std::vector<std::pair<std::string, std::string>> renamed;  // original, IRI
};

TileNaming name_tiles(const TilingInstance& inst);

/// Leaves of P'.
BasicPattern root_leaf();
BasicPattern h_violation_leaf(const Iri& left, const Iri& right);
BasicPattern v_violation_leaf(const Iri& below, const Iri& above);
BasicPattern tiling_leaf(const Iri& tile);
BasicPattern base_leaf();

/// The six-triple basic pattern; the only variable is ?b.
Pattern build_p(const TilingInstance& inst);

/// Left-deep OPT chain over root, H-violation leaves, V-violation leaves,
/// tiling leaves and the base leaf, in that order.
Pattern build_p_prime(const TilingInstance& inst);

struct WitnessPair {
  Graph graph;
  Mapping mapping;
};

/// Cell constant for 1-based grid coordinates; the four cells at (1,1),
/// (2,1), (1,2), (2,2) use the constants c11, c12, c21, c22 that occur in P.
Iri cell_iri(std::size_t x, std::size_t y);

/// Replicates periods of 1 so that both periods are at least 2.
PeriodicTiling widen_periods(const PeriodicTiling& pt);

/// Throws std::invalid_argument unless verify_periodic(inst, pt).
WitnessPair build_witness(const TilingInstance& inst, const PeriodicTiling& pt);

/// mapping ∈ ⟦p⟧_G and no μ' ∈ ⟦p2⟧_G extends mapping.
bool verify_witness(const Pattern& p, const Pattern& p2, const WitnessPair& w);

std::string sha256_hex(std::string_view data);

/// Reproducibility record for generated files.
nlohmann::json reduction_manifest(
    const TilingInstance& inst, const TileNaming& naming,
    const std::optional<PeriodicTiling>& tiling,
    const std::map<std::string, std::string>& file_contents);

}  // namespace optwb

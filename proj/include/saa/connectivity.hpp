#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "saa/lattice.hpp"
#include "saa/neighbors.hpp"

namespace saa {

/// Undirected graph on digit indices; {i, j} is an edge iff d_i - d_j is a neighbor.
struct ChainGraph {
    std::size_t vertex_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted
    std::vector<std::vector<std::size_t>> adjacency;

    bool has_edge(std::size_t i, std::size_t j) const;
};

ChainGraph chain_graph(const DigitSet& d, const NeighborSet& n);

enum class VerdictKind { Connected, Disconnected, Unknown };
const char* to_string(VerdictKind k);

struct Partition {
    std::vector<std::size_t> part_a;
    std::vector<std::size_t> part_b;
};

struct ClauseCertificate {
    std::string clause;
};

/// Gap in the first-level union of hull images (collinear digit sets).
struct HullGapCertificate {
    Rational gap_lo;
    Rational gap_hi;
};

enum class DimensionBranch { Lower, Upper };  // q <= m, m < q <= nm

struct DimensionTest {
    std::int64_t n = 0, m = 0, q = 0, r = 0;
    double lhs = 0;
    double dim_s = 0;
    DimensionBranch branch = DimensionBranch::Lower;
    bool triggered = false;
};

/// Cell-cover split summary; the full cover lives in geometry.hpp.
struct CellSplitCertificate {
    int level = 0;
    Rational cell_size;
    std::size_t clusters = 0;
};

using Certificate =
    std::variant<Partition, ClauseCertificate, HullGapCertificate, DimensionTest, CellSplitCertificate>;

struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    std::vector<std::size_t> witness;  // Connected: walk through digit indices
    std::optional<Certificate> certificate;
    std::string diagnostics;
};

/// Connected iff the chain graph is connected. The witness is a spanning-tree
/// walk (vertices may repeat); the certificate is the component of digit 0
/// against the rest.
Verdict is_connected_by_chain(const DigitSet& d, const NeighborSet& n);

/// Walk consecutive differences lie in n and every digit is visited.
bool witness_valid(const DigitSet& d, const NeighborSet& n, const std::vector<std::size_t>& walk);
/// Both parts nonempty, cover all digits, no neighbor edge across.
bool partition_valid(const DigitSet& d, const NeighborSet& n, const Partition& p);

/// T = [+-q] on the line with #D = q: connected iff the sorted digits form an
/// arithmetic progression. Throws PreconditionError when #D != q or q < 2.
bool onedim_tile_connected(std::int64_t q, const std::vector<std::int64_t>& digits);

struct RationalInterval {
    Rational lo;
    Rational hi;
    bool operator==(const RationalInterval&) const = default;
};

/// Convex hull of the attractor of x -> (x + d) / p on the line.
RationalInterval convex_hull_interval(std::int64_t p, const std::vector<std::int64_t>& offsets);

/// First gap in the union of the first-level hull images, if any.
std::optional<std::pair<Rational, Rational>> collinear_gap(std::int64_t p, const std::vector<std::int64_t>& offsets);

/// Connected iff the hull equals the union of its first-level images.
bool collinear_connected(std::int64_t p, const std::vector<std::int64_t>& offsets);

struct SvDimension {
    DimensionBranch branch;
    double value;
};

/// Closed two-branch formula for the diagonal-grid family, n >= m > 1, 2 <= q <= nm.
SvDimension singular_value_dimension(std::int64_t n, std::int64_t m, std::int64_t q);

/// Number of distinct second coordinates.
std::int64_t count_rows(const DigitSet& d);

/// Exact decision of log_m r + log_n(q/r) != dim_S with display values.
DimensionTest dimension_disconnectedness(std::int64_t n, std::int64_t m, std::int64_t q, std::int64_t r);

}  // namespace saa

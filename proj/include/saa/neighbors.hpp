#pragma once

// Lattice points of F - F: closed forms for digit sets inside the canonical
// grid, a lower bound for arbitrary digit sets, and an exact pruning oracle.

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "saa/lattice.hpp"

namespace saa {

class NeighborSet {
public:
    NeighborSet() = default;
    explicit NeighborSet(std::set<DigitVector> v);

    /// Inserts u and -u; the zero vector is ignored.
    void insert_pair(const DigitVector& u);
    bool contains(const DigitVector& u) const { return vectors_.count(u) != 0; }
    std::size_t size() const { return vectors_.size(); }
    bool empty() const { return vectors_.empty(); }
    bool is_symmetric() const;
    bool is_subset_of(const NeighborSet& other) const;

    /// Lexicographically sorted.
    const std::set<DigitVector>& vectors() const { return vectors_; }

    bool operator==(const NeighborSet&) const = default;

private:
    std::set<DigitVector> vectors_;
};

/// Closed-form clause identifiers used in disconnectedness certificates.
inline constexpr const char* kClauseT1VerticalMissing = "t1-vertical-difference-missing";
inline constexpr const char* kClauseT0NoBoundaryDifference = "t0-no-boundary-difference";

struct DisconnectedByClause {
    std::string clause;
    bool operator==(const DisconnectedByClause&) const = default;
};

using NeighborOutcome = std::variant<DisconnectedByClause, NeighborSet>;

/// Fixed vectors for T = [[n,0],[t,m]] with n, m > 0.
struct BoundaryVectors {
    DigitVector a1, a2, a3, b1;  // b2 = a2, b3 = a3
    static BoundaryVectors for_params(std::int64_t n, std::int64_t m);
};

inline constexpr DigitVector kE1{1, 0};
inline constexpr DigitVector kE2{0, 1};
inline constexpr DigitVector kE3{1, 1};
inline constexpr DigitVector kE4{1, -1};

/// T = [[n,0],[1,m]]; D inside grid_s(n, m) and not eigen-collinear.
NeighborOutcome closed_form_neighbors_t1(std::int64_t n, std::int64_t m, const DigitSet& d);
/// T = [[n,0],[0,m]]; same hypotheses.
NeighborOutcome closed_form_neighbors_t0(std::int64_t n, std::int64_t m, const DigitSet& d);

/// Dispatches on t. Throws PreconditionError when the hypotheses fail.
NeighborOutcome closed_form_neighbors(const NormalForm& nf, const DigitSet& d);

/// True if closed_form_neighbors would accept (nf, d).
bool closed_form_applicable(const NormalForm& nf, const DigitSet& d);

/// Sound subset of the neighbor set for T in normal form with n, m > 0 and
/// arbitrary D: single-direction multiples k e_i and mixed k e1 +- l e2,
/// each obtained from a difference that reproduces it under T.
NeighborSet neighbor_lower_bound(const IntMatrix2& t, const DigitSet& d);

struct OracleTrace {
    std::int64_t box_radius = 0;         // candidates have max-norm <= this
    std::vector<std::size_t> sizes;      // |C_0|, |C_1|, ...
};

/// Exact (F - F) cap (Z^2 \ {0}) for expanding T, by pruning the candidate box
/// until every survivor u has some delta in D - D with T u - delta surviving.
NeighborSet brute_force_neighbors(const IntMatrix2& t, const DigitSet& d, OracleTrace* trace = nullptr);

bool is_neighbor(const IntMatrix2& t, const DigitSet& d, const DigitVector& u);

}  // namespace saa

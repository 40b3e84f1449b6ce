#include "saa/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

namespace saa {

bool ChainGraph::has_edge(std::size_t i, std::size_t j) const {
    const auto& adj = adjacency.at(i);
    return std::find(adj.begin(), adj.end(), j) != adj.end();
}

ChainGraph chain_graph(const DigitSet& d, const NeighborSet& n) {
    ChainGraph g;
    g.vertex_count = d.size();
    g.adjacency.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (n.contains(d[i] - d[j])) {
                g.edges.emplace_back(i, j);
                g.adjacency[i].push_back(j);
                g.adjacency[j].push_back(i);
            }
        }
    }
    return g;
}

const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Connected: return "connected";
        case VerdictKind::Disconnected: return "disconnected";
        case VerdictKind::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

// Depth-first tour; each tree edge is walked down and back up.
void tour(const ChainGraph& g, std::size_t v, std::vector<char>& seen, std::vector<std::size_t>& walk) {
    seen[v] = 1;
    walk.push_back(v);
    for (std::size_t w : g.adjacency[v]) {
        if (seen[w]) continue;
        tour(g, w, seen, walk);
        walk.push_back(v);
    }
}

}  // namespace

Verdict is_connected_by_chain(const DigitSet& d, const NeighborSet& n) {
    Verdict out;
    if (d.empty()) {
        out.diagnostics = "empty digit set";
        return out;
    }
    const ChainGraph g = chain_graph(d, n);
    std::vector<char> seen(d.size(), 0);
    std::vector<std::size_t> walk;
    tour(g, 0, seen, walk);
    if (std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; })) {
        // Drop the return leg after the last vertex is first reached.
        std::vector<char> first(d.size(), 0);
        std::size_t last_new = 0;
        for (std::size_t i = 0; i < walk.size(); ++i) {
            if (!first[walk[i]]) {
                first[walk[i]] = 1;
                last_new = i;
            }
        }
        walk.resize(last_new + 1);
        out.kind = VerdictKind::Connected;
        out.witness = std::move(walk);
        return out;
    }
    Partition p;
    for (std::size_t i = 0; i < d.size(); ++i) (seen[i] ? p.part_a : p.part_b).push_back(i);
    out.kind = VerdictKind::Disconnected;
    out.certificate = std::move(p);
    return out;
}

bool witness_valid(const DigitSet& d, const NeighborSet& n, const std::vector<std::size_t>& walk) {
    if (walk.empty()) return false;
    std::vector<char> seen(d.size(), 0);
    for (std::size_t i = 0; i < walk.size(); ++i) {
        if (walk[i] >= d.size()) return false;
        seen[walk[i]] = 1;
        if (i > 0 && !n.contains(d[walk[i - 1]] - d[walk[i]])) return false;
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool partition_valid(const DigitSet& d, const NeighborSet& n, const Partition& p) {
    if (p.part_a.empty() || p.part_b.empty()) return false;
    if (p.part_a.size() + p.part_b.size() != d.size()) return false;
    std::set<std::size_t> all(p.part_a.begin(), p.part_a.end());
    all.insert(p.part_b.begin(), p.part_b.end());
    if (all.size() != d.size() || *all.rbegin() >= d.size()) return false;
    for (std::size_t i : p.part_a)
        for (std::size_t j : p.part_b)
            if (n.contains(d[i] - d[j])) return false;
    return true;
}

bool onedim_tile_connected(std::int64_t q, const std::vector<std::int64_t>& digits) {
    if (q < 2) throw PreconditionError("q must be at least 2");
    if (static_cast<std::int64_t>(digits.size()) != q) throw PreconditionError("#D must equal q");
    std::vector<std::int64_t> s = digits;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw PreconditionError("digits must be distinct");
    const std::int64_t gap = s[1] - s[0];
    for (std::size_t i = 2; i < s.size(); ++i)
        if (s[i] - s[i - 1] != gap) return false;
    return true;
}

RationalInterval convex_hull_interval(std::int64_t p, const std::vector<std::int64_t>& offsets) {
    if (p == 0 || p == 1 || p == -1) throw PreconditionError("|p| must exceed 1");
    if (offsets.empty()) throw PreconditionError("empty offsets");
    const auto [lo_it, hi_it] = std::minmax_element(offsets.begin(), offsets.end());
    const Rational lo(*lo_it), hi(*hi_it), rp(p);
    if (p > 0) return {lo / (rp - 1), hi / (rp - 1)};
    // p < 0 swaps orientation: A = (B + max)/p, B = (A + min)/p.
    const Rational den = rp * rp - 1;
    return {(lo + rp * hi) / den, (hi + rp * lo) / den};
}

std::optional<std::pair<Rational, Rational>> collinear_gap(std::int64_t p, const std::vector<std::int64_t>& offsets) {
    const RationalInterval k = convex_hull_interval(p, offsets);
    std::vector<RationalInterval> pieces;
    pieces.reserve(offsets.size());
    const Rational rp(p);
    for (std::int64_t d : offsets) {
        Rational a = (k.lo + d) / rp, b = (k.hi + d) / rp;
        if (a > b) std::swap(a, b);
        pieces.push_back({a, b});
    }
    std::sort(pieces.begin(), pieces.end(), [](const auto& u, const auto& v) { return u.lo < v.lo; });
    Rational reach = k.lo;
    for (const auto& piece : pieces) {
        if (piece.lo > reach) return std::make_pair(reach, piece.lo);
        reach = std::max(reach, piece.hi);
    }
    if (reach < k.hi) return std::make_pair(reach, k.hi);
    return std::nullopt;
}

bool collinear_connected(std::int64_t p, const std::vector<std::int64_t>& offsets) {
    return !collinear_gap(p, offsets).has_value();
}

SvDimension singular_value_dimension(std::int64_t n, std::int64_t m, std::int64_t q) {
    if (m < 2 || n < m) throw PreconditionError("requires n >= m > 1");
    if (q < 2) throw PreconditionError("requires q >= 2");
    if (q > n * m) throw PreconditionError("requires q <= n*m");
    if (q == m) return {DimensionBranch::Lower, 1.0};
    if (q < m) return {DimensionBranch::Lower, std::log(double(q)) / std::log(double(m))};
    return {DimensionBranch::Upper, 1.0 + std::log(double(q) / double(m)) / std::log(double(n))};
}

std::int64_t count_rows(const DigitSet& d) {
    std::set<std::int64_t> ys;
    for (const auto& v : d) ys.insert(v.y);
    return static_cast<std::int64_t>(ys.size());
}

DimensionTest dimension_disconnectedness(std::int64_t n, std::int64_t m, std::int64_t q, std::int64_t r) {
    const SvDimension sv = singular_value_dimension(n, m, q);
    if (r < 1 || r > std::min(q, m)) throw PreconditionError("requires 1 <= r <= min(q, m)");
    DimensionTest out{n, m, q, r};
    out.branch = sv.branch;
    out.dim_s = sv.value;
    out.lhs = std::log(double(r)) / std::log(double(m)) + std::log(double(q) / double(r)) / std::log(double(n));
    // Writing L = log, the difference lhs - dim_S factors as
    //   q <= m:  (L r - L q) (1/L m - 1/L n)
    //   q >  m:  ((L n - L m) / L n) (L r / L m - 1)
    // so it vanishes iff n = m, or r = q (lower) / r = m (upper).
    if (n == m) {
        out.triggered = false;
    } else if (sv.branch == DimensionBranch::Lower) {
        out.triggered = r != q;
    } else {
        out.triggered = r != m;
    }
    return out;
}

}  // namespace saa

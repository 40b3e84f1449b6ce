#include "saa/neighbors.hpp"

#include <algorithm>
#include <stdexcept>

namespace saa {

NeighborSet::NeighborSet(std::set<DigitVector> v) : vectors_(std::move(v)) {
    vectors_.erase(DigitVector{0, 0});
}

void NeighborSet::insert_pair(const DigitVector& u) {
    if (u.is_zero()) return;
    vectors_.insert(u);
    vectors_.insert(-u);
}

bool NeighborSet::is_symmetric() const {
    return std::all_of(vectors_.begin(), vectors_.end(),
                       [&](const DigitVector& u) { return contains(-u); });
}

bool NeighborSet::is_subset_of(const NeighborSet& other) const {
    return std::includes(other.vectors_.begin(), other.vectors_.end(), vectors_.begin(), vectors_.end());
}

BoundaryVectors BoundaryVectors::for_params(std::int64_t n, std::int64_t m) {
    return {{n - 1, 1}, {0, m - 1}, {n - 1, m - 1}, {n - 1, 0}};
}

namespace {

IntMatrix2 triangular(std::int64_t n, std::int64_t m, int t) { return {n, 0, t, m}; }

void check_closed_form_hypotheses(std::int64_t n, std::int64_t m, int t, const DigitSet& d) {
    if (n <= 0 || m <= 0) throw PreconditionError("closed form requires n, m > 0");
    if (n < m) throw PreconditionError("closed form requires n >= m");
    if (d.empty()) throw PreconditionError("empty digit set");
    if (!subset_of_grid(d, n, m)) throw PreconditionError("digit set not contained in the grid S");
    if (is_eigen_collinear(triangular(n, m, t), d)) throw PreconditionError("digit set is eigen-collinear");
}

}  // namespace

NeighborOutcome closed_form_neighbors_t1(std::int64_t n, std::int64_t m, const DigitSet& d) {
    check_closed_form_hypotheses(n, m, 1, d);
    const DifferenceSet dd(d);
    const auto bv = BoundaryVectors::for_params(n, m);
    if (!dd.contains(bv.a2)) return DisconnectedByClause{kClauseT1VerticalMissing};
    NeighborSet out;
    if (dd.contains(bv.a1)) out.insert_pair(kE1);
    out.insert_pair(kE2);  // a2 in D - D here
    if (dd.contains(bv.a1 - bv.a2)) out.insert_pair(kE4);
    return out;
}

NeighborOutcome closed_form_neighbors_t0(std::int64_t n, std::int64_t m, const DigitSet& d) {
    check_closed_form_hypotheses(n, m, 0, d);
    const DifferenceSet dd(d);
    const auto bv = BoundaryVectors::for_params(n, m);
    const DigitVector b1 = bv.b1, b2 = bv.a2, b3 = bv.a3, b12 = bv.b1 - bv.a2;
    if (!dd.contains(b1) && !dd.contains(b2) && !dd.contains(b3) && !dd.contains(b12))
        return DisconnectedByClause{kClauseT0NoBoundaryDifference};
    NeighborSet out;
    if (dd.contains(b1)) out.insert_pair(kE1);
    if (dd.contains(b2)) out.insert_pair(kE2);
    if (dd.contains(b3)) out.insert_pair(kE3);
    if (dd.contains(b12)) out.insert_pair(kE4);
    return out;
}

NeighborOutcome closed_form_neighbors(const NormalForm& nf, const DigitSet& d) {
    return nf.t == 1 ? closed_form_neighbors_t1(nf.n, nf.m, d) : closed_form_neighbors_t0(nf.n, nf.m, d);
}

bool closed_form_applicable(const NormalForm& nf, const DigitSet& d) {
    try {
        check_closed_form_hypotheses(nf.n, nf.m, nf.t, d);
        return true;
    } catch (const PreconditionError&) {
        return false;
    }
}

NeighborSet neighbor_lower_bound(const IntMatrix2& t, const DigitSet& d) {
    const auto nf = normal_form_params(t);
    if (!nf || nf->n <= 0 || nf->m <= 0) throw PreconditionError("lower bound requires normal form with n, m > 0");
    const DifferenceSet dd(d);
    const auto bv = BoundaryVectors::for_params(nf->n, nf->m);
    // Both mixed families use the horizontal vector paired with e1.
    const DigitVector horiz = nf->t == 1 ? bv.a1 : bv.b1;
    const DigitVector vert = bv.a2;
    const std::int64_t kmax = dd.max_component();

    NeighborSet out;
    for (std::int64_t k = 1; k <= kmax; ++k) {
        if (dd.contains(horiz.scaled(k))) out.insert_pair(kE1.scaled(k));
        if (dd.contains(vert.scaled(k))) out.insert_pair(kE2.scaled(k));
        if (nf->t == 0 && dd.contains(bv.a3.scaled(k))) out.insert_pair(kE3.scaled(k));
        for (std::int64_t l = 1; l <= kmax; ++l) {
            if (dd.contains(horiz.scaled(k) + vert.scaled(l))) out.insert_pair({k, l});
            if (dd.contains(horiz.scaled(k) - vert.scaled(l))) out.insert_pair({k, -l});
        }
    }
    return out;
}

NeighborSet brute_force_neighbors(const IntMatrix2& t, const DigitSet& d, OracleTrace* trace) {
    const Rational radius = attractor_radius(t, d);
    const Rational box = 2 * radius;
    const BigInt floor_box = boost::multiprecision::numerator(box) / boost::multiprecision::denominator(box);
    if (floor_box > 4000) throw std::length_error("neighbor oracle candidate box too large");
    const std::int64_t b = static_cast<std::int64_t>(floor_box);
    const std::int64_t side = 2 * b + 1;

    auto index = [&](const DigitVector& u) { return static_cast<std::size_t>((u.y + b) * side + (u.x + b)); };
    auto in_box = [&](const DigitVector& u) { return max_norm(u) <= b; };

    const DifferenceSet dd(d);
    std::vector<DigitVector> alive;
    alive.reserve(static_cast<std::size_t>(side * side));
    for (std::int64_t y = -b; y <= b; ++y)
        for (std::int64_t x = -b; x <= b; ++x) alive.push_back({x, y});
    std::vector<char> member(static_cast<std::size_t>(side * side), 1);

    OracleTrace local;
    local.box_radius = b;
    local.sizes.push_back(alive.size());
    for (;;) {
        std::vector<DigitVector> next;
        next.reserve(alive.size());
        for (const auto& u : alive) {
            const DigitVector tu = t * u;
            const bool keep = std::any_of(dd.vectors().begin(), dd.vectors().end(), [&](const DigitVector& delta) {
                const DigitVector w = tu - delta;
                return in_box(w) && member[index(w)];
            });
            if (keep) next.push_back(u);
        }
        if (next.size() == alive.size()) break;
        // Synchronous update: C_{k+1} is computed entirely from C_k.
        std::fill(member.begin(), member.end(), 0);
        for (const auto& u : next) member[index(u)] = 1;
        alive = std::move(next);
        local.sizes.push_back(alive.size());
    }
    if (trace) *trace = std::move(local);
    return NeighborSet(std::set<DigitVector>(alive.begin(), alive.end()));
}

bool is_neighbor(const IntMatrix2& t, const DigitSet& d, const DigitVector& u) {
    if (u.is_zero()) throw PreconditionError("neighbor query requires a nonzero vector");
    return brute_force_neighbors(t, d).contains(u);
}

}  // namespace saa

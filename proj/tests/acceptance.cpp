// Acceptance suite: one PASS/FAIL line per criterion, detail lines indented.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "saa/connectivity.hpp"
#include "saa/decide.hpp"
#include "saa/geometry.hpp"
#include "saa/neighbors.hpp"

using namespace saa;
using saa::testing::grid_subsets;
using saa::testing::Rng;

namespace {

// Time limits in seconds.
constexpr double kLimit1 = 5, kLimit2 = 30, kLimit3 = 10, kLimit4 = 300, kLimit6 = 600;

// Sierpinski snapshot at level 8, 512x512, margin 0 (frozen on first run).
constexpr std::size_t kSierpinskiLitPixels = 65536;
constexpr std::uint64_t kSierpinskiPgmFnv = 0xb548054b1712b8d0ULL;

constexpr std::uint64_t kSeed5 = 20240505, kSeed6 = 20240606, kSeed9 = 20240909;
constexpr int kInstances5 = 200, kSamples6 = 500, kSets9 = 100;

const DigitSet kSierpinski{{0, 0}, {1, 0}, {0, 1}, {-1, -1}};
const DigitSet kEightDigitsReduced{{0, 0}, {2, 1}, {-1, 1}, {1, 3}, {2, 0}, {2, 2}, {-2, 2}, {-1, 3}};
const DigitSet kEightDigits4I{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {2, 1}, {1, 2}, {0, 3}, {3, 0}};

const std::vector<std::pair<std::int64_t, std::int64_t>> kSmallFamily{{2, 2}, {3, 2}, {3, 3}};

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail, double seconds) {
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", seconds);
    std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << detail << " (" << t << ")\n";
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string show(const DigitSet& d) {
    std::string s = "{";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + to_string(d[i]);
    return s + "}";
}

std::string show(const NeighborSet& n) {
    std::string s = "{";
    bool first = true;
    for (const auto& v : n.vectors()) {
        s += (first ? "" : ",") + to_string(v);
        first = false;
    }
    return s + "}";
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

bool rules_contain(const AnalysisReport& r, const char* rule) {
    return std::find(r.rules_fired.begin(), r.rules_fired.end(), rule) != r.rules_fired.end();
}

// Digit sets of the small family that meet the closed-form hypotheses.
struct FamilyCase {
    NormalForm nf;
    IntMatrix2 t;
    DigitSet d;
};

std::vector<FamilyCase> small_family(bool closed_form_only) {
    std::vector<FamilyCase> out;
    for (int tt = 0; tt <= 1; ++tt)
        for (auto [n, m] : kSmallFamily) {
            const NormalForm nf{n, m, tt};
            for (auto& digits : grid_subsets(n, m, 2)) {
                DigitSet d(std::move(digits));
                if (closed_form_only && !closed_form_applicable(nf, d)) continue;
                out.push_back({nf, {n, 0, tt, m}, std::move(d)});
            }
        }
    return out;
}

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dec = decide_connected(IntMatrix2::scalar(2), kSierpinski);
    const auto bm = rasterize(approximate(IntMatrix2::scalar(2), kSierpinski, 8), 512, 512);
    const std::uint64_t hash = fnv1a(pgm_bytes(bm));
    const double s = seconds_since(t0);
    std::ostringstream os;
    os << "verdict " << to_string(dec.verdict.kind) << ", lit " << bm.lit_count() << ", fnv 0x" << std::hex << hash;
    const bool ok = dec.verdict.kind == VerdictKind::Connected && bm.lit_count() == kSierpinskiLitPixels &&
                    hash == kSierpinskiPgmFnv && s < kLimit1;
    report(1, "Sierpinski tile connected, level-8 bitmap snapshot", ok, os.str(), s);
}

void criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dec = decide_connected({-3, -1, 0, 3}, kEightDigitsReduced);
    const double s = seconds_since(t0);
    const bool reduced = !dec.report.rules_fired.empty() && dec.report.rules_fired.front() == rules::kSquareReduce &&
                         dec.report.matrix == IntMatrix2::scalar(9);
    const bool ok = reduced && dec.verdict.kind == VerdictKind::Connected && s < kLimit2;
    report(2, "[[-3,-1],[0,3]] square-reduces to 9I and is connected", ok,
           std::string("verdict ") + to_string(dec.verdict.kind) + ", analyzed " + to_string(dec.report.matrix) +
               " with " + std::to_string(dec.report.digits.size()) + " digits",
           s);
}

void criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dec = decide_connected(IntMatrix2::scalar(4), kEightDigits4I);
    const double s = seconds_since(t0);
    report(3, "4I with the eight listed digits is connected", dec.verdict.kind == VerdictKind::Connected && s < kLimit3,
           std::string("verdict ") + to_string(dec.verdict.kind), s);
}

void criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t compared[2] = {0, 0}, mismatched[2] = {0, 0}, clauses[2] = {0, 0};
    std::vector<std::string> dump;
    for (const auto& c : small_family(true)) {
        const auto outcome = closed_form_neighbors(c.nf, c.d);
        const auto* ns = std::get_if<NeighborSet>(&outcome);
        if (!ns) {
            ++clauses[c.nf.t];
            continue;
        }
        ++compared[c.nf.t];
        const NeighborSet oracle = brute_force_neighbors(c.t, c.d);
        if (*ns == oracle) continue;
        ++mismatched[c.nf.t];
        dump.push_back("  mismatch T=" + to_string(c.t) + " D=" + show(c.d) + " closed=" + show(*ns) +
                       " oracle=" + show(oracle));
    }
    const double s = seconds_since(t0);
    const bool ok = mismatched[0] + mismatched[1] == 0 && s < kLimit4;
    std::ostringstream os;
    os << "t=0: " << compared[0] - mismatched[0] << "/" << compared[0] << " equal; t=1: "
       << compared[1] - mismatched[1] << "/" << compared[1] << " equal (clause (i) exits: " << clauses[0] << ", "
       << clauses[1] << ")";
    report(4, "closed-form neighbor sets equal the oracle", ok, os.str(), s);
    for (const auto& line : dump) std::cout << line << "\n";
}

void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<IntMatrix2> mats{{2, 0, 1, 2}, {3, 0, 0, 2}, {3, 0, 1, 3}};
    Rng rng(kSeed5);
    int violations = 0;
    std::size_t nonempty = 0;
    for (int i = 0; i < kInstances5; ++i) {
        const IntMatrix2& t = mats[static_cast<std::size_t>(rng.uniform(0, 2))];
        const auto q = static_cast<std::size_t>(rng.uniform(2, 5));
        const DigitSet d(saa::testing::random_digits(rng, q, -3, 3));
        const NeighborSet lb = neighbor_lower_bound(t, d);
        nonempty += !lb.empty();
        if (!lb.is_subset_of(brute_force_neighbors(t, d))) {
            ++violations;
            std::cout << "  violation T=" << to_string(t) << " D=" << show(d) << "\n";
        }
    }
    report(5, "lower bound is contained in the oracle", violations == 0,
           std::to_string(kInstances5) + " instances, " + std::to_string(nonempty) + " nonempty bounds, " +
               std::to_string(violations) + " violations",
           seconds_since(t0));
}

void criterion6() {
    const auto t0 = std::chrono::steady_clock::now();
    const IntMatrix2 t{9, 0, 0, 3};
    const DigitSet grid = grid_s(9, 3);
    Rng rng(kSeed6);
    int violations = 0, triggered = 0, sampled = 0, skipped = 0;
    while (sampled < kSamples6) {
        std::vector<std::size_t> idx(grid.size());
        std::iota(idx.begin(), idx.end(), 0);
        // Partial Fisher-Yates for 4 distinct cells.
        for (std::size_t i = 0; i < 4; ++i)
            std::swap(idx[i], idx[i + static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(idx.size() - i - 1)))]);
        const DigitSet d{grid[idx[0]], grid[idx[1]], grid[idx[2]], grid[idx[3]]};
        if (is_eigen_collinear(t, d)) {
            ++skipped;
            continue;
        }
        ++sampled;
        const auto dt = dimension_disconnectedness(9, 3, 4, count_rows(d));
        if (!dt.triggered) continue;
        ++triggered;
        if (is_connected_by_chain(d, brute_force_neighbors(t, d)).kind != VerdictKind::Disconnected) {
            ++violations;
            std::cout << "  violation D=" << show(d) << "\n";
        }
    }
    const double s = seconds_since(t0);
    report(6, "dimension test triggers only on chain-disconnected sets", violations == 0 && s < kLimit6,
           std::to_string(sampled) + " samples (" + std::to_string(skipped) + " eigen-collinear skipped), " +
               std::to_string(triggered) + " triggered, " + std::to_string(violations) + " violations",
           s);
}

void for_each_subset(std::int64_t lo, std::int64_t hi, std::size_t k,
                     const std::function<void(const std::vector<std::int64_t>&)>& f) {
    std::vector<std::int64_t> cur;
    std::function<void(std::int64_t)> rec = [&](std::int64_t next) {
        if (cur.size() == k) {
            f(cur);
            return;
        }
        for (std::int64_t v = next; v <= hi; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(lo);
}

void criterion7() {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t checked = 0, connected = 0;
    int disagreements = 0;
    for (std::int64_t q = 2; q <= 5; ++q)
        for_each_subset(0, 12, static_cast<std::size_t>(q), [&](const std::vector<std::int64_t>& d) {
            const bool a = onedim_tile_connected(q, d);
            for (std::int64_t p : {q, -q}) {
                ++checked;
                if (a != collinear_connected(p, d)) {
                    ++disagreements;
                    std::cout << "  disagreement p=" << p << "\n";
                }
            }
            connected += a;
        });
    report(7, "one-dimensional tile test agrees with the hull test", disagreements == 0,
           std::to_string(checked) + " comparisons, " + std::to_string(connected) + " connected sets, " +
               std::to_string(disagreements) + " disagreements",
           seconds_since(t0));
}

void criterion8() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = onedim_tile_connected(3, {0, 1, 2}) && !onedim_tile_connected(3, {0, 1, 3});
    std::size_t checked = 0, progressions = 0;
    int failures8 = 0;
    // Ground truth: chain criterion on the oracle neighbor set of the planar
    // embedding x -> (x + d) / q on the first axis.
    for (std::int64_t q = 2; q <= 4; ++q)
        for_each_subset(0, 10, static_cast<std::size_t>(q), [&](const std::vector<std::int64_t>& d) {
            std::vector<DigitVector> v;
            for (auto x : d) v.push_back({x, 0});
            const DigitSet ds(v);
            const bool truth =
                is_connected_by_chain(ds, brute_force_neighbors(IntMatrix2::scalar(q), ds)).kind == VerdictKind::Connected;
            bool ap = true;
            for (std::size_t i = 2; i < d.size(); ++i) ap &= d[i] - d[i - 1] == d[1] - d[0];
            ++checked;
            progressions += ap;
            if (onedim_tile_connected(q, d) != truth || ap != truth) {
                ++failures8;
                std::cout << "  mismatch q=" << q << " D=" << show(ds) << "\n";
            }
        });
    ok = ok && failures8 == 0;
    report(8, "q-digit line tiles are connected exactly for progressions", ok,
           std::to_string(checked) + " sets, " + std::to_string(progressions) + " progressions, " +
               std::to_string(failures8) + " mismatches",
           seconds_since(t0));
}

void criterion9() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(kSeed9);
    DecideOptions opts;
    opts.force_oracle = true;
    int bad = 0;
    for (int i = 0; i < kSets9; ++i) {
        const DigitSet d(saa::testing::random_digits(rng, 4, -2, 2));
        for (std::int64_t p : {2, -2}) {
            const auto dec = decide_connected(IntMatrix2::scalar(p), d, opts);
            const bool via_oracle = dec.report.oracle_chain_verdict == VerdictKind::Connected;
            const bool path = rules_contain(dec.report, rules::kScalarTwo) || rules_contain(dec.report, rules::kCollinearHull);
            if (dec.verdict.kind != VerdictKind::Connected || !via_oracle || !path) {
                ++bad;
                std::cout << "  failure p=" << p << " D=" << show(d) << "\n";
            }
        }
    }
    report(9, "+-2I is connected for every digit set", bad == 0,
           std::to_string(kSets9) + " sets x 2 signs, " + std::to_string(bad) + " failures", seconds_since(t0));
}

void criterion10() {
    const auto t0 = std::chrono::steady_clock::now();
    int asym = 0, translation = 0, square = 0, witness = 0, truth = 0;
    std::size_t cases = 0;
    const DigitVector shift{5, -3};
    for (const auto& c : small_family(false)) {
        ++cases;
        const NeighborSet oracle = brute_force_neighbors(c.t, c.d);
        asym += !oracle.is_symmetric();
        const VerdictKind ground = is_connected_by_chain(c.d, oracle).kind;

        const auto dec = decide_connected(c.t, c.d);
        truth += dec.verdict.kind != ground;

        // Witness and certificate are checked on the system the report analyzed.
        const NeighborSet n_an = dec.report.oracle ? *dec.report.oracle
                                                   : brute_force_neighbors(dec.report.matrix, dec.report.digits);
        if (dec.verdict.kind == VerdictKind::Connected) {
            witness += !witness_valid(dec.report.digits, n_an, dec.verdict.witness);
        } else if (dec.verdict.certificate) {
            if (const auto* p = std::get_if<Partition>(&*dec.verdict.certificate))
                witness += !partition_valid(dec.report.digits, n_an, *p);
        } else {
            ++witness;
        }

        // The shifted set leaves S, so it is decided on a different path.
        const auto moved = decide_connected(c.t, c.d.translated(shift));
        translation += moved.verdict.kind != dec.verdict.kind;

        const auto [t2, d2] = square_reduce(c.t, c.d);
        square += decide_connected(t2, d2).verdict.kind != dec.verdict.kind;
    }
    const bool ok = asym + translation + square + witness + truth == 0;
    std::ostringstream os;
    os << cases << " instances; failures: symmetry " << asym << ", translation " << translation << ", square "
       << square << ", witness/certificate " << witness << ", verdict vs oracle chain " << truth;
    report(10, "invariance suite on the small family", ok, os.str(), seconds_since(t0));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}

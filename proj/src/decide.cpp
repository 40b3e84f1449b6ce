#include "saa/decide.hpp"

#include <algorithm>
#include <numeric>

namespace saa {

namespace {

bool positive_normal_form(const IntMatrix2& t) {
    const auto nf = normal_form_params(t);
    return nf && nf->n > 0 && nf->m > 0;
}

void run_oracle(const IntMatrix2& t, const DigitSet& d, AnalysisReport& rep) {
    rep.oracle = brute_force_neighbors(t, d);
    rep.oracle_chain_verdict = is_connected_by_chain(d, *rep.oracle).kind;
}

Verdict collinear_verdict(const IntMatrix2& t, const DigitSet& d, const CollinearData& col) {
    // D = d_1 + offsets * v with T v = lambda v, so F is a translate of the
    // one-dimensional attractor of x -> (x + o) / lambda along v.
    const DigitVector tv = t * col.direction;
    const std::int64_t lambda = col.direction.x != 0 ? tv.x / col.direction.x : tv.y / col.direction.y;
    Verdict v;
    if (auto gap = collinear_gap(lambda, col.offsets)) {
        v.kind = VerdictKind::Disconnected;
        v.certificate = HullGapCertificate{gap->first, gap->second};
        return v;
    }
    // Consecutive offsets along the line differ by at most the hull length,
    // so walking the digits in offset order stays inside F - F.
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return col.offsets[i] < col.offsets[j]; });
    v.kind = VerdictKind::Connected;
    v.witness = std::move(order);
    return v;
}

Decision decide(const IntMatrix2& t, const DigitSet& d, const DecideOptions& opts, int depth) {
    if (!is_expanding(t)) throw NotExpandingError();
    if (d.empty()) throw PreconditionError("empty digit set");

    Decision out;
    AnalysisReport& rep = out.report;
    rep.matrix = t;
    rep.digits = d;

    if (d.size() == 1) {
        rep.rules_fired.push_back(rules::kSingleDigit);
        out.verdict.kind = VerdictKind::Connected;
        out.verdict.witness = {0};
        return out;
    }

    const auto col = collinear_direction(d);
    if (col && (t.is_scalar() || cross(t * col->direction, col->direction) == 0)) {
        rep.rules_fired.push_back(rules::kCollinearHull);
        out.verdict = collinear_verdict(t, d, *col);
        if (opts.force_oracle) run_oracle(t, d, rep);
        return out;
    }

    if (t == IntMatrix2::scalar(2) || t == IntMatrix2::scalar(-2)) {
        rep.rules_fired.push_back(rules::kScalarTwo);
        rep.rules_fired.push_back(rules::kOracle);
        rep.rules_fired.push_back(rules::kChain);
        run_oracle(t, d, rep);
        out.verdict = is_connected_by_chain(d, *rep.oracle);
        if (out.verdict.kind != VerdictKind::Connected)
            rep.notes.push_back("chain criterion disagrees with universality of +-2I");
        return out;
    }

    if (depth < opts.max_square_reductions && square_reduction_helps(t)) {
        auto [t2, d2] = square_reduce(t, d);
        Decision inner = decide(t2, d2, opts, depth + 1);
        inner.report.rules_fired.insert(inner.report.rules_fired.begin(), rules::kSquareReduce);
        return inner;
    }

    const auto nf = normal_form_params(t);
    const bool positive = nf && nf->n > 0 && nf->m > 0;
    if (positive) rep.lower_bound = neighbor_lower_bound(t, d);

    if (positive && opts.use_closed_form && closed_form_applicable(*nf, d)) {
        rep.rules_fired.push_back(nf->t == 1 ? rules::kClosedFormT1 : rules::kClosedFormT0);
        if (nf->m >= 2) {
            rep.dimension_test = dimension_disconnectedness(nf->n, nf->m, static_cast<std::int64_t>(d.size()), count_rows(d));
            rep.rules_fired.push_back(rules::kDimensionTest);
            rep.notes.push_back("dimension test uses the closed two-branch dim_S formula");
        }
        const NeighborOutcome outcome = closed_form_neighbors(*nf, d);
        Verdict closed;
        if (const auto* clause = std::get_if<DisconnectedByClause>(&outcome)) {
            rep.rules_fired.push_back(rules::kClosedFormClause);
            rep.closed_form_clause = clause->clause;
            closed.kind = VerdictKind::Disconnected;
            closed.certificate = ClauseCertificate{clause->clause};
        } else {
            rep.closed_form = std::get<NeighborSet>(outcome);
            closed = is_connected_by_chain(d, *rep.closed_form);
        }
        // The closed forms miss neighbors on some admissible inputs, so they
        // are always checked against the oracle before they are trusted.
        rep.rules_fired.push_back(rules::kOracle);
        rep.rules_fired.push_back(rules::kChain);
        run_oracle(t, d, rep);
        if (rep.closed_form) rep.closed_form_matches_oracle = *rep.closed_form == *rep.oracle;
        if (closed.kind == *rep.oracle_chain_verdict && rep.closed_form_matches_oracle.value_or(true)) {
            out.verdict = std::move(closed);
        } else {
            out.verdict = is_connected_by_chain(d, *rep.oracle);
            rep.notes.push_back(closed.kind == out.verdict.kind ? "closed-form neighbor set differs from oracle"
                                                                 : "closed-form verdict overruled by oracle chain");
        }
        return out;
    }

    rep.rules_fired.push_back(rules::kOracle);
    rep.rules_fired.push_back(rules::kChain);
    run_oracle(t, d, rep);
    out.verdict = is_connected_by_chain(d, *rep.oracle);
    return out;
}

}  // namespace

bool square_reduction_helps(const IntMatrix2& t) {
    if (positive_normal_form(t)) return false;
    if (normal_form_params(t)) return true;  // negative n or m
    try {
        return positive_normal_form(t * t);
    } catch (const std::overflow_error&) {
        return false;
    }
}

Decision decide_connected(const IntMatrix2& t, const DigitSet& d, const DecideOptions& opts) {
    return decide(t, d, opts, 0);
}

}  // namespace saa

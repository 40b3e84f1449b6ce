#pragma once

// Connectedness pipeline combining the special-case tests with the chain
// criterion. Corroborating tests annotate the report; they never override
// the deciding rule.

#include <optional>
#include <string>
#include <vector>

#include "saa/connectivity.hpp"

namespace saa {

// Rule identifiers, in the order the pipeline can fire them.
namespace rules {
inline constexpr const char* kSingleDigit = "single-digit";
inline constexpr const char* kCollinearHull = "collinear-hull";
inline constexpr const char* kScalarTwo = "scalar-two-universal";
inline constexpr const char* kSquareReduce = "square-reduce";
inline constexpr const char* kClosedFormT0 = "closed-form-t0";
inline constexpr const char* kClosedFormT1 = "closed-form-t1";
inline constexpr const char* kClosedFormClause = "closed-form-clause";
inline constexpr const char* kDimensionTest = "dimension-test";
inline constexpr const char* kOracle = "oracle";
inline constexpr const char* kChain = "chain-criterion";
}  // namespace rules

struct DecideOptions {
    bool force_oracle = false;     // also run the oracle on the collinear path
    bool use_closed_form = true;
    int max_square_reductions = 2;
};

struct AnalysisReport {
    // System the verdict's witness/certificate indices refer to (after any
    // square reductions).
    IntMatrix2 matrix;
    DigitSet digits;
    std::vector<std::string> rules_fired;
    std::optional<NeighborSet> closed_form;
    std::optional<std::string> closed_form_clause;
    std::optional<NeighborSet> oracle;
    std::optional<NeighborSet> lower_bound;
    std::optional<DimensionTest> dimension_test;
    std::optional<VerdictKind> oracle_chain_verdict;
    std::optional<bool> closed_form_matches_oracle;
    std::vector<std::string> notes;
};

struct Decision {
    Verdict verdict;
    AnalysisReport report;
};

/// Throws NotExpandingError for non-expanding T.
Decision decide_connected(const IntMatrix2& t, const DigitSet& d, const DecideOptions& opts = {});

/// T^2 lands in normal form with positive diagonal while T does not.
bool square_reduction_helps(const IntMatrix2& t);

}  // namespace saa

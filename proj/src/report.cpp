#include "saa/report.hpp"

#include <fstream>
#include <stdexcept>
#include <sstream>

namespace saa {

using nlohmann::json;

namespace {

std::int64_t int_entry(const json& j, const char* what) {
    if (!j.is_number_integer()) throw InstanceParseError(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

json big(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

}  // namespace

InstanceSpec parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InstanceParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InstanceParseError("instance must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (key != "T" && key != "D" && key != "label") throw InstanceParseError("unknown field '" + key + "'");

    InstanceSpec spec;
    if (!j.contains("T")) throw InstanceParseError("missing field 'T'");
    const json& t = j["T"];
    if (!t.is_array() || t.size() != 2 || !t[0].is_array() || !t[1].is_array() || t[0].size() != 2 ||
        t[1].size() != 2)
        throw InstanceParseError("'T' must be a 2x2 array");
    spec.matrix = {int_entry(t[0][0], "T entry"), int_entry(t[0][1], "T entry"), int_entry(t[1][0], "T entry"),
                   int_entry(t[1][1], "T entry")};

    if (!j.contains("D")) throw InstanceParseError("missing field 'D'");
    const json& d = j["D"];
    if (!d.is_array() || d.empty()) throw InstanceParseError("'D' must be a nonempty array");
    std::vector<DigitVector> digits;
    for (const auto& v : d) {
        if (!v.is_array() || v.size() != 2) throw InstanceParseError("each digit must be an [x, y] pair");
        digits.push_back({int_entry(v[0], "digit coordinate"), int_entry(v[1], "digit coordinate")});
    }
    try {
        spec.digits = DigitSet(std::move(digits));
    } catch (const PreconditionError& e) {
        throw InstanceParseError(e.what());
    }
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw InstanceParseError("'label' must be a string");
        spec.label = j["label"].get<std::string>();
    }
    return spec;
}

InstanceSpec load_instance(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read instance file " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return parse_instance(os.str());
}

json instance_to_json(const InstanceSpec& spec) {
    json j{{"T", to_json(spec.matrix)}, {"D", to_json(spec.digits)}};
    if (spec.label) j["label"] = *spec.label;
    return j;
}

json to_json(const DigitVector& v) { return json::array({v.x, v.y}); }

json to_json(const DigitSet& d) {
    json a = json::array();
    for (const auto& v : d) a.push_back(to_json(v));
    return a;
}

json to_json(const NeighborSet& n) {
    json a = json::array();
    for (const auto& v : n.vectors()) a.push_back(to_json(v));
    return a;
}

json to_json(const IntMatrix2& t) { return json::array({json::array({t.a, t.b}), json::array({t.c, t.d})}); }

json to_json(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

json to_json(const DimensionTest& dt) {
    return {{"n", dt.n},
            {"m", dt.m},
            {"q", dt.q},
            {"r", dt.r},
            {"lhs", dt.lhs},
            {"dim_s", dt.dim_s},
            {"branch", dt.branch == DimensionBranch::Lower ? "lower" : "upper"},
            {"triggered", dt.triggered},
            {"dim_s_formula", "closed two-branch formula"}};
}

json to_json(const Certificate& c) {
    struct Visitor {
        json operator()(const Partition& p) const {
            return {{"kind", "partition"}, {"part_a", p.part_a}, {"part_b", p.part_b}};
        }
        json operator()(const ClauseCertificate& c) const { return {{"kind", "clause"}, {"clause", c.clause}}; }
        json operator()(const HullGapCertificate& g) const {
            return {{"kind", "hull-gap"}, {"gap", json::array({to_json(g.gap_lo), to_json(g.gap_hi)})}};
        }
        json operator()(const DimensionTest& dt) const { return {{"kind", "dimension"}, {"test", to_json(dt)}}; }
        json operator()(const CellSplitCertificate& s) const {
            return {{"kind", "cell-cover"}, {"level", s.level}, {"cell_size", to_json(s.cell_size)}, {"clusters", s.clusters}};
        }
    };
    return std::visit(Visitor{}, c);
}

json classify_matrix(const IntMatrix2& t) {
    const CharData cd = char_data(t);
    json j{{"T", to_json(t)},
           {"trace", big(cd.trace)},
           {"det", big(cd.det)},
           {"discriminant", big(cd.discriminant)},
           {"expanding", is_expanding(t)},
           {"reducible", cd.kind == EigenKind::RealRational}};
    switch (cd.kind) {
        case EigenKind::RealRational:
            j["eigenvalues"] = json::array({big((*cd.eigenvalues)[0]), big((*cd.eigenvalues)[1])});
            j["eigen_kind"] = "real-rational";
            break;
        case EigenKind::RealIrrational: j["eigenvalues"] = nullptr; j["eigen_kind"] = "real-irrational"; break;
        case EigenKind::ComplexPair:
            j["eigenvalues"] = nullptr;
            j["eigen_kind"] = "complex-pair";
            j["modulus_squared"] = big(*cd.modulus_squared);
            break;
    }
    if (auto nf = normal_form_params(t)) j["normal_form"] = {{"n", nf->n}, {"m", nf->m}, {"t", nf->t}};
    else j["normal_form"] = nullptr;
    return j;
}

json analysis_report(const InstanceSpec& spec, const Decision& decision, double timing_ms) {
    const auto& rep = decision.report;
    const auto opt_set = [](const std::optional<NeighborSet>& n) { return n ? to_json(*n) : json(nullptr); };
    json j{{"label", spec.label ? json(*spec.label) : json(nullptr)},
           {"matrix", classify_matrix(spec.matrix)},
           {"verdict", to_string(decision.verdict.kind)},
           {"rules_fired", rep.rules_fired},
           {"neighbor_set_closed_form", opt_set(rep.closed_form)},
           {"closed_form_clause", rep.closed_form_clause ? json(*rep.closed_form_clause) : json(nullptr)},
           {"neighbor_set_oracle", opt_set(rep.oracle)},
           {"neighbor_set_lower_bound", opt_set(rep.lower_bound)},
           {"closed_form_matches_oracle",
            rep.closed_form_matches_oracle ? json(*rep.closed_form_matches_oracle) : json(nullptr)},
           {"oracle_chain_verdict", rep.oracle_chain_verdict ? json(to_string(*rep.oracle_chain_verdict)) : json(nullptr)},
           {"witness", decision.verdict.kind == VerdictKind::Connected ? json(decision.verdict.witness) : json(nullptr)},
           {"certificate", decision.verdict.certificate ? to_json(*decision.verdict.certificate) : json(nullptr)},
           {"dimension_test", rep.dimension_test ? to_json(*rep.dimension_test) : json(nullptr)},
           {"analyzed_system", {{"T", to_json(rep.matrix)}, {"D", to_json(rep.digits)}}},
           {"notes", rep.notes},
           {"timing_ms", timing_ms}};
    return j;
}

}  // namespace saa

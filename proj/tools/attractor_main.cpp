// attractor: connectedness analysis of planar integral self-affine attractors.
//
// Exit codes: 0 success (the verdict is data), 1 I/O or internal failure,
// 2 parse/parameter error, 3 precondition violation, 4 size guard exceeded.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "saa/decide.hpp"
#include "saa/geometry.hpp"
#include "saa/report.hpp"

namespace {

using nlohmann::json;
using namespace saa;

constexpr int kExitIo = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitSizeGuard = 4;

struct ParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void print_text_report(const json& r) {
    std::cout << "label:    " << (r["label"].is_null() ? "-" : r["label"].get<std::string>()) << "\n";
    std::cout << "matrix:   " << r["matrix"]["T"].dump() << " det=" << r["matrix"]["det"].dump()
              << " expanding=" << r["matrix"]["expanding"].dump() << " reducible=" << r["matrix"]["reducible"].dump()
              << "\n";
    std::cout << "verdict:  " << r["verdict"].get<std::string>() << "\n";
    std::cout << "rules:   ";
    for (const auto& s : r["rules_fired"]) std::cout << ' ' << s.get<std::string>();
    std::cout << "\n";
    for (const char* key : {"neighbor_set_closed_form", "neighbor_set_lower_bound", "neighbor_set_oracle"})
        if (!r[key].is_null()) std::cout << key << ": " << r[key].dump() << "\n";
    if (!r["closed_form_clause"].is_null()) std::cout << "clause:   " << r["closed_form_clause"].get<std::string>() << "\n";
    if (!r["closed_form_matches_oracle"].is_null())
        std::cout << "closed form matches oracle: " << r["closed_form_matches_oracle"].dump() << "\n";
    if (!r["dimension_test"].is_null()) std::cout << "dimension test: " << r["dimension_test"].dump() << "\n";
    if (!r["witness"].is_null()) std::cout << "witness:  " << r["witness"].dump() << "\n";
    if (!r["certificate"].is_null()) std::cout << "certificate: " << r["certificate"].dump() << "\n";
}

int cmd_analyze(const std::string& path, bool as_json, bool oracle, bool no_closed_form) {
    const InstanceSpec spec = load_instance(path);
    DecideOptions opts;
    opts.force_oracle = oracle;
    opts.use_closed_form = !no_closed_form;
    const auto t0 = std::chrono::steady_clock::now();
    const Decision decision = decide_connected(spec.matrix, spec.digits, opts);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const json report = analysis_report(spec, decision, ms);
    if (as_json) std::cout << report.dump(2) << "\n";
    else print_text_report(report);
    return 0;
}

json neighbor_report(const InstanceSpec& spec) {
    if (!is_expanding(spec.matrix)) throw NotExpandingError();
    json j{{"label", spec.label ? json(*spec.label) : json(nullptr)}, {"matrix", classify_matrix(spec.matrix)}};
    const NeighborSet oracle = brute_force_neighbors(spec.matrix, spec.digits);
    j["oracle"] = to_json(oracle);

    const auto nf = normal_form_params(spec.matrix);
    const bool positive = nf && nf->n > 0 && nf->m > 0;
    json agreement = json::object();
    if (positive && closed_form_applicable(*nf, spec.digits)) {
        const NeighborOutcome outcome = closed_form_neighbors(*nf, spec.digits);
        if (const auto* c = std::get_if<DisconnectedByClause>(&outcome)) {
            j["closed_form"] = {{"disconnected_by_clause", c->clause}};
            agreement["clause_consistent_with_oracle_chain"] =
                is_connected_by_chain(spec.digits, oracle).kind == VerdictKind::Disconnected;
        } else {
            const auto& n = std::get<NeighborSet>(outcome);
            j["closed_form"] = to_json(n);
            agreement["closed_form_equals_oracle"] = n == oracle;
        }
    } else {
        j["closed_form"] = "not applicable";
    }
    if (positive) {
        const NeighborSet lb = neighbor_lower_bound(spec.matrix, spec.digits);
        j["lower_bound"] = to_json(lb);
        agreement["lower_bound_subset_of_oracle"] = lb.is_subset_of(oracle);
    } else {
        j["lower_bound"] = "not applicable";
    }
    j["agreement"] = agreement;
    return j;
}

int cmd_neighbors(const std::string& path, bool as_json) {
    const InstanceSpec spec = load_instance(path);
    const json j = neighbor_report(spec);
    if (as_json) {
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "closed form: " << j["closed_form"].dump() << "\n";
    std::cout << "lower bound: " << j["lower_bound"].dump() << "\n";
    std::cout << "oracle:      " << j["oracle"].dump() << "\n";
    std::cout << "agreement:   " << j["agreement"].dump() << "\n";
    return 0;
}

std::pair<int, int> parse_size(const std::string& s) {
    int w = 0, h = 0;
    char x = 0;
    if (std::sscanf(s.c_str(), "%d%c%d", &w, &x, &h) != 3 || (x != 'x' && x != 'X') || w < 1 || h < 1)
        throw ParameterError("--size must look like WIDTHxHEIGHT");
    return {w, h};
}

int cmd_render(const std::string& path, int level, const std::string& size, const std::string& format,
               const std::string& out, int margin) {
    const InstanceSpec spec = load_instance(path);
    if (format != "pgm" && format != "svg") throw ParameterError("--format must be pgm or svg");
    const auto [w, h] = parse_size(size);
    const AttractorApprox approx = approximate(spec.matrix, spec.digits, level);
    if (format == "pgm") export_pgm(rasterize(approx, w, h, margin), out);
    else export_svg(approx, out);
    const BoundingBox box = bounding_box(approx);
    const json j{{"points", approx.size()},
                 {"level", level},
                 {"bounding_box", {box.min_x, box.min_y, box.max_x, box.max_y}},
                 {"output", out}};
    std::cout << j.dump() << "\n";
    return 0;
}

struct SearchParams {
    std::int64_t n = 0, m = 0, q = 0;
    int t = 0;
    bool dedup = false;
    std::string jsonl;
    unsigned threads = 0;
};

std::vector<std::vector<std::size_t>> enumerate_subsets(std::size_t universe, std::size_t q) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> idx(q);
    for (std::size_t i = 0; i < q; ++i) idx[i] = i;
    for (;;) {
        out.push_back(idx);
        std::size_t i = q;
        while (i > 0 && idx[i - 1] == universe - q + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < q; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

double binomial(std::int64_t n, std::int64_t k) {
    double r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

int cmd_search(const SearchParams& p) {
    if (p.m < 2 || p.n < p.m) throw ParameterError("search requires N >= M >= 2");
    if (p.q < 2 || p.q > p.n * p.m) throw ParameterError("search requires 2 <= Q <= N*M");
    if (p.t != 0 && p.t != 1) throw ParameterError("--t must be 0 or 1");
    if (binomial(p.n * p.m, p.q) > 5e6) throw ParameterError("search space exceeds 5e6 subsets");

    const IntMatrix2 t{p.n, 0, p.t, p.m};
    const DigitSet grid = grid_s(p.n, p.m);
    std::vector<DigitSet> sets;
    for (const auto& idx : enumerate_subsets(grid.size(), static_cast<std::size_t>(p.q))) {
        std::vector<DigitVector> v;
        for (auto i : idx) v.push_back(grid[i]);
        DigitSet d(std::move(v));
        if (p.dedup) {
            // Keep the translate whose minimum coordinates sit at the origin.
            const auto minx = std::min_element(d.begin(), d.end(), [](auto& a, auto& b) { return a.x < b.x; })->x;
            const auto miny = std::min_element(d.begin(), d.end(), [](auto& a, auto& b) { return a.y < b.y; })->y;
            if (minx != 0 || miny != 0) continue;
        }
        sets.push_back(std::move(d));
    }

    std::vector<json> lines(sets.size());
    std::atomic<std::size_t> next{0};
    DecideOptions opts;
    opts.force_oracle = true;
    auto worker = [&] {
        for (std::size_t i = next++; i < sets.size(); i = next++) {
            const Decision dec = decide_connected(t, sets[i], opts);
            const auto& rep = dec.report;
            json line{{"digits", to_json(sets[i])},
                      {"verdict", to_string(dec.verdict.kind)},
                      {"rules", rep.rules_fired},
                      {"agreement", rep.oracle_chain_verdict && *rep.oracle_chain_verdict == dec.verdict.kind},
                      {"closed_form_matches_oracle",
                       rep.closed_form_matches_oracle ? json(*rep.closed_form_matches_oracle) : json(nullptr)},
                      {"dimension_triggered", rep.dimension_test ? json(rep.dimension_test->triggered) : json(nullptr)}};
            lines[i] = std::move(line);
        }
    };
    unsigned threads = p.threads ? p.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, sets.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!p.jsonl.empty()) {
        file.open(p.jsonl);
        if (!file) throw std::runtime_error("cannot open " + p.jsonl + " for writing");
        out = &file;
    }
    std::size_t connected = 0, disconnected = 0, unknown = 0, disagreements = 0, dim_triggered = 0,
                dim_triggered_connected = 0, closed_form_mismatch = 0;
    for (const auto& line : lines) {
        *out << line.dump() << "\n";
        const std::string v = line["verdict"];
        (v == "connected" ? connected : v == "disconnected" ? disconnected : unknown)++;
        if (!line["agreement"].get<bool>()) ++disagreements;
        if (line["closed_form_matches_oracle"] == false) ++closed_form_mismatch;
        if (line["dimension_triggered"] == true) {
            ++dim_triggered;
            if (v == "connected") ++dim_triggered_connected;
        }
    }
    const json summary{{"summary",
                        {{"n", p.n},
                         {"m", p.m},
                         {"t", p.t},
                         {"q", p.q},
                         {"dedup_translation", p.dedup},
                         {"total", lines.size()},
                         {"connected", connected},
                         {"disconnected", disconnected},
                         {"unknown", unknown},
                         {"disagreements", disagreements},
                         {"closed_form_mismatches", closed_form_mismatch},
                         {"dimension_triggered", dim_triggered},
                         {"dimension_triggered_but_connected", dim_triggered_connected}}}};
    std::cout << summary.dump() << "\n";
    return 0;
}

int cmd_dim(std::int64_t n, std::int64_t m, std::int64_t q, std::optional<std::int64_t> r, bool as_json) {
    if (m < 2 || n < m) throw ParameterError("dim requires n >= m >= 2");
    if (q < 2 || q > n * m) throw ParameterError("dim requires 2 <= q <= n*m");
    const SvDimension sv = singular_value_dimension(n, m, q);
    json j{{"n", n}, {"m", m}, {"q", q}, {"branch", sv.branch == DimensionBranch::Lower ? "lower" : "upper"},
           {"dim_s", sv.value}};
    if (r) {
        if (*r < 1 || *r > std::min(q, m)) throw ParameterError("--r must satisfy 1 <= r <= min(q, m)");
        const DimensionTest dt = dimension_disconnectedness(n, m, q, *r);
        j["r"] = *r;
        j["lhs"] = dt.lhs;
        j["decision"] = dt.triggered ? "triggers: disconnected" : "inconclusive";
    }
    if (as_json) {
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "dim_S = " << sv.value << " (" << j["branch"].get<std::string>() << " branch: "
              << (sv.branch == DimensionBranch::Lower ? "log_m q" : "1 + log_n(q/m)") << ")\n";
    if (r) std::cout << "lhs = " << j["lhs"].get<double>() << "\n" << j["decision"].get<std::string>() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Connectedness of planar integral self-affine attractors"};
    app.require_subcommand(1);

    std::string instance;
    bool as_json = false, oracle = false, no_closed_form = false;
    auto* analyze = app.add_subcommand("analyze", "Decide connectedness of an instance");
    analyze->add_option("instance", instance, "Instance JSON file")->required();
    analyze->add_flag("--json", as_json, "Emit the JSON report");
    analyze->add_flag("--oracle", oracle, "Also run the brute-force neighbor oracle where it is otherwise skipped");
    analyze->add_flag("--no-closed-form", no_closed_form, "Skip closed-form neighbor sets");

    auto* neighbors = app.add_subcommand("neighbors", "Compare neighbor-set computations");
    neighbors->add_option("instance", instance, "Instance JSON file")->required();
    neighbors->add_flag("--json", as_json, "Emit JSON");

    int level = 8, margin = 0;
    std::string size = "512x512", format = "pgm", out;
    auto* render = app.add_subcommand("render", "Render a level-k approximation");
    render->add_option("instance", instance, "Instance JSON file")->required();
    render->add_option("--level,-k", level, "Approximation level")->check(CLI::PositiveNumber);
    render->add_option("--size", size, "Bitmap size WIDTHxHEIGHT (pgm)");
    render->add_option("--format", format, "pgm or svg");
    render->add_option("--out,-o", out, "Output file")->required();
    render->add_option("--margin", margin, "Margin in pixels (pgm)")->check(CLI::NonNegativeNumber);

    SearchParams sp;
    auto* search = app.add_subcommand("search", "Classify all digit subsets of the grid S");
    search->add_option("--n", sp.n, "Diagonal entry n")->required();
    search->add_option("--m", sp.m, "Diagonal entry m")->required();
    search->add_option("--t", sp.t, "Lower-left entry (0 or 1)")->required();
    search->add_option("--q", sp.q, "Number of digits")->required();
    search->add_flag("--dedup-translation", sp.dedup, "Keep one translate per class");
    search->add_option("--jsonl", sp.jsonl, "Write JSON lines to this file instead of stdout");
    search->add_option("--threads", sp.threads, "Worker threads (default: hardware concurrency)");

    std::int64_t dn = 0, dm = 0, dq = 0;
    std::optional<std::int64_t> dr;
    auto* dim = app.add_subcommand("dim", "Singular value dimension and the dimension test");
    dim->add_option("--n", dn, "n")->required();
    dim->add_option("--m", dm, "m")->required();
    dim->add_option("--q", dq, "q")->required();
    dim->add_option("--r", dr, "Number of occupied rows");
    dim->add_flag("--json", as_json, "Emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*analyze) return cmd_analyze(instance, as_json, oracle, no_closed_form);
        if (*neighbors) return cmd_neighbors(instance, as_json);
        if (*render) return cmd_render(instance, level, size, format, out, margin);
        if (*search) return cmd_search(sp);
        if (*dim) return cmd_dim(dn, dm, dq, dr, as_json);
    } catch (const InstanceParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const SizeGuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSizeGuard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}

#include "saa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <unordered_set>

namespace saa {

namespace mp = boost::multiprecision;

std::uint64_t max_points_from_env() {
    if (const char* env = std::getenv("ATTRACTOR_MAX_POINTS")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return kDefaultMaxPoints;
}

RationalVector AttractorApprox::point(std::size_t i) const {
    const auto& n = numerators.at(i);
    return {Rational(n.x, denominator), Rational(n.y, denominator)};
}

std::set<RationalVector> AttractorApprox::point_set() const {
    std::set<RationalVector> s;
    for (std::size_t i = 0; i < numerators.size(); ++i) s.insert(point(i));
    return s;
}

namespace {

struct VecHash {
    std::size_t operator()(const DigitVector& v) const noexcept {
        const auto h1 = std::hash<std::int64_t>{}(v.x);
        const auto h2 = std::hash<std::int64_t>{}(v.y);
        return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
    }
};

void dedup_in_place(std::vector<DigitVector>& v) {
    std::unordered_set<DigitVector, VecHash> seen;
    seen.reserve(v.size() * 2);
    std::size_t w = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (seen.insert(v[i]).second) v[w++] = v[i];
    v.resize(w);
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

BigInt rational_floor(const Rational& r) { return floor_div(mp::numerator(r), mp::denominator(r)); }

}  // namespace

AttractorApprox approximate(const IntMatrix2& t, const DigitSet& d, int level, std::uint64_t max_points) {
    if (level < 1) throw PreconditionError("level must be positive");
    if (d.empty()) throw PreconditionError("empty digit set");
    const Rational radius = attractor_radius(t, d);  // also checks expansion

    double predicted = std::pow(static_cast<double>(d.size()), level);
    if (predicted > static_cast<double>(max_points))
        throw SizeGuardError("approximation would have " + std::to_string(static_cast<long double>(predicted)) +
                             " points, above the limit of " + std::to_string(max_points));

    const std::int64_t det = t.det();
    const std::int64_t abs_det = det < 0 ? -det : det;
    IntMatrix2 adj = t.adjugate();
    if (det < 0) adj = {-adj.a, -adj.b, -adj.c, -adj.d};

    // Level j numerators N over |det|^j: N = adj (|det|^(j-1) d + N').
    std::vector<DigitVector> prev{DigitVector{0, 0}};
    std::int64_t scale = 1;  // |det|^(j-1)
    for (int j = 1; j <= level; ++j) {
        std::vector<DigitVector> next;
        next.reserve(prev.size() * d.size());
        for (const auto& digit : d) {
            const DigitVector lifted = digit.scaled(scale);
            for (const auto& p : prev) next.push_back(adj * (lifted + p));
        }
        dedup_in_place(next);
        prev = std::move(next);
        if (j < level) scale = checked_mul(scale, abs_det);
    }
    AttractorApprox out;
    out.level = level;
    out.denominator = checked_mul(scale, abs_det);
    out.numerators = std::move(prev);
    out.radius = radius;
    return out;
}

BoundingBox bounding_box(const AttractorApprox& approx) {
    if (approx.numerators.empty()) return {};
    std::int64_t lx = std::numeric_limits<std::int64_t>::max(), ly = lx;
    std::int64_t hx = std::numeric_limits<std::int64_t>::min(), hy = hx;
    for (const auto& n : approx.numerators) {
        lx = std::min(lx, n.x);
        ly = std::min(ly, n.y);
        hx = std::max(hx, n.x);
        hy = std::max(hy, n.y);
    }
    const double den = static_cast<double>(approx.denominator);
    return {lx / den, ly / den, hx / den, hy / den};
}

std::size_t Bitmap::lit_count() const {
    return static_cast<std::size_t>(std::count(lit.begin(), lit.end(), std::uint8_t{1}));
}

Bitmap rasterize(const AttractorApprox& approx, int width, int height, int margin) {
    if (width < 1 || height < 1) throw PreconditionError("bitmap dimensions must be positive");
    if (approx.numerators.empty()) throw PreconditionError("empty approximation");
    Bitmap bm{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0)};

    const BoundingBox box = bounding_box(approx);
    const double ex = box.max_x - box.min_x, ey = box.max_y - box.min_y;
    const double avail_w = std::max(0, width - 1 - 2 * margin);
    const double avail_h = std::max(0, height - 1 - 2 * margin);
    double scale = 0;
    if (ex > 0 && ey > 0) scale = std::min(avail_w / ex, avail_h / ey);
    else if (ex > 0) scale = avail_w / ex;
    else if (ey > 0) scale = avail_h / ey;

    const double cx = 0.5 * (box.min_x + box.max_x), cy = 0.5 * (box.min_y + box.max_y);
    const double px0 = 0.5 * (width - 1), py0 = 0.5 * (height - 1);
    const double den = static_cast<double>(approx.denominator);
    for (const auto& n : approx.numerators) {
        const double x = n.x / den, y = n.y / den;
        long px = std::lround(px0 + (x - cx) * scale);
        long py = std::lround(py0 - (y - cy) * scale);
        px = std::clamp(px, 0L, static_cast<long>(width - 1));
        py = std::clamp(py, 0L, static_cast<long>(height - 1));
        bm.lit[static_cast<std::size_t>(py) * width + px] = 1;
    }
    return bm;
}

std::string pgm_bytes(const Bitmap& bitmap) {
    std::string out = "P5\n" + std::to_string(bitmap.width) + " " + std::to_string(bitmap.height) + "\n255\n";
    out.reserve(out.size() + bitmap.lit.size());
    for (auto v : bitmap.lit) out.push_back(static_cast<char>(v ? 0 : 255));
    return out;
}

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string svg_document(const AttractorApprox& approx) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (approx.numerators.empty()) {
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 1 1\">\n";
        out += "<g fill=\"black\"></g>\n</svg>\n";
        return out;
    }
    const BoundingBox box = bounding_box(approx);
    const double ex = box.max_x - box.min_x, ey = box.max_y - box.min_y;
    double extent = std::max(ex, ey);
    if (extent <= 0) extent = 1;
    const double side = extent / std::ceil(std::sqrt(static_cast<double>(approx.size())));
    // SVG y grows downwards; points are written with y negated.
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + num(box.min_x - side) + " " +
           num(-box.max_y - side) + " " + num(ex + 2 * side) + " " + num(ey + 2 * side) + "\">\n";
    out += "<g fill=\"black\">\n";
    const double den = static_cast<double>(approx.denominator);
    const std::string s = num(side);
    for (const auto& n : approx.numerators) {
        out += "<rect x=\"" + num(n.x / den - side / 2) + "\" y=\"" + num(-n.y / den - side / 2) + "\" width=\"" + s +
               "\" height=\"" + s + "\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

void export_pgm(const Bitmap& bitmap, const std::filesystem::path& path) { write_file(path, pgm_bytes(bitmap)); }

void export_svg(const AttractorApprox& approx, const std::filesystem::path& path) {
    write_file(path, svg_document(approx));
}

bool CellCover::covers(const RationalVector& p) const {
    if (cell_size <= 0) return false;
    const BigInt fx = rational_floor(p.x / cell_size), fy = rational_floor(p.y / cell_size);
    // A point on a cell boundary also belongs to the lower neighbour.
    for (int dx = -1; dx <= 0; ++dx) {
        for (int dy = -1; dy <= 0; ++dy) {
            const Rational cx0 = Rational(BigInt(fx + dx)) * cell_size, cy0 = Rational(BigInt(fy + dy)) * cell_size;
            if (p.x < cx0 || p.x > cx0 + cell_size || p.y < cy0 || p.y > cy0 + cell_size) continue;
            if (cells.count({static_cast<std::int64_t>(fx + dx), static_cast<std::int64_t>(fy + dy)})) return true;
        }
    }
    return false;
}

CellCover cell_cover(const IntMatrix2& t, const DigitSet& d, int level, std::uint64_t max_points) {
    const AttractorApprox approx = approximate(t, d, level, max_points);
    RationalMatrix2 power = inverse(t);
    const RationalMatrix2 inv = power;
    for (int j = 1; j < level; ++j) power = power * inv;

    CellCover cover;
    cover.level = level;
    // Every level-k piece is p_w + T^-k F, inside the max-norm box of this radius.
    cover.inflation = power.row_norm() * approx.radius;
    cover.cell_size = cover.inflation;
    if (cover.cell_size == 0) {
        return cover;  // D = {0}, F = {0}
    }
    const Rational h = cover.cell_size;
    // Coordinates n/den; s = n / (den h). Box [s-1, s+1] in cell units meets
    // cells ceil(s) - 2 .. floor(s) + 1.
    const BigInt hn = mp::numerator(h), hd = mp::denominator(h);
    const BigInt den = BigInt(approx.denominator) * hn;
    for (const auto& n : approx.numerators) {
        const BigInt sx = BigInt(n.x) * hd, sy = BigInt(n.y) * hd;
        const BigInt fx = floor_div(sx, den), fy = floor_div(sy, den);
        const BigInt cxl = -floor_div(-sx, den) - 2, cyl = -floor_div(-sy, den) - 2;
        for (BigInt x = cxl; x <= fx + 1; ++x)
            for (BigInt y = cyl; y <= fy + 1; ++y)
                cover.cells.insert({static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)});
    }
    return cover;
}

std::optional<CellCoverSplit> cell_cover_certificate(const IntMatrix2& t, const DigitSet& d, int level,
                                                     std::uint64_t max_points) {
    const CellCover cover = cell_cover(t, d, level, max_points);
    if (cover.cells.empty()) return std::nullopt;

    std::map<Cell, int> label;
    std::vector<std::vector<Cell>> clusters;
    for (const Cell& start : cover.cells) {
        if (label.count(start)) continue;
        const int id = static_cast<int>(clusters.size());
        clusters.emplace_back();
        std::deque<Cell> queue{start};
        label[start] = id;
        while (!queue.empty()) {
            const Cell c = queue.front();
            queue.pop_front();
            clusters[id].push_back(c);
            for (int dx = -1; dx <= 1; ++dx) {
                for (int dy = -1; dy <= 1; ++dy) {
                    const Cell nb{c.x + dx, c.y + dy};
                    if (!cover.cells.count(nb) || label.count(nb)) continue;
                    label[nb] = id;
                    queue.push_back(nb);
                }
            }
        }
    }
    if (clusters.size() < 2) return std::nullopt;
    for (auto& c : clusters) std::sort(c.begin(), c.end());
    return CellCoverSplit{level, cover.cell_size, std::move(clusters)};
}

}  // namespace saa

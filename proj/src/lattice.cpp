#include "saa/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace saa {

namespace mp = boost::multiprecision;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
    return r;
}

std::int64_t max_norm(const DigitVector& v) {
    return std::max(v.x < 0 ? -v.x : v.x, v.y < 0 ? -v.y : v.y);
}

std::int64_t cross(const DigitVector& u, const DigitVector& v) {
    return checked_add(checked_mul(u.x, v.y), -checked_mul(u.y, v.x));
}

IntMatrix2 IntMatrix2::operator*(const IntMatrix2& o) const {
    return {checked_add(checked_mul(a, o.a), checked_mul(b, o.c)),
            checked_add(checked_mul(a, o.b), checked_mul(b, o.d)),
            checked_add(checked_mul(c, o.a), checked_mul(d, o.c)),
            checked_add(checked_mul(c, o.b), checked_mul(d, o.d))};
}

DigitVector IntMatrix2::operator*(const DigitVector& v) const {
    return {checked_add(checked_mul(a, v.x), checked_mul(b, v.y)),
            checked_add(checked_mul(c, v.x), checked_mul(d, v.y))};
}

namespace {

std::optional<BigInt> exact_sqrt(const BigInt& v) {
    if (v < 0) return std::nullopt;
    BigInt s = mp::sqrt(v);
    if (s * s == v) return s;
    return std::nullopt;
}

}  // namespace

CharData char_data(const IntMatrix2& t) {
    CharData out;
    out.trace = BigInt(t.a) + BigInt(t.d);
    out.det = BigInt(t.a) * t.d - BigInt(t.b) * t.c;
    out.discriminant = out.trace * out.trace - 4 * out.det;
    if (out.discriminant < 0) {
        out.kind = EigenKind::ComplexPair;
        out.modulus_squared = out.det;
    } else if (auto s = exact_sqrt(out.discriminant)) {
        // trace and sqrt(disc) share parity since trace^2 - disc = 4 det.
        out.kind = EigenKind::RealRational;
        out.eigenvalues = std::array<BigInt, 2>{(out.trace + *s) / 2, (out.trace - *s) / 2};
    } else {
        out.kind = EigenKind::RealIrrational;
    }
    return out;
}

bool is_reducible_over_z(const IntMatrix2& t) {
    return char_data(t).kind == EigenKind::RealRational;
}

bool is_expanding(const IntMatrix2& t) {
    const CharData cd = char_data(t);
    if (cd.discriminant < 0) return cd.det > 1;
    // Real roots: |lambda| > 1 for both roots of x^2 - tr x + det iff the
    // reciprocal polynomial det z^2 - tr z + 1 is Schur stable, i.e.
    // |det| > 1 and |tr| < |1 + det|.
    const BigInt one_plus = cd.det + 1;
    return mp::abs(cd.det) > 1 && mp::abs(cd.trace) < mp::abs(one_plus);
}

std::optional<NormalForm> normal_form_params(const IntMatrix2& t) {
    if (t.b != 0) return std::nullopt;
    if (t.c != 0 && t.c != 1) return std::nullopt;
    const BigInt an = mp::abs(BigInt(t.a));
    const BigInt am = mp::abs(BigInt(t.d));
    if (an < am) return std::nullopt;
    return NormalForm{t.a, t.d, static_cast<int>(t.c)};
}

DigitSet::DigitSet(std::vector<DigitVector> digits) : digits_(std::move(digits)) {
    std::set<DigitVector> seen;
    for (const auto& v : digits_) {
        if (!seen.insert(v).second) throw PreconditionError("duplicate digit " + to_string(v));
    }
}

DigitSet DigitSet::deduplicated(std::span<const DigitVector> digits) {
    std::set<DigitVector> seen;
    std::vector<DigitVector> out;
    for (const auto& v : digits) {
        if (seen.insert(v).second) out.push_back(v);
    }
    DigitSet d;
    d.digits_ = std::move(out);
    return d;
}

DigitSet DigitSet::translated(const DigitVector& w) const {
    DigitSet d;
    d.digits_.reserve(digits_.size());
    for (const auto& v : digits_) d.digits_.push_back(v + w);
    return d;
}

bool DigitSet::contains(const DigitVector& v) const {
    return std::find(digits_.begin(), digits_.end(), v) != digits_.end();
}

std::int64_t DigitSet::max_norm() const {
    std::int64_t r = 0;
    for (const auto& v : digits_) r = std::max(r, saa::max_norm(v));
    return r;
}

DifferenceSet::DifferenceSet(const DigitSet& d) {
    for (const auto& u : d)
        for (const auto& v : d) vectors_.insert(u - v);
}

std::int64_t DifferenceSet::max_component() const {
    std::int64_t r = 0;
    for (const auto& v : vectors_) r = std::max(r, max_norm(v));
    return r;
}

std::pair<IntMatrix2, DigitSet> square_reduce(const IntMatrix2& t, const DigitSet& d) {
    if (t.det() == 0) throw PreconditionError("singular matrix");
    std::vector<DigitVector> out;
    out.reserve(d.size() * d.size());
    for (const auto& dj : d) {
        const DigitVector tdj = t * dj;
        for (const auto& di : d) out.push_back(di + tdj);
    }
    return {t * t, DigitSet::deduplicated(out)};
}

DigitSet grid_s(std::int64_t n, std::int64_t m) {
    if (n < 1 || m < 1) throw PreconditionError("grid dimensions must be positive");
    std::vector<DigitVector> out;
    out.reserve(static_cast<std::size_t>(n * m));
    for (std::int64_t j = 0; j < m; ++j)
        for (std::int64_t i = 0; i < n; ++i) out.push_back({i, j});
    return DigitSet(std::move(out));
}

bool subset_of_grid(const DigitSet& d, std::int64_t n, std::int64_t m) {
    return std::all_of(d.begin(), d.end(), [&](const DigitVector& v) {
        return v.x >= 0 && v.x < n && v.y >= 0 && v.y < m;
    });
}

DigitVector primitive(const DigitVector& v) {
    if (v.is_zero()) throw PreconditionError("zero vector has no direction");
    const std::int64_t g = std::gcd(v.x, v.y);
    DigitVector p{v.x / g, v.y / g};
    if (p.x < 0 || (p.x == 0 && p.y < 0)) p = -p;
    return p;
}

std::optional<CollinearData> collinear_direction(const DigitSet& d) {
    if (d.empty()) throw PreconditionError("empty digit set");
    const DigitVector base = d[0];
    std::optional<DigitVector> dir;
    for (const auto& v : d) {
        if (v != base) {
            dir = primitive(v - base);
            break;
        }
    }
    CollinearData out;
    out.direction = dir.value_or(DigitVector{1, 0});
    const DigitVector p = out.direction;
    const std::int64_t pp = checked_add(checked_mul(p.x, p.x), checked_mul(p.y, p.y));
    for (const auto& v : d) {
        const DigitVector w = v - base;
        if (cross(w, p) != 0) return std::nullopt;
        const std::int64_t dot = checked_add(checked_mul(w.x, p.x), checked_mul(w.y, p.y));
        out.offsets.push_back(dot / pp);
    }
    return out;
}

bool is_eigen_collinear(const IntMatrix2& t, const DigitSet& d) {
    const auto col = collinear_direction(d);
    if (!col) return false;
    return cross(t * col->direction, col->direction) == 0;
}

RationalMatrix2 RationalMatrix2::operator*(const RationalMatrix2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Rational RationalMatrix2::row_norm() const {
    return std::max(mp::abs(a) + mp::abs(b), mp::abs(c) + mp::abs(d));
}

RationalMatrix2 to_rational(const IntMatrix2& t) {
    return {Rational(t.a), Rational(t.b), Rational(t.c), Rational(t.d)};
}

RationalMatrix2 inverse(const IntMatrix2& t) {
    const BigInt det = BigInt(t.a) * t.d - BigInt(t.b) * t.c;
    if (det == 0) throw PreconditionError("singular matrix");
    const IntMatrix2 adj = t.adjugate();
    return {Rational(adj.a, det), Rational(adj.b, det), Rational(adj.c, det), Rational(adj.d, det)};
}

RadiusCertificate certify_radius(const IntMatrix2& t, const DigitSet& d) {
    if (!is_expanding(t)) throw NotExpandingError();
    const RationalMatrix2 inv = inverse(t);
    RationalMatrix2 power = inv;
    Rational norm_sum = 0;
    for (int k = 1; k <= 64; ++k) {
        const Rational c = power.row_norm();
        norm_sum += c;
        if (c < 1) {
            // x = sum_b T^{-kb} sum_{j=1..k} T^{-j} d  =>  |x| <= norm_sum * M / (1 - c)
            return {norm_sum * d.max_norm() / (1 - c), k, c};
        }
        power = power * inv;
    }
    throw NotExpandingError();
}

Rational attractor_radius(const IntMatrix2& t, const DigitSet& d) {
    return certify_radius(t, d).radius;
}

std::string to_string(const DigitVector& v) {
    std::ostringstream os;
    os << '(' << v.x << ',' << v.y << ')';
    return os.str();
}

std::string to_string(const IntMatrix2& t) {
    std::ostringstream os;
    os << "[[" << t.a << ',' << t.b << "],[" << t.c << ',' << t.d << "]]";
    return os.str();
}

}  // namespace saa

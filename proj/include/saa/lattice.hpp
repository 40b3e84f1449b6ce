#pragma once

// Exact integer/rational linear algebra on 2x2 integer matrices and integer
// digit sets in the plane.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace saa {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when an operation is called outside the hypotheses it is defined
/// under (non-triangular matrix, digits outside the grid, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotExpandingError : public PreconditionError {
public:
    NotExpandingError() : PreconditionError("matrix not expanding") {}
};

/// Checked 64-bit arithmetic; throws std::overflow_error.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

struct DigitVector {
    std::int64_t x = 0;
    std::int64_t y = 0;

    constexpr auto operator<=>(const DigitVector&) const = default;

    constexpr DigitVector operator-() const { return {-x, -y}; }
    DigitVector operator+(const DigitVector& o) const {
        return {checked_add(x, o.x), checked_add(y, o.y)};
    }
    DigitVector operator-(const DigitVector& o) const {
        return {checked_add(x, -o.x), checked_add(y, -o.y)};
    }
    DigitVector scaled(std::int64_t k) const {
        return {checked_mul(k, x), checked_mul(k, y)};
    }
    constexpr bool is_zero() const { return x == 0 && y == 0; }
};

std::int64_t max_norm(const DigitVector& v);
/// z-component of the planar cross product.
std::int64_t cross(const DigitVector& u, const DigitVector& v);

struct IntMatrix2 {
    // [[a, b], [c, d]]
    std::int64_t a = 0, b = 0, c = 0, d = 0;

    constexpr bool operator==(const IntMatrix2&) const = default;

    static constexpr IntMatrix2 identity() { return {1, 0, 0, 1}; }
    static constexpr IntMatrix2 scalar(std::int64_t p) { return {p, 0, 0, p}; }

    std::int64_t trace() const { return checked_add(a, d); }
    std::int64_t det() const { return checked_add(checked_mul(a, d), -checked_mul(b, c)); }

    IntMatrix2 operator*(const IntMatrix2& o) const;
    DigitVector operator*(const DigitVector& v) const;

    /// Adjugate, so that adj * T = det * I.
    IntMatrix2 adjugate() const { return {d, -b, -c, a}; }
    bool is_scalar() const { return b == 0 && c == 0 && a == d; }
};

enum class EigenKind { RealRational, RealIrrational, ComplexPair };

struct CharData {
    BigInt trace;
    BigInt det;
    BigInt discriminant;
    EigenKind kind = EigenKind::RealRational;
    // Populated only for RealRational (both roots are integers then).
    std::optional<std::array<BigInt, 2>> eigenvalues;
    // |lambda|^2 = det for a complex conjugate pair.
    std::optional<BigInt> modulus_squared;
};

CharData char_data(const IntMatrix2& t);
bool is_reducible_over_z(const IntMatrix2& t);
bool is_expanding(const IntMatrix2& t);

struct NormalForm {
    std::int64_t n = 0;
    std::int64_t m = 0;
    int t = 0;
    constexpr bool operator==(const NormalForm&) const = default;
};

/// Pattern match against [[n, 0], [t, m]] with |n| >= |m| and t in {0, 1}.
/// No conjugation is attempted.
std::optional<NormalForm> normal_form_params(const IntMatrix2& t);

class DigitSet {
public:
    DigitSet() = default;
    /// Throws PreconditionError on duplicates.
    explicit DigitSet(std::vector<DigitVector> digits);
    DigitSet(std::initializer_list<DigitVector> digits)
        : DigitSet(std::vector<DigitVector>(digits)) {}

    /// Keeps the first occurrence of each vector.
    static DigitSet deduplicated(std::span<const DigitVector> digits);

    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }
    const DigitVector& operator[](std::size_t i) const { return digits_[i]; }
    const std::vector<DigitVector>& digits() const { return digits_; }
    auto begin() const { return digits_.begin(); }
    auto end() const { return digits_.end(); }

    DigitSet translated(const DigitVector& w) const;
    bool contains(const DigitVector& v) const;
    std::int64_t max_norm() const;

    bool operator==(const DigitSet&) const = default;

private:
    std::vector<DigitVector> digits_;
};

/// D - D, zero included.
class DifferenceSet {
public:
    explicit DifferenceSet(const DigitSet& d);
    bool contains(const DigitVector& v) const { return vectors_.count(v) != 0; }
    const std::set<DigitVector>& vectors() const { return vectors_; }
    std::size_t size() const { return vectors_.size(); }
    /// Largest |component| over all differences.
    std::int64_t max_component() const;

private:
    std::set<DigitVector> vectors_;
};

/// (T^2, D + T D), digits deduplicated in the order d_i + T d_j, j outer.
std::pair<IntMatrix2, DigitSet> square_reduce(const IntMatrix2& t, const DigitSet& d);

/// {0..n-1} x {0..m-1}, row-major (x fastest).
DigitSet grid_s(std::int64_t n, std::int64_t m);
bool subset_of_grid(const DigitSet& d, std::int64_t n, std::int64_t m);

struct CollinearData {
    DigitVector direction;             // primitive, first nonzero component positive
    std::vector<std::int64_t> offsets; // d_i = d_1 + offsets[i] * direction
};

std::optional<CollinearData> collinear_direction(const DigitSet& d);
bool is_eigen_collinear(const IntMatrix2& t, const DigitSet& d);

DigitVector primitive(const DigitVector& v);

// Rational 2x2 matrices for inverse powers.
struct RationalMatrix2 {
    Rational a, b, c, d;
    RationalMatrix2 operator*(const RationalMatrix2& o) const;
    /// Max row sum of absolute values (operator norm induced by max-norm).
    Rational row_norm() const;
};

RationalMatrix2 to_rational(const IntMatrix2& t);
/// Throws PreconditionError for a singular matrix.
RationalMatrix2 inverse(const IntMatrix2& t);

struct RadiusCertificate {
    Rational radius;        // F within max-norm ball of this radius about 0
    int block = 0;          // smallest k with ||T^-k|| < 1
    Rational contraction;   // ||T^-block||
};

/// Throws NotExpandingError when no k <= 64 certifies contraction.
RadiusCertificate certify_radius(const IntMatrix2& t, const DigitSet& d);
Rational attractor_radius(const IntMatrix2& t, const DigitSet& d);

std::string to_string(const DigitVector& v);
std::string to_string(const IntMatrix2& t);

}  // namespace saa

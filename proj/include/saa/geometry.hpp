#pragma once

// Level-k approximations of attractors, figure export, and cell-cover
// disconnectedness certificates.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "saa/connectivity.hpp"
#include "saa/lattice.hpp"

namespace saa {

class SizeGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultMaxPoints = 10'000'000;

/// ATTRACTOR_MAX_POINTS if set to a positive integer, else kDefaultMaxPoints.
std::uint64_t max_points_from_env();

struct RationalVector {
    Rational x;
    Rational y;
    bool operator==(const RationalVector&) const = default;
    bool operator<(const RationalVector& o) const { return x < o.x || (x == o.x && y < o.y); }
};

/// All sums T^-1 d_{i1} + ... + T^-k d_{ik}, stored as integer numerators over
/// the common positive denominator |det T|^k. Order is digit-index
/// lexicographic with duplicates dropped after their first occurrence.
struct AttractorApprox {
    int level = 0;
    std::int64_t denominator = 1;
    std::vector<DigitVector> numerators;
    Rational radius;

    std::size_t size() const { return numerators.size(); }
    RationalVector point(std::size_t i) const;
    std::set<RationalVector> point_set() const;
};

AttractorApprox approximate(const IntMatrix2& t, const DigitSet& d, int level,
                            std::uint64_t max_points = max_points_from_env());

struct BoundingBox {
    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
};
BoundingBox bounding_box(const AttractorApprox& approx);

struct Bitmap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> lit;  // row-major, row 0 at the top

    bool at(int x, int y) const { return lit[static_cast<std::size_t>(y) * width + x] != 0; }
    std::size_t lit_count() const;
};

/// Uniform-scale viewport: the bounding box is centred and fitted inside the
/// image minus a margin (pixels). A degenerate box uses a unit viewport.
Bitmap rasterize(const AttractorApprox& approx, int width, int height, int margin = 0);

std::string pgm_bytes(const Bitmap& bitmap);
std::string svg_document(const AttractorApprox& approx);
void export_pgm(const Bitmap& bitmap, const std::filesystem::path& path);
void export_svg(const AttractorApprox& approx, const std::filesystem::path& path);

struct Cell {
    std::int64_t x = 0;
    std::int64_t y = 0;
    auto operator<=>(const Cell&) const = default;
};

/// Closed cells [x h, (x+1) h] x [y h, (y+1) h] whose union contains F.
struct CellCover {
    int level = 0;
    Rational cell_size;
    Rational inflation;  // ||T^-k|| * R
    std::set<Cell> cells;

    bool covers(const RationalVector& p) const;
};

CellCover cell_cover(const IntMatrix2& t, const DigitSet& d, int level,
                     std::uint64_t max_points = max_points_from_env());

struct CellCoverSplit {
    int level = 0;
    Rational cell_size;
    std::vector<std::vector<Cell>> clusters;  // 8-connected components, >= 2

    CellSplitCertificate summary() const { return {level, cell_size, clusters.size()}; }
};

/// A returned split proves F disconnected; nullopt means no conclusion.
std::optional<CellCoverSplit> cell_cover_certificate(const IntMatrix2& t, const DigitSet& d, int level,
                                                     std::uint64_t max_points = max_points_from_env());

}  // namespace saa

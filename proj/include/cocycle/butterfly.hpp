#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cocycle/hyperbolicity.hpp"

namespace cocycle {

enum class Pixel : std::uint8_t { In = 0, Inconclusive = 128, Out = 255 };

struct RasterRow {
    Frequency alpha;
    SliceMethod method;
};

struct ButterflyConfig {
    double e_min = -4.0;
    double e_max = 4.0;
    std::size_t width = 512;
    std::size_t height = 512;
    int q_max = 30;
    // Rows at the real frequencies j / (height - 1), classified by the growth
    // method, instead of their nearest Farey fractions.
    bool irrational_rows = false;
    // Explicit row frequencies; when non-empty they replace the grid above
    // and height is taken from their count.
    std::vector<Frequency> rows;
    double coupling = 2.0;
    std::size_t phase_grid = 0;   // 0: 8q for oracle rows, 64 for growth rows
    std::uint64_t n_max = 1024;   // growth rows
    double theta = 0.05;          // growth rows
    unsigned threads = 1;
};

// Verdicts over the (E, alpha) square. Pixel (i, j) sits at energy
//   E_i = ((W - 1 - i) E_min + i E_max) / (W - 1)
// and frequency rows[j].alpha; rows are sorted by alpha ascending.
class ButterflyRaster {
public:
    ButterflyRaster(double e_min, double e_max, std::size_t width, std::vector<RasterRow> rows);

    double e_min() const { return e_min_; }
    double e_max() const { return e_max_; }
    std::size_t width() const { return width_; }
    std::size_t height() const { return rows_.size(); }
    const std::vector<RasterRow>& rows() const { return rows_; }
    double energy(std::size_t i) const;
    std::vector<double> energies() const;

    Pixel at(std::size_t i, std::size_t j) const { return pixels_[j * width_ + i]; }
    void set(std::size_t i, std::size_t j, Pixel p) { pixels_[j * width_ + i] = p; }
    // Row j as an in-spectrum mask (inconclusive counts as in).
    std::vector<bool> row_mask(std::size_t j) const;

private:
    double e_min_;
    double e_max_;
    std::size_t width_;
    std::vector<RasterRow> rows_;
    std::vector<Pixel> pixels_;
};

// Evenly spaced energies from e_min to e_max inclusive, exactly symmetric for
// a symmetric range.
std::vector<double> energy_grid(double e_min, double e_max, std::size_t count);

// Fraction p/q with q <= q_max nearest to j / (n - 1), in exact integer
// arithmetic. Ties go to the smaller denominator, then to the fraction
// nearer 1/2, which keeps the choice symmetric under j -> n - 1 - j.
Frequency nearest_farey(std::size_t j, std::size_t n, int q_max);

// All p/q in [0, 1] with q <= q_max, ascending.
std::vector<Frequency> farey_sequence(int q_max);

// Classifies every pixel: oracle method on rational rows, growth method on
// real ones. Rows sharing a frequency are computed once. The result does not
// depend on the thread count.
ButterflyRaster scan_butterfly(const ButterflyConfig& config);

// Binary 8-bit PGM: header "P5\n<W> <H>\n255\n", then rows from the largest
// alpha (top) down to the smallest, each from E_min to E_max.
std::vector<std::uint8_t> pgm_bytes(const ButterflyRaster& raster);
void render_pgm(const ButterflyRaster& raster, const std::string& path);

struct MeasureSliceOptions {
    double coupling = 2.0;
    double e_min = -4.5;
    double e_max = 4.5;
    std::size_t energies = 2001;
    std::size_t phase_grid = 1024;
    std::vector<std::uint64_t> n_max = {64, 256, 1024};
    unsigned threads = 1;
};

struct MeasureSliceResult {
    std::vector<std::uint64_t> n_max;
    std::vector<double> measure;   // cell width times number of in-spectrum energies
    double cell_width = 0.0;
    bool nonincreasing = false;
};

// Lebesgue measure of the in-spectrum part of one frequency row at several
// resolutions. An energy is in at resolution n when cone certification finds
// no witness <= n; the witness sets grow with n, so the sequence can only
// shrink as the resolution increases.
MeasureSliceResult measure_slice(Frequency alpha, const MeasureSliceOptions& options = {});

}  // namespace cocycle

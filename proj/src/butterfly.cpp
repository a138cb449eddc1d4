#include "cocycle/butterfly.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "cocycle/parallel.hpp"

namespace cocycle {

ButterflyRaster::ButterflyRaster(double e_min, double e_max, std::size_t width, std::vector<RasterRow> rows)
    : e_min_(e_min), e_max_(e_max), width_(width), rows_(std::move(rows)) {
    if (width == 0 || rows_.empty()) throw std::invalid_argument("raster: width and height must be positive");
    if (!(e_min < e_max)) throw std::invalid_argument("raster: need e_min < e_max");
    for (std::size_t j = 1; j < rows_.size(); ++j) {
        if (rows_[j].alpha.value < rows_[j - 1].alpha.value) {
            throw std::invalid_argument("raster: rows must be sorted by alpha");
        }
    }
    pixels_.assign(width_ * rows_.size(), Pixel::Inconclusive);
}

double ButterflyRaster::energy(std::size_t i) const {
    if (width_ == 1) return 0.5 * (e_min_ + e_max_);
    const auto w = static_cast<double>(width_ - 1);
    return (static_cast<double>(width_ - 1 - i) * e_min_ + static_cast<double>(i) * e_max_) / w;
}

std::vector<double> ButterflyRaster::energies() const { return energy_grid(e_min_, e_max_, width_); }

std::vector<bool> ButterflyRaster::row_mask(std::size_t j) const {
    std::vector<bool> mask(width_);
    for (std::size_t i = 0; i < width_; ++i) mask[i] = at(i, j) != Pixel::Out;
    return mask;
}

std::vector<double> energy_grid(double e_min, double e_max, std::size_t count) {
    if (count == 0) throw std::invalid_argument("energy grid: count must be positive");
    std::vector<double> e(count);
    if (count == 1) {
        e[0] = 0.5 * (e_min + e_max);
        return e;
    }
    const auto w = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        e[i] = (static_cast<double>(count - 1 - i) * e_min + static_cast<double>(i) * e_max) / w;
    }
    return e;
}

Frequency nearest_farey(std::size_t j, std::size_t n, int q_max) {
    if (q_max < 1) throw std::invalid_argument("farey: q_max must be >= 1");
    if (n < 2) return Frequency::rational(0, 1);
    const auto den = static_cast<std::int64_t>(n - 1);
    const auto num = static_cast<std::int64_t>(j);
    // Distance |num/den - p/q| = |num q - p den| / (den q).
    std::int64_t best_p = 0, best_q = 1, best_gap = num;  // gap numerator over den * best_q
    auto better = [&](std::int64_t p, std::int64_t q) {
        const std::int64_t gap = std::abs(num * q - p * den);
        const std::int64_t lhs = gap * best_q, rhs = best_gap * q;
        if (lhs != rhs) return lhs < rhs;
        if (q != best_q) return q < best_q;
        // Nearer to 1/2: compare |2p - q| / q.
        return std::abs(2 * p - q) * best_q < std::abs(2 * best_p - best_q) * q;
    };
    for (std::int64_t q = 1; q <= q_max; ++q) {
        const std::int64_t lo = (num * q) / den;
        for (std::int64_t p : {lo, lo + 1}) {
            if (p < 0 || p > q) continue;
            const std::int64_t g = std::gcd(p, q);
            const std::int64_t rp = p / g, rq = q / g;
            if (better(rp, rq)) {
                best_p = rp;
                best_q = rq;
                best_gap = std::abs(num * rq - rp * den);
            }
        }
    }
    return Frequency::rational(static_cast<int>(best_p), static_cast<int>(best_q));
}

std::vector<Frequency> farey_sequence(int q_max) {
    if (q_max < 1) throw std::invalid_argument("farey: q_max must be >= 1");
    std::vector<Frequency> out;
    for (int q = 1; q <= q_max; ++q) {
        for (int p = 0; p <= q; ++p) {
            if (std::gcd(p, q) == 1) out.push_back(Frequency::rational(p, q));
        }
    }
    std::sort(out.begin(), out.end(), [](const Frequency& a, const Frequency& b) {
        return static_cast<long long>(a.p) * b.q < static_cast<long long>(b.p) * a.q;
    });
    return out;
}

namespace {

std::vector<RasterRow> build_rows(const ButterflyConfig& config) {
    std::vector<RasterRow> rows;
    auto method_for = [](const Frequency& f) { return f.is_rational() ? SliceMethod::Oracle : SliceMethod::Growth; };
    if (!config.rows.empty()) {
        for (const Frequency& f : config.rows) rows.push_back({f, method_for(f)});
        std::stable_sort(rows.begin(), rows.end(),
                         [](const RasterRow& a, const RasterRow& b) { return a.alpha.value < b.alpha.value; });
        return rows;
    }
    if (config.height == 0) throw std::invalid_argument("butterfly: height must be positive");
    for (std::size_t j = 0; j < config.height; ++j) {
        if (config.irrational_rows) {
            const double a = config.height == 1
                                 ? 0.0
                                 : static_cast<double>(j) / static_cast<double>(config.height - 1);
            rows.push_back({Frequency::real(a), SliceMethod::Growth});
        } else {
            rows.push_back({nearest_farey(j, config.height, config.q_max), SliceMethod::Oracle});
        }
    }
    return rows;
}

Pixel to_pixel(UHVerdict v) {
    switch (v) {
        case UHVerdict::CertifiedHyperbolic:
        case UHVerdict::CertifiedByGrowth: return Pixel::Out;
        case UHVerdict::NotHyperbolicEvidence: return Pixel::In;
        case UHVerdict::Inconclusive: return Pixel::Inconclusive;
    }
    return Pixel::Inconclusive;
}

}  // namespace

ButterflyRaster scan_butterfly(const ButterflyConfig& config) {
    ButterflyRaster raster(config.e_min, config.e_max, config.width, build_rows(config));
    const std::vector<double> energies = raster.energies();

    // Distinct (frequency, method) pairs, in row order.
    std::vector<std::size_t> unique_of_row(raster.height());
    std::vector<std::size_t> first_row;
    std::map<std::pair<std::pair<long long, long long>, double>, std::size_t> seen;
    for (std::size_t j = 0; j < raster.height(); ++j) {
        const Frequency& f = raster.rows()[j].alpha;
        const auto key = f.is_rational() ? std::make_pair(std::make_pair<long long, long long>(f.p, f.q), 0.0)
                                         : std::make_pair(std::make_pair<long long, long long>(0, 0), f.value);
        auto [it, inserted] = seen.emplace(key, first_row.size());
        if (inserted) first_row.push_back(j);
        unique_of_row[j] = it->second;
    }

    SliceOptions options;
    options.coupling = config.coupling;
    options.grid = config.phase_grid;
    options.n_max = config.n_max;
    options.theta = config.theta;
    options.threads = 1;
    std::vector<std::vector<UHVerdict>> results(first_row.size());
    parallel_for(first_row.size(), config.threads, [&](std::size_t u) {
        const RasterRow& row = raster.rows()[first_row[u]];
        results[u] = slice_verdicts(row.alpha, energies, row.method, options);
    });
    for (std::size_t j = 0; j < raster.height(); ++j) {
        const auto& r = results[unique_of_row[j]];
        for (std::size_t i = 0; i < raster.width(); ++i) raster.set(i, j, to_pixel(r[i]));
    }
    return raster;
}

std::vector<std::uint8_t> pgm_bytes(const ButterflyRaster& raster) {
    const std::string header =
        "P5\n" + std::to_string(raster.width()) + " " + std::to_string(raster.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + raster.width() * raster.height());
    for (std::size_t j = raster.height(); j-- > 0;) {
        for (std::size_t i = 0; i < raster.width(); ++i) out.push_back(static_cast<std::uint8_t>(raster.at(i, j)));
    }
    return out;
}

void render_pgm(const ButterflyRaster& raster, const std::string& path) {
    const std::vector<std::uint8_t> bytes = pgm_bytes(raster);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

MeasureSliceResult measure_slice(Frequency alpha, const MeasureSliceOptions& options) {
    if (options.n_max.empty()) throw std::invalid_argument("measure_slice: need at least one n_max");
    if (options.energies < 2) throw std::invalid_argument("measure_slice: need at least two energies");
    const std::uint64_t largest = *std::max_element(options.n_max.begin(), options.n_max.end());
    const std::vector<double> energies = energy_grid(options.e_min, options.e_max, options.energies);
    const RotationConeCertifier certifier(alpha, options.coupling, options.phase_grid, largest);

    // First witness per energy; 0 when none up to the largest n_max.
    std::vector<std::uint64_t> witness(energies.size(), 0);
    parallel_for(energies.size(), options.threads, [&](std::size_t i) {
        const UHCertificate c = certifier.certify(energies[i]);
        witness[i] = c.certified() ? c.witness_n : 0;
    });

    MeasureSliceResult result;
    result.n_max = options.n_max;
    result.cell_width = (options.e_max - options.e_min) / static_cast<double>(options.energies - 1);
    for (std::uint64_t n : options.n_max) {
        std::size_t in = 0;
        for (std::uint64_t w : witness) in += (w == 0 || w > n) ? 1 : 0;
        result.measure.push_back(static_cast<double>(in) * result.cell_width);
    }
    result.nonincreasing = true;
    for (std::size_t k = 1; k < result.measure.size(); ++k) {
        if (result.n_max[k] >= result.n_max[k - 1] && result.measure[k] > result.measure[k - 1]) {
            result.nonincreasing = false;
        }
    }
    return result;
}

}  // namespace cocycle

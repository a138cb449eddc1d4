#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cocycle/cocycle.hpp"

namespace cocycle {

// An arc of directions on the projective line (angles mod pi), running
// counterclockwise from `start` for `length` radians, 0 < length < pi.
struct Arc {
    double start;
    double length;

    double center() const;
    double half_width() const { return 0.5 * length; }
};

// Unstable and stable cones at each point of a uniform grid on the base
// circle (one cell for constant and symbolic bases). Between grid points the
// cones are interpolated linearly in center and width.
struct ConeField {
    std::vector<Arc> unstable;
    std::vector<Arc> stable;

    std::size_t cells() const { return unstable.size(); }
    Arc unstable_at(double x) const;
    Arc stable_at(double x) const;
};

enum class UHVerdict { CertifiedHyperbolic, CertifiedByGrowth, NotHyperbolicEvidence, Inconclusive };

std::string to_string(UHVerdict v);

struct UHCertificate {
    UHVerdict verdict = UHVerdict::Inconclusive;
    std::uint64_t witness_n = 0;    // n of the doubling condition, 0 if none found
    double growth_constant = 0.0;   // growth statistic backing the verdict
    std::size_t grid_resolution = 0;
    double angular_margin = 0.0;    // smallest strict-inclusion margin of the cone checks
    double min_stretch = 0.0;       // smallest stretch factor over cones (>= 2 when certified)
    double lipschitz_bound = 0.0;   // Lipschitz constant in x of the n-step product
    bool covered = false;           // margins absorb the between-grid-point error
    std::optional<ConeField> cones;

    bool certified() const {
        return verdict == UHVerdict::CertifiedHyperbolic || verdict == UHVerdict::CertifiedByGrowth;
    }
};

// Exact rational or real frequency of a circle rotation.
struct Frequency {
    double value = 0.0;
    int p = 0;
    int q = 0;  // q == 0 marks an irrational (real-valued) frequency

    static Frequency rational(int p, int q);  // q > 0, gcd(p, q) == 1
    static Frequency real(double alpha);
    bool is_rational() const { return q > 0; }
    std::string label() const;
};

struct ConeOptions {
    std::size_t grid = 64;          // phase cells for rotation bases
    std::uint64_t n_max = 1024;     // largest witness n (rotation bases try 1, 2, 4, ...)
    double growth_floor = 0.0125;   // below this growth rate failure counts as evidence
    std::size_t max_words = 4096;   // symbolic bases: cap on k^n
};

// Tries to build an invariant cone field with witness n <= n_max (doubling
// of unstable vectors forward and stable vectors backward, strict cone
// inclusion). Works for Schrodinger cocycles over the rotation (on a phase
// grid), constant cocycles and symbol-driven products (one cone pair shared
// by all words of length n). Certified fields whose inclusion margins do not
// cover the between-grid-point Lipschitz error come back as
// CertifiedByGrowth. Throws std::invalid_argument for the toral base.
UHCertificate cone_certify(const CocycleSpec& spec, const ConeOptions& options = {});

// Growth test for the Schrodinger cocycle: g(n) = min over the phase grid of
// (1/n) log |A^(n)(x)|. Certified by growth when g(n_max) >= theta, evidence
// of non-hyperbolicity when g(n_max) and g(n_max / 2) both stay below
// theta / 4, inconclusive otherwise. Rational frequencies use exact phases.
UHCertificate uniform_growth_test(double energy, Frequency alpha, double coupling,
                                  std::size_t grid, std::uint64_t n_max, double theta);
UHCertificate uniform_growth_test(const CocycleSpec& schrodinger, std::size_t grid,
                                  std::uint64_t n_max, double theta);

// True when min over the phases k / phase_grid of |tr A^(q)_E(x)| <= 2 for
// alpha = p / q. phase_grid == 0 means 8q; smaller values are raised to 8q.
bool band_oracle(int p, int q, double energy, std::size_t phase_grid = 0, double coupling = 2.0);

enum class SliceMethod { Growth, Oracle };

struct SliceOptions {
    double coupling = 2.0;
    std::size_t grid = 0;         // phase grid; 0 picks 8q for rationals and 64 otherwise
    std::uint64_t n_max = 1024;
    double theta = 0.05;
    unsigned threads = 1;
};

// In-spectrum mask over the energy grid. The oracle method needs a rational
// frequency. For the growth method certified -> out, everything else -> in.
std::vector<bool> slice_spectrum(Frequency alpha, const std::vector<double>& energies,
                                 SliceMethod method, const SliceOptions& options = {});

// Per-energy verdicts behind slice_spectrum: the growth method yields all
// four verdicts, the oracle method CertifiedByGrowth (out) or
// NotHyperbolicEvidence (in).
std::vector<UHVerdict> slice_verdicts(Frequency alpha, const std::vector<double>& energies,
                                      SliceMethod method, const SliceOptions& options = {});

// cos(2 pi x) along rotation orbits started on the grid x_j = j / grid, for
// step offsets k in [k_min, k_max). Rational frequencies are evaluated on the
// exact residues (j q + k p grid) mod (grid q); real ones tabulate directly.
class PhaseTable {
public:
    PhaseTable(Frequency alpha, std::size_t grid, std::int64_t k_min, std::int64_t k_max);

    std::size_t grid() const { return grid_; }
    Frequency frequency() const { return alpha_; }
    double cos_at(std::size_t j, std::int64_t k) const;

private:
    Frequency alpha_;
    std::size_t grid_;
    std::int64_t k_min_;
    std::int64_t k_max_;
    std::vector<double> values_;
};

// Cone certification of the Schrodinger cocycle over one phase grid, reused
// across many energies (the phase table depends only on alpha and the grid).
class RotationConeCertifier {
public:
    RotationConeCertifier(Frequency alpha, double coupling, std::size_t grid, std::uint64_t n_max);

    UHCertificate certify(double energy, double growth_floor = 0.0125) const;

private:
    Frequency alpha_;
    double coupling_;
    std::size_t grid_;
    std::uint64_t n_max_;
    PhaseTable phases_;
};

}  // namespace cocycle

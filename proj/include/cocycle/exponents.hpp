#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cocycle/cocycle.hpp"
#include "cocycle/dynamics.hpp"

namespace cocycle {

// Lyapunov exponent estimates. exponents are distinct and descending, each
// with its multiplicity; standard_errors come from 100 batch means (zero for
// deterministic constant cocycles); trace holds the running top-exponent
// estimate sampled every steps/100 steps.
struct ExponentReport {
    std::vector<double> exponents;
    std::vector<int> multiplicities;
    std::uint64_t steps = 0;
    std::vector<double> standard_errors;
    std::vector<double> trace;

    double top() const { return exponents.front(); }
    double top_stderr() const { return standard_errors.front(); }
    // sum_i d_i chi_i
    double weighted_sum() const;
};

inline constexpr std::uint64_t kMinEstimatorSteps = 1000;
inline constexpr int kBatches = 100;

// (1/n) log |A^(n)| along the driver's orbit. Throws std::invalid_argument for
// n < 1000 and NumericalError on overflow.
ExponentReport top_exponent(const CocycleSpec& spec, OrbitDriver& driver, std::uint64_t n,
                            NormKind norm = NormKind::Spectral);

// Full spectrum by QR re-orthonormalization: Q_k R_k = A_k Q_{k-1},
// chi_i = (1/n) sum_k log (R_k)_ii. Exponents closer than 5/sqrt(n) are merged
// into one entry with a multiplicity. Throws NumericalError on rank collapse.
ExponentReport spectrum_qr(const CocycleSpec& spec, OrbitDriver& driver, std::uint64_t n);

// Merges sorted-descending raw exponents closer than tol. Exposed for tests.
ExponentReport merge_exponents(std::vector<double> raw, std::vector<double> raw_stderr,
                               double tol);

// (1/q) log rho(A(x_{q-1}) ... A(x_0)) for the toral derivative cocycle around
// a periodic cycle of the perturbed map. Throws std::invalid_argument unless
// each listed point maps to the next (cyclically) within 1e-9.
double periodic_orbit_exponent(double epsilon, std::span<const TorusPoint> cycle);

struct FurstenbergVerdict {
    // Hypothesis (a): the generated group is not compact.
    bool noncompact = false;
    double norm_growth = 0.0;  // max log-norm over prefixes of a random word
    // Hypothesis (b): no finite set of one or two lines is preserved.
    bool no_invariant_lines = false;
    double invariant_line_residual = 0.0;  // best candidate set's worst angular defect
    std::vector<double> best_line_set;     // angles in [0, pi) of that candidate
    std::size_t candidate_lines = 0;
    // Top exponent of the random product.
    ExponentReport chi_plus;
    double chi_plus_half_width = 0.0;  // 1.96 * stderr
    bool converged = false;            // half-width <= requested tolerance

    bool hypotheses_hold() const { return noncompact && no_invariant_lines; }
};

inline constexpr double kCompactnessThreshold = 2.302585092994046;  // log 10
inline constexpr double kLineInvarianceTolerance = 1e-8;

// Numerical evidence for the two hypotheses of Furstenberg's theorem plus an
// estimate of the exponent. Candidate invariant lines are the real
// eigendirections of every word of length <= depth; sets of one or two of
// them are tested against every generator. Matrices must have |det| = 1.
FurstenbergVerdict furstenberg_check(std::span<const Mat2> matrices,
                                     const std::vector<double>& probabilities, std::uint64_t n,
                                     int depth, std::uint64_t seed, double tolerance = 0.01);

// Angular distance between two lines through the origin, in [0, pi/2].
double line_distance(double theta1, double theta2);

}  // namespace cocycle

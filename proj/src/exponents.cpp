#include "cocycle/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cocycle/errors.hpp"

namespace cocycle {

namespace {

// Splits n steps into kBatches consecutive batches and turns per-step
// increments into a batch-means standard error of their average.
class BatchMeans {
public:
    explicit BatchMeans(std::uint64_t n) : n_(n), sums_(kBatches, 0.0), counts_(kBatches, 0) {}

    void add(std::uint64_t step, double value) {
        const auto k = static_cast<std::size_t>((step * kBatches) / n_);
        sums_[k] += value;
        ++counts_[k];
    }

    double standard_error() const {
        std::vector<double> means(kBatches);
        for (int k = 0; k < kBatches; ++k) means[k] = sums_[k] / static_cast<double>(counts_[k]);
        const double mean = std::accumulate(means.begin(), means.end(), 0.0) / kBatches;
        double ss = 0.0;
        for (double m : means) ss += (m - mean) * (m - mean);
        return std::sqrt(ss / (kBatches - 1)) / std::sqrt(static_cast<double>(kBatches));
    }

private:
    std::uint64_t n_;
    std::vector<double> sums_;
    std::vector<std::uint64_t> counts_;
};

bool deterministic(const CocycleSpec& spec) {
    if (spec.kind() == CocycleKind::Constant) return true;
    if (const auto* t = std::get_if<ToralDerivativeCocycle>(&spec.variant())) {
        return t->epsilon == 0.0;
    }
    return false;
}

void check_steps(std::uint64_t n) {
    if (n < kMinEstimatorSteps) {
        throw std::invalid_argument("estimators need at least " +
                                    std::to_string(kMinEstimatorSteps) + " steps");
    }
}

double direction_of(double x, double y) {
    double t = std::atan2(y, x);
    if (t < 0.0) t += std::numbers::pi;
    if (t >= std::numbers::pi) t -= std::numbers::pi;
    return t;
}

double image_angle(const Mat2& m, double theta) {
    const double x = std::cos(theta), y = std::sin(theta);
    return direction_of(m.a * x + m.b * y, m.c * x + m.d * y);
}

// Real eigendirections of a 2x2 matrix; none for complex pairs or scalars.
void eigendirections(const Mat2& m, std::vector<double>& out) {
    const double scale = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
    if (std::abs(m.b) <= 1e-12 * scale && std::abs(m.c) <= 1e-12 * scale &&
        std::abs(m.a - m.d) <= 1e-12 * scale) {
        return;  // scalar: every line is invariant, nothing to learn
    }
    const double half_tr = 0.5 * m.trace();
    const double disc = half_tr * half_tr - m.det();
    if (disc < -1e-14 * scale * scale) return;
    const double root = std::sqrt(std::max(disc, 0.0));
    for (double lambda : {half_tr + root, half_tr - root}) {
        // Pick the better conditioned of the two kernel rows of (m - lambda).
        const double x1 = m.b, y1 = lambda - m.a;
        const double x2 = lambda - m.d, y2 = m.c;
        if (std::hypot(x1, y1) >= std::hypot(x2, y2)) {
            out.push_back(direction_of(x1, y1));
        } else {
            out.push_back(direction_of(x2, y2));
        }
        if (root == 0.0) break;
    }
}

}  // namespace

double ExponentReport::weighted_sum() const {
    double s = 0.0;
    for (std::size_t i = 0; i < exponents.size(); ++i) s += multiplicities[i] * exponents[i];
    return s;
}

ExponentReport top_exponent(const CocycleSpec& spec, OrbitDriver& driver, std::uint64_t n,
                            NormKind norm) {
    check_steps(n);
    ProductState state(spec.dimension(), norm);
    MatD g(spec.dimension());
    BatchMeans batches(n);
    ExponentReport report;
    report.steps = n;
    const std::uint64_t stride = n / kBatches;
    for (std::uint64_t i = 0; i < n; ++i) {
        generator_into(spec, driver.next(), g);
        batches.add(i, state.advance(g));
        if ((i + 1) % stride == 0) {
            report.trace.push_back(state.log_norm() / static_cast<double>(i + 1));
        }
    }
    report.exponents = {state.log_norm() / static_cast<double>(n)};
    report.multiplicities = {static_cast<int>(spec.dimension())};
    report.standard_errors = {deterministic(spec) ? 0.0 : batches.standard_error()};
    return report;
}

ExponentReport merge_exponents(std::vector<double> raw, std::vector<double> raw_stderr,
                               double tol) {
    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return raw[i] > raw[j]; });
    ExponentReport report;
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start + 1;
        while (end < order.size() && raw[order[end - 1]] - raw[order[end]] <= tol) ++end;
        double sum = 0.0, se = 0.0;
        for (std::size_t k = start; k < end; ++k) {
            sum += raw[order[k]];
            se = std::max(se, raw_stderr[order[k]]);
        }
        report.exponents.push_back(sum / static_cast<double>(end - start));
        report.multiplicities.push_back(static_cast<int>(end - start));
        report.standard_errors.push_back(se);
        start = end;
    }
    return report;
}

ExponentReport spectrum_qr(const CocycleSpec& spec, OrbitDriver& driver, std::uint64_t n) {
    check_steps(n);
    const std::size_t d = spec.dimension();
    MatD g(d), m(d);
    MatD q = MatD::identity(d);
    std::vector<double> sums(d, 0.0);
    std::vector<BatchMeans> batches(d, BatchMeans(n));
    ExponentReport trace_holder;
    const std::uint64_t stride = n / kBatches;
    for (std::uint64_t i = 0; i < n; ++i) {
        generator_into(spec, driver.next(), g);
        mat_mul_into(m, g, q);
        if (d == 2) {
            // Closed-form Gram-Schmidt; log R_22 = log|det| - log R_11 exactly.
            const double r11 = std::hypot(m(0, 0), m(1, 0));
            if (r11 == 0.0 || !std::isfinite(r11)) {
                throw NumericalError("spectrum_qr: rank collapse at step " + std::to_string(i + 1));
            }
            const double q00 = m(0, 0) / r11, q10 = m(1, 0) / r11;
            const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
            if (det == 0.0) {
                throw NumericalError("spectrum_qr: rank collapse at step " + std::to_string(i + 1));
            }
            const double s = det > 0.0 ? 1.0 : -1.0;
            q(0, 0) = q00;
            q(1, 0) = q10;
            q(0, 1) = -s * q10;
            q(1, 1) = s * q00;
            const double l1 = std::log(r11);
            const double l2 = std::log(std::abs(det)) - l1;
            sums[0] += l1;
            sums[1] += l2;
            batches[0].add(i, l1);
            batches[1].add(i, l2);
        } else {
            QRFactors f = qr_positive(m);
            for (std::size_t k = 0; k < d; ++k) {
                const double rkk = f.r(k, k);
                if (!(rkk > 0.0) || !std::isfinite(rkk)) {
                    throw NumericalError("spectrum_qr: rank collapse at step " +
                                         std::to_string(i + 1));
                }
                const double l = std::log(rkk);
                sums[k] += l;
                batches[k].add(i, l);
            }
            q = std::move(f.q);
        }
        if ((i + 1) % stride == 0) {
            trace_holder.trace.push_back(*std::max_element(sums.begin(), sums.end()) /
                                         static_cast<double>(i + 1));
        }
    }
    std::vector<double> raw(d), raw_se(d);
    const bool det_spec = deterministic(spec);
    for (std::size_t k = 0; k < d; ++k) {
        raw[k] = sums[k] / static_cast<double>(n);
        raw_se[k] = det_spec ? 0.0 : batches[k].standard_error();
    }
    ExponentReport report = merge_exponents(std::move(raw), std::move(raw_se),
                                            5.0 / std::sqrt(static_cast<double>(n)));
    report.steps = n;
    report.trace = std::move(trace_holder.trace);
    return report;
}

double periodic_orbit_exponent(double epsilon, std::span<const TorusPoint> cycle) {
    if (cycle.empty()) throw std::invalid_argument("periodic_orbit_exponent: empty cycle");
    const ToralDriver map = ToralDriver::perturbed(epsilon, {0.0, 0.0});
    Mat2 product = Mat2::identity();
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const TorusPoint image = map.apply(cycle[i]);
        const TorusPoint& want = cycle[(i + 1) % cycle.size()];
        if (circle_distance(image.x, want.x) > 1e-9 || circle_distance(image.y, want.y) > 1e-9) {
            throw std::invalid_argument("periodic_orbit_exponent: cycle is not invariant");
        }
        product = toral_derivative_matrix(epsilon, cycle[i]) * product;
    }
    return std::log(spectral_radius(product)) / static_cast<double>(cycle.size());
}

double line_distance(double theta1, double theta2) {
    double d = std::fmod(std::abs(theta1 - theta2), std::numbers::pi);
    return std::min(d, std::numbers::pi - d);
}

FurstenbergVerdict furstenberg_check(std::span<const Mat2> matrices,
                                     const std::vector<double>& probabilities, std::uint64_t n,
                                     int depth, std::uint64_t seed, double tolerance) {
    if (matrices.empty()) throw std::invalid_argument("furstenberg_check: no matrices");
    if (probabilities.size() != matrices.size()) {
        throw std::invalid_argument("furstenberg_check: one probability per matrix required");
    }
    if (depth < 1) throw std::invalid_argument("furstenberg_check: depth must be >= 1");
    for (const Mat2& m : matrices) {
        if (std::abs(std::abs(m.det()) - 1.0) > 1e-10) {
            throw std::invalid_argument("furstenberg_check: matrices must have |det| = 1");
        }
    }
    FurstenbergVerdict verdict;

    std::vector<MatD> as_matd(matrices.begin(), matrices.end());
    const CocycleSpec spec = matrices.size() == 1 ? CocycleSpec::constant(as_matd.front())
                                                  : CocycleSpec::random_product(as_matd);
    auto make_driver = [&](std::uint64_t s) -> OrbitDriver {
        if (matrices.size() == 1) return RotationDriver(0.0);
        return BernoulliDriver(probabilities, s);
    };

    // (c) exponent
    OrbitDriver chi_driver = make_driver(seed);
    verdict.chi_plus = top_exponent(spec, chi_driver, n);
    verdict.chi_plus_half_width = 1.96 * verdict.chi_plus.top_stderr();
    verdict.converged = verdict.chi_plus_half_width <= tolerance;

    // (a) norm growth along an independent random word
    {
        OrbitDriver walk = make_driver(derive_seed(seed, 1));
        ProductState state(2);
        MatD g(2);
        double best = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) {
            generator_into(spec, walk.next(), g);
            state.advance(g);
            best = std::max(best, state.log_norm());
        }
        verdict.norm_growth = best;
        verdict.noncompact = best > kCompactnessThreshold;
    }

    // (b) invariant line sets among eigendirections of short words
    std::vector<double> candidates;
    std::vector<Mat2> level(matrices.begin(), matrices.end());
    for (int len = 1; len <= depth; ++len) {
        for (const Mat2& w : level) eigendirections(w, candidates);
        if (len == depth) break;
        std::vector<Mat2> next;
        next.reserve(level.size() * matrices.size());
        for (const Mat2& w : level)
            for (const Mat2& m : matrices) next.push_back(m * w);
        level = std::move(next);
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<double> lines;
    for (double t : candidates) {
        if (lines.empty() || line_distance(lines.back(), t) > 1e-10) lines.push_back(t);
    }
    if (lines.size() > 1 && line_distance(lines.front(), lines.back()) <= 1e-10) lines.pop_back();
    verdict.candidate_lines = lines.size();

    // images[g][i]: image angle of line i under generator g
    std::vector<std::vector<double>> images(matrices.size(), std::vector<double>(lines.size()));
    for (std::size_t g = 0; g < matrices.size(); ++g)
        for (std::size_t i = 0; i < lines.size(); ++i) images[g][i] = image_angle(matrices[g], lines[i]);

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        double worst = 0.0;
        for (std::size_t g = 0; g < matrices.size(); ++g)
            worst = std::max(worst, line_distance(images[g][i], lines[i]));
        if (worst < best) {
            best = worst;
            verdict.best_line_set = {lines[i]};
        }
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            double w2 = 0.0;
            for (std::size_t g = 0; g < matrices.size() && w2 < best; ++g) {
                for (std::size_t k : {i, j}) {
                    const double img = images[g][k];
                    w2 = std::max(w2, std::min(line_distance(img, lines[i]),
                                               line_distance(img, lines[j])));
                }
            }
            if (w2 < best) {
                best = w2;
                verdict.best_line_set = {lines[i], lines[j]};
            }
        }
    }
    verdict.invariant_line_residual = best;
    verdict.no_invariant_lines = !(best <= kLineInvarianceTolerance);
    return verdict;
}

}  // namespace cocycle

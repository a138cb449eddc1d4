#include "cocycle/hyperbolicity.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "cocycle/exponents.hpp"
#include "cocycle/parallel.hpp"

namespace cocycle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLog2 = std::numbers::ln2;
// Cone widths tried, as fractions of the gap between unstable and stable directions.
constexpr std::array<double, 4> kWidthFractions{0.4, 0.25, 0.1, 0.03};
// Strict inclusion must hold with at least this much room (radians).
constexpr double kMinMargin = 1e-12;

double wrap(double t) {
    t = std::fmod(t, kPi);
    if (t < 0.0) t += kPi;
    if (t >= kPi) t -= kPi;
    return t;
}

// Counterclockwise distance from a to b on the projective circle.
double ccw(double a, double b) { return wrap(b - a); }

// b - a reduced to (-pi/2, pi/2].
double signed_diff(double a, double b) {
    double d = wrap(b - a);
    if (d > 0.5 * kPi) d -= kPi;
    return d;
}

double direction(double x, double y) { return wrap(std::atan2(y, x)); }

double map_direction(const Mat2& m, double t) {
    const double x = std::cos(t), y = std::sin(t);
    return direction(m.a * x + m.b * y, m.c * x + m.d * y);
}

Arc arc_around(double center, double half_width) {
    return {wrap(center - half_width), 2.0 * half_width};
}

Arc image_arc(const Mat2& m, const Arc& arc) {
    const double s = map_direction(m, arc.start);
    const double e = map_direction(m, arc.start + arc.length);
    if (m.det() > 0.0) return {s, ccw(s, e)};
    return {e, ccw(e, s)};
}

// Room left on both sides when `inner` sits inside `outer`; negative otherwise.
double inclusion_margin(const Arc& inner, const Arc& outer) {
    const double offset = ccw(outer.start, inner.start);
    const double room = outer.length - offset - inner.length;
    if (room < 0.0) return -1.0;
    return std::min(offset, room);
}

bool arc_contains(const Arc& arc, double t) { return ccw(arc.start, t) <= arc.length; }

// min over unit v in the arc of |m v|.
double min_stretch(const Mat2& m, const Arc& arc) {
    auto at = [&](double t) {
        const double x = std::cos(t), y = std::sin(t);
        return std::hypot(m.a * x + m.b * y, m.c * x + m.d * y);
    };
    double best = std::min(at(arc.start), at(arc.start + arc.length));
    const SingularFrame2 f = singular_frame(m);
    if (arc_contains(arc, f.right_bottom)) best = std::min(best, f.sigma_min);
    return best;
}

Mat2 adjugate(const Mat2& m) { return {m.d, -m.b, -m.c, m.a}; }

// A matrix carried as m * exp(log_scale), rescaled by exact powers of two.
struct ScaledMat {
    Mat2 m = Mat2::identity();
    double log_scale = 0.0;

    void left_multiply(const Mat2& g) {
        m = g * m;
        const double big = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
        if (big > 0x1.0p200) {
            m = m.scaled(0x1.0p-200);
            log_scale += 200.0 * kLog2;
        }
    }
    double log_norm() const { return log_scale + std::log(operator_norm(m)); }
};

Arc arc_hull(std::vector<double> angles) {
    std::sort(angles.begin(), angles.end());
    if (angles.size() == 1) return {angles.front(), 0.0};
    double best_gap = -1.0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double next = i + 1 < angles.size() ? angles[i + 1] : angles.front() + kPi;
        const double gap = next - angles[i];
        if (gap > best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    const double start = best + 1 < angles.size() ? angles[best + 1] : angles.front();
    return {start, kPi - best_gap};
}

double arc_gap(const Arc& a, const Arc& b) {
    const double d1 = ccw(a.start + a.length, b.start);
    const double d2 = ccw(b.start + b.length, a.start);
    if (d1 + d2 + a.length + b.length > kPi + 1e-12) return -1.0;  // overlapping
    return std::min(d1, d2);
}

Arc interpolate(const std::vector<Arc>& arcs, double x) {
    const std::size_t m = arcs.size();
    if (m == 1) return arcs.front();
    const double pos = frac(x) * static_cast<double>(m);
    auto k = static_cast<std::size_t>(pos);
    if (k >= m) k = m - 1;
    const double t = pos - static_cast<double>(k);
    const Arc& a = arcs[k];
    const Arc& b = arcs[(k + 1) % m];
    const double center = a.center() + t * signed_diff(a.center(), b.center());
    const double half = (1.0 - t) * a.half_width() + t * b.half_width();
    return arc_around(center, half);
}

struct CheckResult {
    bool ok = false;
    double margin = std::numeric_limits<double>::infinity();
    double log_stretch = std::numeric_limits<double>::infinity();
};

// Folds one cone transition (source cone, matrix, target cone) into acc.
void check_transition(const ScaledMat& map, const Arc& source, const Arc& target, CheckResult& acc) {
    const Arc img = image_arc(map.m, source);
    acc.margin = std::min(acc.margin, inclusion_margin(img, target));
    const double s = min_stretch(map.m, source);
    acc.log_stretch = std::min(acc.log_stretch, s > 0.0 ? map.log_scale + std::log(s)
                                                        : -std::numeric_limits<double>::infinity());
}

bool passes(const CheckResult& r) { return r.margin > kMinMargin && r.log_stretch >= kLog2; }

ScaledMat inverse_of_unimodular(const ScaledMat& s) {
    // For |det| = 1, the inverse is adj / det and |adj v| = |inverse v|.
    ScaledMat inv;
    inv.m = adjugate(s.m);
    if (s.m.det() < 0.0) inv.m = inv.m.scaled(-1.0);
    inv.log_scale = s.log_scale;
    return inv;
}

UHCertificate growth_only_verdict(double growth, std::size_t grid, std::uint64_t n,
                                  double floor) {
    UHCertificate c;
    c.grid_resolution = grid;
    c.growth_constant = growth;
    c.witness_n = 0;
    c.verdict = growth < floor ? UHVerdict::NotHyperbolicEvidence : UHVerdict::Inconclusive;
    (void)n;
    return c;
}

UHCertificate certify_symbolic(const std::vector<Mat2>& generators, const ConeOptions& options) {
    const std::size_t k = generators.size();
    std::vector<ScaledMat> words(1);
    double last_growth = 0.0;
    for (std::uint64_t n = 1; n <= options.n_max; ++n) {
        if (words.size() * k > options.max_words) break;
        std::vector<ScaledMat> next;
        next.reserve(words.size() * k);
        for (const ScaledMat& w : words) {
            for (const Mat2& g : generators) {
                ScaledMat x = w;
                x.left_multiply(g);
                next.push_back(x);
            }
        }
        words = std::move(next);

        std::vector<double> unstable_dirs, stable_dirs;
        last_growth = std::numeric_limits<double>::infinity();
        for (const ScaledMat& w : words) {
            const SingularFrame2 f = singular_frame(w.m);
            unstable_dirs.push_back(f.left_top);
            stable_dirs.push_back(f.right_bottom);
            last_growth = std::min(last_growth, w.log_norm() / static_cast<double>(n));
        }
        const Arc hull_u = arc_hull(unstable_dirs);
        const Arc hull_s = arc_hull(stable_dirs);
        const double gap = arc_gap(hull_u, hull_s);
        if (!(gap > 1e-9)) continue;
        for (double rho : kWidthFractions) {
            const double pad = rho * gap;
            const Arc cu{wrap(hull_u.start - pad), hull_u.length + 2.0 * pad};
            const Arc cs{wrap(hull_s.start - pad), hull_s.length + 2.0 * pad};
            CheckResult r;
            for (const ScaledMat& w : words) {
                check_transition(w, cu, cu, r);
                check_transition(inverse_of_unimodular(w), cs, cs, r);
            }
            if (passes(r)) {
                UHCertificate c;
                c.verdict = UHVerdict::CertifiedHyperbolic;
                c.witness_n = n;
                c.growth_constant = r.log_stretch / static_cast<double>(n);
                c.grid_resolution = 1;
                c.angular_margin = r.margin;
                c.min_stretch = std::exp(std::min(r.log_stretch, 700.0));
                c.lipschitz_bound = 0.0;
                c.covered = true;
                c.cones = ConeField{{cu}, {cs}};
                return c;
            }
        }
    }
    return growth_only_verdict(last_growth, 1, 0, options.growth_floor);
}

double max_generator_norm(double energy, double coupling) {
    const double t = std::abs(energy) + std::abs(coupling);
    return 0.5 * (t + std::sqrt(t * t + 4.0));
}

int gcd_int(int a, int b) { return std::gcd(a, b); }

}  // namespace

double Arc::center() const { return wrap(start + 0.5 * length); }

Arc ConeField::unstable_at(double x) const { return interpolate(unstable, x); }
Arc ConeField::stable_at(double x) const { return interpolate(stable, x); }

std::string to_string(UHVerdict v) {
    switch (v) {
        case UHVerdict::CertifiedHyperbolic: return "certified-hyperbolic";
        case UHVerdict::CertifiedByGrowth: return "certified-by-growth";
        case UHVerdict::NotHyperbolicEvidence: return "not-hyperbolic-evidence";
        case UHVerdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

Frequency Frequency::rational(int p, int q) {
    if (q <= 0) throw std::invalid_argument("frequency: denominator must be positive");
    if (gcd_int(std::abs(p), q) != 1) throw std::invalid_argument("frequency: p and q must be coprime");
    Frequency f;
    f.p = p;
    f.q = q;
    f.value = static_cast<double>(p) / static_cast<double>(q);
    return f;
}

Frequency Frequency::real(double alpha) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("frequency: alpha must be finite");
    Frequency f;
    f.value = alpha;
    return f;
}

std::string Frequency::label() const {
    if (is_rational()) return std::to_string(p) + "/" + std::to_string(q);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

PhaseTable::PhaseTable(Frequency alpha, std::size_t grid, std::int64_t k_min, std::int64_t k_max)
    : alpha_(alpha), grid_(grid), k_min_(k_min), k_max_(k_max) {
    if (grid == 0) throw std::invalid_argument("phase table: grid must be positive");
    if (alpha.is_rational()) {
        const std::size_t mod = grid * static_cast<std::size_t>(alpha.q);
        values_.resize(mod);
        for (std::size_t r = 0; r < mod; ++r) {
            values_[r] = std::cos(2.0 * kPi * static_cast<double>(r) / static_cast<double>(mod));
        }
        return;
    }
    const auto width = static_cast<std::size_t>(k_max - k_min);
    values_.resize(grid * width);
    for (std::size_t j = 0; j < grid; ++j) {
        const RotationDriver rot(alpha.value, static_cast<double>(j) / static_cast<double>(grid));
        for (std::int64_t k = k_min; k < k_max; ++k) {
            // phase_at takes unsigned steps; negative offsets go through 1 - alpha.
            double x;
            if (k >= 0) {
                x = rot.phase_at(static_cast<std::uint64_t>(k));
            } else {
                const RotationDriver back(-alpha.value, static_cast<double>(j) / static_cast<double>(grid));
                x = back.phase_at(static_cast<std::uint64_t>(-k));
            }
            values_[j * width + static_cast<std::size_t>(k - k_min)] = std::cos(2.0 * kPi * x);
        }
    }
}

double PhaseTable::cos_at(std::size_t j, std::int64_t k) const {
    if (alpha_.is_rational()) {
        const auto mod = static_cast<std::int64_t>(grid_) * alpha_.q;
        std::int64_t r = (static_cast<std::int64_t>(j) * alpha_.q +
                          (k % alpha_.q) * alpha_.p * static_cast<std::int64_t>(grid_)) % mod;
        if (r < 0) r += mod;
        return values_[static_cast<std::size_t>(r)];
    }
    const auto width = static_cast<std::size_t>(k_max_ - k_min_);
    return values_[j * width + static_cast<std::size_t>(k - k_min_)];
}

RotationConeCertifier::RotationConeCertifier(Frequency alpha, double coupling, std::size_t grid,
                                             std::uint64_t n_max)
    : alpha_(alpha), coupling_(coupling), grid_(grid), n_max_(n_max),
      phases_(alpha, grid, -static_cast<std::int64_t>(n_max), static_cast<std::int64_t>(n_max)) {
    if (n_max == 0) throw std::invalid_argument("cone certification: n_max must be >= 1");
}

UHCertificate RotationConeCertifier::certify(double energy, double growth_floor) const {
    const std::size_t m = grid_;
    std::vector<ScaledMat> forward(m), arriving(m);
    std::vector<Arc> unstable(m), stable(m);
    std::vector<double> cu(m), cs(m), gap(m);
    double last_growth = 0.0;
    auto point = [&](std::size_t j) { return static_cast<double>(j) / static_cast<double>(m); };

    for (std::uint64_t n = 1; n <= n_max_; n *= 2) {
        const auto ni = static_cast<std::int64_t>(n);
        last_growth = std::numeric_limits<double>::infinity();
        double min_gap = kPi;
        for (std::size_t j = 0; j < m; ++j) {
            ScaledMat f, u;
            for (std::int64_t k = 0; k < ni; ++k) {
                f.left_multiply({energy - coupling_ * phases_.cos_at(j, k), -1.0, 1.0, 0.0});
            }
            for (std::int64_t k = -ni; k < 0; ++k) {
                u.left_multiply({energy - coupling_ * phases_.cos_at(j, k), -1.0, 1.0, 0.0});
            }
            forward[j] = f;
            arriving[j] = u;
            last_growth = std::min(last_growth, f.log_norm() / static_cast<double>(n));
            cu[j] = singular_frame(u.m).left_top;
            cs[j] = singular_frame(f.m).right_bottom;
            gap[j] = line_distance(cu[j], cs[j]);
            min_gap = std::min(min_gap, gap[j]);
        }
        if (!(min_gap > 1e-9)) continue;

        const double shift = static_cast<double>(n) * alpha_.value;
        for (double rho : kWidthFractions) {
            for (std::size_t j = 0; j < m; ++j) {
                unstable[j] = arc_around(cu[j], rho * gap[j]);
                stable[j] = arc_around(cs[j], rho * gap[j]);
            }
            CheckResult r;
            for (std::size_t j = 0; j < m && r.margin > kMinMargin; ++j) {
                const double x = point(j);
                check_transition(forward[j], unstable[j], interpolate(unstable, x + shift), r);
                check_transition(inverse_of_unimodular(arriving[j]), stable[j],
                                 interpolate(stable, x - shift), r);
            }
            if (!passes(r)) continue;

            UHCertificate c;
            c.witness_n = n;
            c.grid_resolution = m;
            c.angular_margin = r.margin;
            c.growth_constant = r.log_stretch / static_cast<double>(n);
            c.min_stretch = std::exp(std::min(r.log_stretch, 700.0));
            // Lipschitz constant of x -> A^(n)(x): n * |dA/dx| * max|A|^(n-1).
            const double log_lip = std::log(static_cast<double>(n) * 2.0 * kPi * std::abs(coupling_)) +
                                   static_cast<double>(n - 1) *
                                       std::log(max_generator_norm(energy, coupling_));
            c.lipschitz_bound = coupling_ == 0.0 ? 0.0 : std::exp(std::min(log_lip, 700.0));
            // Between grid points: the image direction moves by at most
            // Lip * h / stretch, and the interpolated source cone differs from
            // the grid one by the adjacent-cell variation, contracted at least
            // fourfold by a map that doubles the cone.
            double variation = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const std::size_t j2 = (j + 1) % m;
                variation = std::max(variation, line_distance(cu[j], cu[j2]) +
                                                    std::abs(unstable[j].half_width() - unstable[j2].half_width()));
                variation = std::max(variation, line_distance(cs[j], cs[j2]) +
                                                    std::abs(stable[j].half_width() - stable[j2].half_width()));
            }
            const double h = 0.5 / static_cast<double>(m);
            const double direction_error =
                coupling_ == 0.0 ? 0.0 : std::exp(std::min(log_lip + std::log(h) - r.log_stretch, 700.0));
            c.covered = direction_error < 0.5 && r.margin > direction_error + 0.25 * variation;
            c.verdict = c.covered ? UHVerdict::CertifiedHyperbolic : UHVerdict::CertifiedByGrowth;
            c.cones = ConeField{unstable, stable};
            return c;
        }
    }
    return growth_only_verdict(last_growth, m, n_max_, growth_floor);
}

UHCertificate cone_certify(const CocycleSpec& spec, const ConeOptions& options) {
    if (spec.dimension() != 2) {
        throw std::invalid_argument("cone_certify: only 2x2 cocycles are supported");
    }
    switch (spec.kind()) {
        case CocycleKind::Constant:
            return certify_symbolic({std::get<ConstantCocycle>(spec.variant()).matrix.to_mat2()}, options);
        case CocycleKind::RandomProduct: {
            std::vector<Mat2> gens;
            for (const MatD& m : std::get<RandomProductCocycle>(spec.variant()).matrices) {
                gens.push_back(m.to_mat2());
            }
            return certify_symbolic(gens, options);
        }
        case CocycleKind::Barycentric: {
            const auto& g = barycentric_generators();
            return certify_symbolic(std::vector<Mat2>(g.begin(), g.end()), options);
        }
        case CocycleKind::Schrodinger: {
            const auto& s = std::get<SchrodingerCocycle>(spec.variant());
            const RotationConeCertifier certifier(Frequency::real(s.alpha), s.coupling, options.grid,
                                                  options.n_max);
            return certifier.certify(s.energy, options.growth_floor);
        }
        case CocycleKind::ToralDerivative:
            break;
    }
    throw std::invalid_argument("cone_certify: base must be a rotation, constant or symbolic");
}

namespace {

struct GrowthStats {
    double at_n = 0.0;
    double at_half = 0.0;
};

// log |P_r Q^m| for the period product Q and prefix P_r, by binary powering.
double log_norm_periodic(const ScaledMat& prefix, const ScaledMat& period, std::uint64_t m) {
    ScaledMat result = prefix;
    ScaledMat base = period;
    while (m > 0) {
        if (m & 1u) {
            ScaledMat next = base;
            next.left_multiply(result.m);
            next.log_scale += result.log_scale;
            result = next;
        }
        m >>= 1u;
        if (m > 0) {
            ScaledMat sq = base;
            sq.left_multiply(base.m);
            sq.log_scale += base.log_scale;
            base = sq;
        }
    }
    return result.log_norm();
}

GrowthStats growth_statistics(const PhaseTable& phases, double energy, double coupling,
                              std::uint64_t n_max) {
    GrowthStats g{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    const std::uint64_t half = std::max<std::uint64_t>(n_max / 2, 1);
    const Frequency alpha = phases.frequency();
    if (alpha.is_rational() && static_cast<std::uint64_t>(alpha.q) < n_max) {
        // A^(n) = P_r Q^m with n = m q + r: the generator is q-periodic.
        const auto q = static_cast<std::uint64_t>(alpha.q);
        std::vector<ScaledMat> prefix(q);
        for (std::size_t j = 0; j < phases.grid(); ++j) {
            ScaledMat period;
            for (std::uint64_t k = 0; k < q; ++k) {
                prefix[k] = period;
                period.left_multiply({energy - coupling * phases.cos_at(j, static_cast<std::int64_t>(k)), -1.0, 1.0, 0.0});
            }
            auto at = [&](std::uint64_t n) {
                const std::uint64_t r = n % q;
                return log_norm_periodic(prefix[r], period, n / q) / static_cast<double>(n);
            };
            g.at_half = std::min(g.at_half, at(half));
            g.at_n = std::min(g.at_n, at(n_max));
        }
        return g;
    }
    for (std::size_t j = 0; j < phases.grid(); ++j) {
        ScaledMat p;
        for (std::uint64_t k = 0; k < n_max; ++k) {
            p.left_multiply({energy - coupling * phases.cos_at(j, static_cast<std::int64_t>(k)), -1.0, 1.0, 0.0});
            if (k + 1 == half) g.at_half = std::min(g.at_half, p.log_norm() / static_cast<double>(half));
        }
        g.at_n = std::min(g.at_n, p.log_norm() / static_cast<double>(n_max));
    }
    return g;
}

UHCertificate growth_verdict(const GrowthStats& g, std::size_t grid, std::uint64_t n_max, double theta) {
    UHCertificate c;
    c.grid_resolution = grid;
    c.growth_constant = g.at_n;
    if (g.at_n >= theta) {
        c.verdict = UHVerdict::CertifiedByGrowth;
        c.witness_n = n_max;
    } else if (g.at_n < 0.25 * theta && g.at_half < 0.25 * theta) {
        c.verdict = UHVerdict::NotHyperbolicEvidence;
    } else {
        c.verdict = UHVerdict::Inconclusive;
    }
    return c;
}

std::size_t default_grid(Frequency alpha, std::size_t requested) {
    if (requested > 0) return requested;
    return alpha.is_rational() ? 8 * static_cast<std::size_t>(alpha.q) : 64;
}

bool oracle_with(const PhaseTable& phases, int q, double energy, double coupling) {
    for (std::size_t j = 0; j < phases.grid(); ++j) {
        Mat2 p = Mat2::identity();
        for (int k = 0; k < q; ++k) p = Mat2{energy - coupling * phases.cos_at(j, k), -1.0, 1.0, 0.0} * p;
        const double tr = p.trace();
        if (std::abs(tr) <= 2.0) return true;
    }
    return false;
}

}  // namespace

UHCertificate uniform_growth_test(double energy, Frequency alpha, double coupling,
                                  std::size_t grid, std::uint64_t n_max, double theta) {
    if (n_max < 2) throw std::invalid_argument("uniform_growth_test: n_max must be >= 2");
    grid = default_grid(alpha, grid);
    const PhaseTable phases(alpha, grid, 0, static_cast<std::int64_t>(n_max));
    return growth_verdict(growth_statistics(phases, energy, coupling, n_max), grid, n_max, theta);
}

UHCertificate uniform_growth_test(const CocycleSpec& schrodinger, std::size_t grid,
                                  std::uint64_t n_max, double theta) {
    const auto* s = std::get_if<SchrodingerCocycle>(&schrodinger.variant());
    if (s == nullptr) throw std::invalid_argument("uniform_growth_test: needs a Schrodinger cocycle");
    return uniform_growth_test(s->energy, Frequency::real(s->alpha), s->coupling, grid, n_max, theta);
}

bool band_oracle(int p, int q, double energy, std::size_t phase_grid, double coupling) {
    const Frequency alpha = Frequency::rational(p, q);
    const std::size_t grid = std::max(phase_grid, 8 * static_cast<std::size_t>(q));
    const PhaseTable phases(alpha, grid, 0, q);
    return oracle_with(phases, q, energy, coupling);
}

std::vector<UHVerdict> slice_verdicts(Frequency alpha, const std::vector<double>& energies,
                                      SliceMethod method, const SliceOptions& options) {
    std::vector<UHVerdict> verdicts(energies.size(), UHVerdict::Inconclusive);
    if (method == SliceMethod::Oracle) {
        if (!alpha.is_rational()) {
            throw std::invalid_argument("slice_spectrum: the oracle method needs a rational alpha");
        }
        const std::size_t grid = std::max(options.grid, 8 * static_cast<std::size_t>(alpha.q));
        const PhaseTable phases(alpha, grid, 0, alpha.q);
        parallel_for(energies.size(), options.threads, [&](std::size_t i) {
            verdicts[i] = oracle_with(phases, alpha.q, energies[i], options.coupling)
                              ? UHVerdict::NotHyperbolicEvidence
                              : UHVerdict::CertifiedByGrowth;
        });
    } else {
        if (options.n_max < 2) throw std::invalid_argument("slice_spectrum: n_max must be >= 2");
        const std::size_t grid = default_grid(alpha, options.grid);
        const PhaseTable phases(alpha, grid, 0, static_cast<std::int64_t>(options.n_max));
        parallel_for(energies.size(), options.threads, [&](std::size_t i) {
            verdicts[i] = growth_verdict(growth_statistics(phases, energies[i], options.coupling, options.n_max),
                                         grid, options.n_max, options.theta)
                              .verdict;
        });
    }
    return verdicts;
}

std::vector<bool> slice_spectrum(Frequency alpha, const std::vector<double>& energies,
                                 SliceMethod method, const SliceOptions& options) {
    const std::vector<UHVerdict> verdicts = slice_verdicts(alpha, energies, method, options);
    std::vector<bool> mask(verdicts.size());
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        mask[i] = verdicts[i] != UHVerdict::CertifiedByGrowth && verdicts[i] != UHVerdict::CertifiedHyperbolic;
    }
    return mask;
}

}  // namespace cocycle

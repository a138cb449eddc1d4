#include "cocycle/barycentric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "cocycle/cocycle.hpp"
#include "cocycle/dynamics.hpp"
#include "cocycle/errors.hpp"

namespace cocycle {

namespace {

constexpr int kBatches = 100;
constexpr std::uint64_t kMinSteps = 1000;
constexpr std::uint32_t kRenormalizeEvery = 32;
constexpr double kThinReference = 1e-3;

Point2 sub(Point2 p, Point2 q) { return {p.x - q.x, p.y - q.y}; }
Point2 midpoint(Point2 p, Point2 q) { return {0.5 * (p.x + q.x), 0.5 * (p.y + q.y)}; }
double cross(Point2 u, Point2 v) { return u.x * v.y - u.y * v.x; }
double norm2(Point2 u) { return u.x * u.x + u.y * u.y; }

// Standard error of the per-step mean from cumulative sums at batch boundaries.
double batch_standard_error(const std::vector<double>& cumulative, const std::vector<std::uint64_t>& at) {
    if (cumulative.size() < 3) return 0.0;
    const std::size_t m = cumulative.size() - 1;
    std::vector<double> means(m);
    for (std::size_t k = 0; k < m; ++k) {
        means[k] = (cumulative[k + 1] - cumulative[k]) / static_cast<double>(at[k + 1] - at[k]);
    }
    double mean = 0.0;
    for (double v : means) mean += v;
    mean /= static_cast<double>(m);
    double ss = 0.0;
    for (double v : means) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(m - 1)) / std::sqrt(static_cast<double>(m));
}

// Steps after which a batch boundary is recorded; empty for short runs.
std::vector<std::uint64_t> batch_boundaries(std::uint64_t n) {
    if (n < kMinSteps) return {};
    std::vector<std::uint64_t> at(kBatches + 1);
    for (int k = 0; k <= kBatches; ++k) at[k] = (n * static_cast<std::uint64_t>(k)) / kBatches;
    return at;
}

void require_labels(std::span<const std::uint8_t> labels) {
    if (labels.empty()) throw std::invalid_argument("barycentric: need at least one label");
}

}  // namespace

Triangle::Triangle(Point2 a, Point2 b, Point2 c) : a_(a), b_(b), c_(c) {
    for (double v : {a.x, a.y, b.x, b.y, c.x, c.y}) {
        if (!std::isfinite(v)) throw std::invalid_argument("triangle: non-finite vertex");
    }
    if (std::abs(signed_area()) <= 1e-300 * longest_edge_squared()) {
        throw std::invalid_argument("triangle: vertices are collinear");
    }
}

Triangle Triangle::equilateral() { return {{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.5 * std::numbers::sqrt3}}; }

double Triangle::signed_area() const { return 0.5 * cross(sub(b_, a_), sub(c_, a_)); }

double Triangle::area() const { return std::abs(signed_area()); }

double Triangle::longest_edge_squared() const {
    return std::max({norm2(sub(b_, a_)), norm2(sub(c_, b_)), norm2(sub(a_, c_))});
}

Triangle subdivide(const Triangle& t, int label) {
    const Point2 a = t.a(), b = t.b(), c = t.c();
    const Point2 g{(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
    Point2 v, w;
    switch (label) {
        case 1: v = a; w = b; break;
        case 2: v = b; w = a; break;
        case 3: v = b; w = c; break;
        case 4: v = c; w = b; break;
        case 5: v = c; w = a; break;
        case 6: v = a; w = c; break;
        default: throw std::invalid_argument("subdivide: label must be in 1..6");
    }
    try {
        return {v, midpoint(v, w), g};
    } catch (const std::invalid_argument&) {
        throw NumericalError("subdivide: child triangle is numerically collinear");
    }
}

double aspect_ratio(const Triangle& t) { return t.area() / t.longest_edge_squared(); }

double marked_aspect_ratio(const Triangle& t) { return 2.0 * t.area() / norm2(sub(t.b(), t.a())); }

HalfPlanePoint triangle_to_halfplane(const Triangle& t) {
    const Point2 u = sub(t.b(), t.a());
    const Point2 v = sub(t.c(), t.a());
    const double d = norm2(u);
    const double re = (v.x * u.x + v.y * u.y) / d;
    const double im = cross(u, v) / d;
    try {
        return {re, std::abs(im)};
    } catch (const std::invalid_argument&) {
        throw NumericalError("triangle_to_halfplane: degenerate triangle");
    }
}

double aspect_ratio(const HalfPlanePoint& z) {
    const double x = z.re(), y = z.im();
    const double longest = std::max({1.0, x * x + y * y, (x - 1.0) * (x - 1.0) + y * y});
    return 0.5 * y / longest;
}

Mat2 chart_frame(const HalfPlanePoint& z) {
    const double r = std::sqrt(z.im());
    return {r, z.re() / r, 0.0, 1.0 / r};
}

SubdivisionPath::SubdivisionPath(const Triangle& seed) : reference_(seed) {}

void SubdivisionPath::step(int label) {
    const Triangle child = subdivide(reference_, label);
    // Only the linear part matters; keeping vertex a at the origin stops the
    // shrinking child from losing digits against its absolute position.
    reference_ = Triangle({0.0, 0.0}, sub(child.b(), child.a()), sub(child.c(), child.a()));
    ++steps_;
    if (++since_renormalize_ >= kRenormalizeEvery || aspect_ratio(reference_) < kThinReference) {
        renormalize();
    }
}

void SubdivisionPath::renormalize() {
    // F maps the equilateral triangle onto the reference one (linear part).
    const Point2 u = sub(reference_.b(), reference_.a());
    const Point2 v = sub(reference_.c(), reference_.a());
    const double s3 = std::numbers::sqrt3;
    const Mat2 f{u.x, (2.0 * v.x - u.x) / s3, u.y, (2.0 * v.y - u.y) / s3};
    const double det_f = f.det();
    if (!(det_f != 0.0) || !std::isfinite(det_f)) {
        throw NumericalError("subdivision path: reference triangle collapsed");
    }
    log_abs_det_ += std::log(std::abs(det_f));
    map_ = map_ * f;
    const double big = std::max({std::abs(map_.a), std::abs(map_.b), std::abs(map_.c), std::abs(map_.d)});
    map_ = map_.scaled(1.0 / big);
    log_scale_ += std::log(big);
    reference_ = Triangle::equilateral();
    since_renormalize_ = 0;
}

double SubdivisionPath::log_image_length(Point2 from, Point2 to) const {
    const Point2 e = sub(to, from);
    return log_scale_ + std::log(std::hypot(map_.a * e.x + map_.b * e.y, map_.c * e.x + map_.d * e.y));
}

double SubdivisionPath::log_aspect_ratio() const {
    const Triangle& r = reference_;
    const double longest = std::max({log_image_length(r.a(), r.b()), log_image_length(r.b(), r.c()),
                                     log_image_length(r.c(), r.a())});
    return log_abs_det_ + std::log(r.area()) - 2.0 * longest;
}

double SubdivisionPath::log_marked_aspect_ratio() const {
    const Triangle& r = reference_;
    return log_abs_det_ + std::log(2.0 * r.area()) - 2.0 * log_image_length(r.a(), r.b());
}

Triangle SubdivisionPath::shape() const {
    auto image = [&](Point2 p) { return Point2{map_.a * p.x + map_.b * p.y, map_.c * p.x + map_.d * p.y}; };
    const Point2 a = image(reference_.a()), b = image(reference_.b()), c = image(reference_.c());
    const double l = std::sqrt(std::max({norm2(sub(b, a)), norm2(sub(c, b)), norm2(sub(a, c))}));
    auto unit = [&](Point2 p) { return Point2{(p.x - a.x) / l, (p.y - a.y) / l}; };
    try {
        return {unit(a), unit(b), unit(c)};
    } catch (const std::invalid_argument&) {
        throw NumericalError("subdivision path: shape is too thin to represent");
    }
}

std::vector<std::uint8_t> barycentric_labels(std::uint64_t n, std::uint64_t seed) {
    BernoulliDriver driver = BernoulliDriver::uniform(6, seed);
    std::vector<std::uint8_t> labels(n);
    for (auto& l : labels) l = static_cast<std::uint8_t>(driver.next());
    return labels;
}

void AspectTrace::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "step,log_aspect_ratio\n";
    out.precision(17);
    for (const auto& [step, value] : points) out << step << ',' << value << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

BarycentricEstimate chi_geometric(const Triangle& seed, std::span<const std::uint8_t> labels,
                                  AspectTrace* trace) {
    require_labels(labels);
    const std::uint64_t n = labels.size();
    SubdivisionPath path(seed);
    const double log0 = path.log_aspect_ratio();
    const std::vector<std::uint64_t> at = batch_boundaries(n);
    std::vector<double> cumulative;
    if (!at.empty()) cumulative.push_back(0.0);
    std::size_t next_boundary = 1;
    if (trace != nullptr) {
        if (trace->stride == 0) trace->stride = 1;
        trace->points.clear();
        trace->points.emplace_back(0, log0);
    }
    for (std::uint64_t k = 0; k < n; ++k) {
        path.step(labels[k]);
        const std::uint64_t done = k + 1;
        const bool boundary = next_boundary < at.size() && done == at[next_boundary];
        const bool record = trace != nullptr && (done % trace->stride == 0 || done == n);
        if (!boundary && !record) continue;
        const double la = path.log_aspect_ratio();
        if (boundary) {
            cumulative.push_back(-0.5 * (la - log0));
            ++next_boundary;
        }
        if (record) trace->points.emplace_back(done, la);
    }
    BarycentricEstimate e;
    e.steps = n;
    e.chi = -0.5 * (path.log_aspect_ratio() - log0) / static_cast<double>(n);
    e.standard_error = batch_standard_error(cumulative, at);
    return e;
}

BarycentricEstimate chi_geometric(const Triangle& seed, std::uint64_t n, std::uint64_t rng_seed,
                                  AspectTrace* trace) {
    if (n < kMinSteps) throw std::invalid_argument("chi_geometric: n must be >= 1000");
    const std::vector<std::uint8_t> labels = barycentric_labels(n, rng_seed);
    return chi_geometric(seed, labels, trace);
}

double chi_geometric_marked(const Triangle& seed, std::span<const std::uint8_t> labels) {
    require_labels(labels);
    SubdivisionPath path(seed);
    const double log0 = path.log_marked_aspect_ratio();
    for (std::uint8_t l : labels) path.step(l);
    return -0.5 * (path.log_marked_aspect_ratio() - log0) / static_cast<double>(labels.size());
}

BarycentricEstimate chi_cocycle(std::span<const std::uint8_t> labels, std::optional<HalfPlanePoint> seed_point) {
    require_labels(labels);
    const std::uint64_t n = labels.size();
    const auto& gens = barycentric_generators();
    const std::vector<std::uint64_t> at = batch_boundaries(n);
    std::vector<double> cumulative;
    if (!at.empty()) cumulative.push_back(0.0);
    std::size_t next_boundary = 1;

    // Row vector (0,1) A(w_n) ... A(w_1), consumed last-to-first.
    double x = 0.0, y = 1.0, total = 0.0;
    for (std::uint64_t k = 0; k < n; ++k) {
        const std::uint8_t l = labels[n - 1 - k];
        if (l < 1 || l > 6) throw std::invalid_argument("chi_cocycle: label out of range");
        const Mat2& m = gens[l - 1u];
        const double nx = x * m.a + y * m.c;
        const double ny = x * m.b + y * m.d;
        const double len = std::hypot(nx, ny);
        total += std::log(len);
        x = nx / len;
        y = ny / len;
        if (next_boundary < at.size() && k + 1 == at[next_boundary]) {
            cumulative.push_back(total);
            ++next_boundary;
        }
    }
    if (seed_point) {
        const Mat2 g = chart_frame(*seed_point);
        total += std::log(std::hypot(x * g.a + y * g.c, x * g.b + y * g.d));
        total -= std::log(g.d);  // |(0,1) G| = G.d
    }
    BarycentricEstimate e;
    e.steps = n;
    e.chi = total / static_cast<double>(n);
    e.standard_error = batch_standard_error(cumulative, at);
    return e;
}

BarycentricEstimate chi_cocycle(std::uint64_t n, std::uint64_t rng_seed) {
    if (n < kMinSteps) throw std::invalid_argument("chi_cocycle: n must be >= 1000");
    const std::vector<std::uint8_t> labels = barycentric_labels(n, rng_seed);
    return chi_cocycle(labels);
}

WitnessPath greedy_witness_path(const Triangle& seed, std::size_t length) {
    WitnessPath w;
    Triangle t = seed;
    w.min_aspect_ratio = aspect_ratio(seed);
    for (std::size_t k = 0; k < length; ++k) {
        int best_label = 1;
        double best = -1.0;
        for (int label = 1; label <= 6; ++label) {
            const double r = aspect_ratio(subdivide(t, label));
            if (r > best) {
                best = r;
                best_label = label;
            }
        }
        // Rescale so long paths stay representable; aspect ratio is unchanged.
        const Triangle child = subdivide(t, best_label);
        const double s = 1.0 / std::sqrt(child.longest_edge_squared());
        const Point2 a = child.a();
        auto unit = [&](Point2 p) { return Point2{(p.x - a.x) * s, (p.y - a.y) * s}; };
        t = Triangle(unit(child.a()), unit(child.b()), unit(child.c()));
        w.labels.push_back(static_cast<std::uint8_t>(best_label));
        w.aspect_ratios.push_back(best);
        w.min_aspect_ratio = std::min(w.min_aspect_ratio, best);
    }
    return w;
}

}  // namespace cocycle

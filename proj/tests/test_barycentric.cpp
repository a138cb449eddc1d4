#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "cocycle/barycentric.hpp"
#include "cocycle/cocycle.hpp"
#include "cocycle/errors.hpp"

using namespace cocycle;

namespace {

const double kSqrt3 = std::sqrt(3.0);

double signed_area(Point2 a, Point2 b, Point2 c) {
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

bool same_point(Point2 p, Point2 q, double tol = 1e-15) {
    return std::abs(p.x - q.x) <= tol && std::abs(p.y - q.y) <= tol;
}

// |(0,1) A^(n) G| with A^(n) = M(w_n) ... M(w_1), as a plain product.
double row_norm(const std::vector<std::uint8_t>& labels, const Mat2& g) {
    Mat2 product = Mat2::identity();
    for (std::uint8_t l : labels) product = barycentric_generators()[l - 1u] * product;
    const Mat2 pg = product * g;
    return std::hypot(pg.c, pg.d);
}

// Similar copy with vertex a at the origin and unit longest side.
Triangle normalized(const Triangle& t) {
    const double s = 1.0 / std::sqrt(t.longest_edge_squared());
    auto f = [&](Point2 p) { return Point2{(p.x - t.a().x) * s, (p.y - t.a().y) * s}; };
    return Triangle(f(t.a()), f(t.b()), f(t.c()));
}

Triangle random_triangle(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
        if (std::abs(signed_area(a, b, c)) > 1e-3) return Triangle(a, b, c);
    }
}

}  // namespace

TEST_CASE("subdivide: equilateral children carry a sixth of the area") {
    const Triangle t = Triangle::equilateral();
    for (int j = 1; j <= 6; ++j) CHECK(subdivide(t, j).area() == doctest::Approx(t.area() / 6.0).epsilon(1e-14));
    CHECK_THROWS_AS(subdivide(t, 0), std::invalid_argument);
    CHECK_THROWS_AS(subdivide(t, 7), std::invalid_argument);
}

TEST_CASE("subdivide: explicit child of the right triangle") {
    const Triangle t({0, 0}, {1, 0}, {0, 1});
    const Triangle c = subdivide(t, 1);
    CHECK(same_point(c.a(), {0.0, 0.0}));
    CHECK(same_point(c.b(), {0.5, 0.0}));
    CHECK(same_point(c.c(), {1.0 / 3.0, 1.0 / 3.0}));
}

TEST_CASE("subdivide: children tile the parent") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const Triangle t = random_triangle(rng);
        double total = 0.0;
        std::array<Triangle, 6> kids{t, t, t, t, t, t};
        for (int j = 1; j <= 6; ++j) {
            kids[j - 1] = subdivide(t, j);
            total += kids[j - 1].area();
        }
        CHECK(std::abs(total - t.area()) <= 1e-12);
        // Every child's centroid lies inside that child and in no other child.
        for (int i = 0; i < 6; ++i) {
            const Triangle& k = kids[i];
            const Point2 g{(k.a().x + k.b().x + k.c().x) / 3.0, (k.a().y + k.b().y + k.c().y) / 3.0};
            int inside = 0;
            for (const Triangle& o : kids) {
                const double s0 = signed_area(o.a(), o.b(), g), s1 = signed_area(o.b(), o.c(), g),
                             s2 = signed_area(o.c(), o.a(), g);
                if ((s0 > 0 && s1 > 0 && s2 > 0) || (s0 < 0 && s1 < 0 && s2 < 0)) ++inside;
            }
            CHECK(inside == 1);
        }
    }
}

TEST_CASE("triangle validation") {
    CHECK_THROWS_AS(Triangle({0, 0}, {1, 1}, {2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Triangle({0, 0}, {1, 0}, {NAN, 1}), std::invalid_argument);
    CHECK_NOTHROW(Triangle({0, 0}, {1, 0}, {0.5, 1e-200}));
}

TEST_CASE("aspect_ratio examples and bounds") {
    CHECK(aspect_ratio(Triangle::equilateral()) == doctest::Approx(kSqrt3 / 4.0).epsilon(1e-15));
    const Triangle big({0, 0}, {3, 0}, {1.5, 1.5 * kSqrt3});
    CHECK(aspect_ratio(big) == doctest::Approx(kSqrt3 / 4.0).epsilon(1e-15));
    const Triangle right({0, 0}, {1, 0}, {0, 1});
    const Triangle right2({0, 0}, {2, 0}, {0, 2});
    CHECK(aspect_ratio(right) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(aspect_ratio(right2) == doctest::Approx(aspect_ratio(right)).epsilon(1e-15));

    std::mt19937_64 rng(17);
    for (int i = 0; i < 10000; ++i) {
        const double r = aspect_ratio(random_triangle(rng));
        CHECK(r > 0.0);
        CHECK(r <= kSqrt3 / 4.0 + 1e-15);
    }
}

TEST_CASE("triangle_to_halfplane examples and similarity invariance") {
    const HalfPlanePoint e = triangle_to_halfplane(Triangle::equilateral());
    CHECK(e.re() == doctest::Approx(0.5));
    CHECK(e.im() == doctest::Approx(kSqrt3 / 2.0));
    const HalfPlanePoint r = triangle_to_halfplane(Triangle({0, 0}, {1, 0}, {0, 1}));
    CHECK(std::abs(r.re()) <= 1e-15);
    CHECK(r.im() == doctest::Approx(1.0));
    // Clockwise input lands in the upper half plane.
    const HalfPlanePoint m = triangle_to_halfplane(Triangle({0, 0}, {1, 0}, {0, -1}));
    CHECK(m.im() == doctest::Approx(1.0));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const Triangle t = random_triangle(rng);
        const double s = std::exp(u(rng)), th = u(rng), dx = u(rng), dy = u(rng);
        auto f = [&](Point2 p) {
            return Point2{s * (std::cos(th) * p.x - std::sin(th) * p.y) + dx,
                          s * (std::sin(th) * p.x + std::cos(th) * p.y) + dy};
        };
        const HalfPlanePoint z = triangle_to_halfplane(t);
        const HalfPlanePoint w = triangle_to_halfplane(Triangle(f(t.a()), f(t.b()), f(t.c())));
        CHECK(std::abs(z.re() - w.re()) <= 1e-12 * std::max(1.0, std::abs(z.re())));
        CHECK(std::abs(z.im() - w.im()) <= 1e-12 * std::max(1.0, z.im()));
        CHECK(marked_aspect_ratio(t) == doctest::Approx(z.im()).epsilon(1e-12));
        CHECK(aspect_ratio(z) == doctest::Approx(aspect_ratio(t)).epsilon(1e-12));
    }
}

TEST_CASE("chart equivariance under the six generators") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
        const Triangle t = random_triangle(rng);
        const HalfPlanePoint z = triangle_to_halfplane(t);
        for (int j = 1; j <= 6; ++j) {
            const HalfPlanePoint child = triangle_to_halfplane(subdivide(t, j));
            const HalfPlanePoint image = projective_apply(barycentric_generators()[j - 1], z);
            CAPTURE(j);
            CHECK(hyperbolic_distance(child, image) <= 1e-9);
        }
    }
}

TEST_CASE("chart_frame maps i to z") {
    const HalfPlanePoint z(0.3, 1.7);
    const Mat2 g = chart_frame(z);
    CHECK(g.det() == doctest::Approx(1.0));
    CHECK(g.c == 0.0);
    const HalfPlanePoint w = projective_apply(g, HalfPlanePoint(0.0, 1.0));
    CHECK(w.re() == doctest::Approx(0.3));
    CHECK(w.im() == doctest::Approx(1.7));
}

TEST_CASE("pathwise oracle: geometry against row-vector norms") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> pick(1, 6);
    const Triangle right({0, 0}, {1, 0}, {0, 1});
    const Triangle equi = Triangle::equilateral();
    const Mat2 g_equi = chart_frame(triangle_to_halfplane(equi));
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t len = 1 + static_cast<std::size_t>(trial % 20);
        std::vector<std::uint8_t> labels(len);
        for (auto& l : labels) l = static_cast<std::uint8_t>(pick(rng));
        Triangle t = right, e = equi;
        for (std::uint8_t l : labels) {
            t = normalized(subdivide(t, l));
            e = normalized(subdivide(e, l));
        }
        // Seed with chart point i: the marked aspect ratio is exactly |(0,1) A^(n)|^-2.
        const double want = std::pow(row_norm(labels, Mat2::identity()), -2.0);
        CHECK(std::abs(marked_aspect_ratio(t) / want - 1.0) <= 1e-9);
        // Equilateral seed: the chart frame carries i to the seed point.
        const double im = std::pow(row_norm(labels, g_equi), -2.0);
        CHECK(std::abs(marked_aspect_ratio(e) / im - 1.0) <= 1e-9);
        const HalfPlanePoint z = triangle_to_halfplane(e);
        CHECK(std::abs(z.im() / im - 1.0) <= 1e-9);
        CHECK(std::abs(aspect_ratio(e) / aspect_ratio(z) - 1.0) <= 1e-9);
    }
}

TEST_CASE("SubdivisionPath follows explicit geometry") {
    // Plain double geometry is trusted only while the triangle is far from
    // flat; each trial stops once its aspect ratio drops below 1e-6.
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> pick(1, 6);
    std::uint64_t compared = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Triangle seed = random_triangle(rng);
        SubdivisionPath path(seed);
        Triangle t = seed;
        for (int k = 0; k < 150; ++k) {
            const int l = pick(rng);
            path.step(l);
            t = normalized(subdivide(t, l));
            if (aspect_ratio(t) < 1e-6) break;
            ++compared;
            CHECK(path.log_aspect_ratio() == doctest::Approx(std::log(aspect_ratio(t))).epsilon(1e-9));
            CHECK(path.log_marked_aspect_ratio() ==
                  doctest::Approx(std::log(marked_aspect_ratio(t))).epsilon(1e-9));
            CHECK(aspect_ratio(path.shape()) == doctest::Approx(aspect_ratio(t)).epsilon(1e-8));
        }
    }
    CHECK(compared >= 3000);
    SubdivisionPath counted(Triangle::equilateral());
    for (int k = 0; k < 7; ++k) counted.step(1 + k % 6);
    CHECK(counted.steps() == 7);
}

TEST_CASE("SubdivisionPath survives long paths") {
    SubdivisionPath path(Triangle::equilateral());
    const std::vector<std::uint8_t> labels = barycentric_labels(200000, 1);
    for (std::uint8_t l : labels) path.step(l);
    CHECK(std::isfinite(path.log_aspect_ratio()));
    CHECK(path.log_aspect_ratio() < -100.0);
    CHECK(path.log_aspect_ratio() <= path.log_marked_aspect_ratio() + 1e-9);
}

TEST_CASE("one-step values") {
    const std::vector<std::uint8_t> one = {1};
    const Triangle equi = Triangle::equilateral();
    // Child 1 of the unit equilateral: (0,0), (1/2,0), (1/2, sqrt3/6).
    // Aspect ratio sqrt3/8 against sqrt3/4; marked ratio sqrt3/3 against sqrt3/2.
    CHECK(chi_geometric(equi, one).chi == doctest::Approx(-0.5 * std::log(0.5)).epsilon(1e-13));
    const double marked = -0.5 * std::log(2.0 / 3.0);
    CHECK(chi_geometric_marked(equi, one) == doctest::Approx(marked).epsilon(1e-13));
    CHECK(chi_cocycle(one, triangle_to_halfplane(equi)).chi == doctest::Approx(marked).epsilon(1e-13));
    CHECK(row_vector_growth({}, {0.0, 1.0}) == 0.0);
    CHECK_THROWS_AS(chi_cocycle(std::vector<std::uint8_t>{}), std::invalid_argument);
}

TEST_CASE("geometric and cocycle estimators agree pathwise") {
    const std::vector<std::uint8_t> labels = barycentric_labels(100000, 3);
    const Triangle right({0, 0}, {1, 0}, {0, 1});
    // Seed chart point i: the marked estimator and the cocycle are the same number.
    CHECK(std::abs(chi_geometric_marked(right, labels) - chi_cocycle(labels).chi) <= 1e-9);
    const Triangle equi = Triangle::equilateral();
    CHECK(std::abs(chi_geometric_marked(equi, labels) -
                   chi_cocycle(labels, triangle_to_halfplane(equi)).chi) <= 1e-9);
    // True and marked aspect ratios differ by a bounded factor, so the
    // estimators differ by O(1/n).
    CHECK(std::abs(chi_geometric(equi, labels).chi - chi_cocycle(labels).chi) <= 1e-3);
}

TEST_CASE("different seed triangles, same labels") {
    const std::vector<std::uint8_t> labels = barycentric_labels(1000000, 11);
    const BarycentricEstimate a = chi_geometric(Triangle::equilateral(), labels);
    const BarycentricEstimate b = chi_geometric(Triangle({0, 0}, {1, 0}, {0.1, 0.02}), labels);
    CHECK(std::abs(a.chi - b.chi) <= 2.0 * std::hypot(a.standard_error, b.standard_error));
    CHECK(a.standard_error > 0.0);
    CHECK(a.steps == 1000000);
}

TEST_CASE("estimator input validation") {
    CHECK_THROWS_AS(chi_geometric(Triangle::equilateral(), 999, 1), std::invalid_argument);
    CHECK_THROWS_AS(chi_cocycle(999, 1), std::invalid_argument);
}

TEST_CASE("greedy path keeps the aspect ratio bounded below") {
    const WitnessPath w = greedy_witness_path(Triangle::equilateral(), 20);
    CHECK(w.labels.size() == 20);
    CHECK(w.min_aspect_ratio >= 0.2);
    for (double r : w.aspect_ratios) CHECK(r >= 0.2);
    // Replaying the labels reproduces the recorded aspect ratios.
    Triangle t = Triangle::equilateral();
    for (std::size_t k = 0; k < w.labels.size(); ++k) {
        t = subdivide(t, w.labels[k]);
        CHECK(aspect_ratio(t) == doctest::Approx(w.aspect_ratios[k]).epsilon(1e-9));
    }
    const WitnessPath long_path = greedy_witness_path(Triangle::equilateral(), 2000);
    CHECK(long_path.min_aspect_ratio >= 0.2);
}

TEST_CASE("all-label-1 path degenerates") {
    // A constant label is not a witness: the triangle flattens.
    Triangle t = Triangle::equilateral();
    double lowest = aspect_ratio(t);
    for (int k = 0; k < 20; ++k) {
        t = subdivide(t, 1);
        lowest = std::min(lowest, aspect_ratio(t));
    }
    CHECK(lowest < 1e-3);
}

TEST_CASE("AspectTrace records strided points") {
    AspectTrace trace;
    trace.stride = 250;
    const BarycentricEstimate e = chi_geometric(Triangle::equilateral(), 1000, 4, &trace);
    CHECK(e.steps == 1000);
    REQUIRE(trace.points.size() == 5);
    CHECK(trace.points.front().first == 0);
    CHECK(trace.points.back().first == 1000);
    CHECK(-0.5 * (trace.points.back().second - trace.points.front().second) / 1000.0 ==
          doctest::Approx(e.chi).epsilon(1e-12));
}

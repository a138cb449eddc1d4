#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cocycle/matrix.hpp"

namespace cocycle {

struct Point2 {
    double x;
    double y;
};

// A marked triangle (ordered vertices a, b, c).
class Triangle {
public:
    // Throws std::invalid_argument for non-finite or collinear vertices
    // (|signed area| <= 1e-300 * squared diameter).
    Triangle(Point2 a, Point2 b, Point2 c);

    // Unit-side equilateral triangle (0,0), (1,0), (1/2, sqrt3/2).
    static Triangle equilateral();

    Point2 a() const { return a_; }
    Point2 b() const { return b_; }
    Point2 c() const { return c_; }
    double signed_area() const;
    double area() const;
    double longest_edge_squared() const;

private:
    Point2 a_, b_, c_;
};

// Child `label` (1..6) of the barycentric subdivision. Each child is the
// marked triangle (vertex v, midpoint of edge vw, centroid), labeled
// cyclically starting from vertex a:
//   1: (a, m_ab, g)   2: (b, m_ab, g)   3: (b, m_bc, g)
//   4: (c, m_bc, g)   5: (c, m_ca, g)   6: (a, m_ca, g)
// With this rule the half-plane chart of child j is the image of the parent's
// chart under barycentric_generators()[j-1]. Throws std::invalid_argument for
// a bad label and NumericalError if the child is numerically collinear.
Triangle subdivide(const Triangle& t, int label);

// area / (longest side)^2; at most sqrt(3)/4, attained by equilateral triangles.
double aspect_ratio(const Triangle& t);
// 2 area / |ab|^2, the imaginary part of the half-plane chart.
double marked_aspect_ratio(const Triangle& t);

// z = (c - a) / (b - a), conjugated into the upper half plane for clockwise triangles.
HalfPlanePoint triangle_to_halfplane(const Triangle& t);
// Aspect ratio of the triangle (0, 1, z).
double aspect_ratio(const HalfPlanePoint& z);
// Upper-triangular G with det 1 and G(i) = z.
Mat2 chart_frame(const HalfPlanePoint& z);

// A subdivision path followed in exact plane geometry. The triangle after n
// steps is kept as L(R): a reference triangle R in ordinary coordinates and
// an accumulated linear map L stored as a normalized matrix with separate
// log-scale and log|det|. Subdivision commutes with affine maps, so labels are
// applied to R, and every 32 steps (or sooner if R becomes thin) R is pulled
// back to the equilateral triangle with the map absorbed into L. The true
// triangle underflows within a few thousand steps; this representation does not.
class SubdivisionPath {
public:
    explicit SubdivisionPath(const Triangle& seed);

    void step(int label);
    std::uint64_t steps() const { return steps_; }

    double log_aspect_ratio() const;
    double log_marked_aspect_ratio() const;
    // The current triangle up to translation and scale (unit longest side).
    // Only meaningful while its aspect ratio is above ~1e-12.
    Triangle shape() const;

private:
    void renormalize();
    double log_image_length(Point2 from, Point2 to) const;

    Triangle reference_;
    Mat2 map_ = Mat2::identity();  // normalized linear part
    double log_scale_ = 0.0;       // L = exp(log_scale_) * map_
    double log_abs_det_ = 0.0;     // log |det L|
    std::uint64_t steps_ = 0;
    std::uint32_t since_renormalize_ = 0;
};

// Uniform i.i.d. labels 1..6 from the Bernoulli driver seeded with `seed`.
std::vector<std::uint8_t> barycentric_labels(std::uint64_t n, std::uint64_t seed);

struct BarycentricEstimate {
    double chi = 0.0;
    double standard_error = 0.0;  // batch means over 100 batches, 0 for short runs
    std::uint64_t steps = 0;
};

// Optional per-step trace of (step, log aspect ratio) for plotting.
struct AspectTrace {
    std::uint64_t stride = 1;
    std::vector<std::pair<std::uint64_t, double>> points;

    void write_csv(const std::string& path) const;
};

// -(1/(2n)) log(alpha_n / alpha_0) along the given labels.
BarycentricEstimate chi_geometric(const Triangle& seed, std::span<const std::uint8_t> labels,
                                  AspectTrace* trace = nullptr);
// Same, for n >= 1000 uniform labels drawn from rng_seed.
BarycentricEstimate chi_geometric(const Triangle& seed, std::uint64_t n, std::uint64_t rng_seed,
                                  AspectTrace* trace = nullptr);

// (1/n) log |(0,1) A^(n) G| - (1/n) log |(0,1) G| along the labels, where G is
// the chart frame of `seed_point` (G = I for z = i, the default).
BarycentricEstimate chi_cocycle(std::span<const std::uint8_t> labels,
                                std::optional<HalfPlanePoint> seed_point = std::nullopt);
// Same, for n >= 1000 uniform labels drawn from rng_seed.
BarycentricEstimate chi_cocycle(std::uint64_t n, std::uint64_t rng_seed);

// Marked-aspect-ratio version of chi_geometric; equals chi_cocycle with the
// seed's chart point up to rounding for every path.
double chi_geometric_marked(const Triangle& seed, std::span<const std::uint8_t> labels);

struct WitnessPath {
    std::vector<std::uint8_t> labels;
    std::vector<double> aspect_ratios;  // aspect ratio after each step
    double min_aspect_ratio = 0.0;
};

// Path of the given length that picks, at every step, the child with the
// largest aspect ratio. Its aspect ratios stay bounded below, so the
// subdivision cocycle is not uniformly hyperbolic.
WitnessPath greedy_witness_path(const Triangle& seed, std::size_t length);

}  // namespace cocycle

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cocycle/dynamics.hpp"
#include "cocycle/matrix.hpp"

namespace cocycle {

struct ConstantCocycle {
    MatD matrix;
};
struct RandomProductCocycle {
    std::vector<MatD> matrices;
};
struct BarycentricCocycle {};
// Generator [[E - coupling cos(2 pi x), -1], [1, 0]] over x -> x + alpha.
struct SchrodingerCocycle {
    double energy;
    double alpha;
    double coupling;
};
// Derivative of g(x, y) = (2x + y + eps sin(2 pi (x + y)), x + y).
struct ToralDerivativeCocycle {
    double epsilon;
};

enum class CocycleKind { Constant, RandomProduct, Barycentric, Schrodinger, ToralDerivative };

// The closed family of cocycles the lab knows about. Immutable once built;
// the factories validate their input and throw std::invalid_argument.
class CocycleSpec {
public:
    using Variant = std::variant<ConstantCocycle, RandomProductCocycle, BarycentricCocycle,
                                 SchrodingerCocycle, ToralDerivativeCocycle>;

    static CocycleSpec constant(MatD m);
    // All matrices must share one dimension and be invertible.
    static CocycleSpec random_product(std::vector<MatD> matrices);
    static CocycleSpec barycentric();
    static CocycleSpec schrodinger(double energy, double alpha, double coupling = 2.0);
    static CocycleSpec toral_derivative(double epsilon);

    CocycleKind kind() const;
    const Variant& variant() const { return impl_; }
    std::size_t dimension() const;
    // True when every generator has |det| = 1 (SL(2) and the PGL barycentric family).
    bool unimodular() const;
    // Number of symbols for symbolic bases, 0 otherwise.
    int alphabet_size() const;
    std::string name() const;

private:
    explicit CocycleSpec(Variant v) : impl_(std::move(v)) {}
    Variant impl_;
};

Mat2 schrodinger_matrix(double energy, double coupling, double x);
Mat2 toral_derivative_matrix(double epsilon, TorusPoint p);

// The six barycentric generators, index j holding the matrix of label j+1:
//   1: B          2: B P3        3: B P2 P3
//   4: B P1       5: B P3 P2     6: B P2
// with B = (1/sqrt6)[[2,2],[0,3]], P1 = [[1,0],[1,-1]], P2 = [[0,1],[1,0]],
// P3 = [[-1,1],[0,1]]. Every entry has |det| = 1. The labels run cyclically
// around the triangle (see barycentric.hpp).
const std::array<Mat2, 6>& barycentric_generators();

// Generator at a base point. Throws std::invalid_argument if the point's kind
// does not match the base of the spec (constant cocycles accept any point).
MatD generator(const CocycleSpec& spec, const BasePoint& point);
void generator_into(const CocycleSpec& spec, const BasePoint& point, MatD& out);

// A driver matching the base of the spec: a fixed rotation for constant
// cocycles, uniform Bernoulli for symbolic ones, the rotation by alpha for
// Schrodinger and the perturbed toral map for the derivative cocycle. Start
// points for circle and torus are drawn from the seed.
OrbitDriver default_driver(const CocycleSpec& spec, std::uint64_t seed);

enum class NormKind { Spectral, Frobenius };

// Running product A(f^{n-1} w) ... A(w), renormalized after every step so the
// stored matrix has unit norm; the discarded scale lives in log_scale().
class ProductState {
public:
    explicit ProductState(std::size_t dim, NormKind norm = NormKind::Spectral);

    std::uint64_t step() const { return step_; }
    const MatD& current() const { return current_; }
    double log_scale() const { return log_scale_; }
    double log_abs_det() const { return log_abs_det_; }
    // log of the norm of the unrenormalized product.
    double log_norm() const;

    // Left-multiplies by g and renormalizes; returns the increment of the
    // log-scale. Throws NumericalError on non-finite or vanishing products.
    double advance(const MatD& g);

private:
    std::uint64_t step_ = 0;
    NormKind norm_;
    MatD current_;
    MatD scratch_;
    double log_scale_ = 0.0;
    double log_abs_det_ = 0.0;
};

ProductState advance(ProductState state, const MatD& g);

// log |v0 * A^(n)| for the barycentric cocycle along the symbol sequence
// (symbols in 1..6, symbols[0] applied first). The row vector multiplies
// the product from the left, so the sequence is consumed last-to-first.
double row_vector_growth(std::span<const std::uint8_t> symbols, std::array<double, 2> v0);

}  // namespace cocycle

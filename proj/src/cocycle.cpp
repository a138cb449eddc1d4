#include "cocycle/cocycle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cocycle/errors.hpp"

namespace cocycle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::array<Mat2, 6> make_barycentric() {
    const double s = 1.0 / std::sqrt(6.0);
    const Mat2 b{2.0 * s, 2.0 * s, 0.0, 3.0 * s};
    const Mat2 p1{1.0, 0.0, 1.0, -1.0};
    const Mat2 p2{0.0, 1.0, 1.0, 0.0};
    const Mat2 p3{-1.0, 1.0, 0.0, 1.0};
    return {b, b * p3, b * (p2 * p3), b * p1, b * (p3 * p2), b * p2};
}

[[noreturn]] void kind_mismatch(const char* want) {
    throw std::invalid_argument(std::string("generator: base point must be a ") + want);
}

}  // namespace

CocycleSpec CocycleSpec::constant(MatD m) {
    if (!m.finite()) throw std::invalid_argument("constant cocycle: non-finite matrix");
    return CocycleSpec(ConstantCocycle{std::move(m)});
}

CocycleSpec CocycleSpec::random_product(std::vector<MatD> matrices) {
    if (matrices.empty()) throw std::invalid_argument("random product: no matrices");
    const std::size_t d = matrices.front().dim();
    for (const MatD& m : matrices) {
        if (m.dim() != d) throw std::invalid_argument("random product: mixed dimensions");
        if (!m.finite()) throw std::invalid_argument("random product: non-finite matrix");
        if (m.determinant() == 0.0) {
            throw std::invalid_argument("random product: singular matrix");
        }
    }
    return CocycleSpec(RandomProductCocycle{std::move(matrices)});
}

CocycleSpec CocycleSpec::barycentric() { return CocycleSpec(BarycentricCocycle{}); }

CocycleSpec CocycleSpec::schrodinger(double energy, double alpha, double coupling) {
    if (!std::isfinite(energy) || !std::isfinite(alpha) || !std::isfinite(coupling)) {
        throw std::invalid_argument("schrodinger cocycle: parameters must be finite");
    }
    return CocycleSpec(SchrodingerCocycle{energy, alpha, coupling});
}

CocycleSpec CocycleSpec::toral_derivative(double epsilon) {
    if (!std::isfinite(epsilon)) throw std::invalid_argument("toral cocycle: epsilon must be finite");
    return CocycleSpec(ToralDerivativeCocycle{epsilon});
}

CocycleKind CocycleSpec::kind() const { return static_cast<CocycleKind>(impl_.index()); }

std::size_t CocycleSpec::dimension() const {
    if (const auto* c = std::get_if<ConstantCocycle>(&impl_)) return c->matrix.dim();
    if (const auto* r = std::get_if<RandomProductCocycle>(&impl_)) return r->matrices.front().dim();
    return 2;
}

bool CocycleSpec::unimodular() const {
    auto unit = [](const MatD& m) { return std::abs(std::abs(m.determinant()) - 1.0) <= 1e-12; };
    if (const auto* c = std::get_if<ConstantCocycle>(&impl_)) return unit(c->matrix);
    if (const auto* r = std::get_if<RandomProductCocycle>(&impl_)) {
        for (const MatD& m : r->matrices)
            if (!unit(m)) return false;
    }
    return true;
}

int CocycleSpec::alphabet_size() const {
    if (const auto* r = std::get_if<RandomProductCocycle>(&impl_)) {
        return static_cast<int>(r->matrices.size());
    }
    if (std::holds_alternative<BarycentricCocycle>(impl_)) return 6;
    return 0;
}

std::string CocycleSpec::name() const {
    switch (kind()) {
        case CocycleKind::Constant: return "constant";
        case CocycleKind::RandomProduct: return "random-product";
        case CocycleKind::Barycentric: return "barycentric";
        case CocycleKind::Schrodinger: return "schrodinger";
        case CocycleKind::ToralDerivative: return "toral";
    }
    return "unknown";
}

Mat2 schrodinger_matrix(double energy, double coupling, double x) {
    return {energy - coupling * std::cos(kTwoPi * x), -1.0, 1.0, 0.0};
}

Mat2 toral_derivative_matrix(double epsilon, TorusPoint p) {
    const double k = kTwoPi * epsilon * std::cos(kTwoPi * (p.x + p.y));
    return {2.0 + k, 1.0 + k, 1.0, 1.0};
}

const std::array<Mat2, 6>& barycentric_generators() {
    static const std::array<Mat2, 6> generators = make_barycentric();
    return generators;
}

void generator_into(const CocycleSpec& spec, const BasePoint& point, MatD& out) {
    auto symbol_index = [&](int k) -> std::size_t {
        const auto* s = std::get_if<Symbol>(&point);
        if (s == nullptr) kind_mismatch("symbol");
        if (s->value < 1 || s->value > k) {
            throw std::invalid_argument("generator: symbol out of range");
        }
        return static_cast<std::size_t>(s->value - 1);
    };
    auto assign2 = [&](const Mat2& m) {
        if (out.dim() != 2) out = MatD(2);
        auto d = out.data();
        d[0] = m.a;
        d[1] = m.b;
        d[2] = m.c;
        d[3] = m.d;
    };
    std::visit(
        [&](const auto& c) {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, ConstantCocycle>) {
                out = c.matrix;
            } else if constexpr (std::is_same_v<C, RandomProductCocycle>) {
                out = c.matrices[symbol_index(static_cast<int>(c.matrices.size()))];
            } else if constexpr (std::is_same_v<C, BarycentricCocycle>) {
                assign2(barycentric_generators()[symbol_index(6)]);
            } else if constexpr (std::is_same_v<C, SchrodingerCocycle>) {
                const auto* x = std::get_if<Phase>(&point);
                if (x == nullptr) kind_mismatch("phase");
                assign2(schrodinger_matrix(c.energy, c.coupling, x->value));
            } else {
                const auto* p = std::get_if<TorusPoint>(&point);
                if (p == nullptr) kind_mismatch("torus point");
                assign2(toral_derivative_matrix(c.epsilon, *p));
            }
        },
        spec.variant());
}

MatD generator(const CocycleSpec& spec, const BasePoint& point) {
    MatD out(spec.dimension());
    generator_into(spec, point, out);
    return out;
}

OrbitDriver default_driver(const CocycleSpec& spec, std::uint64_t seed) {
    auto uniform01 = [](std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; };
    switch (spec.kind()) {
        case CocycleKind::Constant: return RotationDriver(0.0, 0.0);
        case CocycleKind::RandomProduct:
        case CocycleKind::Barycentric: return BernoulliDriver::uniform(spec.alphabet_size(), seed);
        case CocycleKind::Schrodinger: {
            const auto& s = std::get<SchrodingerCocycle>(spec.variant());
            return RotationDriver(s.alpha, uniform01(derive_seed(seed, 0)));
        }
        case CocycleKind::ToralDerivative: {
            const auto& t = std::get<ToralDerivativeCocycle>(spec.variant());
            const TorusPoint start{uniform01(derive_seed(seed, 0)), uniform01(derive_seed(seed, 1))};
            return ToralDriver::perturbed(t.epsilon, start);
        }
    }
    throw std::logic_error("default_driver: unknown cocycle kind");
}

ProductState::ProductState(std::size_t dim, NormKind norm)
    : norm_(norm), current_(MatD::identity(dim)), scratch_(dim) {}

double ProductState::log_norm() const {
    const double n = norm_ == NormKind::Spectral ? operator_norm(current_) : frobenius_norm(current_);
    return log_scale_ + std::log(n);
}

double ProductState::advance(const MatD& g) {
    mat_mul_into(scratch_, g, current_);
    const double n = norm_ == NormKind::Spectral ? operator_norm(scratch_) : frobenius_norm(scratch_);
    if (!std::isfinite(n) || !scratch_.finite()) {
        throw NumericalError("product overflowed at step " + std::to_string(step_ + 1));
    }
    if (n == 0.0) throw NumericalError("product vanished at step " + std::to_string(step_ + 1));
    scratch_.scale(1.0 / n);
    std::swap(current_, scratch_);
    const double inc = std::log(n);
    log_scale_ += inc;
    log_abs_det_ += std::log(std::abs(g.determinant()));
    ++step_;
    return inc;
}

ProductState advance(ProductState state, const MatD& g) {
    state.advance(g);
    return state;
}

double row_vector_growth(std::span<const std::uint8_t> symbols, std::array<double, 2> v0) {
    const double n0 = std::hypot(v0[0], v0[1]);
    if (n0 == 0.0) throw std::invalid_argument("row_vector_growth: zero starting vector");
    const auto& gens = barycentric_generators();
    double x = v0[0] / n0, y = v0[1] / n0;
    double total = std::log(n0);
    for (auto it = symbols.rbegin(); it != symbols.rend(); ++it) {
        if (*it < 1 || *it > 6) throw std::invalid_argument("row_vector_growth: symbol out of range");
        const Mat2& m = gens[*it - 1u];
        const double nx = x * m.a + y * m.c;
        const double ny = x * m.b + y * m.d;
        const double len = std::hypot(nx, ny);
        total += std::log(len);
        x = nx / len;
        y = ny / len;
    }
    return total;
}

}  // namespace cocycle

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cocycle/barycentric.hpp"
#include "cocycle/butterfly.hpp"
#include "cocycle/errors.hpp"
#include "cocycle/exponents.hpp"
#include "cocycle/hyperbolicity.hpp"
#include "cocycle/parallel.hpp"
#include "cocycle/report.hpp"

namespace cocycle::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

std::vector<double> parse_numbers(const std::string& s) {
    std::vector<double> v;
    for (const std::string& item : split(s, ',')) v.push_back(to_double(item));
    return v;
}

MatD parse_matrix(const std::string& s) {
    const std::vector<double> v = parse_numbers(s);
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (d == 0 || d * d != v.size()) throw UsageError("matrix needs d*d comma-separated entries: '" + s + "'");
    return MatD(d, v);
}

std::vector<MatD> parse_matrices(const std::string& s) {
    std::vector<MatD> out;
    for (const std::string& item : split(s, ';')) out.push_back(parse_matrix(item));
    return out;
}

// "p/q", "golden" or a real number.
Frequency parse_frequency(const std::string& s) {
    if (s == "golden") return Frequency::real(0.5 * (std::sqrt(5.0) - 1.0));
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const double p = to_double(s.substr(0, slash));
        const double q = to_double(s.substr(slash + 1));
        if (p != std::floor(p) || q != std::floor(q)) throw UsageError("bad fraction: '" + s + "'");
        return Frequency::rational(static_cast<int>(p), static_cast<int>(q));
    }
    return Frequency::real(to_double(s));
}

// Loads `key = value` lines (or a JSON report's "config" object) into the
// options of `app` that were not given on the command line.
void apply_config(CLI::App& app, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::vector<std::pair<std::string, std::string>> items;
    if (trim(text).starts_with("{")) {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const std::exception& e) {
            throw UsageError("config file " + path + " is not valid JSON");
        }
        const Json& c = j.contains("config") ? j["config"] : j;
        for (const auto& [key, value] : c.items()) {
            items.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
        }
    } else {
        std::istringstream lines(text);
        std::string line;
        int number = 0;
        while (std::getline(lines, line)) {
            ++number;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw UsageError(path + ":" + std::to_string(number) + ": expected 'key = value'");
            }
            items.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }
    for (const auto& [key, value] : items) {
        if (key == "subcommand") {
            if (value != app.get_name()) throw UsageError("config file is for subcommand '" + value + "'");
            continue;
        }
        CLI::Option* opt = key == "config" ? nullptr : app.get_option_no_throw("--" + key);
        if (opt == nullptr) throw UsageError("unknown config key '" + key + "'");
        if (opt->count() > 0) continue;  // flags win over the file
        opt->add_result(value);
        opt->run_callback();
    }
}

// Every option of the subcommand with its resolved value.
Json resolved_config(const CLI::App& app) {
    Json c;
    c["subcommand"] = app.get_name();
    for (const CLI::Option* opt : app.get_options()) {
        if (opt->get_lnames().empty()) continue;
        const std::string& name = opt->get_lnames().front();
        if (name == "help" || name == "config" || name == "threads") continue;  // results do not depend on threads
        std::string value = opt->as<std::string>();
        if (opt->get_expected_min() == 0) value = value.empty() ? "false" : value;
        c[name] = value;
    }
    return c;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

struct SpecOptions {
    std::string spec = "barycentric";
    std::string matrix = "2,1,1,1";
    std::string matrices = "2,1,1,1;1,1,1,2";
    std::string probs;
    double energy = 0.0;
    std::string alpha = "golden";
    double coupling = 2.0;
    double epsilon = 0.0;

    void add_to(CLI::App& app) {
        app.add_option("--spec", spec, "cocycle family")
            ->check(CLI::IsMember({"constant", "random-product", "barycentric", "schrodinger", "toral"}));
        app.add_option("--matrix", matrix, "constant cocycle, row-major entries a,b,c,d,...");
        app.add_option("--matrices", matrices, "random product generators separated by ';'");
        app.add_option("--probs", probs, "random product probabilities, comma-separated (default uniform)");
        app.add_option("--energy", energy, "Schrodinger energy E");
        app.add_option("--alpha", alpha, "Schrodinger frequency: real, p/q or 'golden'");
        app.add_option("--coupling", coupling, "Schrodinger coupling");
        app.add_option("--epsilon", epsilon, "toral perturbation size");
    }

    CocycleSpec build() const {
        if (spec == "constant") return CocycleSpec::constant(parse_matrix(matrix));
        if (spec == "random-product") return CocycleSpec::random_product(parse_matrices(matrices));
        if (spec == "barycentric") return CocycleSpec::barycentric();
        if (spec == "schrodinger") return CocycleSpec::schrodinger(energy, parse_frequency(alpha).value, coupling);
        return CocycleSpec::toral_derivative(epsilon);
    }

    OrbitDriver driver(const CocycleSpec& s, std::uint64_t seed) const {
        if (s.kind() == CocycleKind::RandomProduct && !probs.empty()) {
            return BernoulliDriver(parse_numbers(probs), seed);
        }
        return default_driver(s, seed);
    }
};

struct Common {
    std::uint64_t seed = 1;
    std::uint64_t steps = 0;
    unsigned threads = 1;
    std::string out;
    std::string config;

    void add_to(CLI::App& app, std::uint64_t default_steps, bool with_steps = true) {
        steps = default_steps;
        threads = default_thread_count();
        app.add_option("--seed", seed, "master random seed");
        if (with_steps) app.add_option("--steps", steps, "number of cocycle steps");
        app.add_option("--threads", threads, "worker threads (default: COCYCLE_LAB_THREADS or 1)")
            ->check(CLI::Range(1u, 1024u));
        app.add_option("--out", out, "output file");
        app.add_option("--config", config, "file of 'key = value' lines, or an echoed JSON report");
    }
};

void print_estimate(std::ostream& out, const std::string& label, const BarycentricEstimate& e) {
    out << label << " = " << format("%.10f", e.chi) << " (stderr " << format("%.3g", e.standard_error) << ")\n";
}

int run_barycentric(const CLI::App& app, const Common& common, const std::string& triangle,
                    const std::string& trace_path, std::uint64_t stride, std::ostream& out) {
    Triangle seed = Triangle::equilateral();
    if (triangle != "equilateral") {
        const std::vector<double> v = parse_numbers(triangle);
        if (v.size() != 6) throw UsageError("--triangle needs ax,ay,bx,by,cx,cy");
        try {
            seed = Triangle({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]});
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (common.steps < 1000) throw UsageError("--steps must be >= 1000");
    const std::vector<std::uint8_t> labels = barycentric_labels(common.steps, common.seed);
    BarycentricEstimate geometric, cocycle;
    AspectTrace trace;
    trace.stride = stride;
    parallel_for(2, common.threads, [&](std::size_t task) {
        if (task == 0) {
            geometric = chi_geometric(seed, labels, trace_path.empty() ? nullptr : &trace);
        } else {
            cocycle = chi_cocycle(labels);
        }
    });
    print_estimate(out, "chi_geometric", geometric);
    print_estimate(out, "chi_cocycle  ", cocycle);
    out << "difference    = " << format("%.3e", geometric.chi - cocycle.chi) << "\n";

    const Json config = resolved_config(app);
    if (!trace_path.empty()) {
        trace.write_csv(trace_path);
        write_text(trace_path + ".json", render_report(config, {{"trace_csv", trace_path}}));
    }
    if (!common.out.empty()) {
        Json body;
        body["geometric"] = to_json(geometric);
        body["cocycle"] = to_json(cocycle);
        body["difference"] = geometric.chi - cocycle.chi;
        write_text(common.out, render_report(config, body));
    }
    return kExitOk;
}

int run_exponent(const CLI::App& app, const Common& common, const SpecOptions& so, const std::string& norm,
                 std::ostream& out) {
    const CocycleSpec spec = so.build();
    OrbitDriver driver = so.driver(spec, common.seed);
    const ExponentReport r =
        top_exponent(spec, driver, common.steps, norm == "frobenius" ? NormKind::Frobenius : NormKind::Spectral);
    out << "spec = " << spec.name() << "\nsteps = " << r.steps << "\n";
    out << "chi_1 = " << format("%.10f", r.top()) << " (stderr " << format("%.3g", r.top_stderr()) << ")\n";
    if (!common.out.empty()) {
        write_text(common.out, render_report(resolved_config(app), {{"spec", spec.name()}, {"exponent", to_json(r)}}));
    }
    return kExitOk;
}

int run_spectrum(const CLI::App& app, const Common& common, const SpecOptions& so, std::ostream& out) {
    const CocycleSpec spec = so.build();
    OrbitDriver driver = so.driver(spec, common.seed);
    const ExponentReport r = spectrum_qr(spec, driver, common.steps);
    out << "spec = " << spec.name() << "\nsteps = " << r.steps << "\n";
    for (std::size_t i = 0; i < r.exponents.size(); ++i) {
        out << "chi_" << i + 1 << " = " << format("%.10f", r.exponents[i]) << " x" << r.multiplicities[i]
            << " (stderr " << format("%.3g", r.standard_errors[i]) << ")\n";
    }
    out << "sum = " << format("%.3e", r.weighted_sum()) << "\n";
    if (!common.out.empty()) {
        write_text(common.out, render_report(resolved_config(app), {{"spec", spec.name()}, {"spectrum", to_json(r)}}));
    }
    return kExitOk;
}

int run_certify(const CLI::App& app, const Common& common, const SpecOptions& so, const std::string& method,
                const ConeOptions& cone, double theta, std::ostream& out) {
    const CocycleSpec spec = so.build();
    UHCertificate c;
    if (method == "growth") {
        if (spec.kind() != CocycleKind::Schrodinger) throw UsageError("--method growth needs --spec schrodinger");
        const auto& s = std::get<SchrodingerCocycle>(spec.variant());
        c = uniform_growth_test(s.energy, parse_frequency(so.alpha), s.coupling, cone.grid, cone.n_max, theta);
    } else {
        c = cone_certify(spec, cone);
    }
    out << "spec = " << spec.name() << "\nverdict = " << to_string(c.verdict) << "\nwitness_n = " << c.witness_n
        << "\ngrowth_constant = " << format("%.6g", c.growth_constant) << "\n";
    if (!common.out.empty()) {
        write_text(common.out, render_report(resolved_config(app), {{"spec", spec.name()}, {"certificate", to_json(c)}}));
    }
    return kExitOk;
}

struct SliceParams {
    std::string alpha = "golden";
    double e_min = -4.5;
    double e_max = 4.5;
    std::size_t points = 2000;
    std::string method = "auto";
    double coupling = 2.0;
    std::size_t grid = 0;
    std::uint64_t n_max = 1024;
    double theta = 0.05;
    bool measure = false;
    std::string n_max_list = "64,256,1024";
};

int run_slice(const CLI::App& app, const Common& common, const SliceParams& p, std::ostream& out) {
    const Frequency alpha = parse_frequency(p.alpha);
    const Json config = resolved_config(app);
    if (p.measure) {
        MeasureSliceOptions o;
        o.coupling = p.coupling;
        o.e_min = p.e_min;
        o.e_max = p.e_max;
        o.energies = p.points;
        if (p.grid > 0) o.phase_grid = p.grid;
        o.threads = common.threads;
        o.n_max.clear();
        for (double v : parse_numbers(p.n_max_list)) {
            if (v < 1 || v != std::floor(v)) throw UsageError("--nmax-list needs positive integers");
            o.n_max.push_back(static_cast<std::uint64_t>(v));
        }
        const MeasureSliceResult m = measure_slice(alpha, o);
        for (std::size_t k = 0; k < m.n_max.size(); ++k) {
            out << "n_max = " << m.n_max[k] << "  measure = " << format("%.6f", m.measure[k]) << "\n";
        }
        out << "nonincreasing = " << (m.nonincreasing ? "true" : "false") << "\n";
        if (!common.out.empty()) write_text(common.out, render_report(config, to_json(m)));
        return kExitOk;
    }
    SliceMethod method = alpha.is_rational() ? SliceMethod::Oracle : SliceMethod::Growth;
    if (p.method == "growth") method = SliceMethod::Growth;
    if (p.method == "oracle") method = SliceMethod::Oracle;
    if (method == SliceMethod::Oracle && !alpha.is_rational()) {
        throw UsageError("--method oracle needs a rational --alpha p/q");
    }
    SliceOptions o;
    o.coupling = p.coupling;
    o.grid = p.grid;
    o.n_max = p.n_max;
    o.theta = p.theta;
    o.threads = common.threads;
    const std::vector<double> energies = energy_grid(p.e_min, p.e_max, p.points);
    const std::vector<UHVerdict> v = slice_verdicts(alpha, energies, method, o);
    std::ostringstream csv;
    csv << "energy,in_spectrum,verdict\n";
    std::size_t in = 0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        const bool is_in = v[i] != UHVerdict::CertifiedByGrowth && v[i] != UHVerdict::CertifiedHyperbolic;
        in += is_in ? 1 : 0;
        csv << format("%.17g", energies[i]) << ',' << (is_in ? 1 : 0) << ',' << to_string(v[i]) << '\n';
    }
    if (common.out.empty()) {
        out << csv.str();
    } else {
        write_text(common.out, csv.str());
        write_text(common.out + ".json", render_report(config, {{"points", energies.size()}, {"in_spectrum", in}}));
        out << "alpha = " << alpha.label() << "\nin_spectrum = " << in << " / " << energies.size() << "\n";
    }
    return kExitOk;
}

int run_butterfly(const CLI::App& app, const Common& common, ButterflyConfig cfg, std::ostream& out) {
    cfg.threads = common.threads;
    const std::string path = common.out.empty() ? "butterfly.pgm" : common.out;
    const ButterflyRaster raster = scan_butterfly(cfg);
    render_pgm(raster, path);
    std::size_t in = 0;
    for (std::size_t j = 0; j < raster.height(); ++j) {
        for (std::size_t i = 0; i < raster.width(); ++i) in += raster.at(i, j) == Pixel::In ? 1 : 0;
    }
    Json body = to_json(raster);
    body["pgm"] = path;
    body["in_spectrum_pixels"] = in;
    write_text(path + ".json", render_report(resolved_config(app), body));
    out << "wrote " << path << " (" << raster.width() << "x" << raster.height() << ", " << in
        << " in-spectrum pixels)\n";
    return kExitOk;
}

int run_furstenberg(const CLI::App& app, const Common& common, const std::string& preset,
                    const std::string& matrices, const std::string& probs, int depth, double tol,
                    std::ostream& out) {
    std::vector<Mat2> gens;
    if (preset == "barycentric") {
        const auto& g = barycentric_generators();
        gens.assign(g.begin(), g.end());
    } else if (preset == "so2-pair") {
        for (double t : {0.7, 1.9}) gens.push_back({std::cos(t), -std::sin(t), std::sin(t), std::cos(t)});
    } else if (preset == "positive-pair") {
        gens = {{2, 1, 1, 1}, {1, 1, 1, 2}};
    } else {
        for (const MatD& m : parse_matrices(matrices)) {
            if (m.dim() != 2) throw UsageError("furstenberg needs 2x2 matrices");
            gens.push_back(m.to_mat2());
        }
    }
    std::vector<double> p = probs.empty() ? std::vector<double>(gens.size(), 1.0 / static_cast<double>(gens.size()))
                                          : parse_numbers(probs);
    const FurstenbergVerdict v = furstenberg_check(gens, p, common.steps, depth, common.seed, tol);
    out << "noncompact = " << (v.noncompact ? "true" : "false") << " (norm growth "
        << format("%.4g", v.norm_growth) << ")\n";
    out << "no_invariant_lines = " << (v.no_invariant_lines ? "true" : "false") << " (residual "
        << format("%.3g", v.invariant_line_residual) << ")\n";
    out << "chi_plus = " << format("%.10f", v.chi_plus.top()) << " +- " << format("%.3g", v.chi_plus_half_width)
        << "\nhypotheses_hold = " << (v.hypotheses_hold() ? "true" : "false") << "\n";
    if (!common.out.empty()) write_text(common.out, render_report(resolved_config(app), to_json(v)));
    return kExitOk;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lyapunov exponents, hyperbolicity certificates and spectra of matrix cocycles", "cocycle_lab"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1, 1);

    Common common;
    SpecOptions spec_options;

    CLI::App* bary = app.add_subcommand("barycentric", "barycentric subdivision exponent, geometric and cocycle");
    std::string triangle = "equilateral";
    std::string trace_path;
    std::uint64_t trace_stride = 1000;
    CLI::App* expo = app.add_subcommand("exponent", "top Lyapunov exponent of a cocycle");
    std::string norm = "spectral";
    CLI::App* spec = app.add_subcommand("spectrum", "Lyapunov spectrum by QR re-orthonormalization");
    CLI::App* cert = app.add_subcommand("certify", "uniform hyperbolicity certificate");
    std::string cert_method = "cone";
    ConeOptions cone;
    double cert_theta = 0.05;
    CLI::App* slice = app.add_subcommand("slice", "spectrum of one frequency row");
    SliceParams sp;
    CLI::App* fly = app.add_subcommand("butterfly", "Hofstadter butterfly raster (PGM)");
    ButterflyConfig bc;
    CLI::App* furst = app.add_subcommand("furstenberg", "hypotheses and exponent of Furstenberg's theorem");
    std::string preset = "barycentric";
    std::string f_matrices;
    std::string f_probs;
    int depth = 3;
    double f_tol = 0.01;

    // Only the chosen subcommand's options are parsed, so one Common is enough;
    // defaults for --steps differ per subcommand and are set here.
    if (argc >= 2) {
        const std::string name = argv[1];
        if (name == "barycentric") common.add_to(*bary, 10000000);
        if (name == "exponent") common.add_to(*expo, 1000000);
        if (name == "spectrum") common.add_to(*spec, 1000000);
        if (name == "certify") common.add_to(*cert, 0, false);
        if (name == "slice") common.add_to(*slice, 0, false);
        if (name == "butterfly") common.add_to(*fly, 0, false);
        if (name == "furstenberg") common.add_to(*furst, 1000000);
    }

    bary->add_option("--triangle", triangle, "seed triangle ax,ay,bx,by,cx,cy or 'equilateral'");
    bary->add_option("--trace", trace_path, "write a CSV trace (step, log aspect ratio)");
    bary->add_option("--trace-stride", trace_stride, "steps between trace rows")->check(CLI::PositiveNumber);

    spec_options.add_to(*expo);
    expo->add_option("--norm", norm, "matrix norm")->check(CLI::IsMember({"spectral", "frobenius"}));
    spec_options.add_to(*spec);
    spec_options.add_to(*cert);
    cert->add_option("--method", cert_method, "cone field or uniform growth")
        ->check(CLI::IsMember({"cone", "growth"}));
    cert->add_option("--grid", cone.grid, "phase grid size")->check(CLI::PositiveNumber);
    cert->add_option("--nmax", cone.n_max, "largest witness n")->check(CLI::PositiveNumber);
    cert->add_option("--theta", cert_theta, "growth threshold (growth method)");
    cert->add_option("--growth-floor", cone.growth_floor, "growth below which failure counts as evidence");

    slice->add_option("--alpha", sp.alpha, "frequency: p/q, real, or 'golden'");
    slice->add_option("--emin", sp.e_min, "smallest energy");
    slice->add_option("--emax", sp.e_max, "largest energy");
    slice->add_option("--points", sp.points, "number of energies")->check(CLI::Range(2ul, 10000000ul));
    slice->add_option("--method", sp.method, "classification method")
        ->check(CLI::IsMember({"auto", "growth", "oracle"}));
    slice->add_option("--coupling", sp.coupling, "coupling constant");
    slice->add_option("--grid", sp.grid, "phase grid (0: method default)");
    slice->add_option("--nmax", sp.n_max, "growth method horizon")->check(CLI::Range(2ul, 1ul << 30));
    slice->add_option("--theta", sp.theta, "growth threshold");
    slice->add_flag("--measure", sp.measure, "estimate the in-spectrum measure at several resolutions");
    slice->add_option("--nmax-list", sp.n_max_list, "resolutions for --measure, comma-separated");

    fly->add_option("--width", bc.width, "energy pixels")->check(CLI::Range(1ul, 1ul << 16));
    fly->add_option("--height", bc.height, "frequency rows")->check(CLI::Range(1ul, 1ul << 16));
    fly->add_option("--qmax", bc.q_max, "largest denominator of the Farey rows")->check(CLI::Range(1, 10000));
    fly->add_option("--emin", bc.e_min, "smallest energy");
    fly->add_option("--emax", bc.e_max, "largest energy");
    fly->add_flag("--irrational", bc.irrational_rows, "real rows j/(H-1) with the growth method");
    fly->add_option("--coupling", bc.coupling, "coupling constant");
    fly->add_option("--grid", bc.phase_grid, "phase grid (0: method default)");
    fly->add_option("--nmax", bc.n_max, "growth method horizon")->check(CLI::Range(2ul, 1ul << 30));
    fly->add_option("--theta", bc.theta, "growth threshold");

    furst->add_option("--preset", preset, "generator set")
        ->check(CLI::IsMember({"barycentric", "so2-pair", "positive-pair", "custom"}));
    furst->add_option("--matrices", f_matrices, "custom 2x2 generators a,b,c,d separated by ';'");
    furst->add_option("--probs", f_probs, "probabilities, comma-separated (default uniform)");
    furst->add_option("--depth", depth, "word length for candidate invariant lines")->check(CLI::Range(1, 8));
    furst->add_option("--tol", f_tol, "target 95% half-width for the exponent");

    try {
        app.parse(argc, argv);
        CLI::App* chosen = app.get_subcommands().front();
        if (!common.config.empty()) apply_config(*chosen, common.config);
        if (chosen == bary) return run_barycentric(*bary, common, triangle, trace_path, trace_stride, out);
        if (chosen == expo) return run_exponent(*expo, common, spec_options, norm, out);
        if (chosen == spec) return run_spectrum(*spec, common, spec_options, out);
        if (chosen == cert) return run_certify(*cert, common, spec_options, cert_method, cone, cert_theta, out);
        if (chosen == slice) return run_slice(*slice, common, sp, out);
        if (chosen == fly) return run_butterfly(*fly, common, bc, out);
        if (chosen == furst) {
            if (preset == "custom" && f_matrices.empty()) throw UsageError("--preset custom needs --matrices");
            return run_furstenberg(*furst, common, preset, f_matrices, f_probs, depth, f_tol, out);
        }
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace cocycle::cli

// gaclutter: batch front end for correlated G_A^0 clutter simulation.
//
// Subcommands: simulate, corrmap, table, estimate, density.
// Exit codes: 0 success, 2 modeling infeasibility, 3 invalid correlation
// structure, 64 usage, 66 input/output file trouble.

#include "gaclutter/corr_map.hpp"
#include "gaclutter/corr_models.hpp"
#include "gaclutter/errors.hpp"
#include "gaclutter/field_gen.hpp"
#include "gaclutter/ga0.hpp"
#include "gaclutter/raster_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitInfeasible = 2;
constexpr int kExitInvalidMask = 3;
constexpr int kExitUsage = 64;
constexpr int kExitFile = 66;

using namespace gaclutter;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct file_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Either the parametric wedge model "param:a=..,L=..[,eps=..]" or an external
// correlation matrix "matrix:PATH".
struct ModelSpec {
    bool parametric = true;
    corr_models::ParametricCorr param{0.0, 0, 0.001};
    std::string matrix_path;
    std::string text;  // original flag value, echoed for provenance
};

ModelSpec parse_model(const std::string& text) {
    ModelSpec spec;
    spec.text = text;
    if (text.rfind("param:", 0) == 0) {
        spec.parametric = true;
        bool have_a = false, have_l = false;
        std::stringstream ss(text.substr(6));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw usage_error("--model: expected key=value, got '" + item + "'");
            const std::string key = item.substr(0, eq);
            const std::string val = item.substr(eq + 1);
            try {
                if (key == "a") { spec.param.a = std::stod(val); have_a = true; }
                else if (key == "L") { spec.param.L = std::stoi(val); have_l = true; }
                else if (key == "eps") { spec.param.eps = std::stod(val); }
                else throw usage_error("--model: unknown key '" + key + "'");
            } catch (const std::invalid_argument&) {
                throw usage_error("--model: non-numeric value for '" + key + "'");
            }
        }
        if (!have_a || !have_l) throw usage_error("--model param: requires a= and L=");
        if (!spec.param.valid())
            throw usage_error("--model param: requires 0<a<1, even L>=2, eps>0");
        return spec;
    }
    if (text.rfind("matrix:", 0) == 0) {
        spec.parametric = false;
        spec.matrix_path = text.substr(7);
        if (spec.matrix_path.empty()) throw usage_error("--model matrix: requires a path");
        return spec;
    }
    throw usage_error("--model: expected 'param:a=..,L=..[,eps=..]' or 'matrix:PATH'");
}

Matrix base_correlation(const ModelSpec& model, int size) {
    if (model.parametric) return corr_models::materialize_r1(model.param, size);
    std::ifstream in(model.matrix_path, std::ios::binary);
    if (!in) throw file_error("cannot open correlation matrix: " + model.matrix_path);
    corr_models::MatrixCorr mc;
    try {
        mc = corr_models::load_matrix(in);
    } catch (const std::runtime_error& e) {
        throw file_error(std::string("bad correlation matrix file: ") + e.what());
    }
    return corr_models::to_r1_rho(mc, size);
}

void write_raster(const std::string& path, const Matrix& m, const std::string& format) {
    try {
        if (format == "pgm16") {
            double lo = m.data()[0], hi = m.data()[0];
            for (std::size_t i = 1; i < m.size(); ++i) {
                lo = std::min(lo, m.data()[i]);
                hi = std::max(hi, m.data()[i]);
            }
            if (hi <= lo) hi = lo + 1.0;  // constant field still renders
            raster_io::write_pgm16_file(path, m, lo, hi);
        } else {
            raster_io::write_csv_file(path, m);
        }
    } catch (const std::runtime_error& e) {
        throw file_error(e.what());
    }
}

int cmd_simulate(double alpha, double gamma, int looks, int size, const std::string& model_text,
                 std::uint64_t seed, const std::string& out, const std::string& format,
                 const std::string& emit_tau, const std::string& emit_psi, bool strict_mask,
                 int quad_order, int lookup_size) {
    std::cerr << "config: subcommand=simulate alpha=" << alpha << " gamma=" << gamma
              << " looks=" << looks << " size=" << size << " model=" << model_text
              << " seed=" << seed << " out=" << out << " format=" << format
              << " emit-tau=" << (emit_tau.empty() ? "-" : emit_tau)
              << " emit-psi=" << (emit_psi.empty() ? "-" : emit_psi)
              << " mask=" << (strict_mask ? "strict" : "clamp")
              << " quad-order=" << quad_order << " lookup-size=" << lookup_size << "\n";

    const ModelSpec model = parse_model(model_text);
    field_gen::SimulationConfig config;
    config.params = {alpha, gamma, looks};
    config.corr = field_gen::extend_rho(base_correlation(model, size), size);
    config.seed = seed;
    config.quadrature_order = quad_order;
    config.lookup_size = lookup_size;
    config.mask_policy = strict_mask ? field_gen::MaskPolicy::strict
                                     : field_gen::MaskPolicy::clamp_negative;

    const field_gen::SimulationResult result = field_gen::simulate_detailed(config);
    if (result.mask.clamped_count > 0)
        std::cerr << "warning: clamped " << result.mask.clamped_count
                  << " negative spectral value(s), total mass " << result.mask.clamped_mass
                  << "; the achieved correlation deviates from the target"
                  << " (use --strict-mask to reject such structures)\n";
    if (result.quantile_clamps > 0)
        std::cerr << "warning: " << result.quantile_clamps
                  << " pixel(s) clamped at the extreme upper tail\n";

    write_raster(out, result.field.values, format);
    if (!emit_tau.empty()) write_raster(emit_tau, result.tau.tau, "csv");
    if (!emit_psi.empty()) write_raster(emit_psi, result.mask.psi, "csv");
    return 0;
}

int cmd_corrmap(double alpha, int looks, double rho, int quad_order, int lookup_size) {
    std::cerr << "config: subcommand=corrmap alpha=" << alpha << " looks=" << looks
              << " rho=" << rho << " quad-order=" << quad_order
              << " lookup-size=" << lookup_size << "\n";
    const corr_map::CorrMapKey key{alpha, looks};
    const auto& lookup = corr_map::shared_lookup(key, lookup_size, quad_order);
    const double tau = corr_map::tau_of_rho(key, rho, lookup);
    std::printf("%.6f\n", tau);
    return 0;
}

int cmd_table(const std::vector<double>& alphas, const std::vector<int>& looks,
              const std::vector<double>& rhos, int quad_order, int lookup_size) {
    std::cerr << "config: subcommand=table alphas=[";
    for (std::size_t i = 0; i < alphas.size(); ++i) std::cerr << (i ? "," : "") << alphas[i];
    std::cerr << "] looks=[";
    for (std::size_t i = 0; i < looks.size(); ++i) std::cerr << (i ? "," : "") << looks[i];
    std::cerr << "] rhos=[";
    for (std::size_t i = 0; i < rhos.size(); ++i) std::cerr << (i ? "," : "") << rhos[i];
    std::cerr << "] quad-order=" << quad_order << " lookup-size=" << lookup_size << "\n";

    std::cout << "rho";
    for (double a : alphas)
        for (int n : looks)
            std::cout << ",alpha=" << a << " n=" << n;
    std::cout << "\n";
    for (double rho : rhos) {
        std::printf("%.6g", rho);
        for (double a : alphas)
            for (int n : looks) {
                const corr_map::CorrMapKey key{a, n};
                const auto& lookup = corr_map::shared_lookup(key, lookup_size, quad_order);
                std::cout << ',';
                if (lookup.range().contains(rho))
                    std::printf("%.6f", corr_map::tau_of_rho(key, rho, lookup));
            }
        std::cout << "\n";
    }
    return 0;
}

int cmd_estimate(const std::string& input, int window, const std::string& out, bool fit,
                 int looks) {
    std::cerr << "config: subcommand=estimate input=" << input << " window=" << window
              << " out=" << (out.empty() ? "-" : out)
              << " fit-moments=" << (fit ? "yes" : "no") << " looks=" << looks << "\n";
    Matrix image;
    try {
        image = raster_io::read_csv_file(input);
    } catch (const std::runtime_error& e) {
        throw file_error(e.what());
    }

    const corr_models::SampleCorrelation sc = corr_models::pearson_estimate(image, window);
    std::cerr << "estimate: blocks " << sc.row_blocks << " x " << sc.col_blocks << "\n";
    if (!out.empty()) write_raster(out, sc.corr, "csv");

    if (fit) {
        const ga0::GA0Params fitted =
            ga0::fit_moments({image.data(), image.size()}, looks);
        std::cout << "# alpha,gamma\n"
                  << raster_io::format_double(fitted.alpha) << ','
                  << raster_io::format_double(fitted.gamma) << "\n";
    }
    return 0;
}

int cmd_density(double alpha, int looks, bool normalized, double gamma, double zmax, int points,
                bool log_scale) {
    const double scale = normalized ? ga0::normalizing_scale(alpha, looks) : gamma;
    std::cerr << "config: subcommand=density alpha=" << alpha << " looks=" << looks
              << " gamma=" << scale << (normalized ? " (normalized)" : "")
              << " zmax=" << zmax << " points=" << points
              << " log=" << (log_scale ? "yes" : "no") << "\n";
    const ga0::GA0Params params{alpha, scale, looks};
    std::cout << (log_scale ? "# z,lnpdf\n" : "# z,pdf\n");
    for (int i = 0; i < points; ++i) {
        const double z = zmax * i / (points - 1);
        double f = ga0::pdf(params, z);
        if (log_scale) f = std::log(f);
        std::cout << raster_io::format_double(z) << ',' << raster_io::format_double(f) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatially correlated G_A^0 clutter toolkit"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Generate a correlated clutter field");
    double s_alpha{}, s_gamma = 1.0;
    int s_looks = 1, s_size{}, s_quad = 64, s_lookup = 129;
    std::uint64_t s_seed = 0;
    std::string s_model, s_out, s_format = "csv", s_tau, s_psi;
    bool s_strict = false;
    sim->add_option("--alpha", s_alpha, "Roughness (< -1)")->required()
        ->check(CLI::Range(-1e9, -1.0 - 1e-12));
    sim->add_option("--gamma", s_gamma, "Scale (> 0)")->check(CLI::PositiveNumber);
    sim->add_option("--looks", s_looks, "Looks (>= 1)")->check(CLI::PositiveNumber);
    sim->add_option("--size", s_size, "Field side N (even, >= 4)")->required()
        ->check(CLI::Range(4, 1 << 16));
    sim->add_option("--model", s_model,
                    "param:a=..,L=..[,eps=..] or matrix:PATH")->required();
    sim->add_option("--seed", s_seed, "RNG seed");
    sim->add_option("--out", s_out, "Output raster path")->required();
    sim->add_option("--format", s_format, "csv|pgm16")
        ->check(CLI::IsMember({"csv", "pgm16"}));
    sim->add_option("--emit-tau", s_tau, "Also write the Gaussian correlation grid (CSV)");
    sim->add_option("--emit-psi", s_psi, "Also write the spectral mask (CSV)");
    sim->add_flag("--strict-mask", s_strict,
                  "Reject correlation structures with negative spectra instead of clamping");
    sim->add_option("--quad-order", s_quad, "Gauss-Hermite order")->check(CLI::Range(8, 512));
    sim->add_option("--lookup-size", s_lookup, "Transfer-function lookup size")
        ->check(CLI::Range(17, 4097));

    // corrmap
    auto* cm = app.add_subcommand("corrmap", "Invert the correlation transfer function");
    double c_alpha{}, c_rho{};
    int c_looks = 1, c_quad = 64, c_lookup = 129;
    cm->add_option("--alpha", c_alpha, "Roughness (< -1)")->required()
        ->check(CLI::Range(-1e9, -1.0 - 1e-12));
    cm->add_option("--looks", c_looks, "Looks (>= 1)")->check(CLI::PositiveNumber);
    cm->add_option("--rho", c_rho, "Target clutter correlation")->required()
        ->check(CLI::Range(-1.0, 1.0));
    cm->add_option("--quad-order", c_quad, "Gauss-Hermite order")->check(CLI::Range(8, 512));
    cm->add_option("--lookup-size", c_lookup, "Transfer-function lookup size")
        ->check(CLI::Range(17, 4097));

    // table
    auto* tb = app.add_subcommand("table", "Tabulate the inverse transfer function as CSV");
    std::vector<double> t_alphas{-1.5, -3.0, -9.0};
    std::vector<int> t_looks{1, 3, 6, 10};
    std::vector<double> t_rhos;
    int t_quad = 64, t_lookup = 129;
    tb->add_option("--alphas", t_alphas, "Roughness values (< -1)");
    tb->add_option("--looks", t_looks, "Looks values (>= 1)");
    tb->add_option("--rhos", t_rhos, "Clutter correlations (default -0.9..0.9 step 0.1)");
    tb->add_option("--quad-order", t_quad, "Gauss-Hermite order")->check(CLI::Range(8, 512));
    tb->add_option("--lookup-size", t_lookup, "Transfer-function lookup size")
        ->check(CLI::Range(17, 4097));

    // estimate
    auto* est = app.add_subcommand("estimate", "Block-Pearson lag correlation of a raster");
    std::string e_input, e_out;
    int e_window{}, e_looks = 1;
    bool e_fit = false;
    est->add_option("--input", e_input, "Input raster (CSV)")->required();
    est->add_option("--window", e_window, "Lag window n_v")->required()
        ->check(CLI::PositiveNumber);
    est->add_option("--out", e_out, "Output correlation matrix (CSV)");
    est->add_flag("--fit-moments", e_fit, "Also fit (alpha, gamma) by moment matching");
    est->add_option("--looks", e_looks, "Looks for moment fitting")->check(CLI::PositiveNumber);

    // density
    auto* den = app.add_subcommand("density", "Emit the amplitude density as CSV");
    double d_alpha{}, d_gamma = 1.0, d_zmax = 5.0;
    int d_looks = 1, d_points = 200;
    bool d_norm = false, d_log = false;
    den->add_option("--alpha", d_alpha, "Roughness (< 0)")->required()
        ->check(CLI::Range(-1e9, -1e-12));
    den->add_option("--looks", d_looks, "Looks (>= 1)")->check(CLI::PositiveNumber);
    auto* gamma_opt = den->add_option("--gamma", d_gamma, "Scale (> 0)")
                          ->check(CLI::PositiveNumber);
    den->add_flag("--normalized", d_norm, "Use the unit-mean scale gamma_{alpha,n}")
        ->excludes(gamma_opt);
    den->add_option("--zmax", d_zmax, "Upper end of the z grid")->check(CLI::PositiveNumber);
    den->add_option("--points", d_points, "Grid points")->check(CLI::Range(2, 1 << 24));
    den->add_flag("--log", d_log, "Emit (z, ln pdf) instead of (z, pdf)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(s_alpha, s_gamma, s_looks, s_size, s_model, s_seed, s_out,
                                s_format, s_tau, s_psi, s_strict, s_quad, s_lookup);
        if (cm->parsed()) return cmd_corrmap(c_alpha, c_looks, c_rho, c_quad, c_lookup);
        if (tb->parsed()) {
            if (t_rhos.empty())
                for (int i = -9; i <= 9; ++i) t_rhos.push_back(i / 10.0);
            return cmd_table(t_alphas, t_looks, t_rhos, t_quad, t_lookup);
        }
        if (est->parsed()) return cmd_estimate(e_input, e_window, e_out, e_fit, e_looks);
        if (den->parsed())
            return cmd_density(d_alpha, d_looks, d_norm, d_gamma, d_zmax, d_points, d_log);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const file_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFile;
    } catch (const infeasible_correlation_error& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "feasible range: [" << e.rho_min << ", " << e.rho_max << "]\n";
        return kExitInfeasible;
    } catch (const no_moment_solution_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const invalid_correlation_structure_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidMask;
    } catch (const std::domain_error& e) {
        // Degenerate data (constant raster, unattainable moments) is a
        // modeling infeasibility, not a usage mistake.
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "luq/density.hpp"
#include "luq/errors.hpp"
#include "luq/io.hpp"
#include "luq/phase_search.hpp"
#include "luq/realign.hpp"
#include "luq/spectral.hpp"
#include "luq/verdict.hpp"

namespace {

constexpr int kExitEquivalent = 0;
constexpr int kExitNotEquivalent = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;
constexpr int kExitBadFile = 65;

struct DimsFlag {
    std::optional<std::pair<luq::Index, luq::Index>> value;
};

bool parse_dims(const std::string& text, DimsFlag& out) {
    const auto x = text.find('x');
    if (x == std::string::npos) return false;
    try {
        const long m = std::stol(text.substr(0, x));
        const long n = std::stol(text.substr(x + 1));
        if (m < 2 || n < 2) return false;
        out.value = {m, n};
        return true;
    } catch (...) {
        return false;
    }
}

/// File dims field, overridden by an explicit --dims flag.
std::pair<luq::Index, luq::Index> resolve_dims(const luq::MatrixFile& file, const DimsFlag& flag) {
    if (flag.value) return *flag.value;
    if (file.dims) return *file.dims;
    throw luq::DimensionMismatch("subsystem dims unknown: pass --dims MxN or add a dims field");
}

luq::BipartiteDensity load_density(const std::string& path, const DimsFlag& flag,
                                   const luq::Tolerances& tols) {
    const luq::MatrixFile file = luq::load_matrix(path);
    const auto [m, n] = resolve_dims(file, flag);
    return luq::validate_density(file.mat, m, n, tols);
}

int map_error(const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    if (dynamic_cast<const luq::DimensionMismatch*>(&e)) return kExitUsage;
    return kExitBadFile;
}

int run_check(const std::string& rho_path, const std::string& rhop_path, const DimsFlag& dims,
              const luq::DecideConfig& cfg, const std::string& report_path) {
    try {
        const auto t0 = std::chrono::steady_clock::now();
        const luq::BipartiteDensity rho = load_density(rho_path, dims, cfg.validation);
        const luq::BipartiteDensity rhop = load_density(rhop_path, dims, cfg.validation);
        const luq::Verdict verdict = luq::decide(rho, rhop, cfg);
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();

        std::printf("verdict: %s\n", luq::verdict_class_name(verdict).c_str());
        if (verdict.is_equivalent()) {
            std::printf("verification_residual: %.17g\n",
                        verdict.equivalent().verification_residual);
        } else if (verdict.is_not_equivalent()) {
            const auto& cert = verdict.not_equivalent().certificate;
            if (std::holds_alternative<luq::SpectrumMismatch>(cert))
                std::printf("certificate: spectrum_mismatch\n");
            else if (std::holds_alternative<luq::ReducedSpectrumMismatch>(cert))
                std::printf("certificate: reduced_spectrum_mismatch\n");
            else
                std::printf("certificate: structural_infeasibility\n");
        } else {
            std::printf("reason: %s\n",
                        verdict.inconclusive().reason == luq::InconclusiveReason::Degenerate
                            ? "degenerate"
                            : "search_exhausted");
            std::printf("best_f: %.17g\n", verdict.inconclusive().best_f);
        }

        if (!report_path.empty()) {
            luq::ReportInputs report{verdict, rho.dim_a, rho.dim_b, cfg, ms};
            luq::save_report(report_path, report);
        }
        if (verdict.is_equivalent()) return kExitEquivalent;
        if (verdict.is_not_equivalent()) return kExitNotEquivalent;
        return kExitInconclusive;
    } catch (const std::exception& e) {
        return map_error(e);
    }
}

int run_realign(const std::string& path, const DimsFlag& dims, const std::string& out_path) {
    try {
        const luq::MatrixFile file = luq::load_matrix(path);
        const auto [m, n] = resolve_dims(file, dims);
        const luq::RealignedMatrix r = luq::realign(file.mat, m, n);
        if (!out_path.empty()) {
            luq::save_matrix(out_path, r.mat);
        } else {
            std::printf("{\"rows\": %ld, \"cols\": %ld, \"data\": [", long(r.mat.rows()),
                        long(r.mat.cols()));
            for (luq::Index i = 0; i < r.mat.size(); ++i) {
                const luq::Complex v = r.mat(i / r.mat.cols(), i % r.mat.cols());
                std::printf("%s[%.17g, %.17g]", i ? ", " : "", v.real(), v.imag());
            }
            std::printf("]}\n");
        }
        return 0;
    } catch (const std::exception& e) {
        return map_error(e);
    }
}

int run_spectrum(const std::string& path, const DimsFlag& dims, double gap_tol) {
    try {
        const luq::BipartiteDensity rho = load_density(path, dims, {});
        const luq::SpectralDecomposition s = luq::spectral_decompose(rho);
        for (luq::Index i = 0; i < s.eigenvalues.size(); ++i)
            std::printf("%.17g\n", s.eigenvalues(i));
        const luq::DegeneracyProfile profile = luq::degeneracy_profile(s.eigenvalues, gap_tol);
        std::printf("clusters:");
        for (const auto& c : profile.multiplicities)
            std::printf(" %ldx%.12g", long(c.multiplicity), c.representative);
        std::printf("\nnondegenerate: %s\n", profile.is_nondegenerate ? "true" : "false");
        return 0;
    } catch (const std::exception& e) {
        return map_error(e);
    }
}

int run_gen_pair(const std::string& dims_text, std::uint64_t seed, const std::string& prefix) {
    DimsFlag dims;
    if (!parse_dims(dims_text, dims)) {
        std::fprintf(stderr, "error: --dims must look like MxN with M, N >= 2\n");
        return kExitUsage;
    }
    try {
        const auto [m, n] = *dims.value;
        const luq::LuPair pair = luq::gen_lu_pair(m, n, seed);
        luq::save_matrix(prefix + "_rho.json", pair.rho.mat, {{m, n}});
        luq::save_matrix(prefix + "_rhop.json", pair.rho_prime.mat, {{m, n}});
        luq::save_matrix(prefix + "_u1.json", pair.u1);
        luq::save_matrix(prefix + "_u2.json", pair.u2);
        std::printf("wrote %s_{rho,rhop,u1,u2}.json\n", prefix.c_str());
        return 0;
    } catch (const std::exception& e) {
        return map_error(e);
    }
}

int run_gen_edge(double a, double b, double c, const std::string& out) {
    try {
        const luq::EdgeState edge = luq::edge_state(a, b, c);
        luq::save_matrix(out, edge.density.mat, {{2, 4}});
        std::printf("nondegenerate: %s\n", edge.nondegenerate ? "true" : "false");
        return 0;
    } catch (const luq::NonPositiveParameter& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        return map_error(e);
    }
}

int run_verify(const std::string& rho_path, const std::string& rhop_path,
               const std::string& u1_path, const std::string& u2_path, const DimsFlag& dims,
               double verify_tol) {
    try {
        const luq::BipartiteDensity rho = load_density(rho_path, dims, {});
        const luq::BipartiteDensity rhop = load_density(rhop_path, dims, {});
        luq::FactorPair pair;
        pair.u1 = luq::load_matrix(u1_path).mat;
        pair.u2 = luq::load_matrix(u2_path).mat;
        const double residual = luq::verify_witness(rho, rhop, pair);
        std::printf("residual: %.17g\n", residual);
        return residual <= verify_tol ? 0 : 1;
    } catch (const std::exception& e) {
        return map_error(e);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local-unitary equivalence toolkit"};
    app.require_subcommand(1);

    luq::DecideConfig cfg;
    std::string rho_path, rhop_path, u1_path, u2_path, report_path, out_path, prefix;
    std::string dims_text;
    double edge_a = 0, edge_b = 0, edge_c = 0;

    const auto add_dims = [&](CLI::App* cmd, bool required = false) {
        auto* opt = cmd->add_option("--dims", dims_text, "subsystem dims as MxN");
        if (required) opt->required();
    };

    CLI::App* check = app.add_subcommand("check", "decide local-unitary equivalence");
    check->add_option("rho", rho_path)->required();
    check->add_option("rho_prime", rhop_path)->required();
    add_dims(check);
    check->add_option("--report", report_path, "write a JSON report");
    check->add_option("--spectra-tol", cfg.spectra_tol);
    check->add_option("--reduced-tol", cfg.reduced_spectra_tol);
    check->add_option("--gap-tol", cfg.gap_tol);
    check->add_option("--rank-tol", cfg.search.rank_tol);
    check->add_option("--verify-tol", cfg.verify_tol);
    check->add_option("--restarts", cfg.search.restarts);
    check->add_option("--max-iters", cfg.search.max_iters);
    check->add_option("--seed", cfg.search.seed);

    CLI::App* realign_cmd = app.add_subcommand("realign", "print the realigned matrix");
    realign_cmd->add_option("matrix", rho_path)->required();
    add_dims(realign_cmd);
    realign_cmd->add_option("--out", out_path, "write to a file instead of stdout");

    CLI::App* spectrum = app.add_subcommand("spectrum", "print eigenvalues and degeneracy");
    spectrum->add_option("matrix", rho_path)->required();
    add_dims(spectrum);
    spectrum->add_option("--gap-tol", cfg.gap_tol);

    CLI::App* gen_pair = app.add_subcommand("gen-pair", "write a seeded equivalent pair");
    gen_pair->add_option("--dims", dims_text)->required();
    gen_pair->add_option("--seed", cfg.search.seed);
    gen_pair->add_option("--out-prefix", prefix)->required();

    CLI::App* gen_edge = app.add_subcommand("gen-edge", "write a corner-diagonal 2x4 state");
    gen_edge->add_option("--a", edge_a)->required();
    gen_edge->add_option("--b", edge_b)->required();
    gen_edge->add_option("--c", edge_c)->required();
    gen_edge->add_option("--out", out_path)->required();

    CLI::App* verify = app.add_subcommand("verify", "check a witness pair against two states");
    verify->add_option("rho", rho_path)->required();
    verify->add_option("rho_prime", rhop_path)->required();
    verify->add_option("u1", u1_path)->required();
    verify->add_option("u2", u2_path)->required();
    add_dims(verify);
    verify->add_option("--verify-tol", cfg.verify_tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    DimsFlag dims;
    if (!dims_text.empty() && !parse_dims(dims_text, dims)) {
        std::fprintf(stderr, "error: --dims must look like MxN with M, N >= 2\n");
        return kExitUsage;
    }

    if (check->parsed()) return run_check(rho_path, rhop_path, dims, cfg, report_path);
    if (realign_cmd->parsed()) return run_realign(rho_path, dims, out_path);
    if (spectrum->parsed()) return run_spectrum(rho_path, dims, cfg.gap_tol);
    if (gen_pair->parsed()) return run_gen_pair(dims_text, cfg.search.seed, prefix);
    if (gen_edge->parsed()) return run_gen_edge(edge_a, edge_b, edge_c, out_path);
    if (verify->parsed())
        return run_verify(rho_path, rhop_path, u1_path, u2_path, dims, cfg.verify_tol);
    return kExitUsage;
}

#include "luq/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "luq/errors.hpp"

namespace luq {
namespace {

using nlohmann::json;

json matrix_to_json(const CMatrix& m, std::optional<std::pair<Index, Index>> dims) {
    json data = json::array();
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c)
            data.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    json doc = {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
    if (dims) doc["dims"] = json::array({dims->first, dims->second});
    return doc;
}

CMatrix matrix_from_json(const json& doc, std::optional<std::pair<Index, Index>>* dims) {
    if (!doc.is_object()) throw Error("matrix document must be a JSON object");
    for (const char* field : {"rows", "cols", "data"})
        if (!doc.contains(field)) throw Error(std::string("missing field \"") + field + "\"");
    if (!doc["rows"].is_number_integer() || !doc["cols"].is_number_integer())
        throw Error("fields \"rows\" and \"cols\" must be integers");
    const Index rows = doc["rows"].get<Index>();
    const Index cols = doc["cols"].get<Index>();
    if (rows <= 0 || cols <= 0) throw Error("fields \"rows\" and \"cols\" must be positive");
    const json& data = doc["data"];
    if (!data.is_array() || data.size() != static_cast<size_t>(rows * cols))
        throw Error("field \"data\" must hold rows*cols [re, im] pairs");

    CMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) {
            const json& cell = data[static_cast<size_t>(r * cols + c)];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number())
                throw Error("field \"data\" entry " + std::to_string(r * cols + c) +
                            " is not a [re, im] pair");
            const double re = cell[0].get<double>();
            const double im = cell[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im))
                throw Error("field \"data\" entry " + std::to_string(r * cols + c) +
                            " is not finite");
            m(r, c) = Complex(re, im);
        }

    if (dims) {
        *dims = std::nullopt;
        if (doc.contains("dims")) {
            const json& d = doc["dims"];
            if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() ||
                !d[1].is_number_integer())
                throw Error("field \"dims\" must be [M, N]");
            const Index da = d[0].get<Index>(), db = d[1].get<Index>();
            if (da < 2 || db < 2) throw Error("field \"dims\" entries must be at least 2");
            *dims = std::make_pair(da, db);
        }
    }
    return m;
}

void atomic_write(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp + " for writing");
        out << text << '\n';
        if (!out.good()) throw Error("write to " + tmp + " failed");
    }
    std::filesystem::rename(tmp, path);
}

const char* subsystem_name(Subsystem s) {
    switch (s) {
        case Subsystem::A: return "A";
        case Subsystem::B: return "B";
        case Subsystem::C: return "C";
    }
    return "?";
}

}  // namespace

MatrixFile load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error("malformed JSON in " + path + ": " + e.what());
    }
    MatrixFile out;
    out.mat = matrix_from_json(doc, &out.dims);
    return out;
}

void save_matrix(const std::string& path, const CMatrix& m,
                 std::optional<std::pair<Index, Index>> dims) {
    atomic_write(path, matrix_to_json(m, dims).dump(2));
}

std::string verdict_class_name(const Verdict& v) {
    if (v.is_equivalent()) return "equivalent";
    if (v.is_not_equivalent()) return "not_equivalent";
    return "inconclusive";
}

void save_report(const std::string& path, const ReportInputs& in) {
    json doc;
    doc["verdict"] = verdict_class_name(in.verdict);
    doc["dims"] = json::array({in.dim_a, in.dim_b});
    if (std::isfinite(in.verdict.f_best)) doc["f_best"] = in.verdict.f_best;
    doc["evaluations"] = in.verdict.evaluations;
    doc["tolerances"] = {{"spectra_tol", in.cfg.spectra_tol},
                         {"reduced_spectra_tol", in.cfg.reduced_spectra_tol},
                         {"gap_tol", in.cfg.gap_tol},
                         {"rank_tol", in.cfg.search.rank_tol},
                         {"verify_tol", in.cfg.verify_tol}};
    doc["restarts"] = in.cfg.search.restarts;
    doc["max_iters"] = in.cfg.search.max_iters;
    doc["seed"] = in.cfg.search.seed;
    doc["timing_ms"] = in.elapsed_ms;

    if (in.verdict.is_equivalent()) {
        const auto& eq = in.verdict.equivalent();
        doc["witness"] = {{"u1", matrix_to_json(eq.witness.u1, std::nullopt)},
                          {"u2", matrix_to_json(eq.witness.u2, std::nullopt)},
                          {"verification_residual", eq.verification_residual},
                          {"decomposition_residual", eq.witness.decomposition_residual},
                          {"unitarity_defect", eq.witness.unitarity_defect}};
    } else if (in.verdict.is_not_equivalent()) {
        const Certificate& cert = in.verdict.not_equivalent().certificate;
        json c;
        if (const auto* sm = std::get_if<SpectrumMismatch>(&cert)) {
            c = {{"type", "spectrum_mismatch"},
                 {"index", sm->index},
                 {"lambda", sm->lambda},
                 {"lambda_prime", sm->lambda_prime}};
        } else if (const auto* rm = std::get_if<ReducedSpectrumMismatch>(&cert)) {
            c = {{"type", "reduced_spectrum_mismatch"},
                 {"subsystem", subsystem_name(rm->subsystem)},
                 {"index", rm->index},
                 {"value", rm->value},
                 {"value_prime", rm->value_prime}};
        } else if (const auto* si = std::get_if<StructuralInfeasibility>(&cert)) {
            c = {{"type", "structural_infeasibility"}, {"row", si->row}, {"col", si->col}};
        }
        doc["certificate"] = std::move(c);
    } else {
        const auto& inc = in.verdict.inconclusive();
        doc["inconclusive"] = {
            {"reason",
             inc.reason == InconclusiveReason::Degenerate ? "degenerate" : "search_exhausted"},
            {"best_f", inc.best_f}};
    }
    atomic_write(path, doc.dump(2));
}

}  // namespace luq

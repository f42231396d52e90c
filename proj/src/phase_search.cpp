#include "luq/phase_search.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "luq/errors.hpp"
#include "luq/rng.hpp"

namespace luq {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double x) {
    double w = x - kTwoPi * std::floor(x / kTwoPi);
    if (w >= kTwoPi) w = 0.0;
    return w;
}

double sigma1_of(const CMatrix& m) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

struct GradResult {
    RVector grad;
    bool degenerate = false;
    double f = 0.0;
};

GradResult grad_impl(const CosetTensor& ct, const PhaseVector& theta) {
    const CMatrix vt = coset_matrix(ct, theta);
    Eigen::JacobiSVD<CMatrix> svd(vt, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double s1 = svd.singularValues()(0);
    const double s2 = svd.singularValues().size() > 1 ? svd.singularValues()(1) : 0.0;
    const CVector u = svd.matrixU().col(0);
    const CVector v = svd.matrixV().col(0);

    GradResult out;
    out.degenerate = (s1 - s2) <= 1e-12;
    out.f = std::max(0.0, static_cast<double>(ct.dim()) - s1 * s1);
    out.grad.resize(ct.dim());
    for (Index k = 0; k < ct.dim(); ++k) {
        const Complex w = std::exp(Complex(0.0, theta.theta(k))) *
                          (u.adjoint() * ct.terms[static_cast<size_t>(k)] * v)(0, 0);
        out.grad(k) = 2.0 * s1 * w.imag();
    }
    return out;
}

}  // namespace

PhaseVector gauge_fix(const RVector& theta) {
    PhaseVector out;
    out.theta.resize(theta.size());
    for (Index k = 0; k < theta.size(); ++k) out.theta(k) = wrap_angle(theta(k) - theta(0));
    out.theta(0) = 0.0;
    return out;
}

CosetTensor build_coset_tensor(const CMatrix& x, const CMatrix& y, Index dim_a, Index dim_b) {
    const Index n = dim_a * dim_b;
    if (x.rows() != n || x.cols() != n || y.rows() != n || y.cols() != n)
        throw DimensionMismatch("coset tensor: bases must be " + std::to_string(n) + "x" +
                                std::to_string(n));
    const double tol = 1e-10 * static_cast<double>(n);
    if (unitarity_defect(x) > tol || unitarity_defect(y) > tol)
        throw NotUnitary("coset tensor: bases must be unitary");

    CosetTensor ct;
    ct.dim_a = dim_a;
    ct.dim_b = dim_b;
    ct.terms.reserve(static_cast<size_t>(n));
    for (Index k = 0; k < n; ++k) {
        const CMatrix rank_one = x.col(k) * y.col(k).adjoint();
        ct.terms.push_back(realign(rank_one, dim_a, dim_b).mat);
    }
    return ct;
}

CMatrix coset_matrix(const CosetTensor& ct, const PhaseVector& theta) {
    if (theta.theta.size() != ct.dim())
        throw DimensionMismatch("phase vector length does not match coset tensor");
    CMatrix out = CMatrix::Zero(ct.dim_a * ct.dim_a, ct.dim_b * ct.dim_b);
    for (Index k = 0; k < ct.dim(); ++k)
        out += std::exp(Complex(0.0, theta.theta(k))) * ct.terms[static_cast<size_t>(k)];
    return out;
}

double objective(const CosetTensor& ct, const PhaseVector& theta) {
    const double s1 = sigma1_of(coset_matrix(ct, theta));
    return std::max(0.0, static_cast<double>(ct.dim()) - s1 * s1);
}

RVector gradient(const CosetTensor& ct, const PhaseVector& theta) {
    GradResult r = grad_impl(ct, theta);
    if (r.degenerate)
        throw DegenerateSingularValue("top singular values coincide; gradient undefined");
    return r.grad;
}

StructuralReport structural_check(const CosetTensor& ct) {
    const Index rows = ct.dim_a * ct.dim_a;
    const Index cols = ct.dim_b * ct.dim_b;

    double scale = 0.0;
    for (const auto& t : ct.terms) scale = std::max(scale, t.cwiseAbs().maxCoeff());
    const double zero_tol = 1e-10 * scale;

    Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> cls(rows, cols);
    std::vector<bool> row_nonzero(static_cast<size_t>(rows), false);
    std::vector<bool> col_nonzero(static_cast<size_t>(cols), false);

    for (Index p = 0; p < rows; ++p)
        for (Index q = 0; q < cols; ++q) {
            double sum = 0.0, top = 0.0;
            for (const auto& t : ct.terms) {
                const double a = std::abs(t(p, q));
                sum += a;
                top = std::max(top, a);
            }
            EntryClass c = EntryClass::Undetermined;
            if (sum <= zero_tol * static_cast<double>(ct.dim()))
                c = EntryClass::IdenticallyZero;
            else if (top - (sum - top) > zero_tol) {
                // one coefficient dominates the rest: nonzero for every theta
                c = EntryClass::CertainlyNonzero;
                row_nonzero[static_cast<size_t>(p)] = true;
                col_nonzero[static_cast<size_t>(q)] = true;
            }
            cls(p, q) = static_cast<int>(c);
        }

    StructuralReport report;
    for (Index p = 0; p < rows && report.feasible; ++p) {
        if (!row_nonzero[static_cast<size_t>(p)]) continue;
        for (Index q = 0; q < cols; ++q) {
            if (!col_nonzero[static_cast<size_t>(q)]) continue;
            if (cls(p, q) == static_cast<int>(EntryClass::IdenticallyZero)) {
                // a rank-one matrix is supported on supp(u) x supp(v)
                report.feasible = false;
                report.certificate = {p, q};
                break;
            }
        }
    }
    return report;
}

SearchResult search_phases(const CosetTensor& ct, const SearchConfig& cfg) {
    const Index n = ct.dim();
    const Rng master(cfg.seed);

    SearchResult result;
    result.f_best = std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < std::max(1, cfg.restarts); ++restart) {
        PhaseVector theta;
        theta.theta = RVector::Zero(n);
        if (restart > 0) {
            Rng stream = master.split(static_cast<std::uint64_t>(restart));
            for (Index k = 1; k < n; ++k) theta.theta(k) = stream.angle();
        }

        double f = objective(ct, theta);
        ++result.evaluations;
        double step = cfg.step_init;

        for (int iter = 0; iter < cfg.max_iters && f > cfg.f_stop; ++iter) {
            GradResult gr = grad_impl(ct, theta);
            RVector g = gr.grad;
            g(0) = 0.0;  // gauge: theta[0] stays fixed
            const double gn2 = g.squaredNorm();
            if (std::sqrt(gn2) <= cfg.grad_tol) break;

            double t = gr.degenerate ? 0.5 * step : step;
            bool accepted = false;
            for (int bt = 0; bt < cfg.max_backtracks; ++bt) {
                PhaseVector trial;
                trial.theta.resize(n);
                trial.theta(0) = 0.0;
                for (Index k = 1; k < n; ++k) trial.theta(k) = wrap_angle(theta.theta(k) - t * g(k));
                const double ft = objective(ct, trial);
                ++result.evaluations;
                if (ft <= f - cfg.armijo * t * gn2) {
                    theta = std::move(trial);
                    f = ft;
                    accepted = true;
                    break;
                }
                t *= cfg.backtrack;
            }
            if (!accepted) break;
            step = std::min(t * 2.0, cfg.step_max);
        }

        if (f < result.f_best) {
            result.f_best = f;
            result.best = theta;
            result.best_restart = restart;
        }
        // merge rule: the first restart reaching f_stop wins outright, so a
        // parallel implementation agrees with this serial early exit
        if (f <= cfg.f_stop) break;
    }
    return result;
}

}  // namespace luq

// eigensolver.cpp: Dense and Lanczos Hermitian eigensolvers.

#include "dicke/eigensolver.hpp"

#include "dicke/errors.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace dicke {

namespace {

double residual_of(const CMatrix& h, const Eigen::VectorXd& values, const CMatrix& vectors) {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        const CVector r = h * vectors.col(k) - values[k] * vectors.col(k);
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
    return worst;
}

template <typename Scalar>
struct LanczosRun {
    Eigen::VectorXd values;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
    bool converged{false};
};

template <typename Scalar>
LanczosRun<Scalar> lanczos(const Eigen::SparseMatrix<Scalar>& a, int k, const LanczosOptions& opt) {
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index dim = a.rows();
    const int max_it = static_cast<int>(
        std::min<Eigen::Index>(dim, opt.max_iterations > 0 ? opt.max_iterations : 600));

    Mat basis(dim, max_it);
    std::vector<double> alpha, beta;
    // Seeded random start: overlap ~ 1/sqrt(dim) with every eigenvector, so a
    // displaced ground state cannot be missed by construction.
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Vec v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = Scalar(unit(rng));
    v.normalize();
    const int min_it = static_cast<int>(std::min<Eigen::Index>(dim, 40));

    LanczosRun<Scalar> out;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    for (int j = 0; j < max_it; ++j) {
        basis.col(j) = v;
        Vec w = a * v;
        const double aj = std::real(v.dot(w));
        alpha.push_back(aj);
        // full reorthogonalization, twice
        for (int pass = 0; pass < 2; ++pass) {
            const Vec proj = basis.leftCols(j + 1).adjoint() * w;
            w -= basis.leftCols(j + 1) * proj;
        }
        const double bj = w.norm();

        const int m = j + 1;
        const bool check = (m >= k) && ((m >= min_it && m % 8 == 0) || m == max_it || bj < 1e-13);
        if (check) {
            Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
            Eigen::VectorXd e = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1))
                                      : Eigen::VectorXd();
            if (m == 1) {
                out.values = d;
                out.vectors = basis.leftCols(1);
                out.converged = bj < 1e-13;
            } else {
                // Unscaled input can exhaust the implicit QR iterations, and on
                // failure Eigen leaves the eigenvalues unsorted.
                const double scale = std::max({d.cwiseAbs().maxCoeff(), e.cwiseAbs().maxCoeff(), 1e-300});
                tri.computeFromTridiagonal(d / scale, e / scale, Eigen::ComputeEigenvectors);
                if (tri.info() != Eigen::Success) throw NumericalError("lanczos: tridiagonal eigensolver failed");
                bool ok = true;
                for (int i = 0; i < k; ++i) {
                    const double theta = scale * tri.eigenvalues()[i];
                    const double est = bj * std::abs(tri.eigenvectors()(m - 1, i));
                    if (est > opt.tolerance * std::max(1.0, std::abs(theta))) ok = false;
                }
                if (ok || bj < 1e-13 || m == max_it) {
                    out.values = scale * tri.eigenvalues().head(k);
                    out.vectors = basis.leftCols(m) * tri.eigenvectors().leftCols(k).template cast<Scalar>();
                    out.converged = ok || bj < 1e-13;
                }
            }
            if (out.values.size() > 0 && (out.converged || m == max_it)) break;
        }
        if (bj < 1e-13) break;
        beta.push_back(bj);
        v = w / bj;
    }
    return out;
}

}  // namespace

double SpectrumResult::spectral_range() const {
    if (eigenvalues.size() == 0) return 0.0;
    return eigenvalues[eigenvalues.size() - 1] - eigenvalues[0];
}

void fix_phases(CMatrix& vectors) {
    for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
        Eigen::Index imax = 0;
        vectors.col(k).cwiseAbs().maxCoeff(&imax);
        const cplx c = vectors(imax, k);
        if (std::abs(c) > 0.0) vectors.col(k) *= std::conj(c) / std::abs(c);
        vectors(imax, k) = std::abs(vectors(imax, k));
    }
}

SpectrumResult diagonalize(const OperatorMatrix& h, std::optional<int> k) {
    if (!h.hermitian()) throw ValidationError("diagonalize: operator is not flagged Hermitian");
    const Eigen::Index dim = h.dim();
    if (dim == 0) throw ValidationError("diagonalize: empty operator");
    if (k && (*k < 1 || *k > dim)) throw ValidationError("diagonalize: k outside 1..dim");
    const Eigen::Index keep = k ? *k : dim;

    SpectrumResult out;
    if (h.is_real()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.entries().real());
        if (es.info() != Eigen::Success) throw NumericalError("diagonalize: solver did not converge");
        out.eigenvalues = es.eigenvalues().head(keep);
        out.eigenvectors = es.eigenvectors().leftCols(keep).cast<cplx>();
    } else {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(h.entries());
        if (es.info() != Eigen::Success) throw NumericalError("diagonalize: solver did not converge");
        out.eigenvalues = es.eigenvalues().head(keep);
        out.eigenvectors = es.eigenvectors().leftCols(keep);
    }
    fix_phases(out.eigenvectors);
    out.residual = residual_of(h.entries(), out.eigenvalues, out.eigenvectors);
    return out;
}

SpectrumResult lowest_eigenpairs(const OperatorMatrix& h, int k, LanczosOptions options) {
    if (!h.hermitian()) throw ValidationError("lowest_eigenpairs: operator is not flagged Hermitian");
    if (k < 1 || k > h.dim()) throw ValidationError("lowest_eigenpairs: k outside 1..dim");
    // Small problems go straight to the dense solver.
    if (h.dim() <= 64) return diagonalize(h, k);

    SpectrumResult out;
    bool converged = false;
    if (h.is_real()) {
        const Eigen::SparseMatrix<double> sp = h.entries().real().sparseView();
        auto run = lanczos<double>(sp, k, options);
        converged = run.converged;
        out.eigenvalues = run.values;
        out.eigenvectors = run.vectors.cast<cplx>();
    } else {
        const Eigen::SparseMatrix<cplx> sp = h.entries().sparseView();
        auto run = lanczos<cplx>(sp, k, options);
        converged = run.converged;
        out.eigenvalues = run.values;
        out.eigenvectors = run.vectors;
    }
    if (!converged || out.eigenvalues.size() < k) {
        throw NumericalError("lowest_eigenpairs: Lanczos did not converge for k = " + std::to_string(k));
    }
    for (Eigen::Index c = 0; c < out.eigenvectors.cols(); ++c) out.eigenvectors.col(c).normalize();
    fix_phases(out.eigenvectors);
    out.residual = residual_of(h.entries(), out.eigenvalues, out.eigenvectors);
    return out;
}

}  // namespace dicke

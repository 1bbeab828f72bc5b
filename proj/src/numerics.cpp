#include "ecs/numerics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <lapacke.h>

namespace ecs {

namespace {

// zheevd on a copy of the (column-major) matrix; values ascending.
void zheevd_inplace(Matrix& a, RealVector& w, bool want_vectors) {
    const auto n = static_cast<lapack_int>(a.rows());
    w.resize(n);
    const lapack_int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'L', n,
        reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data());
    if (info != 0)
        throw EigenSolverError("zheevd failed to converge (info=" + std::to_string(info) + ")");
}

}  // namespace

HermitianMatrix::HermitianMatrix(Matrix m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("HermitianMatrix: matrix must be square");
    input_asymmetry_ = (m - m.adjoint()).cwiseAbs().maxCoeff();
    mat_ = 0.5 * (m + m.adjoint());
}

EigenSystem eigh(const HermitianMatrix& h) {
    Matrix a = h.mat();
    EigenSystem sys;
    zheevd_inplace(a, sys.values, true);
    sys.vectors = std::move(a);
    return sys;
}

RealVector eigh_values(const HermitianMatrix& h) {
    Matrix a = h.mat();
    RealVector w;
    zheevd_inplace(a, w, false);
    return w;
}

HermitianMatrix hermitian_sqrt(const HermitianMatrix& h, double clamp_tol,
                               double* min_clamped) {
    EigenSystem sys = eigh(h);
    const int n = h.dim();
    const double lmax = std::max(sys.values.maxCoeff(), 0.0);
    double clamped = 0.0;
    RealVector roots(n);
    for (int i = 0; i < n; ++i) {
        double v = sys.values[i];
        if (v < 0.0) {
            if (v < -clamp_tol * lmax)
                throw std::invalid_argument(
                    "hermitian_sqrt: matrix not PSD within tolerance (eigenvalue " +
                    std::to_string(v) + ")");
            clamped = std::min(clamped, v);
            v = 0.0;
        }
        roots[i] = std::sqrt(v);
    }
    if (min_clamped) *min_clamped = clamped;
    Matrix root = sys.vectors * roots.asDiagonal() * sys.vectors.adjoint();
    return HermitianMatrix(std::move(root));
}

double trace_norm_hermitian(const HermitianMatrix& h) {
    return eigh_values(h).cwiseAbs().sum();
}

HermitianMatrix partial_transpose_first(const HermitianMatrix& rho, int m) {
    const int dim = rho.dim();
    if (m < 1 || dim != m * m)
        throw std::invalid_argument("partial_transpose_first: dim must equal m^2");
    Matrix out(dim, dim);
    const Matrix& in = rho.mat();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            out.block(i * m, j * m, m, m) = in.block(j * m, i * m, m, m);
    return HermitianMatrix(std::move(out));
}

Vector circulant_eigenvalues(const Vector& first_row) {
    const auto n = first_row.size();
    Vector out(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex acc(0.0, 0.0);
        for (Eigen::Index s = 0; s < n; ++s) {
            const double phase = -2.0 * std::numbers::pi * static_cast<double>(j) *
                                 static_cast<double>(s) / static_cast<double>(n);
            acc += first_row[s] * Complex(std::cos(phase), std::sin(phase));
        }
        out[j] = acc;
    }
    return out;
}

}  // namespace ecs

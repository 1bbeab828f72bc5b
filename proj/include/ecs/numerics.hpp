#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "ecs/model_params.hpp"

namespace ecs {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Square complex matrix forced Hermitian on construction, H -> (H + H^dag)/2.
// The asymmetry of the raw input is kept as a diagnostic.
class HermitianMatrix {
public:
    explicit HermitianMatrix(Matrix m);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& mat() const { return mat_; }
    double input_asymmetry() const { return input_asymmetry_; }

private:
    Matrix mat_;
    double input_asymmetry_ = 0.0;
};

struct EigenSystem {
    RealVector values;  // ascending
    Matrix vectors;     // orthonormal columns, H = V diag(values) V^dag
};

// Thrown when the LAPACK eigensolver fails to converge.
class EigenSolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

EigenSystem eigh(const HermitianMatrix& h);

// Eigenvalues only (ascending); same backend as eigh, skips the vectors.
RealVector eigh_values(const HermitianMatrix& h);

// Principal square root via eigendecomposition. Eigenvalues in
// [-clamp_tol*lmax, 0) are clamped to zero; anything more negative is
// rejected as a non-PSD input. If min_clamped is given it receives the
// most negative clamped eigenvalue (0 when nothing was clamped).
HermitianMatrix hermitian_sqrt(const HermitianMatrix& h, double clamp_tol = 1e-10,
                               double* min_clamped = nullptr);

// Sum of absolute eigenvalues.
double trace_norm_hermitian(const HermitianMatrix& h);

// Partial transpose over the first factor of an m x m bipartite system.
// Composite index row = i*m + k (0-based) for |x_i> (x) |x_k>; the output
// satisfies out[(i,k),(j,l)] = in[(j,k),(i,l)].
HermitianMatrix partial_transpose_first(const HermitianMatrix& rho, int m);

// DFT of the first row; for a circulant Hermitian matrix this reproduces
// the spectrum as a multiset.
Vector circulant_eigenvalues(const Vector& first_row);

}  // namespace ecs

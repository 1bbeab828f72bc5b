#include "ecs/fock_oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ecs {

namespace {

double log_factorial(int n) { return std::lgamma(n + 1.0); }

double binom_sqrt(int n, int k) {
    return std::exp(0.5 * (log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

// Branch coefficients valid down to m = 1 (the oracle's trivial case).
std::vector<Complex> branch_coefficients(int m) {
    if (m == 1) return {Complex(1.0, 0.0)};
    return coefficients(m).f;
}

Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a[i] * b;
    return out;
}

}  // namespace

int default_n_max(double alpha2) {
    return static_cast<int>(std::ceil(2.0 * alpha2 + 8.0 * std::sqrt(2.0 * alpha2) + 10.0));
}

FockVector coherent_fock(Complex alpha, int n_max, double tail_tol) {
    if (n_max < 0) throw std::invalid_argument("coherent_fock: n_max must be >= 0");
    FockVector out{n_max, Vector::Zero(n_max + 1)};
    const double a2 = std::norm(alpha);
    if (a2 == 0.0) {
        out.amplitudes[0] = 1.0;
        return out;
    }
    const double la = 0.5 * std::log(a2);
    const double theta = std::arg(alpha);
    for (int n = 0; n <= n_max; ++n) {
        const double mag = std::exp(-0.5 * a2 + n * la - 0.5 * log_factorial(n));
        out.amplitudes[n] = mag * Complex(std::cos(n * theta), std::sin(n * theta));
    }
    const double tail = 1.0 - out.amplitudes.squaredNorm();
    if (tail > tail_tol)
        throw TruncationError("coherent_fock: truncation tail " + std::to_string(tail) +
                              " exceeds budget at n_max=" + std::to_string(n_max));
    return out;
}

TwoModeFockVector assemble_state_closed_form(Complex alpha, int m, int n_max,
                                             double tail_tol) {
    if (m < 1) throw std::invalid_argument("assemble_state_closed_form: m must be >= 1");
    const std::vector<Complex> f = branch_coefficients(m);
    const int dim = n_max + 1;

    std::vector<Vector> branches;
    branches.reserve(m);
    for (int q = 1; q <= m; ++q) {
        const double t = -2.0 * std::numbers::pi * q / m;
        branches.push_back(
            coherent_fock(alpha * Complex(std::cos(t), std::sin(t)), n_max, tail_tol)
                .amplitudes);
    }

    Vector psi = Vector::Zero(dim * dim);
    for (int q = 0; q < m; ++q) psi += f[q] * kron(branches[q], branches[q]);

    // Norm from the analytic branch Gram matrix, not from the truncated vector.
    Complex norm2(0.0, 0.0);
    for (int p = 1; p <= m; ++p)
        for (int q = 1; q <= m; ++q) {
            const double tp = -2.0 * std::numbers::pi * p / m;
            const double tq = -2.0 * std::numbers::pi * q / m;
            const Complex ov = coherent_overlap(alpha * Complex(std::cos(tp), std::sin(tp)),
                                                alpha * Complex(std::cos(tq), std::sin(tq)));
            norm2 += std::conj(f[p - 1]) * f[q - 1] * ov * ov;
        }
    psi /= std::sqrt(norm2.real());
    return TwoModeFockVector{n_max, std::move(psi)};
}

TwoModeFockVector assemble_state_closed_form(const SystemParams& params, int n_max,
                                             double tail_tol) {
    params.validate();
    return assemble_state_closed_form(params.alpha, params.m, n_max, tail_tol);
}

TwoModeFockVector kerr_beamsplitter_state(Complex alpha, int m, int n_max,
                                          double tail_tol) {
    if (m < 1) throw std::invalid_argument("kerr_beamsplitter_state: m must be >= 1");
    const int dim = n_max + 1;
    Vector v = coherent_fock(std::sqrt(2.0) * alpha, n_max, tail_tol).amplitudes;

    // Number-dependent Kerr phase. For even m the linear-in-n part is fixed
    // so that the branch states land on the e^{-2 pi i q/m} grid.
    for (int n = 0; n <= n_max; ++n) {
        const double num = (m % 2 == 1) ? static_cast<double>(n) * (n - 1)
                                        : static_cast<double>(n) * n;
        const double phase = -std::numbers::pi * num / m;
        v[n] *= Complex(std::cos(phase), std::sin(phase));
    }

    // 50/50 splitter with vacuum: |n,0> -> 2^{-n/2} sum_k sqrt(C(n,k)) |k,n-k>.
    Vector psi = Vector::Zero(dim * dim);
    for (int n = 0; n <= n_max; ++n) {
        if (v[n] == Complex(0.0, 0.0)) continue;
        const double scale = std::exp2(-0.5 * n);
        for (int k = 0; k <= n; ++k)
            psi[k * dim + (n - k)] += v[n] * binom_sqrt(n, k) * scale;
    }
    return TwoModeFockVector{n_max, std::move(psi)};
}

TwoModeFockVector kerr_beamsplitter_state(const SystemParams& params, int n_max,
                                          double tail_tol) {
    params.validate();
    return kerr_beamsplitter_state(params.alpha, params.m, n_max, tail_tol);
}

TwoModeDensity density_from_state(const TwoModeFockVector& state) {
    return TwoModeDensity{state.n_max,
                          state.amplitudes * state.amplitudes.adjoint()};
}

namespace {

// <n-j|K_j|n> for n = 0..dim-1; zero below n = j.
std::vector<double> kraus_weights(int j, double eta, int dim) {
    std::vector<double> w(dim, 0.0);
    if (eta == 1.0 && j > 0) return w;
    const double le = std::log(eta);
    const double ll = (eta < 1.0) ? std::log(1.0 - eta) : 0.0;
    for (int n = j; n < dim; ++n)
        w[n] = std::exp(0.5 * (log_factorial(n) - log_factorial(j) - log_factorial(n - j) +
                               j * ll + (n - j) * le));
    return w;
}

}  // namespace

Matrix damping_kraus(int j, double eta, int dim) {
    if (j < 0 || j >= dim) throw std::invalid_argument("damping_kraus: j out of range");
    if (!(eta > 0.0) || eta > 1.0)
        throw std::invalid_argument("damping_kraus: eta must lie in (0, 1]");
    Matrix k = Matrix::Zero(dim, dim);
    const std::vector<double> w = kraus_weights(j, eta, dim);
    for (int n = j; n < dim; ++n) k(n - j, n) = w[n];
    return k;
}

namespace {

// Damp the first (slow) mode: the Kraus operators are banded, so each j
// contributes shifted, reweighted blocks of the fast-mode submatrices.
Matrix damp_first_mode(const Matrix& rho, double eta, int dim) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (int j = 0; j < dim; ++j) {
        if (eta == 1.0 && j > 0) break;
        const std::vector<double> w = kraus_weights(j, eta, dim);
        for (int n1 = 0; n1 + j < dim; ++n1)
            for (int m1 = 0; m1 + j < dim; ++m1)
                out.block(n1 * dim, m1 * dim, dim, dim) +=
                    w[n1 + j] * w[m1 + j] *
                    rho.block((n1 + j) * dim, (m1 + j) * dim, dim, dim);
    }
    return out;
}

Matrix swap_modes(const Matrix& rho, int dim) {
    Matrix out(rho.rows(), rho.cols());
    for (int n1 = 0; n1 < dim; ++n1)
        for (int n2 = 0; n2 < dim; ++n2)
            for (int m1 = 0; m1 < dim; ++m1)
                for (int m2 = 0; m2 < dim; ++m2)
                    out(n2 * dim + n1, m2 * dim + m1) = rho(n1 * dim + n2, m1 * dim + m2);
    return out;
}

}  // namespace

TwoModeDensity loss_channel(const TwoModeDensity& rho, double eta) {
    if (!(eta > 0.0) || eta > 1.0)
        throw std::invalid_argument("loss_channel: eta must lie in (0, 1]");
    const int dim = rho.n_max + 1;
    if (rho.entries.rows() != dim * dim)
        throw std::invalid_argument("loss_channel: entries size does not match n_max");
    if (eta == 1.0) return rho;
    Matrix stage1 = damp_first_mode(rho.entries, eta, dim);
    Matrix stage2 = swap_modes(damp_first_mode(swap_modes(stage1, dim), eta, dim), dim);
    return TwoModeDensity{rho.n_max, std::move(stage2)};
}

double log_negativity_fock(const TwoModeDensity& rho) {
    const int dim = rho.n_max + 1;
    // Independent partial transpose: this module must not share index
    // conventions with the Gram-route kernel it certifies.
    Matrix pt(dim * dim, dim * dim);
    for (int n1 = 0; n1 < dim; ++n1)
        for (int n2 = 0; n2 < dim; ++n2)
            for (int m1 = 0; m1 < dim; ++m1)
                for (int m2 = 0; m2 < dim; ++m2)
                    pt(n1 * dim + n2, m1 * dim + m2) =
                        rho.entries(m1 * dim + n2, n1 * dim + m2);
    const RealVector w = eigh_values(HermitianMatrix(std::move(pt)));
    double tn = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) tn += std::abs(w[i]);
    return std::max(std::log2(tn), 0.0);
}

RealVector number_marginal(const TwoModeFockVector& state, int mode) {
    const int dim = state.n_max + 1;
    RealVector p = RealVector::Zero(dim);
    for (int n1 = 0; n1 < dim; ++n1)
        for (int n2 = 0; n2 < dim; ++n2) {
            const double w = std::norm(state.amplitudes[n1 * dim + n2]);
            p[mode == 0 ? n1 : n2] += w;
        }
    return p;
}

double mean_photons(const TwoModeDensity& rho, int mode) {
    const int dim = rho.n_max + 1;
    double acc = 0.0;
    for (int n1 = 0; n1 < dim; ++n1)
        for (int n2 = 0; n2 < dim; ++n2)
            acc += (mode == 0 ? n1 : n2) * rho.entries(n1 * dim + n2, n1 * dim + n2).real();
    return acc;
}

}  // namespace ecs

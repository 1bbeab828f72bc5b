#pragma once

#include <complex>
#include <random>

#include "ecs/numerics.hpp"

// Shared generators for the randomized property suites.
namespace ecs::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
    Complex complex_normal() { return {normal(), normal()}; }

    Matrix random_matrix(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = complex_normal();
        return m;
    }

    HermitianMatrix random_hermitian(int n) { return HermitianMatrix(random_matrix(n)); }

    // B B^dag, positive semidefinite by construction.
    HermitianMatrix random_psd(int n) {
        Matrix b = random_matrix(n);
        return HermitianMatrix(Matrix(b * b.adjoint()));
    }

    // Random density matrix: PSD with unit trace.
    Matrix random_density(int n) {
        Matrix p = random_psd(n).mat();
        return p / p.trace().real();
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace ecs::testing

#pragma once

#include <complex>
#include <vector>

namespace ecs {

using Complex = std::complex<double>;

// Physical configuration of one experiment: coherent amplitude alpha
// (|alpha|^2 = mean photons per mode), branch count m, and surviving
// photon fraction eta.
struct SystemParams {
    Complex alpha{0.0, 0.0};
    int m = 2;
    double eta = 1.0;

    double alpha2() const { return std::norm(alpha); }
    double epsilon() const { return 1.0 - eta; }
    double tau() const { return 1.0 / static_cast<double>(m); }  // metadata only

    // Throws std::invalid_argument on m < 2 or eta outside (0, 1].
    void validate() const;
    static SystemParams make(Complex alpha, int m, double eta);
};

struct DerivedScalars {
    double delta = 1.0;    // squared overlap of adjacent branch states
    double delta_n = 0.0;  // mean photons absorbed per mode
};

// Branch phase coefficients f_q, q = 1..m, each of modulus 1/sqrt(m).
struct PhaseCoefficients {
    std::vector<Complex> f;
    int m() const { return static_cast<int>(f.size()); }
};

// <a|b> = exp(conj(a) b - |a|^2/2 - |b|^2/2)
Complex coherent_overlap(Complex a, Complex b);

// |exp(2 pi i k/m) - 1|^2 = 4 sin^2(pi k/m)
double chord_sq(int m, int k);

// f_q = exp(i pi q(q+1)/m)/sqrt(m) for odd m, exp(i pi q^2/m)/sqrt(m) for even m.
PhaseCoefficients coefficients(int m);

double delta_from_alpha2(double alpha2, int m);
double delta_from_alpha(const SystemParams& params);

// Exact inversion: |alpha|^2 = log(1/delta) / |exp(2 pi i/m) - 1|^2.
// The large-m form log(1/delta) m^2/(4 pi^2) is a cross-check only.
double alpha_from_delta(double delta, int m);

// Delta N = (1 - eta) |alpha|^2
double photons_absorbed(const SystemParams& params);

DerivedScalars derived_scalars(const SystemParams& params);

}  // namespace ecs

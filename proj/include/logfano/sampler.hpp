#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "logfano/errors.hpp"

namespace logfano {

using Vec3 = std::array<double, 3>;

struct SphereConfig {
    std::vector<Vec3> points;

    int N() const { return static_cast<int>(points.size()); }
    void validate(double unit_tol = 1e-12) const;
};

// Pairwise energy -(kN)^{-1} sum_{i<j} log(|x_i - x_j|^2 / 4), k = (N-1)/V,
// V = 2 - 2w. Coincident points carry infinite energy, reported as +inf.
double energy(const SphereConfig& c, double w);
double energy_serial(const SphereConfig& c, double w); // reference kernel

Vec3 moment_vector(const SphereConfig& c);                // (1/N) sum x_i
double moment_scalar(const SphereConfig& c, double w);    // (2/(VN)) sum (x_i)_3, w != 0
// sup-norm of the moment (3 components for w = 0, one for w != 0)
double slab_norm(const SphereConfig& c, double w);

// Single-particle density (|x-p0|^2 |x-p1|^2 / 16)^{-w} at the poles p = -+e3;
// identically 1 for w = 0. Unnormalized.
double log_rho_w(const Vec3& x, double w);

struct SamplerParams {
    int N = 2;
    double beta = 0.0;
    double w = 0.0;           // 0 means the unweighted model
    double eps = -1.0;        // slab half-width; <= 0 selects min(0.05, 1/N)
    double step_sigma = -1.0; // tangent proposal scale; <= 0 auto-tunes in burn-in
    long long n_steps = 100000;
    long long burn_in = 10000;
    uint64_t seed = 1;

    double eps_effective() const;
    void validate() const; // includes the integrability bound beta > -gamma^(N),G
};

struct Observables {
    Vec3 mean_moment{};          // chain average of the moment vector (w = 0 sense)
    double quadrupole_dev = 0.0; // Frobenius norm of the chain-averaged (1/N) sum x x^T - I/3
    double mean_energy = 0.0;
    double var_energy = 0.0;
    double acceptance_rate = 0.0;
    // Chain averages of (1/N) sum_i Y_lm(x_i) for l <= 4, m in [0, l]
    // (negative m follow by conjugation).
    std::map<std::pair<int, int>, std::complex<double>> harmonic_means;
};

// Fixed number of contiguous post-burn-in batches kept for block bootstrap.
inline constexpr int kChainBatches = 200;

struct BatchSeries {
    std::vector<Vec3> moment;                              // per-batch means
    std::vector<std::array<double, 6>> quad;               // xx,yy,zz,xy,xz,yz of Q - I/3
    std::vector<double> energy;
    std::vector<std::vector<std::complex<double>>> harmonics; // flattened (l,m), l<=4, m<=l
};

struct ChainResult {
    Observables obs;
    BatchSeries batches;
    double tuned_sigma = 0.0;
    long long retained_steps = 0;
    double max_slab_norm_seen = 0.0; // over retained states; < eps by construction
    SamplerParams params;
};

// Metropolis-Hastings with single-site tangent-Gaussian proposals renormalized
// to the sphere; hard slab constraint ||m_N||_inf < eps on every retained
// state; reproducible per seed.
ChainResult run_chain(const SamplerParams& params);

// Bootstrap standard error of the mean of batch means (fixed seed).
double bootstrap_se(const std::vector<double>& batch_means, int resamples = 2000,
                    uint64_t seed = 12345);

struct LogZEstimate {
    double logZ = 0.0;
    double stderr_ = 0.0;
    double z0_log = 0.0;      // log slab hit-rate at beta = 0
    double z0_hit_rate = 0.0;
};

// Thermodynamic integration from beta = 0: log Z(beta) = log Z(0)
// - N int_0^beta <E> dbeta' (trapezoid over the grid; each expectation from
// run_chain). log Z(0) is the exact acceptance-rejection slab hit count under
// i.i.d. rho_w-distributed points.
LogZEstimate estimate_logZ(const SamplerParams& params, const std::vector<double>& beta_grid,
                           long long z0_samples = 2000000);

// Plain Monte Carlo of the same quantity for small N.
struct DirectMcResult {
    double logZ = 0.0;
    double stderr_ = 0.0;
    long long samples = 0;
};
DirectMcResult direct_mc_logZ(int N, double w, double beta, double eps, long long samples,
                              uint64_t seed);

// (1/k) sum_{j=0}^{2k} log ||z^j||^2 with ||z^j||^2 = pi j! (2k-j)! / (2k+1)!:
// the additive conversion between monomial-basis and orthonormal-basis log Z.
double basis_change_logfactor(int two_k);
double fs_monomial_norm2(int j, int two_k); // ||z^j||^2 closed form

// Complex spherical harmonic Y_lm on the unit sphere, l <= 4, 0 <= m <= l.
std::complex<double> sph_harm(int l, int m, const Vec3& x);

// min(1, exp(log_ratio)): the acceptance rule shared with the toy-chain tests.
double metropolis_acceptance(double log_target_ratio);

// Closed-form gamma^(N),G lower bound used for the integrability check
// (PGL2 for w = 0, the two-point case otherwise), as a double.
double reduced_threshold_bound(int N, double w);

} // namespace logfano

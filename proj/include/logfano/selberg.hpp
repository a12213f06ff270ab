#pragma once

#include <vector>

#include "logfano/errors.hpp"
#include "logfano/gammafn.hpp"

namespace logfano {

// Three Selberg exponents with |V| = 2 - w1 - w2 - w3 > 0.
struct WeightTriple {
    double w1 = 0.0, w2 = 0.0, w3 = 0.0;

    double absV() const { return 2.0 - w1 - w2 - w3; }
    // Strict weight condition w_i < sum of the others (plus |V| > 0).
    bool weight_condition() const;
    // Closure: w_i <= sum of the others, including (0,0,0).
    bool weight_condition_closed() const;
    void validate_basic() const; // w_i in [0,1), |V| > 0
};

// log of the N-point partition function via the Gamma-product formula
// (N >= 2) or the two-point complex beta value (N = 1, symmetric in w1,w2).
// Everything runs in log space with positivity of each factor checked.
double selberg_logZ(const WeightTriple& w, long long N);
double selberg_logZ_serial(const WeightTriple& w, long long N); // reference kernel

// The N = 1 value log(pi l(1-w1) l(1-w2) l(w1+w2-1)); needs w1,w2 in (0,1),
// w1 + w2 > 1.
double beta_logZ1(double w1, double w2);

// Large-N limit of -log Z / N: explicit integral formula, adaptive quadrature
// with log-singular endpoints, absolute tolerance 1e-10.
double inf_mabuchi(const WeightTriple& w);

struct ConvergenceRow {
    long long N;
    double logZ_over_N;
    double target;
    double error;
    double error_times_N_over_logN;
};

enum class Schedule { SymmetricWN, FixedW };

// SymmetricWN: w_N = (2/(N+2))(1,1,1) against the (0,0,0) limit target;
// FixedW: the given strict-condition triple against its own limit.
std::vector<ConvergenceRow> convergence_run(Schedule schedule, const WeightTriple& fixed_w,
                                            const std::vector<long long>& Ns);

enum class ArithmeticModel { P1Z, P1ZDw };

// Arithmetic partition functions as Gamma products:
//   P1Z   (N >= 4): the (N-3)-point product at weights (2/(N-1))(1,1,1)
//                   (N = 4 via the two-point beta value);
//   P1ZDw (N >= 3): the (N-1)-point product at (w, (1-w)/(N-1), w).
double arithmetic_logZ(long long N, ArithmeticModel model, double w = 0.0);
// Sign-tracked variant for the meromorphic continuation in w (P1ZDw only).
SignedLog arithmetic_logZ_signed(long long N, ArithmeticModel model, double w = 0.0);

struct McEstimate {
    double estimate_logZ;
    double stderr_log;
    long long samples;
    double rejected_fraction; // non-finite integrand draws, must stay tiny
};

// Independent Monte Carlo evaluation of the defining integral for N <= 3.
// Coordinates are drawn from a mixture of the uniform sphere measure (via
// inverse stereographic projection) and power densities at the three marked
// points, so the variance stays finite for the singular exponents.
McEstimate mc_oracle(const WeightTriple& w, int N, long long samples, uint64_t seed);
McEstimate mc_oracle_serial(const WeightTriple& w, int N, long long samples, uint64_t seed);

} // namespace logfano

#include "logfano/selberg.hpp"

#include <array>
#include <cmath>
#include <random>
#include <string>

#include "logfano/mcstats.hpp"
#include "logfano/parallel.hpp"
#include "logfano/quadrature.hpp"

namespace logfano {

namespace {
const double kLogPi = std::log(M_PI);
}

bool WeightTriple::weight_condition() const {
    return absV() > 0.0 && w1 < w2 + w3 && w2 < w1 + w3 && w3 < w1 + w2;
}

bool WeightTriple::weight_condition_closed() const {
    return absV() > 0.0 && w1 <= w2 + w3 && w2 <= w1 + w3 && w3 <= w1 + w2;
}

void WeightTriple::validate_basic() const {
    for (double w : {w1, w2, w3})
        if (!(w >= 0.0 && w < 1.0))
            throw ValidationError("weight " + std::to_string(w) + " outside [0,1)");
    if (!(absV() > 0.0))
        throw ValidationError("|V| = 2 - w1 - w2 - w3 must be positive");
}

double beta_logZ1(double w1, double w2) {
    if (!(w1 > 0.0 && w1 < 1.0 && w2 > 0.0 && w2 < 1.0))
        throw NumericDomainError("beta value needs w1, w2 in (0,1)");
    if (!(w1 + w2 > 1.0))
        throw NumericDomainError("beta value needs w1 + w2 > 1 (integrability at infinity)");
    // Symmetric in w1 <-> w2; the asymmetric printed variant is rejected by the
    // Monte Carlo oracle (see tests).
    return kLogPi + log_l_pos(1.0 - w1) + log_l_pos(1.0 - w2) + log_l_pos(w1 + w2 - 1.0);
}

namespace {

struct DfParams {
    double s;       // (|V|/2)/(N-1)
    double w[3];
};

DfParams df_validate(const WeightTriple& w, long long N) {
    w.validate_basic();
    if (N < 2) throw ValidationError("Gamma-product formula needs N >= 2");
    DfParams p{0.5 * w.absV() / static_cast<double>(N - 1), {w.w1, w.w2, w.w3}};
    if (!(static_cast<double>(N) * p.s < 1.0))
        throw NumericDomainError("factor -l(-(j+1)s) leaves its domain at j = " +
                                 std::to_string(N - 1) + " (N|V|/2/(N-1) >= 1)");
    for (int k = 0; k < 3; ++k) {
        if (!(p.w[k] > 0.0))
            throw NumericDomainError("factor l(w_k + j s) hits the Gamma pole at (j,k) = (0," +
                                     std::to_string(k + 1) + ") (zero weight)");
        if (!(p.w[k] + static_cast<double>(N - 1) * p.s < 1.0))
            throw NumericDomainError("factor l(w_k + j s) leaves (0,1) at (j,k) = (" +
                                     std::to_string(N - 1) + "," + std::to_string(k + 1) + ")");
    }
    return p;
}

template <typename Summer>
double selberg_logZ_impl(const WeightTriple& w, long long N, Summer&& sum) {
    if (N == 1) return beta_logZ1(w.w1, w.w2);
    DfParams p = df_validate(w, N);
    double body = sum(N, [&](long long j) {
        double t = log_neg_l((static_cast<double>(j) + 1.0) * p.s);
        for (int k = 0; k < 3; ++k) t -= log_l_pos(p.w[k] + static_cast<double>(j) * p.s);
        return t;
    });
    return static_cast<double>(N) * kLogPi + std::lgamma(static_cast<double>(N) + 1.0) -
           static_cast<double>(N) * log_neg_l(p.s) + body;
}

} // namespace

double selberg_logZ(const WeightTriple& w, long long N) {
    return selberg_logZ_impl(w, N, [](long long n, auto&& f) { return blocked_sum(n, f); });
}

double selberg_logZ_serial(const WeightTriple& w, long long N) {
    return selberg_logZ_impl(w, N, [](long long n, auto&& f) { return blocked_sum_serial(n, f); });
}

double inf_mabuchi(const WeightTriple& w) {
    w.validate_basic();
    const double eps = 1e-14;
    const double h = 0.5 * w.absV();
    const double ws[3] = {w.w1, w.w2, w.w3};
    for (double wk : ws)
        if (wk + h > 1.0 + 1e-12)
            throw ValidationError("limit formula needs the closed weight condition (w_k + |V|/2 <= 1)");

    const double tol = 2.5e-11;
    // Integral of log(-l(x)) over [-h, 0]: log singularity at 0, and at -1
    // when h = 1 (the zero-weight case).
    double A = integrate_endpoint_log([](double x) { return log_neg_l(-x); }, -h, 0.0, tol,
                                      h > 1.0 - eps, true);
    double B = 0.0;
    for (double wk : ws) {
        double hi = std::min(wk + h, 1.0); // clamp roundoff at the closed boundary
        B += integrate_endpoint_log([](double x) { return log_l_pos(x); }, wk, hi, tol,
                                    wk < eps, hi > 1.0 - eps);
    }
    // Orientation pinned by the product formula itself (which the Monte Carlo
    // oracle verifies): -(1/N) log Z_N -> -(log(|V|/2) + log pi - 1 + ...).
    // The first factor alone contributes -(log pi + log(|V|/2) - 1) and the
    // Riemann sums of the remaining factors give -(2/|V|)(A - B).
    return -(std::log(h) + kLogPi - 1.0 + (2.0 / w.absV()) * (A - B));
}

std::vector<ConvergenceRow> convergence_run(Schedule schedule, const WeightTriple& fixed_w,
                                            const std::vector<long long>& Ns) {
    if (Ns.empty()) throw ValidationError("empty N list");
    for (long long N : Ns)
        if (N < 2) throw ValidationError("convergence rows need N >= 2");

    double target;
    if (schedule == Schedule::FixedW) {
        if (!fixed_w.weight_condition())
            throw ValidationError("fixed-w schedule needs the strict weight condition");
        target = inf_mabuchi(fixed_w);
    } else {
        target = inf_mabuchi(WeightTriple{0.0, 0.0, 0.0});
    }

    std::vector<ConvergenceRow> rows;
    rows.reserve(Ns.size());
    for (long long N : Ns) {
        WeightTriple w = fixed_w;
        if (schedule == Schedule::SymmetricWN) {
            double v = 2.0 / (static_cast<double>(N) + 2.0);
            w = WeightTriple{v, v, v};
        }
        double lz = selberg_logZ(w, N);
        ConvergenceRow row;
        row.N = N;
        row.logZ_over_N = lz / static_cast<double>(N);
        row.target = target;
        row.error = std::fabs(-row.logZ_over_N - target);
        row.error_times_N_over_logN =
            row.error * static_cast<double>(N) / std::log(static_cast<double>(N));
        rows.push_back(row);
    }
    return rows;
}

SignedLog arithmetic_logZ_signed(long long N, ArithmeticModel model, double w) {
    if (model == ArithmeticModel::P1Z) {
        if (N < 4) throw ValidationError("P1Z product needs N >= 4");
        if (N == 4) return {+1, beta_logZ1(2.0 / 3.0, 2.0 / 3.0)};
        const long long M = N - 3;               // points in the reduced product
        const double s = 1.0 / static_cast<double>(N - 1);
        double total = static_cast<double>(M) * kLogPi +
                       std::lgamma(static_cast<double>(M) + 1.0) -
                       static_cast<double>(M) * log_neg_l(s);
        for (long long j = 0; j < M; ++j) {
            total += log_neg_l(static_cast<double>(j + 1) * s);
            total -= 3.0 * log_l_pos(static_cast<double>(j + 2) * s);
        }
        return {+1, total};
    }

    // P1ZDw: the (N-1)-point product at (w, (1-w)/(N-1), w), evaluated through
    // the sign-tracked extensions so the meromorphic continuation in w is
    // available below the strict-condition region.
    if (N < 3) throw ValidationError("P1ZDw product needs N >= 3");
    if (!(w < 1.0)) throw ValidationError("P1ZDw needs w < 1");
    const long long M = N - 1;
    const double w_mid = (1.0 - w) / static_cast<double>(N - 1);
    const double absV = 2.0 - 2.0 * w - w_mid;
    if (!(absV > 0.0)) throw NumericDomainError("P1ZDw weights leave the log Fano range");
    const double s = 0.5 * absV / static_cast<double>(M - 1);

    SignedLog total{+1, static_cast<double>(M) * kLogPi +
                            std::lgamma(static_cast<double>(M) + 1.0)};
    SignedLog pre = neg_l_ext(s);
    total.log_abs -= static_cast<double>(M) * pre.log_abs;
    if (pre.sign < 0 && (M % 2)) total.sign = -total.sign;

    for (long long j = 0; j < M; ++j) {
        double js = static_cast<double>(j) * s;
        total = total * neg_l_ext(static_cast<double>(j + 1) * s);
        SignedLog dw = log_l_ext(w + js);
        total.log_abs -= 2.0 * dw.log_abs; // squared factor, sign cancels
        total = total / log_l_ext(w_mid + js);
    }
    return total;
}

double arithmetic_logZ(long long N, ArithmeticModel model, double w) {
    SignedLog v = arithmetic_logZ_signed(N, model, w);
    if (v.sign <= 0)
        throw NumericDomainError("arithmetic product is not positive here (meromorphic region); "
                                 "use the signed variant");
    return v.log_abs;
}

// ---------------------------------------------------------------------------
// Monte Carlo oracle
// ---------------------------------------------------------------------------

namespace {

using Vec3 = std::array<double, 3>;

constexpr Vec3 kP0 = {0.0, 0.0, -1.0}; // z = 0
constexpr Vec3 kP1 = {1.0, 0.0, 0.0};  // z = 1
constexpr Vec3 kPInf = {0.0, 0.0, 1.0}; // z = infinity

double dist2(const Vec3& a, const Vec3& b) {
    double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return dx * dx + dy * dy + dz * dz;
}

// One importance-mixture component: density (1-a) 2^{2a} d_p^{-2a} wrt the
// uniform probability measure; a = 0 degenerates to uniform.
struct PoleComponent {
    Vec3 p;
    double a;
    double log_norm; // log((1-a) 2^{2a})
};

struct Mixture {
    std::array<PoleComponent, 3> poles;
    double lambda_uniform;
    double lambda_pole;

    double log_density(const Vec3& x) const {
        // Densities wrt the uniform measure omega.
        double dens = lambda_uniform;
        for (const auto& c : poles) {
            if (c.a == 0.0) {
                dens += lambda_pole;
            } else {
                dens += lambda_pole * std::exp(c.log_norm - c.a * std::log(dist2(x, c.p)));
            }
        }
        return std::log(dens);
    }
};

Mixture build_mixture(const WeightTriple& w, int N) {
    // Effective pole weights of the integrand: the infinity point carries w3
    // for N >= 2 and 2 - w1 - w2 for the one-point beta integrand.
    double g0 = w.w1, g1 = w.w2;
    double ginf = (N >= 2) ? w.w3 : (2.0 - w.w1 - w.w2);
    auto exponent = [](double g) {
        if (g <= 0.0) return 0.0;
        double a = std::max(g, 2.0 * g - 1.0 + 0.05);
        return std::min(a, 0.93);
    };
    Mixture m;
    m.lambda_uniform = 0.4;
    m.lambda_pole = 0.2;
    const Vec3 ps[3] = {kP0, kP1, kPInf};
    const double gs[3] = {g0, g1, ginf};
    for (int i = 0; i < 3; ++i) {
        double a = exponent(gs[i]);
        m.poles[i] = {ps[i], a, std::log1p(-a) + 2.0 * a * std::log(2.0)};
    }
    return m;
}

Vec3 rotate_to_pole(const Vec3& v, const Vec3& pole) {
    if (pole[2] > 0.5) return v;                       // +e3
    if (pole[2] < -0.5) return {v[0], -v[1], -v[2]};   // -e3 (proper rotation)
    return {v[2], v[1], -v[0]};                        // e1
}

template <typename Rng>
Vec3 sample_component(const Mixture& m, Rng& rng, std::uniform_real_distribution<double>& unif) {
    double which = unif(rng);
    double t, phi = 2.0 * M_PI * unif(rng);
    const PoleComponent* comp = nullptr;
    if (which < m.lambda_uniform) {
        t = 2.0 * unif(rng) - 1.0;
    } else {
        int idx = std::min(2, static_cast<int>((which - m.lambda_uniform) / m.lambda_pole));
        comp = &m.poles[idx];
        if (comp->a == 0.0) {
            t = 2.0 * unif(rng) - 1.0;
        } else {
            // CDF F(t) = 1 - ((1-t)/2)^{1-a} about the pole axis. The floor on
            // 1-t keeps draws off the exact pole, where the weight would
            // degenerate to inf - inf; the importance ratio is continuous
            // there, so the induced bias is at the 1e-15 scale.
            double u = unif(rng);
            double s = std::max(2.0 * std::pow(1.0 - u, 1.0 / (1.0 - comp->a)), 1e-15);
            t = 1.0 - s;
        }
    }
    double st = std::sqrt(std::max(0.0, 1.0 - t * t));
    Vec3 v = {st * std::cos(phi), st * std::sin(phi), t};
    return comp ? rotate_to_pole(v, comp->p) : v;
}

// log of the integrand against the uniform product measure, in chordal form.
double log_integrand(const WeightTriple& w, const std::vector<Vec3>& xs) {
    const int N = static_cast<int>(xs.size());
    const double absV = w.absV();
    double total = 0.0;
    for (int i = 0; i < N; ++i) {
        double d0 = dist2(xs[i], kP0), d1 = dist2(xs[i], kP1), di = dist2(xs[i], kPInf);
        if (d0 == 0.0 || d1 == 0.0 || di == 0.0) return -INFINITY;
        total += std::log(16.0 * M_PI) - w.w2 * std::log(2.0);
        total += -w.w1 * std::log(d0) - w.w2 * std::log(d1) +
                 (w.w1 + w.w2 - 2.0) * std::log(di);
    }
    if (N >= 2) {
        const double e = -absV / static_cast<double>(N - 1);
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                double dij = dist2(xs[i], xs[j]);
                if (dij == 0.0) return INFINITY; // attractive singularity
                double dii = dist2(xs[i], kPInf), djj = dist2(xs[j], kPInf);
                total += e * (std::log(4.0) + std::log(dij) - std::log(dii) - std::log(djj));
            }
    }
    return total;
}

constexpr int kMcStreams = 256;

McEstimate mc_oracle_impl(const WeightTriple& w, int N, long long samples, uint64_t seed,
                          bool parallel) {
    w.validate_basic();
    if (N < 1 || N > 3) throw ValidationError("mc_oracle supports N in {1,2,3}");
    if (samples < 1000) throw ValidationError("mc_oracle needs at least 1000 samples");
    if (N == 1 && !(w.w1 + w.w2 > 1.0))
        throw NumericDomainError("one-point integrand not integrable (w1 + w2 <= 1)");

    const Mixture mix = build_mixture(w, N);
    std::vector<StreamAcc> accs(kMcStreams);

    auto run_stream = [&](int sidx) {
        std::mt19937_64 rng(stream_seed(seed, static_cast<uint64_t>(sidx)));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        long long lo = samples * sidx / kMcStreams, hi = samples * (sidx + 1) / kMcStreams;
        StreamAcc acc;
        std::vector<Vec3> xs(static_cast<size_t>(N));
        for (long long s = lo; s < hi; ++s) {
            double log_q = 0.0;
            for (int i = 0; i < N; ++i) {
                xs[static_cast<size_t>(i)] = sample_component(mix, rng, unif);
                log_q += mix.log_density(xs[static_cast<size_t>(i)]);
            }
            acc.add(log_integrand(w, xs) - log_q);
        }
        accs[static_cast<size_t>(sidx)] = acc;
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int sidx = 0; sidx < kMcStreams; ++sidx) run_stream(sidx);
    } else {
        for (int sidx = 0; sidx < kMcStreams; ++sidx) run_stream(sidx);
    }

    StreamAcc total;
    for (const auto& a : accs) total.merge(a);

    double frac_rejected =
        static_cast<double>(total.rejected) / static_cast<double>(total.count);
    if (frac_rejected > 1e-6)
        throw ConvergenceError("non-finite integrand fraction " + std::to_string(frac_rejected) +
                               " exceeds tolerance");

    auto lm = total.log_mean();
    McEstimate est;
    est.estimate_logZ = lm.log_mean;
    est.stderr_log = lm.stderr_log;
    est.samples = total.count;
    est.rejected_fraction = frac_rejected;
    return est;
}

} // namespace

McEstimate mc_oracle(const WeightTriple& w, int N, long long samples, uint64_t seed) {
    return mc_oracle_impl(w, N, samples, seed, true);
}

McEstimate mc_oracle_serial(const WeightTriple& w, int N, long long samples, uint64_t seed) {
    return mc_oracle_impl(w, N, samples, seed, false);
}

} // namespace logfano

#include "logfano/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "logfano/mcstats.hpp"
#include "logfano/parallel.hpp"

namespace logfano {

namespace {

constexpr Vec3 kPoleSouth = {0.0, 0.0, -1.0};
constexpr Vec3 kPoleNorth = {0.0, 0.0, 1.0};

double dist2(const Vec3& a, const Vec3& b) {
    double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return dx * dx + dy * dy + dz * dz;
}

double norm(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

Vec3 normalized(const Vec3& a) {
    double n = norm(a);
    if (!(n > 0.0)) throw NumericDomainError("cannot normalize the zero vector");
    return {a[0] / n, a[1] / n, a[2] / n};
}

double level_k(int N, double w) { return (static_cast<double>(N) - 1.0) / (2.0 - 2.0 * w); }

} // namespace

void SphereConfig::validate(double unit_tol) const {
    if (N() < 2) throw ValidationError("configuration needs N >= 2 points");
    for (const auto& p : points) {
        double n2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        if (std::fabs(n2 - 1.0) > unit_tol)
            throw ValidationError("point off the unit sphere by " + std::to_string(std::fabs(n2 - 1.0)));
    }
}

namespace {

// Row term of the pairwise log-distance sum, shared by both kernels.
struct PairRowSum {
    const SphereConfig& c;
    double operator()(long long i) const {
        double s = 0.0;
        for (int j = static_cast<int>(i) + 1; j < c.N(); ++j)
            s += std::log(dist2(c.points[static_cast<size_t>(i)], c.points[static_cast<size_t>(j)]) / 4.0);
        return s;
    }
};

} // namespace

double energy_serial(const SphereConfig& c, double w) {
    c.validate();
    const int N = c.N();
    double S = blocked_sum_serial(N - 1, PairRowSum{c});
    if (!std::isfinite(S)) return INFINITY;
    return -S / (level_k(N, w) * static_cast<double>(N));
}

double energy(const SphereConfig& c, double w) {
    c.validate();
    const int N = c.N();
    double S = blocked_sum(N - 1, PairRowSum{c});
    if (!std::isfinite(S)) return INFINITY;
    return -S / (level_k(N, w) * static_cast<double>(N));
}

Vec3 moment_vector(const SphereConfig& c) {
    Vec3 m{0.0, 0.0, 0.0};
    for (const auto& p : c.points)
        for (int a = 0; a < 3; ++a) m[static_cast<size_t>(a)] += p[static_cast<size_t>(a)];
    for (int a = 0; a < 3; ++a) m[static_cast<size_t>(a)] /= c.N();
    return m;
}

double moment_scalar(const SphereConfig& c, double w) {
    if (w == 0.0) throw ValidationError("scalar moment is the w != 0 convention");
    double s = 0.0;
    for (const auto& p : c.points) s += p[2];
    return 2.0 * s / ((2.0 - 2.0 * w) * c.N());
}

double slab_norm(const SphereConfig& c, double w) {
    if (w == 0.0) {
        Vec3 m = moment_vector(c);
        return std::max({std::fabs(m[0]), std::fabs(m[1]), std::fabs(m[2])});
    }
    return std::fabs(moment_scalar(c, w));
}

double log_rho_w(const Vec3& x, double w) {
    if (w == 0.0) return 0.0;
    double d0 = dist2(x, kPoleSouth), d1 = dist2(x, kPoleNorth);
    return -w * std::log(d0 * d1 / 16.0);
}

double reduced_threshold_bound(int N, double w) {
    long long half = N / 2;
    if (w == 0.0) {
        if (half - 1 < 1) return INFINITY;
        return static_cast<double>(N - 1) / static_cast<double>(half);
    }
    double V = 2.0 - 2.0 * w;
    double diag = 2.0 * (1.0 - 1.0 / N) / V;
    if (half < 2) return diag;
    return std::min(diag, static_cast<double>(N - 1) / static_cast<double>(half - 1));
}

double SamplerParams::eps_effective() const {
    if (eps > 0.0) return eps;
    return std::min(0.05, 1.0 / static_cast<double>(N));
}

void SamplerParams::validate() const {
    if (N < 2) throw ValidationError("sampler needs N >= 2");
    if (!(w >= 0.0 && w < 1.0)) throw ValidationError("w must lie in [0,1)");
    if (!(eps_effective() > 0.0)) throw ValidationError("slab half-width must be positive");
    if (n_steps <= 0 || burn_in < 0) throw ValidationError("need n_steps > 0, burn_in >= 0");
    double bound = reduced_threshold_bound(N, w);
    if (!(beta > -bound))
        throw ValidationError("density not integrable on the slab: beta = " + std::to_string(beta) +
                              " <= -gamma^(N),G = " + std::to_string(-bound));
}

double metropolis_acceptance(double log_target_ratio) {
    return log_target_ratio >= 0.0 ? 1.0 : std::exp(log_target_ratio);
}

double fs_monomial_norm2(int j, int two_k) {
    if (two_k < 1 || j < 0 || j > two_k) throw ValidationError("need 0 <= j <= 2k, 2k >= 1");
    return M_PI * std::exp(std::lgamma(j + 1.0) + std::lgamma(two_k - j + 1.0) -
                           std::lgamma(two_k + 2.0));
}

double basis_change_logfactor(int two_k) {
    if (two_k < 1) throw ValidationError("2k must be a positive integer");
    double k = 0.5 * two_k;
    double s = 0.0;
    for (int j = 0; j <= two_k; ++j) s += std::log(fs_monomial_norm2(j, two_k));
    return s / k;
}

// ---------------------------------------------------------------------------
// Spherical harmonics (l <= 4)
// ---------------------------------------------------------------------------

std::complex<double> sph_harm(int l, int m, const Vec3& x) {
    if (l < 0 || l > 4 || m < 0 || m > l) throw ValidationError("sph_harm supports l <= 4, 0 <= m <= l");
    double z = x[2];
    double s2 = std::max(0.0, 1.0 - z * z);
    double s = std::sqrt(s2); // sin(theta)

    // Associated Legendre P_l^m(z) with Condon-Shortley phase.
    double pmm = 1.0;
    for (int i = 1; i <= m; ++i) pmm *= -(2.0 * i - 1.0) * s;
    double plm;
    if (l == m) {
        plm = pmm;
    } else {
        double pm1 = z * (2.0 * m + 1.0) * pmm; // P_{m+1}^m
        if (l == m + 1) {
            plm = pm1;
        } else {
            double a = pmm, b = pm1;
            for (int ll = m + 2; ll <= l; ++ll) {
                double c = ((2.0 * ll - 1.0) * z * b - (ll + m - 1.0) * a) / (ll - m);
                a = b;
                b = c;
            }
            plm = b;
        }
    }
    double lognorm = 0.5 * (std::log((2.0 * l + 1.0) / (4.0 * M_PI)) + std::lgamma(l - m + 1.0) -
                            std::lgamma(l + m + 1.0));
    double phi = (m == 0 || s == 0.0) ? 0.0 : std::atan2(x[1], x[0]);
    return std::exp(lognorm) * plm * std::polar(1.0, m * phi);
}

// ---------------------------------------------------------------------------
// The chain
// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<int, int>> harm_keys() {
    std::vector<std::pair<int, int>> keys;
    for (int l = 1; l <= 4; ++l)
        for (int m = 0; m <= l; ++m) keys.emplace_back(l, m);
    return keys;
}

SphereConfig initial_config(int N, std::mt19937_64& rng) {
    // Exact zero moment: antipodal pairs, plus an equatorial equilateral
    // triangle when N is odd.
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    SphereConfig c;
    c.points.reserve(static_cast<size_t>(N));
    int rest = N;
    if (N % 2 == 1) {
        double phi0 = 2.0 * M_PI * unif(rng);
        for (int j = 0; j < 3; ++j) {
            double a = phi0 + 2.0 * M_PI * j / 3.0;
            c.points.push_back({std::cos(a), std::sin(a), 0.0});
        }
        rest -= 3;
    }
    for (int p = 0; p < rest / 2; ++p) {
        double t = 2.0 * unif(rng) - 1.0;
        double ph = 2.0 * M_PI * unif(rng);
        double st = std::sqrt(std::max(0.0, 1.0 - t * t));
        Vec3 v = {st * std::cos(ph), st * std::sin(ph), t};
        c.points.push_back(v);
        c.points.push_back({-v[0], -v[1], -v[2]});
    }
    return c;
}

struct RunningState {
    // configuration sums
    Vec3 sum{0.0, 0.0, 0.0};
    std::array<double, 6> m2{}; // sum of x x^T entries: xx,yy,zz,xy,xz,yz
    std::vector<std::complex<double>> harm_sum;
    double S = 0.0; // sum_{i<j} log(d^2/4)

    void recompute(const SphereConfig& c, const std::vector<std::pair<int, int>>& keys) {
        sum = {0.0, 0.0, 0.0};
        m2 = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
        harm_sum.assign(keys.size(), {0.0, 0.0});
        for (const auto& p : c.points) add_point(p, keys, +1.0);
        S = 0.0;
        for (int i = 0; i < c.N(); ++i)
            for (int j = i + 1; j < c.N(); ++j)
                S += std::log(dist2(c.points[static_cast<size_t>(i)],
                                    c.points[static_cast<size_t>(j)]) /
                              4.0);
    }

    void add_point(const Vec3& p, const std::vector<std::pair<int, int>>& keys, double sgn) {
        for (int a = 0; a < 3; ++a) sum[static_cast<size_t>(a)] += sgn * p[static_cast<size_t>(a)];
        m2[0] += sgn * p[0] * p[0];
        m2[1] += sgn * p[1] * p[1];
        m2[2] += sgn * p[2] * p[2];
        m2[3] += sgn * p[0] * p[1];
        m2[4] += sgn * p[0] * p[2];
        m2[5] += sgn * p[1] * p[2];
        for (size_t k = 0; k < keys.size(); ++k)
            harm_sum[k] += sgn * sph_harm(keys[k].first, keys[k].second, p);
    }
};

} // namespace

ChainResult run_chain(const SamplerParams& params_in) {
    SamplerParams params = params_in;
    params.validate();
    const int N = params.N;
    const double w = params.w;
    const double eps = params.eps_effective();
    const double k = level_k(N, w);
    const auto keys = harm_keys();

    std::mt19937_64 rng(stream_seed(params.seed, 0));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    SphereConfig c = initial_config(N, rng);
    if (!(slab_norm(c, w) < eps))
        throw ValidationError("initial configuration violates the slab constraint");

    RunningState st;
    st.recompute(c, keys);

    double sigma = params.step_sigma > 0.0 ? params.step_sigma : 0.5;
    const bool tune = params.step_sigma <= 0.0;
    long long window_prop = 0, window_acc = 0;

    // batch accumulators over retained steps
    ChainResult out;
    out.params = params;
    out.batches.moment.assign(kChainBatches, Vec3{0, 0, 0});
    out.batches.quad.assign(kChainBatches, {0, 0, 0, 0, 0, 0});
    out.batches.energy.assign(kChainBatches, 0.0);
    out.batches.harmonics.assign(kChainBatches,
                                 std::vector<std::complex<double>>(keys.size(), {0.0, 0.0}));
    std::vector<long long> batch_count(kChainBatches, 0);

    double acc_retained = 0.0;
    long long retained = 0;
    double mean_E = 0.0, mean_E2 = 0.0;
    Vec3 mean_m{0, 0, 0};
    std::array<double, 6> mean_q{};
    std::vector<std::complex<double>> mean_h(keys.size(), {0.0, 0.0});

    const long long total_steps = params.burn_in + params.n_steps;
    for (long long step = 0; step < total_steps; ++step) {
        const bool measuring = step >= params.burn_in;
        int i = static_cast<int>(rng() % static_cast<uint64_t>(N));
        const Vec3 old_p = c.points[static_cast<size_t>(i)];

        Vec3 g = {gauss(rng), gauss(rng), gauss(rng)};
        double gd = g[0] * old_p[0] + g[1] * old_p[1] + g[2] * old_p[2];
        Vec3 cand = {old_p[0] + sigma * (g[0] - gd * old_p[0]),
                     old_p[1] + sigma * (g[1] - gd * old_p[1]),
                     old_p[2] + sigma * (g[2] - gd * old_p[2])};
        cand = normalized(cand);

        ++window_prop;
        bool accepted = false;

        // slab first (hard constraint), then Metropolis on the density
        Vec3 new_sum = {st.sum[0] - old_p[0] + cand[0], st.sum[1] - old_p[1] + cand[1],
                        st.sum[2] - old_p[2] + cand[2]};
        double slab;
        if (w == 0.0) {
            slab = std::max({std::fabs(new_sum[0]), std::fabs(new_sum[1]), std::fabs(new_sum[2])}) /
                   N;
        } else {
            slab = std::fabs(2.0 * new_sum[2] / ((2.0 - 2.0 * w) * N));
        }
        bool at_pole = w != 0.0 && (dist2(cand, kPoleSouth) == 0.0 || dist2(cand, kPoleNorth) == 0.0);
        if (slab < eps && !at_pole) {
            double dS = 0.0;
            bool collision = false;
            for (int j = 0; j < N; ++j) {
                if (j == i) continue;
                double d_new = dist2(cand, c.points[static_cast<size_t>(j)]);
                double d_old = dist2(old_p, c.points[static_cast<size_t>(j)]);
                if (d_new == 0.0) { collision = true; break; }
                dS += std::log(d_new) - std::log(d_old);
            }
            if (!collision) {
                // log target = (beta/k) S + sum_i log rho_w(x_i)
                double log_ratio = (params.beta / k) * dS + log_rho_w(cand, w) - log_rho_w(old_p, w);
                if (std::log(1.0 - unif(rng)) < log_ratio) {
                    st.add_point(old_p, keys, -1.0);
                    st.add_point(cand, keys, +1.0);
                    st.sum = new_sum;
                    st.S += dS;
                    c.points[static_cast<size_t>(i)] = cand;
                    accepted = true;
                }
            }
        }

        if (accepted) ++window_acc;
        if (tune && !measuring && window_prop >= 2000) {
            double rate = static_cast<double>(window_acc) / static_cast<double>(window_prop);
            sigma = std::clamp(sigma * std::exp(rate - 0.4), 1e-3, 2.0);
            window_prop = window_acc = 0;
        }
        if (!measuring && step + 1 == params.burn_in) {
            window_prop = window_acc = 0;
            st.recompute(c, keys); // clear accumulated drift before measuring
        }

        if (measuring) {
            long long r = step - params.burn_in;
            int b = static_cast<int>(r * kChainBatches / params.n_steps);
            b = std::min(b, kChainBatches - 1);

            double cur_slab;
            if (w == 0.0) {
                cur_slab = std::max({std::fabs(st.sum[0]), std::fabs(st.sum[1]),
                                     std::fabs(st.sum[2])}) /
                           N;
            } else {
                cur_slab = std::fabs(2.0 * st.sum[2] / ((2.0 - 2.0 * w) * N));
            }
            out.max_slab_norm_seen = std::max(out.max_slab_norm_seen, cur_slab);

            double E = -st.S / (k * N);
            Vec3 m = {st.sum[0] / N, st.sum[1] / N, st.sum[2] / N};
            std::array<double, 6> q = {st.m2[0] / N - 1.0 / 3.0, st.m2[1] / N - 1.0 / 3.0,
                                       st.m2[2] / N - 1.0 / 3.0, st.m2[3] / N,
                                       st.m2[4] / N, st.m2[5] / N};

            out.batches.energy[static_cast<size_t>(b)] += E;
            for (int a = 0; a < 3; ++a)
                out.batches.moment[static_cast<size_t>(b)][static_cast<size_t>(a)] += m[static_cast<size_t>(a)];
            for (int a = 0; a < 6; ++a)
                out.batches.quad[static_cast<size_t>(b)][static_cast<size_t>(a)] += q[static_cast<size_t>(a)];
            for (size_t h = 0; h < keys.size(); ++h)
                out.batches.harmonics[static_cast<size_t>(b)][h] +=
                    st.harm_sum[h] / static_cast<double>(N);
            ++batch_count[static_cast<size_t>(b)];

            mean_E += E;
            mean_E2 += E * E;
            for (int a = 0; a < 3; ++a) mean_m[static_cast<size_t>(a)] += m[static_cast<size_t>(a)];
            for (int a = 0; a < 6; ++a) mean_q[static_cast<size_t>(a)] += q[static_cast<size_t>(a)];
            for (size_t h = 0; h < keys.size(); ++h)
                mean_h[h] += st.harm_sum[h] / static_cast<double>(N);
            acc_retained += accepted ? 1.0 : 0.0;
            ++retained;
        }
    }

    for (int b = 0; b < kChainBatches; ++b) {
        double n = std::max<long long>(1, batch_count[static_cast<size_t>(b)]);
        out.batches.energy[static_cast<size_t>(b)] /= n;
        for (int a = 0; a < 3; ++a) out.batches.moment[static_cast<size_t>(b)][static_cast<size_t>(a)] /= n;
        for (int a = 0; a < 6; ++a) out.batches.quad[static_cast<size_t>(b)][static_cast<size_t>(a)] /= n;
        for (auto& h : out.batches.harmonics[static_cast<size_t>(b)]) h /= n;
    }

    const double n = static_cast<double>(retained);
    out.retained_steps = retained;
    out.tuned_sigma = sigma;
    out.obs.mean_energy = mean_E / n;
    out.obs.var_energy = std::max(0.0, mean_E2 / n - out.obs.mean_energy * out.obs.mean_energy);
    for (int a = 0; a < 3; ++a) out.obs.mean_moment[static_cast<size_t>(a)] = mean_m[static_cast<size_t>(a)] / n;
    double fr = 0.0;
    for (int a = 0; a < 3; ++a) {
        double d = mean_q[static_cast<size_t>(a)] / n;
        fr += d * d;
    }
    for (int a = 3; a < 6; ++a) {
        double d = mean_q[static_cast<size_t>(a)] / n;
        fr += 2.0 * d * d; // symmetric off-diagonal entries
    }
    out.obs.quadrupole_dev = std::sqrt(fr);
    out.obs.acceptance_rate = acc_retained / n;
    for (size_t h = 0; h < keys.size(); ++h) out.obs.harmonic_means[keys[h]] = mean_h[h] / n;
    return out;
}

double bootstrap_se(const std::vector<double>& batch_means, int resamples, uint64_t seed) {
    if (batch_means.size() < 2) throw ValidationError("bootstrap needs >= 2 batches");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, batch_means.size() - 1);
    double s = 0.0, s2 = 0.0;
    for (int r = 0; r < resamples; ++r) {
        double m = 0.0;
        for (size_t b = 0; b < batch_means.size(); ++b) m += batch_means[pick(rng)];
        m /= static_cast<double>(batch_means.size());
        s += m;
        s2 += m * m;
    }
    double mean = s / resamples;
    return std::sqrt(std::max(0.0, s2 / resamples - mean * mean));
}

// ---------------------------------------------------------------------------
// Partition-function estimation
// ---------------------------------------------------------------------------

namespace {

// Sample t = cos(angle to north pole) with density proportional to
// (1-t^2)^{-w} by rejection from the mixture of (1-t)^{-w} and (1+t)^{-w}.
template <typename Rng>
double sample_rho_t(double w, Rng& rng, std::uniform_real_distribution<double>& unif) {
    if (w == 0.0) return 2.0 * unif(rng) - 1.0;
    while (true) {
        double u = unif(rng);
        // floor keeps draws off the exact poles (see the oracle sampler)
        double s = std::max(2.0 * std::pow(1.0 - u, 1.0 / (1.0 - w)), 1e-15);
        double t = (unif(rng) < 0.5) ? 1.0 - s : -1.0 + s;
        // accept with probability 2^w / ((1+t)^w + (1-t)^w) in (2^{w-1}, 1]
        double acc = std::pow(2.0, w) /
                     (std::pow(1.0 + t, w) + std::pow(1.0 - t, w));
        if (unif(rng) < acc) return t;
    }
}

template <typename Rng>
Vec3 sample_rho_point(double w, Rng& rng, std::uniform_real_distribution<double>& unif) {
    double t = sample_rho_t(w, rng, unif);
    double ph = 2.0 * M_PI * unif(rng);
    double st = std::sqrt(std::max(0.0, 1.0 - t * t));
    return {st * std::cos(ph), st * std::sin(ph), t};
}

constexpr int kZStreams = 128;

} // namespace

DirectMcResult direct_mc_logZ(int N, double w, double beta, double eps, long long samples,
                              uint64_t seed) {
    if (N < 2 || N > 7) throw ValidationError("direct_mc_logZ supports 2 <= N <= 7");
    if (!(w >= 0.0 && w < 1.0)) throw ValidationError("w must lie in [0,1)");
    if (!(eps > 0.0)) throw ValidationError("eps must be positive");
    if (samples < 1000) throw ValidationError("need at least 1000 samples");
    const double k = level_k(N, w);

    std::vector<StreamAcc> accs(kZStreams);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int sidx = 0; sidx < kZStreams; ++sidx) {
        std::mt19937_64 rng(stream_seed(seed, static_cast<uint64_t>(sidx)));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        long long lo = samples * sidx / kZStreams, hi = samples * (sidx + 1) / kZStreams;
        StreamAcc acc;
        SphereConfig c;
        c.points.resize(static_cast<size_t>(N));
        for (long long s = lo; s < hi; ++s) {
            for (int i = 0; i < N; ++i) c.points[static_cast<size_t>(i)] = sample_rho_point(w, rng, unif);
            if (!(slab_norm(c, w) < eps)) {
                acc.add_zero();
                continue;
            }
            double S = 0.0;
            for (int i = 0; i < N; ++i)
                for (int j = i + 1; j < N; ++j)
                    S += std::log(dist2(c.points[static_cast<size_t>(i)],
                                        c.points[static_cast<size_t>(j)]) /
                                  4.0);
            acc.add((beta / k) * S); // -beta N E = (beta/k) S
        }
        accs[static_cast<size_t>(sidx)] = acc;
    }
    StreamAcc total;
    for (const auto& a : accs) total.merge(a);
    auto lm = total.log_mean();
    return {lm.log_mean, lm.stderr_log, total.count};
}

LogZEstimate estimate_logZ(const SamplerParams& params, const std::vector<double>& beta_grid,
                           long long z0_samples) {
    SamplerParams base = params;
    base.validate();
    if (beta_grid.empty()) throw ValidationError("beta grid must not be empty");
    if (beta_grid.front() != 0.0) throw ValidationError("beta grid must start at 0");
    for (size_t i = 1; i < beta_grid.size(); ++i) {
        double d0 = beta_grid[i] - beta_grid[i - 1];
        double d1 = beta_grid[1] - beta_grid[0];
        if (d0 * d1 <= 0.0) throw ValidationError("beta grid must be strictly monotone");
    }
    if (std::fabs(beta_grid.back() - params.beta) > 1e-12)
        throw ValidationError("beta grid must end at the target beta");
    for (double b : beta_grid) {
        SamplerParams p = base;
        p.beta = b;
        p.validate(); // integrability at every grid point
    }

    // log Z(0): exact slab hit count under iid rho_w points.
    const double eps = base.eps_effective();
    std::vector<long long> hits(kZStreams, 0), counts(kZStreams, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int sidx = 0; sidx < kZStreams; ++sidx) {
        std::mt19937_64 rng(stream_seed(base.seed ^ 0xabcdefULL, static_cast<uint64_t>(sidx)));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        long long lo = z0_samples * sidx / kZStreams, hi = z0_samples * (sidx + 1) / kZStreams;
        SphereConfig c;
        c.points.resize(static_cast<size_t>(base.N));
        long long h = 0;
        for (long long s = lo; s < hi; ++s) {
            for (int i = 0; i < base.N; ++i)
                c.points[static_cast<size_t>(i)] = sample_rho_point(base.w, rng, unif);
            if (slab_norm(c, base.w) < eps) ++h;
        }
        hits[static_cast<size_t>(sidx)] = h;
        counts[static_cast<size_t>(sidx)] = hi - lo;
    }
    long long hit_total = 0, count_total = 0;
    for (int sidx = 0; sidx < kZStreams; ++sidx) {
        hit_total += hits[static_cast<size_t>(sidx)];
        count_total += counts[static_cast<size_t>(sidx)];
    }
    double p = static_cast<double>(hit_total) / static_cast<double>(count_total);
    if (p < 1e-6)
        throw ConvergenceError("slab hit-rate " + std::to_string(p) +
                               " below the 1e-6 floor; refusing a widened-eps correction");
    double z0_log = std::log(p);
    double se0 = std::sqrt((1.0 - p) / (p * static_cast<double>(count_total)));

    // <E> at each grid beta, independent chains.
    const int G = static_cast<int>(beta_grid.size());
    std::vector<double> meanE(static_cast<size_t>(G), 0.0), seE(static_cast<size_t>(G), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int g = 0; g < G; ++g) {
        SamplerParams p2 = base;
        p2.beta = beta_grid[static_cast<size_t>(g)];
        p2.seed = stream_seed(base.seed, 1000 + static_cast<uint64_t>(g));
        ChainResult r = run_chain(p2);
        meanE[static_cast<size_t>(g)] = r.obs.mean_energy;
        seE[static_cast<size_t>(g)] = bootstrap_se(r.batches.energy);
    }

    double integral = 0.0;
    std::vector<double> wts(static_cast<size_t>(G), 0.0);
    for (int g = 0; g + 1 < G; ++g) {
        double db = beta_grid[static_cast<size_t>(g + 1)] - beta_grid[static_cast<size_t>(g)];
        integral += 0.5 * db * (meanE[static_cast<size_t>(g)] + meanE[static_cast<size_t>(g + 1)]);
        wts[static_cast<size_t>(g)] += 0.5 * db;
        wts[static_cast<size_t>(g + 1)] += 0.5 * db;
    }
    double var = se0 * se0;
    for (int g = 0; g < G; ++g) {
        double t = static_cast<double>(base.N) * wts[static_cast<size_t>(g)] * seE[static_cast<size_t>(g)];
        var += t * t;
    }

    LogZEstimate est;
    est.z0_log = z0_log;
    est.z0_hit_rate = p;
    est.logZ = z0_log - static_cast<double>(base.N) * integral;
    est.stderr_ = std::sqrt(var);
    return est;
}

} // namespace logfano

#include "logfano/toric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "logfano/quadrature.hpp"

namespace logfano {

namespace {

double trapz(const std::vector<double>& v, double h) {
    double s = 0.5 * (v.front() + v.back());
    for (size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return s * h;
}

// Dual of the log-cosh reference, analytic: v0(y) = x y - phi0(x) at
// x = 2 atanh(2y/V); v0(+-V/2) = 0.
double reference_dual(double V, double y) {
    double r = 2.0 * y / V;
    if (std::fabs(r) >= 1.0) return 0.0;
    double x = 2.0 * std::atanh(r);
    return x * y - reference_value(V, x);
}

double round_potential(double x) { return reference_value(2.0, x); } // 2 log(2cosh(x/2))

double log_Z0(double V) {
    // int e^{-phi0} dx = Gamma(V/2)^2 / Gamma(V)
    return 2.0 * std::lgamma(0.5 * V) - std::lgamma(V);
}

// log of int exp(g(x)) dx over [-U, U]. The maximum of g is factored out so
// the quadrature runs on an O(1) integrand, and the interval is split at the
// given structural breakpoints (ray kinks / exponential peaks), otherwise the
// adaptive rule can sample straight past a narrow peak.
template <typename G>
double log_int_exp(G&& g, double U, std::vector<double> breaks) {
    std::vector<double> cuts = {-U, U};
    for (double b : breaks)
        if (b > -U && b < U) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    double shift = -INFINITY;
    const int scan = 512;
    for (size_t s = 0; s + 1 < cuts.size(); ++s)
        for (int i = 0; i <= scan; ++i)
            shift = std::max(shift, g(cuts[s] + (cuts[s + 1] - cuts[s]) * i / scan));

    double I = 0.0;
    for (size_t s = 0; s + 1 < cuts.size(); ++s)
        I += integrate_adaptive([&](double x) { return std::exp(g(x) - shift); }, cuts[s],
                                cuts[s + 1], 1e-12);
    return shift + std::log(I);
}

} // namespace

double reference_value(double V, double x) {
    // V log(2 cosh(x/2)) = V (|x|/2 + log1p(e^{-|x|}))
    double a = std::fabs(x);
    return V * (0.5 * a + std::log1p(std::exp(-a)));
}

double reference_density(double V, double x) {
    double e = std::exp(-std::fabs(x));
    double q = 1.0 + e;
    return V * e / (q * q);
}

double ConvexProfile::max_abs_slope() const {
    double h = spacing(), best = 0.0;
    for (int i = 0; i + 1 < nodes(); ++i)
        best = std::max(best, std::fabs((vals[i + 1] - vals[i]) / h));
    return best;
}

void ConvexProfile::validate_convex(double tol) const {
    if (nodes() < 3) throw ValidationError("profile needs at least 3 nodes");
    if (!(hi > lo)) throw ValidationError("profile needs hi > lo");
    for (int i = 1; i + 1 < nodes(); ++i) {
        double d2 = vals[i + 1] - 2.0 * vals[i] + vals[i - 1];
        if (d2 < -tol * std::max(1.0, std::fabs(vals[i])))
            throw ValidationError("profile is not convex at node " + std::to_string(i));
    }
}

ConvexProfile legendre(const ConvexProfile& p, double out_lo, double out_hi, int out_nodes) {
    p.validate_convex();
    if (out_nodes < 3) throw ValidationError("output grid needs at least 3 nodes");
    ConvexProfile out;
    out.side = p.side == Side::Primal ? Side::Dual : Side::Primal;
    out.lo = out_lo;
    out.hi = out_hi;
    out.vals.resize(static_cast<size_t>(out_nodes));
    const int n = p.nodes();
    const double hy = (out_hi - out_lo) / (out_nodes - 1);
    int arg = 0;
    for (int j = 0; j < out_nodes; ++j) {
        double y = out_lo + hy * j;
        // argmax of x_i y - p_i is nondecreasing in y for convex p
        while (arg + 1 < n &&
               p.x(arg + 1) * y - p.vals[static_cast<size_t>(arg + 1)] >=
                   p.x(arg) * y - p.vals[static_cast<size_t>(arg)])
            ++arg;
        out.vals[static_cast<size_t>(j)] = p.x(arg) * y - p.vals[static_cast<size_t>(arg)];
    }
    return out;
}

ConvexProfile legendre(const ConvexProfile& p, int out_nodes) {
    if (out_nodes <= 0) out_nodes = p.nodes();
    double h = p.spacing();
    double s_lo = (p.vals[1] - p.vals[0]) / h;
    double s_hi = (p.vals[p.vals.size() - 1] - p.vals[p.vals.size() - 2]) / h;
    if (p.side == Side::Primal) return legendre(p, s_lo, s_hi, out_nodes);
    double xm = std::max(std::fabs(s_lo), std::fabs(s_hi)) + 2.0;
    return legendre(p, -xm, xm, out_nodes);
}

ConvexProfile reference_potential(double V, double X_max, int nodes) {
    if (!(V > 0.0)) throw ValidationError("reference potential needs V > 0");
    if (nodes < 3 || !(X_max > 0.0)) throw ValidationError("bad reference grid");
    ConvexProfile p;
    p.side = Side::Primal;
    p.lo = -X_max;
    p.hi = X_max;
    p.vals.resize(static_cast<size_t>(nodes));
    for (int i = 0; i < nodes; ++i) p.vals[static_cast<size_t>(i)] = reference_value(V, p.x(i));
    return p;
}

namespace {

double ding_exponential_term(const ConvexProfile& phi, double gamma, double V) {
    // -(1/gamma) log int e^{-(gamma phi + (1-gamma) phi0)} dx on the primal
    // grid, with a shift to keep the exponentials in range.
    double h = phi.spacing();
    double m = INFINITY;
    std::vector<double> expo(static_cast<size_t>(phi.nodes()));
    for (int i = 0; i < phi.nodes(); ++i) {
        expo[static_cast<size_t>(i)] =
            gamma * phi.vals[static_cast<size_t>(i)] + (1.0 - gamma) * reference_value(V, phi.x(i));
        m = std::min(m, expo[static_cast<size_t>(i)]);
    }
    double s = 0.0;
    for (int i = 0; i < phi.nodes(); ++i) {
        double wgt = (i == 0 || i + 1 == phi.nodes()) ? 0.5 : 1.0;
        s += wgt * std::exp(m - expo[static_cast<size_t>(i)]);
    }
    if (!(s > 0.0) || !std::isfinite(s))
        throw NumericDomainError("divergent exponential integral in the Ding term");
    return -(std::log(s * h) - m) / gamma;
}

} // namespace

ConvexProfile reference_dual_profile(double V, int nodes) {
    if (!(V > 0.0) || nodes < 3) throw ValidationError("bad reference dual grid");
    ConvexProfile v;
    v.side = Side::Dual;
    v.lo = -0.5 * V;
    v.hi = 0.5 * V;
    v.vals.resize(static_cast<size_t>(nodes));
    for (int i = 0; i < nodes; ++i) v.vals[static_cast<size_t>(i)] = reference_dual(V, v.x(i));
    return v;
}

Functionals functionals(const ConvexProfile& v, double gamma, double V) {
    if (v.side != Side::Dual) throw ValidationError("functionals expect a Dual profile");
    if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
    if (std::fabs(v.lo + 0.5 * V) > 1e-9 || std::fabs(v.hi - 0.5 * V) > 1e-9)
        throw ValidationError("dual profile must live on [-V/2, V/2]");
    v.validate_convex();

    const double hy = v.spacing();
    Functionals out;
    out.L = 0.5 * V * (v.vals.front() + v.vals.back()) - trapz(v.vals, hy);

    // int phi0(v') dy and the round analogue via cell midpoints (robust to
    // kinks in v).
    double T1 = 0.0, T1_round = 0.0;
    for (int i = 0; i + 1 < v.nodes(); ++i) {
        double slope = (v.vals[static_cast<size_t>(i + 1)] - v.vals[static_cast<size_t>(i)]) / hy;
        T1 += reference_value(V, slope) * hy;
        T1_round += round_potential(slope) * hy;
    }
    out.E = (-out.L + T1) / V;

    // int log v'' dy from interior second differences; vanishing curvature
    // means an atomic primal density, whose relative entropy is infinite.
    double T2 = 0.0;
    bool atomic = false;
    for (int i = 1; i + 1 < v.nodes(); ++i) {
        double c = (v.vals[static_cast<size_t>(i + 1)] - 2.0 * v.vals[static_cast<size_t>(i)] +
                    v.vals[static_cast<size_t>(i - 1)]) /
                   (hy * hy);
        if (c <= 0.0) {
            atomic = true;
            break;
        }
        T2 += std::log(c) * hy;
    }
    if (atomic) {
        out.D = out.D_round = out.F_minus_gamma = INFINITY;
    } else {
        out.D = (T1 - T2) / V - std::log(V) + log_Z0(V);
        out.D_round = (T1_round - T2) / V - std::log(V);
        out.F_minus_gamma = -gamma * out.E + out.D;
    }

    double xm = std::max(64.0, v.max_abs_slope() + 8.0);
    ConvexProfile phi = legendre(v, -xm, xm, 16384);
    out.Ding_gamma = trapz(v.vals, hy) / V + ding_exponential_term(phi, gamma, V);
    return out;
}

double fit_slope_upper_half(const std::vector<double>& ts, const std::vector<double>& ys) {
    if (ts.size() != ys.size() || ts.size() < 2)
        throw ValidationError("slope fit needs matching lists with >= 2 samples");
    std::vector<size_t> idx(ts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return ts[a] < ts[b]; });
    size_t take = std::max<size_t>(2, (ts.size() + 1) / 2);
    size_t start = ts.size() - take;
    double mx = 0.0, my = 0.0;
    for (size_t j = start; j < ts.size(); ++j) {
        mx += ts[idx[j]];
        my += ys[idx[j]];
    }
    mx /= static_cast<double>(take);
    my /= static_cast<double>(take);
    double sxx = 0.0, sxy = 0.0;
    for (size_t j = start; j < ts.size(); ++j) {
        double dx = ts[idx[j]] - mx;
        sxx += dx * dx;
        sxy += dx * (ys[idx[j]] - my);
    }
    if (!(sxx > 0.0)) throw ValidationError("degenerate t list in slope fit");
    return sxy / sxx;
}

RayReport ray_slopes(RayKind kind, double gamma, double V, const std::vector<double>& ts) {
    if (!(gamma > 0.0) || !(V > 0.0)) throw ValidationError("ray needs gamma > 0, V > 0");
    if (ts.size() < 2) throw ValidationError("ray needs at least 2 t samples");
    for (size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1])) throw ValidationError("t list must be increasing");
    const double t_max = ts.back();
    const double qtol = 1e-11;

    // All ray functionals reduce to analytic integrals of the log-cosh
    // reference: the AbsVal primal is phi0((|x|-t)_+) and the Translation
    // primal is phi0(x+t).
    const double L0 = -integrate_adaptive([V](double y) { return reference_dual(V, y); },
                                          -0.5 * V, 0.5 * V, qtol);
    const double int_v0 = -L0; // int v0 dy (boundary values vanish)
    const double z0log = log_Z0(V);
    const double U = t_max + 120.0;

    RayReport rep;
    rep.gamma = gamma;
    std::vector<double> Es, Ds, Fs, Dings;

    for (double t : ts) {
        double E, D, F, Ding;
        if (kind == RayKind::AbsVal) {
            double L = L0 + t * V * V / 4.0;
            // int phi0 phi_t'' dx = 2 int_0^inf phi0(u+t) phi0''(u) du
            double T1 = 2.0 * integrate_adaptive(
                                  [V, t](double u) {
                                      return reference_value(V, u + t) * reference_density(V, u);
                                  },
                                  0.0, U, qtol);
            E = (-L + T1) / V;
            double ent = 2.0 * integrate_adaptive(
                                   [V](double u) {
                                       double rho = reference_density(V, u);
                                       return rho > 0.0 ? rho * std::log(rho / V) : 0.0;
                                   },
                                   0.0, U, qtol);
            D = (ent + T1) / V + z0log;
            F = -gamma * E + D;
            double logI = log_int_exp(
                [V, t, gamma](double x) {
                    double phit = reference_value(V, std::max(std::fabs(x) - t, 0.0));
                    return -(gamma * phit + (1.0 - gamma) * reference_value(V, x));
                },
                U, {-t, 0.0, t});
            Ding = (int_v0 + t * V * V / 4.0) / V - logI / gamma;
        } else {
            // v_t = v0 - t y; L and int v dy are unchanged along the ray.
            double T1 = integrate_adaptive(
                [V, t](double x) { return reference_value(V, x - t) * reference_density(V, x); },
                -U, U, qtol);
            E = (-L0 + T1) / V;
            D = integrate_adaptive(
                [t](double u) {
                    return std::exp(-round_potential(u)) *
                           (round_potential(u - t) - round_potential(u));
                },
                -U, U, qtol);
            F = -gamma * E + D;
            double logI = log_int_exp(
                [V, t, gamma](double x) {
                    return -(gamma * reference_value(V, x + t) +
                             (1.0 - gamma) * reference_value(V, x));
                },
                U, {-t, 0.0, t});
            Ding = int_v0 / V - logI / gamma;
        }
        rep.samples.push_back({t, E, D, F, Ding});
        Es.push_back(E);
        Ds.push_back(D);
        Fs.push_back(F);
        Dings.push_back(Ding);
    }

    rep.E.fitted = fit_slope_upper_half(ts, Es);
    rep.D.fitted = fit_slope_upper_half(ts, Ds);
    rep.F.fitted = fit_slope_upper_half(ts, Fs);
    rep.Ding.fitted = fit_slope_upper_half(ts, Dings);
    if (kind == RayKind::AbsVal) {
        rep.E.theory = V / 4.0;
        rep.D.theory = V / 2.0;
        rep.F.theory = V * (gamma / 4.0 - gamma / 2.0 + 0.5);
    } else {
        rep.E.theory = V / 2.0;
        rep.D.theory = 1.0;
        rep.F.theory = 1.0 - gamma * V / 2.0;
    }
    rep.Ding.theory = std::numeric_limits<double>::quiet_NaN();
    return rep;
}

RayReport ding_ray(double gamma, const std::vector<double>& ts) {
    if (!(gamma > 1.0)) throw ValidationError("ding_ray needs gamma > 1");
    if (ts.size() < 2) throw ValidationError("ding_ray needs at least 2 t samples");
    for (size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1])) throw ValidationError("t list must be increasing");
    const double t_max = ts.back();

    RayReport rep;
    rep.gamma = gamma;
    std::vector<double> Dings;
    for (double t : ts) {
        // phi_t = (|x| - t)_+ against phi0 = |x|, V = 2; dual v_t = t|y| on [-1,1].
        double first = 0.5 * t; // int t|y| dy / V
        double logI = log_int_exp(
            [t, gamma](double x) {
                double phit = std::max(std::fabs(x) - t, 0.0);
                return -(gamma * phit + (1.0 - gamma) * std::fabs(x));
            },
            t_max + 120.0, {-t, 0.0, t});
        double v = first - logI / gamma;
        rep.samples.push_back({t, std::numeric_limits<double>::quiet_NaN(),
                               std::numeric_limits<double>::quiet_NaN(),
                               std::numeric_limits<double>::quiet_NaN(), v});
        Dings.push_back(v);
    }
    rep.Ding.fitted = fit_slope_upper_half(ts, Dings);
    rep.Ding.theory = 0.5 - (gamma - 1.0) / gamma;
    return rep;
}

} // namespace logfano

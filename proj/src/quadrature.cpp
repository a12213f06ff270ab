#include "logfano/quadrature.hpp"

#include <cmath>

namespace logfano {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    double delta = left + right - whole;
    // Panels cannot resolve below machine-relative error of their own mass.
    double floor_ = 4e-15 * (std::fabs(left) + std::fabs(right));
    if (depth <= 0 || std::fabs(delta) <= 15.0 * std::max(tol, floor_))
        return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b);
    double m = 0.5 * (a + b), fm = f(m);
    double whole = simpson(a, fa, b, fb, fm);
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

double integrate_endpoint_log(const std::function<double(double)>& f, double a, double b,
                              double tol, bool singular_at_a, bool singular_at_b) {
    if (a == b) return 0.0;
    if (!singular_at_a && !singular_at_b) return integrate_adaptive(f, a, b, tol);

    // Peel dyadic windows toward each singular endpoint; inside each window the
    // integrand is smooth and adaptive Simpson applies. Depth is capped per
    // endpoint where windows would collapse below the ulp scale.
    const int kLevels = 120; // handles log and mild power endpoint singularities
    double len = b - a;
    int levels_a = kLevels, levels_b = kLevels;
    while (levels_a > 8 && a + len * std::ldexp(1.0, -levels_a) == a) --levels_a;
    while (levels_b > 8 && b - len * std::ldexp(1.0, -levels_b) == b) --levels_b;
    double left_cut = singular_at_a ? a + len * std::ldexp(1.0, -levels_a) : a;
    double right_cut = singular_at_b ? b - len * std::ldexp(1.0, -levels_b) : b;

    // Tail bound from the log model |f| <= c0 + c1 |log(dist)| sampled at the cut.
    double tail_bound = 0.0;
    auto log_tail = [&](double cut_dist, double f_at_cut) {
        double c = std::fabs(f_at_cut) / std::max(1.0, std::fabs(std::log(cut_dist)));
        return c * cut_dist * (std::fabs(std::log(cut_dist)) + 1.0);
    };
    if (singular_at_a) tail_bound += log_tail(left_cut - a, f(left_cut));
    if (singular_at_b) tail_bound += log_tail(b - right_cut, f(right_cut));
    if (tail_bound > 0.5 * tol)
        throw ConvergenceError("endpoint tail bound " + std::to_string(tail_bound) +
                               " exceeds tolerance " + std::to_string(tol));

    double total = 0.0;
    double budget = (tol - tail_bound);
    int pieces = (singular_at_a ? levels_a : 0) + (singular_at_b ? levels_b : 0) + 1;
    double piece_tol = budget / pieces;

    double mid_lo = left_cut, mid_hi = right_cut;
    if (singular_at_a) {
        double upper = singular_at_b ? 0.5 * (a + b) : b;
        mid_lo = upper;
        for (int j = 0; j < levels_a; ++j) {
            double w_hi = a + (upper - a) * std::ldexp(1.0, -j);
            double w_lo = a + (upper - a) * std::ldexp(1.0, -(j + 1));
            if (!(w_lo > a)) break; // window collapsed onto the endpoint
            if (w_lo < w_hi) total += integrate_adaptive(f, w_lo, w_hi, piece_tol);
        }
    }
    if (singular_at_b) {
        double lower = singular_at_a ? 0.5 * (a + b) : a;
        mid_hi = lower;
        for (int j = 0; j < levels_b; ++j) {
            double w_lo = b - (b - lower) * std::ldexp(1.0, -j);
            double w_hi = b - (b - lower) * std::ldexp(1.0, -(j + 1));
            if (!(w_hi < b)) break; // window collapsed onto the endpoint
            if (w_lo < w_hi) total += integrate_adaptive(f, w_lo, w_hi, piece_tol);
        }
    }
    if (mid_lo < mid_hi) total += integrate_adaptive(f, mid_lo, mid_hi, piece_tol);
    return total;
}

} // namespace logfano

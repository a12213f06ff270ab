#pragma once

#include <vector>

#include "logfano/errors.hpp"

namespace logfano {

enum class Side { Primal, Dual };

// Sampled convex function on a uniform grid. Primal profiles live on a
// symmetric truncation of the real line with asymptotic slopes inside
// [-V/2, V/2]; dual profiles live on the moment interval itself.
struct ConvexProfile {
    Side side = Side::Primal;
    double lo = 0.0, hi = 0.0;
    std::vector<double> vals;

    int nodes() const { return static_cast<int>(vals.size()); }
    double spacing() const { return (hi - lo) / (nodes() - 1); }
    double x(int i) const { return lo + spacing() * i; }
    double max_abs_slope() const;

    void validate_convex(double tol = 1e-9) const;
};

// Discrete Legendre transform onto the given output grid (monotone-argmax
// scan, O(n + m)). The double transform returns the convex envelope of the
// input samples.
ConvexProfile legendre(const ConvexProfile& p, double out_lo, double out_hi, int out_nodes);
// Output range picked from the input's slope range (dual of a primal profile)
// or value range with padding (primal of a dual profile).
ConvexProfile legendre(const ConvexProfile& p, int out_nodes = 0);

// phi0(x) = V log(2 cosh(x/2)): smooth symmetric reference with slopes onto
// (-V/2, V/2) and phi0 - (V/2)|x| bounded.
ConvexProfile reference_potential(double V, double X_max, int nodes);
double reference_value(double V, double x);      // V log(2 cosh(x/2))
double reference_density(double V, double x);    // its second derivative
// Its Legendre dual sampled analytically on [-V/2, V/2] (strictly convex,
// suitable input for the entropy terms of functionals()).
ConvexProfile reference_dual_profile(double V, int nodes);

struct Functionals {
    double L;             // (V/2)(v(-V/2)+v(V/2)) - int v dy
    double E;             // (-L + int phi0(v') dy) / V
    double D;             // relative entropy of phi''/V against e^{-phi0}/Z0
    double D_round;       // relative entropy against the round density
    double F_minus_gamma; // -gamma E + D (the free-energy combination)
    double Ding_gamma;    // int v dy / V - (1/gamma) log int e^{-(gamma phi + (1-gamma) phi0)} dx
};

// v must be a Dual profile on [-V/2, V/2]; gamma > 0. The entropy terms use
// int log v'' dy from interior second differences, so they need strictly
// positive grid curvature; profiles with flat or kinked cells get D = F = inf
// (an atomic primal density has infinite relative entropy).
Functionals functionals(const ConvexProfile& v, double gamma, double V);

enum class RayKind { AbsVal, Translation };

struct SlopeFit {
    double fitted = 0.0;
    double theory = 0.0;
};

struct RaySample {
    double t, E, D, F, Ding;
};

// Free-energy conventions per ray: AbsVal tracks -gamma E + D (reference
// measure of the pair), Translation tracks -gamma E + D_round (entropy
// against the round measure), matching the slope formulas being tested:
//   AbsVal      F slope = V (gamma/4 - gamma/2 + 1/2)
//   Translation E slope = V/2, D slope = 1, F slope = 1 - gamma V/2.
struct RayReport {
    double gamma = 0.0;
    std::vector<RaySample> samples;
    SlopeFit E, D, F, Ding; // Ding.theory only set for ding_ray
};

RayReport ray_slopes(RayKind kind, double gamma, double V, const std::vector<double>& ts);

// The explicit piecewise ray phi_t = (|x|-t)_+ with phi0 = |x|, V = 2;
// theory slope 1/2 - (gamma-1)/gamma, gamma > 1.
RayReport ding_ray(double gamma, const std::vector<double>& ts);

// Least-squares slope over the largest-t half of the samples.
double fit_slope_upper_half(const std::vector<double>& ts, const std::vector<double>& ys);

} // namespace logfano

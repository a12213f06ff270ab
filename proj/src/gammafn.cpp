#include "logfano/gammafn.hpp"

#include <cmath>
#include <string>

namespace logfano {

namespace {
const double kLogPi = std::log(M_PI);

[[noreturn]] void domain_fail(const char* fn, double x) {
    throw NumericDomainError(std::string(fn) + ": argument " + std::to_string(x) +
                             " outside the valid domain (pole or out of range)");
}
} // namespace

double log_l_pos(double x) {
    if (!(x > 0.0 && x < 1.0)) domain_fail("log_l_pos", x);
    return std::lgamma(x) - std::lgamma(1.0 - x);
}

double log_neg_l(double y) {
    if (!(y > 0.0 && y < 1.0)) domain_fail("log_neg_l", y);
    // -l(-y) = pi / (sin(pi y) Gamma(1+y)^2) > 0 on (0,1).
    return kLogPi - std::log(std::sin(M_PI * y)) - 2.0 * std::lgamma(1.0 + y);
}

SignedLog log_l(double x) {
    if (x > 0.0 && x < 1.0) return {+1, log_l_pos(x)};
    if (x > -1.0 && x < 0.0) return {-1, log_neg_l(-x)};
    domain_fail("log_l", x);
}

SignedLog log_l_ext(double x) {
    if (x > 0.0 && x < 1.0) return {+1, log_l_pos(x)};
    if (x > 1.0 && x < 2.0) {
        // Gamma(1-x) < 0 for 1-x in (-1,0).
        double log_abs_gamma_1mx = kLogPi - std::log(std::sin(M_PI * (x - 1.0))) - std::lgamma(2.0 - x);
        return {-1, std::lgamma(x) - log_abs_gamma_1mx};
    }
    domain_fail("log_l_ext", x);
}

SignedLog neg_l_ext(double y) {
    if (!(y > 0.0 && y < 2.0) || y == 1.0) domain_fail("neg_l_ext", y);
    // -l(-y) = pi / (sin(pi y) Gamma(1+y)^2); sin flips sign at y = 1.
    double s = std::sin(M_PI * y);
    double log_abs = kLogPi - std::log(std::fabs(s)) - 2.0 * std::lgamma(1.0 + y);
    return {s > 0.0 ? +1 : -1, log_abs};
}

} // namespace logfano

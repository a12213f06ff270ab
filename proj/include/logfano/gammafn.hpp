#pragma once

#include "logfano/errors.hpp"

namespace logfano {

// l(x) = Gamma(x)/Gamma(1-x), the building block of every Gamma-product here.
// Signs are tracked explicitly; Gamma is never evaluated left of zero, the
// reflection formula log|Gamma(-y)| = log pi - log|sin(pi y)| - log Gamma(1+y)
// is used instead.
struct SignedLog {
    int sign;        // -1, 0, +1
    double log_abs;  // log|value|, -inf allowed for sign 0

    SignedLog operator*(const SignedLog& o) const { return {sign * o.sign, log_abs + o.log_abs}; }
    SignedLog operator/(const SignedLog& o) const { return {sign * o.sign, log_abs - o.log_abs}; }
};

// x in (-1,0) u (0,1); sign is + on (0,1), - on (-1,0).
SignedLog log_l(double x);

// log l(x) for x in (0,1); throws outside.
double log_l_pos(double x);

// log(-l(-y)) for y in (0,1), a positive quantity; throws outside.
double log_neg_l(double y);

// l on (0,2)\{1} and l(-y) for y in (0,2)\{1}, sign-tracked; used for the
// meromorphic continuation of the two-point arithmetic product.
SignedLog log_l_ext(double x);
SignedLog neg_l_ext(double y); // value -l(-y)

} // namespace logfano

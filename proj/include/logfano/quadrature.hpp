#pragma once

#include <functional>

#include "logfano/errors.hpp"

namespace logfano {

// Adaptive Simpson on [a,b]; f must be finite on the closed interval.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol);

// Same, but integrable logarithmic singularities are allowed at the flagged
// endpoints. Handled by geometric subdivision (ratio 1/2) toward the singular
// ends; the leftover tail is bounded with the local log model and must fall
// below the tolerance, else ConvergenceError reports the achieved bound.
double integrate_endpoint_log(const std::function<double(double)>& f, double a, double b,
                              double tol, bool singular_at_a, bool singular_at_b);

} // namespace logfano

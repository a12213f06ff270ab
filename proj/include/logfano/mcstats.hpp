#pragma once

#include <cmath>
#include <cstdint>

#include "logfano/errors.hpp"

namespace logfano {

// Log-space accumulator for positive Monte Carlo weights, mergeable across
// fixed streams so parallel and serial runs reduce in the same order.
// Zero-valued samples (indicator misses) count toward the mean; non-finite
// integrand evaluations are tracked separately.
struct StreamAcc {
    double max_lw = -INFINITY;
    double s1 = 0.0, s2 = 0.0;
    long long count = 0, zeros = 0, rejected = 0;

    void add_zero() {
        ++count;
        ++zeros;
    }

    void add(double lw) {
        ++count;
        if (!std::isfinite(lw)) {
            ++rejected;
            return;
        }
        if (lw > max_lw) {
            double scale = std::exp(max_lw - lw);
            s1 *= scale;
            s2 *= scale * scale;
            max_lw = lw;
        }
        double e = std::exp(lw - max_lw);
        s1 += e;
        s2 += e * e;
    }

    void merge(const StreamAcc& o) {
        count += o.count;
        zeros += o.zeros;
        rejected += o.rejected;
        if (o.s1 == 0.0) return;
        if (o.max_lw > max_lw) {
            double scale = (max_lw == -INFINITY) ? 0.0 : std::exp(max_lw - o.max_lw);
            s1 = s1 * scale + o.s1;
            s2 = s2 * scale * scale + o.s2;
            max_lw = o.max_lw;
        } else {
            double scale = std::exp(o.max_lw - max_lw);
            s1 += o.s1 * scale;
            s2 += o.s2 * scale * scale;
        }
    }

    struct LogMean {
        double log_mean;
        double stderr_log;
    };

    LogMean log_mean() const {
        if (count < 2 || s1 <= 0.0)
            throw ConvergenceError("Monte Carlo accumulator has no positive mass");
        double n = static_cast<double>(count);
        double mean = s1 / n;
        double var = (s2 / n - mean * mean) * (n / (n - 1.0));
        if (var < 0.0) var = 0.0;
        double se = std::sqrt(var / n);
        return {max_lw + std::log(mean), se / mean};
    }
};

} // namespace logfano

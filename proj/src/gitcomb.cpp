#include "logfano/gitcomb.hpp"

#include <algorithm>
#include <cstdlib>

namespace logfano {

P1Point P1Point::parse(const std::string& label) {
    if (label == "inf" || label == "Infinity" || label == "infinity" || label == "oo")
        return P1Point::inf();
    // "a" or "a+bi" / "a-bi" with decimal parts.
    const char* s = label.c_str();
    char* end = nullptr;
    double re = std::strtod(s, &end);
    if (end == s) throw ValidationError("cannot parse P^1 point '" + label + "'");
    double im = 0.0;
    if (*end != '\0') {
        const char* rest = end;
        char* end2 = nullptr;
        im = std::strtod(rest, &end2);
        if (end2 == rest || *end2 != 'i' || *(end2 + 1) != '\0')
            throw ValidationError("cannot parse P^1 point '" + label + "'");
    }
    return P1Point::finite({re, im});
}

bool is_semistable(const P1Config& config, GitGroup group) {
    const auto& pts = config.points;
    const long long N = static_cast<long long>(pts.size());
    if (N < 2) throw ValidationError("configuration needs N >= 2 points");
    auto mult_at = [&](const P1Point& p) {
        long long c = 0;
        for (const auto& q : pts)
            if (q == p) ++c;
        return c;
    };
    if (group == GitGroup::CStar) {
        return 2 * mult_at(P1Point::finite({0.0, 0.0})) <= N &&
               2 * mult_at(P1Point::inf()) <= N;
    }
    for (size_t i = 0; i < pts.size(); ++i) {
        bool seen_before = false;
        for (size_t j = 0; j < i; ++j)
            if (pts[j] == pts[i]) { seen_before = true; break; }
        if (!seen_before && 2 * mult_at(pts[i]) > N) return false;
    }
    return true;
}

std::vector<std::vector<Rational>> hypersimplex_vertices(int N) {
    if (N % 2 == 0 || N < 3 || N > 9)
        throw ValidationError("hypersimplex enumeration needs odd N in [3,9]");
    const Rational half(1, 2);
    const Rational target = Rational(N) / Rational(2);

    std::vector<std::vector<Rational>> vertices;
    // A basic feasible solution pins N-1 coordinates at a bound {0,1} and
    // solves the equality for the remaining one.
    for (int free = 0; free < N; ++free) {
        for (unsigned mask = 0; mask < (1u << (N - 1)); ++mask) {
            std::vector<Rational> t(N, Rational(0));
            Rational sum(0);
            int bit = 0;
            for (int i = 0; i < N; ++i) {
                if (i == free) continue;
                t[i] = (mask >> bit) & 1u ? Rational(1) : Rational(0);
                sum = sum + t[i];
                ++bit;
            }
            Rational tf = target - sum;
            if (tf < Rational(0) || tf > Rational(1)) continue;
            t[free] = tf;
            if (std::find(vertices.begin(), vertices.end(), t) == vertices.end())
                vertices.push_back(t);
        }
    }

    for (const auto& v : vertices) {
        int halves = 0;
        Rational sum(0);
        for (const auto& c : v) {
            if (!(c == Rational(0) || c == half || c == Rational(1)))
                throw NumericDomainError("hypersimplex vertex coordinate outside {0,1/2,1}");
            if (c == half) ++halves;
            sum = sum + c;
        }
        if (halves != 1 || sum != target)
            throw NumericDomainError("hypersimplex vertex fails the {0,1/2,1} structure");
    }
    return vertices;
}

Rational distortion_extremum(int N) {
    if (N % 2 == 0 || N < 3)
        throw ValidationError("distortion extremum needs odd N >= 3");
    if (N > 15)
        throw ValidationError("distortion extremum enumeration capped at N = 15");
    // Vertices of {p in [-1,1]^N, sum p = 0}, enumerated like the hypersimplex
    // (the two polytopes match under t = (p+1)/2).
    const Rational target(0);
    bool have_best = false;
    Rational best(0);
    for (int free = 0; free < N; ++free) {
        for (unsigned mask = 0; mask < (1u << (N - 1)); ++mask) {
            Rational sum(0);
            int bit = 0;
            std::vector<Rational> p(N, Rational(0));
            for (int i = 0; i < N; ++i) {
                if (i == free) continue;
                p[i] = (mask >> bit) & 1u ? Rational(1) : Rational(-1);
                sum = sum + p[i];
                ++bit;
            }
            Rational pf = target - sum;
            if (pf < Rational(-1) || pf > Rational(1)) continue;
            p[free] = pf;
            Rational val(0);
            for (const auto& c : p) val = val + (Rational(1) - c * c);
            val = val / Rational(N);
            if (!have_best || val < best) {
                best = val;
                have_best = true;
            }
        }
    }
    if (!have_best) throw NumericDomainError("empty vertex set in distortion extremum");
    return best;
}

} // namespace logfano

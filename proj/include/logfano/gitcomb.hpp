#pragma once

#include <complex>
#include <string>
#include <vector>

#include "logfano/rational.hpp"

namespace logfano {

// A point of P^1: a finite complex coordinate or the point at infinity.
// Multiplicity counting uses exact equality of the stored coordinates.
struct P1Point {
    bool infinity = false;
    std::complex<double> z{0.0, 0.0};

    static P1Point inf() { return P1Point{true, {0.0, 0.0}}; }
    static P1Point finite(std::complex<double> z) { return P1Point{false, z}; }
    static P1Point parse(const std::string& label);

    friend bool operator==(const P1Point& a, const P1Point& b) {
        if (a.infinity || b.infinity) return a.infinity == b.infinity;
        return a.z == b.z;
    }
};

struct P1Config {
    std::vector<P1Point> points; // repeats allowed, N >= 2
};

enum class GitGroup { PGL2, CStar };

// PGL2: no point value carries more than N/2 of the configuration.
// CStar (fixed points 0 and infinity): the same bound at the two fixed points
// only. Boundary multiplicity N/2 counts as semistable (closed condition).
bool is_semistable(const P1Config& config, GitGroup group);

// Vertices of {t in [0,1]^N : sum t_i = N/2} for odd N, enumerated as basic
// feasible solutions in exact arithmetic. Every vertex has coordinates in
// {0, 1/2, 1} with exactly one coordinate 1/2 (verified, else throws).
std::vector<std::vector<Rational>> hypersimplex_vertices(int N);

// min over vertices of {p in [-1,1]^N : sum p_i = 0} of (1/N) sum (1 - p_i^2),
// exact; equals 1/N for odd N.
Rational distortion_extremum(int N);

} // namespace logfano

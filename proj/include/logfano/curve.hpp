#pragma once

#include <string>
#include <vector>

#include "logfano/rational.hpp"

namespace logfano {

// Log Fano curve (P^1, Delta): weighted points with weights in (0,1) and
// volume V = 2 - sum(w) > 0. Positions of the support points never enter the
// classification, only their number and weights; labels exist for
// serialization and for marked-valuation witnesses.
struct LogFanoCurve {
    std::vector<std::string> support;
    std::vector<Rational> weights;

    static LogFanoCurve make(std::vector<std::string> support, std::vector<Rational> weights);
    // Auto-labels the support as p1..pm.
    static LogFanoCurve from_weights(std::vector<Rational> weights);

    int m() const { return static_cast<int>(weights.size()); }
    Rational volume() const;

    // Delta_w: two points with equal weight.
    bool is_delta_w() const {
        return m() == 2 && weights[0] == weights[1];
    }
};

enum class AutGroup { PGL2, Borel, CStar, Trivial };
enum class KClass { KUnstable, KSemistableOnly, KPolystableNontrivialAut, KStable };

const char* to_string(AutGroup g);
const char* to_string(KClass k);

struct CurveClassification {
    AutGroup aut_group;
    bool reductive;
    bool futaki_vanishes;
    KClass k_class;
};

CurveClassification classify(const LogFanoCurve& curve);

// delta = min{2/V, min_l 2(1-w_l)/V}: the large-N limit of the microscopic
// threshold and the stability invariant deciding the K-class.
Rational delta_invariant(const LogFanoCurve& curve);

// (1/(k N_k)) * sum of lattice points of k[a,b], N_k = #(k[a,b] cap Z).
// Requires k > 0 and ka, kb integral.
Rational quantized_barycenter(const Rational& a, const Rational& b, const Rational& k);

} // namespace logfano

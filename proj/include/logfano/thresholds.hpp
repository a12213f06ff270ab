#pragma once

#include <optional>

#include "logfano/curve.hpp"
#include "logfano/rational.hpp"

namespace logfano {

// The two Fulton-MacPherson valuation families that compute the thresholds on
// curves: Diagonal = c+1 points colliding anywhere (log discrepancy c+1 after
// the extra-variable trick, ratio 2k/(c+1)); Marked = c points colliding at a
// support point p_l (ratio 2k(1-w_l)/(c-1), c >= 2 since c = 1 has empty
// divisor multiplicity).
enum class ValFamily { Diagonal, Marked };

struct ValuationCandidate {
    ValFamily family;
    int codim;
    std::optional<int> point_index; // into curve.support, Marked only

    Rational ratio(const LogFanoCurve& curve, long long N) const;
};

struct ThresholdReport {
    RationalOrInf value;
    std::optional<ValuationCandidate> witness; // absent iff value infinite
};

// gamma^(N) = min{2(1-1/N)/V, min_l 2(1-w_l)/V}, exact, N >= 2.
Rational gamma_n(const LogFanoCurve& curve, long long N);

// gamma^(N),G over the GIT-semistable locus. Reductive curves only (m = 1 is
// refused); for trivial Aut this equals gamma_n. Infinite for Delta = 0 and
// N in {2,3}.
RationalOrInf gamma_n_reduced(const LogFanoCurve& curve, long long N);

// Independent route: enumerate every valuation candidate and minimize. With
// restrict_semistable the families are cut to the candidates meeting the
// semistable locus: Diagonal c <= floor(N/2)-1 for PGL2; Marked
// c <= floor(N/2) for C* (Diagonal is uncapped there, collisions at a generic
// point are C*-semistable). Ties report the Diagonal witness.
ThresholdReport lct_oracle(const LogFanoCurve& curve, long long N, bool restrict_semistable);

struct AsymptoticThresholds {
    Rational gamma_limit;                       // = delta invariant
    std::optional<Rational> gamma_limit_reduced; // nontrivial reductive Aut only
    std::optional<Rational> delta_a_reduced;     // Futaki-vanishing cases only
    std::optional<Rational> alpha_restricted;    // = delta_a / 2
};

AsymptoticThresholds asymptotic_thresholds(const LogFanoCurve& curve);

struct GibbsClassification {
    bool semistable;        // liminf gamma^(N) >= 1
    bool uniformly_stable;  // liminf gamma^(N) > 1
    // Defined for reductive curves only (absent for m = 1).
    std::optional<bool> polystable;
    std::optional<bool> uniformly_polystable;
    // Smallest N >= 2 with gamma^(N) > 1 (gamma^(N) increases in N, so the
    // stable levels are exactly N >= this); absent when no level is stable.
    std::optional<long long> first_stable_level_N;
};

bool gibbs_stable_at_level(const LogFanoCurve& curve, long long N);
GibbsClassification gibbs_classify(const LogFanoCurve& curve);

} // namespace logfano

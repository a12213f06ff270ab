#include "logfano/curve.hpp"

#include <set>

namespace logfano {

const char* to_string(AutGroup g) {
    switch (g) {
        case AutGroup::PGL2: return "PGL2";
        case AutGroup::Borel: return "Borel";
        case AutGroup::CStar: return "CStar";
        case AutGroup::Trivial: return "Trivial";
    }
    return "?";
}

const char* to_string(KClass k) {
    switch (k) {
        case KClass::KUnstable: return "KUnstable";
        case KClass::KSemistableOnly: return "KSemistableOnly";
        case KClass::KPolystableNontrivialAut: return "KPolystableNontrivialAut";
        case KClass::KStable: return "KStable";
    }
    return "?";
}

LogFanoCurve LogFanoCurve::make(std::vector<std::string> support, std::vector<Rational> weights) {
    if (support.size() != weights.size())
        throw ValidationError("support and weights must have the same length");
    std::set<std::string> seen;
    for (const auto& s : support) {
        if (!seen.insert(s).second)
            throw ValidationError("support labels must be pairwise distinct (duplicate '" + s + "')");
    }
    Rational sum(0);
    for (const auto& w : weights) {
        if (!(Rational(0) < w && w < Rational(1)))
            throw ValidationError("weight " + w.str() + " outside the open interval (0,1)");
        sum = sum + w;
    }
    if (!(sum < Rational(2)))
        throw ValidationError("not log Fano: V = 2 - sum(w) = " + (Rational(2) - sum).str() + " is not positive");
    LogFanoCurve c;
    c.support = std::move(support);
    c.weights = std::move(weights);
    return c;
}

LogFanoCurve LogFanoCurve::from_weights(std::vector<Rational> weights) {
    std::vector<std::string> support;
    support.reserve(weights.size());
    for (size_t i = 0; i < weights.size(); ++i) support.push_back("p" + std::to_string(i + 1));
    return make(std::move(support), std::move(weights));
}

Rational LogFanoCurve::volume() const {
    Rational sum(0);
    for (const auto& w : weights) sum = sum + w;
    return Rational(2) - sum;
}

Rational delta_invariant(const LogFanoCurve& curve) {
    Rational V = curve.volume();
    Rational best = Rational(2) / V; // valuation at a point off the support
    for (const auto& w : curve.weights) {
        Rational cand = Rational(2) * (Rational(1) - w) / V;
        if (cand < best) best = cand;
    }
    return best;
}

CurveClassification classify(const LogFanoCurve& curve) {
    CurveClassification out;
    switch (curve.m()) {
        case 0: out.aut_group = AutGroup::PGL2; break;
        case 1: out.aut_group = AutGroup::Borel; break;
        case 2: out.aut_group = AutGroup::CStar; break;
        default: out.aut_group = AutGroup::Trivial; break;
    }
    out.reductive = out.aut_group != AutGroup::Borel;
    out.futaki_vanishes = curve.m() == 0 || curve.is_delta_w();

    Rational delta = delta_invariant(curve);
    const Rational one(1);
    if (delta > one) {
        out.k_class = KClass::KStable;
    } else if (delta == one) {
        out.k_class = out.futaki_vanishes ? KClass::KPolystableNontrivialAut
                                          : KClass::KSemistableOnly;
    } else {
        out.k_class = KClass::KUnstable;
    }
    return out;
}

Rational quantized_barycenter(const Rational& a, const Rational& b, const Rational& k) {
    if (!(Rational(0) < k)) throw ValidationError("quantized barycenter needs k > 0");
    if (b < a) throw ValidationError("quantized barycenter needs a <= b");
    Rational ka = k * a, kb = k * b;
    if (ka.den() != 1 || kb.den() != 1)
        throw ValidationError("k*a and k*b must be integers (got " + ka.str() + ", " + kb.str() + ")");
    long long lo = ka.num(), hi = kb.num();
    long long count = hi - lo + 1;
    // Consecutive integers: sum = (lo+hi)*count/2, exact in rationals.
    Rational sum = Rational(lo + hi) * Rational(count) / Rational(2);
    return sum / (k * Rational(count));
}

} // namespace logfano

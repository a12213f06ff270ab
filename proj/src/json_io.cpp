#include "logfano/json_io.hpp"

namespace logfano {

LogFanoCurve curve_from_json(const json& j) {
    if (!j.is_object() || !j.contains("weights"))
        throw ValidationError("curve JSON must be an object with a 'weights' array");
    std::vector<Rational> weights;
    for (const auto& w : j.at("weights")) {
        if (w.is_string())
            weights.push_back(Rational::parse(w.get<std::string>()));
        else if (w.is_number_integer())
            weights.push_back(Rational(w.get<long long>()));
        else
            throw ValidationError("weights must be \"p/q\" strings");
    }
    if (j.contains("support")) {
        std::vector<std::string> support = j.at("support").get<std::vector<std::string>>();
        return LogFanoCurve::make(std::move(support), std::move(weights));
    }
    return LogFanoCurve::from_weights(std::move(weights));
}

json curve_to_json(const LogFanoCurve& c) {
    json j;
    j["support"] = c.support;
    std::vector<std::string> w;
    for (const auto& r : c.weights) w.push_back(r.str());
    j["weights"] = w;
    j["V"] = c.volume().str();
    return j;
}

json classification_to_json(const CurveClassification& cl) {
    return json{{"aut_group", to_string(cl.aut_group)},
                {"reductive", cl.reductive},
                {"futaki_vanishes", cl.futaki_vanishes},
                {"k_class", to_string(cl.k_class)}};
}

json gibbs_to_json(const GibbsClassification& g) {
    json j;
    j["semistable"] = g.semistable;
    j["uniformly_stable"] = g.uniformly_stable;
    if (g.polystable) j["polystable"] = *g.polystable;
    if (g.uniformly_polystable) j["uniformly_polystable"] = *g.uniformly_polystable;
    if (g.first_stable_level_N)
        j["first_stable_level_N"] = *g.first_stable_level_N;
    else
        j["first_stable_level_N"] = nullptr;
    return j;
}

json threshold_report_to_json(const ThresholdReport& r) {
    json j;
    j["value"] = r.value.str();
    if (r.witness) {
        j["witness"] = json{
            {"family", r.witness->family == ValFamily::Diagonal ? "diagonal" : "marked"},
            {"codim", r.witness->codim}};
        if (r.witness->point_index) j["witness"]["point_index"] = *r.witness->point_index;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

json asymptotic_to_json(const AsymptoticThresholds& a) {
    json j;
    j["gamma_limit"] = a.gamma_limit.str();
    j["gamma_limit_reduced"] = a.gamma_limit_reduced ? json(a.gamma_limit_reduced->str()) : json();
    j["delta_a_reduced"] = a.delta_a_reduced ? json(a.delta_a_reduced->str()) : json();
    j["alpha_restricted"] = a.alpha_restricted ? json(a.alpha_restricted->str()) : json();
    return j;
}

P1Config config_from_json(const json& j) {
    if (!j.is_object() || !j.contains("points"))
        throw ValidationError("config JSON must be an object with a 'points' array");
    P1Config c;
    for (const auto& p : j.at("points")) {
        if (p.is_string())
            c.points.push_back(P1Point::parse(p.get<std::string>()));
        else if (p.is_number())
            c.points.push_back(P1Point::finite({p.get<double>(), 0.0}));
        else
            throw ValidationError("points must be strings or numbers");
    }
    return c;
}

json observables_to_json(const Observables& o) {
    json j;
    j["mean_moment"] = {o.mean_moment[0], o.mean_moment[1], o.mean_moment[2]};
    j["quadrupole_dev"] = o.quadrupole_dev;
    j["mean_energy"] = o.mean_energy;
    j["var_energy"] = o.var_energy;
    j["acceptance_rate"] = o.acceptance_rate;
    json h = json::object();
    for (const auto& [key, val] : o.harmonic_means) {
        std::string name = "Y" + std::to_string(key.first) + "_" + std::to_string(key.second);
        h[name] = {val.real(), val.imag()};
    }
    j["harmonic_means"] = h;
    return j;
}

} // namespace logfano

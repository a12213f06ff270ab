#pragma once

#include <json.hpp>

#include "logfano/curve.hpp"
#include "logfano/gitcomb.hpp"
#include "logfano/sampler.hpp"
#include "logfano/thresholds.hpp"

namespace logfano {

using nlohmann::json;

// {"support": [...], "weights": ["1/2", ...]}; support may be omitted.
LogFanoCurve curve_from_json(const json& j);
json curve_to_json(const LogFanoCurve& c);

json classification_to_json(const CurveClassification& cl);
json gibbs_to_json(const GibbsClassification& g);
json threshold_report_to_json(const ThresholdReport& r);
json asymptotic_to_json(const AsymptoticThresholds& a);

// {"points": ["0", "inf", "1+2i", ...]}
P1Config config_from_json(const json& j);

json observables_to_json(const Observables& o);

} // namespace logfano

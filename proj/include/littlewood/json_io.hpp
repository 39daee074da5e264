#pragma once

#include <string>

#include "littlewood/dirichlet.hpp"
#include "littlewood/pairs.hpp"
#include "littlewood/witness.hpp"

#include "json.hpp"

namespace lw {

// Serialization conventions: big integers as decimal strings, rationals as
// "p/q" strings, enclosures as {"lo": "p/q", "hi": "p/q"}.

nlohmann::json to_json(const BigInt& v);
nlohmann::json to_json(const BigRat& v);
nlohmann::json to_json(const Enclosure& e);
nlohmann::json to_json(const ConvergentTable& t);
nlohmann::json to_json(const ErrorRecord& r);
nlohmann::json to_json(const DirichletPoint& p);
nlohmann::json to_json(const HypothesisReport& r);
nlohmann::json to_json(const WitnessCertificate& c);
nlohmann::json to_json(const SigmaDiagnostics& d);
nlohmann::json to_json(const SublevelSet& s);
nlohmann::json to_json(const StageReport& r);
nlohmann::json to_json(const LittlewoodTerm& t);
nlohmann::json to_json(const RatioVerdict& v);
nlohmann::json to_json(const FactorizationReport& r);

BigInt bigint_from_json(const nlohmann::json& j);
BigRat bigrat_from_json(const nlohmann::json& j);
Enclosure enclosure_from_json(const nlohmann::json& j);
DirichletPoint dirichlet_point_from_json(const nlohmann::json& j);
WitnessCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace lw

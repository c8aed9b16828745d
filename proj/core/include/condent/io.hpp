#pragma once

#include "condent/convexlab.hpp"
#include "condent/entropy.hpp"
#include "condent/majorization.hpp"
#include "condent/params.hpp"
#include "condent/thermo.hpp"
#include "condent/transform.hpp"

#include <json.hpp>

#include <string>

namespace condent::io {

using Json = nlohmann::json;

// Compact JSON with every floating-point number printed to 17 significant
// digits and infinities as "inf" / "-inf".
std::string write(const Json& j);

// Parsers throw SchemaError carrying a JSON pointer to the offending node.
Json parse_text(const std::string& text, const std::string& source);

Json to_json(ExtendedReal v);
ExtendedReal extended_from_json(const Json& j, const std::string& ptr);

Json to_json(const JointDist& j);
JointDist joint_from_json(const Json& j, const std::string& ptr = "");

Json to_json(const ProbVec& p);
ProbVec probvec_from_json(const Json& j, const std::string& ptr = "");

Json to_json(const DiscreteMeasure& m);
DiscreteMeasure measure_from_json(const Json& j, const std::string& ptr = "");

Json to_json(const BulkParam& p);
BulkParam bulk_from_json(const Json& j, const std::string& ptr = "");

Json to_json(const EntropyFamily& f);
EntropyFamily family_from_json(const Json& j, const std::string& ptr = "");

Json to_json(const MixtureEntropy& m);
MixtureEntropy mixture_from_json(const Json& j, const std::string& ptr = "");

Json to_json(const CondChannel& c);
CondChannel channel_from_json(const Json& j, const std::string& ptr = "");

Json to_json(const RationalMatrix& m);
RationalMatrix rational_matrix_from_json(const Json& j, const std::string& ptr = "");

Json to_json(const OracleCertificate& c);
OracleCertificate certificate_from_json(const Json& j, const std::string& ptr = "");

Json to_json(const AdmissibilityReport& r);
Json to_json(const Grid& g);
Json to_json(const LargeSampleReport& r);
Json to_json(const RateEstimate& r);

Json to_json(const GibbsSpec& g);
GibbsSpec gibbs_from_json(const Json& j, const std::string& ptr = "");
Json to_json(const EmbedSpec& e);
Json to_json(const SecondLawsReport& r);

Json to_json(const Direction& d);
Json to_json(const CurvatureSample& s);
Json to_json(const FalsifierReport& r);

}  // namespace condent::io

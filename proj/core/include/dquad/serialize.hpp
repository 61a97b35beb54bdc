#pragma once

#include <string>

#include <json.hpp>

#include "dquad/constructions.hpp"
#include "dquad/families.hpp"
#include "dquad/search.hpp"
#include "dquad/tuples.hpp"

namespace dquad {

using json = nlohmann::json;

// Every big integer crosses the boundary as a decimal string; rationals as
// "num/den". Doubles are emitted as JSON numbers.

// {"n", "elements", "roots": [[i, j, r] as strings], "metrics": {...}}
json tuple_record_json(const Tuple& t, const Certificate& cert, const Metrics& m);
json tuple_record_json(const Tuple& t);

// Round-trip parse of tuple_record_json (re-verifies).
Tuple tuple_record_from_json(const json& j);

json verify_failure_json(const VerifyFailure& f);

json search_record_json(const SearchRecord& rec);
std::string search_record_csv_row(const SearchRecord& rec);
extern const char* const kSearchCsvHeader;

// {"id","param","elements":[[coeff-strings]],"n":[...],"claimed_ratio","requires_nonsquare_n"}
json family_json(const Family& f);
Family family_from_json(const json& j);

json family_proof_json(const FamilyProof& proof);

json parity_report_json(const std::vector<ParityEntry>& entries);

json ratio_points_json(const std::string& id, const std::vector<RatioPoint>& points);

json rational_tuple_json(const RationalTuple& rt);
json chain920_json(const Chain920Result& r);
json chain32_json(const Chain32Result& r);

json witness_json(const WitnessResult& w);

json mod4_report_json(const Mod4Report& r);
json lower_bound_report_json(const LowerBoundReport& r);

}  // namespace dquad

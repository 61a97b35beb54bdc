#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dquad/serialize.hpp"

using namespace dquad;

namespace {

std::vector<Int> ints(std::initializer_list<long> xs) {
    std::vector<Int> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("tuple record schema and round trip") {
    Tuple t = Tuple::make(ints({1, 3, 8, 120}), 1);
    json j = tuple_record_json(t);
    CHECK(j["n"] == "1");
    CHECK(j["elements"] == json::array({"1", "3", "8", "120"}));
    REQUIRE(j["roots"].size() == 6);
    // roots are [i, j, r] triples of decimal strings
    CHECK(j["roots"][0] == json::array({"0", "1", "2"}));
    CHECK(j["metrics"]["max_abs"] == "120");
    CHECK(j["metrics"]["log_ratio"].is_null());

    Tuple back = tuple_record_from_json(json::parse(j.dump()));
    CHECK(back == t);
    CHECK(tuple_record_json(back) == j);
}

TEST_CASE("tuple record with big integers and negative n") {
    Tuple t = scale(Tuple::make(ints({1, 18, 29, 93}), 7), Int("1000000000000000000000"));
    json j = tuple_record_json(t);
    Tuple back = tuple_record_from_json(json::parse(j.dump()));
    CHECK(back == t);
    CHECK(j["metrics"]["log_ratio"].is_number());
}

TEST_CASE("verify failure json") {
    auto result = verify(ints({1, 2, 3}), 1);
    const auto& f = std::get<VerifyFailure>(result);
    json j = verify_failure_json(f);
    CHECK(j["valid"] == false);
    CHECK(j["structural"] == false);
    CHECK(j["pair"] == json::array({0, 1}));
    CHECK(j["value"] == "3");
}

TEST_CASE("search record json and csv agree") {
    auto records = find_quadruples(7, 100);
    REQUIRE(records.size() == 2);
    const auto& rec = records[1];
    json j = search_record_json(rec);
    CHECK(j["n"] == "7");
    CHECK(j["regular_triples"].size() == 2);

    std::string csv = search_record_csv_row(rec);
    // n,elements,max_abs,d_over_n2,log_ratio,regular_triple_count
    auto comma1 = csv.find(',');
    auto quote_end = csv.find('"', comma1 + 2);
    CHECK(csv.substr(0, comma1) == "7");
    CHECK(csv.substr(comma1 + 1, quote_end - comma1) == "\"1 18 29 93\"");
    std::string rest = csv.substr(quote_end + 2);
    CHECK(rest.substr(0, rest.find(',')) == "93");
    CHECK(csv.back() == '2');  // two regular triples
    // the two doubles parse back to the metric values
    std::size_t pos = 0;
    std::string tail = rest.substr(rest.find(',') + 1);
    double d_over_n2 = std::stod(tail, &pos);
    CHECK(d_over_n2 == doctest::Approx(93.0 / 49.0).epsilon(1e-14));
    double log_ratio = std::stod(tail.substr(pos + 1));
    CHECK(log_ratio == doctest::Approx(2.3292953).epsilon(1e-7));
}

TEST_CASE("family json export and import round trip") {
    for (const auto& fam : family_registry()) {
        json j = family_json(fam);
        Family back = family_from_json(json::parse(j.dump()));
        CHECK(back.id == fam.id);
        CHECK(back.elements.size() == fam.elements.size());
        for (std::size_t i = 0; i < fam.elements.size(); ++i)
            CHECK(back.elements[i] == fam.elements[i]);
        CHECK(back.n_poly == fam.n_poly);
        CHECK(back.claimed_ratio == fam.claimed_ratio);
        CHECK(back.requires_nonsquare_n == fam.requires_nonsquare_n);
        CHECK(back.param_offset == fam.param_offset);
        // imported families evaluate and certify identically
        family_prove(back);
    }
}

TEST_CASE("family json format, exact coefficient strings") {
    json j = family_json(family_lookup("sec2_zform"));
    CHECK(j["elements"][1] == json::array({"17/16", "0", "-72", "0", "256"}));
    CHECK(j["n"] == json::array({"17", "0", "-64"}));
    CHECK(j["param_offset"] == "-1/8");
    json j2 = family_json(family_lookup("two_fifths"));
    CHECK(j2["claimed_ratio"] == "2/5");
    CHECK(j2["requires_nonsquare_n"] == true);
}

TEST_CASE("custom family import") {
    json j;
    j["id"] = "custom";
    j["param"] = "k";
    j["elements"] = {json::array({"-1", "1"}), json::array({"1", "1"}),
                     json::array({"0", "4"}), json::array({"0", "-4", "0", "16"})};
    j["n"] = json::array({"1"});
    j["claimed_ratio"] = nullptr;
    j["requires_nonsquare_n"] = false;
    Family f = family_from_json(j);
    CHECK(family_eval(f, 2).elements() == ints({1, 3, 8, 120}));
    family_prove(f);
}

TEST_CASE("proof json schema") {
    json j = family_proof_json(family_prove("d_4k3"));
    CHECK(j["id"] == "d_4k3");
    REQUIRE(j["pairs"].size() == 6);
    CHECK(j["pairs"][0]["i"] == 0);
    CHECK(j["pairs"][0]["j"] == 1);
    CHECK(j["pairs"][0]["root_coeffs"] == json::array({"2", "3"}));  // 3k+2
}

TEST_CASE("rational tuple and chain json") {
    auto chain = chain_920(1);
    json j = chain920_json(chain);
    CHECK(j["n"] == "221/4");
    CHECK(j["state"]["t"] == "8");
    CHECK(j["state"]["r"] == "11/2");
    REQUIRE(j["roots"].size() == 6);

    auto c32 = chain_32(5, 2);
    json j32 = chain32_json(c32);
    CHECK(j32["n"] == "165249/256");
    CHECK(j32["state"]["x"] == "-415/16");
    CHECK(j32["state"]["y"] == "-109/4");
}

TEST_CASE("witness json") {
    auto result = execute_witness(plan_witness(3, make_rat(1, 10)));
    json j = witness_json(result);
    CHECK(j["delta"] == "3");
    CHECK(j["epsilon"] == "1/10");
    CHECK(j["family"] == "sec2_main");
    CHECK(j["l1"] == 1);
    CHECK(j["l2"] == 0);
    CHECK(j["achieved_ratio"].is_number());
    // y and n are decimal strings of potentially huge integers
    CHECK(j["y"].is_string());
    CHECK(j["n"].is_string());
}

TEST_CASE("audit report json") {
    json j = mod4_report_json(audit_mod4(-10, 10, 20));
    CHECK(j["total_hits"] == 0);
    CHECK(j["entries"].size() == 6);  // -10, -6, -2, 2, 6, 10
    json lb = lower_bound_report_json(audit_lower_bound(100));
    CHECK(lb["hits"] == 0);
    CHECK(lb["checked"] == 84);
}

#include "dquad/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "dquad/errors.hpp"

namespace dquad {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

json metrics_json(const Metrics& m) {
    json j;
    j["max_abs"] = m.max_abs.get_str();
    j["log_ratio"] = m.log_ratio ? json(*m.log_ratio) : json(nullptr);
    j["d_over_n2"] = m.d_over_n2;
    return j;
}

json roots_json(const Certificate& cert) {
    json roots = json::array();
    for (const auto& [pair, root] : cert.roots)
        roots.push_back({std::to_string(pair.first), std::to_string(pair.second),
                         root.get_str()});
    return roots;
}

json coeff_strings(const Poly& p) {
    json arr = json::array();
    for (const Rat& c : p.coeffs()) arr.push_back(rat_to_string(c));
    return arr;
}

Poly poly_from_coeff_strings(const json& arr) {
    std::vector<Rat> coeffs;
    for (const auto& c : arr) coeffs.push_back(rat_from_string(c.get<std::string>()));
    return Poly::from_coeffs(std::move(coeffs));
}

}  // namespace

json tuple_record_json(const Tuple& t, const Certificate& cert, const Metrics& m) {
    json j;
    j["n"] = t.n().get_str();
    json elems = json::array();
    for (const Int& e : t.elements()) elems.push_back(e.get_str());
    j["elements"] = elems;
    j["roots"] = roots_json(cert);
    j["metrics"] = metrics_json(m);
    return j;
}

json tuple_record_json(const Tuple& t) {
    return tuple_record_json(t, t.certificate(), metrics(t));
}

Tuple tuple_record_from_json(const json& j) {
    std::vector<Int> elements;
    for (const auto& e : j.at("elements"))
        elements.emplace_back(e.get<std::string>());
    return Tuple::make(std::move(elements), Int(j.at("n").get<std::string>()));
}

json verify_failure_json(const VerifyFailure& f) {
    json j;
    j["valid"] = false;
    j["structural"] = f.structural();
    j["message"] = f.message;
    if (f.kind == VerifyFailure::Kind::PairNotSquare) {
        j["pair"] = {f.i, f.j};
        j["a_i"] = f.a.get_str();
        j["a_j"] = f.b.get_str();
        j["value"] = f.value.get_str();
    }
    return j;
}

json search_record_json(const SearchRecord& rec) {
    json j = tuple_record_json(rec.tuple, rec.certificate, rec.metrics);
    json triples = json::array();
    for (const auto& t : rec.regular_triples) triples.push_back({t[0], t[1], t[2]});
    j["regular_triples"] = triples;
    return j;
}

const char* const kSearchCsvHeader =
    "n,elements,max_abs,d_over_n2,log_ratio,regular_triple_count";

std::string search_record_csv_row(const SearchRecord& rec) {
    std::ostringstream out;
    out << rec.tuple.n().get_str() << ",\"";
    const auto& e = rec.tuple.elements();
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) out << " ";
        out << e[i].get_str();
    }
    out << "\"," << rec.metrics.max_abs.get_str() << ","
        << fmt_double(rec.metrics.d_over_n2) << ",";
    if (rec.metrics.log_ratio) out << fmt_double(*rec.metrics.log_ratio);
    out << "," << rec.regular_triples.size();
    return out.str();
}

json family_json(const Family& f) {
    json j;
    j["id"] = f.id;
    j["param"] = f.param;
    json elems = json::array();
    for (const Poly& e : f.elements) elems.push_back(coeff_strings(e));
    j["elements"] = elems;
    j["n"] = coeff_strings(f.n_poly);
    j["claimed_ratio"] = f.claimed_ratio ? json(rat_to_string(*f.claimed_ratio)) : json(nullptr);
    j["requires_nonsquare_n"] = f.requires_nonsquare_n;
    if (f.param_offset != 0) j["param_offset"] = rat_to_string(f.param_offset);
    if (f.min_param) j["min_param"] = f.min_param->get_str();
    return j;
}

Family family_from_json(const json& j) {
    Family f;
    f.id = j.at("id").get<std::string>();
    f.param = j.at("param").get<std::string>();
    for (const auto& e : j.at("elements")) f.elements.push_back(poly_from_coeff_strings(e));
    f.n_poly = poly_from_coeff_strings(j.at("n"));
    if (j.contains("claimed_ratio") && !j["claimed_ratio"].is_null())
        f.claimed_ratio = rat_from_string(j["claimed_ratio"].get<std::string>());
    f.requires_nonsquare_n = j.value("requires_nonsquare_n", true);
    if (j.contains("param_offset"))
        f.param_offset = rat_from_string(j["param_offset"].get<std::string>());
    if (j.contains("min_param")) f.min_param = Int(j["min_param"].get<std::string>());
    if (f.elements.size() < 2) throw UsageError("family needs at least 2 elements");
    return f;
}

json family_proof_json(const FamilyProof& proof) {
    json j;
    j["id"] = proof.id;
    json pairs = json::array();
    for (const auto& [pair, root] : proof.pair_roots) {
        json entry;
        entry["i"] = pair.first;
        entry["j"] = pair.second;
        entry["root_coeffs"] = coeff_strings(root);
        pairs.push_back(std::move(entry));
    }
    j["pairs"] = pairs;
    return j;
}

namespace {
const char* parity_name(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        default: return "neither";
    }
}
}  // namespace

json parity_report_json(const std::vector<ParityEntry>& entries) {
    json arr = json::array();
    for (const auto& e : entries) {
        json j;
        j["family"] = e.family;
        j["polynomial"] = e.label;
        j["parity"] = parity_name(e.parity);
        j["certified"] = e.certified;
        arr.push_back(std::move(j));
    }
    return arr;
}

json ratio_points_json(const std::string& id, const std::vector<RatioPoint>& points) {
    json j;
    j["id"] = id;
    json arr = json::array();
    for (const auto& p : points) {
        json e;
        e["param"] = p.param.get_str();
        if (p.excluded) {
            e["excluded"] = true;
            e["note"] = p.note;
        } else {
            e["log_ratio"] = p.log_ratio ? json(*p.log_ratio) : json(nullptr);
            e["d_over_n2"] = p.d_over_n2;
            e["d_over_n3"] = p.d_over_n3;
        }
        arr.push_back(std::move(e));
    }
    j["points"] = arr;
    return j;
}

json rational_tuple_json(const RationalTuple& rt) {
    json j;
    j["n"] = rat_to_string(rt.n);
    json elems = json::array();
    for (const Rat& e : rt.elements) elems.push_back(rat_to_string(e));
    j["elements"] = elems;
    json roots = json::array();
    if (auto cert = verify_rational(rt)) {
        for (const auto& [pair, root] : cert->roots)
            roots.push_back({std::to_string(pair.first), std::to_string(pair.second),
                             rat_to_string(root)});
    }
    j["roots"] = roots;
    return j;
}

json chain920_json(const Chain920Result& r) {
    json j = rational_tuple_json(r.tuple);
    j["state"] = {{"v", rat_to_string(r.v)}, {"t", rat_to_string(r.t)},
                  {"u", rat_to_string(r.u)}, {"a", rat_to_string(r.a)},
                  {"b", rat_to_string(r.b)}, {"r", rat_to_string(r.r)}};
    return j;
}

json chain32_json(const Chain32Result& r) {
    json j = rational_tuple_json(r.tuple);
    j["state"] = {{"b", rat_to_string(r.state.b)}, {"s", rat_to_string(r.state.s)},
                  {"t", rat_to_string(r.state.t)}, {"r", rat_to_string(r.state.r)},
                  {"x", rat_to_string(r.state.x)}, {"y", rat_to_string(r.state.y_val)}};
    return j;
}

json witness_json(const WitnessResult& w) {
    json j;
    j["delta"] = rat_to_string(w.plan.target_delta);
    j["epsilon"] = rat_to_string(w.plan.epsilon);
    j["family"] = w.plan.family_id;
    j["l1"] = w.plan.l1;
    j["l2"] = w.plan.l2;
    j["y"] = w.y.get_str();
    j["n"] = w.tuple.n().get_str();
    json elems = json::array();
    for (const Int& e : w.tuple.elements()) elems.push_back(e.get_str());
    j["elements"] = elems;
    j["achieved_ratio"] = w.achieved_ratio;
    return j;
}

json mod4_report_json(const Mod4Report& r) {
    json j;
    j["n_from"] = r.n_from.get_str();
    j["n_to"] = r.n_to.get_str();
    j["bound"] = r.bound.get_str();
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"n", e.n.get_str()}, {"count", e.count}});
    j["entries"] = entries;
    j["total_hits"] = r.total_hits;
    return j;
}

json lower_bound_report_json(const LowerBoundReport& r) {
    json j;
    j["n_max"] = r.n_max.get_str();
    j["checked"] = r.checked;
    j["hits"] = r.hits;
    return j;
}

}  // namespace dquad

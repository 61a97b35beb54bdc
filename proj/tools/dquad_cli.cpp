// dquad: verify, search for, certify and construct D(n)-m-tuples.
//
// Exit codes: 0 success, 1 semantic negative (invalid tuple, or nothing
// found under --expect-nonempty), 2 usage/precondition error.

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dquad/constructions.hpp"
#include "dquad/errors.hpp"
#include "dquad/families.hpp"
#include "dquad/search.hpp"
#include "dquad/serialize.hpp"
#include "dquad/tuples.hpp"

namespace {

using dquad::Int;
using dquad::Rat;
using json = dquad::json;

constexpr int kOk = 0;
constexpr int kSemanticNegative = 1;
constexpr int kUsage = 2;

Int parse_int(const std::string& text) {
    try {
        return Int(text);
    } catch (const std::invalid_argument&) {
        throw dquad::UsageError("not an integer: " + text);
    }
}

std::vector<Int> parse_elements(const std::string& csv) {
    std::vector<Int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto first = item.find_first_not_of(" \t");
        auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos)
            throw dquad::UsageError("empty element in list: " + csv);
        out.push_back(parse_int(item.substr(first, last - first + 1)));
    }
    if (out.empty()) throw dquad::UsageError("no elements given");
    return out;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

int default_workers() {
    if (const char* env = std::getenv("DQUAD_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

struct SearchOptions {
    std::string n_text, n_from_text, n_to_text;
    std::string bound_text = "100";
    std::string min_ratio;        // empty with min_ratio_given = paper default 9/4
    bool min_ratio_given = false;
    bool require_regular = false;
    std::string small_element;
    int workers = default_workers();
    std::string format = "json";
    bool expect_nonempty = false;
    bool progress = false;
    bool no_mod4_shortcut = false;
};

int run_search(const SearchOptions& opt) {
    dquad::SearchTask task;
    if (!opt.n_text.empty()) {
        task.n_from = task.n_to = parse_int(opt.n_text);
    } else if (!opt.n_from_text.empty() && !opt.n_to_text.empty()) {
        task.n_from = parse_int(opt.n_from_text);
        task.n_to = parse_int(opt.n_to_text);
    } else {
        throw dquad::UsageError("need --n or both --n-from and --n-to");
    }
    task.bound = parse_int(opt.bound_text);
    if (opt.min_ratio_given)
        task.min_d_over_n2 = opt.min_ratio.empty() ? dquad::make_rat(9, 4)
                                                   : dquad::rat_from_string(opt.min_ratio);
    task.require_regular_triple = opt.require_regular;
    if (!opt.small_element.empty()) task.require_small_element = parse_int(opt.small_element);
    task.workers = opt.workers;
    // surveys skip the proved n = 2 (mod 4) obstruction unless told not to
    task.skip_mod4 = !opt.no_mod4_shortcut;

    std::mutex progress_mutex;
    if (opt.progress) {
        task.progress = [&progress_mutex](const Int& n, std::size_t done, std::size_t total) {
            std::lock_guard<std::mutex> lock(progress_mutex);
            std::cerr << "done n=" << n.get_str() << " (" << done << "/" << total << ")\n";
        };
    }

    auto records = dquad::search_range(task);
    if (opt.format == "csv") {
        std::cout << dquad::kSearchCsvHeader << "\n";
        for (const auto& rec : records) std::cout << dquad::search_record_csv_row(rec) << "\n";
    } else if (opt.format == "json") {
        for (const auto& rec : records) emit(dquad::search_record_json(rec));
    } else {
        throw dquad::UsageError("unknown format: " + opt.format);
    }
    if (opt.expect_nonempty && records.empty()) return kSemanticNegative;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact D(n)-m-tuple toolkit"};
    app.require_subcommand(1);

    // verify
    std::string v_n, v_elements;
    auto* cmd_verify = app.add_subcommand("verify", "check a candidate D(n)-tuple");
    cmd_verify->add_option("--n", v_n, "the n of the D(n) property")->required();
    cmd_verify->add_option("--elements", v_elements, "comma-separated elements")->required();

    // search
    SearchOptions s;
    auto* cmd_search = app.add_subcommand("search", "enumerate D(n)-quadruples up to a bound");
    cmd_search->add_option("--n", s.n_text, "single n");
    cmd_search->add_option("--n-from", s.n_from_text, "range start (inclusive)");
    cmd_search->add_option("--n-to", s.n_to_text, "range end (inclusive)");
    cmd_search->add_option("--bound", s.bound_text, "max |element|")->required();
    cmd_search->add_option("--min-ratio", s.min_ratio,
                           "keep records with max|a_i| >= ratio * n^2")
        ->expected(0, 1)
        ->default_str("")
        ->type_name("RAT");
    cmd_search->add_flag("--regular", s.require_regular,
                         "keep records containing a regular triple");
    cmd_search->add_option("--small-element", s.small_element,
                           "keep records with some |a_i| <= value");
    cmd_search->add_option("--workers", s.workers, "worker threads (env DQUAD_WORKERS)");
    cmd_search->add_option("--format", s.format, "json | csv");
    cmd_search->add_flag("--expect-nonempty", s.expect_nonempty,
                         "exit 1 when nothing is found");
    cmd_search->add_flag("--progress", s.progress, "progress lines on stderr");
    cmd_search->add_flag("--no-mod4-shortcut", s.no_mod4_shortcut,
                         "search n = 2 (mod 4) instead of skipping it");

    // family
    auto* cmd_family = app.add_subcommand("family", "parametric family registry");
    auto* fam_list = cmd_family->add_subcommand("list", "all registry families as JSON");
    std::string f_name, f_param;
    auto* fam_eval = cmd_family->add_subcommand("eval", "evaluate a family at a parameter");
    fam_eval->add_option("--name", f_name)->required();
    fam_eval->add_option("--param", f_param, "integer (or rational on the family grid)")
        ->required();
    std::string fp_name;
    auto* fam_prove = cmd_family->add_subcommand("prove", "symbolically certify a family");
    fam_prove->add_option("--name", fp_name)->required();
    std::string ft_name, ft_from, ft_to;
    auto* fam_table = cmd_family->add_subcommand("table", "evaluate over a parameter range");
    fam_table->add_option("--name", ft_name)->required();
    fam_table->add_option("--from", ft_from)->required();
    fam_table->add_option("--to", ft_to)->required();
    auto* fam_parity = cmd_family->add_subcommand("parity", "parity audit report");
    cmd_family->require_subcommand(1);

    // construct
    auto* cmd_construct = app.add_subcommand("construct", "run the construction chains");
    std::string c_v;
    auto* con_920 = cmd_construct->add_subcommand("chain920", "quartic-point route");
    con_920->add_option("--v", c_v)->required();
    std::string c_b, c_s;
    auto* con_32 = cmd_construct->add_subcommand("chain32", "rational x-y=t/2 route");
    con_32->add_option("--b", c_b)->required();
    con_32->add_option("--s", c_s)->required();
    std::string c_spec_v;
    auto* con_spec = cmd_construct->add_subcommand("specialize", "integer 2/5-family instance");
    con_spec->add_option("--v", c_spec_v)->required();
    cmd_construct->require_subcommand(1);

    // witness
    std::string w_delta, w_epsilon = "0.05";
    auto* cmd_witness = app.add_subcommand("witness", "realize a target log-ratio");
    cmd_witness->add_option("--delta", w_delta, "target in [2/5, 3]")->required();
    cmd_witness->add_option("--epsilon", w_epsilon, "tolerance (> 0)");

    // audit
    auto* cmd_audit = app.add_subcommand("audit", "re-check the proved obstructions");
    std::string a_from, a_to, a_bound;
    auto* audit_mod4 = cmd_audit->add_subcommand("mod4", "n = 2 (mod 4) emptiness");
    audit_mod4->add_option("--n-from", a_from)->required();
    audit_mod4->add_option("--n-to", a_to)->required();
    audit_mod4->add_option("--bound", a_bound)->required();
    std::string a_nmax;
    auto* audit_lb = cmd_audit->add_subcommand("lower-bound", "no quadruple below n^(1/4)");
    audit_lb->add_option("--n-max", a_nmax)->required();
    cmd_audit->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*cmd_verify) {
            auto result = dquad::verify(parse_elements(v_elements), parse_int(v_n));
            if (auto* failure = std::get_if<dquad::VerifyFailure>(&result)) {
                emit(dquad::verify_failure_json(*failure));
                return kSemanticNegative;
            }
            auto t = dquad::Tuple::make(parse_elements(v_elements), parse_int(v_n));
            emit(dquad::tuple_record_json(t, std::get<dquad::Certificate>(result),
                                          dquad::metrics(t)));
            return kOk;
        }
        if (*cmd_search) {
            s.min_ratio_given = cmd_search->count("--min-ratio") > 0;
            return run_search(s);
        }
        if (*fam_list) {
            json arr = json::array();
            for (const auto& fam : dquad::family_registry())
                arr.push_back(dquad::family_json(fam));
            emit(arr);
            return kOk;
        }
        if (*fam_eval) {
            auto t = dquad::family_eval(f_name, dquad::rat_from_string(f_param));
            json j = dquad::tuple_record_json(t);
            j["id"] = f_name;
            j["param"] = f_param;
            emit(j);
            return kOk;
        }
        if (*fam_prove) {
            emit(dquad::family_proof_json(dquad::family_prove(fp_name)));
            return kOk;
        }
        if (*fam_table) {
            Int from = parse_int(ft_from), to = parse_int(ft_to);
            if (from > to) throw dquad::UsageError("--from must be <= --to");
            std::vector<Int> params;
            for (Int p = from; p <= to; ++p) params.push_back(p);
            emit(dquad::ratio_points_json(ft_name, dquad::family_ratio_limit(ft_name, params)));
            return kOk;
        }
        if (*fam_parity) {
            emit(dquad::parity_report_json(dquad::family_parity_audit()));
            return kOk;
        }
        if (*con_920) {
            emit(dquad::chain920_json(dquad::chain_920(dquad::rat_from_string(c_v))));
            return kOk;
        }
        if (*con_32) {
            emit(dquad::chain32_json(
                dquad::chain_32(dquad::rat_from_string(c_b), dquad::rat_from_string(c_s))));
            return kOk;
        }
        if (*con_spec) {
            auto t = dquad::specialize_32(parse_int(c_spec_v));
            emit(dquad::tuple_record_json(t));
            return kOk;
        }
        if (*cmd_witness) {
            auto plan = dquad::plan_witness(dquad::rat_from_string(w_delta),
                                            dquad::rat_from_string(w_epsilon));
            emit(dquad::witness_json(dquad::execute_witness(plan)));
            return kOk;
        }
        if (*audit_mod4) {
            emit(dquad::mod4_report_json(
                dquad::audit_mod4(parse_int(a_from), parse_int(a_to), parse_int(a_bound))));
            return kOk;
        }
        if (*audit_lb) {
            emit(dquad::lower_bound_report_json(dquad::audit_lower_bound(parse_int(a_nmax))));
            return kOk;
        }
    } catch (const dquad::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return kUsage;
}

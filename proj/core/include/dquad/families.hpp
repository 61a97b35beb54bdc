#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dquad/poly.hpp"
#include "dquad/tuples.hpp"

namespace dquad {

// A parametric tuple family: element polynomials plus the n polynomial in
// one parameter. Families are data; evaluation, certification and audits
// are generic over them. Degenerate parameters (zero element, duplicate
// elements, n = 0, non-integral values) are detected at evaluation time;
// min_param carries the one explicit exclusion the registry needs.
struct Family {
    std::string id;
    std::string param;
    std::vector<Poly> elements;
    Poly n_poly;
    // Valid parameters are {m + param_offset : m integer}; zero for all
    // integer-parameter families.
    Rat param_offset = 0;
    std::optional<Int> min_param;
    std::optional<Rat> claimed_ratio;
    bool requires_nonsquare_n = true;
};

// Exact polynomial square roots for every unordered element pair:
// pair_roots[(i,j)]^2 = e_i*e_j + n_poly.
struct FamilyProof {
    std::string id;
    std::map<std::pair<int, int>, Poly> pair_roots;
};

// The thirteen families shipped with the library.
const std::vector<Family>& family_registry();

const Family& family_lookup(const std::string& id);

// Evaluate at an admissible parameter and return the verified tuple.
// Throws ExcludedParameterError when the parameter degenerates the tuple
// or falls off the family's rational grid.
Tuple family_eval(const Family& fam, const Rat& p);
Tuple family_eval(const std::string& id, const Rat& p);

// Certify every pairwise condition as a square in Q[x]. Registry entries
// always certify; a failure names the pair and is an InternalError for
// registry families (UsageError for imported ones).
FamilyProof family_prove(const Family& fam);
FamilyProof family_prove(const std::string& id);

struct ParityEntry {
    std::string family;
    std::string label;  // "n", "b", "c+d", "d-c"
    Parity parity;
    // Certified entries are asserted by the acceptance suite; the Eq-(1)
    // style entry is informational only.
    bool certified;
};

// Parity structure of the z-shifted section-2 family (certified) and of
// the (4k+1)(4k+3) family after centering k -> w - 1/2 (report only).
std::vector<ParityEntry> family_parity_audit();

struct RatioPoint {
    Int param;
    bool excluded = false;
    std::string note;
    std::optional<double> log_ratio;
    double d_over_n2 = 0.0;
    double d_over_n3 = 0.0;  // max_abs / |n|^3
};

// Per-parameter ratio diagnostics for trend tests (log-ratio limits and
// the d/|n|^3 -> 1/64 law of the section-2 family).
std::vector<RatioPoint> family_ratio_limit(const std::string& id,
                                           const std::vector<Int>& params);

}  // namespace dquad

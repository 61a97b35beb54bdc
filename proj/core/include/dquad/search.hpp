#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "dquad/tuples.hpp"

namespace dquad {

// A search job over one n or an inclusive n-range, with the sieves the
// methodology uses: minimum d/n^2 (the "interesting quadruple" cut),
// regular-triple containment, and a small-element requirement.
struct SearchTask {
    Int n_from;
    Int n_to;
    Int bound;  // elements drawn from [-bound, bound] \ {0}
    std::optional<Rat> min_d_over_n2;
    bool require_regular_triple = false;
    std::optional<Int> require_small_element;
    // Skip n = 2 (mod 4) without searching. A proved obstruction, so the
    // output is identical either way; audits must keep it off.
    bool skip_mod4 = false;
    int workers = 1;
    // Diagnostic callback: (n just finished, index, total).
    std::function<void(const Int&, std::size_t, std::size_t)> progress;
};

struct SearchRecord {
    Tuple tuple;
    Certificate certificate;
    Metrics metrics;
    std::vector<std::array<int, 3>> regular_triples;
};

// All 3-subsets (by sorted-index) satisfying the regularity identity with
// the largest element in the d role.
std::vector<std::array<int, 3>> regular_triples_in(const Tuple& t);

// Complete enumeration of D(n)-quadruples with all |elements| <= bound,
// canonical (sorted ascending) and in lexicographic order. Edges of the
// square-compatibility graph are generated by scanning square values
// s^2 = p*y + n per magnitude p, then 4-cliques are enumerated ascending.
std::vector<SearchRecord> find_quadruples(const Int& n, const Int& bound,
                                          int workers = 1);

// Per-n concatenation over the task's range (n = 0 skipped), sieved, in
// (n, lexicographic) order. Output is byte-identical for any worker count.
std::vector<SearchRecord> search_range(const SearchTask& task);

struct Mod4Report {
    struct Entry {
        Int n;
        std::size_t count;
    };
    Int n_from, n_to, bound;
    std::vector<Entry> entries;  // every n = 2 (mod 4) in range
    std::size_t total_hits = 0;
};

// Exhaustively re-checks the n = 2 (mod 4) obstruction on a range; any hit
// is an InternalError (the theorem says there are none).
Mod4Report audit_mod4(const Int& n_from, const Int& n_to, const Int& bound);

struct LowerBoundReport {
    Int n_max;
    std::size_t checked = 0;
    std::size_t hits = 0;
};

// For every n in [17, n_max], verifies there is no quadruple with all
// |elements| < n^(1/4). Requires n_max >= 17.
LowerBoundReport audit_lower_bound(const Int& n_max);

}  // namespace dquad

#include "dquad/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>

#include "dquad/errors.hpp"

namespace dquad {

namespace {

using i64 = std::int64_t;

constexpr i64 kFastLimit = i64{1} << 62;

// Candidate values are -B..-1, 1..B; index <-> value maps.
inline i64 index_to_value(std::size_t idx, i64 bound) {
    auto b = static_cast<std::size_t>(bound);
    return idx < b ? static_cast<i64>(idx) - bound
                   : static_cast<i64>(idx - b) + 1;
}
inline std::size_t value_to_index(i64 value, i64 bound) {
    return value < 0 ? static_cast<std::size_t>(value + bound)
                     : static_cast<std::size_t>(value + bound - 1);
}

struct EdgeList {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// Scan p = 1..B; every pair {x, y} with x*y + n square and at least one
// positive member appears as (p, y) with p = min positive magnitude. The
// both-negative pairs mirror the both-positive ones. For each p the valid
// square values s^2 = p*y + n, |y| <= B, live in a window of s that is
// narrow when |n| is large, so the scan is output-sensitive there.
void build_edges_i64(i64 n, i64 bound, i64 p_lo, i64 p_hi, EdgeList& out) {
    for (i64 p = p_lo; p <= p_hi; ++p) {
        i64 hi = n + p * bound;
        if (hi < 0) continue;
        i64 lo = n - p * bound;
        i64 s = 0;
        if (lo > 0) {
            s = floor_sqrt_i64(lo);
            if (s * s < lo) ++s;
        }
        i64 s_max = floor_sqrt_i64(hi);
        for (; s <= s_max; ++s) {
            i64 num = s * s - n;
            if (num % p != 0) continue;
            i64 y = num / p;
            if (y == 0 || y == p) continue;
            i64 q = y < 0 ? -y : y;
            if (q < p || q > bound) continue;
            auto up = static_cast<std::uint32_t>(value_to_index(p, bound));
            auto uy = static_cast<std::uint32_t>(value_to_index(y, bound));
            out.edges.emplace_back(up, uy);
            if (q != p) {
                // mirrored pair with both signs flipped, same product
                auto un = static_cast<std::uint32_t>(value_to_index(-p, bound));
                auto uz = static_cast<std::uint32_t>(value_to_index(-y, bound));
                out.edges.emplace_back(un, uz);
            }
        }
    }
}

// Arbitrary-precision fallback, same enumeration.
void build_edges_mpz(const Int& n, i64 bound, EdgeList& out) {
    for (i64 p = 1; p <= bound; ++p) {
        Int hi = n + Int(p) * bound;
        if (hi < 0) continue;
        Int lo = n - Int(p) * bound;
        Int s = 0;
        if (lo > 0) {
            mpz_sqrt(s.get_mpz_t(), lo.get_mpz_t());
            if (s * s < lo) ++s;
        }
        Int s_max;
        mpz_sqrt(s_max.get_mpz_t(), hi.get_mpz_t());
        for (; s <= s_max; ++s) {
            Int num = s * s - n;
            if (!mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p)))
                continue;
            Int yz = num / p;
            if (!yz.fits_slong_p()) continue;
            i64 y = yz.get_si();
            if (y == 0 || y == p) continue;
            i64 q = y < 0 ? -y : y;
            if (q < p || q > bound) continue;
            auto up = static_cast<std::uint32_t>(value_to_index(p, bound));
            auto uy = static_cast<std::uint32_t>(value_to_index(y, bound));
            out.edges.emplace_back(up, uy);
            if (q != p) {
                auto un = static_cast<std::uint32_t>(value_to_index(-p, bound));
                auto uz = static_cast<std::uint32_t>(value_to_index(-y, bound));
                out.edges.emplace_back(un, uz);
            }
        }
    }
}

struct CompatibilityGraph {
    std::size_t vertex_count = 0;
    std::vector<std::vector<std::uint32_t>> adj;

    bool adjacent(std::uint32_t a, std::uint32_t b) const {
        const auto& list = adj[a];
        return std::binary_search(list.begin(), list.end(), b);
    }
};

CompatibilityGraph build_graph(const Int& n, i64 bound, int workers) {
    CompatibilityGraph g;
    g.vertex_count = static_cast<std::size_t>(2 * bound);
    g.adj.assign(g.vertex_count, {});

    std::vector<EdgeList> parts;
    bool fast = n.fits_slong_p();
    if (fast) {
        i64 ns = n.get_si();
        // everything in the scan stays below 2^62
        if (ns > kFastLimit - bound * bound || ns < -(kFastLimit - bound * bound))
            fast = false;
        if (fast) {
            int w = std::max(1, workers);
            parts.resize(static_cast<std::size_t>(w));
            if (w == 1) {
                build_edges_i64(ns, bound, 1, bound, parts[0]);
            } else {
                // partition p so each chunk has comparable s-scan work
                // (proportional to sqrt(p)); cube-root spacing does that
                std::vector<std::thread> pool;
                std::vector<i64> cut(static_cast<std::size_t>(w) + 1);
                cut[0] = 1;
                for (int i = 1; i <= w; ++i) {
                    double frac = static_cast<double>(i) / w;
                    auto c = static_cast<i64>(
                        static_cast<double>(bound) * std::pow(frac, 2.0 / 3.0));
                    cut[static_cast<std::size_t>(i)] =
                        std::clamp<i64>(c, cut[static_cast<std::size_t>(i - 1)], bound);
                }
                cut[static_cast<std::size_t>(w)] = bound;
                for (int i = 0; i < w; ++i) {
                    i64 lo = cut[static_cast<std::size_t>(i)] + (i ? 1 : 0);
                    i64 hi = cut[static_cast<std::size_t>(i) + 1];
                    pool.emplace_back([ns, bound, lo, hi, &parts, i] {
                        build_edges_i64(ns, bound, lo, hi, parts[static_cast<std::size_t>(i)]);
                    });
                }
                for (auto& t : pool) t.join();
            }
        }
    }
    if (!fast) {
        parts.resize(1);
        build_edges_mpz(n, bound, parts[0]);
    }

    for (const auto& part : parts) {
        for (auto [a, b] : part.edges) {
            g.adj[a].push_back(b);
            g.adj[b].push_back(a);
        }
    }
    for (auto& list : g.adj) std::sort(list.begin(), list.end());
    return g;
}

// 4-cliques with smallest vertex in [a_lo, a_hi), ascending, emitted in
// lexicographic index order.
void enumerate_cliques(const CompatibilityGraph& g, std::size_t a_lo, std::size_t a_hi,
                       std::vector<std::array<std::uint32_t, 4>>& out) {
    std::vector<std::uint32_t> na, common;
    for (std::size_t a = a_lo; a < a_hi; ++a) {
        const auto& adj_a = g.adj[a];
        if (adj_a.size() < 3) continue;
        na.clear();
        auto first = std::upper_bound(adj_a.begin(), adj_a.end(),
                                      static_cast<std::uint32_t>(a));
        na.assign(first, adj_a.end());
        if (na.size() < 3) continue;
        for (std::size_t bi = 0; bi < na.size(); ++bi) {
            std::uint32_t b = na[bi];
            common.clear();
            const auto& adj_b = g.adj[b];
            std::set_intersection(na.begin() + static_cast<std::ptrdiff_t>(bi) + 1,
                                  na.end(),
                                  std::upper_bound(adj_b.begin(), adj_b.end(), b),
                                  adj_b.end(), std::back_inserter(common));
            for (std::size_t ci = 0; ci < common.size(); ++ci) {
                std::uint32_t c = common[ci];
                for (std::size_t di = ci + 1; di < common.size(); ++di) {
                    std::uint32_t d = common[di];
                    if (g.adjacent(c, d))
                        out.push_back({static_cast<std::uint32_t>(a), b, c, d});
                }
            }
        }
    }
}

SearchRecord make_record(const Int& n, i64 bound,
                         const std::array<std::uint32_t, 4>& clique) {
    std::vector<Int> elements;
    elements.reserve(4);
    for (auto idx : clique)
        elements.emplace_back(static_cast<long>(index_to_value(idx, bound)));
    Tuple t = Tuple::make(std::move(elements), n);
    SearchRecord rec{t, t.certificate(), metrics(t), regular_triples_in(t)};
    return rec;
}

bool is_mod4_obstructed(const Int& n) {
    return mpz_fdiv_ui(n.get_mpz_t(), 4) == 2;
}

bool passes_sieves(const SearchTask& task, const SearchRecord& rec) {
    if (task.min_d_over_n2) {
        // exact comparison: max_abs >= threshold * n^2
        const Int& n = rec.tuple.n();
        Rat lhs(rec.metrics.max_abs);
        Rat rhs = *task.min_d_over_n2 * Rat(n * n);
        if (lhs < rhs) return false;
    }
    if (task.require_regular_triple && rec.regular_triples.empty()) return false;
    if (task.require_small_element) {
        bool found = false;
        for (const Int& e : rec.tuple.elements())
            if (abs(e) <= *task.require_small_element) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

}  // namespace

std::vector<std::array<int, 3>> regular_triples_in(const Tuple& t) {
    std::vector<std::array<int, 3>> out;
    const auto& e = t.elements();
    int m = t.size();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k) {
                Int lhs = e[i] + e[j] - e[k];
                if (lhs * lhs == 4 * (e[i] * e[j] + t.n()))
                    out.push_back({i, j, k});
            }
    return out;
}

std::vector<SearchRecord> find_quadruples(const Int& n, const Int& bound, int workers) {
    if (n == 0) throw UsageError("n must be nonzero");
    if (bound < 2) throw UsageError("bound must be at least 2");
    if (!bound.fits_slong_p() || bound.get_si() > (i64{1} << 30))
        throw UsageError("bound too large for in-memory search");
    i64 b = bound.get_si();

    CompatibilityGraph g = build_graph(n, b, workers);

    std::vector<std::array<std::uint32_t, 4>> cliques;
    int w = std::max(1, workers);
    if (w == 1 || g.vertex_count < 64) {
        enumerate_cliques(g, 0, g.vertex_count, cliques);
    } else {
        // contiguous index blocks; concatenation in block order keeps the
        // output identical to the sequential scan
        auto blocks = static_cast<std::size_t>(w);
        std::vector<std::vector<std::array<std::uint32_t, 4>>> parts(blocks);
        std::vector<std::thread> pool;
        std::size_t chunk = (g.vertex_count + blocks - 1) / blocks;
        for (std::size_t i = 0; i < blocks; ++i) {
            std::size_t lo = i * chunk;
            std::size_t hi = std::min(g.vertex_count, lo + chunk);
            if (lo >= hi) continue;
            pool.emplace_back([&g, lo, hi, &parts, i] {
                enumerate_cliques(g, lo, hi, parts[i]);
            });
        }
        for (auto& t : pool) t.join();
        for (auto& part : parts)
            cliques.insert(cliques.end(), part.begin(), part.end());
    }

    std::vector<SearchRecord> records;
    records.reserve(cliques.size());
    for (const auto& clique : cliques) records.push_back(make_record(n, b, clique));
    return records;
}

std::vector<SearchRecord> search_range(const SearchTask& task) {
    if (task.bound < 2) throw UsageError("bound must be at least 2");
    if (task.n_from > task.n_to) throw UsageError("empty n range");

    std::vector<Int> ns;
    for (Int n = task.n_from; n <= task.n_to; ++n) {
        if (n == 0) continue;  // not a valid D(n) parameter
        ns.push_back(n);
    }

    std::vector<std::vector<SearchRecord>> slots(ns.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};

    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= ns.size()) return;
            const Int& n = ns[i];
            if (!(task.skip_mod4 && is_mod4_obstructed(n))) {
                auto found = find_quadruples(n, task.bound, 1);
                std::vector<SearchRecord> kept;
                for (auto& rec : found)
                    if (passes_sieves(task, rec)) kept.push_back(std::move(rec));
                slots[i] = std::move(kept);
            }
            std::size_t finished = done.fetch_add(1) + 1;
            if (task.progress) task.progress(n, finished, ns.size());
        }
    };

    int w = std::clamp(task.workers, 1, 256);
    if (w == 1 || ns.size() <= 1) {
        // single n: let find_quadruples use the worker pool internally
        if (ns.size() == 1 && w > 1) {
            const Int& n = ns[0];
            if (!(task.skip_mod4 && is_mod4_obstructed(n))) {
                auto found = find_quadruples(n, task.bound, w);
                for (auto& rec : found)
                    if (passes_sieves(task, rec)) slots[0].push_back(std::move(rec));
            }
            if (task.progress) task.progress(n, 1, 1);
        } else {
            run();
        }
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < w; ++i) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }

    std::vector<SearchRecord> out;
    for (auto& slot : slots)
        for (auto& rec : slot) out.push_back(std::move(rec));
    return out;
}

Mod4Report audit_mod4(const Int& n_from, const Int& n_to, const Int& bound) {
    if (n_from > n_to) throw UsageError("empty n range");
    Mod4Report report;
    report.n_from = n_from;
    report.n_to = n_to;
    report.bound = bound;
    for (Int n = n_from; n <= n_to; ++n) {
        if (n == 0 || !is_mod4_obstructed(n)) continue;
        auto found = find_quadruples(n, bound, 1);
        report.entries.push_back({n, found.size()});
        report.total_hits += found.size();
        if (!found.empty())
            throw InternalError("mod-4 obstruction violated at n = " + n.get_str() +
                                ": found " + to_string(found.front().tuple));
    }
    return report;
}

LowerBoundReport audit_lower_bound(const Int& n_max) {
    if (n_max < 17) throw UsageError("lower-bound audit needs n_max >= 17");
    LowerBoundReport report;
    report.n_max = n_max;
    for (Int n = 17; n <= n_max; ++n) {
        ++report.checked;
        // largest bound with bound < n^(1/4); always >= 2 for n >= 17
        Int root;
        int exact = mpz_root(root.get_mpz_t(), n.get_mpz_t(), 4);
        Int b = exact ? root - 1 : root;
        if (b < 2) continue;
        auto found = find_quadruples(n, b, 1);
        report.hits += found.size();
        if (!found.empty())
            throw InternalError("n^(1/4) lower bound violated at n = " + n.get_str() +
                                ": found " + to_string(found.front().tuple));
    }
    return report;
}

}  // namespace dquad

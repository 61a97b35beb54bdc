#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dquad/tuples.hpp"

namespace dquad {

// A D(n)-tuple over Q: distinct nonzero rational elements whose pairwise
// products plus n are squares of rationals. Elements stored sorted.
struct RationalTuple {
    std::vector<Rat> elements;
    Rat n;
};

struct RationalCertificate {
    std::map<std::pair<int, int>, Rat> roots;
};

// All-pairs rational square check; nullopt names nothing (callers that need
// the failing pair use the chain errors instead).
std::optional<RationalCertificate> verify_rational(const RationalTuple& rt);

// Right-hand side of the genus-1 quartic s^2 = q_v(t) behind the {a,-a,b,-b}
// construction; a point (t, s) is on the curve iff s^2 equals this.
Rat quartic_eval(const Rat& v, const Rat& t);

// The published t-value obtained from doubling the second rational point of
// the quartic. Throws ChainError when the denominator vanishes.
Rat t_from_double_p2(const Rat& v);

struct Chain920Result {
    Rat v, t, u, a, b, r;
    RationalTuple tuple;  // {a, -a, b, -b}, sorted
};

// The quartic route: t from the doubled point, u = t(t-1)/v, then a, b and
// n = a^2 + r^2 with r = (ab - a^2 + 1)/2. Result verifies over Q.
Chain920Result chain_920(const Rat& v);

// Exact left-hand side of the 22-term (b, s, t, r) equation whose vanishing
// makes the rational quadruple close up.
Rat eqbs_residual(const Rat& b, const Rat& s, const Rat& t, const Rat& r);

struct ChainState32 {
    Rat b, s, t, r, x, y_val;
};

struct Chain32Result {
    ChainState32 state;
    RationalTuple tuple;  // {a, b, c, d}, sorted
};

// The rational route with the x - y = t/2 ansatz: t = (b^2-s^2)/(2s^2), the
// closed-form r, then a, c, d, n. Asserts the Eq-residual vanishes and
// x - y = t/2 exactly; both are internal errors if violated.
Chain32Result chain_32(const Rat& b, const Rat& s);

// Smallest ell > 0 making all ell*elements integers and n*ell^2 an integer;
// returns the integer tuple and ell.
std::pair<Tuple, Int> clear_denominators(const RationalTuple& rt);

// Scale by a specific ell (which must make everything integral).
Tuple scale_rational(const RationalTuple& rt, const Int& ell);

// b = k*s with k = 2v-1 and s = (k^3 + k^2 - 3k - 1)/2, run the rational
// chain and clear denominators; must reproduce the two_fifths family at v
// (up to overall sign), which cross-validates the whole route.
Tuple specialize_32(const Int& v);

struct WitnessPlan {
    std::string family_id;  // "sec2_main" or "two_fifths"
    unsigned l1 = 0;
    unsigned l2 = 0;
    Int y_base;
    Rat target_delta;
    Rat epsilon;
};

// Pick the family and the (l1, l2) schedule whose asymptotic ratio best
// approximates delta (exactly when possible), for 2/5 <= delta <= 3.
WitnessPlan plan_witness(const Rat& delta, const Rat& epsilon);

struct WitnessResult {
    WitnessPlan plan;
    Int y;
    Tuple tuple;
    double achieved_ratio = 0.0;
};

// Evaluate the planned family at parameter y^l1, scale by y^l2, and grow y
// (doubling, capped) until the measured log-ratio lands within epsilon of
// delta; n is checked non-square every time.
WitnessResult execute_witness(const WitnessPlan& plan);

}  // namespace dquad

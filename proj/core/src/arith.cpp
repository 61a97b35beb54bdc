#include "dquad/arith.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

#include "dquad/errors.hpp"

namespace dquad {

Rat make_rat(Int num, Int den) {
    if (den == 0) throw UsageError("rational with zero denominator");
    Rat q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

Rat rat_from_string(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw UsageError("empty rational literal");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        // decimal form: shift the point away and divide by the matching
        // power of ten, staying exact
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw UsageError("malformed rational literal: " + s);
        Int num;
        if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
            throw UsageError("malformed rational literal: " + s);
        Int den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return make_rat(num, den);
    }
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw UsageError("malformed rational literal: " + s);
    if (q.get_den() == 0)
        throw UsageError("rational with zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

// Bitmask of quadratic residues mod 64.
constexpr std::uint64_t kSquaresMod64 = []() {
    std::uint64_t m = 0;
    for (unsigned i = 0; i < 64; ++i) m |= std::uint64_t{1} << ((i * i) & 63);
    return m;
}();

template <int M>
constexpr std::array<bool, M> residue_table() {
    std::array<bool, M> t{};
    for (int i = 0; i < M; ++i) t[(i * i) % M] = true;
    return t;
}
constexpr auto kSquaresMod63 = residue_table<63>();
constexpr auto kSquaresMod65 = residue_table<65>();
constexpr auto kSquaresMod11 = residue_table<11>();

}  // namespace

std::int64_t floor_sqrt_i64(std::int64_t v) noexcept {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

bool is_square_i64(std::int64_t v) noexcept {
    if (v < 0) return false;
    if (!(kSquaresMod64 >> (v & 63) & 1)) return false;
    if (!kSquaresMod63[static_cast<std::size_t>(v % 63)]) return false;
    if (!kSquaresMod65[static_cast<std::size_t>(v % 65)]) return false;
    if (!kSquaresMod11[static_cast<std::size_t>(v % 11)]) return false;
    std::int64_t r = floor_sqrt_i64(v);
    return r * r == v;
}

std::optional<std::int64_t> integer_sqrt_i64(std::int64_t v) noexcept {
    if (v < 0) return std::nullopt;
    std::int64_t r = floor_sqrt_i64(v);
    if (r * r != v) return std::nullopt;
    return r;
}

std::optional<Int> integer_sqrt(const Int& n) {
    if (n < 0) return std::nullopt;
    if (n.fits_slong_p()) {
        auto r = integer_sqrt_i64(n.get_si());
        if (!r) return std::nullopt;
        return Int(static_cast<long>(*r));
    }
    Int root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    if (rem != 0) return std::nullopt;
    return root;
}

bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    if (n.fits_slong_p()) return is_square_i64(n.get_si());
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::optional<Rat> rat_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    auto num = integer_sqrt(q.get_num());
    if (!num) return std::nullopt;
    auto den = integer_sqrt(q.get_den());
    if (!den) return std::nullopt;
    return Rat(std::move(*num), std::move(*den));  // already canonical
}

double log_abs(const Int& n) {
    signed long exp = 0;
    double d = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(d)) + static_cast<double>(exp) * M_LN2;
}

}  // namespace dquad

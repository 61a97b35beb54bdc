#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dquad {

// Exact arbitrary-precision integers and rationals. Everything in this
// library is exact; doubles appear only in reporting (log-ratios, d/n^2).
using Int = mpz_class;
using Rat = mpq_class;

// Canonical rational num/den (reduced, den > 0). Throws UsageError on den = 0.
Rat make_rat(Int num, Int den);

// Accepts "123", "-4/7" and plain decimal forms like "2.25" or "-0.4",
// always producing the exact canonical rational.
Rat rat_from_string(std::string_view text);

// "num/den" with den > 0, or just "num" for integers.
std::string rat_to_string(const Rat& q);

// Largest r >= 0 with r^2 = n, when n is a perfect square; absent otherwise
// (all negative n included).
std::optional<Int> integer_sqrt(const Int& n);

// 0 counts as a perfect square (0 = 0^2).
bool is_perfect_square(const Int& n);

// The square root in Q, nonnegative, when it exists.
std::optional<Rat> rat_sqrt(const Rat& q);

// int64 fast path used by the search inner loops. A residue prefilter
// (squares mod 64, 63, 65, 11) rejects ~95% of non-squares before the
// exact root is computed; semantically identical to is_perfect_square.
bool is_square_i64(std::int64_t v) noexcept;
std::optional<std::int64_t> integer_sqrt_i64(std::int64_t v) noexcept;

// floor(sqrt(v)) for v >= 0.
std::int64_t floor_sqrt_i64(std::int64_t v) noexcept;

// Natural log of |n| for nonzero n of any magnitude (exponent-based, no
// double overflow up to the library's 10^300-scale values).
double log_abs(const Int& n);

}  // namespace dquad

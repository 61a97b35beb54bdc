#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dquad/arith.hpp"
#include "dquad/errors.hpp"

namespace dquad {

// Square roots witnessing a_i*a_j + n for every unordered index pair of the
// sorted element list; roots are the canonical nonnegative ones.
struct Certificate {
    std::map<std::pair<int, int>, Int> roots;
};

struct VerifyFailure {
    enum class Kind {
        NZero,
        TooFewElements,
        TooManyElements,
        ZeroElement,
        DuplicateElement,
        PairNotSquare,
    };
    Kind kind;
    // Sorted-order indices of the offending element(s); -1 where unused.
    int i = -1;
    int j = -1;
    Int a = 0;      // offending element value(s)
    Int b = 0;
    Int value = 0;  // a*b + n for PairNotSquare
    std::string message;

    bool structural() const { return kind != Kind::PairNotSquare; }
};

using VerifyResult = std::variant<Certificate, VerifyFailure>;

// Full validation: distinct nonzero elements (2..6 of them), n != 0, and
// every pairwise product plus n a perfect square. Elements are sorted
// before checking; pair failures name the first violated pair in
// lexicographic index order. Structural defects are reported before any
// square check runs.
VerifyResult verify(std::vector<Int> elements, const Int& n);

class TupleError : public UsageError {
public:
    explicit TupleError(VerifyFailure f)
        : UsageError("invalid tuple: " + f.message), failure_(std::move(f)) {}
    const VerifyFailure& failure() const noexcept { return failure_; }

private:
    VerifyFailure failure_;
};

// A verified D(n)-m-tuple, elements stored sorted ascending.
class Tuple {
public:
    // Verifies; throws TupleError if anything fails.
    static Tuple make(std::vector<Int> elements, Int n);

    const std::vector<Int>& elements() const noexcept { return elements_; }
    const Int& n() const noexcept { return n_; }
    int size() const noexcept { return static_cast<int>(elements_.size()); }

    Certificate certificate() const;

    bool operator==(const Tuple&) const = default;

private:
    Tuple(std::vector<Int> elements, Int n)
        : elements_(std::move(elements)), n_(std::move(n)) {}
    std::vector<Int> elements_;
    Int n_;
};

struct Metrics {
    Int max_abs;
    // log(max_abs)/log|n|; absent when |n| < 2. Doubles carry ~15
    // significant digits, which is the reporting contract.
    std::optional<double> log_ratio;
    double d_over_n2 = 0.0;
};

Metrics metrics(const Tuple& t);

// Multiply elements by ell > 0; n scales by ell^2, certificate roots by ell.
Tuple scale(const Tuple& t, const Int& ell);

// (b + c - d)^2 = 4(bc + n) under the given role assignment. The set
// {b, c, d} must verify as a D(n)-triple; otherwise TupleError.
bool is_regular_triple(const Int& b, const Int& c, const Int& d, const Int& n);

std::string to_string(const Tuple& t);

}  // namespace dquad

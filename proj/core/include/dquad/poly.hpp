#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dquad/arith.hpp"

namespace dquad {

enum class Parity { Even, Odd, Neither };

// Dense univariate polynomial over Q, coefficients lowest degree first.
// Canonical form has no trailing zero coefficient; the zero polynomial is
// the empty coefficient vector (degree -1). Degrees in this library top
// out around 20, so dense storage is the right trade.
class Poly {
public:
    Poly() = default;

    static Poly from_coeffs(std::vector<Rat> coeffs);
    static Poly from_int_coeffs(std::initializer_list<long> coeffs);
    static Poly constant(Rat c);
    // coeff * x^degree
    static Poly monomial(int degree, Rat coeff);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    // Zero beyond the stored degree.
    const Rat& coeff(int i) const;
    std::span<const Rat> coeffs() const noexcept { return coeffs_; }
    const Rat& leading() const;

    Rat eval(const Rat& x) const;
    // p(alpha*x + beta), exact.
    Poly compose_linear(const Rat& alpha, const Rat& beta) const;
    Parity parity() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Rat& s);
    friend Poly operator*(const Rat& s, const Poly& a) { return a * s; }
    bool operator==(const Poly&) const = default;

    // Human-readable form, e.g. "-64k^2+16k+16".
    std::string to_string(std::string_view symbol = "x") const;

private:
    void normalize();
    std::vector<Rat> coeffs_;
};

// The square root in Q[x], when it exists, normalized to a positive leading
// coefficient. Rejects odd degree and non-square leading coefficient, then
// determines the candidate coefficient-by-coefficient from the top and
// verifies the square exactly. sqrt(0) = 0.
std::optional<Poly> poly_sqrt(const Poly& p);

}  // namespace dquad

#include "dquad/poly.hpp"

#include <sstream>

#include "dquad/errors.hpp"

namespace dquad {

namespace {
const Rat kZero = 0;
}

void Poly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::from_coeffs(std::vector<Rat> coeffs) {
    Poly p;
    p.coeffs_ = std::move(coeffs);
    p.normalize();
    return p;
}

Poly Poly::from_int_coeffs(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return from_coeffs(std::move(c));
}

Poly Poly::constant(Rat c) { return from_coeffs({std::move(c)}); }

Poly Poly::monomial(int degree, Rat coeff) {
    if (degree < 0) throw UsageError("monomial with negative degree");
    std::vector<Rat> c(static_cast<std::size_t>(degree) + 1, Rat(0));
    c.back() = std::move(coeff);
    return from_coeffs(std::move(c));
}

const Rat& Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return kZero;
    return coeffs_[static_cast<std::size_t>(i)];
}

const Rat& Poly::leading() const {
    if (coeffs_.empty()) return kZero;
    return coeffs_.back();
}

Rat Poly::eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

Poly Poly::compose_linear(const Rat& alpha, const Rat& beta) const {
    // Horner in Q[x]: acc = acc*(alpha x + beta) + c_i, top down.
    Poly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        std::vector<Rat> next(acc.coeffs_.size() + 1, Rat(0));
        for (std::size_t i = 0; i < acc.coeffs_.size(); ++i) {
            next[i + 1] += acc.coeffs_[i] * alpha;
            next[i] += acc.coeffs_[i] * beta;
        }
        if (next.empty()) next.emplace_back(0);
        next[0] += *it;
        acc = from_coeffs(std::move(next));
    }
    return acc;
}

Parity Poly::parity() const {
    bool even_ok = true, odd_ok = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (i % 2 == 1) even_ok = false;
        if (i % 2 == 0) odd_ok = false;
    }
    // The zero polynomial satisfies both p(-x)=p(x) and p(-x)=-p(x);
    // report it as even.
    if (even_ok) return Parity::Even;
    if (odd_ok) return Parity::Odd;
    return Parity::Neither;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rat(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Poly::from_coeffs(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    std::vector<Rat> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly::from_coeffs(std::move(c));
}

Poly operator*(const Poly& a, const Rat& s) {
    std::vector<Rat> c(a.coeffs_.begin(), a.coeffs_.end());
    for (auto& v : c) v *= s;
    return Poly::from_coeffs(std::move(c));
}

std::string Poly::to_string(std::string_view symbol) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rat& c = coeff(i);
        if (c == 0) continue;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        Rat ac = abs(c);
        if (ac != 1 || i == 0) out << rat_to_string(ac);
        if (i > 0) {
            out << symbol;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

std::optional<Poly> poly_sqrt(const Poly& p) {
    if (p.is_zero()) return Poly{};
    int d = p.degree();
    if (d % 2 != 0) return std::nullopt;
    auto lead_root = rat_sqrt(p.leading());
    if (!lead_root) return std::nullopt;
    int m = d / 2;
    std::vector<Rat> q(static_cast<std::size_t>(m) + 1, Rat(0));
    q[static_cast<std::size_t>(m)] = *lead_root;
    Rat twice_lead = 2 * *lead_root;
    for (int i = m - 1; i >= 0; --i) {
        // coefficient of x^(m+i) in q^2 is 2*q_m*q_i plus cross terms with
        // both indices strictly between i and m
        Rat cross = 0;
        for (int a = i + 1; a <= m - 1; ++a) {
            int b = m + i - a;
            if (b < a) break;
            if (b > m - 1) continue;
            Rat term = q[static_cast<std::size_t>(a)] * q[static_cast<std::size_t>(b)];
            if (a != b) term *= 2;
            cross += term;
        }
        q[static_cast<std::size_t>(i)] = (p.coeff(m + i) - cross) / twice_lead;
    }
    Poly root = Poly::from_coeffs(std::move(q));
    // the top-down recurrence only pins the upper half; the exact square
    // check validates the rest
    if (root * root == p) return root;
    return std::nullopt;
}

}  // namespace dquad

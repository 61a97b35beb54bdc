#include "dquad/tuples.hpp"

#include <algorithm>
#include <sstream>

namespace dquad {

VerifyResult verify(std::vector<Int> elements, const Int& n) {
    using Kind = VerifyFailure::Kind;
    std::sort(elements.begin(), elements.end());
    if (n == 0)
        return VerifyFailure{Kind::NZero, -1, -1, 0, 0, 0, "n must be nonzero"};
    if (elements.size() < 2)
        return VerifyFailure{Kind::TooFewElements, -1, -1, 0, 0, 0,
                             "need at least 2 elements"};
    if (elements.size() > 6)
        return VerifyFailure{Kind::TooManyElements, -1, -1, 0, 0, 0,
                             "more than 6 elements is out of scope"};
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i] == 0)
            return VerifyFailure{Kind::ZeroElement, static_cast<int>(i), -1, 0, 0, 0,
                                 "element at index " + std::to_string(i) + " is zero"};
        if (i > 0 && elements[i] == elements[i - 1])
            return VerifyFailure{Kind::DuplicateElement, static_cast<int>(i - 1),
                                 static_cast<int>(i), elements[i], elements[i], 0,
                                 "duplicate element " + elements[i].get_str()};
    }
    Certificate cert;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::size_t j = i + 1; j < elements.size(); ++j) {
            Int v = elements[i] * elements[j] + n;
            auto root = integer_sqrt(v);
            if (!root) {
                std::ostringstream msg;
                msg << "pair (" << elements[i] << ", " << elements[j] << "): "
                    << v << " is not a perfect square";
                return VerifyFailure{Kind::PairNotSquare, static_cast<int>(i),
                                     static_cast<int>(j), elements[i], elements[j],
                                     v, msg.str()};
            }
            cert.roots.emplace(std::make_pair(static_cast<int>(i), static_cast<int>(j)),
                               std::move(*root));
        }
    }
    return cert;
}

Tuple Tuple::make(std::vector<Int> elements, Int n) {
    std::sort(elements.begin(), elements.end());
    auto result = verify(elements, n);
    if (auto* failure = std::get_if<VerifyFailure>(&result))
        throw TupleError(std::move(*failure));
    return Tuple(std::move(elements), std::move(n));
}

Certificate Tuple::certificate() const {
    auto result = verify(elements_, n_);
    return std::get<Certificate>(std::move(result));
}

Metrics metrics(const Tuple& t) {
    Metrics m;
    m.max_abs = 0;
    for (const Int& e : t.elements()) {
        Int a = abs(e);
        if (a > m.max_abs) m.max_abs = a;
    }
    Int n2 = t.n() * t.n();
    m.d_over_n2 = make_rat(m.max_abs, n2).get_d();
    if (abs(t.n()) >= 2)
        m.log_ratio = log_abs(m.max_abs) / log_abs(t.n());
    return m;
}

Tuple scale(const Tuple& t, const Int& ell) {
    if (ell <= 0) throw UsageError("scale factor must be positive");
    std::vector<Int> scaled;
    scaled.reserve(t.elements().size());
    for (const Int& e : t.elements()) scaled.push_back(e * ell);
    return Tuple::make(std::move(scaled), t.n() * ell * ell);
}

bool is_regular_triple(const Int& b, const Int& c, const Int& d, const Int& n) {
    auto result = verify({b, c, d}, n);
    if (auto* failure = std::get_if<VerifyFailure>(&result))
        throw TupleError(std::move(*failure));
    Int lhs = b + c - d;
    return lhs * lhs == 4 * (b * c + n);
}

std::string to_string(const Tuple& t) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < t.elements().size(); ++i) {
        if (i) out << ", ";
        out << t.elements()[i];
    }
    out << "} with n=" << t.n();
    return out.str();
}

}  // namespace dquad

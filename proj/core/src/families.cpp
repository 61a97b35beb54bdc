#include "dquad/families.hpp"

#include <algorithm>

#include "dquad/errors.hpp"

namespace dquad {

namespace {

Poly P(std::initializer_list<long> coeffs) { return Poly::from_int_coeffs(coeffs); }

std::vector<Family> build_registry() {
    std::vector<Family> reg;

    {
        Family f;
        f.id = "d1_classic";
        f.param = "k";
        f.elements = {P({-1, 1}), P({1, 1}), P({0, 4}), P({0, -4, 0, 16})};
        f.n_poly = P({1});
        f.min_param = 2;  // k >= 2; negative k give the negated quadruples
        f.requires_nonsquare_n = false;  // n = 1 = 1^2
        reg.push_back(std::move(f));
    }
    {
        Family f;
        f.id = "d_4k3";
        f.param = "k";
        f.elements = {P({1}), P({1, 8, 9}), P({6, 14, 9}), P({13, 44, 36})};
        f.n_poly = P({3, 4});
        f.claimed_ratio = 2;
        reg.push_back(std::move(f));
    }
    {
        Family f;
        f.id = "d_eq1";
        f.param = "k";
        f.elements = {P({1}), P({1, 20, 113, 216, 144}), P({22, 134, 329, 360, 144}),
                      P({33, 272, 848, 1152, 576})};
        f.n_poly = P({3, 16, 16});
        f.claimed_ratio = 2;
        reg.push_back(std::move(f));
    }
    {
        Family f;
        f.id = "sec2_main";
        f.param = "k";
        f.elements = {P({1}), P({0, 16, -48, -128, 256}),
                      P({-7, -88, 16, 1152, -512, -4096, 4096}),
                      P({-15, -48, 288, 640, -1792, -2048, 4096})};
        f.n_poly = P({16, 16, -64});
        f.claimed_ratio = 3;
        reg.push_back(std::move(f));
    }
    {
        Family f;
        f.id = "sec2_zform";
        f.param = "z";
        Rat r17_16 = make_rat(17, 16);
        Rat r153_4 = make_rat(153, 4);
        Rat r1007_64 = make_rat(-1007, 64);
        f.elements = {
            P({1}),
            Poly::from_coeffs({r17_16, 0, -72, 0, 256}),
            Poly::from_coeffs({r1007_64, -r153_4, 335, 416, -2112, -1024, 4096}),
            Poly::from_coeffs({r1007_64, r153_4, 335, -416, -2112, 1024, 4096}),
        };
        f.n_poly = P({17, 0, -64});
        f.param_offset = make_rat(-1, 8);  // z = k - 1/8 for integer k
        f.claimed_ratio = 3;
        reg.push_back(std::move(f));
    }
    {
        Family f;
        f.id = "triple_A";
        f.param = "k";
        f.elements = {P({-4, 4}), P({-4, 8}), P({0, 12})};
        f.n_poly = P({9, 48, -72, 0, 16});
        f.claimed_ratio = make_rat(1, 4);
        reg.push_back(std::move(f));
    }
    {
        Family f;
        f.id = "triple_B";
        f.param = "k";
        f.elements = {P({-1, -6}), P({1, 2}), P({4, 6})};
        f.n_poly = P({5, 52, 181, 264, 144});
        f.claimed_ratio = make_rat(1, 4);
        reg.push_back(std::move(f));
    }
    {
        Family f;
        f.id = "abba_1";
        f.param = "u";
        f.elements = {P({0, -4}), P({0, 4}), P({-3, 0, -1}), P({3, 0, 1})};
        f.n_poly = P({9, 0, 10, 0, 1});
        f.claimed_ratio = make_rat(1, 2);
        reg.push_back(std::move(f));
    }
    {
        Family f;
        f.id = "abba_2";
        f.param = "u";
        f.elements = {P({0, -8, 12, -4}), P({0, 8, -12, 4}), P({-4, 8, -8, 4, -1}),
                      P({4, -8, 8, -4, 1})};
        f.n_poly = P({16, -64, 128, -160, 136, -80, 32, -8, 1});
        f.claimed_ratio = make_rat(1, 2);
        f.requires_nonsquare_n = false;  // n = (u^2-2u+2)^4 is always a square
        reg.push_back(std::move(f));
    }
    {
        Family f;
        f.id = "abba_3";
        f.param = "u";
        f.elements = {P({-1, -2, -4}), P({1, 2, 4}), P({0, -4, -4}), P({0, 4, 4})};
        f.n_poly = P({1, 4, 16, 24, 20});
        f.claimed_ratio = make_rat(1, 2);
        reg.push_back(std::move(f));
    }
    {
        Family f;
        f.id = "nine_twenty";
        f.param = "v";
        Poly a = P({-24, 164, -304, 1216, -4096, 4608, -5120, 20480, -32768, 16384});
        Poly b = P({-24, 156, -528, 576, 2880, -11520, 21504, -24576, 12288});
        f.elements = {a, -a, b, -b};
        f.n_poly = P({580, -7552, 47872, -164480, 468752, -1852160, 7394304,
                      -22474752, 53587968, -110215168, 205324288, -328990720,
                      412483584, -412090368, 465567744, -788529152, 1392508928,
                      -1946157056, 1879048192, -1073741824, 268435456});
        f.claimed_ratio = make_rat(9, 20);
        reg.push_back(std::move(f));
    }
    {
        Family f;
        f.id = "two_fifths";
        f.param = "v";
        f.elements = {P({0, 0, -8, -4, 8}), P({-1, 4, 0, -12, 8}), P({-1, 2, 2, -4}),
                      P({-4, -4, 12, 4, -8})};
        f.n_poly = P({0, 0, -7, 22, 41, -136, -32, 240, -64, -128, 64});
        f.claimed_ratio = make_rat(2, 5);
        reg.push_back(std::move(f));
    }
    {
        Family f;
        f.id = "square_n";
        f.param = "u";
        f.elements = {P({-4, -24, 60}), P({-60, 100}), P({-8, 44, -60}), P({-30, 96, -90})};
        f.n_poly = P({49, -700, 3550, -7500, 5625});
        f.claimed_ratio = make_rat(1, 2);
        f.requires_nonsquare_n = false;  // n = ((15u-7)(5u-1))^2 by design
        reg.push_back(std::move(f));
    }
    return reg;
}

}  // namespace

const std::vector<Family>& family_registry() {
    static const std::vector<Family> reg = build_registry();
    return reg;
}

const Family& family_lookup(const std::string& id) {
    for (const Family& f : family_registry())
        if (f.id == id) return f;
    throw UnknownFamilyError(id);
}

Tuple family_eval(const Family& fam, const Rat& p) {
    Rat grid = p - fam.param_offset;
    if (grid.get_den() != 1)
        throw ExcludedParameterError(
            fam.id, "parameter " + rat_to_string(p) + " is off the family grid (" +
                        fam.param + " = m + " + rat_to_string(fam.param_offset) +
                        ", m integer)");
    if (fam.min_param && grid.get_num() < *fam.min_param)
        throw ExcludedParameterError(
            fam.id, fam.param + " < " + fam.min_param->get_str() + " is excluded");
    std::vector<Int> elements;
    elements.reserve(fam.elements.size());
    for (std::size_t i = 0; i < fam.elements.size(); ++i) {
        Rat value = fam.elements[i].eval(p);
        if (value.get_den() != 1)
            throw ExcludedParameterError(
                fam.id, "element " + std::to_string(i) + " is not an integer at " +
                            fam.param + " = " + rat_to_string(p));
        if (value == 0)
            throw ExcludedParameterError(
                fam.id, "element " + std::to_string(i) + " vanishes at " + fam.param +
                            " = " + rat_to_string(p));
        elements.push_back(value.get_num());
    }
    {
        auto sorted = elements;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ExcludedParameterError(
                fam.id, "duplicate elements at " + fam.param + " = " + rat_to_string(p));
    }
    Rat n = fam.n_poly.eval(p);
    if (n.get_den() != 1)
        throw ExcludedParameterError(fam.id, "n is not an integer at " + fam.param +
                                                 " = " + rat_to_string(p));
    if (n == 0)
        throw ExcludedParameterError(fam.id, "n vanishes at " + fam.param + " = " +
                                                 rat_to_string(p));
    return Tuple::make(std::move(elements), n.get_num());
}

Tuple family_eval(const std::string& id, const Rat& p) {
    return family_eval(family_lookup(id), p);
}

FamilyProof family_prove(const Family& fam) {
    FamilyProof proof;
    proof.id = fam.id;
    for (std::size_t i = 0; i < fam.elements.size(); ++i) {
        for (std::size_t j = i + 1; j < fam.elements.size(); ++j) {
            Poly condition = fam.elements[i] * fam.elements[j] + fam.n_poly;
            auto root = poly_sqrt(condition);
            if (!root)
                throw InternalError("family '" + fam.id + "' fails certification at pair (" +
                                    std::to_string(i) + ", " + std::to_string(j) +
                                    "): " + condition.to_string(fam.param) +
                                    " is not a square in Q[" + fam.param + "]");
            proof.pair_roots.emplace(std::make_pair(static_cast<int>(i), static_cast<int>(j)),
                                     std::move(*root));
        }
    }
    return proof;
}

FamilyProof family_prove(const std::string& id) {
    return family_prove(family_lookup(id));
}

std::vector<ParityEntry> family_parity_audit() {
    std::vector<ParityEntry> out;
    {
        const Family& f = family_lookup("sec2_zform");
        const Poly& b = f.elements[1];
        const Poly& c = f.elements[2];
        const Poly& d = f.elements[3];
        out.push_back({f.id, "n", f.n_poly.parity(), true});
        out.push_back({f.id, "b", b.parity(), true});
        out.push_back({f.id, "c+d", (c + d).parity(), true});
        out.push_back({f.id, "d-c", (d - c).parity(), true});
    }
    {
        // Eq-(1) family centered between the roots of n = (4k+1)(4k+3),
        // i.e. k -> w - 1/2. Informational: the paper hints at an analogous
        // structure but does not pin the substitution.
        const Family& f = family_lookup("d_eq1");
        Rat one = 1, half = make_rat(-1, 2);
        auto centered = [&](const Poly& p) { return p.compose_linear(one, half); };
        const Poly b = centered(f.elements[1]);
        const Poly c = centered(f.elements[2]);
        const Poly d = centered(f.elements[3]);
        out.push_back({f.id, "n", centered(f.n_poly).parity(), false});
        out.push_back({f.id, "b", b.parity(), false});
        out.push_back({f.id, "c+d", (c + d).parity(), false});
        out.push_back({f.id, "d-c", (d - c).parity(), false});
    }
    return out;
}

std::vector<RatioPoint> family_ratio_limit(const std::string& id,
                                           const std::vector<Int>& params) {
    const Family& fam = family_lookup(id);
    std::vector<RatioPoint> out;
    out.reserve(params.size());
    for (const Int& p : params) {
        RatioPoint point;
        point.param = p;
        try {
            Tuple t = family_eval(fam, Rat(p) + fam.param_offset);
            Metrics m = metrics(t);
            point.log_ratio = m.log_ratio;
            point.d_over_n2 = m.d_over_n2;
            Int n3 = abs(t.n());
            n3 = n3 * n3 * n3;
            point.d_over_n3 = make_rat(m.max_abs, n3).get_d();
        } catch (const ExcludedParameterError& e) {
            point.excluded = true;
            point.note = e.reason();
        }
        out.push_back(std::move(point));
    }
    return out;
}

}  // namespace dquad

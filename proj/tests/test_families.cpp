#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "dquad/families.hpp"
#include "dquad/errors.hpp"

using namespace dquad;

namespace {

std::vector<Int> ints(std::initializer_list<long> xs) {
    std::vector<Int> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

Rat rr(long num, long den = 1) { return make_rat(num, den); }

}  // namespace

TEST_CASE("registry has the thirteen families") {
    CHECK(family_registry().size() == 13);
    std::set<std::string> ids;
    for (const auto& f : family_registry()) ids.insert(f.id);
    for (const char* id :
         {"d1_classic", "d_4k3", "d_eq1", "sec2_main", "sec2_zform", "triple_A",
          "triple_B", "abba_1", "abba_2", "abba_3", "nine_twenty", "two_fifths",
          "square_n"})
        CHECK(ids.count(id) == 1);
}

TEST_CASE("family_lookup") {
    CHECK(family_lookup("sec2_main").n_poly == Poly::from_int_coeffs({16, 16, -64}));
    CHECK(family_lookup("abba_1").elements.size() == 4);
    CHECK(family_lookup("abba_1").n_poly.degree() == 4);
    CHECK(family_lookup("nine_twenty").n_poly.degree() == 20);
    CHECK_THROWS_AS(family_lookup("nope"), UnknownFamilyError);
}

TEST_CASE("family_eval reproduces the survey table rows") {
    Tuple k2 = family_eval("sec2_main", 2);
    CHECK(k2.n() == -208);
    CHECK(k2.elements() == ints({1, 2912, 131977, 174097}));
    Tuple k3 = family_eval("sec2_main", 3);
    CHECK(k3.n() == -512);
    CHECK(k3.elements() == ints({1, 16896, 1980161, 2362881}));
    Tuple k4 = family_eval("sec2_main", 4);
    CHECK(k4.n() == -944);
    CHECK(k4.elements() == ints({1, 56640, 12525465, 14266673}));
}

TEST_CASE("family_eval two_fifths instances") {
    Tuple v3 = family_eval("two_fifths", 3);
    CHECK(v3.n() == 1312164);
    CHECK(v3.elements() == ints({-448, -85, 335, 468}));
    Tuple v2 = family_eval("two_fifths", 2);
    CHECK(v2.n() == 8740);
    CHECK(v2.elements() == ints({-60, -21, 39, 64}));
}

TEST_CASE("family_eval other fixtures") {
    CHECK(family_eval("d_4k3", 1).elements() == ints({1, 18, 29, 93}));
    CHECK(family_eval("d_4k3", 1).n() == 7);
    CHECK(family_eval("square_n", 2).elements() == ints({-198, -160, 140, 188}));
    CHECK(family_eval("square_n", 2).n() == 42849);
    CHECK(family_eval("d1_classic", 2).elements() == ints({1, 3, 8, 120}));
}

TEST_CASE("excluded parameters are rejected with a reason") {
    CHECK_THROWS_WITH_AS(family_eval("triple_A", 1),
                         doctest::Contains("element 0 vanishes"), ExcludedParameterError);
    CHECK_THROWS_AS(family_eval("triple_A", 0), ExcludedParameterError);
    CHECK_THROWS_AS(family_eval("two_fifths", 1), ExcludedParameterError);   // dup/zero
    CHECK_THROWS_AS(family_eval("two_fifths", 0), ExcludedParameterError);
    CHECK_THROWS_AS(family_eval("two_fifths", -1), ExcludedParameterError);  // d = 0
    CHECK_THROWS_AS(family_eval("sec2_main", 0), ExcludedParameterError);    // b = 0
    CHECK_THROWS_AS(family_eval("d_4k3", 0), ExcludedParameterError);        // duplicate 1
    CHECK_THROWS_AS(family_eval("square_n", 1), ExcludedParameterError);     // c = d
    CHECK_THROWS_AS(family_eval("d1_classic", 1), ExcludedParameterError);   // k <= 1
    CHECK_THROWS_AS(family_eval("d1_classic", -3), ExcludedParameterError);  // k <= 1
    CHECK_THROWS_AS(family_eval("abba_1", 1), ExcludedParameterError);       // 4u = 3+u^2
}

TEST_CASE("sec2_zform evaluates only on the shifted grid") {
    // z = 15/8 corresponds to k = 2
    Tuple z = family_eval("sec2_zform", rr(15, 8));
    CHECK(z.n() == -208);
    CHECK(z.elements() == ints({1, 2912, 131977, 174097}));
    CHECK_THROWS_AS(family_eval("sec2_zform", 1), ExcludedParameterError);
    CHECK_THROWS_AS(family_eval("sec2_zform", rr(1, 2)), ExcludedParameterError);
    CHECK_THROWS_AS(family_eval("sec2_zform", rr(-1, 8)), ExcludedParameterError);  // k = 0
    // integer families reject off-grid rationals
    CHECK_THROWS_AS(family_eval("sec2_main", rr(1, 2)), ExcludedParameterError);
}

TEST_CASE("sec2_zform is the k = z + 1/8 substitution of sec2_main") {
    const Family& main = family_lookup("sec2_main");
    const Family& zform = family_lookup("sec2_zform");
    Rat one = 1, eighth = rr(1, 8);
    for (std::size_t i = 0; i < main.elements.size(); ++i)
        CHECK(main.elements[i].compose_linear(one, eighth) == zform.elements[i]);
    CHECK(main.n_poly.compose_linear(one, eighth) == zform.n_poly);
}

TEST_CASE("family_prove certifies every registry family") {
    for (const auto& fam : family_registry()) {
        FamilyProof proof = family_prove(fam.id);
        std::size_t pairs = fam.elements.size() * (fam.elements.size() - 1) / 2;
        CHECK(proof.pair_roots.size() == pairs);
        for (const auto& [pair, root] : proof.pair_roots) {
            Poly product = fam.elements[static_cast<std::size_t>(pair.first)] *
                               fam.elements[static_cast<std::size_t>(pair.second)] +
                           fam.n_poly;
            CHECK(root * root == product);
            if (!root.is_zero()) CHECK(root.leading() > 0);
        }
    }
}

TEST_CASE("spot-checked proof roots") {
    auto d43 = family_prove("d_4k3");
    CHECK(d43.pair_roots.at({0, 1}) == Poly::from_int_coeffs({2, 3}));  // 3k+2
    auto ta = family_prove("triple_A");
    CHECK(ta.pair_roots.at({1, 2}) == Poly::from_int_coeffs({3, 0, 4}));  // 4k^2+3
    auto a1 = family_prove("abba_1");
    // (-4u)(3+u^2) + n = (u^2-2u+3)^2
    CHECK(a1.pair_roots.at({0, 3}) == Poly::from_int_coeffs({3, -2, 1}));
    // the (b, -b) pair of abba_2 degenerates to the zero polynomial
    auto a2 = family_prove("abba_2");
    CHECK(a2.pair_roots.at({2, 3}).is_zero());
}

TEST_CASE("registry soundness over [-50, 50]") {
    for (const auto& fam : family_registry()) {
        int evaluated = 0;
        for (long m = -50; m <= 50; ++m) {
            Rat p = Rat(m) + fam.param_offset;
            try {
                Tuple t = family_eval(fam, p);
                ++evaluated;
                CHECK(t.size() == static_cast<int>(fam.elements.size()));
            } catch (const ExcludedParameterError&) {
                // acceptable: degenerate or explicitly excluded parameter
            }
        }
        CHECK(evaluated >= 45);  // exclusions are isolated points (or k<2 for d1)
    }
}

TEST_CASE("symbolic roots match numeric certificates on random parameters") {
    std::mt19937_64 rng(101);
    for (const auto& fam : family_registry()) {
        FamilyProof proof = family_prove(fam.id);
        for (int iter = 0; iter < 20; ++iter) {
            Rat p = Rat(static_cast<long>(rng() % 2001) - 1000) + fam.param_offset;
            for (const auto& [pair, root] : proof.pair_roots) {
                Rat lhs = root.eval(p);
                Rat rhs = fam.elements[static_cast<std::size_t>(pair.first)].eval(p) *
                              fam.elements[static_cast<std::size_t>(pair.second)].eval(p) +
                          fam.n_poly.eval(p);
                CHECK(lhs * lhs == rhs);
            }
        }
    }
}

TEST_CASE("nine_twenty elements pair up and need only four distinct conditions") {
    const Family& f = family_lookup("nine_twenty");
    CHECK(f.elements[1] == -f.elements[0]);
    CHECK(f.elements[3] == -f.elements[2]);
    std::set<std::vector<Rat>> distinct;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            Poly product = f.elements[i] * f.elements[j] + f.n_poly;
            auto span = product.coeffs();
            distinct.insert(std::vector<Rat>(span.begin(), span.end()));
        }
    CHECK(distinct.size() == 4);
}

TEST_CASE("requires_nonsquare_n is set exactly where n_poly is not a square") {
    // three families have a structurally square n: the classic D(1) family
    // (n = 1), the fourth-power family, and the Remark-1 family
    for (const auto& fam : family_registry()) {
        bool n_is_square = poly_sqrt(fam.n_poly).has_value();
        CHECK(fam.requires_nonsquare_n == !n_is_square);
        bool expected_square = fam.id == "square_n" || fam.id == "d1_classic" ||
                               fam.id == "abba_2";
        CHECK(n_is_square == expected_square);
    }
    auto root = poly_sqrt(family_lookup("square_n").n_poly);
    REQUIRE(root.has_value());
    // (15u-7)(5u-1) = 75u^2 - 50u + 7
    CHECK(*root == Poly::from_int_coeffs({7, -50, 75}));
}

TEST_CASE("witness families have non-square n at every usable parameter") {
    for (const char* id : {"two_fifths", "sec2_main"}) {
        const Family& fam = family_lookup(id);
        for (long p = -50; p <= 50; ++p) {
            try {
                Tuple t = family_eval(fam, Rat(p));
                CHECK(!is_perfect_square(t.n()));
            } catch (const ExcludedParameterError&) {
            }
        }
    }
}

TEST_CASE("parity audit") {
    auto report = family_parity_audit();
    auto find = [&](const std::string& fam, const std::string& label) -> const ParityEntry& {
        for (const auto& e : report)
            if (e.family == fam && e.label == label) return e;
        REQUIRE(false);
        return report.front();
    };
    CHECK(find("sec2_zform", "n").parity == Parity::Even);
    CHECK(find("sec2_zform", "b").parity == Parity::Even);
    CHECK(find("sec2_zform", "c+d").parity == Parity::Even);
    CHECK(find("sec2_zform", "d-c").parity == Parity::Odd);
    for (const char* label : {"n", "b", "c+d", "d-c"})
        CHECK(find("sec2_zform", label).certified);
    // the Eq-(1) report is informational: only n centers to an even poly
    CHECK(find("d_eq1", "n").parity == Parity::Even);
    CHECK(find("d_eq1", "b").parity == Parity::Neither);
    CHECK(find("d_eq1", "c+d").parity == Parity::Neither);
    CHECK(find("d_eq1", "d-c").parity == Parity::Neither);
    for (const char* label : {"n", "b", "c+d", "d-c"})
        CHECK(!find("d_eq1", label).certified);
}

TEST_CASE("ratio limits: sec2_main increases toward 3, two_fifths decreases toward 2/5") {
    auto main = family_ratio_limit("sec2_main", {10, 100, 1000});
    REQUIRE(main.size() == 3);
    for (const auto& p : main) REQUIRE(!p.excluded);
    CHECK(*main[0].log_ratio < *main[1].log_ratio);
    CHECK(*main[1].log_ratio < *main[2].log_ratio);
    CHECK(*main[2].log_ratio < 3.0);
    CHECK(*main[0].log_ratio == doctest::Approx(2.527142).epsilon(1e-5));
    // d/|n|^3 -> 1/64
    CHECK(main[2].d_over_n3 == doctest::Approx(1.0 / 64).epsilon(0.05));
    CHECK(main[2].d_over_n3 == doctest::Approx(0.015628911).epsilon(1e-6));

    auto tf = family_ratio_limit("two_fifths", {10, 100, 1000});
    CHECK(*tf[0].log_ratio > *tf[1].log_ratio);
    CHECK(*tf[1].log_ratio > *tf[2].log_ratio);
    CHECK(*tf[2].log_ratio > 0.4);
    CHECK(*tf[0].log_ratio == doctest::Approx(0.416563).epsilon(1e-5));
}

TEST_CASE("ratio limit marks excluded parameters") {
    auto points = family_ratio_limit("two_fifths", {1, 2});
    REQUIRE(points.size() == 2);
    CHECK(points[0].excluded);
    CHECK(!points[0].note.empty());
    CHECK(!points[1].excluded);
}

TEST_CASE("claimed ratios recorded for the limit families") {
    CHECK(family_lookup("sec2_main").claimed_ratio == Rat(3));
    CHECK(family_lookup("two_fifths").claimed_ratio == rr(2, 5));
    CHECK(family_lookup("nine_twenty").claimed_ratio == rr(9, 20));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bundlecoh/sigma.hpp"

using namespace bundlecoh;

namespace {

constexpr int kGenus = 2;

RingPtr ring2(int cap = 12) {
    std::vector<GeneratorSpec> gens;
    gens.push_back(GeneratorSpec::even_gen("a1", 2));
    gens.push_back(GeneratorSpec::even_gen("a2", 4));
    gens.push_back(GeneratorSpec::even_gen("f2", 2));
    for (int r = 1; r <= 2; ++r)
        for (int j = 1; j <= 2 * kGenus; ++j)
            gens.push_back(GeneratorSpec::odd_gen("b" + std::to_string(r) + "_" + std::to_string(j),
                                                  2 * r - 1));
    return Ring::make(std::move(gens), cap);
}

SigmaClass random_sigma(const RingPtr& R, std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<int> pick(0, R->size() - 1);
    SigmaClass s(R, kGenus);
    for (int c = 0; c < s.basis_size(); ++c) {
        GradedElement x(R);
        for (int t = 0; t < 2; ++t) {
            int i = pick(rng), j = pick(rng);
            auto gi = GradedElement::generator(R, i);
            auto gj = GradedElement::generator(R, j);
            x += gi * gj * Rational(coef(rng));
            x += gi * Rational(coef(rng));
        }
        s.comp(c) = x;
    }
    return s;
}

}  // namespace

TEST_CASE("surface basis multiplication rules") {
    auto R = ring2();
    auto one = GradedElement::constant(R, 1);
    auto A = [&](int s) { return SigmaClass::pure(kGenus, s, one); };
    int omega = 2 * kGenus + 1;

    CHECK(A(1) * A(1 + kGenus) == A(omega));
    CHECK(A(1 + kGenus) * A(1) == -A(omega));
    CHECK((A(1) * A(2)).is_zero());
    CHECK((A(omega) * A(1)).is_zero());
    CHECK((A(omega) * A(omega)).is_zero());
    CHECK(A(0) * A(1) == A(1));
}

TEST_CASE("Koszul bookkeeping across the tensor factor") {
    auto R = ring2();
    auto x = GradedElement::generator(R, "b1_1");
    auto y = GradedElement::generator(R, "b1_2");
    // (x (x) alpha_s)(y (x) alpha_{s+g}) = (-1)^{|y|} (xy) (x) omega
    auto lhs = SigmaClass::pure(kGenus, 1, x) * SigmaClass::pure(kGenus, 1 + kGenus, y);
    auto rhs = SigmaClass::pure(kGenus, 2 * kGenus + 1, -(x * y));
    CHECK(lhs == rhs);
    // with an even y there is no sign
    auto a1 = GradedElement::generator(R, "a1");
    auto lhs2 = SigmaClass::pure(kGenus, 1, x) * SigmaClass::pure(kGenus, 1 + kGenus, a1);
    auto rhs2 = SigmaClass::pure(kGenus, 2 * kGenus + 1, x * a1);
    CHECK(lhs2 == rhs2);
}

TEST_CASE("sigma_mul is associative and genus-checked") {
    auto R = ring2();
    std::mt19937 rng(9);
    for (int it = 0; it < 12; ++it) {
        auto x = random_sigma(R, rng);
        auto y = random_sigma(R, rng);
        auto z = random_sigma(R, rng);
        CHECK((x * y) * z == x * (y * z));
    }
    SigmaClass other(R, 3);
    CHECK_THROWS(random_sigma(R, rng) * other);
}

TEST_CASE("pushforward") {
    auto R = ring2();
    auto x = GradedElement::generator(R, "a1");
    CHECK(SigmaClass::pure(kGenus, 2 * kGenus + 1, x).pushforward() == x);
    CHECK(SigmaClass::pure(kGenus, 0, x).pushforward().is_zero());

    // the omega component of c_1(V) reads off f_1
    auto f1 = GradedElement::constant(R, 5);
    SigmaClass c1(R, kGenus);
    c1.comp(0) = x;
    c1.comp(1) = GradedElement::generator(R, "b1_1");
    c1.comp(2 * kGenus + 1) = f1;
    CHECK(c1.pushforward() == f1);
}

TEST_CASE("projection formula") {
    auto R = ring2();
    std::mt19937 rng(21);
    for (int it = 0; it < 10; ++it) {
        auto x = random_sigma(R, rng);
        GradedElement y(R);
        y += GradedElement::generator(R, "a1") * Rational(2);
        y += GradedElement::generator(R, "f2");
        SigmaClass y1(R, kGenus);
        y1.comp(0) = y;
        CHECK((x * y1).pushforward() == x.pushforward() * y);
    }
}

TEST_CASE("chern/character conversions") {
    auto R = ring2();
    auto zero = GradedElement::zero(R);
    auto a1 = GradedElement::generator(R, "a1");
    auto a2 = GradedElement::generator(R, "a2");

    SUBCASE("line bundle: ch_k = c_1^k / k!") {
        std::vector<GradedElement> c{a1};
        auto ch = chern_to_character(c, zero, 5);
        Rational fact(1);
        GradedElement p = a1;
        for (int k = 1; k <= 5; ++k) {
            fact *= k;
            CHECK(ch[k - 1] == p * (Rational(1) / fact));
            p = p * a1;
        }
    }
    SUBCASE("rank 2: ch_2 = (c_1^2 - 2 c_2)/2 (Newton identities)") {
        std::vector<GradedElement> c{a1, a2};
        auto ch = chern_to_character(c, zero, 3);
        CHECK(ch[0] == a1);
        CHECK(ch[1] == (a1 * a1 - a2 * Rational(2)) * Rational(1, 2));
    }
    SUBCASE("c_1 = ch_1 always; inverse pair up to rank 4") {
        std::mt19937 rng(17);
        std::uniform_int_distribution<int> coef(-2, 2);
        for (int n = 1; n <= 4; ++n) {
            std::vector<GradedElement> c;
            for (int r = 1; r <= n; ++r) {
                GradedElement x(R);
                x += GradedElement::generator(R, "a1").pow(r) * Rational(coef(rng));
                if (r >= 2) x += GradedElement::generator(R, "a2").pow(r / 2) * Rational(coef(rng));
                x = x.degree_part(2 * r);
                c.push_back(x);
            }
            int cap = 5;
            auto ch = chern_to_character(c, zero, cap);
            CHECK(ch[0] == c[0]);
            auto back = character_to_chern(ch, zero);
            for (int r = 1; r <= n; ++r) CHECK(back[r - 1] == c[r - 1]);
            for (int r = n + 1; r <= cap; ++r) CHECK(back[r - 1].is_zero());
        }
    }
    SUBCASE("virtual: minus a line bundle gives the (1+xt)^{-1} expansion") {
        // ch_0 = -1, ch_k = -x^k/k!  ->  c(t) = (1+xt)^{-1} = sum (-x)^k t^k
        std::vector<GradedElement> ch;
        Rational fact(1);
        GradedElement p = a1;
        for (int k = 1; k <= 5; ++k) {
            fact *= k;
            ch.push_back(-(p * (Rational(1) / fact)));
            p = p * a1;
        }
        auto c = character_to_chern(ch, zero);
        GradedElement expect = -a1;
        for (int k = 1; k <= 5; ++k) {
            CHECK(c[k - 1] == expect);
            expect = expect * (-a1);
        }
    }
}

TEST_CASE("assemble_universal_chern") {
    auto R = ring2();
    const int n = 2, g = kGenus;
    std::vector<GradedElement> a{GradedElement::generator(R, "a1"),
                                 GradedElement::generator(R, "a2")};
    std::vector<std::vector<GradedElement>> b(n);
    for (int r = 1; r <= n; ++r)
        for (int j = 1; j <= 2 * g; ++j)
            b[r - 1].push_back(
                GradedElement::generator(R, "b" + std::to_string(r) + "_" + std::to_string(j)));
    std::vector<GradedElement> f{GradedElement::constant(R, 5),  // f_1 = degree
                                 GradedElement::generator(R, "f2")};
    auto c = assemble_universal_chern(a, b, f, n, g);
    CHECK(c[0].comp(0) == a[0]);
    CHECK(c[0].comp(1) == b[0][0]);
    CHECK(c[0].pushforward() == GradedElement::constant(R, 5));
    CHECK(c[1].comp(2) == b[1][1]);
    CHECK(c[1].pushforward() == f[1]);

    // trivial data -> zero classes
    std::vector<GradedElement> za{GradedElement::zero(R), GradedElement::zero(R)};
    std::vector<std::vector<GradedElement>> zb(
        n, std::vector<GradedElement>(2 * g, GradedElement::zero(R)));
    std::vector<GradedElement> zf{GradedElement::zero(R), GradedElement::zero(R)};
    for (auto& cr : assemble_universal_chern(za, zb, zf, n, g)) CHECK(cr.is_zero());

    CHECK_THROWS(assemble_universal_chern(za, zb, f, 1, g));
}

TEST_CASE("dual involution") {
    auto R = ring2();
    auto a1 = GradedElement::generator(R, "a1");
    SigmaClass s(R, kGenus);
    s.comp(0) = GradedElement::constant(R, 3) + a1;         // degrees 0 and 2
    s.comp(1) = GradedElement::generator(R, "b1_1");        // total degree 2
    s.comp(2 * kGenus + 1) = GradedElement::constant(R, 7);  // total degree 2
    auto d = s.dual();
    CHECK(d.comp(0) == GradedElement::constant(R, 3) - a1);
    CHECK(d.comp(1) == -s.comp(1));
    CHECK(d.comp(2 * kGenus + 1) == GradedElement::constant(R, -7));
    CHECK(d.dual() == s);
}

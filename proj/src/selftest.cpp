#include <chrono>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>

#include "bundlecoh/betti.hpp"
#include "bundlecoh/cli_run.hpp"
#include "bundlecoh/parab.hpp"
#include "bundlecoh/respair.hpp"
#include "bundlecoh/strata.hpp"

// Desk-scale invariant battery behind the `selftest` subcommand. Each suite
// is small enough to run in well under a second; the full battery exercises
// every module's core identities.

namespace bundlecoh {

namespace {

struct Suite {
    std::string name;
    std::function<bool()> fn;
};

bool exactalg_suite() {
    std::vector<GeneratorSpec> gens{GeneratorSpec::even_gen("a1", 2),
                                    GeneratorSpec::odd_gen("b1", 1),
                                    GeneratorSpec::odd_gen("b2", 1)};
    auto R = Ring::make(gens, 10);
    auto a1 = GradedElement::generator(R, "a1");
    auto b1 = GradedElement::generator(R, "b1");
    auto b2 = GradedElement::generator(R, "b2");
    if (!(b1 * b2 == -(b2 * b1))) return false;
    if (!(b1 * b1).is_zero()) return false;
    if (!(log(exp(a1)) == a1)) return false;
    auto one = GradedElement::constant(R, 1);
    if (!((one + a1) * (one - a1) == one - a1 * a1)) return false;
    TSeries u(GradedElement::zero(R), 5);
    u.set_coeff(1, a1);
    auto p = binomial_power(u, 3, GradedElement::zero(R));
    auto q = binomial_power(u, -3, GradedElement::zero(R));
    return p * q == TSeries::one_like(p);
}

bool kunneth_suite() {
    const int g = 2;
    std::vector<GeneratorSpec> gens{GeneratorSpec::even_gen("a1", 2),
                                    GeneratorSpec::even_gen("a2", 4)};
    auto R = Ring::make(gens, 12);
    auto zero = GradedElement::zero(R);
    auto a1 = GradedElement::generator(R, "a1");
    auto a2 = GradedElement::generator(R, "a2");
    std::vector<GradedElement> c{a1, a2};
    auto ch = chern_to_character(c, zero, 6);
    auto back = character_to_chern(ch, zero);
    if (!(back[0] == a1 && back[1] == a2)) return false;
    for (std::size_t i = 2; i < back.size(); ++i)
        if (!back[i].is_zero()) return false;
    if (!(ch[1] == (a1 * a1 - a2 * Rational(2)) * Rational(1, 2))) return false;
    // pushforward conventions
    SigmaClass s = SigmaClass::pure(g, 2 * g + 1, a1);
    return s.pushforward() == a1;
}

bool strata_suite() {
    for (long n = 2; n <= 3; ++n)
        for (long d = 0; d < n; ++d)
            for (const auto& mu : enumerate_hn_types(n, d, 2, 10)) {
                if (mu.is_semistable()) continue;
                long total = 0;
                long nr = n, dr = d;
                for (std::size_t i = 0; i + 1 < mu.blocks.size(); ++i) {
                    total += coarse_codim({mu.blocks[i].first, mu.blocks[i].second, nr, dr}, 2);
                    nr -= mu.blocks[i].first;
                    dr -= mu.blocks[i].second;
                }
                if (total != codim_mu(mu, 2)) return false;
            }
    return true;
}

bool betti_suite() {
    IntSeries factor(16);
    factor.set_coeff(0, 1);
    factor.set_coeff(2, 1);
    factor.set_coeff(3, 4);
    factor.set_coeff(4, 1);
    factor.set_coeff(6, 1);
    factor.mul_one_plus_tm_pow(1, 4);
    if (!(p_moduli(2, 1, 2, 16) == factor)) return false;
    IntSeries jac = IntSeries::one(10);
    jac.mul_one_plus_tm_pow(1, 4);
    if (!(p_moduli(1, 3, 2, 10) == jac)) return false;
    IntSeries line(8);
    line.set_coeff(0, 1);
    line.set_coeff(2, 1);
    return p_flag({1, 1}, 8) == line;
}

bool relgen_suite() {
    auto w = relation_window(2, 1, 1, 1, 2);
    if (!(w.first == 4 && w.last == 6)) return false;
    if (virtual_rank(2, 1, 1, 1, 2) != 3) return false;
    // line-bundle closed form
    RelationRing rr = make_relation_ring(1, 0, 1, 1, 2, 8);
    BundleGens main = rr.main, hat = rr.hat;
    for (auto& row : main.b)
        for (auto& x : row) x = GradedElement::zero(rr.ring);
    for (auto& row : hat.b)
        for (auto& x : row) x = GradedElement::zero(rr.ring);
    TSeries c = grr_minus_pi(main, hat, Caps{8, 4});
    TSeries u(GradedElement::zero(rr.ring), 4);
    u.set_coeff(1, main.a[0] - hat.a[0]);
    if (!(c == binomial_power(u, 2, GradedElement::zero(rr.ring)))) return false;
    auto nc = normalization_coeffs(2, 5, 2);
    return nc.u * 2 + nc.v * 3 == 1;
}

bool koszul_mutation_suite() {
    // the Koszul sign is load-bearing: flipping one odd factor must break
    // anticommutativity the way the sign predicts
    std::vector<GeneratorSpec> gens{GeneratorSpec::odd_gen("u", 1), GeneratorSpec::odd_gen("v", 1)};
    auto R = Ring::make(gens, 6);
    auto u = GradedElement::generator(R, "u");
    auto v = GradedElement::generator(R, "v");
    auto uv = u * v;
    auto vu = v * u;
    if (!(uv == -vu)) return false;
    return !(uv == vu);
}

bool recurrence_suite() {
    RelationRing rr = make_relation_ring(2, 1, 1, 1, 2, 12);
    return recurrence_residual(rr.main, rr.hat, Caps{12, 6}).is_zero();
}

bool shift_suite() {
    RelationRing rr = make_relation_ring(2, 1, 1, 1, 2, 12);
    return shift_identity_check(rr.main, rr.hat, 1, Caps{12, 6});
}

bool two_path_suite() {
    const int g = 2;
    RelationRing rr = make_relation_ring(2, 1, 1, 1, g, 8);
    SplitRelationRing SR = make_split_ring(2, 1, 1, {1}, g, 8);
    Caps caps{8, 3};
    return torus_restrict_hat(grr_minus_pi(rr.main, rr.hat, caps), rr, SR) ==
           split_chern_poly(SR, caps);
}

bool respair_suite() {
    if (!vandermonde_jacobian_check(3)) return false;
    SplitRelationRing SR = make_split_ring(1, 0, 2, {0, 1}, 2, 10);
    if (!denominator_reciprocal_check(SR, 0, 4)) return false;
    // Berezin normalization
    GradedElement om(SR.ring);
    for (int l = 0; l < 2; ++l)
        for (int s = 0; s < 2; ++s)
            om += GradedElement::generator(SR.ring, SR.hat.zeta_idx[l][s]) *
                  GradedElement::generator(SR.ring, SR.hat.zeta_idx[l][s + 2]);
    if (!(berezin_integral(exp(om), SR.hat) == GradedElement::constant(SR.ring, 4))) return false;
    // residue basics
    TSeries one_ts(GradedElement::zero(SR.ring), 2);
    one_ts.set_coeff(0, GradedElement::constant(SR.ring, 1));
    std::vector<int> lo{-3}, hi{5};
    LaurentSeries x(lo, hi, one_ts * Rational(0));
    x.add_to({-1}, one_ts);
    if (!(iterated_residue(x) == one_ts)) return false;
    auto c = hat_weight_vector(2, 1);
    return fundamental_domain(c) == c;
}

bool pairing_suite() {
    const int g = 2;
    Caps caps{8, 3};
    RelationRing rr = make_relation_ring(1, 0, 1, 1, g, caps.degree_cap);
    auto one = GradedElement::constant(rr.ring, 1);
    TSeries p = pairing_thm_10_2(one, rr, 1, 0, 1, 1, g, caps);
    for (int r = 0; r < g; ++r)
        if (!p.coeff(r).is_zero()) return false;
    return true;
}

bool parab_suite() {
    ParabolicData pd;
    pd.n = 2;
    pd.d = 0;
    pd.weights = {Rational(0)};
    pd.mults = {2};
    auto rep = good_data_check(pd);
    if (rep.good) return false;
    ParabolicData pd2;
    pd2.n = 2;
    pd2.d = 1;
    pd2.weights = {Rational(0)};
    pd2.mults = {2};
    if (!good_data_check(pd2).good) return false;
    SubParabolicData sub{1, 1, {1}};
    if (par_rank_formula(pd2, sub, 2) != virtual_rank(2, 1, 1, 1, 2)) return false;
    std::vector<int> J{1, 3};
    return weight_degree_count(J, {1, 1, 1}) == 0;
}

}  // namespace

int selftest(std::ostream& out) {
    std::vector<Suite> suites{
        {"exactalg", exactalg_suite},   {"koszul-sign", koszul_mutation_suite},
        {"kunneth", kunneth_suite},     {"strata", strata_suite},
        {"betti", betti_suite},         {"relgen", relgen_suite},
        {"recurrence", recurrence_suite}, {"shift", shift_suite},
        {"two-path", two_path_suite},   {"respair", respair_suite},
        {"pairing", pairing_suite},     {"parabolic", parab_suite},
    };
    bool all = true;
    for (const auto& s : suites) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string error;
        try {
            ok = s.fn();
        } catch (const std::exception& e) {
            error = e.what();
        }
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
        out << (ok ? "[PASS] " : "[FAIL] ") << std::left << std::setw(14) << s.name << " "
            << std::fixed << std::setprecision(1) << ms << " ms";
        if (!error.empty()) out << "  (" << error << ")";
        out << "\n";
        all = all && ok;
    }
    out << (all ? "selftest: all suites passed\n" : "selftest: FAILURES\n");
    return all ? 0 : 1;
}

}  // namespace bundlecoh

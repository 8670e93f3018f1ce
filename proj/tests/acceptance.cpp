// Acceptance suite: runs every acceptance criterion at its stated tolerance
// (all identities exact) and prints one pass/fail line per criterion.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "bundlecoh/betti.hpp"
#include "bundlecoh/parab.hpp"
#include "bundlecoh/respair.hpp"
#include "bundlecoh/strata.hpp"

using namespace bundlecoh;

namespace {

bool check(bool cond, std::string& detail, const std::string& msg) {
    if (!cond && detail.empty()) detail = msg;
    return cond;
}

// independent brute-force HN-type enumeration (no codimension-bound solving)
std::vector<HNType> brute_force_types(long n, long d, int g, long cap) {
    std::vector<HNType> out;
    long dbound = cap + std::abs(d) + n * n * g + 4;
    std::vector<std::pair<long, long>> cur;
    std::function<void(long, long)> rec = [&](long nrem, long drem) {
        if (nrem == 0) {
            if (drem != 0) return;
            HNType t;
            t.blocks = cur;
            if (t.valid() && codim_mu(t, g) <= cap) out.push_back(t);
            return;
        }
        for (long n1 = 1; n1 <= nrem; ++n1)
            for (long d1 = -dbound; d1 <= dbound; ++d1) {
                cur.emplace_back(n1, d1);
                rec(nrem - n1, drem - d1);
                cur.pop_back();
            }
    };
    rec(n, d);
    return out;
}

GradedElement random_hat_eta(const RelationRing& rr, std::mt19937& rng, int max_factors = 3) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> nfac(0, max_factors);
    std::vector<int> pool;
    for (int i = 0; i < rr.hat_gen_count; ++i)
        if (rr.ring->gen(i).name[1] != 'f') pool.push_back(i);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1);
    GradedElement eta(rr.ring);
    for (int t = 0; t < 3; ++t) {
        GradedElement term = GradedElement::constant(rr.ring, Rational(coef(rng)));
        int k = nfac(rng);
        for (int i = 0; i < k; ++i) term = term * GradedElement::generator(rr.ring, pool[pick(rng)]);
        eta += term;
    }
    return eta;
}

GradedElement random_homogeneous_eta(const RelationRing& rr, std::mt19937& rng, int degree) {
    std::uniform_int_distribution<int> coef(-2, 2);
    std::vector<int> pool;
    for (int i = 0; i < rr.hat_gen_count; ++i)
        if (rr.ring->gen(i).name[1] != 'f') pool.push_back(i);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1);
    GradedElement eta(rr.ring);
    for (int attempts = 0; attempts < 80 && eta.is_zero(); ++attempts) {
        for (int t = 0; t < 6; ++t) {
            GradedElement term = GradedElement::constant(rr.ring, Rational(coef(rng)));
            int deg = 0;
            int guard = 0;
            while (deg < degree && !term.is_zero() && ++guard < 64) {
                int i = pool[pick(rng)];
                int gd = rr.ring->gen(i).degree;
                if (deg + gd > degree) continue;
                term = term * GradedElement::generator(rr.ring, i);
                deg += gd;
            }
            if (deg == degree) eta += term;
        }
        eta = eta.degree_part(degree);
    }
    return eta;
}

std::string series_str(const TSeries& s) {
    std::string out;
    for (int r = 0; r <= s.t_cap(); ++r) out += s.coeff(r).str() + " ;; ";
    return out;
}

// ---------------------------------------------------------------------------

bool criterion1(std::string& detail) {
    for (int g : {2, 3, 4})
        for (long d : {0L, 1L, 7L}) {
            IntSeries expect = IntSeries::one(2 * g + 4);
            expect.mul_one_plus_tm_pow(1, 2 * g);
            if (!check(p_moduli(1, d, g, 2 * g + 4) == expect, detail,
                       "p_moduli(1,d," + std::to_string(g) + ") != (1+t)^2g"))
                return false;
        }
    return true;
}

bool criterion2(std::string& detail) {
    const int cap = 16;
    IntSeries expect(cap);
    expect.set_coeff(0, 1);
    expect.set_coeff(2, 1);
    expect.set_coeff(3, 4);
    expect.set_coeff(4, 1);
    expect.set_coeff(6, 1);
    expect.mul_one_plus_tm_pow(1, 4);
    IntSeries pm = p_moduli(2, 1, 2, cap);
    if (!check(pm == expect, detail, "p_moduli(2,1,2) mismatch")) return false;
    if (!check(pm.degree() == 10 && moduli_dimension(2, 2) == 10, detail, "degree != 10"))
        return false;
    if (!check(pm.is_palindromic(10), detail, "not palindromic")) return false;

    // independent oracle: brute-force stratum enumeration, rank-1 pieces in
    // closed form, no bounded recursion
    IntSeries ss = p_gauge(2, 2, cap);
    IntSeries rank1 = p_gauge(1, 2, cap);
    for (const auto& mu : brute_force_types(2, 1, 2, cap / 2)) {
        if (mu.is_semistable()) continue;
        IntSeries term = IntSeries::monomial(cap, static_cast<int>(2 * codim_mu(mu, 2)));
        for (std::size_t i = 0; i < mu.blocks.size(); ++i) term = term * rank1;
        ss -= term;
    }
    IntSeries one_minus_t2(cap);
    one_minus_t2.set_coeff(0, 1);
    one_minus_t2.set_coeff(2, -1);
    IntSeries oracle = ss * one_minus_t2;
    for (int r = 0; r <= 10; ++r)
        if (!check(oracle.coeff(r) == pm.coeff(r), detail, "brute-force oracle mismatch"))
            return false;
    return true;
}

bool criterion3(std::string& detail) {
    for (long n = 1; n <= 3; ++n)
        for (long d = 0; d <= n; ++d) {
            if (std::gcd(n, d) != 1) continue;
            for (int g = 2; g <= 4; ++g) {
                long dim = moduli_dimension(n, g);
                int cap = static_cast<int>(2 * dim + 2);
                IntSeries pm = p_moduli(n, d, g, cap);
                std::string ctx = "(" + std::to_string(n) + "," + std::to_string(d) + "," +
                                  std::to_string(g) + ")";
                if (!check(pm.nonnegative(), detail, ctx + " negative coefficient")) return false;
                if (!check(pm.is_palindromic(static_cast<int>(dim)), detail,
                           ctx + " not palindromic"))
                    return false;
                if (!check(pm.coeff(0) == 1, detail, ctx + " constant term != 1")) return false;
                if (!check(pm.degree() == dim, detail, ctx + " degree mismatch")) return false;
                if (!check(p_semistable(n, d, g, cap) == p_semistable(n, d + n, g, cap), detail,
                           ctx + " d -> d+n invariance failed"))
                    return false;
            }
        }
    return true;
}

bool criterion4(std::string& detail) {
    for (long n = 2; n <= 4; ++n)
        for (long d = 0; d < n; ++d)
            for (int g : {2, 3})
                for (const auto& mu : enumerate_hn_types(n, d, g, 20)) {
                    if (mu.is_semistable()) continue;
                    long total = 0;
                    long nr = n, dr = d;
                    for (std::size_t i = 0; i + 1 < mu.blocks.size(); ++i) {
                        total +=
                            coarse_codim({mu.blocks[i].first, mu.blocks[i].second, nr, dr}, g);
                        nr -= mu.blocks[i].first;
                        dr -= mu.blocks[i].second;
                    }
                    if (!check(total == codim_mu(mu, g), detail, "telescoping failed"))
                        return false;
                }
    return true;
}

bool criterion5(std::string& detail) {
    const int tcap = 8, dcap = 16;
    for (auto [n, nhat] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}})
        for (int g : {2, 3}) {
            long d = 1, dhat = 1;
            std::vector<long> degrees(nhat, 0);
            degrees[nhat - 1] = dhat;
            RelationRing rr = make_relation_ring(n, d, nhat, dhat, g, dcap);
            SplitRelationRing SR = make_split_ring(n, d, nhat, degrees, g, dcap);
            Caps caps{dcap, tcap};
            TSeries lhs = torus_restrict_hat(grr_minus_pi(rr.main, rr.hat, caps), rr, SR);
            TSeries rhs = split_chern_poly(SR, caps);
            std::string ctx = "(" + std::to_string(n) + "," + std::to_string(nhat) + "), g=" +
                              std::to_string(g);
            if (!check(lhs == rhs, detail, "two-path mismatch at " + ctx)) return false;
        }
    return true;
}

bool criterion6(std::string& detail) {
    const int tcap = 12, dcap = 24;
    for (auto [n, nhat, g] : std::vector<std::array<int, 3>>{
             {2, 1, 2}, {2, 1, 3}, {3, 1, 2}, {2, 2, 2}}) {
        RelationRing rr = make_relation_ring(n, 1, nhat, 1, g, dcap);
        TSeries tail = recurrence_residual(rr.main, rr.hat, Caps{dcap, tcap});
        std::string ctx = "(" + std::to_string(n) + "," + std::to_string(nhat) + "," +
                          std::to_string(g) + ")";
        if (!check(tail.is_zero(), detail, "recurrence tail nonzero at " + ctx)) return false;
    }
    return true;
}

bool criterion7(std::string& detail) {
    const int tcap = 8, dcap = 16;
    RelationRing rr = make_relation_ring(2, 1, 1, 1, 2, dcap);
    for (long delta : {1L, 2L})
        if (!check(shift_identity_check(rr.main, rr.hat, delta, Caps{dcap, tcap}), detail,
                   "shift identity failed at delta=" + std::to_string(delta)))
            return false;
    return true;
}

bool criterion8(std::string& detail) {
    auto w = relation_window(2, 1, 1, 1, 2);
    if (!check(w.first == 4 && w.last == 6, detail, "window(2,1,1,1,2) != {4,5,6}")) return false;
    for (long n = 2; n <= 4; ++n)
        for (long nhat = 1; nhat < n; ++nhat)
            for (long d = 1; d < n; ++d)
                for (long dhat = 0; dhat <= 2 * n; ++dhat) {
                    if (!(dhat * n > d * nhat && dhat * n < (d + n) * nhat)) continue;
                    for (int g : {2, 3})
                        if (!check(relation_window(n, d, nhat, dhat, g).width() ==
                                       2 * n * nhat - 1,
                                   detail, "window width != 2 n nhat - 1"))
                            return false;
                }
    // Mumford specialization: hat trivial, -n < d < 0
    for (int g : {2, 3})
        for (long n : {2L, 3L})
            for (long d = -n + 1; d < 0; ++d) {
                if (!check(virtual_rank(n, d, 1, 0, g) == n * (g - 1) - d, detail,
                           "Mumford rank mismatch"))
                    return false;
                RelationRing rr = make_relation_ring(static_cast<int>(n), d, 1, 0, g, 8);
                BundleGens trivial = rr.hat;
                trivial.a[0] = GradedElement::zero(rr.ring);
                for (auto& row : trivial.b)
                    for (auto& x : row) x = GradedElement::zero(rr.ring);
                trivial.degree = 0;
                TSeries c = grr_minus_pi(rr.main, trivial, Caps{8, 3});
                if (!check(c.coeff(0) == GradedElement::constant(rr.ring, 1), detail,
                           "Mumford c_0 != 1"))
                    return false;
            }
    return true;
}

bool criterion9(std::string& detail) {
    const int g = 2;
    // (a) nhat = 1 pairings match direct Berezin evaluation on 20 randomized eta
    {
        const int n = 2;
        const long d = 1, dhat = 1;
        Caps caps{12, 4};
        RelationRing rr = make_relation_ring(n, d, 1, dhat, g, caps.degree_cap);
        SplitRelationRing SR = make_split_ring(n, d, 1, {dhat}, g, caps.degree_cap + 2);
        std::mt19937 rng(101);
        for (int it = 0; it < 20; ++it) {
            GradedElement eta = random_hat_eta(rr, rng);
            TSeries result = pairing_thm_10_2(eta, rr, n, d, 1, dhat, g, caps);
            GradedElement eta_s = torus_restrict_hat(eta, rr, SR);
            Caps ecaps{SR.ring->degree_cap(), caps.t_cap};
            TSeries F = grr_minus_pi(SR.main, SR.block_bundle(0), ecaps);
            std::vector<GradedElement> images;
            for (int i = 0; i < SR.ring->size(); ++i)
                images.push_back(i == SR.hat.a_idx[0] ? GradedElement::zero(SR.ring)
                                                      : GradedElement::generator(SR.ring, i));
            TSeries oracle(GradedElement::zero(SR.ring), caps.t_cap);
            for (int r = 0; r <= caps.t_cap; ++r)
                oracle.set_coeff(
                    r, berezin_integral((F.coeff(r) * eta_s).substitute(SR.ring, images), SR.hat));
            if (!check(series_str(result) == series_str(oracle), detail,
                       "(a) direct Berezin mismatch"))
                return false;
        }
    }
    // (b) degree conservation at nhat = 2
    {
        const int n = 2;
        const long d = 1, dhat = 1;
        Caps caps{14, 3};
        RelationRing rr = make_relation_ring(n, d, 2, dhat, g, caps.degree_cap);
        std::mt19937 rng(55);
        const long dim_term = 2 * (4 * (g - 1) + 1);
        int tested = 0;
        for (int deg : {0, 1, 2, 3, 4, 5, 6, 7, 8, 12}) {
            GradedElement eta = random_homogeneous_eta(rr, rng, deg);
            if (eta.is_zero()) continue;
            ++tested;
            TSeries p = pairing_thm_10_2(eta, rr, n, d, 2, dhat, g, caps);
            for (int r = 0; r <= caps.t_cap; ++r) {
                long expected = deg + 2 * r - dim_term;
                const auto& c = p.coeff(r);
                if (expected < 0) {
                    if (!check(c.is_zero(), detail, "(b) negative-degree demand nonzero"))
                        return false;
                } else if (!c.is_zero()) {
                    int got = -1;
                    if (!check(c.is_homogeneous(&got) && got == expected, detail,
                               "(b) inhomogeneous pairing coefficient"))
                        return false;
                }
            }
        }
        if (!check(tested >= 10, detail, "(b) too few eta samples")) return false;
    }
    // (c) Weyl/relabeling invariance for nhat in {2, 3}
    {
        const long d = 0, dhat = 1;
        Caps caps2{14, 4};
        RelationRing rr2 = make_relation_ring(1, d, 2, dhat, g, caps2.degree_cap);
        std::mt19937 rng(77);
        for (int it = 0; it < 3; ++it) {
            GradedElement eta = random_hat_eta(rr2, rng, 4);
            PairingOptions swapped;
            swapped.relabel = {1, 0};
            TSeries a = pairing_thm_10_2(eta, rr2, 1, d, 2, dhat, g, caps2);
            TSeries b = pairing_thm_10_2(eta, rr2, 1, d, 2, dhat, g, caps2, swapped);
            if (!check(series_str(a) == series_str(b), detail, "(c) nhat=2 relabeling mismatch"))
                return false;
        }
        Caps caps3{10, 2};
        RelationRing rr3 = make_relation_ring(1, d, 3, dhat, g, caps3.degree_cap);
        GradedElement eta3 = GradedElement::constant(rr3.ring, 1) +
                             GradedElement::generator(rr3.ring, "ha1") +
                             GradedElement::generator(rr3.ring, "hb1_1") *
                                 GradedElement::generator(rr3.ring, "hb1_3");
        for (std::vector<int> sigma : {std::vector<int>{1, 0, 2}, std::vector<int>{2, 0, 1}}) {
            PairingOptions opts;
            opts.relabel = sigma;
            TSeries a = pairing_thm_10_2(eta3, rr3, 1, d, 3, dhat, g, caps3);
            TSeries b = pairing_thm_10_2(eta3, rr3, 1, d, 3, dhat, g, caps3, opts);
            if (!check(series_str(a) == series_str(b), detail, "(c) nhat=3 relabeling mismatch"))
                return false;
        }
    }
    // (d) eps^0 of theorem 10.3 equals theorem 10.2 with eta = 1
    {
        const long d = 0, dhat = 1;
        Caps caps{12, 4};
        RelationRing rr = make_relation_ring(1, d, 2, dhat, g, caps.degree_cap);
        auto one = GradedElement::constant(rr.ring, 1);
        TSeries base = pairing_thm_10_2(one, rr, 1, d, 2, dhat, g, caps);
        auto slices = pairing_thm_10_3({0}, {{}}, 1, d, 2, dhat, g, caps, 1);
        const EpsSlice* zero_slice = nullptr;
        for (const auto& s : slices)
            if (std::all_of(s.eps_exponents.begin(), s.eps_exponents.end(),
                            [](int e) { return e == 0; }))
                zero_slice = &s;
        if (!check(zero_slice != nullptr, detail, "(d) missing eps^0 slice")) return false;
        if (!check(series_str(zero_slice->value) == series_str(base), detail,
                   "(d) eps^0 != thm 10.2"))
            return false;
    }
    return true;
}

bool criterion10(std::string& detail) {
    for (int g : {2, 3})
        for (long n : {2L, 3L})
            for (long nhat = 1; nhat < n; ++nhat)
                for (long dhat : {1L, 2L, 3L}) {
                    long d = 1;
                    if (dhat * n <= d * nhat) continue;
                    ParabolicData pd;
                    pd.n = n;
                    pd.d = d;
                    pd.weights = {Rational(0)};
                    pd.mults = {n};
                    SubParabolicData sub{nhat, dhat, {nhat}};
                    if (!check(par_rank_formula(pd, sub, g) == virtual_rank(n, d, nhat, dhat, g),
                               detail, "par rank != virtual rank at m=1"))
                        return false;
                }
    for (long n : {2L, 3L}) {
        ParabolicData pd;
        pd.n = n;
        pd.d = 1;
        for (long k = 1; k <= n; ++k) {
            pd.weights.push_back(rational(k, n * n + k));
            pd.mults.push_back(1);
        }
        if (!check(good_data_check(pd).good, detail, "full flag data not good")) return false;
    }
    {
        ParabolicData pd;
        pd.n = 2;
        pd.d = 0;
        pd.weights = {Rational(0)};
        pd.mults = {2};
        auto rep = good_data_check(pd);
        if (!check(!rep.good, detail, "(2,0) reported good")) return false;
        bool witness = false;
        for (const auto& w : rep.witnesses)
            if (w.nhat == 1 && w.dhat == 0) witness = true;
        if (!check(witness, detail, "(2,0) witness (1,0) missing")) return false;
    }
    for (long n = 2; n <= 5; ++n) {
        std::vector<long> mults(n, 1);
        std::vector<int> J;
        std::function<bool(int)> rec = [&](int x) -> bool {
            if (x > n) {
                if (J.empty() || static_cast<long>(J.size()) >= n) return true;
                return weight_degree_count(J, mults) == 0;
            }
            if (!rec(x + 1)) return false;
            J.push_back(x);
            bool ok = rec(x + 1);
            J.pop_back();
            return ok;
        };
        if (!check(rec(1), detail, "weight_degree_count != 0 on full flags")) return false;
    }
    return true;
}

bool criterion11(std::string& detail) {
    auto rep = compare_closed_vs_moduli(2, 1, 2, 16);
    if (!check(rep.has_difference, detail, "no difference reported")) return false;
    std::ostringstream os;
    os << "closed-formula diagnostic (2,1,2): agree=" << (rep.agree ? "yes" : "no")
       << ", first differing coefficient at t^" << to_string(rep.first_diff_power)
       << " (closed " << to_string(rep.closed_value) << ", inductive "
       << to_string(rep.inductive_value) << ")";
    detail = os.str();  // informational; the criterion requires the report, not agreement
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string label;
        std::function<bool(std::string&)> fn;
    };
    std::vector<Criterion> criteria{
        {1, "Jacobian base case p_moduli(1,d,g) = (1+t)^2g", criterion1},
        {2, "rank-2 Betti numbers with brute-force stratum oracle", criterion2},
        {3, "structural Betti properties, n <= 3, g <= 4", criterion3},
        {4, "telescoping codimension identity, d_mu <= 20, n <= 4", criterion4},
        {5, "GRR/split two-path equality", criterion5},
        {6, "recurrence tail vanishes beyond degree 2 n nhat - 1", criterion6},
        {7, "line-bundle shift identity, delta in {1,2}", criterion7},
        {8, "relation windows and Mumford specialization", criterion8},
        {9, "residue engine: oracle, grading, Weyl invariance, eps^0", criterion9},
        {10, "parabolic rank/goodness/weight-count checks", criterion10},
        {11, "closed-formula diagnostic report", criterion11},
    };

    int failures = 0;
    for (auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << std::setw(2) << c.id << ": "
                  << c.label << " (" << std::fixed << std::setprecision(2) << sec << " s)";
        if (!detail.empty()) std::cout << "\n        " << detail;
        std::cout << "\n";
        if (!ok) ++failures;
    }
    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criteria FAILED")
              << "\n";
    return failures == 0 ? 0 : 1;
}

#include "bundlecoh/relgen.hpp"

#include <numeric>
#include <stdexcept>

namespace bundlecoh {

std::vector<SigmaClass> BundleGens::chern_classes() const {
    RingPtr R = a.at(0).ring();
    std::vector<GradedElement> ff;
    ff.push_back(GradedElement::constant(R, Rational(degree)));  // f_1 = degree
    for (const auto& x : f) ff.push_back(x);
    return assemble_universal_chern(a, b, ff, rank, genus);
}

SigmaClass BundleGens::character(int cap) const {
    RingPtr R = a.at(0).ring();
    auto chern = chern_classes();
    SigmaClass zero = SigmaClass::zero(R, genus);
    auto ch = chern_to_character(chern, zero, cap);
    SigmaClass total = SigmaClass::scalar(R, genus, Rational(rank));
    for (auto& c : ch) total += c;
    return total;
}

BundleLayout add_bundle_generators(std::vector<GeneratorSpec>& gens, const std::string& prefix,
                                   int rank, long degree, int genus) {
    BundleLayout L;
    L.rank = rank;
    L.degree = degree;
    for (int r = 1; r <= rank; ++r) {
        L.a_idx.push_back(static_cast<int>(gens.size()));
        gens.push_back(GeneratorSpec::even_gen(prefix + "a" + std::to_string(r), 2 * r));
    }
    for (int r = 1; r <= rank; ++r) {
        std::vector<int> row;
        for (int j = 1; j <= 2 * genus; ++j) {
            row.push_back(static_cast<int>(gens.size()));
            gens.push_back(GeneratorSpec::odd_gen(
                prefix + "b" + std::to_string(r) + "_" + std::to_string(j), 2 * r - 1));
        }
        L.b_idx.push_back(std::move(row));
    }
    for (int r = 2; r <= rank; ++r) {
        L.f_idx.push_back(static_cast<int>(gens.size()));
        gens.push_back(GeneratorSpec::even_gen(prefix + "f" + std::to_string(r), 2 * r - 2));
    }
    return L;
}

BundleGens bind_bundle(const RingPtr& ring, const BundleLayout& layout, int genus) {
    BundleGens B;
    B.rank = layout.rank;
    B.degree = layout.degree;
    B.genus = genus;
    for (int i : layout.a_idx) B.a.push_back(GradedElement::generator(ring, i));
    for (const auto& row : layout.b_idx) {
        std::vector<GradedElement> r;
        for (int i : row) r.push_back(GradedElement::generator(ring, i));
        B.b.push_back(std::move(r));
    }
    for (int i : layout.f_idx) B.f.push_back(GradedElement::generator(ring, i));
    return B;
}

RelationRing make_relation_ring(int n, long d, int nhat, long dhat, int g, int degree_cap) {
    std::vector<GeneratorSpec> gens;
    BundleLayout hatL = add_bundle_generators(gens, "h", nhat, dhat, g);
    int hat_count = static_cast<int>(gens.size());
    BundleLayout mainL = add_bundle_generators(gens, "", n, d, g);
    RelationRing rr;
    rr.ring = Ring::make(std::move(gens), degree_cap);
    rr.hat = bind_bundle(rr.ring, hatL, g);
    rr.main = bind_bundle(rr.ring, mainL, g);
    rr.hat_gen_count = hat_count;
    return rr;
}

long virtual_rank(long n, long d, long nhat, long dhat, int g) {
    if (dhat * n <= d * nhat)
        throw std::invalid_argument("virtual_rank: requires dhat/nhat > d/n");
    return n * nhat * (g - 1) - d * nhat + dhat * n;
}

IntRange relation_window(long n, long d, long nhat, long dhat, int g) {
    if (!(0 < nhat && nhat < n))
        throw std::invalid_argument("relation_window: requires 0 < nhat < n");
    if (!(dhat * n > d * nhat && dhat * n < (d + n) * nhat))
        throw std::invalid_argument("relation_window: requires d/n < dhat/nhat < d/n + 1");
    long lower = n * nhat * (g - 1) - d * nhat + dhat * n;
    long upper = n * nhat * (g + 1) - d * nhat + dhat * n;
    return IntRange{lower + 1, upper - 1};
}

TSeries grr_minus_pi(const BundleGens& main, const BundleGens& hat, const Caps& caps,
                     long twist_omega) {
    RingPtr R = main.a.at(0).ring();
    const int g = main.genus;
    if (caps.degree_cap > R->degree_cap())
        throw std::invalid_argument("grr_minus_pi: caps exceed the ring cap");
    if (2 * caps.t_cap > caps.degree_cap)
        throw CapError("grr_minus_pi: degree cap too small for requested t range", 2 * caps.t_cap,
                       caps.degree_cap / 2);

    // pi_* lowers total degree by 2: c_r needs the ch_{r+1} omega components
    SigmaClass ch_main = main.character(caps.t_cap + 1);
    SigmaClass ch_hat_dual = hat.character(caps.t_cap + 1).dual();
    if (twist_omega != 0) {
        // ch((hat V (x) L)^*) = ch(hat V^*) e^{-delta omega}
        SigmaClass tw = SigmaClass::scalar(R, g, 1);
        tw.comp(tw.omega_index()) = GradedElement::constant(R, Rational(-twist_omega));
        ch_hat_dual = ch_hat_dual * tw;
    }

    SigmaClass prod = ch_hat_dual * ch_main;
    SigmaClass factor = SigmaClass::scalar(R, g, -1);
    factor.comp(factor.omega_index()) = GradedElement::constant(R, Rational(g - 1));
    SigmaClass integrand = prod * factor;

    GradedElement chpush = integrand.pushforward();  // ch(-pi_!(hat V^* (x) V))

    std::vector<GradedElement> ch;
    for (int k = 1; k <= caps.t_cap; ++k) {
        if (!chpush.degree_part(2 * k - 1).is_zero())
            throw std::logic_error("grr_minus_pi: odd-degree character component");
        ch.push_back(chpush.degree_part(2 * k));
    }
    auto c = character_to_chern(ch, GradedElement::zero(R));
    TSeries out(GradedElement::zero(R), caps.t_cap);
    out.set_coeff(0, GradedElement::constant(R, 1));
    for (int r = 1; r <= caps.t_cap; ++r) out.set_coeff(r, c[r - 1]);
    return out;
}

TSeries omega_poly(const BundleGens& main, const BundleGens& hat, const Caps& caps) {
    RingPtr R = main.a.at(0).ring();
    const int cap = caps.t_cap;
    auto zero = GradedElement::zero(R);

    auto point_character = [&](const BundleGens& B, bool dualize) {
        // restriction over a point of Sigma: the Chern classes are the a-classes
        auto ch = chern_to_character(B.a, zero, cap);
        GradedElement total = GradedElement::constant(R, Rational(B.rank));
        for (std::size_t k = 0; k < ch.size(); ++k) {
            GradedElement c = ch[k];
            if (dualize && (k % 2 == 0)) c = -c;  // (-1)^{k+1} on the degree 2(k+1) part
            total += c;
        }
        return total;
    };

    GradedElement prod = point_character(hat, true) * point_character(main, false);
    std::vector<GradedElement> ch;
    for (int k = 1; k <= cap; ++k) ch.push_back(prod.degree_part(2 * k));
    auto c = character_to_chern(ch, zero);
    TSeries out(zero, cap);
    out.set_coeff(0, GradedElement::constant(R, 1));
    for (int r = 1; r <= cap; ++r) out.set_coeff(r, c[r - 1]);
    return out;
}

TSeries recurrence_residual(const BundleGens& main, const BundleGens& hat, const Caps& caps) {
    TSeries c = grr_minus_pi(main, hat, caps);
    TSeries om = omega_poly(main, hat, caps);
    const long nn = static_cast<long>(main.rank) * hat.rank;
    const int qdeg = static_cast<int>(2 * nn - 1);

    // Residual of Omega^2 c' modulo c without a full series inverse: the
    // division is only needed up to degree 2 n nhat - 1 (the putative Q), and
    // the tail is then read off from P - Q c by plain multiplication.
    TSeries P = om * om * c.ddt();
    TSeries Q(c.zero_elem(), qdeg);
    {
        TSeries clow = c.with_cap(qdeg);
        TSeries plow = P.with_cap(qdeg);
        TSeries Dlow = clow.reciprocal();
        Q = plow * Dlow;
    }
    TSeries resid = P - Q.with_cap(caps.t_cap) * c;
    TSeries tail(c.zero_elem(), caps.t_cap);
    for (int r = 0; r <= caps.t_cap; ++r) {
        if (r <= qdeg) {
            // by construction the low part vanishes; keep the check honest
            if (!resid.coeff(r).is_zero())
                throw std::logic_error("recurrence_residual: low-degree division failed");
            continue;
        }
        tail.set_coeff(r, resid.coeff(r));
    }
    return tail;
}

bool shift_identity_check(const BundleGens& main, const BundleGens& hat, long delta,
                          const Caps& caps) {
    if (delta < 0) throw std::invalid_argument("shift_identity_check: delta >= 0");
    TSeries lhs = grr_minus_pi(main, hat, caps, delta);
    TSeries base = grr_minus_pi(main, hat, caps);
    TSeries om = omega_poly(main, hat, caps);
    TSeries rhs = base * om.pow(static_cast<int>(delta));
    return lhs == rhs;
}

KunnethTable kunneth_components(const TSeries& c, int r, int hat_gen_count) {
    if (r > c.t_cap()) throw CapError("kunneth_components: r beyond cap", 2 * r, r);
    RingPtr R = c.zero_elem().ring();
    KunnethTable table{MonomialLex{R.get()}};
    std::vector<int> split_hat(R->size(), 0), split_main(R->size(), 0);
    for (const auto& [m, coef] : c.coeff(r).terms()) {
        auto exps = R->unpack(m);
        std::fill(split_hat.begin(), split_hat.end(), 0);
        std::fill(split_main.begin(), split_main.end(), 0);
        for (int i = 0; i < R->size(); ++i)
            (i < hat_gen_count ? split_hat[i] : split_main[i]) = exps[i];
        Monomial hm, mm;
        if (!R->pack(split_hat, hm) || !R->pack(split_main, mm))
            throw std::logic_error("kunneth_components: split over cap");
        auto it = table.find(hm);
        if (it == table.end()) it = table.emplace(hm, GradedElement::zero(R)).first;
        it->second.add_term(mm, coef);
    }
    for (auto it = table.begin(); it != table.end();)
        it = it->second.is_zero() ? table.erase(it) : std::next(it);
    return table;
}

GradedElement kunneth_reassemble(const RingPtr& ring, const KunnethTable& table) {
    GradedElement sum(ring);
    for (const auto& [hm, main_part] : table) {
        GradedElement hat_factor = GradedElement::monomial_term(ring, hm, 1);
        sum += hat_factor * main_part;
    }
    return sum;
}

Normalization normalization_coeffs(int n, long d, int g) {
    long M = d - static_cast<long>(n) * (g - 1);
    if (std::gcd(static_cast<long>(n), M) != 1)
        throw std::invalid_argument("normalization_coeffs: gcd(n, d - n(g-1)) must be 1");

    long u = 0, v = 0;
    if (M == 0) {
        u = 1;  // forces n = 1
        v = 0;
    } else {
        long old_r = n, r = M, old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            long q = old_r / r;
            long tmp;
            tmp = old_r - q * r; old_r = r; r = tmp;
            tmp = old_s - q * s; old_s = s; s = tmp;
            tmp = old_t - q * t; old_t = t; t = tmp;
        }
        if (old_r < 0) {
            old_s = -old_s;
            old_t = -old_t;
        }
        u = old_s;
        v = old_t;
        long base_k = -u / M;
        auto better = [&](long u2, long v2) {
            if (std::abs(u2) != std::abs(u)) return std::abs(u2) < std::abs(u);
            return v2 > v && std::abs(u2) == std::abs(u);
        };
        for (long k = base_k - 2; k <= base_k + 2; ++k) {
            long u2 = u + k * M;
            long v2 = v - k * n;
            if (better(u2, v2)) {
                u = u2;
                v = v2;
            }
        }
    }

    // relation element u a_1 + v c_1(pi_! V) in the (n, d) ring
    const int cap = 6;
    RelationRing rr = make_relation_ring(n, d, 1, 0, g, cap);
    BundleGens trivial;  // hat side with zero classes: ch(hat V^*) = 1
    trivial.rank = 1;
    trivial.degree = 0;
    trivial.genus = g;
    trivial.a.push_back(GradedElement::zero(rr.ring));
    trivial.b.push_back(std::vector<GradedElement>(2 * g, GradedElement::zero(rr.ring)));
    TSeries c_minus = grr_minus_pi(rr.main, trivial, Caps{cap, 2});
    GradedElement c1 = -c_minus.coeff(1);  // c_1(pi_! V) = ch_1(pi_! V)

    Normalization out;
    out.u = u;
    out.v = v;
    out.relation = rr.main.a[0] * Rational(u) + c1 * Rational(v);
    return out;
}

GradedElement euler_class(int nhat, long dhat, int n2, long d2, int g, const Caps& caps) {
    if (dhat * n2 <= d2 * nhat)
        throw std::invalid_argument("euler_class: requires dhat/nhat > d2/n2");
    long rank = virtual_rank(n2, d2, nhat, dhat, g);
    if (caps.t_cap < rank)
        throw CapError("euler_class: t_cap below the Euler degree", static_cast<int>(2 * rank),
                       static_cast<int>(rank));
    std::vector<GeneratorSpec> gens;
    BundleLayout hatL = add_bundle_generators(gens, "p", nhat, dhat, g);
    BundleLayout qL = add_bundle_generators(gens, "q", n2, d2, g);
    RingPtr R = Ring::make(std::move(gens), caps.degree_cap);
    BundleGens hat = bind_bundle(R, hatL, g);
    BundleGens quot = bind_bundle(R, qL, g);
    TSeries c = grr_minus_pi(quot, hat, caps);
    return c.coeff(static_cast<int>(rank));
}

}  // namespace bundlecoh

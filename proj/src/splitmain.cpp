#include <cctype>
#include <functional>
#include <stdexcept>

#include "bundlecoh/respair.hpp"

// Diagnostic evaluation of the split Chern polynomial from its closed product
// form, with the main side in fully split coordinates delta_1..delta_n and
// d delta_k / d a_i given by the Vandermonde closed form. Everything here is
// exact arithmetic in the localization at the Vandermonde determinant; the
// final answers must clear all denominators.

namespace bundlecoh {

namespace {

bool monomial_divides(const Ring& R, const Monomial& a, const Monomial& b) {
    for (int i = 0; i < R.size(); ++i)
        if (R.exponent(a, i) > R.exponent(b, i)) return false;
    return true;
}

Monomial monomial_quotient(const Ring& R, const Monomial& b, const Monomial& a) {
    auto eb = R.unpack(b);
    auto ea = R.unpack(a);
    for (int i = 0; i < R.size(); ++i) eb[i] -= ea[i];
    Monomial out;
    if (!R.pack(eb, out)) throw std::logic_error("monomial_quotient: over cap");
    return out;
}

// leading term in graded-lex order
std::pair<Monomial, Rational> leading_term(const GradedElement& x) {
    const Ring& R = *x.ring();
    const std::pair<Monomial, Rational>* best = nullptr;
    for (const auto& t : x.terms()) {
        if (!best || t.first.degree > best->first.degree ||
            (t.first.degree == best->first.degree && R.lex_less(t.first, best->first)))
            best = &t;
    }
    return {best->first, best->second};
}

// exact division x / divisor; false if not divisible
bool try_divide_exact(const GradedElement& x, const GradedElement& divisor, GradedElement& out) {
    const RingPtr& Rp = x.ring();
    const Ring& R = *Rp;
    if (x.is_zero()) {
        out = GradedElement::zero(Rp);
        return true;
    }
    auto [lm, lc] = leading_term(divisor);
    GradedElement rem = x;
    GradedElement quot(Rp);
    int guard = 0;
    while (!rem.is_zero()) {
        if (++guard > 200000) return false;
        auto [rm, rc] = leading_term(rem);
        if (!monomial_divides(R, lm, rm)) return false;
        Monomial qm = monomial_quotient(R, rm, lm);
        // Koszul: lead coefficient sign of qm * lm
        Monomial check;
        int sgn = R.mul(qm, lm, check);
        if (sgn == 0 || !(check == rm)) return false;
        Rational qc = rc / (lc * sgn);
        GradedElement qterm = GradedElement::monomial_term(Rp, qm, qc);
        quot += qterm;
        rem -= qterm * divisor;
    }
    out = quot;
    return true;
}

struct LocCtx {
    RingPtr ring;
    int n = 0;                      // number of deltas
    std::vector<int> delta_idx;     // generator indices
    GradedElement V;                // prod_{k<j} (delta_k - delta_j)
    std::vector<GradedElement> dV;  // partials of V w.r.t. each delta
};

struct Localized {
    const LocCtx* ctx = nullptr;
    GradedElement num;
    int vpow = 0;

    bool is_zero() const { return num.is_zero(); }

    Localized reduced() const {
        Localized r = *this;
        GradedElement q(ctx->ring);
        while (r.vpow > 0 && try_divide_exact(r.num, ctx->V, q)) {
            r.num = q;
            --r.vpow;
        }
        if (r.num.is_zero()) r.vpow = 0;
        return r;
    }

    Localized operator*(const Localized& o) const {
        return Localized{ctx, num * o.num, vpow + o.vpow}.reduced();
    }
    Localized operator*(const GradedElement& x) const { return {ctx, num * x, vpow}; }
    Localized operator*(const Rational& q) const { return {ctx, num * q, vpow}; }
    Localized operator-() const { return {ctx, -num, vpow}; }
    Localized& operator+=(const Localized& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) {
            *this = o;
            return *this;
        }
        int target = std::max(vpow, o.vpow);
        GradedElement a = num;
        for (int k = vpow; k < target; ++k) a = a * ctx->V;
        GradedElement b = o.num;
        for (int k = o.vpow; k < target; ++k) b = b * ctx->V;
        num = a + b;
        vpow = target;
        *this = reduced();
        return *this;
    }
    Localized& operator-=(const Localized& o) { return *this += -o; }
    friend Localized operator+(Localized a, const Localized& b) { return a += b; }
    friend Localized operator-(Localized a, const Localized& b) { return a -= b; }

    // partial derivative in delta_m via the quotient rule
    Localized ddelta(int m) const {
        int gi = ctx->delta_idx[m];
        GradedElement dn = num.partial_derivative(gi);
        if (vpow == 0) return Localized{ctx, dn, 0};
        GradedElement res = dn * ctx->V - ctx->dV[m] * num * Rational(vpow);
        return Localized{ctx, res, vpow + 1}.reduced();
    }
};

Localized loc_const(const LocCtx& ctx, const GradedElement& x) { return {&ctx, x, 0}; }

using LocSeries = TSeriesT<Localized>;

LocSeries loc_series_one(const LocCtx& ctx, int t_cap) {
    LocSeries s(Localized{&ctx, GradedElement::zero(ctx.ring), 0}, t_cap);
    s.set_coeff(0, loc_const(ctx, GradedElement::constant(ctx.ring, 1)));
    return s;
}

}  // namespace
}  // namespace bundlecoh

namespace bundlecoh {
template <>
inline TSeriesT<Localized> TSeriesT<Localized>::one_like(const TSeriesT<Localized>& model) {
    const LocCtx* ctx = model.zero_elem().ctx;
    return loc_series_one(*ctx, model.t_cap());
}
}  // namespace bundlecoh

namespace bundlecoh {

RingPtr make_split_main_ring(const SplitRelationRing& SR, int degree_cap) {
    std::vector<GeneratorSpec> gens;
    const int n = SR.main.rank;
    for (int k = 1; k <= n; ++k) gens.push_back(GeneratorSpec::even_gen("d" + std::to_string(k), 2));
    for (int i = 0; i < SR.ring->size(); ++i) {
        const auto& gspec = SR.ring->gen(i);
        // skip the unsplit main a-classes; everything else carries over
        bool is_main_a = gspec.name.size() >= 2 && gspec.name[0] == 'a' &&
                         std::isdigit(static_cast<unsigned char>(gspec.name[1]));
        if (is_main_a) continue;
        gens.push_back(gspec);
    }
    return Ring::make(std::move(gens), degree_cap, SR.ring->aux_cap());
}

TSeries to_split_main(const TSeries& s, const SplitRelationRing& SR, const RingPtr& split_main) {
    const int n = SR.main.rank;
    std::vector<GradedElement> deltas;
    for (int k = 1; k <= n; ++k)
        deltas.push_back(GradedElement::generator(split_main, "d" + std::to_string(k)));
    // a_r -> sigma_r(delta)
    std::vector<GradedElement> sigma(n + 1, GradedElement::constant(split_main, 1));
    {
        std::vector<GradedElement> e(n + 1, GradedElement::zero(split_main));
        e[0] = GradedElement::constant(split_main, 1);
        for (int k = 0; k < n; ++k)
            for (int r = std::min(k + 1, n); r >= 1; --r) e[r] += e[r - 1] * deltas[k];
        sigma = e;
    }
    std::vector<GradedElement> images;
    for (int i = 0; i < SR.ring->size(); ++i) {
        const auto& gspec = SR.ring->gen(i);
        bool is_main_a = gspec.name.size() >= 2 && gspec.name[0] == 'a' &&
                         std::isdigit(static_cast<unsigned char>(gspec.name[1]));
        if (is_main_a) {
            int r = std::stoi(gspec.name.substr(1));
            images.push_back(sigma[r]);
        } else {
            images.push_back(GradedElement::generator(split_main, gspec.name));
        }
    }
    TSeries out(GradedElement::zero(split_main), s.t_cap());
    for (int r = 0; r <= s.max_power(); ++r)
        out.set_coeff(r, s.coeff(r).substitute(split_main, images));
    return out;
}

TSeries split_chern_poly_diagnostic(const SplitRelationRing& SR, const Caps& caps) {
    const int n = SR.main.rank;
    const int nhat = SR.hat.nhat;
    const int g = SR.hat.g;
    if (n > 3) throw std::invalid_argument("split_chern_poly_diagnostic: n <= 3 supported");

    // headroom for cleared Vandermonde powers
    int slack = (n <= 1) ? 0 : 2 * n * (n - 1) * (3 * caps.t_cap + 6);
    RingPtr Rm = make_split_main_ring(SR, caps.degree_cap + slack);

    LocCtx ctx;
    ctx.ring = Rm;
    ctx.n = n;
    for (int k = 1; k <= n; ++k) ctx.delta_idx.push_back(Rm->find("d" + std::to_string(k)));
    ctx.V = GradedElement::constant(Rm, 1);
    for (int k = 0; k < n; ++k)
        for (int j = k + 1; j < n; ++j)
            ctx.V = ctx.V * (GradedElement::generator(Rm, ctx.delta_idx[k]) -
                             GradedElement::generator(Rm, ctx.delta_idx[j]));
    for (int m = 0; m < n; ++m) ctx.dV.push_back(ctx.V.partial_derivative(ctx.delta_idx[m]));

    auto delta = [&](int k) { return GradedElement::generator(Rm, ctx.delta_idx[k]); };

    // D[k][i] = d delta_k / d a_i = (-1)^{i-1} delta_k^{n-i} / prod_{j!=k}(delta_k - delta_j)
    std::vector<std::vector<Localized>> D(n, std::vector<Localized>(n));
    for (int k = 0; k < n; ++k) {
        // 1 / prod_{j != k}(delta_k - delta_j) = (-1)^k prod_{pairs w/o k} / V   (k 0-based)
        GradedElement pairs_wo_k = GradedElement::constant(Rm, 1);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                if (a == k || b == k) continue;
                pairs_wo_k = pairs_wo_k * (delta(a) - delta(b));
            }
        for (int i = 1; i <= n; ++i) {
            GradedElement numtail = delta(k).pow(n - i);
            Rational sign((i - 1) % 2 ? -1 : 1);
            sign *= (k % 2) ? -1 : 1;
            D[k][i - 1] = Localized{&ctx, numtail * pairs_wo_k * sign, n > 1 ? 1 : 0}.reduced();
        }
    }

    // second derivatives via the chain rule through the deltas
    std::vector<std::vector<std::vector<Localized>>> D2(
        n, std::vector<std::vector<Localized>>(n, std::vector<Localized>(n)));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Localized acc = loc_const(ctx, GradedElement::zero(Rm));
                for (int m = 0; m < n; ++m) acc += D[k][i].ddelta(m) * D[m][j];
                D2[k][i][j] = acc;
            }

    // main-side data in the split ring
    auto gen_by_name = [&](const std::string& nm) { return GradedElement::generator(Rm, nm); };
    std::vector<GradedElement> f(n + 1, GradedElement::zero(Rm));
    f[1] = GradedElement::constant(Rm, Rational(SR.main.degree));
    for (int r = 2; r <= n; ++r) f[r] = gen_by_name("f" + std::to_string(r));
    auto b_main = [&](int i, int s) {
        return gen_by_name("b" + std::to_string(i) + "_" + std::to_string(s));
    };

    // W_k = sum_i f_i D_ki - sum_{s<=g} sum_{i,j} b_i^s b_j^{s+g} d2 delta_k
    std::vector<Localized> W(n);
    for (int k = 0; k < n; ++k) {
        Localized acc = loc_const(ctx, GradedElement::zero(Rm));
        for (int i = 1; i <= n; ++i) acc += D[k][i - 1] * f[i];
        for (int s = 1; s <= g; ++s)
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    acc -= D2[k][i - 1][j - 1] * (b_main(i, s) * b_main(j, s + g));
        W[k] = acc;
    }

    const int tcap = caps.t_cap;
    LocSeries product = loc_series_one(ctx, tcap);

    for (int l = 0; l < nhat; ++l) {
        GradedElement Xl = gen_by_name("X" + std::to_string(l + 1));
        auto zeta = [&](int s) {
            return gen_by_name("z" + std::to_string(l + 1) + "_" + std::to_string(s));
        };
        for (int k = 0; k < n; ++k) {
            GradedElement gamma = delta(k) - Xl;
            // (1 + gamma t)^{g-1+dhat_l}
            long e = g - 1 + SR.hat.degrees[l];
            LocSeries lin = loc_series_one(ctx, tcap);
            lin.set_coeff(1, loc_const(ctx, gamma));
            LocSeries geo(Localized{&ctx, GradedElement::zero(Rm), 0}, tcap);
            {
                GradedElement p = GradedElement::constant(Rm, 1);
                for (int r = 0; r <= tcap; ++r) {
                    geo.set_coeff(r, loc_const(ctx, (r % 2) ? -p : p));
                    p = p * gamma;
                }
            }
            LocSeries base = (e >= 0) ? lin.pow(static_cast<int>(e))
                                      : geo.pow(static_cast<int>(-e));
            // exp(-W_k log(1 + gamma t))
            LocSeries lg(Localized{&ctx, GradedElement::zero(Rm), 0}, tcap);
            {
                GradedElement p = gamma;
                for (int r = 1; r <= tcap; ++r) {
                    Rational c(1, r);
                    if (r % 2 == 0) c = -c;
                    lg.set_coeff(r, loc_const(ctx, p * c));
                    p = p * gamma;
                }
            }
            LocSeries wterm = exp_series(lg * (-W[k]));

            // Xi^{(k,l)} = sum_s (sum_i b_i^s D_ki - zeta^{s,l})(sum_j b_j^{s+g} D_kj - zeta^{s+g,l})
            Localized Xi = loc_const(ctx, GradedElement::zero(Rm));
            for (int s = 1; s <= g; ++s) {
                Localized u = loc_const(ctx, -zeta(s));
                Localized v = loc_const(ctx, -zeta(s + g));
                for (int i = 1; i <= n; ++i) {
                    u += D[k][i - 1] * b_main(i, s);
                    v += D[k][i - 1] * b_main(i, s + g);
                }
                Xi += u * v;
            }
            // exp(+ Xi t / (1 + gamma t))
            LocSeries tgeo(Localized{&ctx, GradedElement::zero(Rm), 0}, tcap);
            {
                GradedElement p = GradedElement::constant(Rm, 1);
                for (int r = 1; r <= tcap; ++r) {
                    tgeo.set_coeff(r, loc_const(ctx, (r % 2) ? p : -p));
                    p = p * gamma;
                }
            }
            LocSeries xiterm = exp_series(tgeo * Xi);

            product = product * base * wterm * xiterm;
        }
    }

    TSeries out(GradedElement::zero(Rm), tcap);
    for (int r = 0; r <= tcap; ++r) {
        Localized c = product.coeff(r).reduced();
        if (c.vpow != 0)
            throw std::logic_error(
                "split_chern_poly_diagnostic: Vandermonde denominator failed to clear");
        out.set_coeff(r, c.num);
    }
    return out;
}

bool vandermonde_jacobian_check(int n) {
    // ring with just delta_1..delta_n
    std::vector<GeneratorSpec> gens;
    for (int k = 1; k <= n; ++k) gens.push_back(GeneratorSpec::even_gen("d" + std::to_string(k), 2));
    RingPtr Rm = Ring::make(std::move(gens), 4 * n * n + 8);

    LocCtx ctx;
    ctx.ring = Rm;
    ctx.n = n;
    for (int k = 0; k < n; ++k) ctx.delta_idx.push_back(k);
    ctx.V = GradedElement::constant(Rm, 1);
    auto delta = [&](int k) { return GradedElement::generator(Rm, k); };
    for (int k = 0; k < n; ++k)
        for (int j = k + 1; j < n; ++j) ctx.V = ctx.V * (delta(k) - delta(j));
    for (int m = 0; m < n; ++m) ctx.dV.push_back(ctx.V.partial_derivative(m));

    // sigma_i and their delta-partials
    std::vector<GradedElement> e(n + 1, GradedElement::zero(Rm));
    e[0] = GradedElement::constant(Rm, 1);
    for (int k = 0; k < n; ++k)
        for (int r = std::min(k + 1, n); r >= 1; --r) e[r] += e[r - 1] * delta(k);

    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            Localized acc = loc_const(ctx, GradedElement::zero(Rm));
            for (int k = 0; k < n; ++k) {
                // d delta_k / d a_j closed form
                GradedElement pairs_wo_k = GradedElement::constant(Rm, 1);
                for (int a = 0; a < n; ++a)
                    for (int b = a + 1; b < n; ++b) {
                        if (a == k || b == k) continue;
                        pairs_wo_k = pairs_wo_k * (delta(a) - delta(b));
                    }
                Rational sign((j - 1) % 2 ? -1 : 1);
                sign *= (k % 2) ? -1 : 1;
                Localized Dkj{&ctx, delta(k).pow(n - j) * pairs_wo_k * sign, n > 1 ? 1 : 0};
                acc += Dkj.reduced() * e[i].partial_derivative(k);
            }
            acc = acc.reduced();
            bool expect_one = (i == j);
            if (expect_one) {
                if (!(acc.vpow == 0 && acc.num == GradedElement::constant(Rm, 1))) return false;
            } else {
                if (!acc.is_zero()) return false;
            }
        }
    return true;
}

}  // namespace bundlecoh

#include "bundlecoh/respair.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace bundlecoh {

// ---------------------------------------------------------------------------
// split ring construction
// ---------------------------------------------------------------------------

BundleGens SplitRelationRing::block_bundle(int l) const {
    BundleGens B;
    B.rank = 1;
    B.degree = hat.degrees[l];
    B.genus = hat.g;
    B.a.push_back(GradedElement::generator(ring, hat.a_idx[l]));
    std::vector<GradedElement> row;
    for (int s = 0; s < 2 * hat.g; ++s)
        row.push_back(GradedElement::generator(ring, hat.zeta_idx[l][s]));
    B.b.push_back(std::move(row));
    return B;
}

SplitRelationRing make_split_ring(int n, long d, int nhat, std::vector<long> degrees, int g,
                                  int degree_cap, int eps_order) {
    if (static_cast<int>(degrees.size()) != nhat)
        throw std::invalid_argument("make_split_ring: degrees size mismatch");
    std::vector<GeneratorSpec> gens;
    SplitBlocks hat;
    hat.nhat = nhat;
    hat.g = g;
    hat.degrees = degrees;
    for (int l = 0; l < nhat; ++l) {
        hat.a_idx.push_back(static_cast<int>(gens.size()));
        gens.push_back(GeneratorSpec::even_gen("X" + std::to_string(l + 1), 2));
    }
    BundleLayout mainL = add_bundle_generators(gens, "", n, d, g);
    if (eps_order > 0)
        for (int r = 2; r <= nhat; ++r)
            gens.push_back(GeneratorSpec::formal("eps" + std::to_string(r)));
    // zeta generators last: Berezin extraction then needs no reordering signs
    for (int l = 0; l < nhat; ++l) {
        std::vector<int> row;
        for (int s = 1; s <= 2 * g; ++s) {
            row.push_back(static_cast<int>(gens.size()));
            gens.push_back(
                GeneratorSpec::odd_gen("z" + std::to_string(l + 1) + "_" + std::to_string(s), 1));
        }
        hat.zeta_idx.push_back(std::move(row));
    }
    SplitRelationRing SR;
    SR.ring = Ring::make(std::move(gens), degree_cap, std::max(eps_order, 0));
    SR.hat = hat;
    SR.main = bind_bundle(SR.ring, mainL, g);
    return SR;
}

// ---------------------------------------------------------------------------
// torus restriction
// ---------------------------------------------------------------------------

std::vector<GradedElement> torus_restriction_images(const RelationRing& src,
                                                    const SplitRelationRing& dst) {
    const int g = dst.hat.g;
    const int nhat = dst.hat.nhat;
    if (src.hat.rank != nhat)
        throw std::invalid_argument("torus_restriction_images: rank mismatch");

    // P(t) = prod_l (1 + c_1(hat V_l) t); its coefficients are the images of
    // the unsplit Chern data
    std::vector<SigmaClass> P{SigmaClass::scalar(dst.ring, g, 1)};
    for (int l = 0; l < nhat; ++l) {
        BundleGens bl = dst.block_bundle(l);
        SigmaClass c1 = bl.chern_classes().at(0);
        std::vector<SigmaClass> next(P.size() + 1, SigmaClass::zero(dst.ring, g));
        for (std::size_t r = 0; r < P.size(); ++r) {
            next[r] += P[r];
            next[r + 1] += P[r] * c1;
        }
        P = std::move(next);
    }

    std::vector<GradedElement> images(src.ring->size(), GradedElement::zero(dst.ring));
    for (int i = 0; i < src.ring->size(); ++i) {
        const std::string& name = src.ring->gen(i).name;
        if (i >= src.hat_gen_count) {
            int j = dst.ring->find(name);
            if (j < 0) throw std::logic_error("torus_restriction_images: missing main generator");
            images[i] = GradedElement::generator(dst.ring, j);
            continue;
        }
        // hat generator names: h a<r>, h b<r>_<j>, h f<r>
        std::string rest = name.substr(1);
        char kind = rest[0];
        rest = rest.substr(1);
        int r = 0, j = 0;
        auto us = rest.find('_');
        if (us == std::string::npos) {
            r = std::stoi(rest);
        } else {
            r = std::stoi(rest.substr(0, us));
            j = std::stoi(rest.substr(us + 1));
        }
        const SigmaClass& cr = P.at(r);
        if (kind == 'a')
            images[i] = cr.comp(0);
        else if (kind == 'b')
            images[i] = cr.comp(j);
        else if (kind == 'f')
            images[i] = cr.comp(cr.omega_index());
        else
            throw std::logic_error("torus_restriction_images: unknown hat generator " + name);
    }
    return images;
}

GradedElement torus_restrict_hat(const GradedElement& x, const RelationRing& src,
                                 const SplitRelationRing& dst) {
    return x.substitute(dst.ring, torus_restriction_images(src, dst));
}

TSeries torus_restrict_hat(const TSeries& s, const RelationRing& src,
                           const SplitRelationRing& dst) {
    auto images = torus_restriction_images(src, dst);
    TSeries out(GradedElement::zero(dst.ring), s.t_cap());
    for (int r = 0; r <= s.max_power(); ++r)
        out.set_coeff(r, s.coeff(r).substitute(dst.ring, images));
    return out;
}

TSeries split_chern_poly(const SplitRelationRing& SR, const Caps& caps) {
    TSeries prod(GradedElement::zero(SR.ring), caps.t_cap);
    prod.set_coeff(0, GradedElement::constant(SR.ring, 1));
    for (int l = 0; l < SR.hat.nhat; ++l)
        prod = prod * grr_minus_pi(SR.main, SR.block_bundle(l), caps);
    return prod;
}

// ---------------------------------------------------------------------------
// fundamental domain
// ---------------------------------------------------------------------------

WeightVector fundamental_domain(const WeightVector& gamma) {
    const int nhat = static_cast<int>(gamma.size());
    const int m = nhat - 1;
    if (m == 0) return WeightVector{Rational(0)};
    Rational sum(0);
    for (auto& x : gamma) sum += x;
    if (sum != 0) throw std::invalid_argument("fundamental_domain: coordinates must sum to zero");

    // simple-root coordinates; solve the Cartan system C s = Y exactly
    std::vector<Rational> Y(m);
    for (int a = 0; a < m; ++a) Y[a] = gamma[a] - gamma[a + 1];
    std::vector<std::vector<Rational>> A(m, std::vector<Rational>(m + 1, Rational(0)));
    for (int i = 0; i < m; ++i) {
        A[i][i] = 2;
        if (i > 0) A[i][i - 1] = -1;
        if (i + 1 < m) A[i][i + 1] = -1;
        A[i][m] = Y[i];
    }
    for (int col = 0; col < m; ++col) {
        int piv = col;
        while (piv < m && A[piv][col] == 0) ++piv;
        if (piv == m) throw std::logic_error("fundamental_domain: singular system");
        std::swap(A[piv], A[col]);
        for (int row = 0; row < m; ++row) {
            if (row == col || A[row][col] == 0) continue;
            Rational f = A[row][col] / A[col][col];
            for (int k = col; k <= m; ++k) A[row][k] -= f * A[col][k];
        }
    }
    WeightVector out(nhat, Rational(0));
    for (int a = 0; a < m; ++a) {
        Rational fa = frac_part(A[a][m] / A[a][a]);
        out[a] += fa;
        out[a + 1] -= fa;
    }
    return out;
}

WeightVector hat_weight_vector(int nhat, long dhat) {
    WeightVector raw(nhat, rational(dhat, nhat));
    raw[nhat - 1] -= Rational(dhat);
    return fundamental_domain(raw);
}

// ---------------------------------------------------------------------------
// Berezin integral
// ---------------------------------------------------------------------------

GradedElement berezin_integral(const GradedElement& x, const SplitBlocks& hat, int orientation) {
    const RingPtr& R = x.ring();
    const int g = hat.g;
    Monomial top = R->unit();
    std::uint64_t zeta_mask = 0;
    for (const auto& row : hat.zeta_idx)
        for (int idx : row) {
            Monomial gm = R->generator_monomial(idx);
            zeta_mask |= gm.odd;
            Monomial out;
            if (R->mul(top, gm, out) == 0) throw std::logic_error("berezin: top monomial over cap");
            top = out;
        }

    // calibration: exp(sum_l sum_{s<=g} zeta^{s,l} zeta^{s+g,l}) integrates to
    // nhat^g; sigma is the reordering sign of the model top product
    int sigma = 1;
    {
        Monomial acc = R->unit();
        for (const auto& row : hat.zeta_idx)
            for (int s = 0; s < g; ++s) {
                Monomial pair_m, out;
                int s1 =
                    R->mul(R->generator_monomial(row[s]), R->generator_monomial(row[s + g]), pair_m);
                int s2 = R->mul(acc, pair_m, out);
                if (s1 == 0 || s2 == 0) throw std::logic_error("berezin: calibration over cap");
                sigma *= s1 * s2;
                acc = out;
            }
        if (!(acc == top)) throw std::logic_error("berezin: calibration monomial mismatch");
    }

    Int pw(1);
    for (int k = 0; k < g; ++k) pw *= hat.nhat;
    Rational scale{pw};
    scale *= sigma * orientation;

    GradedElement out(R);
    for (const auto& [m, c] : x.terms()) {
        if ((m.odd & zeta_mask) != zeta_mask) continue;
        Monomial rest = m;
        rest.odd &= ~zeta_mask;
        rest.degree -= top.degree;
        // stored canonical form = sign * (rest * top)
        int sign = koszul_merge_sign(rest.odd, zeta_mask);
        out.add_term(rest, c * scale * sign);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Laurent series
// ---------------------------------------------------------------------------

LaurentSeries::LaurentSeries(std::vector<int> lo, std::vector<int> hi, TSeries zero)
    : lo_(std::move(lo)), hi_(std::move(hi)), zero_(std::move(zero)) {}

LaurentSeries LaurentSeries::constant(const std::vector<int>& lo, const std::vector<int>& hi,
                                      TSeries value) {
    LaurentSeries L(lo, hi, value * Rational(0));
    L.add_to(std::vector<int>(lo.size(), 0), value);
    return L;
}

bool LaurentSeries::is_zero() const {
    for (const auto& [e, v] : terms_)
        if (!v.is_zero()) return false;
    return true;
}

TSeries LaurentSeries::coeff(const std::vector<int>& yexp) const {
    auto it = terms_.find(yexp);
    return it == terms_.end() ? zero_ : it->second;
}

void LaurentSeries::add_to(const std::vector<int>& yexp, const TSeries& v) {
    if (v.is_zero()) return;
    for (int a = 0; a < nvars(); ++a)
        if (yexp[a] < lo_[a] || yexp[a] > hi_[a]) return;  // outside the pole/degree budget
    auto it = terms_.find(yexp);
    if (it == terms_.end())
        terms_.emplace(yexp, v);
    else
        it->second += v;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
    for (const auto& [e, v] : o.terms_) add_to(e, v);
    return *this;
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    LaurentSeries r(lo_, hi_, zero_);
    std::vector<int> e(nvars());
    for (const auto& [e1, v1] : terms_) {
        if (v1.is_zero()) continue;
        for (const auto& [e2, v2] : o.terms_) {
            if (v2.is_zero()) continue;
            bool ok = true;
            for (int a = 0; a < nvars(); ++a) {
                e[a] = e1[a] + e2[a];
                if (e[a] < lo_[a] || e[a] > hi_[a]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            TSeries prod = v1 * v2;
            if (!prod.is_zero()) r.add_to(e, prod);
        }
    }
    return r;
}

LaurentSeries LaurentSeries::operator*(const Rational& q) const {
    LaurentSeries r(lo_, hi_, zero_);
    for (const auto& [e, v] : terms_) r.add_to(e, v * q);
    return r;
}

LaurentSeries LaurentSeries::operator-() const { return *this * Rational(-1); }

LaurentSeries LaurentSeries::exp_nilpotent(int iter_bound) const {
    LaurentSeries one = LaurentSeries::constant(lo_, hi_, TSeries::one_like(zero_));
    LaurentSeries r = one;
    LaurentSeries inc = one;
    for (int k = 1; k <= iter_bound; ++k) {
        inc = inc * *this;
        inc = inc * Rational(1, k);
        if (inc.is_zero()) break;
        r += inc;
    }
    return r;
}

LaurentSeries LaurentSeries::linear_form_pow(const std::vector<Rational>& coeffs, int e,
                                             const std::vector<int>& lo,
                                             const std::vector<int>& hi, const TSeries& one) {
    LaurentSeries base(lo, hi, one * Rational(0));
    for (std::size_t a = 0; a < coeffs.size(); ++a) {
        if (coeffs[a] == 0) continue;
        std::vector<int> ex(lo.size(), 0);
        ex[a] = 1;
        base.add_to(ex, one * coeffs[a]);
    }
    LaurentSeries r = LaurentSeries::constant(lo, hi, one);
    for (int k = 0; k < e; ++k) r = r * base;
    return r;
}

LaurentSeries LaurentSeries::linear_form_inverse_pow(const std::vector<Rational>& coeffs, int p,
                                                     const std::vector<int>& lo,
                                                     const std::vector<int>& hi,
                                                     const TSeries& one) {
    const int m = static_cast<int>(coeffs.size());
    int k = 0;
    while (k < m && coeffs[k] == 0) ++k;
    if (k == m) throw std::invalid_argument("linear_form_inverse_pow: zero form");
    if (p == 0) return LaurentSeries::constant(lo, hi, one);
    // (c_k Y_k)^{-p} (1+u)^{-p}, u = sum_{j>k} (c_j/c_k) Y_j / Y_k: the
    // lower-index variable dominates the expansion
    LaurentSeries u(lo, hi, one * Rational(0));
    for (int j = k + 1; j < m; ++j) {
        if (coeffs[j] == 0) continue;
        std::vector<int> ex(m, 0);
        ex[j] = 1;
        ex[k] = -1;
        u.add_to(ex, one * (coeffs[j] / coeffs[k]));
    }
    LaurentSeries r(lo, hi, one * Rational(0));
    LaurentSeries upow = LaurentSeries::constant(lo, hi, one);
    Rational binom(1);
    for (int j = 0;; ++j) {
        r += upow * binom;
        if (-p - (j + 1) < lo[k]) break;
        binom *= Rational(-(p + j), j + 1);
        upow = upow * u;
        if (upow.is_zero()) break;
    }
    LaurentSeries shift(lo, hi, one * Rational(0));
    std::vector<int> ex(m, 0);
    ex[k] = -p;
    Rational cs(1);
    for (int j = 0; j < p; ++j) cs /= coeffs[k];
    shift.add_to(ex, one * cs);
    return r * shift;
}

LaurentSeries LaurentSeries::residue_last() const {
    const int m = nvars();
    if (m == 0) throw std::logic_error("residue_last: no variables");
    std::vector<int> lo2(lo_.begin(), lo_.end() - 1), hi2(hi_.begin(), hi_.end() - 1);
    LaurentSeries r(lo2, hi2, zero_);
    for (const auto& [e, v] : terms_) {
        if (e[m - 1] != -1) continue;
        std::vector<int> e2(e.begin(), e.end() - 1);
        r.add_to(e2, v);
    }
    return r;
}

TSeries iterated_residue(const LaurentSeries& e) {
    LaurentSeries cur = e;
    for (int v = e.nvars(); v > 0; --v) cur = cur.residue_last();
    return cur.coeff(std::vector<int>{});
}

std::vector<std::vector<Rational>> x_in_y_coordinates(int nhat) {
    std::vector<std::vector<Rational>> xc(nhat, std::vector<Rational>(nhat - 1, Rational(0)));
    for (int l = 1; l <= nhat; ++l)
        for (int a = 1; a <= nhat - 1; ++a)
            xc[l - 1][a - 1] = (a >= l) ? rational(nhat - a, nhat) : rational(-a, nhat);
    return xc;
}

LaurentSeries substitute_hat_coordinates(const TSeries& s, const SplitRelationRing& SR,
                                         const std::vector<int>& slot_blocks,
                                         const std::vector<std::vector<Rational>>& xcoef,
                                         const std::vector<int>& lo, const std::vector<int>& hi) {
    const RingPtr& R = SR.ring;
    const int nhat = SR.hat.nhat;
    std::vector<int> slot_of_block(nhat, -1);
    for (int l = 0; l < nhat; ++l) slot_of_block[slot_blocks[l]] = l;

    TSeries zero_ts(GradedElement::zero(R), s.t_cap());
    LaurentSeries out(lo, hi, zero_ts);

    for (int r = 0; r <= s.max_power(); ++r) {
        for (const auto& [m, c] : s.coeff(r).terms()) {
            std::vector<int> hat_exp(nhat, 0);
            Monomial rest = m;
            for (int bidx = 0; bidx < nhat; ++bidx) {
                int gi = SR.hat.a_idx[bidx];
                int e = R->exponent(m, gi);
                hat_exp[bidx] = e;
                for (int k = 0; k < e; ++k) {
                    Monomial tmp;
                    R->divide_by_gen(rest, gi, tmp);
                    rest = tmp;
                }
            }
            std::map<std::vector<int>, Rational> ypoly{{std::vector<int>(lo.size(), 0), c}};
            for (int bidx = 0; bidx < nhat; ++bidx) {
                const auto& cf = xcoef[slot_of_block[bidx]];
                for (int k = 0; k < hat_exp[bidx]; ++k) {
                    std::map<std::vector<int>, Rational> next;
                    for (const auto& [ye, q] : ypoly)
                        for (std::size_t a = 0; a < cf.size(); ++a) {
                            if (cf[a] == 0) continue;
                            auto ye2 = ye;
                            ye2[a] += 1;
                            next[ye2] += q * cf[a];
                        }
                    ypoly = std::move(next);
                }
            }
            for (const auto& [ye, q] : ypoly) {
                if (q == 0) continue;
                TSeries v(GradedElement::zero(R), s.t_cap());
                v.set_coeff(r, GradedElement::monomial_term(R, rest, q));
                out.add_to(ye, v);
            }
        }
    }
    return out;
}

namespace {

// (1 - t X) for X given by rational Y-coefficients
LaurentSeries one_minus_tx(const std::vector<Rational>& xc, const std::vector<int>& lo,
                           const std::vector<int>& hi, const TSeries& one_ts, const RingPtr& R) {
    LaurentSeries r = LaurentSeries::constant(lo, hi, one_ts);
    for (std::size_t a = 0; a < xc.size(); ++a) {
        if (xc[a] == 0) continue;
        std::vector<int> ex(lo.size(), 0);
        ex[a] = 1;
        TSeries v(GradedElement::zero(R), one_ts.t_cap());
        v.set_coeff(1, GradedElement::constant(R, -xc[a]));
        r.add_to(ex, v);
    }
    return r;
}

struct DenomPieces {
    LaurentSeries B;     // prod_k (1 + (delta_k - X_l) t)
    LaurentSeries A;     // prod_k (1 + (delta_k - X_{l+1}) t)
    LaurentSeries geom;  // sum_m (-b_l / n)^m
    LaurentSeries yinv;  // (n Y_l)^{-1}
};

DenomPieces denominator_pieces(const SplitRelationRing& SR, int l,
                               const std::vector<std::vector<Rational>>& xcoef,
                               const std::vector<int>& lo, const std::vector<int>& hi, int t_cap,
                               int geom_order) {
    const RingPtr& R = SR.ring;
    const int n = SR.main.rank;
    TSeries one_ts(GradedElement::zero(R), t_cap);
    one_ts.set_coeff(0, GradedElement::constant(R, 1));
    LaurentSeries one = LaurentSeries::constant(lo, hi, one_ts);

    auto a_term = [&](int j) {  // a_j t^j, a_0 = 1
        TSeries v(GradedElement::zero(R), t_cap);
        v.set_coeff(j, j == 0 ? GradedElement::constant(R, 1) : SR.main.a[j - 1]);
        return LaurentSeries::constant(lo, hi, v);
    };

    LaurentSeries ml = one_minus_tx(xcoef[l], lo, hi, one_ts, R);
    LaurentSeries ml1 = one_minus_tx(xcoef[l + 1], lo, hi, one_ts, R);

    std::vector<LaurentSeries> pl{one}, pl1{one};
    for (int i = 1; i <= n; ++i) {
        pl.push_back(pl.back() * ml);
        pl1.push_back(pl1.back() * ml1);
    }

    LaurentSeries B(lo, hi, one_ts * Rational(0));
    LaurentSeries A(lo, hi, one_ts * Rational(0));
    for (int j = 0; j <= n; ++j) {
        B += a_term(j) * pl[n - j];
        A += a_term(j) * pl1[n - j];
    }

    // b_l per the iterated-residue expansion of the degree-shift factor:
    // prod(1+(d-X_{l+1})t) - prod(1+(d-X_l)t) = t Y_l (n + b_l); the constant
    // n comes entirely from the a_0 part, so only the j = 0 summands carry
    // the "- 1"
    LaurentSeries bl(lo, hi, one_ts * Rational(0));
    for (int j = 0; j <= n - 1; ++j) {
        LaurentSeries inner(lo, hi, one_ts * Rational(0));
        for (int i = 0; i <= n - j - 1; ++i) {
            inner += pl1[i] * pl[n - j - i - 1];
            if (j == 0) inner += -one;
        }
        bl += a_term(j) * inner;
    }

    LaurentSeries geom = one;
    LaurentSeries term = one;
    for (int m = 1; m <= geom_order; ++m) {
        term = term * bl * Rational(-1, n);
        if (term.is_zero()) break;
        geom += term;
    }

    LaurentSeries yinv(lo, hi, one_ts * Rational(0));
    std::vector<int> ex(lo.size(), 0);
    ex[l] = -1;
    yinv.add_to(ex, one_ts * Rational(1, n));

    return DenomPieces{std::move(B), std::move(A), std::move(geom), std::move(yinv)};
}

}  // namespace

LaurentSeries denominator_expand(const SplitRelationRing& SR, int l,
                                 const std::vector<int>& slot_blocks,
                                 const std::vector<std::vector<Rational>>& xcoef,
                                 const std::vector<int>& lo, const std::vector<int>& hi, int t_cap,
                                 int geom_order) {
    (void)slot_blocks;  // the X's here are slot coordinates already
    auto P = denominator_pieces(SR, l, xcoef, lo, hi, t_cap, geom_order);
    return P.B * P.geom * P.yinv;
}

bool denominator_reciprocal_check(const SplitRelationRing& SR, int l, int t_cap) {
    const int m = SR.hat.nhat - 1;
    // the multiply-back product needs Y headroom for every retained t power
    std::vector<int> lo(m, -4), hi(m, (2 + SR.main.rank) * t_cap + SR.main.rank + 6);
    auto xcoef = x_in_y_coordinates(SR.hat.nhat);
    auto P = denominator_pieces(SR, l, xcoef, lo, hi, t_cap, t_cap);
    LaurentSeries factor = P.B * P.geom * P.yinv;  // t (prod R - 1)^{-1}
    // original factor: prod R - 1 = (A - B) / B, so factor * (A - B) = t B
    LaurentSeries lhs = factor * (P.A + (-P.B));
    TSeries t_unit(GradedElement::zero(SR.ring), t_cap);
    t_unit.set_coeff(1, GradedElement::constant(SR.ring, 1));
    LaurentSeries rhs = P.B * LaurentSeries::constant(lo, hi, t_unit);
    LaurentSeries diff = lhs + (-rhs);
    return diff.is_zero();
}

// ---------------------------------------------------------------------------
// pairings
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<int>> weyl_first_coords(int nhat) {
    std::vector<int> base;
    for (int i = 0; i + 1 < nhat; ++i) base.push_back(i);
    std::vector<std::vector<int>> out;
    if (base.empty()) {
        out.push_back({});
        return out;
    }
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

struct PairingContext {
    int n;
    long d;
    int nhat;
    long dhat;
    int g;
    Caps caps;
    PairingOptions opts;
    int eps_order = 0;

    SplitRelationRing SR;
    std::vector<int> slot_blocks;
    std::vector<std::vector<Rational>> xcoef;
    std::vector<int> lo, hi;
    int t_shift_per_denom = 1;
    int t_cap_ext = 0;

    WeightVector chat;
    std::vector<std::vector<int>> weyl;
};

PairingContext make_context(int n, long d, int nhat, long dhat, int g, const Caps& caps,
                            const PairingOptions& opts, int eps_order) {
    if (std::gcd(static_cast<long>(nhat), dhat) != 1)
        throw std::invalid_argument("pairing: gcd(nhat, dhat) must be 1");
    if (nhat > 3) throw std::invalid_argument("pairing: nhat <= 3 supported");

    PairingContext C;
    C.n = n;
    C.d = d;
    C.nhat = nhat;
    C.dhat = dhat;
    C.g = g;
    C.caps = caps;
    C.opts = opts;
    C.eps_order = eps_order;
    C.t_shift_per_denom = 1 + eps_order;
    C.t_cap_ext = caps.t_cap + (nhat - 1) * C.t_shift_per_denom;

    int ring_cap = caps.degree_cap + 2 * (nhat - 1) * C.t_shift_per_denom + 2;
    C.SR = make_split_ring(n, d, nhat, std::vector<long>(nhat, 0), g, ring_cap, eps_order);

    C.slot_blocks.resize(nhat);
    if (opts.relabel.empty())
        for (int i = 0; i < nhat; ++i) C.slot_blocks[i] = i;
    else {
        if (static_cast<int>(opts.relabel.size()) != nhat)
            throw std::invalid_argument("pairing: relabel size mismatch");
        C.slot_blocks = opts.relabel;
    }

    C.xcoef = x_in_y_coordinates(nhat);

    const int m = nhat - 1;
    C.lo.assign(m, 0);
    C.hi.assign(m, 0);
    int budget = 0;
    for (int a = 0; a < m; ++a) {
        int roots = m - a;  // roots Y_a + ... + Y_j with lowest index a
        C.lo[a] = -((2 * g - 2) * roots + C.t_shift_per_denom + 1);
        budget -= C.lo[a];
    }
    for (int a = 0; a < m; ++a) C.hi[a] = budget + ring_cap / 2 + 2;

    C.chat = hat_weight_vector(nhat, dhat);
    C.weyl = weyl_first_coords(nhat);
    return C;
}

std::vector<long> split_degrees(const PairingContext& C, const std::vector<int>& w) {
    WeightVector wc = C.chat;
    for (std::size_t i = 0; i < w.size(); ++i) wc[i] = C.chat[w[i]];
    WeightVector fd = fundamental_domain(wc);
    std::vector<long> deg(C.nhat);
    Rational base = rational(C.dhat, C.nhat);
    for (int l = 0; l < C.nhat; ++l) {
        Rational e = base - fd[l];
        if (!is_integer(e)) throw std::logic_error("pairing: non-integral split degree");
        deg[l] = to_long(e.get_num());
    }
    return deg;
}

LaurentSeries vandermonde_inverse(const PairingContext& C) {
    TSeries one_ts(GradedElement::zero(C.SR.ring), C.t_cap_ext);
    one_ts.set_coeff(0, GradedElement::constant(C.SR.ring, 1));
    LaurentSeries r = LaurentSeries::constant(C.lo, C.hi, one_ts);
    const int m = C.nhat - 1;
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            // positive root X_{i+1} - X_{j+2} = Y_{i+1} + ... + Y_{j+1}
            std::vector<Rational> form(m, Rational(0));
            for (int a = i; a <= j; ++a) form[a] = 1;
            r = r * LaurentSeries::linear_form_inverse_pow(form, 2 * C.g - 2, C.lo, C.hi, one_ts);
        }
    return r;
}

Rational pairing_prefactor(int nhat, int g) {
    long e = static_cast<long>(nhat) * (nhat - 1) * (g - 1) / 2;
    Int fact(1);
    for (int k = 2; k <= nhat; ++k) fact *= k;
    Rational pref = Rational(1) / Rational(fact);
    if (e % 2) pref = -pref;
    return pref;
}

TSeries finalize_residue(const PairingContext& C, const LaurentSeries& total) {
    TSeries res = iterated_residue(total);
    const int S = (C.nhat - 1) * C.t_shift_per_denom;
    for (int r = 0; r < S; ++r)
        if (!res.coeff(r).is_zero())
            throw std::logic_error("pairing: nonvanishing term below the t-normalization shift");
    TSeries out(GradedElement::zero(C.SR.ring), C.caps.t_cap);
    for (int r = 0; r <= C.caps.t_cap; ++r) out.set_coeff(r, res.coeff(r + S));
    return out;
}

}  // namespace

TSeries pairing_thm_10_2(const GradedElement& eta, const RelationRing& eta_ring, int n, long d,
                         int nhat, long dhat, int g, const Caps& caps,
                         const PairingOptions& opts) {
    PairingContext C = make_context(n, d, nhat, dhat, g, caps, opts, 0);

    for (const auto& [m, c] : eta.terms()) {
        (void)c;
        auto exps = eta_ring.ring->unpack(m);
        for (int i = 0; i < eta_ring.ring->size(); ++i) {
            if (exps[i] == 0) continue;
            if (i >= eta_ring.hat_gen_count)
                throw std::invalid_argument("pairing: eta must not involve main generators");
            if (eta_ring.ring->gen(i).name[1] == 'f')
                throw std::invalid_argument("pairing: eta must not involve the fhat generators");
        }
    }
    GradedElement eta_split = torus_restrict_hat(eta, eta_ring, C.SR);

    Caps ext{C.SR.ring->degree_cap(), C.t_cap_ext};
    LaurentSeries dinv = vandermonde_inverse(C);
    std::vector<LaurentSeries> denoms;
    for (int l = 0; l + 1 < nhat; ++l)
        denoms.push_back(denominator_expand(C.SR, l, C.slot_blocks, C.xcoef, C.lo, C.hi,
                                            C.t_cap_ext, C.t_cap_ext));

    TSeries zero_ts(GradedElement::zero(C.SR.ring), C.t_cap_ext);
    LaurentSeries total(C.lo, C.hi, zero_ts);

    std::map<std::pair<int, long>, TSeries> factor_cache;
    for (const auto& w : C.weyl) {
        auto degs = split_degrees(C, w);
        TSeries F(GradedElement::zero(C.SR.ring), C.t_cap_ext);
        F.set_coeff(0, GradedElement::constant(C.SR.ring, 1));
        for (int l = 0; l < nhat; ++l) {
            int block = C.slot_blocks[l];
            auto key = std::make_pair(block, degs[l]);
            auto it = factor_cache.find(key);
            if (it == factor_cache.end()) {
                BundleGens bl = C.SR.block_bundle(block);
                bl.degree = degs[l];
                it = factor_cache.emplace(key, grr_minus_pi(C.SR.main, bl, ext)).first;
            }
            F = F * it->second;
        }
        TSeries G = F * eta_split;
        TSeries B(GradedElement::zero(C.SR.ring), C.t_cap_ext);
        for (int r = 0; r <= G.max_power(); ++r)
            B.set_coeff(r, berezin_integral(G.coeff(r), C.SR.hat, C.opts.orientation));

        LaurentSeries L = substitute_hat_coordinates(B, C.SR, C.slot_blocks, C.xcoef, C.lo, C.hi);
        for (const auto& dn : denoms) L = L * dn;
        L = L * dinv;
        total += L;
    }

    total = total * pairing_prefactor(nhat, g);
    return finalize_residue(C, total);
}

std::vector<EpsSlice> pairing_thm_10_3(const std::vector<int>& m_exps,
                                       const std::vector<std::vector<int>>& p_flags, int n, long d,
                                       int nhat, long dhat, int g, const Caps& caps, int eps_order,
                                       const PairingOptions& opts) {
    if (eps_order < 1)
        throw std::invalid_argument("pairing_thm_10_3: formal mode requires eps_order >= 1");
    PairingContext C = make_context(n, d, nhat, dhat, g, caps, opts, eps_order);
    const RingPtr& R = C.SR.ring;
    const int m = nhat - 1;

    if (static_cast<int>(m_exps.size()) != m)
        throw std::invalid_argument("pairing_thm_10_3: m_exps needs nhat-1 entries (r = 2..nhat)");
    if (static_cast<int>(p_flags.size()) != m)
        throw std::invalid_argument("pairing_thm_10_3: p_flags needs nhat-1 rows");

    TSeries one_ts(GradedElement::zero(R), C.t_cap_ext);
    one_ts.set_coeff(0, GradedElement::constant(R, 1));
    TSeries zero_ts(GradedElement::zero(R), C.t_cap_ext);
    LaurentSeries one = LaurentSeries::constant(C.lo, C.hi, one_ts);

    std::vector<int> eps_gen(nhat + 1, -1);
    for (int r = 2; r <= nhat; ++r) eps_gen[r] = R->find("eps" + std::to_string(r));

    auto eps_const = [&](int r) {
        TSeries v(GradedElement::zero(R), C.t_cap_ext);
        v.set_coeff(0, GradedElement::generator(R, eps_gen[r]));
        return LaurentSeries::constant(C.lo, C.hi, v);
    };

    // elementary symmetric polynomials of the slot X forms, skipping indices
    std::function<LaurentSeries(int, std::vector<int>)> sigma_skip =
        [&](int r, std::vector<int> skip) {
            std::vector<std::vector<Rational>> vars;
            for (int l = 0; l < nhat; ++l)
                if (std::find(skip.begin(), skip.end(), l) == skip.end())
                    vars.push_back(C.xcoef[l]);
            LaurentSeries acc(C.lo, C.hi, zero_ts);
            if (r == 0) return one;
            if (r > static_cast<int>(vars.size())) return acc;
            std::function<void(int, int, LaurentSeries)> rec = [&](int start, int depth,
                                                                   LaurentSeries cur) {
                if (depth == r) {
                    acc += cur;
                    return;
                }
                for (int i = start; i < static_cast<int>(vars.size()); ++i)
                    rec(i + 1, depth + 1,
                        cur * LaurentSeries::linear_form_pow(vars[i], 1, C.lo, C.hi, one_ts));
            };
            rec(0, 0, one);
            return acc;
        };

    auto dsigma = [&](int r, const std::vector<Rational>& v) {
        LaurentSeries acc(C.lo, C.hi, zero_ts);
        for (int l = 0; l < nhat; ++l) {
            if (v[l] == 0) continue;
            acc += sigma_skip(r - 1, {l}) * v[l];
        }
        return acc;
    };

    auto dq = [&](const std::vector<Rational>& v) {
        LaurentSeries acc(C.lo, C.hi, zero_ts);
        for (int r = 2; r <= nhat; ++r) acc += dsigma(r, v) * eps_const(r);
        return acc;
    };

    auto d2q = [&](int a, int b) {
        LaurentSeries acc(C.lo, C.hi, zero_ts);
        std::vector<std::pair<int, Rational>> va{{a, Rational(1)}, {a + 1, Rational(-1)}};
        std::vector<std::pair<int, Rational>> vb{{b, Rational(1)}, {b + 1, Rational(-1)}};
        for (int r = 2; r <= nhat; ++r) {
            LaurentSeries h(C.lo, C.hi, zero_ts);
            for (auto& [i, ci] : va)
                for (auto& [j, cj] : vb) {
                    if (i == j) continue;
                    h += sigma_skip(r - 2, {i, j}) * (ci * cj);
                }
            acc += h * eps_const(r);
        }
        return acc;
    };

    auto zeta_root = [&](int a, int s) {  // simple-root direction a, copy s
        int b1 = C.slot_blocks[a], b2 = C.slot_blocks[a + 1];
        return GradedElement::generator(R, C.SR.hat.zeta_idx[b1][s - 1]) -
               GradedElement::generator(R, C.SR.hat.zeta_idx[b2][s - 1]);
    };

    LaurentSeries sigma_pows = one;
    for (int r = 2; r <= nhat; ++r)
        for (int k = 0; k < m_exps[r - 2]; ++k) sigma_pows = sigma_pows * sigma_skip(r, {});

    LaurentSeries insertions = one;
    for (int r = 2; r <= nhat; ++r)
        for (int k = 1; k <= 2 * g; ++k) {
            bool flag = static_cast<int>(p_flags[r - 2].size()) >= k && p_flags[r - 2][k - 1];
            if (!flag) continue;
            LaurentSeries ins(C.lo, C.hi, zero_ts);
            for (int a = 0; a < m; ++a) {
                std::vector<Rational> ea(nhat, Rational(0));
                ea[a] = 1;
                ea[a + 1] = -1;
                TSeries z(GradedElement::zero(R), C.t_cap_ext);
                z.set_coeff(0, zeta_root(a, k));
                ins += dsigma(r, ea) * LaurentSeries::constant(C.lo, C.hi, z);
            }
            insertions = insertions * ins;
        }

    LaurentSeries zeta_hess(C.lo, C.hi, zero_ts);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            LaurentSeries hab = d2q(a, b);
            if (hab.is_zero()) continue;
            GradedElement zz(R);
            for (int s = 1; s <= g; ++s) zz += zeta_root(a, s) * zeta_root(b, s + g);
            if (zz.is_zero()) continue;
            TSeries zts(GradedElement::zero(R), C.t_cap_ext);
            zts.set_coeff(0, zz);
            zeta_hess += hab * LaurentSeries::constant(C.lo, C.hi, zts);
        }
    LaurentSeries hess_exp = (-zeta_hess).exp_nilpotent(2 * g * nhat + eps_order + 2);

    // q-deformed denominators, t-normalized by 1 + eps_order each:
    // t^{1+E} (E_l prod R - 1)^{-1}
    //   = sum_{k<=E} (-1)^k [t (prod R - 1)^{-1}] [(E_l - 1) t prod R (prod R - 1)^{-1}]^k t^{E-k}
    std::vector<LaurentSeries> denoms;
    for (int l = 0; l + 1 < nhat; ++l) {
        auto P = denominator_pieces(C.SR, l, C.xcoef, C.lo, C.hi, C.t_cap_ext, C.t_cap_ext);
        LaurentSeries D0 = P.B * P.geom * P.yinv;
        LaurentSeries J = P.A * P.geom * P.yinv;
        std::vector<Rational> el(nhat, Rational(0));
        el[l] = 1;
        el[l + 1] = -1;
        LaurentSeries E1 = (-dq(el)).exp_nilpotent(eps_order + 1) + (-one);  // E_l - 1
        LaurentSeries acc(C.lo, C.hi, zero_ts);
        LaurentSeries pw = one;
        for (int k = 0; k <= eps_order; ++k) {
            TSeries tpow(GradedElement::zero(R), C.t_cap_ext);
            tpow.set_coeff(eps_order - k, GradedElement::constant(R, (k % 2) ? -1 : 1));
            acc += D0 * pw * LaurentSeries::constant(C.lo, C.hi, tpow);
            if (k < eps_order) pw = pw * E1 * J;
        }
        denoms.push_back(acc);
    }

    LaurentSeries dinv = vandermonde_inverse(C);
    Caps ext{R->degree_cap(), C.t_cap_ext};
    TSeries zero_out(GradedElement::zero(R), C.t_cap_ext);
    LaurentSeries total(C.lo, C.hi, zero_out);
    std::map<std::pair<int, long>, TSeries> factor_cache;

    for (const auto& w : C.weyl) {
        auto degs = split_degrees(C, w);
        TSeries F(GradedElement::zero(R), C.t_cap_ext);
        F.set_coeff(0, GradedElement::constant(R, 1));
        for (int l = 0; l < nhat; ++l) {
            int block = C.slot_blocks[l];
            auto key = std::make_pair(block, degs[l]);
            auto it = factor_cache.find(key);
            if (it == factor_cache.end()) {
                BundleGens bl = C.SR.block_bundle(block);
                bl.degree = degs[l];
                it = factor_cache.emplace(key, grr_minus_pi(C.SR.main, bl, ext)).first;
            }
            F = F * it->second;
        }
        WeightVector wc = C.chat;
        for (std::size_t i = 0; i < w.size(); ++i) wc[i] = C.chat[w[i]];
        WeightVector fd = fundamental_domain(wc);
        LaurentSeries epref = (-dq(fd)).exp_nilpotent(eps_order + 1);

        LaurentSeries L = substitute_hat_coordinates(F, C.SR, C.slot_blocks, C.xcoef, C.lo, C.hi);
        L = L * epref * sigma_pows * insertions * hess_exp;
        for (const auto& dn : denoms) L = L * dn;
        L = L * dinv;

        LaurentSeries Lb(C.lo, C.hi, zero_out);
        for (const auto& [ye, ts] : L.terms()) {
            TSeries b(GradedElement::zero(R), C.t_cap_ext);
            for (int r = 0; r <= ts.max_power(); ++r)
                b.set_coeff(r, berezin_integral(ts.coeff(r), C.SR.hat, C.opts.orientation));
            if (!b.is_zero()) Lb.add_to(ye, b);
        }
        total += Lb;
    }

    total = total * pairing_prefactor(nhat, g);
    TSeries res = finalize_residue(C, total);

    std::vector<int> eps_idx;
    for (int r = 2; r <= nhat; ++r) eps_idx.push_back(eps_gen[r]);
    std::vector<EpsSlice> slices;
    std::vector<int> cur(eps_idx.size(), 0);
    std::function<void(std::size_t, int)> enumerate = [&](std::size_t pos, int remaining) {
        if (pos == cur.size()) {
            EpsSlice s;
            s.eps_exponents = cur;
            TSeries v(GradedElement::zero(R), C.caps.t_cap);
            bool nonzero = false;
            for (int r = 0; r <= C.caps.t_cap; ++r) {
                GradedElement slice = res.coeff(r).aux_part(cur, eps_idx);
                GradedElement stripped(R);
                for (const auto& [mm, cc] : slice.terms()) {
                    Monomial m2 = mm;
                    for (std::size_t i = 0; i < eps_idx.size(); ++i)
                        for (int k = 0; k < cur[i]; ++k) {
                            Monomial tmp;
                            R->divide_by_gen(m2, eps_idx[i], tmp);
                            m2 = tmp;
                        }
                    stripped.add_term(m2, cc);
                }
                if (!stripped.is_zero()) nonzero = true;
                v.set_coeff(r, stripped);
            }
            bool is_zero_slice = std::all_of(cur.begin(), cur.end(), [](int x) { return x == 0; });
            if (nonzero || is_zero_slice) {
                s.value = v;
                slices.push_back(std::move(s));
            }
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[pos] = e;
            enumerate(pos + 1, remaining - e);
        }
        cur[pos] = 0;
    };
    enumerate(0, eps_order);
    return slices;
}

}  // namespace bundlecoh

#include "bundlecoh/parab.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace bundlecoh {

void ParabolicData::validate() const {
    if (n < 1) throw std::invalid_argument("parabolic data: rank must be positive");
    if (weights.size() != mults.size() || weights.empty())
        throw std::invalid_argument("parabolic data: weights/multiplicities size mismatch");
    Rational prev(-1);
    long total = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (!(weights[k] >= 0 && weights[k] < 1))
            throw std::invalid_argument("parabolic data: weights must lie in [0,1)");
        if (!(weights[k] > prev))
            throw std::invalid_argument("parabolic data: weights must be strictly increasing");
        prev = weights[k];
        if (mults[k] < 1) throw std::invalid_argument("parabolic data: multiplicities positive");
        total += mults[k];
    }
    if (total != n) throw std::invalid_argument("parabolic data: multiplicities must sum to n");
}

void SubParabolicData::validate(const ParabolicData& pd) const {
    if (!(0 < nhat && nhat < pd.n))
        throw std::invalid_argument("sub parabolic data: needs 0 < nhat < n");
    if (jhat.size() != pd.mults.size())
        throw std::invalid_argument("sub parabolic data: jhat size mismatch");
    long total = 0;
    for (std::size_t k = 0; k < jhat.size(); ++k) {
        if (jhat[k] < 0 || jhat[k] > pd.mults[k])
            throw std::invalid_argument("sub parabolic data: 0 <= jhat_k <= j_k");
        total += jhat[k];
    }
    if (total != nhat) throw std::invalid_argument("sub parabolic data: jhat must sum to nhat");
}

Rational par_slope(long n, long d, const std::vector<Rational>& weights,
                   const std::vector<long>& mults) {
    Rational deg(d);
    for (std::size_t k = 0; k < weights.size(); ++k) deg += weights[k] * Rational(mults[k]);
    return deg / Rational(n);
}

std::pair<Rational, Rational> par_degree_slope(const ParabolicData& pd) {
    pd.validate();
    Rational deg(pd.d);
    for (std::size_t k = 0; k < pd.weights.size(); ++k)
        deg += pd.weights[k] * Rational(pd.mults[k]);
    return {deg, deg / Rational(pd.n)};
}

long par_rank_formula(const ParabolicData& pd, const SubParabolicData& sub, int g) {
    pd.validate();
    sub.validate(pd);
    long corr = 0;
    long prefix = 0;
    for (std::size_t l = 0; l < pd.mults.size(); ++l) {
        if (l > 0) corr += prefix * sub.jhat[l];
        prefix += pd.mults[l];
    }
    return pd.n * sub.nhat * (g - 1) + sub.dhat * pd.n - pd.d * sub.nhat + corr;
}

ParWindow par_relation_window(const ParabolicData& pd, const SubParabolicData& sub, int g) {
    long rank = par_rank_formula(pd, sub, g);
    // n nhat(g-1) < r - dhat n + d nhat - corr < n nhat(g+1)
    // <=> rank < r < rank + 2 n nhat
    return ParWindow{rank + 1, rank + 2 * pd.n * sub.nhat - 1};
}

namespace {

// jhat vectors with 0 <= jhat_k <= j_k and sum nhat
void enumerate_jhat(const std::vector<long>& mults, long nhat,
                    const std::function<void(const std::vector<long>&)>& visit) {
    std::vector<long> cur(mults.size(), 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t k, long remaining) {
        if (k == mults.size()) {
            if (remaining == 0) visit(cur);
            return;
        }
        for (long j = 0; j <= std::min(mults[k], remaining); ++j) {
            cur[k] = j;
            rec(k + 1, remaining - j);
        }
        cur[k] = 0;
    };
    rec(0, nhat);
}

Rational integrality_gap(const Rational& q) {
    Rational f = frac_part(q);
    Rational g = Rational(1) - f;
    return f < g ? f : g;
}

}  // namespace

GoodDataReport good_data_check(const ParabolicData& pd) {
    pd.validate();
    GoodDataReport rep;
    Rational top_slope = par_slope(pd.n, pd.d, pd.weights, pd.mults);
    std::optional<Rational> margin;
    auto update_margin = [&](const Rational& gap) {
        if (gap == 0) return;
        if (!margin || gap < *margin) margin = gap;
    };

    // (a) the full data itself must have semistable = stable: a strictly
    // semistable bundle exists iff dhat = nhat d/n + sum alpha_k (nhat j_k/n
    // - jhat_k) is an integer for some (nhat, jhat)
    for (long nhat = 1; nhat < pd.n; ++nhat) {
        enumerate_jhat(pd.mults, nhat, [&](const std::vector<long>& jhat) {
            Rational dh = Rational(nhat) * top_slope;
            for (std::size_t k = 0; k < jhat.size(); ++k)
                dh -= pd.weights[k] * Rational(jhat[k]);
            if (is_integer(dh)) {
                GoodDataWitness w;
                w.nhat = nhat;
                w.dhat = to_long(dh.get_num());
                w.jhat = jhat;
                w.top_level = true;
                rep.witnesses.push_back(std::move(w));
            } else {
                update_margin(integrality_gap(dh));
            }
        });
    }

    // (b) every sub-data with parabolic slope in the open window must have
    // semistable = stable: search for inner data of equal parabolic slope
    for (long nhat = 1; nhat < pd.n; ++nhat) {
        enumerate_jhat(pd.mults, nhat, [&](const std::vector<long>& jhat) {
            Rational wsum(0);
            for (std::size_t k = 0; k < jhat.size(); ++k)
                wsum += pd.weights[k] * Rational(jhat[k]);
            // window: top < (dhat + wsum)/nhat < top + 1
            Rational lo = Rational(nhat) * top_slope - wsum;
            Rational hi = lo + Rational(nhat);
            for (Int dh = rational_floor(lo) + 1; Rational(dh) < hi; dh += 1) {
                if (Rational(dh) == lo) continue;
                long dhat = to_long(dh);
                Rational sub_slope = (Rational(dhat) + wsum) / Rational(nhat);
                for (long np = 1; np < nhat; ++np) {
                    enumerate_jhat(jhat, np, [&](const std::vector<long>& kvec) {
                        Rational e = Rational(np) * sub_slope;
                        for (std::size_t k = 0; k < kvec.size(); ++k)
                            e -= pd.weights[k] * Rational(kvec[k]);
                        if (is_integer(e)) {
                            GoodDataWitness w;
                            w.nhat = nhat;
                            w.dhat = dhat;
                            w.jhat = jhat;
                            w.inner_k = kvec;
                            w.inner_rank = np;
                            w.inner_degree = to_long(e.get_num());
                            rep.witnesses.push_back(std::move(w));
                        } else {
                            update_margin(integrality_gap(e));
                        }
                    });
                }
            }
        });
    }

    rep.good = rep.witnesses.empty();
    rep.margin = margin;
    return rep;
}

long weight_degree_count(const std::vector<int>& J, const std::vector<long>& mults) {
    long n = 0;
    for (long j : mults) n += j;
    const int m = static_cast<int>(mults.size());
    std::vector<bool> in(n + 1, false);
    for (int x : J) {
        if (x < 1 || x > n) throw std::invalid_argument("weight_degree_count: J out of range");
        if (in[x]) throw std::invalid_argument("weight_degree_count: duplicate element in J");
        in[x] = true;
    }
    std::vector<long> jhat(m, 0);  // jhat_k = |J cap block_k|
    long prefix = 0;
    for (int k = 0; k < m; ++k) {
        for (long x = prefix + 1; x <= prefix + mults[k]; ++x)
            if (in[x]) ++jhat[k];
        prefix += mults[k];
    }
    long first = 0;
    for (long l = 2; l <= n; ++l)
        for (long x = l; x <= n; ++x)
            if (in[x]) ++first;
    long corr = 0;
    prefix = 0;
    for (int k = 0; k < m; ++k) {
        if (k > 0) corr += prefix * jhat[k];
        prefix += mults[k];
    }
    long out = first - corr;
    if (out < 0) throw std::logic_error("weight_degree_count: negative degree");
    return out;
}

ParabolicData perturb_weights(const ParabolicData& pd, long N) {
    ParabolicData out = pd;
    for (std::size_t k = 0; k < out.weights.size(); ++k)
        out.weights[k] += rational(static_cast<long>(k) + 1, N);
    out.validate();
    return out;
}

}  // namespace bundlecoh

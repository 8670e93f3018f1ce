#include "bundlecoh/strata.hpp"

#include <stdexcept>

namespace bundlecoh {

long HNType::rank() const {
    long n = 0;
    for (auto& [ni, di] : blocks) n += ni;
    return n;
}

long HNType::degree() const {
    long d = 0;
    for (auto& [ni, di] : blocks) d += di;
    return d;
}

bool HNType::valid() const {
    if (blocks.empty()) return false;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].first <= 0) return false;
        if (i > 0) {
            // d_{i-1}/n_{i-1} > d_i/n_i  <=>  d_{i-1} n_i > d_i n_{i-1}
            if (blocks[i - 1].second * blocks[i].first <= blocks[i].second * blocks[i - 1].first)
                return false;
        }
    }
    return true;
}

std::vector<Rational> HNType::slope_vector() const {
    std::vector<Rational> v;
    for (auto& [ni, di] : blocks) {
        Rational s = rational(di, ni);
        for (long k = 0; k < ni; ++k) v.push_back(s);
    }
    return v;
}

std::vector<std::pair<long, long>> HNType::polygon() const {
    std::vector<std::pair<long, long>> pts{{0, 0}};
    long n = 0, d = 0;
    for (auto& [ni, di] : blocks) {
        n += ni;
        d += di;
        pts.emplace_back(n, d);
    }
    return pts;
}

long codim_mu(const HNType& mu, int g) {
    long c = 0;
    const auto& b = mu.blocks;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            c += b[i].first * b[j].second - b[j].first * b[i].second +
                 b[i].first * b[j].first * (g - 1);
    return c;
}

long coarse_codim(const CoarseType& ct, int g) {
    if (ct.n1 <= 0 || ct.n1 >= ct.n) throw std::invalid_argument("coarse_codim: need 0 < n1 < n");
    return ct.n * ct.d1 - ct.n1 * ct.d + ct.n1 * (ct.n - ct.n1) * (g - 1);
}

namespace {

// Appends all types of (n,d) with codim <= cap whose first-block slope is
// strictly below `bound` (if present).
void enumerate_rec(long n, long d, int g, long cap, const std::optional<Rational>& slope_bound,
                   std::vector<std::pair<long, long>>& prefix, std::vector<HNType>& out) {
    // single block: slope d/n must respect the bound
    Rational total_slope = rational(d, n);
    if (!slope_bound || total_slope < *slope_bound) {
        HNType t;
        t.blocks = prefix;
        t.blocks.emplace_back(n, d);
        out.push_back(std::move(t));
    }
    // first proper block (n1, d1): slope(d1/n1) > slope of the rest and below
    // the bound; coarse codimension n d1 - n1 d + n1 (n-n1)(g-1) <= cap.
    for (long n1 = 1; n1 < n; ++n1) {
        // n d1 <= cap + n1 d - n1 (n - n1)(g - 1)
        Int num = Int(cap) + Int(n1) * Int(d) - Int(n1) * Int(n - n1) * Int(g - 1);
        Int nn(n);
        Int d1_max;
        mpz_fdiv_q(d1_max.get_mpz_t(), num.get_mpz_t(), nn.get_mpz_t());
        // slope strictly above d/n: d1/n1 > d/n  <=>  n d1 > n1 d
        Int n1d = Int(n1) * Int(d);
        Int d1_min;  // smallest d1 with n d1 > n1 d
        mpz_fdiv_q(d1_min.get_mpz_t(), n1d.get_mpz_t(), nn.get_mpz_t());
        d1_min += 1;
        for (Int d1 = d1_min; d1 <= d1_max; ++d1) {
            long d1l = to_long(d1);
            Rational s1 = rational(d1l, n1);
            if (slope_bound && !(s1 < *slope_bound)) continue;
            long delta = n * d1l - n1 * d + n1 * (n - n1) * (g - 1);
            prefix.emplace_back(n1, d1l);
            enumerate_rec(n - n1, d - d1l, g, cap - delta, s1, prefix, out);
            prefix.pop_back();
        }
    }
}

}  // namespace

std::vector<HNType> enumerate_hn_types(long n, long d, int g, long codim_cap) {
    if (n < 1) throw std::invalid_argument("enumerate_hn_types: n >= 1");
    if (codim_cap < 0) return {};
    std::vector<std::pair<long, long>> prefix;
    std::vector<HNType> out;
    enumerate_rec(n, d, g, codim_cap, std::nullopt, prefix, out);
    return out;
}

TypeOrder type_orders(const HNType& mu, const HNType& nu) {
    if (mu.rank() != nu.rank() || mu.degree() != nu.degree())
        throw std::invalid_argument("type_orders: context mismatch");
    auto a = mu.slope_vector();
    auto b = nu.slope_vector();
    const std::size_t n = a.size();

    TypeOrder r;
    bool le = true, ge = true;
    Rational pa(0), pb(0);
    for (std::size_t i = 0; i + 1 < n; ++i) {  // the n-th partial sums agree
        pa += a[i];
        pb += b[i];
        if (pa > pb) le = false;
        if (pa < pb) ge = false;
    }
    if (le)
        r.leq = true;
    else if (ge)
        r.leq = false;
    else
        r.leq = std::nullopt;

    r.preceq = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == b[i]) continue;
        r.preceq = a[i] < b[i];
        break;
    }
    return r;
}

}  // namespace bundlecoh

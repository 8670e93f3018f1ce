#include "bundlecoh/betti.hpp"

#include <numeric>
#include <stdexcept>

namespace bundlecoh {

IntSeries IntSeries::one(int t_cap) {
    IntSeries s(t_cap);
    s.set_coeff(0, 1);
    return s;
}

IntSeries IntSeries::monomial(int t_cap, int power, const Int& c) {
    IntSeries s(t_cap);
    s.set_coeff(power, c);
    return s;
}

void IntSeries::set_coeff(int r, Int v) {
    if (r < 0 || r > cap_) return;
    if (r >= static_cast<int>(c_.size())) c_.resize(r + 1, Int(0));
    c_[r] = std::move(v);
}

int IntSeries::degree() const {
    for (int r = static_cast<int>(c_.size()) - 1; r >= 0; --r)
        if (c_[r] != 0) return r;
    return -1;
}

IntSeries& IntSeries::operator+=(const IntSeries& o) {
    for (int r = 0; r <= o.degree(); ++r)
        if (o.coeff(r) != 0) set_coeff(r, coeff(r) + o.coeff(r));
    return *this;
}

IntSeries& IntSeries::operator-=(const IntSeries& o) {
    for (int r = 0; r <= o.degree(); ++r)
        if (o.coeff(r) != 0) set_coeff(r, coeff(r) - o.coeff(r));
    return *this;
}

IntSeries IntSeries::operator*(const IntSeries& o) const {
    IntSeries r(cap_);
    int da = degree(), db = o.degree();
    for (int i = 0; i <= da; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j <= db && i + j <= cap_; ++j) {
            if (o.c_[j] == 0) continue;
            r.set_coeff(i + j, r.coeff(i + j) + c_[i] * o.c_[j]);
        }
    }
    return r;
}

IntSeries IntSeries::operator-() const {
    IntSeries r(cap_);
    for (int i = 0; i <= degree(); ++i) r.set_coeff(i, -coeff(i));
    return r;
}

bool IntSeries::operator==(const IntSeries& o) const {
    int m = std::max(degree(), o.degree());
    for (int r = 0; r <= m; ++r)
        if (coeff(r) != o.coeff(r)) return false;
    return true;
}

IntSeries& IntSeries::mul_one_plus_tm_pow(int m, int e) {
    IntSeries base(cap_);
    base.set_coeff(0, 1);
    base.set_coeff(m, 1);
    IntSeries acc = one(cap_);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    *this = *this * acc;
    return *this;
}

IntSeries& IntSeries::div_one_minus_tm(int m) {
    // multiply by 1 + t^m + t^{2m} + ... : prefix sums with stride m
    if (degree() < 0) return *this;
    c_.resize(cap_ + 1, Int(0));
    for (int r = m; r <= cap_; ++r) c_[r] += c_[r - m];
    return *this;
}

IntSeries& IntSeries::mul_tm(int m) {
    IntSeries r(cap_);
    for (int i = 0; i <= degree(); ++i) r.set_coeff(i + m, coeff(i));
    *this = std::move(r);
    return *this;
}

bool IntSeries::is_polynomial_of_degree(int deg) const {
    if (degree() != deg) return false;
    return true;
}

bool IntSeries::is_palindromic(int deg) const {
    for (int r = 0; r <= deg; ++r)
        if (coeff(r) != coeff(deg - r)) return false;
    return true;
}

bool IntSeries::nonnegative() const {
    for (int r = 0; r <= degree(); ++r)
        if (coeff(r) < 0) return false;
    return true;
}

std::vector<Int> IntSeries::coefficients(int upto) const {
    std::vector<Int> v;
    for (int r = 0; r <= upto; ++r) v.push_back(coeff(r));
    return v;
}

std::string IntSeries::str(int upto) const {
    if (upto < 0) upto = degree();
    std::string s;
    for (int r = 0; r <= upto; ++r) {
        if (coeff(r) == 0) continue;
        if (!s.empty()) s += " + ";
        s += to_string(coeff(r));
        if (r > 0) s += "*t^" + std::to_string(r);
    }
    return s.empty() ? "0" : s;
}

IntSeries p_gauge(int n, int g, int t_cap) {
    if (n < 1 || g < 2) throw std::invalid_argument("p_gauge: need n >= 1, g >= 2");
    IntSeries s = IntSeries::one(t_cap);
    for (int k = 1; k <= n; ++k) s.mul_one_plus_tm_pow(2 * k - 1, 2 * g);  // b_k^j
    for (int k = 1; k <= n; ++k) s.div_one_minus_tm(2 * k);               // a_k
    for (int k = 2; k <= n; ++k) s.div_one_minus_tm(2 * k - 2);           // f_k
    return s;
}

IntSeries BettiCache::p_semistable(long n, long d) {
    if (n < 1) throw std::invalid_argument("p_semistable: n >= 1");
    long dmod = ((d % n) + n) % n;  // invariance under d -> d + n
    auto key = std::make_pair(n, dmod);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    IntSeries result = p_gauge(static_cast<int>(n), g_, cap_);
    if (n > 1) {
        for (const auto& mu : enumerate_hn_types(n, dmod, g_, cap_ / 2)) {
            if (mu.is_semistable()) continue;
            IntSeries term = IntSeries::monomial(cap_, static_cast<int>(2 * codim_mu(mu, g_)));
            for (const auto& [nj, dj] : mu.blocks) term = term * p_semistable(nj, dj);
            result -= term;
        }
    }
    memo_.emplace(key, result);
    return result;
}

IntSeries BettiCache::p_moduli(long n, long d) {
    if (std::gcd(n, d) != 1)
        throw std::invalid_argument(
            "p_moduli: gcd(n,d) must be 1 (semistable != stable otherwise; the quotient is not a "
            "smooth compact moduli space)");
    long dim = moduli_dimension(n, g_);
    if (cap_ < dim)
        throw std::invalid_argument("p_moduli: t_cap must be at least 2(n^2(g-1)+1)");
    IntSeries ss = p_semistable(n, d);
    IntSeries one_minus_t2(cap_);
    one_minus_t2.set_coeff(0, 1);
    one_minus_t2.set_coeff(2, -1);
    IntSeries m = ss * one_minus_t2;
    if (m.degree() != dim)
        throw std::logic_error("p_moduli: series is not a polynomial of the expected degree");
    return m;
}

IntSeries p_semistable(long n, long d, int g, int t_cap) {
    BettiCache cache(g, t_cap);
    return cache.p_semistable(n, d);
}

IntSeries p_moduli(long n, long d, int g, int t_cap) {
    BettiCache cache(g, t_cap);
    return cache.p_moduli(n, d);
}

long moduli_dimension(long n, int g) {
    if (n < 1 || g < 2) throw std::invalid_argument("moduli_dimension: need n >= 1, g >= 2");
    return 2 * (n * n * (g - 1) + 1);
}

IntSeries p_flag(const std::vector<int>& multiplicities, int t_cap) {
    int n = 0;
    for (int j : multiplicities) {
        if (j < 1) throw std::invalid_argument("p_flag: multiplicities must be >= 1");
        n += j;
    }
    // Gaussian multinomial in q = t^2; compute as an exact polynomial:
    // numerator prod_{i=1}^n (1-q^i), denominator per block.
    // Use series division under a cap covering the flag dimension.
    int dim = 0;  // complex dimension = sum over pairs of blocks of j_a j_b
    for (std::size_t a = 0; a < multiplicities.size(); ++a)
        for (std::size_t b = a + 1; b < multiplicities.size(); ++b)
            dim += multiplicities[a] * multiplicities[b];
    int cap = std::max(t_cap, 2 * dim);
    IntSeries s = IntSeries::one(cap);
    for (int k : multiplicities)
        for (int i = 1; i <= k; ++i) s.div_one_minus_tm(2 * i);
    // multiply by prod (1 - t^{2i}): subtractive convolution
    for (int i = 1; i <= n; ++i) {
        IntSeries f(cap);
        f.set_coeff(0, 1);
        f.set_coeff(2 * i, -1);
        s = s * f;
    }
    if (s.degree() != 2 * dim) throw std::logic_error("p_flag: unexpected degree");
    IntSeries out(t_cap);
    for (int r = 0; r <= std::min(t_cap, s.degree()); ++r) out.set_coeff(r, s.coeff(r));
    return out;
}

Int ClosedFormula::coeff_t(const Rational& power) const {
    Rational scaled = power * denom;
    if (!is_integer(scaled)) return 0;
    long idx = to_long(scaled.get_num());
    return series_u.coeff(static_cast<int>(idx));
}

namespace {
void compositions(long n, std::vector<long>& cur, std::vector<std::vector<long>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (long k = 1; k <= n; ++k) {
        cur.push_back(k);
        compositions(n - k, cur, out);
        cur.pop_back();
    }
}
}  // namespace

ClosedFormula p_closed(long n, long d, int g, int t_cap) {
    std::vector<std::vector<long>> comps;
    std::vector<long> cur;
    compositions(n, cur, comps);

    // t-exponent of each term, as printed: one overall power
    //   E = 2 sum_{i<j<=l} n_i n_j (g-1)
    //       + sum_{j=1}^{l-1} (n_j + n_{j+1}) <-(n_1+...+n_j) d/n>
    // with <x> the fractional part. E may be fractional; find a common
    // denominator N and work in u = t^{1/N}.
    std::vector<Rational> exponents;
    Int lcm_den = 1;
    for (const auto& comp : comps) {
        const std::size_t l = comp.size();
        Rational E(0);
        long prefix = 0;
        for (std::size_t j = 0; j + 1 < l; ++j) {
            prefix += comp[j];
            E += Rational(comp[j] + comp[j + 1]) * frac_part(rational(-prefix * d, n));
        }
        long pairs = 0;
        for (std::size_t i = 0; i < l; ++i)
            for (std::size_t j = i + 1; j < l; ++j) pairs += comp[i] * comp[j];
        E += Rational(2 * pairs * (g - 1));
        exponents.push_back(E);
        Int den = E.get_den();
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
    }

    ClosedFormula out;
    out.denom = static_cast<int>(to_long(lcm_den));
    out.integral_exponents = (out.denom == 1);
    const int N = out.denom;
    const int ucap = t_cap * N;
    IntSeries total(ucap);

    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& comp = comps[ci];
        const int l = static_cast<int>(comp.size());
        IntSeries term = IntSeries::one(ucap);
        term.mul_one_plus_tm_pow(N, 2 * g * l);  // (1+t)^{2gl}
        for (int j = 0; j < l - 1; ++j) term.div_one_minus_tm(2 * N);
        for (int j = 0; j < l; ++j)
            for (long i = 1; i <= comp[j] - 1; ++i) {
                term.mul_one_plus_tm_pow(static_cast<int>((2 * i + 1) * N), 2 * g);
                term.div_one_minus_tm(static_cast<int>(2 * i * N));
                term.div_one_minus_tm(static_cast<int>((2 * i + 2) * N));
            }
        for (int j = 0; j + 1 < l; ++j)
            term.div_one_minus_tm(static_cast<int>(2 * (comp[j] + comp[j + 1]) * N));
        Rational Eu = exponents[ci] * N;
        term.mul_tm(static_cast<int>(to_long(Eu.get_num())));
        if (l % 2 == 0)
            total -= term;
        else
            total += term;
    }
    out.series_u = std::move(total);
    return out;
}

ClosedComparison compare_closed_vs_moduli(long n, long d, int g, int t_cap) {
    ClosedFormula cf = p_closed(n, d, g, t_cap);
    IntSeries pm = p_moduli(n, d, g, t_cap);
    ClosedComparison rep;
    rep.agree = true;
    const int N = cf.denom;
    for (int ur = 0; ur <= t_cap * N; ++ur) {
        Int cv = cf.series_u.coeff(ur);
        Int iv = (ur % N == 0) ? pm.coeff(ur / N) : Int(0);
        if (cv != iv) {
            rep.agree = false;
            rep.has_difference = true;
            rep.first_diff_power = rational(ur, N);
            rep.closed_value = cv;
            rep.inductive_value = iv;
            break;
        }
    }
    return rep;
}

}  // namespace bundlecoh

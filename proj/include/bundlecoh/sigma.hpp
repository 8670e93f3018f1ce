#pragma once

#include <vector>

#include "bundlecoh/tseries.hpp"

namespace bundlecoh {

// Element of (coefficient ring) (x) H*(Sigma) with the surface basis
// {1, alpha_1..alpha_2g, omega}, alpha_s alpha_{s+g} = omega = -alpha_{s+g}
// alpha_s for 1 <= s <= g, all other alpha-pairs zero, omega annihilates
// alphas and omega. Koszul signs are taken against odd ring coefficients.
class SigmaClass {
  public:
    SigmaClass() = default;
    SigmaClass(RingPtr ring, int genus);

    static SigmaClass zero(RingPtr ring, int genus) { return SigmaClass(std::move(ring), genus); }
    static SigmaClass scalar(RingPtr ring, int genus, const Rational& c);
    static SigmaClass pure(int genus, int basis_index, GradedElement x);

    int genus() const { return genus_; }
    const RingPtr& ring() const { return ring_; }
    int basis_size() const { return 2 * genus_ + 2; }
    int omega_index() const { return 2 * genus_ + 1; }
    int surface_degree(int idx) const { return idx == 0 ? 0 : (idx <= 2 * genus_ ? 1 : 2); }

    const GradedElement& comp(int idx) const { return comp_[idx]; }
    GradedElement& comp(int idx) { return comp_[idx]; }

    bool is_zero() const;

    SigmaClass& operator+=(const SigmaClass& o);
    SigmaClass& operator-=(const SigmaClass& o);
    friend SigmaClass operator+(SigmaClass a, const SigmaClass& b) { return a += b; }
    friend SigmaClass operator-(SigmaClass a, const SigmaClass& b) { return a -= b; }
    SigmaClass operator-() const;
    SigmaClass operator*(const SigmaClass& o) const;
    SigmaClass operator*(const Rational& q) const;
    SigmaClass operator*(const GradedElement& x) const;  // x (x) 1 times this

    bool operator==(const SigmaClass& o) const;

    // Components of fixed total degree (ring degree + surface degree).
    SigmaClass total_degree_part(int degree) const;
    int max_total_degree() const;

    // ch(E) -> ch(E*): multiplies the total-degree-2k part by (-1)^k.
    // Requires even total degrees.
    SigmaClass dual() const;

    // Integration over Sigma: the omega component; unit and alpha components
    // are discarded.
    const GradedElement& pushforward() const { return comp_[2 * genus_ + 1]; }

  private:
    RingPtr ring_;
    int genus_ = 0;
    std::vector<GradedElement> comp_;
};

// Newton/Girard conversions between Chern classes and the Chern character.
// Work over any element type with ring ops (GradedElement or SigmaClass).
// chern: c_1..c_n (c_0 = 1 implicit); returns ch_1..ch_cap, each = p_k / k!.
template <class E>
std::vector<E> chern_to_character(const std::vector<E>& chern, const E& zero, int cap) {
    const int n = static_cast<int>(chern.size());
    std::vector<E> p;  // p[k-1] = k-th power sum
    p.reserve(cap);
    for (int k = 1; k <= cap; ++k) {
        // p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
        E acc = zero;
        for (int i = 1; i < k; ++i) {
            if (i > n) break;
            E term = chern[i - 1] * p[k - i - 1];
            if (i % 2 == 0) term = -term;
            acc += term;
        }
        if (k <= n) {
            E term = chern[k - 1] * Rational(k);
            if (k % 2 == 0) term = -term;
            acc += term;
        }
        p.push_back(acc);
    }
    std::vector<E> ch;
    Rational factorial(1);
    for (int k = 1; k <= cap; ++k) {
        factorial *= k;
        ch.push_back(p[k - 1] * (Rational(1) / factorial));
    }
    return ch;
}

// ch_1..ch_cap -> c_1..c_cap (virtual bundles allowed; the rank never enters).
template <class E>
std::vector<E> character_to_chern(const std::vector<E>& ch, const E& zero) {
    const int cap = static_cast<int>(ch.size());
    std::vector<E> p;
    p.reserve(cap);
    Rational factorial(1);
    for (int k = 1; k <= cap; ++k) {
        factorial *= k;
        p.push_back(ch[k - 1] * factorial);
    }
    std::vector<E> e;  // e[k-1] = c_k
    for (int k = 1; k <= cap; ++k) {
        // k e_k = sum_{i=1}^{k} (-1)^{i-1} p_i e_{k-i}
        E acc = zero;
        for (int i = 1; i <= k; ++i) {
            E term = (i == k) ? p[i - 1] : p[i - 1] * e[k - i - 1];
            if (i % 2 == 0) term = -term;
            acc += term;
        }
        e.push_back(acc * Rational(1, k));
    }
    return e;
}

// c_r = a_r (x) 1 + sum_j b_r^j (x) alpha_j + f_r (x) omega for r = 1..n.
// a, f are sized n (f[0] is the scalar degree); b is n x 2g.
std::vector<SigmaClass> assemble_universal_chern(const std::vector<GradedElement>& a,
                                                 const std::vector<std::vector<GradedElement>>& b,
                                                 const std::vector<GradedElement>& f, int n, int g);

}  // namespace bundlecoh

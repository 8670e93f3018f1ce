#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bundlecoh/graded.hpp"

namespace bundlecoh {

// Truncated polynomial/power series in a bookkeeping variable t with
// coefficients in a graded ring. Powers above t_cap are discarded by
// contract. E must provide +=, -=, *, * Rational, is_zero().
template <class E>
class TSeriesT {
  public:
    TSeriesT() = default;
    TSeriesT(E zero, int t_cap) : zero_(std::move(zero)), t_cap_(t_cap) {}

    int t_cap() const { return t_cap_; }
    const E& zero_elem() const { return zero_; }

    const E& coeff(int r) const {
        static const E* dummy = nullptr;
        (void)dummy;
        if (r < 0 || r >= static_cast<int>(c_.size())) return zero_;
        return c_[r];
    }

    void set_coeff(int r, E v) {
        if (r < 0 || r > t_cap_) return;
        if (r >= static_cast<int>(c_.size())) c_.resize(r + 1, zero_);
        c_[r] = std::move(v);
    }

    int max_power() const {
        for (int r = static_cast<int>(c_.size()) - 1; r >= 0; --r)
            if (!c_[r].is_zero()) return r;
        return -1;
    }

    bool is_zero() const { return max_power() < 0; }

    TSeriesT& operator+=(const TSeriesT& o) {
        for (int r = 0; r <= o.max_power(); ++r) {
            if (o.coeff(r).is_zero()) continue;
            set_coeff(r, coeff(r) + o.coeff(r));
        }
        return *this;
    }
    TSeriesT& operator-=(const TSeriesT& o) {
        for (int r = 0; r <= o.max_power(); ++r) {
            if (o.coeff(r).is_zero()) continue;
            set_coeff(r, coeff(r) - o.coeff(r));
        }
        return *this;
    }
    friend TSeriesT operator+(TSeriesT a, const TSeriesT& b) { return a += b; }
    friend TSeriesT operator-(TSeriesT a, const TSeriesT& b) { return a -= b; }

    TSeriesT operator*(const TSeriesT& o) const {
        TSeriesT r(zero_, t_cap_);
        int ma = max_power(), mb = o.max_power();
        if (ma < 0 || mb < 0) return r;
        r.c_.assign(std::min(t_cap_, ma + mb) + 1, zero_);
        for (int i = 0; i <= ma; ++i) {
            if (c_[i].is_zero()) continue;
            for (int j = 0; j <= mb && i + j <= t_cap_; ++j) {
                if (o.c_[j].is_zero()) continue;
                r.c_[i + j] += c_[i] * o.c_[j];
            }
        }
        return r;
    }
    TSeriesT& operator*=(const TSeriesT& o) { return *this = *this * o; }

    TSeriesT operator*(const Rational& q) const {
        TSeriesT r(zero_, t_cap_);
        for (int i = 0; i <= max_power(); ++i) r.set_coeff(i, c_[i] * q);
        return r;
    }
    TSeriesT operator*(const E& x) const {
        TSeriesT r(zero_, t_cap_);
        for (int i = 0; i <= max_power(); ++i) r.set_coeff(i, c_[i] * x);
        return r;
    }
    TSeriesT operator-() const {
        TSeriesT r(zero_, t_cap_);
        for (int i = 0; i <= max_power(); ++i) r.set_coeff(i, -c_[i]);
        return r;
    }

    bool operator==(const TSeriesT& o) const {
        int m = std::max(max_power(), o.max_power());
        for (int r = 0; r <= m; ++r)
            if (!(coeff(r) - o.coeff(r)).is_zero()) return false;
        return true;
    }

    // t d/dt shifted down: coefficient of t^r maps to r*(that) at t^{r-1}.
    TSeriesT ddt() const {
        TSeriesT r(zero_, t_cap_);
        for (int i = 1; i <= max_power(); ++i) r.set_coeff(i - 1, c_[i] * Rational(i));
        return r;
    }

    TSeriesT pow(int k) const {
        if (k < 0) throw std::invalid_argument("TSeries::pow expects k >= 0");
        TSeriesT r = one_like(*this);
        TSeriesT base = *this;
        while (k > 0) {
            if (k & 1) r = r * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return r;
    }

    // Requires an invertible constant coefficient (unit + nilpotent in E).
    TSeriesT reciprocal() const;

    // Truncate to a lower cap (or raise the cap, keeping coefficients).
    TSeriesT with_cap(int new_cap) const {
        TSeriesT r(zero_, new_cap);
        for (int i = 0; i <= std::min(new_cap, max_power()); ++i) r.set_coeff(i, c_[i]);
        return r;
    }

    static TSeriesT one_like(const TSeriesT& model);

  private:
    E zero_;
    std::vector<E> c_;
    int t_cap_ = 0;
};

using TSeries = TSeriesT<GradedElement>;

template <>
inline TSeries TSeries::one_like(const TSeries& model) {
    TSeries r(model.zero_elem(), model.t_cap());
    r.set_coeff(0, GradedElement::constant(model.zero_elem().ring(), 1));
    return r;
}

template <>
inline TSeries TSeries::reciprocal() const {
    GradedElement c0 = coeff(0);
    GradedElement inv0 = c0.inverse();  // throws on non-unit
    TSeries r(zero_elem(), t_cap());
    r.set_coeff(0, inv0);
    for (int n = 1; n <= t_cap(); ++n) {
        GradedElement acc(zero_elem().ring());
        for (int k = 1; k <= n; ++k) {
            if (coeff(k).is_zero() || r.coeff(n - k).is_zero()) continue;
            acc += coeff(k) * r.coeff(n - k);
        }
        r.set_coeff(n, -(inv0 * acc));
    }
    return r;
}

// log(1+u) for u with zero constant coefficient.
template <class E>
TSeriesT<E> log1p_series(const TSeriesT<E>& u) {
    if (!u.coeff(0).is_zero()) throw std::invalid_argument("log1p needs zero constant coefficient");
    TSeriesT<E> r(u.zero_elem(), u.t_cap());
    TSeriesT<E> p = TSeriesT<E>::one_like(u);
    for (int k = 1; k <= u.t_cap(); ++k) {
        p = p * u;
        if (p.is_zero()) break;
        Rational c(1, k);
        if (k % 2 == 0) c = -c;
        r += p * c;
    }
    return r;
}

// exp(v) for v with zero constant coefficient (each coefficient may still be
// a nonzero nilpotent ring element only for t^0; that is excluded here).
template <class E>
TSeriesT<E> exp_series(const TSeriesT<E>& v) {
    if (!v.coeff(0).is_zero()) throw std::invalid_argument("exp_series needs zero constant coefficient");
    TSeriesT<E> r = TSeriesT<E>::one_like(v);
    TSeriesT<E> inc = r;
    for (int k = 1; k <= v.t_cap(); ++k) {
        inc = inc * v;
        if (inc.is_zero()) break;
        inc = inc * Rational(1, k);
        r += inc;
    }
    return r;
}

// (1+u)^(m+w) := (1+u)^m * exp(w*log(1+u)) for u with zero constant
// coefficient and w a nilpotent even ring element; negative m goes through
// the series reciprocal.
TSeries binomial_power(const TSeries& u, long m, const GradedElement& w);

}  // namespace bundlecoh

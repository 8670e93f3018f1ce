#pragma once

#include <map>
#include <string>
#include <vector>

#include "bundlecoh/rational.hpp"
#include "bundlecoh/strata.hpp"

namespace bundlecoh {

// Integer power series in t, exact up to t_cap.
class IntSeries {
  public:
    IntSeries() = default;
    explicit IntSeries(int t_cap) : cap_(t_cap) {}
    static IntSeries one(int t_cap);
    static IntSeries monomial(int t_cap, int power, const Int& c = 1);

    int t_cap() const { return cap_; }
    Int coeff(int r) const {
        return (r < 0 || r >= static_cast<int>(c_.size())) ? Int(0) : c_[r];
    }
    void set_coeff(int r, Int v);
    int degree() const;  // largest nonzero power, -1 for zero

    IntSeries& operator+=(const IntSeries& o);
    IntSeries& operator-=(const IntSeries& o);
    friend IntSeries operator+(IntSeries a, const IntSeries& b) { return a += b; }
    friend IntSeries operator-(IntSeries a, const IntSeries& b) { return a -= b; }
    IntSeries operator*(const IntSeries& o) const;
    IntSeries operator-() const;
    bool operator==(const IntSeries& o) const;

    // (1 + t^m)^e and division by (1 - t^m) (multiplication by the geometric
    // series); both exact under the cap.
    IntSeries& mul_one_plus_tm_pow(int m, int e);
    IntSeries& div_one_minus_tm(int m);
    IntSeries& mul_tm(int m);  // shift

    bool is_polynomial_of_degree(int deg) const;  // no nonzero coeffs above deg, coeff(deg) != 0
    bool is_palindromic(int deg) const;
    bool nonnegative() const;

    std::vector<Int> coefficients(int upto) const;
    std::string str(int upto = -1) const;

  private:
    std::vector<Int> c_;
    int cap_ = 0;
};

// Poincare series of the classifying space of the gauge group of rank n:
// free graded algebra on a_r (deg 2r, r=1..n), b_r^j (deg 2r-1, 2g each),
// f_r (deg 2r-2, r=2..n). Computed from generator degrees.
IntSeries p_gauge(int n, int g, int t_cap);

// Equivariant Poincare series of the semistable stratum via the inductive
// stratum-sum identity, memoized per (rank, degree mod rank).
class BettiCache {
  public:
    explicit BettiCache(int g, int t_cap) : g_(g), cap_(t_cap) {}
    IntSeries p_semistable(long n, long d);
    IntSeries p_moduli(long n, long d);  // requires gcd(n,d) = 1

    int genus() const { return g_; }
    int t_cap() const { return cap_; }

  private:
    int g_;
    int cap_;
    std::map<std::pair<long, long>, IntSeries> memo_;
};

IntSeries p_semistable(long n, long d, int g, int t_cap);
IntSeries p_moduli(long n, long d, int g, int t_cap);

// Real dimension 2(n^2(g-1) + 1) of the moduli space.
long moduli_dimension(long n, int g);

// Poincare polynomial of the partial flag variety of type (j_1..j_m):
// prod_{i=1}^n (1-t^{2i}) / prod_k prod_{i=1}^{j_k} (1-t^{2i}).
IntSeries p_flag(const std::vector<int>& multiplicities, int t_cap);

// Closed-formula diagnostic, evaluated under the printed reading. Exponents
// may be fractional; the series is returned in u = t^(1/denom).
struct ClosedFormula {
    int denom = 1;  // u = t^(1/denom)
    IntSeries series_u;
    bool integral_exponents = true;
    Int coeff_t(const Rational& power) const;  // coefficient of t^power
};
ClosedFormula p_closed(long n, long d, int g, int t_cap);

// Agreement report of p_closed against p_moduli (diagnostic only).
struct ClosedComparison {
    bool agree = false;
    bool has_difference = false;
    Rational first_diff_power;  // power of t of the first differing coefficient
    Int closed_value;
    Int inductive_value;
};
ClosedComparison compare_closed_vs_moduli(long n, long d, int g, int t_cap);

}  // namespace bundlecoh

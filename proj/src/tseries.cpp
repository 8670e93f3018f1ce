#include "bundlecoh/tseries.hpp"

namespace bundlecoh {

TSeries binomial_power(const TSeries& u, long m, const GradedElement& w) {
    if (!u.coeff(0).is_zero())
        throw std::invalid_argument("binomial_power: u needs zero constant coefficient");
    TSeries one = TSeries::one_like(u);
    TSeries base = one + u;
    TSeries integer_part = one;
    if (m >= 0) {
        integer_part = base.pow(static_cast<int>(m));
    } else {
        integer_part = base.reciprocal().pow(static_cast<int>(-m));
    }
    if (w.is_zero()) return integer_part;
    TSeries lg = log1p_series(u) * w;
    return integer_part * exp_series(lg);
}

}  // namespace bundlecoh

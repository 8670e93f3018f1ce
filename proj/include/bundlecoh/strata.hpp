#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bundlecoh/rational.hpp"

namespace bundlecoh {

// Harder-Narasimhan type: blocks (n_i, d_i) with strictly decreasing slopes
// d_i/n_i, sum n_i = n, sum d_i = d.
struct HNType {
    std::vector<std::pair<long, long>> blocks;  // (rank, degree)

    long rank() const;
    long degree() const;
    bool is_semistable() const { return blocks.size() == 1; }
    bool valid() const;  // strictly decreasing slopes, positive ranks

    // Length-n slope vector (slope of block i repeated n_i times).
    std::vector<Rational> slope_vector() const;

    // Vertices (0,0), (n_1,d_1), (n_1+n_2,d_1+d_2), ..., (n,d).
    std::vector<std::pair<long, long>> polygon() const;

    bool operator==(const HNType&) const = default;
};

struct CoarseType {
    long n1 = 0, d1 = 0;  // first HN block
    long n = 0, d = 0;    // ambient rank/degree
};

// d_mu = sum_{i>j} (n_i d_j - n_j d_i + n_i n_j (g-1)).
long codim_mu(const HNType& mu, int g);

// delta_{n_1,d_1} = n d_1 - n_1 d + n_1 (n - n_1)(g-1); requires 0 < n_1 < n.
long coarse_codim(const CoarseType& ct, int g);

// All HN types of (n,d) with codim_mu <= codim_cap, semistable type included.
std::vector<HNType> enumerate_hn_types(long n, long d, int g, long codim_cap);

struct TypeOrder {
    std::optional<bool> leq;  // mu <= nu in the partial order; nullopt = incomparable
    bool preceq = false;      // mu precedes-or-equals nu in the total order
};

// Partial order by partial sums of slope vectors; lexicographic total order.
TypeOrder type_orders(const HNType& mu, const HNType& nu);

}  // namespace bundlecoh

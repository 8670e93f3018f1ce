#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bundlecoh/rational.hpp"

namespace bundlecoh {

// Parabolic data at one marked point: weights 0 <= alpha_1 < ... < alpha_m < 1
// with positive multiplicities summing to the rank.
struct ParabolicData {
    long n = 0;
    long d = 0;
    std::vector<Rational> weights;
    std::vector<long> mults;

    void validate() const;
    int m() const { return static_cast<int>(weights.size()); }
};

struct SubParabolicData {
    long nhat = 0;
    long dhat = 0;
    std::vector<long> jhat;  // 0 <= jhat_k <= j_k, sum = nhat

    void validate(const ParabolicData& pd) const;
};

// pardeg(E) = d + sum alpha_k j_k and the parabolic slope pardeg/n.
std::pair<Rational, Rational> par_degree_slope(const ParabolicData& pd);
Rational par_slope(long n, long d, const std::vector<Rational>& weights,
                   const std::vector<long>& mults);

// Rank of the parabolic-Hom pushforward:
// n nhat (g-1) + dhat n - d nhat + sum_{l=2}^m (j_1+...+j_{l-1}) jhat_l.
long par_rank_formula(const ParabolicData& pd, const SubParabolicData& sub, int g);

// Open window n nhat(g-1) < r - dhat n + d nhat - correction < n nhat(g+1).
struct ParWindow {
    long first = 0, last = 0;
    long width() const { return last < first ? 0 : last - first + 1; }
};
ParWindow par_relation_window(const ParabolicData& pd, const SubParabolicData& sub, int g);

// Good-data detection per the strict slope window; also checks the top-level
// data itself for semistable = stable. Witnesses identify the equal-slope
// solutions found; `margin` is the minimal distance-to-integrality among all
// failed equalities (stability margin of the verdict under weight
// perturbation).
struct GoodDataWitness {
    long nhat = 0;
    long dhat = 0;
    std::vector<long> jhat;
    bool top_level = false;       // witness against the full (n,d) data
    std::vector<long> inner_k;    // inner sub-multiplicities (windowed case)
    long inner_rank = 0;
    long inner_degree = 0;
};
struct GoodDataReport {
    bool good = false;
    std::vector<GoodDataWitness> witnesses;
    std::optional<Rational> margin;
};
GoodDataReport good_data_check(const ParabolicData& pd);

// Weight count of §8: sum_{l=2}^n |J cap {l..n}| - sum_{k=2}^m (j_1+...+j_{k-1}) jhat_k,
// with jhat derived from J by blocks. J holds 1-based indices in {1..n}.
long weight_degree_count(const std::vector<int>& J, const std::vector<long>& mults);

// Helper for the documented generic perturbation: alpha_k += k/N.
ParabolicData perturb_weights(const ParabolicData& pd, long N);

}  // namespace bundlecoh

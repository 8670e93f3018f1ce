#pragma once

#include <map>
#include <optional>
#include <string>

#include "bundlecoh/sigma.hpp"
#include "bundlecoh/tseries.hpp"

namespace bundlecoh {

// Raised when a requested coefficient is not determined by the caps.
struct CapError : std::runtime_error {
    int minimal_degree_cap;
    int minimal_t_cap;
    CapError(const std::string& what, int min_deg, int min_t)
        : std::runtime_error(what), minimal_degree_cap(min_deg), minimal_t_cap(min_t) {}
};

struct Caps {
    int degree_cap = 0;
    int t_cap = 0;
};

// Generator handles of one universal bundle inside a shared ring. f_1 is the
// scalar `degree`; f holds f_2..f_n.
struct BundleGens {
    int rank = 0;
    long degree = 0;
    int genus = 0;
    std::vector<GradedElement> a;                // a_1..a_n
    std::vector<std::vector<GradedElement>> b;   // b[r-1][j-1], r = 1..n, j = 1..2g
    std::vector<GradedElement> f;                // f_2..f_n

    std::vector<SigmaClass> chern_classes() const;
    // Inhomogeneous Chern character up to total degree 2*cap, including ch_0.
    SigmaClass character(int cap) const;
};

// Layout of one bundle's generators in a ring spec under construction.
struct BundleLayout {
    int rank = 0;
    long degree = 0;
    std::vector<int> a_idx;
    std::vector<std::vector<int>> b_idx;
    std::vector<int> f_idx;  // r = 2..n
};

// Appends generators named <prefix>a<r>, <prefix>b<r>_<j>, <prefix>f<r>.
BundleLayout add_bundle_generators(std::vector<GeneratorSpec>& gens, const std::string& prefix,
                                   int rank, long degree, int genus);
BundleGens bind_bundle(const RingPtr& ring, const BundleLayout& layout, int genus);

// Convenience: one ring holding a hat bundle (generators first) and a main
// bundle, as needed for the slant-product tables.
struct RelationRing {
    RingPtr ring;
    BundleGens hat;
    BundleGens main;
    int hat_gen_count = 0;  // hat generators occupy indices [0, hat_gen_count)
};
RelationRing make_relation_ring(int n, long d, int nhat, long dhat, int g, int degree_cap);

// rank of -pi_!(hat V^* (x) V) = n nhat (g-1) - d nhat + dhat n; requires
// dhat/nhat > d/n.
long virtual_rank(long n, long d, long nhat, long dhat, int g);

// Open window n nhat (g-1) - d nhat + dhat n < r < n nhat (g+1) - d nhat + dhat n.
struct IntRange {
    long first = 0, last = 0;  // inclusive; empty if last < first
    long width() const { return last < first ? 0 : last - first + 1; }
};
IntRange relation_window(long n, long d, long nhat, long dhat, int g);

// Equivariant Chern polynomial c(-pi_!(hat V^* (x) V))(t) through GRR and the
// Newton conversions. `twist_omega` tensors the hat bundle by a line bundle
// with c_1 = twist_omega * omega before dualizing.
TSeries grr_minus_pi(const BundleGens& main, const BundleGens& hat, const Caps& caps,
                     long twist_omega = 0);

// Chern polynomial of hat V^* (x) V restricted over a point of Sigma
// (a-classes only); polynomial of degree n*nhat in t.
TSeries omega_poly(const BundleGens& main, const BundleGens& hat, const Caps& caps);

// Tail of Omega(t)^2 c'(t) c(t)^{-1} beyond degree 2 n nhat - 1 (zero by the
// recurrence); returned as the coefficients [2 n nhat, t_cap].
TSeries recurrence_residual(const BundleGens& main, const BundleGens& hat, const Caps& caps);

bool shift_identity_check(const BundleGens& main, const BundleGens& hat, long delta,
                          const Caps& caps);

// Kunneth coefficient table of the t^r coefficient over hat-ring monomials:
// c_r = sum_m (hat monomial m) (x) table[m]. Requires a ring in which the hat
// generators precede the main generators.
using KunnethTable = std::map<Monomial, GradedElement, MonomialLex>;
KunnethTable kunneth_components(const TSeries& c, int r, int hat_gen_count);

// Re-tensors a table into the ambient element (roundtrip check helper).
GradedElement kunneth_reassemble(const RingPtr& ring, const KunnethTable& table);

struct Normalization {
    long u = 0, v = 0;
    GradedElement relation;  // u a_1 + v c_1(pi_! V)
};
// Extended-gcd pair with u n + v (d - n(g-1)) = 1 and |u| minimal (ties:
// positive v), plus the normalization relation element in the main ring.
Normalization normalization_coeffs(int n, long d, int g);

// Equivariant Euler class of the coarse stratum with sub-data (nhat, dhat)
// and quotient data (n2, d2): top Chern class of -pi_!(hat V_1^* (x) V_2).
GradedElement euler_class(int nhat, long dhat, int n2, long d2, int g, const Caps& caps);

}  // namespace bundlecoh

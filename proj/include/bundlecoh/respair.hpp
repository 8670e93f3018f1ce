#pragma once

#include <map>

#include "bundlecoh/relgen.hpp"

namespace bundlecoh {

// ---------------------------------------------------------------------------
// Split hat ring: the hat bundle restricted to a direct sum of line bundles.
// Block l carries ahat_1^l (deg 2), zeta^{s,l} (odd, deg 1, s = 1..2g) and an
// integer degree dhat_l.
// ---------------------------------------------------------------------------
struct SplitBlocks {
    int nhat = 0;
    int g = 0;
    std::vector<int> a_idx;                  // [l]
    std::vector<std::vector<int>> zeta_idx;  // [l][s-1]
    std::vector<long> degrees;               // [l]
};

struct SplitRelationRing {
    RingPtr ring;
    SplitBlocks hat;
    BundleGens main;

    BundleGens block_bundle(int l) const;  // rank-1 hat data of block l
};

// Ring with main (n,d) generators and nhat split blocks; zeta generators are
// ordered last so Berezin extraction needs no reordering signs. `eps_order`
// > 0 additionally adds formal parameters eps_2..eps_nhat.
SplitRelationRing make_split_ring(int n, long d, int nhat, std::vector<long> degrees, int g,
                                  int degree_cap, int eps_order = 0);

// Images of the unsplit hat generators under restriction to the torus,
// determined by c(hat V)(t) -> prod_l c(hat V_l)(t). Index-aligned with
// src.ring's generators; main generators map to themselves.
std::vector<GradedElement> torus_restriction_images(const RelationRing& src,
                                                    const SplitRelationRing& dst);
GradedElement torus_restrict_hat(const GradedElement& x, const RelationRing& src,
                                 const SplitRelationRing& dst);
TSeries torus_restrict_hat(const TSeries& s, const RelationRing& src,
                           const SplitRelationRing& dst);

// prod_l c(-pi_!(hat V_l^* (x) V))(t): the split Chern polynomial, computed
// blockwise through GRR.
TSeries split_chern_poly(const SplitRelationRing& SR, const Caps& caps);

// Diagnostic: the closed product form over (k,l) evaluated in fully split
// main coordinates delta_1..delta_n with d delta_k / d a_i given by the
// closed Vandermonde formula; must clear all denominators and agree with
// split_chern_poly after a_r -> sigma_r(delta). Supported for n <= 3.
TSeries split_chern_poly_diagnostic(const SplitRelationRing& SR, const Caps& caps);

// Symbolic check that the closed derivative formula inverts the Jacobian of
// the elementary symmetric polynomials: sum_k (d sigma_i / d delta_k)
// (d delta_k / d a_j) = delta_ij.
bool vandermonde_jacobian_check(int n);
// Maps x (or a series) from SR.ring into the diagnostic split-main ring.
TSeries to_split_main(const TSeries& s, const SplitRelationRing& SR, const RingPtr& split_main);
RingPtr make_split_main_ring(const SplitRelationRing& SR, int degree_cap);

// ---------------------------------------------------------------------------
// Weight vectors and the fundamental domain for the coroot lattice.
// ---------------------------------------------------------------------------
using WeightVector = std::vector<Rational>;  // X coordinates, sum zero

// Unique translate with simple-coroot coordinates in [0,1); makes the
// exponents dhat/nhat - [[w chat]]_l integral.
WeightVector fundamental_domain(const WeightVector& gamma);

// chat = [[(dhat/nhat, ..., dhat/nhat, dhat/nhat - dhat)]].
WeightVector hat_weight_vector(int nhat, long dhat);

// ---------------------------------------------------------------------------
// Berezin integration over the hat torus factors.
// ---------------------------------------------------------------------------
// Coefficient of the full ordered top zeta monomial, scaled so that
// exp(sum_s sum_l zeta^{s,l} zeta^{s+g,l}) integrates to nhat^g;
// `orientation` flips the residual global sign.
GradedElement berezin_integral(const GradedElement& x, const SplitBlocks& hat,
                               int orientation = +1);

// ---------------------------------------------------------------------------
// Laurent series in the simple-root variables Y_1..Y_m with TSeries
// coefficients. Exponent windows are fixed up front from the pole budget;
// products falling outside are discarded (they cannot reach a residue).
// Expansion priority: lower-index variables dominate, i.e. 1/(Y_i + Y_j)
// with i < j expands in powers of Y_j / Y_i.
// ---------------------------------------------------------------------------
class LaurentSeries {
  public:
    LaurentSeries() = default;
    LaurentSeries(std::vector<int> lo, std::vector<int> hi, TSeries zero);

    static LaurentSeries constant(const std::vector<int>& lo, const std::vector<int>& hi,
                                  TSeries value);

    int nvars() const { return static_cast<int>(lo_.size()); }
    const std::vector<int>& lo() const { return lo_; }
    const std::vector<int>& hi() const { return hi_; }
    const TSeries& zero_ts() const { return zero_; }
    bool is_zero() const;

    const std::map<std::vector<int>, TSeries>& terms() const { return terms_; }
    TSeries coeff(const std::vector<int>& yexp) const;
    void add_to(const std::vector<int>& yexp, const TSeries& v);  // window-clipped

    LaurentSeries& operator+=(const LaurentSeries& o);
    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator*(const Rational& q) const;
    LaurentSeries operator-() const;

    // exp for arguments whose coefficients are nilpotent (no unit part).
    LaurentSeries exp_nilpotent(int iter_bound) const;

    // (c_k Y_k + ... + c_m Y_m)^{-p}, k = lowest nonzero index dominating.
    static LaurentSeries linear_form_inverse_pow(const std::vector<Rational>& coeffs, int p,
                                                 const std::vector<int>& lo,
                                                 const std::vector<int>& hi, const TSeries& one);
    // Y-polynomial from rational coefficients: sum_a coeffs[a] Y_a, raised to e.
    static LaurentSeries linear_form_pow(const std::vector<Rational>& coeffs, int e,
                                         const std::vector<int>& lo, const std::vector<int>& hi,
                                         const TSeries& one);

    // Coefficient of Y_last^{-1} as a Laurent series in the remaining
    // variables (innermost residue).
    LaurentSeries residue_last() const;

  private:
    std::vector<int> lo_, hi_;
    TSeries zero_;
    std::map<std::vector<int>, TSeries> terms_;
};

// Residues applied innermost-first: Res_{Y_m}, then Y_{m-1}, ..., Y_1.
TSeries iterated_residue(const LaurentSeries& e);

// Substitutes ahat_1^{slot_blocks[l]} -> sum_a xcoef[l][a] Y_a in every
// coefficient of `s`; all other generators pass through.
LaurentSeries substitute_hat_coordinates(const TSeries& s, const SplitRelationRing& SR,
                                         const std::vector<int>& slot_blocks,
                                         const std::vector<std::vector<Rational>>& xcoef,
                                         const std::vector<int>& lo, const std::vector<int>& hi);

// X_l as rational combinations of Y_1..Y_{nhat-1} on the trace-zero torus.
std::vector<std::vector<Rational>> x_in_y_coordinates(int nhat);

// Normalized expansion of t * (prod_k (1+(delta_k - X_{l+1}) t)/(1+(delta_k
// - X_l) t) - 1)^{-1}: carries one power of t so all t-exponents stay
// nonnegative; the simple pole in Y_l is explicit.
LaurentSeries denominator_expand(const SplitRelationRing& SR, int l,
                                 const std::vector<int>& slot_blocks,
                                 const std::vector<std::vector<Rational>>& xcoef,
                                 const std::vector<int>& lo, const std::vector<int>& hi,
                                 int t_cap, int geom_order);

// Multiplies the expansion back by the original factor and checks the result
// is t * (unit), exactly under the caps.
bool denominator_reciprocal_check(const SplitRelationRing& SR, int l, int t_cap);

// ---------------------------------------------------------------------------
// Intersection pairings.
// ---------------------------------------------------------------------------
struct PairingOptions {
    int orientation = +1;            // Berezin orientation flag
    std::vector<int> relabel;        // block relabeling (size nhat); empty = identity
};

// integral over M(nhat,dhat) of Phi(eta * c(-pi_!(hat V^* (x) V))(t)) as a
// t-series with values in the main ring. eta is a polynomial in the unsplit
// hat generators ahat_r, bhat_r^j (no fhat), given over `eta_ring`.
TSeries pairing_thm_10_2(const GradedElement& eta, const RelationRing& eta_ring, int n, long d,
                         int nhat, long dhat, int g, const Caps& caps,
                         const PairingOptions& opts = {});

// q-deformed pairing: integral of Phi(exp(eps_2 fhat_2 + ... ) prod ahat_r^{m_r}
// prod (bhat_r^{k})^{p_{r,k}} c(...)(t)) as a formal series in eps. The result
// collects the eps-multidegree slices; slice 0 is the undeformed value.
struct EpsSlice {
    std::vector<int> eps_exponents;  // exponent of eps_2..eps_nhat
    TSeries value;
};
std::vector<EpsSlice> pairing_thm_10_3(const std::vector<int>& m_exps,
                                       const std::vector<std::vector<int>>& p_flags, int n, long d,
                                       int nhat, long dhat, int g, const Caps& caps, int eps_order,
                                       const PairingOptions& opts = {});

}  // namespace bundlecoh

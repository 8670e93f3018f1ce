#pragma once

#include <functional>
#include <vector>

#include "bundlecoh/termmap.hpp"

namespace bundlecoh {

// Sparse element of a free graded-commutative algebra over Q. Terms above the
// ring's degree/aux caps are silently discarded: truncation is a contract,
// not an error. No zero coefficients are stored.
class GradedElement {
  public:
    using TermMap = FlatTermMap;

    GradedElement() = default;
    explicit GradedElement(RingPtr ring) : ring_(std::move(ring)) {}

    static GradedElement zero(RingPtr ring) { return GradedElement(std::move(ring)); }
    static GradedElement constant(RingPtr ring, const Rational& c);
    static GradedElement generator(RingPtr ring, int index);
    static GradedElement generator(RingPtr ring, const std::string& name);
    static GradedElement monomial_term(RingPtr ring, const Monomial& m, const Rational& c);

    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rational coefficient(const Monomial& m) const;
    Rational constant_term() const;

    void add_term(const Monomial& m, const Rational& c);  // respects caps

    GradedElement& operator+=(const GradedElement& o);
    GradedElement& operator-=(const GradedElement& o);
    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
    GradedElement operator-() const;
    GradedElement operator*(const GradedElement& o) const;
    GradedElement operator*(const Rational& c) const;
    GradedElement& operator*=(const GradedElement& o) { return *this = *this * o; }
    GradedElement& operator*=(const Rational& c);
    bool operator==(const GradedElement& o) const;

    // Grading utilities.
    int min_degree() const;  // of a nonzero element
    int max_degree() const;
    bool is_homogeneous(int* degree_out = nullptr) const;
    GradedElement degree_part(int degree) const;
    GradedElement parity_part(int parity) const;  // terms with degree % 2 == parity
    GradedElement aux_part(const std::vector<int>& eps_exponents,
                           const std::vector<int>& eps_gens) const;

    // Power with nonnegative integer exponent.
    GradedElement pow(int k) const;

    // Series exponential/logarithm; exact under the caps because the
    // arguments are nilpotent. exp needs zero constant term; log needs
    // constant term 1.
    friend GradedElement exp(const GradedElement& x);
    friend GradedElement log(const GradedElement& x);

    // Inverse of unit + nilpotent (nonzero constant term required).
    GradedElement inverse() const;

    // d/d(gen) for an even generator.
    GradedElement partial_derivative(int gen_index) const;

    // Substitutes gen i -> images[i]; images live in `dst`. Odd generators
    // must map to odd elements, even to even.
    GradedElement substitute(const RingPtr& dst, const std::vector<GradedElement>& images) const;

    // Re-expresses this element in `dst` where `index_map[i]` gives the dst
    // index of source generator i. The map must be strictly increasing on odd
    // generators (no Koszul sign is introduced).
    GradedElement map_generators(const RingPtr& dst, const std::vector<int>& index_map) const;

    // Applies a degree/parity-preserving generator permutation (same ring),
    // with the Koszul sign from reordering odd generators.
    GradedElement permute_generators(const std::vector<int>& perm) const;

    // Deterministic order for printing/serialization: by (degree, lex).
    std::vector<std::pair<Monomial, Rational>> sorted_terms() const;
    std::string str() const;

  private:
    RingPtr ring_;
    TermMap terms_;
};

inline GradedElement operator*(const Rational& c, const GradedElement& x) { return x * c; }

// (1/|W|) sum_w sign_w * w(x) for a family of signed generator permutations.
struct SignedPermutation {
    std::vector<int> perm;  // generator index map
    int sign = 1;
};
GradedElement antisymmetrize(const GradedElement& x, const std::vector<SignedPermutation>& action);

// All permutations of m block labels acting on a ring whose generators are
// grouped in `blocks` (blocks[l] lists generator indices of block l, in
// matching order across blocks), with sign = permutation sign. Generators
// outside the blocks are fixed.
std::vector<SignedPermutation> block_permutation_action(const RingPtr& ring,
                                                        const std::vector<std::vector<int>>& blocks,
                                                        bool signed_action = true);

}  // namespace bundlecoh

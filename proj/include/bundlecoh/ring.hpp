#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bundlecoh/rational.hpp"

namespace bundlecoh {

enum class Parity { even, odd };

// One generator of a free graded-commutative algebra. `degree` is the
// cohomological degree; odd generators square to zero and anticommute.
// `aux_weight` is a secondary truncation weight used for formal parameters
// (degree-0 bookkeeping variables such as deformation coefficients).
struct GeneratorSpec {
    std::string name;
    int degree = 0;
    Parity parity = Parity::even;
    int aux_weight = 0;

    static GeneratorSpec even_gen(std::string name, int degree) {
        return {std::move(name), degree, Parity::even, 0};
    }
    static GeneratorSpec odd_gen(std::string name, int degree) {
        return {std::move(name), degree, Parity::odd, 0};
    }
    static GeneratorSpec formal(std::string name) {  // degree 0, aux weight 1
        return {std::move(name), 0, Parity::even, 1};
    }
};

// Monomial in packed canonical form. Odd generators live in a bitmask
// (exponent 0/1); even exponents are fixed-width bitfields in generator
// order. `degree`/`aux` are carried so cap checks stay O(1).
struct Monomial {
    std::uint64_t odd = 0;
    std::array<std::uint64_t, 2> even{0, 0};
    std::int32_t degree = 0;
    std::int32_t aux = 0;

    bool operator==(const Monomial&) const = default;
    bool is_unit() const { return odd == 0 && even[0] == 0 && even[1] == 0; }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::uint64_t h = m.odd * 0x9e3779b97f4a7c15ull;
        h ^= m.even[0] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= m.even[1] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

// Immutable generator table plus packing layout and truncation caps. Values
// built over a Ring are safe to share between threads.
class Ring {
  public:
    Ring(std::vector<GeneratorSpec> gens, int degree_cap, int aux_cap = 0);

    static std::shared_ptr<const Ring> make(std::vector<GeneratorSpec> gens, int degree_cap,
                                            int aux_cap = 0) {
        return std::make_shared<const Ring>(std::move(gens), degree_cap, aux_cap);
    }

    int size() const { return static_cast<int>(gens_.size()); }
    const GeneratorSpec& gen(int i) const { return gens_[i]; }
    const std::vector<GeneratorSpec>& generators() const { return gens_; }
    int degree_cap() const { return degree_cap_; }
    int aux_cap() const { return aux_cap_; }
    int find(const std::string& name) const;  // -1 if absent

    Monomial unit() const { return Monomial{}; }
    Monomial generator_monomial(int i) const;

    // Packs an exponent vector (size() entries). Throws if exponents violate
    // parity or exceed packing widths; returns false when over the caps.
    bool pack(const std::vector<int>& exps, Monomial& out) const;
    std::vector<int> unpack(const Monomial& m) const;

    // out = a*b up to Koszul sign; returns 0 if the product vanishes (odd
    // square) or is discarded by the caps, else the sign (+1/-1).
    int mul(const Monomial& a, const Monomial& b, Monomial& out) const;

    // Exponent of generator i in m.
    int exponent(const Monomial& m, int i) const;

    // Divides m by generator i once; false if exponent is zero.
    bool divide_by_gen(const Monomial& m, int i, Monomial& out) const;

    // Lexicographic order on exponent vectors (generator 0 most significant);
    // used only for deterministic serialization.
    bool lex_less(const Monomial& a, const Monomial& b) const;

    std::string monomial_string(const Monomial& m) const;

  private:
    struct Field {
        int word = 0;
        int shift = 0;
        std::uint64_t mask = 0;  // unshifted
        int odd_bit = -1;        // >=0 for odd generators
    };

    std::vector<GeneratorSpec> gens_;
    std::vector<Field> fields_;
    int degree_cap_ = 0;
    int aux_cap_ = 0;
};

using RingPtr = std::shared_ptr<const Ring>;

// Deterministic monomial order (degree, then lex) for serialization and maps.
struct MonomialLex {
    const Ring* ring = nullptr;
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.degree != b.degree) return a.degree < b.degree;
        return ring->lex_less(a, b);
    }
};

// Koszul sign for merging two ascending odd index sets given as bitmasks:
// (-1)^{#inversions}. Assumes (a & b) == 0.
int koszul_merge_sign(std::uint64_t a, std::uint64_t b);

}  // namespace bundlecoh

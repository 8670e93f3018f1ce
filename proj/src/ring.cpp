#include "bundlecoh/ring.hpp"

#include <bit>
#include <stdexcept>

namespace bundlecoh {

int koszul_merge_sign(std::uint64_t a, std::uint64_t b) {
    int inversions = 0;
    std::uint64_t bb = b;
    while (bb) {
        int pos = std::countr_zero(bb);
        bb &= bb - 1;
        // generators of `a` strictly above pos must hop over this one
        std::uint64_t above = (pos == 63) ? 0 : (a >> (pos + 1));
        inversions += std::popcount(above);
    }
    return (inversions & 1) ? -1 : 1;
}

namespace {
int bits_for(std::uint64_t maxval) {
    int b = 1;
    while ((1ull << b) <= maxval) ++b;
    return b;
}
}  // namespace

Ring::Ring(std::vector<GeneratorSpec> gens, int degree_cap, int aux_cap)
    : gens_(std::move(gens)), degree_cap_(degree_cap), aux_cap_(aux_cap) {
    if (degree_cap_ < 0) throw std::invalid_argument("degree cap must be nonnegative");
    fields_.resize(gens_.size());
    int odd_count = 0;
    int word = 0, shift = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const auto& g = gens_[i];
        if (g.degree < 0) throw std::invalid_argument("negative generator degree");
        if ((g.degree % 2 == 0) != (g.parity == Parity::even))
            throw std::invalid_argument("parity must equal degree mod 2: " + g.name);
        if (g.degree == 0 && g.aux_weight <= 0)
            throw std::invalid_argument("degree-0 generator needs an aux weight: " + g.name);
        if (g.parity == Parity::odd) {
            if (odd_count >= 64) throw std::invalid_argument("too many odd generators");
            fields_[i].odd_bit = odd_count++;
        } else {
            std::uint64_t maxexp = 0;
            if (g.degree > 0) maxexp = static_cast<std::uint64_t>(degree_cap_ / g.degree);
            if (g.aux_weight > 0) {
                std::uint64_t m2 = static_cast<std::uint64_t>(aux_cap_ / g.aux_weight);
                maxexp = (g.degree > 0) ? std::min(maxexp, m2) : m2;
            }
            int width = bits_for(maxexp);
            if (shift + width > 64) {
                ++word;
                shift = 0;
                if (word >= 2) throw std::invalid_argument("even-generator packing overflow");
            }
            fields_[i].word = word;
            fields_[i].shift = shift;
            fields_[i].mask = (width >= 64) ? ~0ull : ((1ull << width) - 1);
            shift += width;
        }
    }
}

int Ring::find(const std::string& name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return static_cast<int>(i);
    return -1;
}

Monomial Ring::generator_monomial(int i) const {
    Monomial m;
    const auto& f = fields_[i];
    if (f.odd_bit >= 0)
        m.odd = 1ull << f.odd_bit;
    else
        m.even[f.word] |= 1ull << f.shift;
    m.degree = gens_[i].degree;
    m.aux = gens_[i].aux_weight;
    return m;
}

bool Ring::pack(const std::vector<int>& exps, Monomial& out) const {
    if (exps.size() != gens_.size()) throw std::invalid_argument("exponent vector size mismatch");
    Monomial m;
    long deg = 0, aux = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        int e = exps[i];
        if (e < 0) throw std::invalid_argument("negative exponent");
        if (e == 0) continue;
        const auto& f = fields_[i];
        if (f.odd_bit >= 0) {
            if (e > 1) return false;  // odd square vanishes
            m.odd |= 1ull << f.odd_bit;
        } else {
            if (static_cast<std::uint64_t>(e) > f.mask)
                throw std::invalid_argument("exponent exceeds packing width");
            m.even[f.word] |= static_cast<std::uint64_t>(e) << f.shift;
        }
        deg += static_cast<long>(e) * gens_[i].degree;
        aux += static_cast<long>(e) * gens_[i].aux_weight;
    }
    if (deg > degree_cap_ || aux > aux_cap_) return false;
    m.degree = static_cast<std::int32_t>(deg);
    m.aux = static_cast<std::int32_t>(aux);
    out = m;
    return true;
}

std::vector<int> Ring::unpack(const Monomial& m) const {
    std::vector<int> exps(gens_.size(), 0);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const auto& f = fields_[i];
        if (f.odd_bit >= 0)
            exps[i] = (m.odd >> f.odd_bit) & 1 ? 1 : 0;
        else
            exps[i] = static_cast<int>((m.even[f.word] >> f.shift) & f.mask);
    }
    return exps;
}

int Ring::mul(const Monomial& a, const Monomial& b, Monomial& out) const {
    if (a.odd & b.odd) return 0;
    long deg = static_cast<long>(a.degree) + b.degree;
    long aux = static_cast<long>(a.aux) + b.aux;
    if (deg > degree_cap_ || aux > aux_cap_) return 0;
    out.odd = a.odd | b.odd;
    // degree <= cap bounds every even exponent below its field width, so the
    // word-wise add cannot carry across fields
    out.even[0] = a.even[0] + b.even[0];
    out.even[1] = a.even[1] + b.even[1];
    out.degree = static_cast<std::int32_t>(deg);
    out.aux = static_cast<std::int32_t>(aux);
    return koszul_merge_sign(a.odd, b.odd);
}

int Ring::exponent(const Monomial& m, int i) const {
    const auto& f = fields_[i];
    if (f.odd_bit >= 0) return (m.odd >> f.odd_bit) & 1 ? 1 : 0;
    return static_cast<int>((m.even[f.word] >> f.shift) & f.mask);
}

bool Ring::divide_by_gen(const Monomial& m, int i, Monomial& out) const {
    const auto& f = fields_[i];
    out = m;
    if (f.odd_bit >= 0) {
        if (!((m.odd >> f.odd_bit) & 1)) return false;
        out.odd &= ~(1ull << f.odd_bit);
    } else {
        if (((m.even[f.word] >> f.shift) & f.mask) == 0) return false;
        out.even[f.word] -= 1ull << f.shift;
    }
    out.degree -= gens_[i].degree;
    out.aux -= gens_[i].aux_weight;
    return true;
}

bool Ring::lex_less(const Monomial& a, const Monomial& b) const {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        int ea = exponent(a, static_cast<int>(i));
        int eb = exponent(b, static_cast<int>(i));
        if (ea != eb) return ea > eb;  // higher power of an earlier generator sorts first
    }
    return false;
}

std::string Ring::monomial_string(const Monomial& m) const {
    if (m.is_unit()) return "1";
    std::string s;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        int e = exponent(m, static_cast<int>(i));
        if (e == 0) continue;
        if (!s.empty()) s += "*";
        s += gens_[i].name;
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

}  // namespace bundlecoh

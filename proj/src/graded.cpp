#include "bundlecoh/graded.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bundlecoh {

GradedElement GradedElement::constant(RingPtr ring, const Rational& c) {
    GradedElement x(std::move(ring));
    x.terms_.add(x.ring_->unit(), c);
    return x;
}

GradedElement GradedElement::generator(RingPtr ring, int index) {
    GradedElement x(std::move(ring));
    x.terms_.add(x.ring_->generator_monomial(index), Rational(1));
    return x;
}

GradedElement GradedElement::generator(RingPtr ring, const std::string& name) {
    int idx = ring->find(name);
    if (idx < 0) throw std::invalid_argument("no such generator: " + name);
    return generator(std::move(ring), idx);
}

GradedElement GradedElement::monomial_term(RingPtr ring, const Monomial& m, const Rational& c) {
    GradedElement x(std::move(ring));
    x.terms_.add(m, c);
    return x;
}

Rational GradedElement::coefficient(const Monomial& m) const {
    const Rational* p = terms_.find(m);
    return p ? *p : Rational(0);
}

Rational GradedElement::constant_term() const { return coefficient(ring_->unit()); }

void GradedElement::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    if (m.degree > ring_->degree_cap() || m.aux > ring_->aux_cap()) return;
    terms_.add(m, c);
    terms_.compact();
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
    if (!ring_) ring_ = o.ring_;
    if (ring_.get() != o.ring_.get()) throw std::invalid_argument("ring mismatch");
    for (const auto& [m, c] : o.terms_) terms_.add(m, c);
    terms_.compact();
    return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& o) {
    if (!ring_) ring_ = o.ring_;
    if (ring_.get() != o.ring_.get()) throw std::invalid_argument("ring mismatch");
    for (const auto& [m, c] : o.terms_) terms_.add(m, -c);
    terms_.compact();
    return *this;
}

GradedElement GradedElement::operator-() const {
    GradedElement r(ring_);
    for (const auto& [m, c] : terms_) r.terms_.add(m, -c);
    return r;
}

GradedElement GradedElement::operator*(const GradedElement& o) const {
    if (ring_.get() != o.ring_.get()) throw std::invalid_argument("ring mismatch");
    GradedElement r(ring_);
    const Ring& R = *ring_;
    r.terms_.reserve(std::max(terms_.size(), o.terms_.size()) * 2);
    Monomial out;
    // iterate the smaller factor outside; reuse one scratch rational to keep
    // GMP allocations out of the inner loop
    const GradedElement& small = term_count() <= o.term_count() ? *this : o;
    const GradedElement& big = term_count() <= o.term_count() ? o : *this;
    bool swapped = (&small == &o);
    mpq_t tmp;
    mpq_init(tmp);
    for (const auto& [m1, c1] : small.terms_) {
        for (const auto& [m2, c2] : big.terms_) {
            int s = swapped ? R.mul(m2, m1, out) : R.mul(m1, m2, out);
            if (s == 0) continue;
            mpq_mul(tmp, c1.get_mpq_t(), c2.get_mpq_t());
            if (s < 0) mpq_neg(tmp, tmp);
            Rational& cell = r.terms_.slot(out);
            bool was_zero = mpq_sgn(cell.get_mpq_t()) == 0;
            mpq_add(cell.get_mpq_t(), cell.get_mpq_t(), tmp);
            r.terms_.note_update(was_zero, mpq_sgn(cell.get_mpq_t()) == 0);
        }
    }
    mpq_clear(tmp);
    r.terms_.compact();
    return r;
}

GradedElement GradedElement::operator*(const Rational& c) const {
    GradedElement r(ring_);
    if (c == 0) return r;
    for (const auto& [m, q] : terms_) r.terms_.add(m, q * c);
    return r;
}

GradedElement& GradedElement::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    GradedElement r(ring_);
    for (const auto& [m, q] : terms_) r.terms_.add(m, q * c);
    *this = std::move(r);
    return *this;
}

bool GradedElement::operator==(const GradedElement& o) const {
    if (ring_.get() != o.ring_.get()) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (const auto& [m, c] : terms_) {
        const Rational* p = o.terms_.find(m);
        if (!p || *p != c) return false;
    }
    return true;
}

int GradedElement::min_degree() const {
    if (terms_.empty()) throw std::logic_error("min_degree of zero");
    int d = ring_->degree_cap() + 1;
    for (const auto& [m, c] : terms_) d = std::min<int>(d, m.degree);
    return d;
}

int GradedElement::max_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max<int>(d, m.degree);
    return d;
}

bool GradedElement::is_homogeneous(int* degree_out) const {
    if (terms_.empty()) {
        if (degree_out) *degree_out = -1;
        return true;
    }
    int d = terms_.begin()->first.degree;
    for (const auto& [m, c] : terms_)
        if (m.degree != d) return false;
    if (degree_out) *degree_out = d;
    return true;
}

GradedElement GradedElement::degree_part(int degree) const {
    GradedElement r(ring_);
    for (const auto& [m, c] : terms_)
        if (m.degree == degree) r.terms_.add(m, c);
    return r;
}

GradedElement GradedElement::parity_part(int parity) const {
    GradedElement r(ring_);
    for (const auto& [m, c] : terms_)
        if ((m.degree & 1) == parity) r.terms_.add(m, c);
    return r;
}

GradedElement GradedElement::aux_part(const std::vector<int>& eps_exponents,
                                      const std::vector<int>& eps_gens) const {
    GradedElement r(ring_);
    for (const auto& [m, c] : terms_) {
        bool match = true;
        for (std::size_t i = 0; i < eps_gens.size(); ++i)
            if (ring_->exponent(m, eps_gens[i]) != eps_exponents[i]) {
                match = false;
                break;
            }
        if (match) r.terms_.add(m, c);
    }
    return r;
}

GradedElement GradedElement::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power");
    GradedElement r = constant(ring_, 1);
    GradedElement base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = (k >>= 1) ? base * base : base;
    }
    return r;
}

GradedElement exp(const GradedElement& x) {
    if (x.constant_term() != 0) throw std::invalid_argument("exp requires zero constant term");
    GradedElement r = GradedElement::constant(x.ring(), 1);
    GradedElement inc = r;
    int kmax = x.ring()->degree_cap() + x.ring()->aux_cap() + 1;
    for (int k = 1; k <= kmax; ++k) {
        inc = inc * x;
        if (inc.is_zero()) break;
        inc *= Rational(1, k);
        r += inc;
    }
    return r;
}

GradedElement log(const GradedElement& x) {
    if (x.constant_term() != 1) throw std::invalid_argument("log requires constant term 1");
    GradedElement y = x - GradedElement::constant(x.ring(), 1);
    GradedElement r(x.ring());
    GradedElement p = GradedElement::constant(x.ring(), 1);
    int kmax = x.ring()->degree_cap() + x.ring()->aux_cap() + 1;
    for (int k = 1; k <= kmax; ++k) {
        p = p * y;
        if (p.is_zero()) break;
        Rational c(1, k);
        if (k % 2 == 0) c = -c;
        r += p * c;
    }
    return r;
}

GradedElement GradedElement::inverse() const {
    Rational c0 = constant_term();
    if (c0 == 0) throw std::invalid_argument("inverse of non-unit");
    // 1/(c0 (1 + n)) = (1/c0) sum (-n)^k
    GradedElement n = *this * Rational(1 / c0);
    n -= constant(ring_, 1);
    GradedElement r = constant(ring_, 1);
    GradedElement p = r;
    int kmax = ring_->degree_cap() + ring_->aux_cap() + 1;
    for (int k = 1; k <= kmax; ++k) {
        p = p * n;
        if (p.is_zero()) break;
        if (k % 2)
            r -= p;
        else
            r += p;
    }
    return r * Rational(1 / c0);
}

GradedElement GradedElement::partial_derivative(int gen_index) const {
    if (ring_->gen(gen_index).parity != Parity::even)
        throw std::invalid_argument("partial derivative only for even generators");
    GradedElement r(ring_);
    Monomial reduced;
    for (const auto& [m, c] : terms_) {
        int e = ring_->exponent(m, gen_index);
        if (e == 0) continue;
        ring_->divide_by_gen(m, gen_index, reduced);
        r.add_term(reduced, c * e);
    }
    return r;
}

GradedElement GradedElement::substitute(const RingPtr& dst,
                                        const std::vector<GradedElement>& images) const {
    GradedElement r(dst);
    for (const auto& [m, c] : terms_) {
        GradedElement term = GradedElement::constant(dst, c);
        for (int i = 0; i < ring_->size() && !term.is_zero(); ++i) {
            int e = ring_->exponent(m, i);
            if (e == 0) continue;
            term = term * images[i].pow(e);
        }
        r += term;
    }
    return r;
}

GradedElement GradedElement::map_generators(const RingPtr& dst,
                                            const std::vector<int>& index_map) const {
    // monotonicity on odd generators keeps the stored order, hence no signs
    int last_odd = -1;
    for (int i = 0; i < ring_->size(); ++i)
        if (ring_->gen(i).parity == Parity::odd) {
            if (index_map[i] <= last_odd)
                throw std::invalid_argument("map_generators: odd order not preserved");
            last_odd = index_map[i];
        }
    GradedElement r(dst);
    std::vector<int> exps(dst->size());
    for (const auto& [m, c] : terms_) {
        std::fill(exps.begin(), exps.end(), 0);
        auto src = ring_->unpack(m);
        for (int i = 0; i < ring_->size(); ++i) exps[index_map[i]] += src[i];
        Monomial out;
        if (!dst->pack(exps, out)) continue;
        r.add_term(out, c);
    }
    return r;
}

GradedElement GradedElement::permute_generators(const std::vector<int>& perm) const {
    const Ring& R = *ring_;
    for (int i = 0; i < R.size(); ++i) {
        if (R.gen(i).degree != R.gen(perm[i]).degree || R.gen(i).parity != R.gen(perm[i]).parity ||
            R.gen(i).aux_weight != R.gen(perm[i]).aux_weight)
            throw std::invalid_argument("permutation does not preserve degrees");
    }
    GradedElement r(ring_);
    std::vector<int> exps(R.size());
    for (const auto& [m, c] : terms_) {
        std::fill(exps.begin(), exps.end(), 0);
        auto src = R.unpack(m);
        // sign: odd generators i1<i2<... map to perm(i*): sign of the sort
        std::vector<int> odd_images;
        for (int i = 0; i < R.size(); ++i) {
            if (src[i] == 0) continue;
            exps[perm[i]] = src[i];
            if (R.gen(i).parity == Parity::odd) odd_images.push_back(perm[i]);
        }
        int inversions = 0;
        for (std::size_t a = 0; a < odd_images.size(); ++a)
            for (std::size_t b = a + 1; b < odd_images.size(); ++b)
                if (odd_images[a] > odd_images[b]) ++inversions;
        Monomial out;
        if (!ring_->pack(exps, out)) continue;
        r.add_term(out, (inversions & 1) ? -c : c);
    }
    return r;
}

std::vector<std::pair<Monomial, Rational>> GradedElement::sorted_terms() const {
    std::vector<std::pair<Monomial, Rational>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [this](const auto& a, const auto& b) {
        if (a.first.degree != b.first.degree) return a.first.degree < b.first.degree;
        return ring_->lex_less(a.first, b.first);
    });
    return v;
}

std::string GradedElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : sorted_terms()) {
        if (!s.empty()) s += " + ";
        s += to_string(c);
        if (!m.is_unit()) s += "*" + ring_->monomial_string(m);
    }
    return s;
}

GradedElement antisymmetrize(const GradedElement& x,
                             const std::vector<SignedPermutation>& action) {
    GradedElement sum(x.ring());
    for (const auto& sp : action) {
        GradedElement y = x.permute_generators(sp.perm);
        if (sp.sign < 0)
            sum -= y;
        else
            sum += y;
    }
    return sum * Rational(1, static_cast<long>(action.size()));
}

std::vector<SignedPermutation> block_permutation_action(
    const RingPtr& ring, const std::vector<std::vector<int>>& blocks, bool signed_action) {
    const int m = static_cast<int>(blocks.size());
    std::vector<int> labels(m);
    for (int i = 0; i < m; ++i) labels[i] = i;
    std::vector<SignedPermutation> action;
    std::vector<int> identity(ring->size());
    for (int i = 0; i < ring->size(); ++i) identity[i] = i;
    do {
        SignedPermutation sp;
        sp.perm = identity;
        int inv = 0;
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                if (labels[a] > labels[b]) ++inv;
        sp.sign = signed_action && (inv & 1) ? -1 : 1;
        for (int l = 0; l < m; ++l)
            for (std::size_t j = 0; j < blocks[l].size(); ++j)
                sp.perm[blocks[l][j]] = blocks[labels[l]][j];
        action.push_back(std::move(sp));
    } while (std::next_permutation(labels.begin(), labels.end()));
    return action;
}

}  // namespace bundlecoh

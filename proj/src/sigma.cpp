#include "bundlecoh/sigma.hpp"

#include <stdexcept>

namespace bundlecoh {

SigmaClass::SigmaClass(RingPtr ring, int genus) : ring_(std::move(ring)), genus_(genus) {
    comp_.assign(basis_size(), GradedElement(ring_));
}

SigmaClass SigmaClass::scalar(RingPtr ring, int genus, const Rational& c) {
    SigmaClass s(std::move(ring), genus);
    s.comp_[0] = GradedElement::constant(s.ring_, c);
    return s;
}

SigmaClass SigmaClass::pure(int genus, int basis_index, GradedElement x) {
    SigmaClass s(x.ring(), genus);
    s.comp_[basis_index] = std::move(x);
    return s;
}

bool SigmaClass::is_zero() const {
    for (const auto& c : comp_)
        if (!c.is_zero()) return false;
    return true;
}

SigmaClass& SigmaClass::operator+=(const SigmaClass& o) {
    if (genus_ != o.genus_) throw std::invalid_argument("genus mismatch");
    for (int i = 0; i < basis_size(); ++i) comp_[i] += o.comp_[i];
    return *this;
}

SigmaClass& SigmaClass::operator-=(const SigmaClass& o) {
    if (genus_ != o.genus_) throw std::invalid_argument("genus mismatch");
    for (int i = 0; i < basis_size(); ++i) comp_[i] -= o.comp_[i];
    return *this;
}

SigmaClass SigmaClass::operator-() const {
    SigmaClass r(ring_, genus_);
    for (int i = 0; i < basis_size(); ++i) r.comp_[i] = -comp_[i];
    return r;
}

SigmaClass SigmaClass::operator*(const SigmaClass& o) const {
    if (genus_ != o.genus_) throw std::invalid_argument("genus mismatch");
    const int g = genus_;
    const int omega = omega_index();
    SigmaClass r(ring_, genus_);

    auto mul_into = [&](int i, const GradedElement& x, int j, const GradedElement& y) {
        // (x (x) e_i)(y (x) e_j) = (-1)^{|e_i||y|} (xy) (x) (e_i e_j)
        int target = -1, sgn = 1;
        if (i == 0)
            target = j;
        else if (j == 0)
            target = i;
        else if (i <= 2 * g && j <= 2 * g) {
            if (j == i + g && i <= g) {
                target = omega, sgn = 1;
            } else if (i == j + g && j <= g) {
                target = omega, sgn = -1;
            } else
                return;  // alpha pairs not dual: zero
        } else
            return;  // omega * (alpha or omega) = 0
        if (surface_degree(i) % 2 == 1) {
            GradedElement ye = y.parity_part(0);
            GradedElement yo = y.parity_part(1);
            GradedElement prod = x * ye - x * yo;
            if (sgn < 0) prod = -prod;
            r.comp_[target] += prod;
        } else {
            GradedElement prod = x * y;
            if (sgn < 0) prod = -prod;
            r.comp_[target] += prod;
        }
    };

    for (int i = 0; i < basis_size(); ++i) {
        if (comp_[i].is_zero()) continue;
        for (int j = 0; j < basis_size(); ++j) {
            if (o.comp_[j].is_zero()) continue;
            mul_into(i, comp_[i], j, o.comp_[j]);
        }
    }
    return r;
}

SigmaClass SigmaClass::operator*(const Rational& q) const {
    SigmaClass r(ring_, genus_);
    for (int i = 0; i < basis_size(); ++i) r.comp_[i] = comp_[i] * q;
    return r;
}

SigmaClass SigmaClass::operator*(const GradedElement& x) const {
    // (x (x) 1) * this: the unit surface factor carries no Koszul sign
    SigmaClass r(ring_, genus_);
    for (int i = 0; i < basis_size(); ++i)
        if (!comp_[i].is_zero()) r.comp_[i] = x * comp_[i];
    return r;
}

bool SigmaClass::operator==(const SigmaClass& o) const {
    if (genus_ != o.genus_) return false;
    for (int i = 0; i < basis_size(); ++i)
        if (!(comp_[i] == o.comp_[i])) return false;
    return true;
}

SigmaClass SigmaClass::total_degree_part(int degree) const {
    SigmaClass r(ring_, genus_);
    for (int i = 0; i < basis_size(); ++i) {
        int sd = surface_degree(i);
        if (degree >= sd) r.comp_[i] = comp_[i].degree_part(degree - sd);
    }
    return r;
}

int SigmaClass::max_total_degree() const {
    int d = -1;
    for (int i = 0; i < basis_size(); ++i)
        if (!comp_[i].is_zero()) d = std::max(d, comp_[i].max_degree() + surface_degree(i));
    return d;
}

SigmaClass SigmaClass::dual() const {
    SigmaClass r(ring_, genus_);
    for (int i = 0; i < basis_size(); ++i) {
        int sd = surface_degree(i);
        for (const auto& [m, c] : comp_[i].terms()) {
            int total = m.degree + sd;
            if (total % 2 != 0) throw std::logic_error("dual needs even total degree");
            r.comp_[i].add_term(m, (total / 2) % 2 ? -c : c);
        }
    }
    return r;
}

std::vector<SigmaClass> assemble_universal_chern(const std::vector<GradedElement>& a,
                                                 const std::vector<std::vector<GradedElement>>& b,
                                                 const std::vector<GradedElement>& f, int n,
                                                 int g) {
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n ||
        static_cast<int>(f.size()) != n)
        throw std::invalid_argument("assemble_universal_chern: size mismatch");
    std::vector<SigmaClass> c;
    for (int r = 0; r < n; ++r) {
        if (static_cast<int>(b[r].size()) != 2 * g)
            throw std::invalid_argument("assemble_universal_chern: b row size mismatch");
        SigmaClass cr(a[r].ring(), g);
        cr.comp(0) = a[r];
        for (int j = 0; j < 2 * g; ++j) cr.comp(1 + j) = b[r][j];
        cr.comp(cr.omega_index()) = f[r];
        c.push_back(std::move(cr));
    }
    return c;
}

}  // namespace bundlecoh

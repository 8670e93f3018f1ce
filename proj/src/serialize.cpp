#include "bundlecoh/serialize.hpp"

namespace bundlecoh {

Json ring_header(const Ring& ring) {
    Json gens = Json::array();
    for (const auto& g : ring.generators()) {
        Json j;
        j["name"] = g.name;
        j["degree"] = g.degree;
        j["parity"] = g.parity == Parity::even ? "even" : "odd";
        if (g.aux_weight > 0) j["formal"] = true;
        gens.push_back(std::move(j));
    }
    Json out;
    out["generators"] = std::move(gens);
    out["degree_cap"] = ring.degree_cap();
    return out;
}

Json terms_json(const GradedElement& x) {
    Json terms = Json::object();
    for (const auto& [m, c] : x.sorted_terms())
        terms[x.ring()->monomial_string(m)] = to_string(c);
    return terms;
}

Json to_json(const GradedElement& x) {
    Json out;
    out["ring"] = ring_header(*x.ring());
    out["terms"] = terms_json(x);
    return out;
}

Json to_json(const TSeries& s) {
    Json out;
    out["ring"] = ring_header(*s.zero_elem().ring());
    out["t_cap"] = s.t_cap();
    Json coeffs = Json::array();
    for (int r = 0; r <= s.t_cap(); ++r) coeffs.push_back(terms_json(s.coeff(r)));
    out["coefficients"] = std::move(coeffs);
    return out;
}

Json to_json(const IntSeries& s, int upto) {
    Json arr = Json::array();
    for (int r = 0; r <= upto; ++r) arr.push_back(to_string(s.coeff(r)));
    return arr;
}

Json to_json(const HNType& t, int g) {
    Json out;
    Json blocks = Json::array();
    for (auto& [n, d] : t.blocks) blocks.push_back(Json::array({n, d}));
    out["blocks"] = std::move(blocks);
    out["codim"] = codim_mu(t, g);
    Json poly = Json::array();
    for (auto& [x, y] : t.polygon()) poly.push_back(Json::array({x, y}));
    out["polygon"] = std::move(poly);
    return out;
}

}  // namespace bundlecoh

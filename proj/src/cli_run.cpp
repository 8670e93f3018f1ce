#include "bundlecoh/cli_run.hpp"

#include <cstdlib>
#include <numeric>
#include <ostream>
#include <sstream>

#include "bundlecoh/parab.hpp"
#include "bundlecoh/respair.hpp"
#include "bundlecoh/serialize.hpp"

namespace bundlecoh {

namespace {

constexpr const char* kSchema = "bundlecoh/1";

int env_default(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    return std::atoi(v);
}

int emit(std::ostream& out, const Json& j) {
    out << j.dump(2) << "\n";
    return 0;
}

int fail_validation(std::ostream& out, const std::string& message) {
    Json j;
    j["schema"] = kSchema;
    j["error"] = {{"kind", "validation"}, {"message", message}};
    out << j.dump(2) << "\n";
    return 2;
}

int fail_cap(std::ostream& out, const CapError& e) {
    Json j;
    j["schema"] = kSchema;
    j["error"] = {{"kind", "cap_overflow"},
                  {"message", e.what()},
                  {"minimal_degree_cap", e.minimal_degree_cap},
                  {"minimal_t_cap", e.minimal_t_cap}};
    out << j.dump(2) << "\n";
    return 3;
}

// eta grammar: '*'-separated factors "a<r>" | "b<r>_<j>" | "1", each with an
// optional "^<k>"; names refer to the hat-side generators.
GradedElement parse_eta(const std::string& spec, const RelationRing& rr) {
    GradedElement result = GradedElement::constant(rr.ring, 1);
    std::stringstream ss(spec);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
        if (factor.empty()) throw std::invalid_argument("eta: empty factor");
        int power = 1;
        auto caret = factor.find('^');
        if (caret != std::string::npos) {
            power = std::stoi(factor.substr(caret + 1));
            factor = factor.substr(0, caret);
        }
        if (factor == "1") continue;
        int idx = rr.ring->find("h" + factor);
        if (idx < 0 || idx >= rr.hat_gen_count)
            throw std::invalid_argument("eta: unknown hat generator '" + factor + "'");
        if (rr.ring->gen(idx).name[1] == 'f')
            throw std::invalid_argument("eta: fhat generators are not allowed");
        result = result * GradedElement::generator(rr.ring, idx).pow(power);
    }
    return result;
}

int run_betti(const JobSpec& spec, std::ostream& out) {
    if (spec.n < 1) return fail_validation(out, "betti: n >= 1 required");
    if (spec.g < 2) return fail_validation(out, "betti: g >= 2 required");
    if (std::gcd(spec.n, spec.d) != 1)
        return fail_validation(out,
                               "betti: gcd(n,d) must be 1 (semistable != stable otherwise)");
    long dim = moduli_dimension(spec.n, spec.g);
    int cap = spec.t_cap.value_or(
        env_default("BUNDLECOH_TCAP", static_cast<int>(2 * dim + 2)));
    if (cap < dim) {
        Json j;
        j["schema"] = kSchema;
        j["error"] = {{"kind", "cap_overflow"},
                      {"message", "betti: cap below the moduli dimension"},
                      {"minimal_t_cap", dim}};
        out << j.dump(2) << "\n";
        return 3;
    }
    IntSeries pm = p_moduli(spec.n, spec.d, spec.g, cap);
    if (spec.format == "csv") {
        out << "power,coefficient\n";
        for (int r = 0; r <= pm.degree(); ++r) out << r << "," << to_string(pm.coeff(r)) << "\n";
        return 0;
    }
    Json j;
    j["schema"] = kSchema;
    j["subcommand"] = "betti";
    j["n"] = spec.n;
    j["d"] = spec.d;
    j["g"] = spec.g;
    j["t_cap"] = cap;
    j["dimension"] = dim;
    j["p_moduli"] = to_json(pm, static_cast<int>(dim));
    j["palindromic"] = pm.is_palindromic(static_cast<int>(dim));
    if (spec.closed) {
        auto rep = compare_closed_vs_moduli(spec.n, spec.d, spec.g, cap);
        Json c;
        c["agree"] = rep.agree;
        if (rep.has_difference) {
            c["first_difference"] = {{"t_power", to_string(rep.first_diff_power)},
                                     {"closed", to_string(rep.closed_value)},
                                     {"inductive", to_string(rep.inductive_value)}};
        }
        j["closed_formula"] = std::move(c);
    }
    return emit(out, j);
}

int run_strata(const JobSpec& spec, std::ostream& out) {
    if (spec.n < 1) return fail_validation(out, "strata: n >= 1 required");
    if (spec.g < 2) return fail_validation(out, "strata: g >= 2 required");
    long cap = spec.codim_cap.value_or(20);
    Json j;
    j["schema"] = kSchema;
    j["subcommand"] = "strata";
    j["n"] = spec.n;
    j["d"] = spec.d;
    j["g"] = spec.g;
    j["codim_cap"] = cap;
    Json types = Json::array();
    for (const auto& t : enumerate_hn_types(spec.n, spec.d, spec.g, cap))
        types.push_back(to_json(t, spec.g));
    j["types"] = std::move(types);
    return emit(out, j);
}

int run_relations(const JobSpec& spec, std::ostream& out) {
    if (!(0 < spec.nhat && spec.nhat < spec.n))
        return fail_validation(out, "relations: requires 0 < nhat < n");
    if (spec.g < 2) return fail_validation(out, "relations: g >= 2 required");
    IntRange win;
    try {
        win = relation_window(spec.n, spec.d, spec.nhat, spec.dhat, spec.g);
    } catch (const std::invalid_argument& e) {
        return fail_validation(out, e.what());
    }
    std::vector<long> rs;
    if (spec.window)
        for (long r = win.first; r <= win.last; ++r) rs.push_back(r);
    else if (spec.r)
        rs.push_back(*spec.r);
    else
        return fail_validation(out, "relations: pass --r or --window");

    long rmax = *std::max_element(rs.begin(), rs.end());
    int tcap = spec.t_cap.value_or(env_default("BUNDLECOH_TCAP", static_cast<int>(rmax)));
    if (tcap < rmax) {
        Json j;
        j["schema"] = kSchema;
        j["error"] = {{"kind", "cap_overflow"},
                      {"message", "relations: t_cap below the requested r"},
                      {"minimal_t_cap", rmax}};
        out << j.dump(2) << "\n";
        return 3;
    }
    int dcap = spec.degree_cap.value_or(env_default("BUNDLECOH_DEGCAP", 2 * tcap));

    try {
        RelationRing rr =
            make_relation_ring(static_cast<int>(spec.n), spec.d, static_cast<int>(spec.nhat),
                               spec.dhat, spec.g, dcap);
        TSeries c = grr_minus_pi(rr.main, rr.hat, Caps{dcap, tcap});
        Json j;
        j["schema"] = kSchema;
        j["subcommand"] = "relations";
        j["n"] = spec.n;
        j["d"] = spec.d;
        j["g"] = spec.g;
        j["nhat"] = spec.nhat;
        j["dhat"] = spec.dhat;
        j["virtual_rank"] = virtual_rank(spec.n, spec.d, spec.nhat, spec.dhat, spec.g);
        j["window"] = {{"first", win.first}, {"last", win.last}};
        j["ring"] = ring_header(*rr.ring);
        Json records = Json::array();
        for (long r : rs) {
            Json rec;
            rec["r"] = r;
            Json entries = Json::array();
            for (const auto& [hm, val] : kunneth_components(c, static_cast<int>(r),
                                                            rr.hat_gen_count)) {
                Json e;
                e["functional"] = rr.ring->monomial_string(hm);
                e["value"] = terms_json(val);
                entries.push_back(std::move(e));
            }
            rec["entries"] = std::move(entries);
            records.push_back(std::move(rec));
        }
        j["records"] = std::move(records);
        return emit(out, j);
    } catch (const CapError& e) {
        return fail_cap(out, e);
    }
}

int run_pairing(const JobSpec& spec, std::ostream& out) {
    if (spec.n < 1 || spec.nhat < 1) return fail_validation(out, "pairing: n, nhat >= 1");
    if (spec.nhat > 3) return fail_validation(out, "pairing: nhat <= 3 supported");
    if (std::gcd(spec.nhat, spec.dhat) != 1)
        return fail_validation(out, "pairing: gcd(nhat, dhat) must be 1");
    int tcap = spec.t_cap.value_or(env_default("BUNDLECOH_TCAP", 4));
    int dcap = spec.degree_cap.value_or(env_default("BUNDLECOH_DEGCAP", 2 * tcap + 4));
    try {
        RelationRing rr =
            make_relation_ring(static_cast<int>(spec.n), spec.d, static_cast<int>(spec.nhat),
                               spec.dhat, spec.g, dcap);
        GradedElement eta = parse_eta(spec.eta, rr);
        PairingOptions opts;
        opts.orientation = spec.orientation;
        TSeries p = pairing_thm_10_2(eta, rr, static_cast<int>(spec.n), spec.d,
                                     static_cast<int>(spec.nhat), spec.dhat, spec.g,
                                     Caps{dcap, tcap}, opts);
        Json j;
        j["schema"] = kSchema;
        j["subcommand"] = "pairing";
        j["n"] = spec.n;
        j["d"] = spec.d;
        j["g"] = spec.g;
        j["nhat"] = spec.nhat;
        j["dhat"] = spec.dhat;
        j["eta"] = spec.eta;
        j["orientation"] = spec.orientation;
        j["t_cap"] = tcap;
        j["ring"] = ring_header(*p.zero_elem().ring());
        Json coeffs = Json::array();
        for (int r = 0; r <= tcap; ++r) coeffs.push_back(terms_json(p.coeff(r)));
        j["coefficients"] = std::move(coeffs);
        return emit(out, j);
    } catch (const CapError& e) {
        return fail_cap(out, e);
    } catch (const std::invalid_argument& e) {
        return fail_validation(out, e.what());
    }
}

int run_parabolic(const JobSpec& spec, std::ostream& out) {
    ParabolicData pd;
    pd.n = spec.n;
    pd.d = spec.d;
    for (const auto& w : spec.weights) pd.weights.push_back(rational_from_string(w));
    pd.mults = spec.mults;
    try {
        pd.validate();
    } catch (const std::invalid_argument& e) {
        return fail_validation(out, e.what());
    }
    Json j;
    j["schema"] = kSchema;
    j["subcommand"] = "parabolic";
    j["n"] = spec.n;
    j["d"] = spec.d;
    Json wj = Json::array();
    for (const auto& w : pd.weights) wj.push_back(to_string(w));
    j["weights"] = std::move(wj);
    j["mults"] = spec.mults;
    auto [deg, slope] = par_degree_slope(pd);
    j["pardeg"] = to_string(deg);
    j["parslope"] = to_string(slope);

    if (spec.check_good) {
        auto rep = good_data_check(pd);
        Json g;
        g["good"] = rep.good;
        if (rep.margin) g["margin"] = to_string(*rep.margin);
        Json ws = Json::array();
        for (const auto& w : rep.witnesses) {
            Json e;
            e["nhat"] = w.nhat;
            e["dhat"] = w.dhat;
            e["jhat"] = w.jhat;
            e["top_level"] = w.top_level;
            if (!w.top_level) {
                e["inner_rank"] = w.inner_rank;
                e["inner_degree"] = w.inner_degree;
                e["inner_mults"] = w.inner_k;
            }
            ws.push_back(std::move(e));
        }
        g["witnesses"] = std::move(ws);
        j["good_data"] = std::move(g);
    }
    if (spec.par_rank || spec.par_window) {
        if (spec.sub.size() < 2 + pd.weights.size())
            return fail_validation(out, "parabolic: --sub needs nhat,dhat,jhat_1..jhat_m");
        SubParabolicData sub;
        sub.nhat = spec.sub[0];
        sub.dhat = spec.sub[1];
        sub.jhat.assign(spec.sub.begin() + 2, spec.sub.end());
        try {
            sub.validate(pd);
        } catch (const std::invalid_argument& e) {
            return fail_validation(out, e.what());
        }
        Json sj;
        sj["nhat"] = sub.nhat;
        sj["dhat"] = sub.dhat;
        sj["jhat"] = sub.jhat;
        if (spec.par_rank) sj["rank"] = par_rank_formula(pd, sub, spec.g);
        if (spec.par_window) {
            auto w = par_relation_window(pd, sub, spec.g);
            sj["window"] = {{"first", w.first}, {"last", w.last}};
        }
        j["sub"] = std::move(sj);
    }
    return emit(out, j);
}

}  // namespace

int run(const JobSpec& spec, std::ostream& out) {
    try {
        if (spec.subcommand == "betti") return run_betti(spec, out);
        if (spec.subcommand == "strata") return run_strata(spec, out);
        if (spec.subcommand == "relations") return run_relations(spec, out);
        if (spec.subcommand == "pairing") return run_pairing(spec, out);
        if (spec.subcommand == "parabolic") return run_parabolic(spec, out);
        if (spec.subcommand == "selftest") return selftest(out);
        return fail_validation(out, "unknown subcommand: " + spec.subcommand);
    } catch (const CapError& e) {
        return fail_cap(out, e);
    } catch (const std::exception& e) {
        return fail_validation(out, e.what());
    }
}

}  // namespace bundlecoh

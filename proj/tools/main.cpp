#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bundlecoh/cli_run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact computations in the cohomology of moduli of bundles"};
    app.require_subcommand(1);

    bundlecoh::JobSpec spec;
    std::string out_path;
    int tcap = -1, dcap = -1;
    long codim_cap = -1, rflag = -1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write output to a file instead of stdout");
    };

    auto* betti = app.add_subcommand("betti", "Poincare polynomial of the moduli space");
    betti->add_option("--n", spec.n, "rank")->required();
    betti->add_option("--d", spec.d, "degree")->required();
    betti->add_option("--g", spec.g, "genus (>= 2)")->required();
    betti->add_option("--cap", tcap, "t-series cap (default 2 dim + 2)");
    betti->add_flag("--closed", spec.closed, "also evaluate the closed-formula diagnostic");
    betti->add_option("--format", spec.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    add_common(betti);

    auto* strata = app.add_subcommand("strata", "Harder-Narasimhan types up to a codimension cap");
    strata->add_option("--n", spec.n)->required();
    strata->add_option("--d", spec.d)->required();
    strata->add_option("--g", spec.g)->required();
    strata->add_option("--codim-cap", codim_cap, "codimension cap (default 20)");
    add_common(strata);

    auto* rel = app.add_subcommand("relations", "generalized Mumford relation records");
    rel->add_option("--n", spec.n)->required();
    rel->add_option("--d", spec.d)->required();
    rel->add_option("--g", spec.g)->required();
    rel->add_option("--nhat", spec.nhat)->required();
    rel->add_option("--dhat", spec.dhat)->required();
    rel->add_option("--r", rflag, "single Chern index");
    rel->add_flag("--window", spec.window, "all r in the theorem window");
    rel->add_option("--cap", tcap, "t-series cap");
    rel->add_option("--degree-cap", dcap, "ring degree cap");
    add_common(rel);

    auto* pair = app.add_subcommand("pairing", "iterated-residue intersection pairings");
    pair->add_option("--n", spec.n)->required();
    pair->add_option("--d", spec.d)->required();
    pair->add_option("--g", spec.g)->required();
    pair->add_option("--nhat", spec.nhat)->required();
    pair->add_option("--dhat", spec.dhat)->required();
    pair->add_option("--eta", spec.eta,
                     "hat monomial, e.g. 'a1^2*b1_3' (generators ahat_r, bhat_r^j)");
    pair->add_option("--tcap", tcap, "t-series cap");
    pair->add_option("--degree-cap", dcap, "ring degree cap");
    pair->add_option("--orientation", spec.orientation, "Berezin orientation (+1/-1)")
        ->check(CLI::IsMember({1, -1}));
    add_common(pair);

    auto* par = app.add_subcommand("parabolic", "parabolic data bookkeeping");
    par->add_option("--n", spec.n)->required();
    par->add_option("--d", spec.d)->required();
    par->add_option("--g", spec.g, "genus (used by --rank/--window)");
    par->add_option("--weights", spec.weights, "weights as rationals p/q")
        ->required()
        ->delimiter(',');
    par->add_option("--mults", spec.mults, "multiplicities")->required()->delimiter(',');
    par->add_flag("--check-good", spec.check_good, "run the good-data search");
    par->add_option("--sub", spec.sub, "sub-data nhat,dhat,jhat_1..jhat_m")->delimiter(',');
    par->add_flag("--rank", spec.par_rank, "parabolic rank formula for --sub");
    par->add_flag("--window", spec.par_window, "parabolic relation window for --sub");
    add_common(par);

    auto* self = app.add_subcommand("selftest", "run the invariant battery");
    add_common(self);

    CLI11_PARSE(app, argc, argv);

    spec.subcommand = app.get_subcommands().front()->get_name();
    if (tcap >= 0) spec.t_cap = tcap;
    if (dcap >= 0) spec.degree_cap = dcap;
    if (codim_cap >= 0) spec.codim_cap = codim_cap;
    if (rflag >= 0) spec.r = rflag;

    std::ostringstream buffer;
    int code = bundlecoh::run(spec, buffer);
    if (out_path.empty()) {
        std::cout << buffer.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return 2;
        }
        f << buffer.str();
    }
    return code;
}

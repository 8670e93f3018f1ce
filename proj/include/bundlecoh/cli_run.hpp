#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bundlecoh {

// A validated job for one CLI invocation. Identical specs produce identical
// output bytes.
struct JobSpec {
    std::string subcommand;  // betti | strata | relations | pairing | parabolic | selftest
    std::string format = "json";  // json | csv (csv only for integer series)

    long n = 0, d = 0;
    int g = 2;
    long nhat = 0, dhat = 0;
    std::optional<int> t_cap;
    std::optional<int> degree_cap;
    std::optional<long> codim_cap;
    std::optional<long> r;       // single relation index
    bool window = false;         // all r in the Theorem window
    bool closed = false;         // also run the closed-formula diagnostic
    std::string eta = "1";       // pairing monomial spec
    int orientation = +1;

    std::vector<std::string> weights;  // parabolic weights as "p/q"
    std::vector<long> mults;
    bool check_good = false;
    std::vector<long> sub;  // nhat, dhat, jhat_1..jhat_m
    bool par_rank = false;
    bool par_window = false;
};

// Exit codes: 0 success, 2 validation error, 3 cap overflow (the minimal
// sufficient cap is reported in the diagnostic).
int run(const JobSpec& spec, std::ostream& out);

// Full invariant battery at desk scale with per-suite timing; nonzero exit on
// any failure.
int selftest(std::ostream& out);

}  // namespace bundlecoh

#pragma once

#include <json.hpp>

#include "bundlecoh/betti.hpp"
#include "bundlecoh/relgen.hpp"
#include "bundlecoh/strata.hpp"

namespace bundlecoh {

using Json = nlohmann::ordered_json;

// Generator table header: names, degrees, parities.
Json ring_header(const Ring& ring);

// Terms as an object keyed by the canonical monomial string, values "p/q".
Json terms_json(const GradedElement& x);

// {"ring": header, "terms": {...}}
Json to_json(const GradedElement& x);

// {"ring": header, "t_cap": R, "coefficients": [terms...]}
Json to_json(const TSeries& s);

Json to_json(const IntSeries& s, int upto);

Json to_json(const HNType& t, int g);

}  // namespace bundlecoh

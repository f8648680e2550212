#pragma once

// JSON forms of the library's values.
//
//   GroupFunction   {"group": [n1, ...], "values": [[[r1, ...], "a/b"], ...]}
//   TorsionFunction GroupFunction plus "p", "q", "e" when lens-derived
//   Resolution      {"matrix": [[...], ...], "continued_fraction": [a1, ...]}
//   Structure       {"c", "shift", "refinement", "c_stable", "orbit"}
//
// Rationals are strings in lowest terms ("-3/32", "0"); Q/Z values use the
// representative in (-1/2, 1/2]. Objects serialize with sorted keys, so equal
// values give byte-identical text.

#include <json.hpp>

#include "lenstor/decomp.hpp"
#include "lenstor/forms.hpp"
#include "lenstor/group.hpp"
#include "lenstor/torsion.hpp"

namespace lenstor {

using Json = nlohmann::json;

Json to_json(const FinAbGroup& group);
Json to_json(const GroupElement& g);
Json to_json(const RationalFunction& f);
Json to_json(const ResidueFunction& f);
Json to_json(const TorsionFunction& t);
Json to_json(const LatticeResolution& r);
Json to_json(const BilinearFormQZ& b);
Json to_json(const StructureResult& s);

/// All parsers throw ParseError on malformed input.
FinAbGroup group_from_json(const Json& j);
RationalFunction rational_function_from_json(const Json& j);
ResidueFunction residue_function_from_json(const Json& j);
/// NotTorsionLike if the values do not sum to zero.
TorsionFunction torsion_from_json(const Json& j);
LatticeResolution resolution_from_json(const Json& j);

/// Reads and parses a file; ParseError on I/O or syntax problems.
Json read_json_file(const std::string& path);

}  // namespace lenstor

#pragma once

#include <string>

#include <json.hpp>

#include "flagstab/flag.hpp"
#include "flagstab/liealg.hpp"
#include "flagstab/limits.hpp"
#include "flagstab/matrix.hpp"
#include "flagstab/pairing.hpp"
#include "flagstab/rational.hpp"
#include "flagstab/subspace.hpp"

namespace flagstab {

// Key order in emitted documents is fixed, so byte-identical output only
// depends on the values.
using Json = nlohmann::ordered_json;

// Every loader validates shape and content and throws input_error with the
// offending key in the message; every emitter produces a document its
// loader accepts and maps back to an equal value.

Json rational_to_json(const Rational& value);
Rational rational_from_json(const Json& j);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

// Dense row-major array of rational strings.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// {"ambient_dim": n, "basis": [[...], ...]}; the basis must be in RREF.
Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j);

// {"kind": name, "dim": n} for the named kinds,
// {"kind": "explicit", "gram": [[...]]} otherwise.
Json pairing_to_json(const Pairing& p);
Pairing pairing_from_json(const Json& j);

// {"ambient_dim": n, "pairs": [{"pred": ..., "succ": ..., "inf_marker":
// bool?}, ...]}; inf_marker defaults to false and is emitted only when set.
Json flag_to_json(const GeneralizedFlag& f);
GeneralizedFlag flag_from_json(const Json& j);

// {"kind": "gl"|"sl", "n": n}, {"kind": "so"|"sp", "form": pairing} or
// {"kind": "so"|"sp", "n": n} for the split form, and {"kind":
// "extension", "base": ambient, "extra": [matrix, ...]}. Output records
// the sign convention alongside the kind.
Json ambient_to_json(const Ambient& a);
Ambient ambient_from_json(const Json& j);

// {"ambient": ..., "basis": [matrix, ...]} with the basis in flattened
// row-major RREF order; loading re-verifies bracket closure.
Json subalgebra_to_json(const LieSubalgebra& g);
LieSubalgebra subalgebra_from_json(const Json& j);

// {"domain": name, "singles": [...], "down": start?, "up": start?}.
Json index_set_to_json(const IndexSet& s);
IndexSet index_set_from_json(const Json& j);

// Sparse template as [[index, coeff], ...] with ascending indices.
Json vec_template_to_json(const VecTemplate& t);
VecTemplate vec_template_from_json(const Json& j);

// Tagged by "type": "stable" carries index_part/extra, "seq" carries
// explicit generators and families {"param": {"dir", "start"}, "terms":
// [[offset, coeff], ...]}.
Json descriptor_to_json(const LimitsDescriptor& d);
LimitsDescriptor descriptor_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json verify_report_to_json(const VerifyReport& r);

// Emits with a trailing newline, 2-space indents.
std::string dump_json(const Json& j);

// Wraps the nlohmann parser, mapping parse failures to input_error.
Json parse_json(const std::string& text);

}  // namespace flagstab

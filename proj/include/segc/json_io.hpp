#pragma once

// JSON encoding used by the CLI: every number is serialized as a decimal
// string so big integers survive round trips. Parsers are lenient (strings
// or JSON numbers in), emitters are strict (strings out).

#include <json.hpp>

#include "segc/completion.hpp"
#include "segc/promod.hpp"
#include "segc/segal.hpp"

namespace segc {

using Json = nlohmann::json;

Json json_int(const Int& v);
Int int_from_json(const Json& j);

Json json_row(const Row& r);
Row row_from_json(const Json& j);
Json json_matrix(const Mat& m);
Mat matrix_from_json(const Json& j);

Json json_perm(const Perm& p);
Perm perm_from_json(const Json& j);

Json json_group_echo(const PermGroup& g);

Json json_abelian(const FgAbelianGroup& g);
FgAbelianGroup abelian_from_json(const Json& j);

Json json_lattice(const IntegerLattice& l);

Json json_verdict(const ProVerdict& v);
Json json_pattern(const ProfinitePattern& p);
Json json_lim_result(const LimResult& r);

// Tower descriptors: either explicit ({"levels": [...], "maps": [...]}) or a
// rule invocation ({"rule": "iadic"|"constant"|"mult", ...}).
Tower tower_from_json(const Json& j);

// Morphism descriptors: "identity", "zero", or {"components": [matrix...]}.
StrictMorphism morphism_from_json(const Json& j, const Tower& source, const Tower& target);

FamilyDiagram family_from_json(const Json& j);

Json json_table_of_marks(const TableOfMarks& t);
Json json_spectrum(const TableOfMarks& t);
Json json_completion_report(const PermGroup& g, const IntegerLattice& ideal,
                            const CompletionReport& rep);
Json json_segal_report(const FamilyDiagram& d, const SegalConditionReport& rep);

}  // namespace segc

#pragma once

#include <string>

#include "json.hpp"

#include "branchlab/burgermozes.hpp"
#include "branchlab/permgroup.hpp"
#include "branchlab/portrait.hpp"
#include "branchlab/selfsimilar.hpp"
#include "branchlab/suites.hpp"
#include "branchlab/tree.hpp"
#include "branchlab/verifier.hpp"
#include "branchlab/wreathtower.hpp"

namespace branchlab {

using json = nlohmann::json;

// Orders can exceed what a JSON number holds exactly, so every group order is
// emitted as a decimal string; small structural integers stay numbers.

json to_json(const Vertex& v);  // [1,0,2]
Vertex vertex_from_json(const json& j);

json to_json(const DegreeSequence& s);  // [2,2,2]
DegreeSequence degrees_from_json(const json& j);

json to_json(const Perm& p);  // image table
Perm perm_from_json(const json& j);

json to_json(const PermGroup& g);  // {"n": d, "gens": [[...], ...]}
PermGroup group_from_json(const json& j);

/// "Sym(5)" / "Alt(5)" / "Cyclic(7)", or a JSON group object as text.
PermGroup parse_group_source(const std::string& text);

/// {"degrees": [...], "perms": {"<comma word>": [images...]}} — identity
/// child permutations omitted, the root keyed by "".
json to_json(const Portrait& p);
Portrait portrait_from_json(const json& j);

std::string word_text(const Word& w);
json to_json(const RecursionTable& t);
RecursionTable table_from_json(const json& j);

json to_json(const TowerSpec& s);  // {"factors": [...]}
/// Factors may be named-group strings or group objects.
TowerSpec tower_spec_from_json(const json& j);

json to_json(const ColoredBall& b);  // parents + edge colors
ColoredBall ball_from_json(const json& j);

json to_json(const SuiteReport& r);
json to_json(const CommutatorWitness& w);
json to_json(const FullnessCertificate& c);
json to_json(const DiagonalResult& r);
json to_json(const ContainmentReport& r);
json to_json(const HypothesisReport& r);
json to_json(const GrigIndexReport& r);

}  // namespace branchlab

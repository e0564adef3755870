#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mvl/calculus.hpp"
#include "mvl/semantics.hpp"

namespace mvl {

using Json = nlohmann::ordered_json;

// Matrix format: {"name", "values", "designated", "connectives": {conn:
// {"arity", "table": {"a,b": [values]}}}}; every tuple must be listed.
Json matrix_to_json(const PNMatrix& m);
PNMatrix matrix_from_json(const Json& j);
// An algebra is a matrix without designated values.
Json algebra_to_json(const MultiAlgebra& a);
std::shared_ptr<const MultiAlgebra> algebra_from_json(const Json& j);

// Calculus format: {"name", "framework", "xi", "rules": [{"name", "premises", "conclusions"}]}.
Json calculus_to_json(const Calculus& c);
Calculus calculus_from_json(const Json& j, const Signature& sig = sig_pp_imp());

Json tree_to_json(const DerivationTree& t);
Json partition_to_json(const SaturatedPartition& p);
Json witness_to_json(const ValuationWitness& w, const MultiAlgebra& alg);

Json read_json_file(const std::string& path);

// A registry name, or @path to a JSON file.
PNMatrix load_matrix(const std::string& spec);
std::vector<PNMatrix> load_matrix_class(const std::string& spec);
std::shared_ptr<const MultiAlgebra> load_algebra(const std::string& spec);
Calculus load_calculus(const std::string& spec);

}  // namespace mvl

#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "triad/criteria.hpp"
#include "triad/filter.hpp"
#include "triad/generators.hpp"
#include "triad/reducibility.hpp"
#include "triad/schmidt.hpp"
#include "triad/tensor.hpp"

namespace triad {

using Json = nlohmann::json;

/// {"re": [[...]], "im": [[...]]}, row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& re, const Json& im);

void to_json(Json& j, const LocalOperator& a);
void to_json(Json& j, const BipartiteOperator& a);
void to_json(Json& j, const SpectralData& s);
void to_json(Json& j, const ProductTerm& t);
void to_json(Json& j, const SeparableSample& s);
void to_json(Json& j, const TriadClassification& c);
void to_json(Json& j, const BoundReport& b);
void to_json(Json& j, const PptPairReport& p);
void to_json(Json& j, const SchmidtDecomposition& s);
void to_json(Json& j, const FilterIteration& it);
void to_json(Json& j, const FilterResult& r);
void to_json(Json& j, const StochasticityReport& r);
void to_json(Json& j, const DecomposabilityWitness& w);
void to_json(Json& j, const ProbeReport& r);
void to_json(Json& j, const PsdEigenvector& p);
void to_json(Json& j, const SplitCertificate& c);
void to_json(Json& j, const DecompositionTree& t);
void to_json(Json& j, const EqualSchmidtCertificate& c);
void to_json(Json& j, const RankBoundReport& r);
void to_json(Json& j, const FailureReport& f);
void to_json(Json& j, const ExtractionResult& r);

/// Throw ParseError on malformed input.
LocalOperator local_from_json(const Json& j);
BipartiteOperator bipartite_from_json(const Json& j);
BipartiteOperator parse_bipartite(const std::string& text);
BipartiteOperator read_bipartite(std::istream& in);

/// Serialized text, two-space indent. Doubles are written in shortest
/// round-trip form.
std::string dump(const Json& j);

}  // namespace triad

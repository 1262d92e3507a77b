#pragma once

#include "logometre/ca.hpp"
#include "logometre/cooccurrence.hpp"
#include "logometre/dictionary.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace logometre {

using Json = nlohmann::ordered_json;

/// Plain decimal notation with 12 significant digits and trailing zeros
/// trimmed; never uses an exponent. Negative zero prints as "0".
std::string format_real(double x);

/// Deterministic JSON text: insertion-ordered keys, reals through
/// format_real, arrays of scalars kept on one line.
std::string dump_json(const Json& value);

/// Parses JSON text, mapping syntax errors to SchemaError.
Json parse_json(std::string_view text);

/// "*" for the accept-all filter, otherwise the sorted tag array.
Json to_json(const PosFilter& f);
PosFilter pos_filter_from_json(const Json& j);

Json to_json(const ContextSpec& c);
ContextSpec context_from_json(const Json& j);

Json to_json(const FrequencyDictionary& d, std::size_t limit = 0);
FrequencyDictionary dictionary_from_json(const Json& j);
std::string dictionary_csv(const FrequencyDictionary& d, std::size_t limit = 0);

Json to_json(const RankComparison& c);
RankComparison rank_comparison_from_json(const Json& j);

Json to_json(const SpecificityScore& s);

Json to_json(const CooccurrenceMatrix& m);
CooccurrenceMatrix cooc_matrix_from_json(const Json& j);
std::string matrix_csv(const CooccurrenceMatrix& m);

Json to_json(const PivotProfile& p);
PivotProfile pivot_profile_from_json(const Json& j);

Json to_json(const CaSolution& s);
CaSolution ca_solution_from_json(const Json& j);

Json to_json(const IsotopyClustering& c);
IsotopyClustering clustering_from_json(const Json& j);

Json to_json(const std::vector<ProjectedPoint>& points);

/// Formula text stamped into every pivot profile.
inline constexpr const char* kPivotIndexFormula =
    "z = (k - m*p) / sqrt(m*p*(1-p)), m = contexts with pivot, p = F / total_contexts";

}  // namespace logometre

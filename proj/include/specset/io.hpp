#pragma once

#include <string>

#include <json.hpp>

#include "specset/blaschke.hpp"
#include "specset/classify.hpp"
#include "specset/domain.hpp"
#include "specset/ksearch.hpp"

namespace specset::io {

using Json = nlohmann::ordered_json;

// File formats. Loaders enforce the type invariants and name the offending
// entry in their error messages.

Json matrix_to_json(const CMat& t);
CMat matrix_from_json(const Json& j);

Json rational_to_json(const ScalarRational& f);
ScalarRational rational_from_json(const Json& j);

Json domain_to_json(const Domain& d);
Domain domain_from_json(const Json& j);

Json blaschke_to_json(const BlaschkeProduct& b);
BlaschkeProduct blaschke_from_json(const Json& j);

Json disk_to_json(const GeneralizedDisk& d);
GeneralizedDisk disk_from_json(const Json& j);

Json classify_report_to_json(const ClassifyReport& report);
Json search_result_to_json(const SearchResult& result);

CMat load_matrix(const std::string& path);
Domain load_domain(const std::string& path);
BlaschkeProduct load_blaschke(const std::string& path);
ScalarRational load_rational(const std::string& path);
GeneralizedDisk load_disk(const std::string& path);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace specset::io

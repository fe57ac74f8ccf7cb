#ifndef CONLEY_JSON_IO_HPP
#define CONLEY_JSON_IO_HPP

#include <string>

#include "../vendor/json.hpp"
#include "boxmap.hpp"
#include "filtration.hpp"
#include "homology.hpp"
#include "matrix.hpp"

namespace conley {

using Json = nlohmann::json;

SystemSpec system_from_json(const Json& j);
SystemSpec system_from_file(const std::string& path);

Mat<Z> matrix_from_json(const Json& j);
Json matrix_to_json(const Mat<Z>& m);
Json matrix_to_json(const Mat<Q>& m);  // entries as "p/q" strings when needed

Json pair_to_json(const FiltrationPair& p);
Json pointed_to_json(const PointedDigraph& pd);
Json homology_to_json(const HomologyGroups& g);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace conley

#endif

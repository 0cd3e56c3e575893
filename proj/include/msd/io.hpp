#pragma once

#include "msd/connection.hpp"

#include "json.hpp"

#include <string>

namespace msd {

nlohmann::ordered_json matrix_to_json(const Mat& m);
// Expects a nested row-major array of the given shape; an empty matrix may be [] .
Mat matrix_from_json(const nlohmann::json& j, int rows, int cols, const std::string& what);

// {dims:{n,m,p}, d, blocks:{A,B,C,D,E,U}}; derived blocks are not written.
nlohmann::ordered_json connection_to_json(const Matrix2Connection& w);
Matrix2Connection connection_from_json(const nlohmann::json& j);

void write_connection(const Matrix2Connection& w, const std::string& path);
Matrix2Connection read_connection(const std::string& path);

nlohmann::ordered_json gl1_to_json(const GL1Element& h);
nlohmann::ordered_json gl0_to_json(const GL0Element& g);

// Writes text with a trailing newline; throws on failure.
void write_text(const std::string& path, const std::string& text);

}  // namespace msd

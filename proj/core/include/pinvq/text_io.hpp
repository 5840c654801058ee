#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pinvq/matrix.hpp"

namespace pinvq {

// Exact text formats.
//
//   matrix:  first line "m n", then m lines of n whitespace-separated entries
//   vector:  first line "m", then m whitespace-separated entries
//   entry:   "a", "a/b", "a/b+c/di", "c/di" (sign-joined imaginary part, suffix i)
//
// Only integers and integer fractions are accepted; floating-point literals
// are rejected with ParseError.

Rat parse_rat(std::string_view text);
GaussRat parse_entry(std::string_view text);

QMatrix parse_matrix(std::string_view text);
QVector parse_vector(std::string_view text);

std::string format_matrix(const QMatrix& a);
std::string format_vector(const QVector& x);

QMatrix read_matrix_file(const std::filesystem::path& path);
QVector read_vector_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace pinvq

#include "pinvq/text_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace pinvq {

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Consumes [+-]?digits(/digits)? starting at pos; returns false if no digits.
bool scan_rat(std::string_view s, std::size_t& pos, bool allow_sign, Rat& out) {
  std::size_t p = pos;
  bool negative = false;
  if (allow_sign && p < s.size() && (s[p] == '+' || s[p] == '-')) {
    negative = s[p] == '-';
    ++p;
  }
  const std::size_t num_begin = p;
  while (p < s.size() && is_digit(s[p])) ++p;
  if (p == num_begin) return false;
  Int num(std::string(s.substr(num_begin, p - num_begin)), 10);
  Int den = 1;
  if (p < s.size() && s[p] == '/') {
    ++p;
    const std::size_t den_begin = p;
    while (p < s.size() && is_digit(s[p])) ++p;
    if (p == den_begin) return false;
    den = Int(std::string(s.substr(den_begin, p - den_begin)), 10);
    if (sgn(den) == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
  }
  if (negative) num = -num;
  out = make_rat(num, den);
  pos = p;
  return true;
}

[[noreturn]] void bad_entry(std::string_view text) {
  throw ParseError("malformed entry '" + std::string(text) +
                   "' (expected a, a/b or a/b+c/di; floating-point literals are not accepted)");
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

std::size_t parse_extent(const std::string& tok, const char* what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(std::string("malformed ") + what + " '" + tok + "'");
  }
  const unsigned long long v = std::stoull(tok);
  if (v == 0) throw ParseError(std::string(what) + " must be at least 1");
  return static_cast<std::size_t>(v);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::size_t pos = 0;
  Rat q;
  if (!scan_rat(text, pos, true, q) || pos != text.size()) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  return q;
}

GaussRat parse_entry(std::string_view text) {
  std::size_t pos = 0;
  Rat first;
  if (!scan_rat(text, pos, true, first)) bad_entry(text);
  if (pos == text.size()) return GaussRat(first);
  if (text[pos] == 'i' && pos + 1 == text.size()) return {Rat(0), first};
  if (text[pos] != '+' && text[pos] != '-') bad_entry(text);
  const bool negative = text[pos] == '-';
  ++pos;
  Rat second;
  if (!scan_rat(text, pos, false, second)) bad_entry(text);
  if (pos + 1 != text.size() || text[pos] != 'i') bad_entry(text);
  if (negative) second = -second;
  return {first, second};
}

QMatrix parse_matrix(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty matrix text");
  const auto header = split_tokens(lines.front());
  if (header.size() != 2) throw ParseError("matrix header must be 'm n'");
  const std::size_t m = parse_extent(header[0], "row count");
  const std::size_t n = parse_extent(header[1], "column count");
  if (lines.size() != m + 1) {
    throw ParseError("expected " + std::to_string(m) + " matrix rows, found " +
                     std::to_string(lines.size() - 1));
  }
  std::vector<GaussRat> entries;
  entries.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = split_tokens(lines[i + 1]);
    if (row.size() != n) {
      throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(n));
    }
    for (const auto& tok : row) entries.push_back(parse_entry(tok));
  }
  return {m, n, std::move(entries)};
}

QVector parse_vector(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty vector text");
  const auto header = split_tokens(lines.front());
  if (header.size() != 1) throw ParseError("vector header must be 'm'");
  const std::size_t m = parse_extent(header[0], "dimension");
  std::vector<GaussRat> entries;
  for (std::size_t l = 1; l < lines.size(); ++l)
    for (const auto& tok : split_tokens(lines[l])) entries.push_back(parse_entry(tok));
  if (entries.size() != m) {
    throw ParseError("expected " + std::to_string(m) + " vector entries, found " +
                     std::to_string(entries.size()));
  }
  return QVector(std::move(entries));
}

std::string format_matrix(const QMatrix& a) {
  std::string out = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j > 0) out += ' ';
      out += to_string(a(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_vector(const QVector& x) {
  std::string out = std::to_string(x.dim()) + "\n";
  for (std::size_t i = 0; i < x.dim(); ++i) out += to_string(x[i]) + "\n";
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << contents;
}

QMatrix read_matrix_file(const std::filesystem::path& path) {
  return parse_matrix(read_text_file(path));
}

QVector read_vector_file(const std::filesystem::path& path) {
  return parse_vector(read_text_file(path));
}

}  // namespace pinvq

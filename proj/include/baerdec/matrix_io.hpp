// Plain-text matrix files.
//
//   # comment to end of line
//   matrix <name> <n>
//   <n rows of n whitespace-separated entries>
//
// <name> matches [A-Za-z_][A-Za-z0-9_]*. An entry is `<float>`,
// `<float>±<float>j` or `<float>j`. Serialization always writes
// `<re>±<im>j` with 17 significant digits, which round-trips exactly.

#ifndef BAERDEC_MATRIX_IO_HPP
#define BAERDEC_MATRIX_IO_HPP

#include "numeric.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace baerdec {

class ParseError : public InputError {
public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_, column_;
};

struct NamedMatrix {
  std::string name;
  ComplexMatrix matrix;
};

class MatrixFile {
public:
  const std::vector<NamedMatrix>& blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }

  const ComplexMatrix* find(std::string_view name) const {
    for (const auto& b : blocks_)
      if (b.name == name) return &b.matrix;
    return nullptr;
  }

  const ComplexMatrix& at(std::string_view name) const {
    if (const auto* m = find(name)) return *m;
    throw LookupError("no matrix named '" + std::string(name) + "'");
  }

  void add(std::string name, ComplexMatrix m) {
    if (!valid_name(name)) throw InputError("invalid matrix name '" + name + "'");
    if (find(name)) throw InputError("duplicate matrix name '" + name + "'");
    require_square(m, name.c_str());
    blocks_.push_back({std::move(name), std::move(m)});
  }

  static bool valid_name(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
  }

private:
  std::vector<NamedMatrix> blocks_;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

/// Parses a float at the front of `s`, accepting an explicit leading '+'.
inline std::optional<std::size_t> read_float(std::string_view s, double& v) {
  std::size_t skip = 0;
  if (!s.empty() && s[0] == '+') {
    skip = 1;
    if (s.size() > 1 && (s[1] == '+' || s[1] == '-')) return std::nullopt;
  }
  const char* b = s.data() + skip;
  const char* e = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(b, e, v, std::chars_format::general);
  if (ec != std::errc() || ptr == b) return std::nullopt;
  // reject inf / nan spellings
  for (const char* c = b; c != ptr; ++c)
    if (std::isalpha(static_cast<unsigned char>(*c)) && *c != 'e' && *c != 'E') return std::nullopt;
  return static_cast<std::size_t>(ptr - s.data());
}

}  // namespace detail

/// Parses one matrix entry; nullopt if malformed.
inline std::optional<cplx> parse_entry(std::string_view s) {
  double a = 0.0;
  auto n = detail::read_float(s, a);
  if (!n) return std::nullopt;
  std::string_view rest = s.substr(*n);
  if (rest.empty()) return cplx(a, 0.0);
  if (rest == "j") return cplx(0.0, a);
  if (rest[0] != '+' && rest[0] != '-') return std::nullopt;
  const bool neg = rest[0] == '-';
  rest.remove_prefix(1);
  if (rest.empty() || rest[0] == '+' || rest[0] == '-') return std::nullopt;
  double b = 0.0;
  auto m = detail::read_float(rest, b);
  if (!m || rest.substr(*m) != "j") return std::nullopt;
  return cplx(a, neg ? -b : b);
}

inline MatrixFile parse_matrix_file(std::string_view text) {
  MatrixFile file;
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view l = text.substr(start, end - start);
      if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
      if (const auto h = l.find('#'); h != std::string_view::npos) l = l.substr(0, h);
      lines.push_back(l);
      if (end == text.size()) break;
      start = end + 1;
    }
  }

  std::size_t i = 0;
  auto blank = [](std::string_view l) { return l.find_first_not_of(" \t") == std::string_view::npos; };
  while (i < lines.size()) {
    if (blank(lines[i])) {
      ++i;
      continue;
    }
    const std::size_t header_line = i + 1;
    const auto toks = detail::tokenize(lines[i]);
    if (toks.size() != 3 || toks[0].text != "matrix")
      throw ParseError("expected header 'matrix <name> <n>'", header_line, toks.front().column);
    const std::string name(toks[1].text);
    if (!MatrixFile::valid_name(name)) throw ParseError("invalid matrix name '" + name + "'", header_line, toks[1].column);
    if (file.find(name)) throw ParseError("duplicate matrix name '" + name + "'", header_line, toks[1].column);
    long n = 0;
    {
      auto [ptr, ec] = std::from_chars(toks[2].text.data(), toks[2].text.data() + toks[2].text.size(), n);
      if (ec != std::errc() || ptr != toks[2].text.data() + toks[2].text.size() || n < 1)
        throw ParseError("dimension must be a positive integer", header_line, toks[2].column);
    }
    ++i;

    ComplexMatrix m(n, n);
    for (long r = 0; r < n; ++r) {
      while (i < lines.size() && blank(lines[i])) ++i;
      if (i >= lines.size())
        throw ParseError("matrix '" + name + "' has " + std::to_string(r) + " of " + std::to_string(n) + " rows",
                         lines.size(), 1);
      const auto row = detail::tokenize(lines[i]);
      if (static_cast<long>(row.size()) != n)
        throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n), i + 1,
                         row.empty() ? 1 : row.front().column);
      for (long c = 0; c < n; ++c) {
        const auto v = parse_entry(row[static_cast<std::size_t>(c)].text);
        if (!v) throw ParseError("cannot parse entry '" + std::string(row[static_cast<std::size_t>(c)].text) + "'", i + 1,
                                 row[static_cast<std::size_t>(c)].column);
        m(r, c) = *v;
      }
      ++i;
    }
    file.add(name, std::move(m));
  }
  return file;
}

inline std::string format_entry(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

inline std::string serialize_matrix(std::string_view name, const ComplexMatrix& m) {
  std::string out = "matrix " + std::string(name) + " " + std::to_string(m.rows()) + "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ' ';
      out += format_entry(m(r, c));
    }
    out += '\n';
  }
  return out;
}

inline std::string serialize_matrix_file(const MatrixFile& f) {
  std::string out;
  for (const auto& b : f.blocks()) out += serialize_matrix(b.name, b.matrix);
  return out;
}

inline MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix_file(ss.str());
}

inline void write_matrix_file(const std::string& path, const MatrixFile& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << serialize_matrix_file(f);
}

}  // namespace baerdec

#endif  // BAERDEC_MATRIX_IO_HPP

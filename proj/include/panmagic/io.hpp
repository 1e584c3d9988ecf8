#pragma once

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "panmagic/matrix.hpp"
#include "panmagic/scalar.hpp"

namespace panmagic {

/// Malformed input. `what()` is a one-line diagnostic naming the source,
/// line and offending token.
class ParseError : public Error {
public:
  ParseError(const std::string& source, int line, const std::string& token, const std::string& detail)
      : Error(source + ":" + std::to_string(line) + ": " + detail + (token.empty() ? "" : " '" + token + "'")),
        source_(source), line_(line), token_(token) {}

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  const std::string& token() const { return token_; }

private:
  std::string source_;
  int line_;
  std::string token_;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;)
    out.push_back(t);
  return out;
}

inline bool blank(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c)))
      return false;
  return true;
}

inline int parse_order(const std::string& source, int line, const std::string& tok) {
  if (tok.empty() || tok.size() > 6 || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(source, line, tok, "expected a positive order");
  int n = std::stoi(tok);
  if (n < 1)
    throw ParseError(source, line, tok, "expected a positive order");
  return n;
}

inline SquareMatrix parse_matrix_json(std::string_view text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source, 1, "", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer() || !doc.contains("entries") ||
      !doc["entries"].is_array())
    throw ParseError(source, 1, "", "expected {\"n\": int, \"entries\": [[...]]}");
  const long n = doc["n"].get<long>();
  if (n < 1 || n > 100000)
    throw ParseError(source, 1, std::to_string(n), "expected a positive order");
  const auto& rows = doc["entries"];
  if (rows.size() != static_cast<std::size_t>(n))
    throw ParseError(source, 1, "", "expected " + std::to_string(n) + " rows, got " + std::to_string(rows.size()));
  SquareMatrix m(static_cast<int>(n));
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != static_cast<std::size_t>(n))
      throw ParseError(source, 1, "", "row " + std::to_string(i) + " must hold " + std::to_string(n) + " entries");
    for (int j = 0; j < n; ++j) {
      const auto& e = rows[i][j];
      std::string tok = e.is_string() ? e.get<std::string>() : e.dump();
      auto v = e.is_string() ? parse_scalar(tok) : std::nullopt;
      if (!v)
        throw ParseError(source, 1, tok, "malformed rational at row " + std::to_string(i) + ", column " + std::to_string(j));
      m(i, j) = *v;
    }
  }
  return m;
}

} // namespace detail

/// Reads the text format (`n` then n rows of n rationals) or, when the
/// first non-blank character is `{`, the JSON form.
inline SquareMatrix parse_matrix(std::string_view text, const std::string& source = "<input>") {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{')
    return detail::parse_matrix_json(text, source);

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int n = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty())
      continue;
    if (toks.size() != 1)
      throw ParseError(source, lineno, toks[1], "expected the order alone on the first line");
    n = detail::parse_order(source, lineno, toks[0]);
    break;
  }
  if (n == 0)
    throw ParseError(source, lineno, "", "empty input");

  SquareMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      throw ParseError(source, lineno + 1, "", "expected " + std::to_string(n) + " rows, got " + std::to_string(i));
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.size() != static_cast<std::size_t>(n))
      throw ParseError(source, lineno, toks.size() > static_cast<std::size_t>(n) ? toks[n] : "",
                       "expected " + std::to_string(n) + " entries, got " + std::to_string(toks.size()));
    for (int j = 0; j < n; ++j) {
      auto v = parse_scalar(toks[j]);
      if (!v)
        throw ParseError(source, lineno, toks[j], "malformed rational");
      m(i, j) = *v;
    }
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!detail::blank(line))
      throw ParseError(source, lineno, detail::split_ws(line)[0], "unexpected trailing data");
  }
  return m;
}

inline std::string format_matrix(const SquareMatrix& m) {
  std::string out = std::to_string(m.order()) + "\n";
  for (int i = 0; i < m.order(); ++i) {
    for (int j = 0; j < m.order(); ++j) {
      if (j)
        out += ' ';
      out += to_string(m(i, j));
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::json matrix_to_json(const SquareMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.order(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.order(); ++j)
      row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"n", m.order()}, {"entries", std::move(rows)}};
}

/// Permutation text format: `n`, then the n images on one line.
inline Permutation parse_permutation(std::string_view text, const std::string& source = "<input>") {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int n = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty())
      continue;
    if (toks.size() != 1)
      throw ParseError(source, lineno, toks[1], "expected the degree alone on the first line");
    n = detail::parse_order(source, lineno, toks[0]);
    break;
  }
  if (n == 0 || !std::getline(in, line))
    throw ParseError(source, lineno + 1, "", "missing image line");
  ++lineno;
  auto toks = detail::split_ws(line);
  if (toks.size() != static_cast<std::size_t>(n))
    throw ParseError(source, lineno, "", "expected " + std::to_string(n) + " images, got " + std::to_string(toks.size()));
  std::vector<int> images;
  for (const auto& t : toks) {
    if (t.empty() || t.size() > 6 || t.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(source, lineno, t, "malformed image");
    images.push_back(std::stoi(t));
  }
  try {
    return Permutation(std::move(images));
  } catch (const Error& e) {
    throw ParseError(source, lineno, "", e.what());
  }
}

inline std::string format_permutation(const Permutation& p) {
  std::string out = std::to_string(p.degree()) + "\n";
  for (int j = 0; j < p.degree(); ++j) {
    if (j)
      out += ' ';
    out += std::to_string(p(j));
  }
  return out + "\n";
}

/// Reads a whole file, or stdin when `path` is "-".
inline std::string read_source(const std::string& path, std::istream& stdin_stream = std::cin) {
  std::ostringstream ss;
  if (path == "-") {
    ss << stdin_stream.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f)
    throw ParseError(path, 0, "", "cannot open file");
  ss << f.rdbuf();
  return ss.str();
}

} // namespace panmagic

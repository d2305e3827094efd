#pragma once

// Shared JSON plumbing for certificate files. Private to the library.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "spectral_chroma/errors.hpp"
#include "spectral_chroma/linalg.hpp"

namespace spectral_chroma::detail {

inline nlohmann::json to_json(const SymMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<double> r(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) r[j] = m(i, j);
    rows.push_back(r);
  }
  return rows;
}

// Dense rows; the upper triangle is authoritative.
inline SymMatrix sym_from_json(const nlohmann::json& rows, std::size_t n) {
  if (!rows.is_array() || rows.size() != n) throw InputError("certificate: matrix has the wrong number of rows");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = rows[i].get<std::vector<double>>();
    if (r.size() != n) throw InputError("certificate: matrix row has the wrong length");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = r[j];
  }
  return SymMatrix::from_upper(m);
}

inline nlohmann::json parse_json(std::string_view text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what(), e.byte);
  }
}

}  // namespace spectral_chroma::detail

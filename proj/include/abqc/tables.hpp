// Copyright 2026 The abqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ABQC_TABLES_HPP
#define ABQC_TABLES_HPP

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "abqc/bounds.hpp"

namespace abqc {

/// One row of the parameter table: the minimal test and discard counts for a
/// given register size, and the resulting soundness budget.
struct BoundsRow {
  int n = 1;
  int64_t min_k = 1;
  int64_t min_m_derived = 1;     // from the k^2 form the error chain yields
  double min_m_text_form = 1;    // the k^n form as printed in the protocol text
  double max_deviation_term = 0;
  double definetti_term = 0;
  double total = 0;
  bool satisfied = false;
};

/// Builds rows for n in [n_lo, n_hi]. With use_text_form_m the budget is
/// evaluated at the k^n-form copy count (when it is finitely representable)
/// instead of the derived k^2 form.
inline std::vector<BoundsRow> bounds_table(int n_lo, int n_hi, bool use_text_form_m = false) {
  if (n_lo < 1 || n_hi < n_lo) {
    throw std::invalid_argument("bounds_table: need 1 <= n_lo <= n_hi");
  }
  std::vector<BoundsRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    BoundsRow row;
    row.n = n;
    row.min_k = min_k(n);
    row.min_m_derived = min_m(n, row.min_k);
    row.min_m_text_form = min_m_text_form(n, row.min_k);
    int64_t budget_m = row.min_m_derived;
    if (use_text_form_m && std::isfinite(row.min_m_text_form) && row.min_m_text_form < 9.0e18) {
      budget_m = static_cast<int64_t>(row.min_m_text_form);
    }
    SoundnessBudget b = budget(n, row.min_k, budget_m);
    row.max_deviation_term = b.max_deviation_term;
    row.definetti_term = b.definetti_term;
    row.total = b.total;
    row.satisfied = b.satisfied;
    rows.push_back(row);
  }
  return rows;
}

inline nlohmann::ordered_json to_json(const BoundsRow& row) {
  nlohmann::ordered_json j;
  j["n"] = row.n;
  j["min_k"] = row.min_k;
  j["min_m_derived"] = row.min_m_derived;
  j["min_m_text_form"] = std::isfinite(row.min_m_text_form) ? nlohmann::ordered_json(row.min_m_text_form)
                                                            : nlohmann::ordered_json(nullptr);
  j["max_deviation_term"] = row.max_deviation_term;
  j["definetti_term"] = row.definetti_term;
  j["total"] = row.total;
  j["satisfied"] = row.satisfied;
  return j;
}

inline std::string bounds_table_csv(const std::vector<BoundsRow>& rows) {
  std::ostringstream out;
  out << "n,min_k,min_m_derived,min_m_text_form,max_deviation_term,definetti_term,total,satisfied\n";
  out.precision(17);
  for (const auto& row : rows) {
    out << row.n << "," << row.min_k << "," << row.min_m_derived << ",";
    if (std::isfinite(row.min_m_text_form)) {
      out << row.min_m_text_form;
    } else {
      out << "inf";
    }
    out << "," << row.max_deviation_term << "," << row.definetti_term << "," << row.total << ","
        << (row.satisfied ? "true" : "false") << "\n";
  }
  return out.str();
}

}  // namespace abqc

#endif  // ABQC_TABLES_HPP

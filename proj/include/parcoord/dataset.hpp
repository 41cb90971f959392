#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "parcoord/errors.hpp"

namespace parcoord {

/// Column-major numeric table with attribute names and optional cluster
/// labels. Immutable by convention once constructed; every transformation
/// returns a new dataset.
struct dataset {
  std::vector<std::string> attribute_names;   // size p
  std::vector<std::vector<double>> columns;   // p columns of length n
  std::optional<std::vector<int>> labels;     // length n, values 0..k-1
  std::size_t rows_dropped = 0;               // incomplete rows removed at load

  std::size_t n_rows() const { return columns.empty() ? 0 : columns.front().size(); }
  std::size_t n_attributes() const { return columns.size(); }

  /// Number of label classes (0 when no labels are attached).
  std::size_t n_classes() const {
    if (!labels || labels->empty()) return 0;
    return static_cast<std::size_t>(*std::max_element(labels->begin(), labels->end())) + 1;
  }

  void validate() const {
    if (n_attributes() < 2) throw data_error("dataset needs at least 2 attributes");
    if (n_rows() < 2) throw data_error("dataset needs at least 2 rows");
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != n_rows())
        throw data_error("column length mismatch in attribute '" + attribute_names[j] + "'");
      for (double v : columns[j])
        if (!std::isfinite(v))
          throw data_error("non-finite value in attribute '" + attribute_names[j] + "'");
    }
    if (attribute_names.size() != columns.size())
      throw data_error("attribute name count does not match column count");
    for (std::size_t a = 0; a < attribute_names.size(); ++a) {
      if (attribute_names[a].empty()) throw data_error("empty attribute name");
      for (std::size_t b = a + 1; b < attribute_names.size(); ++b)
        if (attribute_names[a] == attribute_names[b])
          throw data_error("duplicate attribute name '" + attribute_names[a] + "'");
    }
    if (labels) {
      if (labels->size() != n_rows()) throw data_error("label vector length mismatch");
      const std::size_t k = n_classes();
      std::vector<std::size_t> counts(k, 0);
      for (int l : *labels) {
        if (l < 0 || static_cast<std::size_t>(l) >= k) throw data_error("label id out of range");
        ++counts[static_cast<std::size_t>(l)];
      }
      for (std::size_t c = 0; c < k; ++c)
        if (counts[c] == 0) throw data_error("label class " + std::to_string(c) + " is empty");
    }
  }

  std::size_t attribute_index(std::string_view name) const {
    for (std::size_t j = 0; j < attribute_names.size(); ++j)
      if (attribute_names[j] == name) return j;
    throw data_error("unknown attribute '" + std::string(name) + "'");
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline bool is_missing_token(std::string_view cell) {
  const std::string_view t = trim(cell);
  return t.empty() || t == "NA";
}

inline bool parse_number(std::string_view cell, double& out) {
  const std::string_view t = trim(cell);
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (first != last && *first == '+') ++first;  // from_chars rejects a leading '+'
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !t.empty();
}

/// RFC-4180-style record splitter: quoted fields, "" escapes, CRLF or LF
/// line ends, newlines allowed inside quotes.
inline std::vector<std::vector<std::string>> parse_csv_records(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  auto end_field = [&] {
    row.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // Skip records that are entirely empty (blank lines).
    if (!(row.size() == 1 && row[0].empty())) records.push_back(row);
    row.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field_started && field.empty()) {
          in_quotes = true;
          field_started = true;
        } else {
          field += c;  // stray quote inside an unquoted field, keep verbatim
        }
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) throw csv_error("unterminated quoted field");
  if (field_started || !field.empty() || !row.empty()) end_record();
  return records;
}

}  // namespace detail

/// Loads a CSV file (header required, '.' decimal separator). Cells that are
/// empty or "NA" mark a row as incomplete; incomplete rows are dropped and
/// counted in dataset::rows_dropped. A label column, when named, is removed
/// from the numeric block and factorized to 0..k-1 in first-appearance order.
inline dataset load_csv(const std::filesystem::path& path,
                        const std::optional<std::string>& label_column = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw csv_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  const auto records = detail::parse_csv_records(text);
  if (records.empty()) throw csv_error("'" + path.string() + "' is empty");

  const auto& header = records.front();
  std::size_t label_idx = header.size();
  for (std::size_t j = 0; j < header.size(); ++j) {
    const std::string name{detail::trim(header[j])};
    if (name.empty()) throw csv_error("empty header name in column " + std::to_string(j + 1));
    for (std::size_t b = j + 1; b < header.size(); ++b)
      if (name == std::string(detail::trim(header[b])))
        throw csv_error("duplicate header name '" + name + "'");
    if (label_column && name == *label_column) label_idx = j;
  }
  if (label_column && label_idx == header.size())
    throw csv_error("label column '" + *label_column + "' not found in header");

  dataset d;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (j != label_idx) d.attribute_names.emplace_back(detail::trim(header[j]));
  if (d.attribute_names.size() < 2)
    throw csv_error("'" + path.string() + "' has fewer than 2 numeric columns");
  d.columns.assign(d.attribute_names.size(), {});

  std::vector<int> labels;
  std::unordered_map<std::string, int> label_codes;
  std::vector<double> parsed(d.attribute_names.size());

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& row = records[r];
    if (row.size() != header.size())
      throw csv_error("row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
                      " fields, expected " + std::to_string(header.size()));
    bool incomplete = false;
    for (const auto& cell : row)
      if (detail::is_missing_token(cell)) incomplete = true;
    if (incomplete) {
      ++d.rows_dropped;
      continue;
    }
    std::size_t out = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j == label_idx) continue;
      double v = 0;
      if (!detail::parse_number(row[j], v))
        throw csv_error("row " + std::to_string(r + 1) + ", column '" + d.attribute_names[out] +
                        "': cannot parse '" + row[j] + "' as a number");
      if (!std::isfinite(v))
        throw csv_error("row " + std::to_string(r + 1) + ", column '" + d.attribute_names[out] +
                        "': non-finite value");
      parsed[out++] = v;
    }
    for (std::size_t j = 0; j < parsed.size(); ++j) d.columns[j].push_back(parsed[j]);
    if (label_idx < header.size()) {
      const std::string key{detail::trim(row[label_idx])};
      auto [it, inserted] = label_codes.try_emplace(key, static_cast<int>(label_codes.size()));
      labels.push_back(it->second);
    }
  }

  if (d.n_rows() < 2)
    throw csv_error("'" + path.string() + "' has fewer than 2 complete rows");
  if (label_idx < header.size()) d.labels = std::move(labels);
  d.validate();
  return d;
}

/// Affinely maps every column onto [0, 1]; constant columns map to 0.5.
inline dataset minmax_normalize(const dataset& d) {
  dataset out = d;
  for (auto& col : out.columns) {
    const auto [mn_it, mx_it] = std::minmax_element(col.begin(), col.end());
    const double mn = *mn_it, mx = *mx_it;
    if (mx > mn) {
      const double scale = 1.0 / (mx - mn);
      for (double& v : col) v = (v - mn) * scale;
    } else {
      for (double& v : col) v = 0.5;
    }
  }
  return out;
}

/// Centers and scales every column to mean 0, standard deviation 1
/// (divisor n); constant columns map to all zeros.
inline dataset standardize(const dataset& d) {
  dataset out = d;
  const double n = static_cast<double>(d.n_rows());
  for (auto& col : out.columns) {
    double mean = 0;
    for (double v : col) mean += v;
    mean /= n;
    double var = 0;
    for (double v : col) var += (v - mean) * (v - mean);
    var /= n;
    if (var > 0) {
      const double inv_sd = 1.0 / std::sqrt(var);
      for (double& v : col) v = (v - mean) * inv_sd;
    } else {
      for (double& v : col) v = 0.0;
    }
  }
  return out;
}

/// Writes cluster labels as a single-column CSV aligned to the dataset rows.
inline void save_labels_csv(const std::filesystem::path& path, const std::vector<int>& labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write '" + path.string() + "'");
  out << "label\n";
  for (int l : labels) out << l << "\n";
}

/// Reads a single-column label CSV (header "label"). Files that already hold
/// a dense 0..k-1 integer coding keep their ids (so save/load round-trips and
/// render colors stay stable); anything else is factorized in
/// first-appearance order.
inline std::vector<int> load_labels_csv(const std::filesystem::path& path,
                                        std::size_t expected_rows) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto records = detail::parse_csv_records(buf.str());
  if (records.empty()) throw data_error("label file '" + path.string() + "' is empty");
  if (records.front().size() != 1)
    throw data_error("label file '" + path.string() + "' must have exactly one column");

  std::vector<std::string> cells;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const std::string key{detail::trim(records[r][0])};
    if (key.empty() || key == "NA")
      throw data_error("missing label in row " + std::to_string(r + 1));
    cells.push_back(key);
  }
  if (cells.size() != expected_rows)
    throw data_error("label file has " + std::to_string(cells.size()) + " rows, dataset has " +
                     std::to_string(expected_rows));

  std::vector<int> labels(cells.size());
  bool dense_integers = true;
  int max_label = -1;
  for (std::size_t r = 0; r < cells.size() && dense_integers; ++r) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(cells[r].data(), cells[r].data() + cells[r].size(), v);
    if (ec != std::errc() || ptr != cells[r].data() + cells[r].size() || v < 0) {
      dense_integers = false;
      break;
    }
    labels[r] = v;
    max_label = std::max(max_label, v);
  }
  if (dense_integers) {
    std::vector<bool> seen(static_cast<std::size_t>(max_label) + 1, false);
    for (int v : labels) seen[static_cast<std::size_t>(v)] = true;
    dense_integers = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }
  if (!dense_integers) {
    std::unordered_map<std::string, int> codes;
    for (std::size_t r = 0; r < cells.size(); ++r) {
      auto [it, inserted] = codes.try_emplace(cells[r], static_cast<int>(codes.size()));
      labels[r] = it->second;
    }
  }
  return labels;
}

}  // namespace parcoord

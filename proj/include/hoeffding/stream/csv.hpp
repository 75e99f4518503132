#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <variant>
#include <vector>

#include "hoeffding/error.hpp"
#include "hoeffding/params.hpp"

namespace ht {

/// A column named either by header text or by zero-based position.
struct ColumnRef {
  std::variant<std::size_t, std::string> ref;

  /// All-digit text is an index, anything else a header name.
  static ColumnRef parse(std::string_view text) {
    if (!text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      std::size_t v = 0;
      std::from_chars(text.data(), text.data() + text.size(), v);
      return ColumnRef{v};
    }
    return ColumnRef{std::string(text)};
  }
};

struct CsvSchema {
  std::optional<ColumnRef> label;        ///< default: last column
  std::vector<ColumnRef> features;       ///< default: every column except label and flag
  std::vector<ColumnRef> categorical;    ///< columns mapped to first-appearance ordinal codes
  std::optional<ColumnRef> train_flag;   ///< 0/1 column; absent means every row trains
  bool header = false;
  char delimiter = ',';
  std::uint32_t max_classes = 0;         ///< 0 = no cap on label cardinality
};

struct CsvDataset {
  std::vector<Sample> samples;
  std::vector<std::string> feature_names;
  std::vector<std::string> label_names;  ///< label code -> original text

  std::uint32_t dims() const { return static_cast<std::uint32_t>(feature_names.size()); }
  std::uint32_t classes() const { return static_cast<std::uint32_t>(label_names.size()); }
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line, char delim) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    std::string_view f = line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.remove_suffix(1);
    if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
    fields.push_back(f);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

class OrdinalCodes {
 public:
  std::size_t code(std::string_view v) {
    auto [it, inserted] = codes_.try_emplace(std::string(v), names_.size());
    if (inserted) names_.emplace_back(v);
    return it->second;
  }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::unordered_map<std::string, std::size_t> codes_;
  std::vector<std::string> names_;
};

}  // namespace detail

/// Reads a delimited file in row order. Numeric columns must parse as finite
/// floats; categorical columns and the label are coded 0, 1, ... in order of
/// first appearance. Any malformed row aborts the load with its line number.
inline CsvDataset load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());

  const std::string where = path.string();
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  std::size_t width = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (schema.header) {
    if (!next_line()) throw DataError(where + ": missing header row");
    for (auto f : detail::split_fields(line, schema.delimiter)) header.emplace_back(f);
    width = header.size();
  }

  bool have_pending = false;
  if (!schema.header) {
    if (next_line()) {
      have_pending = true;
      width = detail::split_fields(line, schema.delimiter).size();
    }
  }

  auto resolve = [&](const ColumnRef& c) -> std::size_t {
    if (const auto* idx = std::get_if<std::size_t>(&c.ref)) {
      if (*idx >= width && width > 0) {
        throw DataError(where + ": column index " + std::to_string(*idx) + " out of range (" +
                        std::to_string(width) + " columns)");
      }
      return *idx;
    }
    const auto& name = std::get<std::string>(c.ref);
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError(where + ": no column named '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };

  CsvDataset out;
  if (width == 0) return out;  // empty file or header only

  const std::size_t label_col = schema.label ? resolve(*schema.label) : width - 1;
  const std::optional<std::size_t> flag_col =
      schema.train_flag ? std::optional<std::size_t>(resolve(*schema.train_flag)) : std::nullopt;
  std::vector<std::size_t> feature_cols;
  if (schema.features.empty()) {
    for (std::size_t c = 0; c < width; ++c) {
      if (c != label_col && (!flag_col || c != *flag_col)) feature_cols.push_back(c);
    }
  } else {
    for (const auto& f : schema.features) feature_cols.push_back(resolve(f));
  }
  if (feature_cols.empty()) throw DataError(where + ": no feature columns");
  std::vector<bool> is_categorical(width, false);
  for (const auto& c : schema.categorical) is_categorical[resolve(c)] = true;

  for (std::size_t c : feature_cols) {
    out.feature_names.push_back(header.empty() ? "x" + std::to_string(c) : header[c]);
  }

  std::vector<detail::OrdinalCodes> categories(width);
  detail::OrdinalCodes labels;

  auto parse_row = [&]() {
    const auto fields = detail::split_fields(line, schema.delimiter);
    auto fail = [&](const std::string& msg) {
      throw DataError(where + ":" + std::to_string(line_no) + ": " + msg);
    };
    if (fields.size() != width) {
      fail("expected " + std::to_string(width) + " fields, found " + std::to_string(fields.size()));
    }
    Sample s;
    s.features.reserve(feature_cols.size());
    for (std::size_t c : feature_cols) {
      const std::string_view f = fields[c];
      if (f.empty()) fail("empty field in column " + std::to_string(c));
      if (is_categorical[c]) {
        s.features.push_back(static_cast<float>(categories[c].code(f)));
        continue;
      }
      float v = 0.0f;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v)) {
        fail("non-numeric value '" + std::string(f) + "' in numeric column " + std::to_string(c));
      }
      s.features.push_back(v);
    }
    const std::string_view label = fields[label_col];
    if (label.empty()) fail("empty label");
    s.label = static_cast<Label>(labels.code(label));
    if (schema.max_classes > 0 && labels.names().size() > schema.max_classes) {
      fail("label '" + std::string(label) + "' exceeds the " + std::to_string(schema.max_classes) + " allowed classes");
    }
    if (flag_col) {
      const std::string_view f = fields[*flag_col];
      if (f == "1" || f == "true") {
        s.train = true;
      } else if (f == "0" || f == "false") {
        s.train = false;
      } else {
        fail("train flag must be 0 or 1, found '" + std::string(f) + "'");
      }
    }
    out.samples.push_back(std::move(s));
  };

  if (have_pending) parse_row();
  while (next_line()) parse_row();

  out.label_names = labels.names();
  return out;
}

/// Writes samples as CSV: features then label, no header. Floats use the
/// shortest text that reads back to the same value.
inline void write_csv(const std::filesystem::path& path, std::span<const Sample> samples) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  std::string row;
  char buf[64];
  for (const auto& s : samples) {
    row.clear();
    for (float f : s.features) {
      const auto res = std::to_chars(buf, buf + sizeof buf, f);
      row.append(buf, res.ptr);
      row.push_back(',');
    }
    row += std::to_string(s.label);
    row.push_back('\n');
    out << row;
  }
  if (!out) throw DataError("failed writing " + path.string());
}

/// Rescales every feature column to [0, 1] using its observed min and max.
/// Constant columns map to 0.
inline void rescale_unit_range(std::vector<Sample>& samples) {
  if (samples.empty()) return;
  const std::size_t dims = samples.front().features.size();
  std::vector<float> lo(dims, std::numeric_limits<float>::max());
  std::vector<float> hi(dims, std::numeric_limits<float>::lowest());
  for (const auto& s : samples) {
    for (std::size_t d = 0; d < dims; ++d) {
      lo[d] = std::min(lo[d], s.features[d]);
      hi[d] = std::max(hi[d], s.features[d]);
    }
  }
  for (auto& s : samples) {
    for (std::size_t d = 0; d < dims; ++d) {
      const double span = static_cast<double>(hi[d]) - lo[d];
      s.features[d] = span > 0.0 ? static_cast<float>((static_cast<double>(s.features[d]) - lo[d]) / span) : 0.0f;
    }
  }
}

}  // namespace ht

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hoeffding/hoeffding.hpp"
#include "hoeffding/stream/report_io.hpp"

namespace ht::cli {

struct CsvSource {
  std::filesystem::path path;
  CsvSchema schema;
  bool rescale = false;  ///< min-max scale every feature to [0, 1] after loading
};

struct RunConfig {
  std::variant<DatasetSpec, CsvSource> source;
  Hyperparams params;                      ///< dims and classes are taken from the data
  std::optional<std::uint32_t> classes;    ///< overrides the label cardinality found in a CSV
  std::size_t window = 1000;
  std::optional<std::filesystem::path> report;
  std::optional<std::filesystem::path> snapshot_in;
  std::optional<std::filesystem::path> snapshot_out;
};

struct BundleConfig {
  CsvSource source;
  Hyperparams params;
  std::optional<std::uint32_t> classes;
  std::size_t bundle_size = 4096;
  std::optional<std::filesystem::path> snapshot_in;
  std::optional<std::filesystem::path> snapshot_out;
  std::optional<std::filesystem::path> predictions;
};

enum class MemFormat { table, csv, json };

struct Stream {
  std::vector<Sample> samples;
  std::uint32_t dims = 0;
  std::uint32_t classes = 0;
};

inline Stream load_source(const CsvSource& src, std::optional<std::uint32_t> classes) {
  CsvSchema schema = src.schema;
  if (classes) schema.max_classes = *classes;
  CsvDataset data = load_csv(src.path, schema);
  if (src.rescale) rescale_unit_range(data.samples);
  const std::uint32_t k = classes ? *classes : std::max<std::uint32_t>(2, data.classes());
  return {std::move(data.samples), data.dims(), k};
}

inline Stream load_source(const std::variant<DatasetSpec, CsvSource>& source, std::optional<std::uint32_t> classes) {
  if (const auto* spec = std::get_if<DatasetSpec>(&source)) {
    return {generate_clusters(*spec), spec->dims, spec->clusters};
  }
  return load_source(std::get<CsvSource>(source), classes);
}

inline Tree make_or_load_tree(const std::optional<std::filesystem::path>& snapshot, Hyperparams params,
                              const Stream& stream) {
  if (snapshot) {
    Tree tree = load_tree(*snapshot);
    if (stream.dims != 0 && !stream.samples.empty() && tree.params().dims != stream.dims) {
      throw DataError("snapshot expects " + std::to_string(tree.params().dims) + " features, data has " +
                      std::to_string(stream.dims));
    }
    return tree;
  }
  params.dims = stream.dims;
  params.classes = stream.classes;
  return Tree(params);
}

/// Writes the synthetic cluster stream as CSV, features then label.
inline void cmd_gen(const DatasetSpec& spec, const std::filesystem::path& out) {
  const auto samples = generate_clusters(spec);
  write_csv(out, samples);
}

inline PrequentialReport cmd_run(const RunConfig& cfg, std::ostream& os) {
  Stream stream = load_source(cfg.source, cfg.classes);
  Tree tree = make_or_load_tree(cfg.snapshot_in, cfg.params, stream);

  PrequentialReport report;
  if (!stream.samples.empty()) {
    report = run_prequential(tree, std::span<const Sample>(stream.samples), cfg.window);
  } else if (cfg.snapshot_in) {
    report.final_node_count = tree.node_count();
    report.model_bytes = model_bytes(tree.params());
  } else {
    throw DataError("the dataset contains no samples");
  }

  print_report(os, report);
  if (cfg.report) {
    std::ofstream out(*cfg.report, std::ios::trunc);
    if (!out) throw DataError("cannot open " + cfg.report->string() + " for writing");
    out << nlohmann::json(report).dump(2) << '\n';
  }
  if (cfg.snapshot_out) save_tree(tree, *cfg.snapshot_out);
  return report;
}

/// Feeds a flagged CSV through the kernel contract in bundles of
/// `bundle_size` samples. Returns every output label in stream order.
inline std::vector<Label> cmd_bundle(const BundleConfig& cfg, std::ostream& os) {
  Stream stream = load_source(cfg.source, cfg.classes);
  Tree tree = make_or_load_tree(cfg.snapshot_in, cfg.params, stream);
  if (cfg.bundle_size == 0) throw InvalidArgument("bundle size must be positive");

  std::vector<Label> outputs(stream.samples.size());
  const std::span<const Sample> all(stream.samples);
  std::size_t trained = 0;
  for (std::size_t begin = 0; begin < all.size(); begin += cfg.bundle_size) {
    const std::size_t n = std::min(cfg.bundle_size, all.size() - begin);
    process_bundle(tree, all.subspan(begin, n), std::span<Label>(outputs).subspan(begin, n));
  }
  for (const auto& s : stream.samples) trained += s.train;

  if (cfg.predictions) {
    std::ofstream out(*cfg.predictions, std::ios::trunc);
    if (!out) throw DataError("cannot open " + cfg.predictions->string() + " for writing");
    for (Label l : outputs) out << l << '\n';
  }
  if (cfg.snapshot_out) save_tree(tree, *cfg.snapshot_out);
  os << "processed " << outputs.size() << " samples (" << trained << " trained) in bundles of " << cfg.bundle_size
     << "; node count " << tree.node_count() << '\n';
  return outputs;
}

inline std::vector<MemRow> cmd_mem(const MemGrid& grid, MemFormat format, std::ostream& os) {
  const auto rows = mem_report(grid);
  switch (format) {
    case MemFormat::table:
      print_mem_table(os, rows);
      break;
    case MemFormat::csv:
      print_mem_csv(os, rows);
      break;
    case MemFormat::json:
      os << nlohmann::json(rows).dump(2) << '\n';
      break;
  }
  return rows;
}

}  // namespace ht::cli

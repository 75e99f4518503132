// hoeffding: generate synthetic streams, run prequential evaluation, push
// flagged samples through the bundle kernel and report model sizes.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

void add_hyperparams(CLI::App& cmd, ht::Hyperparams& p) {
  cmd.add_option("--delta", p.delta, "split confidence parameter")->capture_default_str();
  cmd.add_option("--lambda", p.lambda, "quantile sketch step")->capture_default_str();
  cmd.add_option("--tau", p.tau, "tie-break threshold")->capture_default_str();
  cmd.add_option("--n-min", p.n_min, "samples between split attempts")->capture_default_str();
  cmd.add_option("--n-pt", p.n_pt, "candidate thresholds per attribute")->capture_default_str();
  cmd.add_option("--n-quantiles", p.n_quantiles, "estimates per sketch")->capture_default_str();
  cmd.add_option("--max-nodes", p.max_nodes, "node arena capacity")->capture_default_str();
}

void add_synthetic(CLI::App& cmd, ht::DatasetSpec& spec) {
  cmd.add_option("--clusters", spec.clusters, "number of clusters K")->capture_default_str();
  cmd.add_option("--dims", spec.dims, "feature count D")->capture_default_str();
  cmd.add_option("--samples", spec.samples, "number of samples N")->capture_default_str();
  cmd.add_option("--spread", spec.spread, "cluster standard deviation")->capture_default_str();
  cmd.add_option("--center-box", spec.center_box, "half-width of the center box")->capture_default_str();
  cmd.add_option("--seed", spec.seed, "generator seed")->capture_default_str();
}

struct CsvFlags {
  std::string path;
  std::string label;
  std::vector<std::string> features;
  std::vector<std::string> categorical;
  std::string train_flag;
  bool header = false;
  std::string delimiter = ",";
  bool rescale = false;

  void add(CLI::App& cmd, bool with_flag_column) {
    cmd.add_option("--label", label, "label column (name or zero-based index); default last");
    cmd.add_option("--features", features, "feature columns; default all others")->delimiter(',');
    cmd.add_option("--categorical", categorical, "columns coded by first appearance")->delimiter(',');
    cmd.add_flag("--header", header, "first row holds column names");
    cmd.add_option("--delimiter", delimiter, "field separator")->capture_default_str();
    cmd.add_flag("--rescale", rescale, "min-max scale features to [0,1] after loading");
    if (with_flag_column) cmd.add_option("--train-flag", train_flag, "0/1 column selecting training samples");
  }

  ht::cli::CsvSource source() const {
    if (delimiter.size() != 1) throw CLI::ValidationError("--delimiter", "must be a single character");
    ht::cli::CsvSource src;
    src.path = path;
    src.rescale = rescale;
    src.schema.header = header;
    src.schema.delimiter = delimiter[0];
    if (!label.empty()) src.schema.label = ht::ColumnRef::parse(label);
    for (const auto& f : features) src.schema.features.push_back(ht::ColumnRef::parse(f));
    for (const auto& c : categorical) src.schema.categorical.push_back(ht::ColumnRef::parse(c));
    if (!train_flag.empty()) src.schema.train_flag = ht::ColumnRef::parse(train_flag);
    return src;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-memory Hoeffding tree for data streams"};
  app.require_subcommand(1);

  ht::DatasetSpec gen_spec;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "write a synthetic cluster stream as CSV");
  add_synthetic(*gen, gen_spec);
  gen->add_option("-o,--out", gen_out, "output CSV path")->required();

  ht::cli::RunConfig run_cfg;
  ht::DatasetSpec run_spec;
  CsvFlags run_csv;
  std::uint32_t run_classes = 0;
  std::string report_path, snap_in, snap_out;
  auto* run = app.add_subcommand("run", "prequential (test-then-train) evaluation");
  add_hyperparams(*run, run_cfg.params);
  add_synthetic(*run, run_spec);
  run->add_option("--csv", run_csv.path, "read samples from a CSV file instead of generating");
  run_csv.add(*run, false);
  run->add_option("--classes", run_classes, "label count K for CSV input; default observed labels");
  run->add_option("--window", run_cfg.window, "windowed accuracy size")->capture_default_str();
  run->add_option("--report", report_path, "write the JSON report here");
  run->add_option("--snapshot-in", snap_in, "start from a saved tree");
  run->add_option("--snapshot-out", snap_out, "save the final tree here");

  ht::cli::BundleConfig bundle_cfg;
  CsvFlags bundle_csv;
  std::uint32_t bundle_classes = 0;
  std::string bundle_in, bundle_out, bundle_pred;
  auto* bundle = app.add_subcommand("bundle", "process flagged samples in bundles (infer or infer-then-train)");
  add_hyperparams(*bundle, bundle_cfg.params);
  bundle->add_option("--csv", bundle_csv.path, "input CSV")->required();
  bundle_csv.add(*bundle, true);
  bundle->add_option("--classes", bundle_classes, "label count K; default observed labels");
  bundle->add_option("--bundle-size", bundle_cfg.bundle_size, "samples per kernel call")->capture_default_str();
  bundle->add_option("--snapshot-in", bundle_in, "start from a saved tree");
  bundle->add_option("--snapshot-out", bundle_out, "save the final tree here");
  bundle->add_option("--predictions", bundle_pred, "write one output label per line here");

  ht::MemGrid grid;
  std::string mem_format = "table";
  auto* mem = app.add_subcommand("mem", "serialized model size over a parameter grid");
  mem->add_option("--max-nodes", grid.max_nodes, "Nd values")->delimiter(',');
  mem->add_option("--dims", grid.dims, "D values")->delimiter(',');
  mem->add_option("--classes", grid.classes, "K values")->delimiter(',');
  mem->add_option("--n-quantiles", grid.n_quantiles, "estimates per sketch")->capture_default_str();
  mem->add_option("--format", mem_format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  // Flag values that are out of domain are usage errors; anything that goes
  // wrong once data is involved is a data error.
  try {
    if (*gen) gen_spec.validate();
    if (*run) {
      run_cfg.params.validate();
      if (run_csv.path.empty()) run_spec.validate();
    }
    if (*bundle) bundle_cfg.params.validate();
    if (*mem) ht::mem_report(grid);
  } catch (const ht::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*gen) {
      ht::cli::cmd_gen(gen_spec, gen_out);
    } else if (*run) {
      if (run_csv.path.empty()) {
        run_cfg.source = run_spec;
      } else {
        run_cfg.source = run_csv.source();
      }
      if (run_classes != 0) run_cfg.classes = run_classes;
      if (!report_path.empty()) run_cfg.report = report_path;
      if (!snap_in.empty()) run_cfg.snapshot_in = snap_in;
      if (!snap_out.empty()) run_cfg.snapshot_out = snap_out;
      ht::cli::cmd_run(run_cfg, std::cout);
    } else if (*bundle) {
      bundle_cfg.source = bundle_csv.source();
      if (bundle_classes != 0) bundle_cfg.classes = bundle_classes;
      if (!bundle_in.empty()) bundle_cfg.snapshot_in = bundle_in;
      if (!bundle_out.empty()) bundle_cfg.snapshot_out = bundle_out;
      if (!bundle_pred.empty()) bundle_cfg.predictions = bundle_pred;
      ht::cli::cmd_bundle(bundle_cfg, std::cout);
    } else if (*mem) {
      const auto format = mem_format == "csv"    ? ht::cli::MemFormat::csv
                          : mem_format == "json" ? ht::cli::MemFormat::json
                                                 : ht::cli::MemFormat::table;
      ht::cli::cmd_mem(grid, format, std::cout);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ht::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "../tools/commands.hpp"

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp(const std::string& name) { return fs::temp_directory_path() / name; }

TEST(CmdGen, WritesFeaturesThenLabel) {
  ht::DatasetSpec spec;
  spec.clusters = 2;
  spec.dims = 2;
  spec.samples = 10;
  const auto path = temp("ht_cli_gen.csv");
  ht::cli::cmd_gen(spec, path);
  std::ifstream in(path);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2) << line;
  }
  EXPECT_EQ(rows, 10);

  const auto again = temp("ht_cli_gen2.csv");
  ht::cli::cmd_gen(spec, again);
  EXPECT_EQ(slurp(path), slurp(again));
}

TEST(CmdGen, LargeStreamReloadsIdentically) {
  ht::DatasetSpec spec;  // K=5, D=3, N=40k
  const auto path = temp("ht_cli_gen_40k.csv");
  ht::cli::cmd_gen(spec, path);
  EXPECT_EQ(ht::load_csv(path, {}).samples, ht::generate_clusters(spec));
}

TEST(CmdGen, UnwritablePathIsDataError) {
  ht::DatasetSpec spec;
  spec.samples = 3;
  EXPECT_THROW(ht::cli::cmd_gen(spec, "/nonexistent-dir/x.csv"), ht::DataError);
}

TEST(CmdRun, SingleSampleSyntheticRun) {
  ht::cli::RunConfig cfg;
  ht::DatasetSpec spec;
  spec.samples = 1;
  cfg.source = spec;
  std::ostringstream os;
  const auto r = ht::cli::cmd_run(cfg, os);
  EXPECT_EQ(r.total, 1u);
  EXPECT_NE(os.str().find("accuracy"), std::string::npos);
}

TEST(CmdRun, SnapshotPersistsTree) {
  const auto snap = temp("ht_cli_snapshot.tree");
  const auto report = temp("ht_cli_report.json");
  ht::cli::RunConfig first;
  ht::DatasetSpec spec;
  spec.samples = 20000;
  first.source = spec;
  first.snapshot_out = snap;
  first.report = report;
  std::ostringstream os;
  const auto r1 = ht::cli::cmd_run(first, os);
  EXPECT_GT(r1.final_node_count, 1u);
  const auto parsed = nlohmann::json::parse(slurp(report)).get<ht::PrequentialReport>();
  EXPECT_EQ(parsed, r1);

  // zero further samples: a header-only CSV
  const auto empty = temp("ht_cli_empty.csv");
  std::ofstream(empty) << "a,b,c,label\n";
  ht::cli::RunConfig second;
  ht::cli::CsvSource src;
  src.path = empty;
  src.schema.header = true;
  second.source = src;
  second.snapshot_in = snap;
  const auto r2 = ht::cli::cmd_run(second, os);
  EXPECT_EQ(r2.total, 0u);
  EXPECT_EQ(r2.final_node_count, r1.final_node_count);

  ht::cli::RunConfig orphan;
  orphan.source = src;
  EXPECT_THROW(ht::cli::cmd_run(orphan, os), ht::DataError);
}

TEST(CmdRun, CsvSourceWithCategoricalColumns) {
  const auto path = temp("ht_cli_cat.csv");
  {
    std::ofstream out(path);
    out << "job;age;y\n";
    for (int i = 0; i < 3000; ++i) out << (i % 3 == 0 ? "\"admin\"" : "\"tech\"") << ';' << (i % 50) << ';' << (i % 3 == 0 ? "yes" : "no") << '\n';
  }
  ht::cli::RunConfig cfg;
  ht::cli::CsvSource src;
  src.path = path;
  src.schema.header = true;
  src.schema.delimiter = ';';
  src.schema.categorical = {ht::ColumnRef::parse("job")};
  src.rescale = true;
  cfg.source = src;
  std::ostringstream os;
  const auto r = ht::cli::cmd_run(cfg, os);
  EXPECT_EQ(r.total, 3000u);
  EXPECT_GT(r.accuracy, 0.9);
}

TEST(CmdBundle, ProcessesFlaggedCsvInBundles) {
  const auto path = temp("ht_cli_bundle.csv");
  {
    ht::DatasetSpec spec;
    spec.samples = 3000;
    std::ofstream out(path);
    int i = 0;
    for (const auto& s : ht::generate_clusters(spec)) {
      out << s.features[0] << ',' << s.features[1] << ',' << s.features[2] << ',' << s.label << ','
          << (i++ % 4 == 3 ? 0 : 1) << '\n';
    }
  }
  ht::cli::BundleConfig cfg;
  cfg.source.path = path;
  cfg.source.schema.label = ht::ColumnRef::parse("3");
  cfg.source.schema.train_flag = ht::ColumnRef::parse("4");
  cfg.bundle_size = 128;
  cfg.predictions = temp("ht_cli_pred.txt");
  std::ostringstream os;
  const auto out = ht::cli::cmd_bundle(cfg, os);
  EXPECT_EQ(out.size(), 3000u);
  const auto text = slurp(*cfg.predictions);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3000);

  // Bundle size is irrelevant to the outputs.
  cfg.bundle_size = 1;
  cfg.predictions.reset();
  EXPECT_EQ(ht::cli::cmd_bundle(cfg, os), out);
}

TEST(CmdMem, DefaultGridHasEightRowsPerCombination) {
  std::ostringstream os;
  const auto rows = ht::cli::cmd_mem({}, ht::cli::MemFormat::table, os);
  EXPECT_EQ(rows.size(), 32u);
  for (std::size_t i = 0; i < rows.size(); i += 8) {
    for (std::size_t j = 1; j < 8; ++j) EXPECT_GT(rows[i + j].bytes, rows[i + j - 1].bytes);
    EXPECT_EQ(rows[i].max_nodes, 1u);
    EXPECT_EQ(rows[i + 7].max_nodes, 128u);
  }
}

TEST(CmdMem, CsvAndJsonFormats) {
  ht::MemGrid g;
  g.max_nodes = {8};
  g.dims = {3};
  g.classes = {5};
  std::ostringstream csv;
  ht::cli::cmd_mem(g, ht::cli::MemFormat::csv, csv);
  EXPECT_EQ(csv.str(), "max_nodes,dims,classes,bytes\n8,3,5," + std::to_string(50 + 8 * 1142) + "\n");
  std::ostringstream js;
  ht::cli::cmd_mem(g, ht::cli::MemFormat::json, js);
  const auto j = nlohmann::json::parse(js.str());
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["bytes"].get<std::uint64_t>(), 50u + 8u * 1142u);
}

}  // namespace

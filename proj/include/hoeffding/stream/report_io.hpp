#pragma once

// Text and JSON renderings of harness results. Requires nlohmann/json.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <span>

#include <nlohmann/json.hpp>

#include "hoeffding/stream/mem_report.hpp"
#include "hoeffding/stream/prequential.hpp"

namespace ht {

inline void to_json(nlohmann::json& j, const WindowAccuracy& w) { j = nlohmann::json::array({w.end, w.accuracy}); }

inline void from_json(const nlohmann::json& j, WindowAccuracy& w) {
  w.end = j.at(0).get<std::uint64_t>();
  w.accuracy = j.at(1).get<double>();
}

inline void to_json(nlohmann::json& j, const PrequentialReport& r) {
  j = nlohmann::json{
      {"total", r.total},
      {"correct", r.correct},
      {"accuracy", r.accuracy},
      {"train_time_ns", r.train_time.count()},
      {"infer_time_ns", r.infer_time.count()},
      {"final_node_count", r.final_node_count},
      {"model_bytes", r.model_bytes},
      {"windowed_accuracy", r.windowed_accuracy},
  };
}

inline void from_json(const nlohmann::json& j, PrequentialReport& r) {
  r.total = j.at("total").get<std::uint64_t>();
  r.correct = j.at("correct").get<std::uint64_t>();
  r.accuracy = j.at("accuracy").get<double>();
  r.train_time = std::chrono::nanoseconds(j.at("train_time_ns").get<std::int64_t>());
  r.infer_time = std::chrono::nanoseconds(j.at("infer_time_ns").get<std::int64_t>());
  r.final_node_count = j.at("final_node_count").get<std::uint64_t>();
  r.model_bytes = j.at("model_bytes").get<std::uint64_t>();
  r.windowed_accuracy = j.at("windowed_accuracy").get<std::vector<WindowAccuracy>>();
}

inline void to_json(nlohmann::json& j, const MemRow& r) {
  j = nlohmann::json{{"max_nodes", r.max_nodes}, {"dims", r.dims}, {"classes", r.classes}, {"bytes", r.bytes}};
}

inline void print_report(std::ostream& os, const PrequentialReport& r) {
  using ms = std::chrono::duration<double, std::milli>;
  const auto flags = os.flags();
  os << std::fixed << std::setprecision(2);
  os << "samples           " << r.total << '\n'
     << "correct           " << r.correct << '\n'
     << "accuracy          " << 100.0 * r.accuracy << " %\n"
     << "train time        " << ms(r.train_time).count() << " ms\n"
     << "infer time        " << ms(r.infer_time).count() << " ms\n"
     << "final node count  " << r.final_node_count << '\n'
     << "model bytes       " << r.model_bytes << '\n';
  if (!r.windowed_accuracy.empty()) {
    os << "windowed accuracy\n";
    for (const auto& w : r.windowed_accuracy) {
      os << "  " << std::setw(10) << w.end << "  " << std::setw(6) << 100.0 * w.accuracy << " %\n";
    }
  }
  os.flags(flags);
}

inline void print_mem_table(std::ostream& os, std::span<const MemRow> rows) {
  os << std::setw(8) << "Nd" << std::setw(6) << "D" << std::setw(6) << "K" << std::setw(14) << "bytes" << '\n';
  for (const auto& r : rows) {
    os << std::setw(8) << r.max_nodes << std::setw(6) << r.dims << std::setw(6) << r.classes << std::setw(14)
       << r.bytes << '\n';
  }
}

inline void print_mem_csv(std::ostream& os, std::span<const MemRow> rows) {
  os << "max_nodes,dims,classes,bytes\n";
  for (const auto& r : rows) os << r.max_nodes << ',' << r.dims << ',' << r.classes << ',' << r.bytes << '\n';
}

}  // namespace ht

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hoeffding/error.hpp"
#include "hoeffding/params.hpp"
#include "hoeffding/serialize.hpp"

namespace ht {

struct MemGrid {
  std::vector<std::uint32_t> max_nodes{1, 2, 4, 8, 16, 32, 64, 128};
  std::vector<std::uint32_t> dims{3, 100};
  std::vector<std::uint32_t> classes{5, 10};
  std::uint32_t n_quantiles = 16;
};

struct MemRow {
  std::uint32_t max_nodes = 0;
  std::uint32_t dims = 0;
  std::uint32_t classes = 0;
  std::uint64_t bytes = 0;
};

/// Model size for every (D, K, Nd) cell of the grid, Nd varying fastest.
inline std::vector<MemRow> mem_report(const MemGrid& grid) {
  if (grid.max_nodes.empty() || grid.dims.empty() || grid.classes.empty()) {
    throw InvalidArgument("memory report grid must not be empty");
  }
  std::vector<MemRow> rows;
  for (auto d : grid.dims) {
    for (auto k : grid.classes) {
      for (auto nd : grid.max_nodes) {
        Hyperparams p;
        p.dims = d;
        p.classes = k;
        p.max_nodes = nd;
        p.n_quantiles = grid.n_quantiles;
        p.n_pt = std::min(p.n_pt, grid.n_quantiles);
        p.validate();
        rows.push_back({nd, d, k, model_bytes(p)});
      }
    }
  }
  return rows;
}

}  // namespace ht

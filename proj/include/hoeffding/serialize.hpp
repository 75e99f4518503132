#pragma once

// Flat little-endian tree image.
//
//   header (50 bytes)
//     "HTRE"            4 x u8
//     version           u16
//     max_nodes, dims, classes, n_quantiles, n_pt, n_min,
//     node_count, root  8 x u32
//     delta, lambda, tau 3 x f32
//   max_nodes node records, fixed size, unused slots zero-filled
//     kind u8 (1 leaf, 2 internal), frozen u8, split_attr u32,
//     split_value f32, left u32, right u32,
//     K x u64 class counts, K*D*Q x f32 sketch estimates,
//     K*D x u64 sketch counts, since_last_attempt u32
//
// Internal nodes carry zeroed statistics.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "hoeffding/error.hpp"
#include "hoeffding/params.hpp"
#include "hoeffding/tree.hpp"

namespace ht {

inline constexpr std::array<char, 4> kTreeMagic{'H', 'T', 'R', 'E'};
inline constexpr std::uint16_t kTreeFormatVersion = 1;
inline constexpr std::size_t kTreeHeaderSize = 4 + 2 + 8 * 4 + 3 * 4;

inline std::size_t node_record_size(std::size_t dims, std::size_t classes, std::size_t n_quantiles) {
  const std::size_t cells = dims * classes;
  return 1 + 1 + 4 + 4 + 4 + 4 + 8 * classes + 4 * cells * n_quantiles + 8 * cells + 4;
}

/// Serialized size of a tree whose arena is fully populated. Every image
/// has this size since unused slots are zero-filled.
inline std::size_t model_bytes(const Hyperparams& params) {
  return kTreeHeaderSize + static_cast<std::size_t>(params.max_nodes) *
                               node_record_size(params.dims, params.classes, params.n_quantiles);
}

namespace detail {

class ByteWriter {
 public:
  explicit ByteWriter(std::size_t reserve) { buf_.reserve(reserve); }

  void u8(std::uint8_t v) { buf_.push_back(static_cast<std::byte>(v)); }
  void u16(std::uint16_t v) { le(v, 2); }
  void u32(std::uint32_t v) { le(v, 4); }
  void u64(std::uint64_t v) { le(v, 8); }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void zeros(std::size_t n) { buf_.insert(buf_.end(), n, std::byte{0}); }

  std::vector<std::byte> take() && { return std::move(buf_); }

 private:
  void le(std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) buf_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xffu));
  }

  std::vector<std::byte> buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::byte> data) : data_(data) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(le(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(le(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
  std::uint64_t u64() { return le(8); }
  float f32() { return std::bit_cast<float>(u32()); }
  void skip(std::size_t n) {
    need(n);
    pos_ += n;
  }
  std::size_t position() const { return pos_; }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw FormatError("tree image is truncated");
  }
  std::uint64_t le(int bytes) {
    need(static_cast<std::size_t>(bytes));
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
    pos_ += static_cast<std::size_t>(bytes);
    return v;
  }

  std::span<const std::byte> data_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<std::byte> serialize(const Tree& tree) {
  const Hyperparams& p = tree.params();
  const std::size_t record = node_record_size(p.dims, p.classes, p.n_quantiles);
  const std::size_t cells = static_cast<std::size_t>(p.dims) * p.classes;
  detail::ByteWriter w(model_bytes(p));

  for (char c : kTreeMagic) w.u8(static_cast<std::uint8_t>(c));
  w.u16(kTreeFormatVersion);
  w.u32(p.max_nodes);
  w.u32(p.dims);
  w.u32(p.classes);
  w.u32(p.n_quantiles);
  w.u32(p.n_pt);
  w.u32(p.n_min);
  w.u32(static_cast<std::uint32_t>(tree.node_count()));
  w.u32(tree.root());
  w.f32(p.delta);
  w.f32(p.lambda);
  w.f32(p.tau);

  for (const auto& n : tree.nodes()) {
    w.u8(static_cast<std::uint8_t>(n.kind));
    w.u8(n.stats.frozen ? 1 : 0);
    w.u32(n.split_attr);
    w.f32(n.split_value);
    w.u32(n.left);
    w.u32(n.right);
    if (n.is_leaf()) {
      for (auto c : n.stats.class_counts) w.u64(c);
      for (const auto& s : n.stats.sketches) {
        for (float e : s.estimates()) w.f32(e);
      }
      for (const auto& s : n.stats.sketches) w.u64(s.count());
      w.u32(n.stats.since_last_attempt);
    } else {
      w.zeros(8 * p.classes + 4 * cells * p.n_quantiles + 8 * cells + 4);
    }
  }
  w.zeros((p.max_nodes - tree.node_count()) * record);
  return std::move(w).take();
}

inline Tree deserialize(std::span<const std::byte> data) {
  detail::ByteReader r(data);
  for (char c : kTreeMagic) {
    if (r.u8() != static_cast<std::uint8_t>(c)) throw FormatError("bad magic: not a tree image");
  }
  const std::uint16_t version = r.u16();
  if (version != kTreeFormatVersion) {
    throw FormatError("unsupported tree format version " + std::to_string(version));
  }
  Hyperparams p;
  p.max_nodes = r.u32();
  p.dims = r.u32();
  p.classes = r.u32();
  p.n_quantiles = r.u32();
  p.n_pt = r.u32();
  p.n_min = r.u32();
  const std::uint32_t node_count = r.u32();
  const std::uint32_t root = r.u32();
  p.delta = r.f32();
  p.lambda = r.f32();
  p.tau = r.f32();
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("tree header: ") + e.what());
  }
  if (node_count == 0 || node_count > p.max_nodes) throw FormatError("tree header: node_count outside [1, max_nodes]");
  // Checked before allocating anything sized by the header. The estimate in
  // double precision guards the exact size_t product against overflow.
  const double approx_cells = static_cast<double>(p.dims) * p.classes;
  const double approx = static_cast<double>(kTreeHeaderSize) +
                        static_cast<double>(p.max_nodes) *
                            (22.0 + 8.0 * p.classes + approx_cells * (4.0 * p.n_quantiles + 8.0));
  if (approx > static_cast<double>(data.size()) + 1024.0) throw FormatError("tree image is truncated");
  if (data.size() != model_bytes(p)) {
    throw FormatError(data.size() < model_bytes(p) ? "tree image is truncated" : "tree image has trailing bytes");
  }

  const std::size_t cells = static_cast<std::size_t>(p.dims) * p.classes;
  std::vector<Tree::node_type> nodes(node_count);
  std::vector<float> estimates(p.n_quantiles);
  for (auto& n : nodes) {
    const std::uint8_t kind = r.u8();
    const std::uint8_t frozen = r.u8();
    n.split_attr = r.u32();
    n.split_value = r.f32();
    n.left = r.u32();
    n.right = r.u32();
    if (kind == static_cast<std::uint8_t>(NodeKind::leaf)) {
      n.kind = NodeKind::leaf;
      n.stats = LeafStats<float>(p);
      n.stats.frozen = frozen != 0;
      for (auto& c : n.stats.class_counts) c = r.u64();
      std::vector<float> all(cells * p.n_quantiles);
      for (auto& e : all) e = r.f32();
      for (std::size_t cell = 0; cell < cells; ++cell) {
        const std::uint64_t count = r.u64();
        std::copy_n(all.begin() + static_cast<std::ptrdiff_t>(cell * p.n_quantiles), p.n_quantiles, estimates.begin());
        try {
          n.stats.sketches[cell] = QuantileSketch<float>::restore(estimates, p.lambda, count);
        } catch (const InvalidArgument& e) {
          throw FormatError(std::string("leaf sketch: ") + e.what());
        }
      }
      n.stats.since_last_attempt = r.u32();
    } else if (kind == static_cast<std::uint8_t>(NodeKind::internal)) {
      n.kind = NodeKind::internal;
      r.skip(8 * p.classes + 4 * cells * p.n_quantiles + 8 * cells + 4);
    } else {
      throw FormatError("node record has invalid kind " + std::to_string(kind));
    }
  }
  return Tree::from_parts(p, std::move(nodes), root);
}

inline void save_tree(const Tree& tree, const std::filesystem::path& path) {
  const auto bytes = serialize(tree);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing " + path.string());
}

inline Tree load_tree(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open tree image " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(std::as_bytes(std::span<const char>(raw)));
}

}  // namespace ht

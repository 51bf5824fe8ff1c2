#pragma once

#include <cstdint>
#include <vector>

#include "spcavrp/rng.hpp"

namespace spcavrp {

/// Axis-aligned projection P_S, stored as its sorted index set S.
struct AxisProjection {
  std::vector<int> indices;  // strictly increasing, all in [0, ambient_dim)
  int ambient_dim = 0;

  int size() const { return static_cast<int>(indices.size()); }

  /// Throws InvalidInput if the sortedness/range invariants are violated.
  void validate() const;
};

/// A x B grid of axis-aligned projections sharing (p, d); cell (a, b) lives
/// at cells[a * group_size + b].
struct ProjectionGrid {
  int group_count = 0;  // A
  int group_size = 0;   // B
  std::vector<AxisProjection> cells;

  const AxisProjection& cell(int a, int b) const {
    return cells[static_cast<std::size_t>(a) * group_size + b];
  }
};

/// Uniform draw from all C(p, d) size-d subsets of [p], via a partial
/// Fisher-Yates shuffle.
AxisProjection sample_projection(int p, int d, RngStream& stream);

/// Fill an A x B grid; cell (a, b) uses the substream derived from
/// (master_seed, a, b), so the grid is a pure function of its arguments and
/// identical for any evaluation order or thread count.
ProjectionGrid sample_grid(int p, int d, int group_count, int group_size,
                           std::uint64_t master_seed, int threads = 1);

/// C(n, k), saturating at cap + 1 to avoid overflow.
std::uint64_t binomial_capped(int n, int k, std::uint64_t cap);

/// Streams all size-d subsets of [p] in lexicographic order.
class SubsetEnumerator {
 public:
  SubsetEnumerator(int p, int d);

  /// Writes the next subset into `out` (size d); false when exhausted.
  bool next(std::vector<int>& out);

 private:
  int p_;
  int d_;
  bool done_ = false;
  bool first_ = true;
  std::vector<int> current_;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// All C(p, d) subsets, lexicographic. Throws TooLarge past the cap.
std::vector<AxisProjection> enumerate_all(
    int p, int d, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace spcavrp

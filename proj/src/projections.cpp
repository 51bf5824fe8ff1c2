#include "spcavrp/projections.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "spcavrp/errors.hpp"
#include "spcavrp/parallel.hpp"

namespace spcavrp {

void AxisProjection::validate() const {
  if (ambient_dim < 1) throw InvalidInput("AxisProjection: ambient_dim < 1");
  if (indices.empty()) throw InvalidInput("AxisProjection: empty index set");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= ambient_dim)
      throw InvalidInput("AxisProjection: index out of range");
    if (i > 0 && indices[i] <= indices[i - 1])
      throw InvalidInput("AxisProjection: indices not strictly increasing");
  }
}

AxisProjection sample_projection(int p, int d, RngStream& stream) {
  if (p < 1 || d < 1 || d > p)
    throw InvalidInput("sample_projection: need 1 <= d <= p");
  std::vector<int> pool(p);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < d; ++i) {
    const auto j =
        i + static_cast<int>(stream.uniform_below(static_cast<std::uint64_t>(p - i)));
    std::swap(pool[i], pool[j]);
  }
  AxisProjection out;
  out.ambient_dim = p;
  out.indices.assign(pool.begin(), pool.begin() + d);
  std::sort(out.indices.begin(), out.indices.end());
  return out;
}

ProjectionGrid sample_grid(int p, int d, int group_count, int group_size,
                           std::uint64_t master_seed, int threads) {
  if (group_count < 1 || group_size < 1)
    throw InvalidInput("sample_grid: need A >= 1 and B >= 1");
  if (p < 1 || d < 1 || d > p)
    throw InvalidInput("sample_grid: need 1 <= d <= p");

  ProjectionGrid grid;
  grid.group_count = group_count;
  grid.group_size = group_size;
  grid.cells.resize(static_cast<std::size_t>(group_count) * group_size);
  parallel_for(group_count, threads, [&](std::int64_t a) {
    for (int b = 0; b < group_size; ++b) {
      RngStream stream(substream_seed(master_seed, static_cast<std::uint64_t>(a),
                                      static_cast<std::uint64_t>(b)));
      grid.cells[static_cast<std::size_t>(a) * group_size + b] =
          sample_projection(p, d, stream);
    }
  });
  return grid;
}

std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __uint128_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (result > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(result);
}

SubsetEnumerator::SubsetEnumerator(int p, int d) : p_(p), d_(d) {
  if (p < 1 || d < 1 || d > p)
    throw InvalidInput("SubsetEnumerator: need 1 <= d <= p");
  current_.resize(d);
  std::iota(current_.begin(), current_.end(), 0);
}

bool SubsetEnumerator::next(std::vector<int>& out) {
  if (done_) return false;
  if (first_) {
    first_ = false;
    out = current_;
    return true;
  }
  // Advance the lexicographic odometer.
  int i = d_ - 1;
  while (i >= 0 && current_[i] == p_ - d_ + i) --i;
  if (i < 0) {
    done_ = true;
    return false;
  }
  ++current_[i];
  for (int j = i + 1; j < d_; ++j) current_[j] = current_[j - 1] + 1;
  out = current_;
  return true;
}

std::vector<AxisProjection> enumerate_all(int p, int d, std::uint64_t cap) {
  const std::uint64_t count = binomial_capped(p, d, cap);
  if (count > cap)
    throw TooLarge("enumerate_all: C(p, d) exceeds cap of " +
                   std::to_string(cap));
  std::vector<AxisProjection> out;
  out.reserve(count);
  SubsetEnumerator it(p, d);
  std::vector<int> subset;
  while (it.next(subset)) {
    AxisProjection proj;
    proj.ambient_dim = p;
    proj.indices = subset;
    out.push_back(std::move(proj));
  }
  return out;
}

}  // namespace spcavrp

#include "chipfire/configs.hpp"

#include <algorithm>
#include <numeric>

namespace chipfire {

namespace {

constexpr unsigned __int128 kCountLimit = static_cast<unsigned __int128>(1) << 120;

std::vector<std::vector<unsigned __int128>> completion_table(const ConfigSpace& space) {
  const std::size_t n = space.caps.size();
  const std::uint64_t total = space.total;
  std::vector<std::vector<unsigned __int128>> ways(n + 1, std::vector<unsigned __int128>(total + 1, 0));
  ways[n][0] = 1;
  for (std::size_t k = n; k-- > 0;) {
    // prefix sums of ways[k+1] give the windowed sum in O(total)
    std::vector<unsigned __int128> prefix(total + 2, 0);
    for (std::uint64_t s = 0; s <= total; ++s) prefix[s + 1] = prefix[s] + ways[k + 1][s];
    const std::uint64_t cap = space.caps[k];
    for (std::uint64_t s = 0; s <= total; ++s) {
      const std::uint64_t lo = s > cap ? s - cap : 0;
      const unsigned __int128 w = prefix[s + 1] - prefix[lo];
      if (w > kCountLimit) throw InputError("configuration count overflows 120 bits");
      ways[k][s] = w;
    }
  }
  return ways;
}

}  // namespace

std::uint64_t ConfigSpace::cap_sum() const {
  return std::accumulate(caps.begin(), caps.end(), std::uint64_t{0});
}

std::vector<Chips> abundance_caps(const Graph& g) { return degree_caps(g, 2, -1); }

std::vector<Chips> degree_caps(const Graph& g, int multiplier, int offset) {
  std::vector<Chips> caps(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    caps[v] = static_cast<Chips>(std::max(0, multiplier * g.degree(v) + offset));
  }
  return caps;
}

unsigned __int128 count_configs(const ConfigSpace& space) {
  if (!space.feasible()) return 0;
  return completion_table(space)[0][space.total];
}

ConfigEnumerator::ConfigEnumerator(ConfigSpace space) : space_(std::move(space)) {
  const std::size_t n = space_.caps.size();
  suffix_caps_.assign(n + 1, 0);
  for (std::size_t k = n; k-- > 0;) suffix_caps_[k] = suffix_caps_[k + 1] + space_.caps[k];
  current_.assign(n, 0);
  done_ = infeasible() || n == 0;
}

void ConfigEnumerator::fill_smallest(std::size_t from, std::uint64_t amount) {
  for (std::size_t k = from; k < current_.size(); ++k) {
    const std::uint64_t rest = suffix_caps_[k + 1];
    const std::uint64_t here = amount > rest ? amount - rest : 0;
    current_[k] = static_cast<Chips>(here);
    amount -= here;
  }
}

bool ConfigEnumerator::next(ChipConfig& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    fill_smallest(0, space_.total);
    out = ChipConfig(current_);
    return true;
  }
  // Rightmost position that can grow by one while the suffix after it
  // still has a chip to give up.
  std::uint64_t suffix = 0;
  for (std::size_t k = current_.size(); k-- > 0;) {
    if (suffix > 0 && current_[k] < space_.caps[k]) {
      ++current_[k];
      fill_smallest(k + 1, suffix - 1);
      out = ChipConfig(current_);
      return true;
    }
    suffix += current_[k];
  }
  done_ = true;
  return false;
}

std::vector<ChipConfig> enumerate_configs(const ConfigSpace& space) {
  std::vector<ChipConfig> out;
  ConfigEnumerator it(space);
  ChipConfig c;
  while (it.next(c)) out.push_back(c);
  return out;
}

ConfigSampler::ConfigSampler(ConfigSpace space) : space_(std::move(space)) {
  if (!space_.feasible()) {
    throw InputError("cannot sample: total " + std::to_string(space_.total) +
                     " exceeds cap sum " + std::to_string(space_.cap_sum()));
  }
  ways_ = completion_table(space_);
}

ChipConfig ConfigSampler::draw(Rng& rng) const {
  const std::size_t n = space_.caps.size();
  std::vector<Chips> out(n, 0);
  std::uint64_t remaining = space_.total;
  for (std::size_t k = 0; k < n; ++k) {
    unsigned __int128 pick = rng.below128(ways_[k][remaining]);
    const std::uint64_t top = std::min<std::uint64_t>(space_.caps[k], remaining);
    std::uint64_t x = 0;
    for (;; ++x) {
      const unsigned __int128 w = ways_[k + 1][remaining - x];
      if (pick < w || x == top) break;
      pick -= w;
    }
    out[k] = static_cast<Chips>(x);
    remaining -= x;
  }
  return ChipConfig(std::move(out));
}

std::vector<ChipConfig> sample_configs(const ConfigSpace& space, std::size_t count, std::uint64_t seed) {
  if (!space.feasible()) return {};
  const ConfigSampler sampler(space);
  Rng rng(seed);
  std::vector<ChipConfig> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(sampler.draw(rng));
  return out;
}

}  // namespace chipfire

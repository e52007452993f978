#include "framelab/search.hpp"

#include <algorithm>
#include <atomic>

#include "framelab/frames.hpp"
#include "framelab/parallel.hpp"

namespace framelab {

namespace {

constexpr int kMaxSearchLength = 28;

std::uint64_t max_rotation_bits(const PatternMask& mask) {
  std::uint64_t best = mask.bits();
  for (int s = 1; s < mask.n(); ++s)
    best = std::max(best, mask.rotated(s).bits());
  return best;
}

std::int64_t orbit_size(const PatternMask& mask, DedupMode mode) {
  std::vector<std::uint64_t> members;
  members.reserve(2 * static_cast<std::size_t>(mask.n()));
  for (int s = 0; s < mask.n(); ++s) members.push_back(mask.rotated(s).bits());
  if (mode == DedupMode::RotationAndReflection) {
    const PatternMask flipped = mask.reflected();
    for (int s = 0; s < mask.n(); ++s) members.push_back(flipped.rotated(s).bits());
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return static_cast<std::int64_t>(members.size());
}

}  // namespace

PatternMask canonical_pattern(const PatternMask& pattern, DedupMode mode) {
  std::uint64_t best = max_rotation_bits(pattern);
  if (mode == DedupMode::RotationAndReflection)
    best = std::max(best, max_rotation_bits(pattern.reflected()));
  return PatternMask(pattern.n(), best);
}

std::vector<MaskClass> enumerate_classes(const FrameSpec& spec, DedupMode mode) {
  spec.validate();
  if (spec.n > kMaxSearchLength)
    fail(ErrorCode::TooLarge,
         "pattern enumeration is capped at n = " + std::to_string(kMaxSearchLength));

  const int n = spec.n;
  const int k = spec.k;
  std::vector<MaskClass> classes;

  // Walk all C(n, k) masks with Gosper's hack, keeping canonical ones.
  const std::uint64_t limit = 1ull << n;
  std::uint64_t v = (1ull << k) - 1ull;
  while (v < limit) {
    const PatternMask mask(n, v);
    if (canonical_pattern(mask, mode).bits() == v)
      classes.push_back({mask, orbit_size(mask, mode)});
    if (v == limit - 1) break;  // k == n: single all-data mask
    const std::uint64_t c = v & (~v + 1ull);
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }

  std::sort(classes.begin(), classes.end(), [](const MaskClass& a, const MaskClass& b) {
    return pattern_text_less(a.canonical, b.canonical);
  });
  return classes;
}

SearchResult rank_patterns(const FrameSpec& spec, DedupMode mode) {
  const std::vector<MaskClass> classes = enumerate_classes(spec, mode);
  const ComplexMatrix g = generator(spec);

  SearchResult result;
  result.spec = spec;
  result.mode = mode;
  result.classes.resize(classes.size());

  parallel_for_index(static_cast<std::int64_t>(classes.size()), [&](std::int64_t i) {
    const auto idx = static_cast<std::size_t>(i);
    result.classes[idx].canonical = classes[idx].canonical;
    result.classes[idx].size = classes[idx].size;
    result.classes[idx].report = spectrum_report(g, classes[idx].canonical);
  });

  std::stable_sort(result.classes.begin(), result.classes.end(),
                   [](const PatternClass& a, const PatternClass& b) {
                     if (a.report.inv_sum != b.report.inv_sum)
                       return a.report.inv_sum < b.report.inv_sum;
                     return pattern_text_less(a.canonical, b.canonical);
                   });

  // Ties within 1e-9 resolve to the text-lexicographically smallest pattern.
  result.best_index = 0;
  for (std::size_t i = 1; i < result.classes.size(); ++i) {
    if (result.classes[i].report.inv_sum >
        result.classes[result.best_index].report.inv_sum + 1e-9)
      break;
    if (pattern_text_less(result.classes[i].canonical,
                          result.classes[result.best_index].canonical))
      result.best_index = i;
  }
  result.worst_index = result.classes.size() - 1;
  for (std::size_t i = result.classes.size(); i-- > 0;) {
    if (result.classes[i].report.inv_sum <
        result.classes[result.worst_index].report.inv_sum - 1e-9)
      break;
    if (pattern_text_less(result.classes[i].canonical,
                          result.classes[result.worst_index].canonical))
      result.worst_index = i;
  }
  return result;
}

}  // namespace framelab

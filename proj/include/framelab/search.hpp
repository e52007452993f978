#pragma once

#include <cstdint>
#include <vector>

#include "framelab/spectral.hpp"
#include "framelab/types.hpp"

namespace framelab {

/// Pattern equivalences that leave the subframe spectrum unchanged.
enum class DedupMode { Rotation, RotationAndReflection };

/// Representative of one pattern equivalence class: the text-lexicographically
/// smallest member ('x' before '-'), i.e. the numerically greatest bit string.
PatternMask canonical_pattern(const PatternMask& pattern, DedupMode mode);

struct MaskClass {
  PatternMask canonical;
  std::int64_t size = 0;  // orbit size; class sizes sum to C(n, k)
};

/// One representative per equivalence class of k-data-position patterns,
/// listed in text order. Guarded at n <= 28.
std::vector<MaskClass> enumerate_classes(const FrameSpec& spec, DedupMode mode);

struct PatternClass {
  PatternMask canonical;
  std::int64_t size = 0;
  SpectrumReport report;
};

/// Classes ranked by ascending inverse-eigenvalue sum (the quantity tied to
/// codevector variance), ties broken on the canonical pattern text.
struct SearchResult {
  FrameSpec spec;
  DedupMode mode = DedupMode::Rotation;
  std::vector<PatternClass> classes;  // ranked best to worst
  std::size_t best_index = 0;
  std::size_t worst_index = 0;
};

SearchResult rank_patterns(const FrameSpec& spec, DedupMode mode = DedupMode::Rotation);

}  // namespace framelab

#pragma once

#include <optional>
#include <vector>

#include "amc/model.hpp"

namespace amc {

struct ConvertOptions {
  bool minimize = false;
  /// Convert only these coalitions instead of all 2^n.
  std::optional<std::vector<Coalition>> coalitions;
  /// Worker threads for the per-state conversion; 0 or 1 runs inline.
  unsigned threads = 1;
};

/// The effectivity frame induced by a valid CGF:
/// e(w, C) = { { f(w, s_C, s_Cbar) | s_Cbar } | s_C }, for every coalition.
/// Families come out in canonical order (by size, then lexicographically).
Ef inducedEffectivity(const Cgf& g, const std::optional<std::vector<Coalition>>& coalitions = {},
                      unsigned threads = 1);

/// The induced family for one state and coalition.
Family inducedFamily(const Cgf& g, StateId w, Coalition c);

/// Keeps only the subset-minimal members of a family, in canonical order.
Family minimalSets(Family f);

/// Applies minimalSets to every family.
Ef minimize(Ef e);

struct Conversion {
  Ef ef;
  double seconds = 0;
};

/// inducedEffectivity followed, optionally, by minimize; timed.
Conversion convert(const Cgf& g, const ConvertOptions& options = {});

}  // namespace amc

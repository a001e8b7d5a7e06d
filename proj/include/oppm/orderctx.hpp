#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "oppm/corestr.hpp"

namespace oppm {

/// Order context of a determinate string: for each position, the earlier
/// position carrying an equal character (latest such), or — only when no
/// equal character exists — the earlier positions carrying the closest
/// smaller and closest larger characters (largest such value, then latest
/// position). An equality entry subsumes the order entries: matching the
/// equal position transitively pins every other relation.
struct DetOrderContext {
    std::vector<std::optional<std::size_t>> leq, lmax, lmin;
};

DetOrderContext det_context(const IndetString& x);

/// Per-candidate-character generalization for indeterminate strings: for
/// position i and its j-th candidate, every earlier position whose set could
/// realize =, < or > against that candidate.
struct IndetOrderContext {
    /// Indexed [position][char index] -> ascending list of earlier positions.
    std::vector<std::vector<std::vector<std::size_t>>> leq, lmax, lmin;
};

IndetOrderContext indet_context(const IndetString& x);

}  // namespace oppm

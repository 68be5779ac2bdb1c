#pragma once

#include <chrono>
#include <vector>

namespace dengue {

/// Observed daily case counts. Days are offsets from `start`; counts are kept
/// as reals to match the Gaussian likelihood.
struct CaseSeries {
    std::chrono::sys_days start{std::chrono::year{2023} / 1 / 1};
    std::vector<int> day;
    std::vector<double> count;

    std::size_t size() const { return day.size(); }
    bool empty() const { return day.empty(); }

    /// Throws DataError unless days strictly increase and counts are >= 0.
    void validate() const;
};

}  // namespace dengue

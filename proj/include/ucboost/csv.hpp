#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ucboost/bench.hpp"
#include "ucboost/simulate.hpp"

namespace ucboost {

/// Header `policy,t,mean_regret,stderr`; rows sorted by (policy, t); reals
/// printed with 9 significant digits.
void write_regret_csv(std::ostream& out, const std::vector<RegretTrace>& traces);
void write_regret_csv(const std::string& path, const std::vector<RegretTrace>& traces);

/// Inverse of write_regret_csv; traces come back ordered by policy name.
std::vector<RegretTrace> read_regret_csv(std::istream& in);
std::vector<RegretTrace> read_regret_csv(const std::string& path);

/// Header `policy,calls,median_ns,mean_ns,p99_ns`.
void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows);
void write_timing_csv(const std::string& path, const std::vector<TimingRow>& rows);

}  // namespace ucboost

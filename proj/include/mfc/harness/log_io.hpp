// Copyright 2026 The mfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MFC__HARNESS__LOG_IO_HPP_
#define MFC__HARNESS__LOG_IO_HPP_

#include "mfc/harness/closed_loop.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace mfc::harness
{

inline constexpr std::string_view kCsvHeader = "t,y_d,y_true,y_meas,y_hat,e,e_o,F_true,F_hat,e_F,s,u,G";

/// CSV with the fixed header, 17 significant digits, LF line endings. A
/// diverged run ends with a `# diverged at step N` line.
void write_log_csv(const RunLog & log, std::ostream & out);
void write_log_csv(const RunLog & log, const std::filesystem::path & path);

/// Reads records back; comment lines are skipped. Throws std::runtime_error
/// with the offending line number on malformed input.
std::vector<StepRecord> read_log_csv(std::istream & in);
std::vector<StepRecord> read_log_csv(const std::filesystem::path & path);

}  // namespace mfc::harness

#endif  // MFC__HARNESS__LOG_IO_HPP_

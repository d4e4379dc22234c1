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

#include "mfc/harness/log_io.hpp"

#include <array>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mfc::harness
{

namespace
{

std::array<double *, 13> fields(StepRecord & r)
{
  return {&r.t, &r.y_d, &r.y_true, &r.y_meas, &r.y_hat, &r.e, &r.e_o,
    &r.f_true, &r.f_hat, &r.e_f, &r.s, &r.u, &r.g};
}

}  // namespace

void write_log_csv(const RunLog & log, std::ostream & out)
{
  out << kCsvHeader << '\n';
  char buf[32];
  for (StepRecord r : log.records) {
    bool first = true;
    for (const double * v : fields(r)) {
      std::snprintf(buf, sizeof(buf), "%.17g", *v);
      if (!first) {
        out << ',';
      }
      out << buf;
      first = false;
    }
    out << '\n';
  }
  if (log.diverged_at) {
    out << "# diverged at step " << *log.diverged_at << '\n';
  }
}

void write_log_csv(const RunLog & log, const std::filesystem::path & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  write_log_csv(log, out);
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

std::vector<StepRecord> read_log_csv(std::istream & in)
{
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&line_no](const std::string & msg) {
      throw std::runtime_error("log line " + std::to_string(line_no) + ": " + msg);
    };

  if (!std::getline(in, line)) {
    throw std::runtime_error("log: empty input");
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != kCsvHeader) {
    fail("unexpected header");
  }

  std::vector<StepRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line.front() == '#') {
      continue;
    }
    StepRecord r;
    const char * p = line.c_str();
    std::size_t col = 0;
    for (double * v : fields(r)) {
      if (col > 0) {
        if (*p != ',') {
          fail("expected 13 comma-separated values");
        }
        ++p;
      }
      char * end = nullptr;
      errno = 0;
      *v = std::strtod(p, &end);
      if (end == p) {
        fail("column " + std::to_string(col + 1) + " is not a number");
      }
      p = end;
      ++col;
    }
    if (*p != '\0') {
      fail("trailing characters after 13 values");
    }
    records.push_back(r);
  }
  return records;
}

std::vector<StepRecord> read_log_csv(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open log: " + path.string());
  }
  return read_log_csv(in);
}

}  // namespace mfc::harness

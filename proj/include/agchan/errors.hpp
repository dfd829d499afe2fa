// SPDX-License-Identifier: Apache-2.0
//
// agchan - cluster-based characterization and synthesis of time-varying
// air-to-ground multipath channels
// Copyright (C) 2026 the agchan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef agchan_errors_H
#define agchan_errors_H

#include <stdexcept>
#include <string>

namespace agchan
{

// Input is syntactically valid but numerically unusable: empty profiles,
// all-identical delays, constant samples, coincident centroids, and similar.
class degenerate_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Malformed input document. Carries the file and the offending field so CLI
// diagnostics can point at the problem.
class parse_error : public std::runtime_error
{
  public:
    parse_error(const std::string &path, const std::string &field, const std::string &what)
        : std::runtime_error(path + ": " + field + ": " + what), path_(path), field_(field)
    {
    }
    const std::string &path() const noexcept { return path_; }
    const std::string &field() const noexcept { return field_; }

  private:
    std::string path_, field_;
};

} // namespace agchan

#endif

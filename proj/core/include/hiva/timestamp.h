// Copyright 2026 The HIVA Kiosk Authors.
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

#ifndef HIVA_TIMESTAMP_H_
#define HIVA_TIMESTAMP_H_

#include <chrono>
#include <string>
#include <string_view>

namespace hiva {

// UTC wall-clock time at millisecond resolution.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

Timestamp now_utc();

// "YYYY-MM-DDTHH:MM:SS.mmmZ"
std::string format_rfc3339(Timestamp ts);

// Accepts "YYYY-MM-DDTHH:MM:SS[.fraction](Z|+HH:MM|-HH:MM)"; 't', 'z' and a
// space in place of 'T' are tolerated. Offsets are folded into UTC; digits
// of the fraction past milliseconds are truncated. Throws ParseError with
// the offending character position.
Timestamp parse_rfc3339(std::string_view text);

}  // namespace hiva

#endif  // HIVA_TIMESTAMP_H_

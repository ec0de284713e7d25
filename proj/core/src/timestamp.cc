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

#include "hiva/timestamp.h"

#include <cstdio>

#include "hiva/errors.h"

namespace hiva {
namespace {

using namespace std::chrono;

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  int digits(std::size_t count) {
    int value = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const char c = peek();
      if (c < '0' || c > '9') fail("expected digit");
      value = value * 10 + (c - '0');
      ++pos_;
    }
    return value;
  }

  void expect(std::string_view allowed) {
    if (allowed.find(peek()) == std::string_view::npos || at_end()) {
      fail("unexpected character");
    }
    ++pos_;
  }

  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const char* what) const {
    throw ParseError(std::string("timestamp '") + std::string(text_) +
                         "': " + what,
                     pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Timestamp now_utc() {
  return time_point_cast<milliseconds>(system_clock::now());
}

std::string format_rfc3339(Timestamp ts) {
  const auto day = floor<days>(ts);
  const year_month_day ymd{day};
  const hh_mm_ss<milliseconds> tod{ts - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(tod.hours().count()),
                static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()),
                static_cast<int>(tod.subseconds().count()));
  return buf;
}

Timestamp parse_rfc3339(std::string_view text) {
  Cursor in(text);
  const int y = in.digits(4);
  in.expect("-");
  const int mo = in.digits(2);
  in.expect("-");
  const int d = in.digits(2);
  in.expect("Tt ");
  const int h = in.digits(2);
  in.expect(":");
  const int mi = in.digits(2);
  in.expect(":");
  const int s = in.digits(2);

  int millis = 0;
  if (in.peek() == '.') {
    in.advance();
    int scale = 100;
    bool any = false;
    while (in.peek() >= '0' && in.peek() <= '9') {
      millis += (in.peek() - '0') * scale;
      scale /= 10;
      any = true;
      in.advance();
    }
    if (!any) in.fail("empty fraction");
  }

  minutes offset{0};
  const char zone = in.peek();
  if (zone == 'Z' || zone == 'z') {
    in.advance();
  } else if (zone == '+' || zone == '-') {
    in.advance();
    const int oh = in.digits(2);
    in.expect(":");
    const int om = in.digits(2);
    if (oh > 23 || om > 59) in.fail("offset out of range");
    offset = hours{oh} + minutes{om};
    if (zone == '-') offset = -offset;
  } else {
    in.fail("missing timezone");
  }
  if (!in.at_end()) in.fail("trailing characters");

  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) in.fail("field out of range");
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s} +
         milliseconds{millis} - offset;
}

}  // namespace hiva

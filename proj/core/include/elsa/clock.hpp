// Copyright 2026 The ELSA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <mutex>

namespace elsa {

using Time = std::uint64_t;

// Monotone logical clock shared by every service of one deployment. Requests
// to move backwards are ignored.
class LogicalClock {
 public:
  explicit LogicalClock(Time start = 0) : now_(start) {}

  Time now() const {
    std::lock_guard lock(mu_);
    return now_;
  }

  // Returns the time after the call.
  Time advance_to(Time t) {
    std::lock_guard lock(mu_);
    if (t > now_) now_ = t;
    return now_;
  }

  Time advance_by(Time dt) {
    std::lock_guard lock(mu_);
    now_ += dt;
    return now_;
  }

 private:
  mutable std::mutex mu_;
  Time now_;
};

}  // namespace elsa

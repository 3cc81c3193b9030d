//
// Copyright 2026 The augtest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef AUGTEST_OUTCOME_H_
#define AUGTEST_OUTCOME_H_

namespace augtest {

enum class Outcome { kAccept, kReject, kBot };

enum class Branch { kAugmented, kBaseline };

inline const char* OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kAccept:
      return "ACCEPT";
    case Outcome::kReject:
      return "REJECT";
    case Outcome::kBot:
      return "BOT";
  }
  return "?";
}

inline const char* BranchName(Branch b) {
  return b == Branch::kAugmented ? "augmented" : "baseline";
}

}  // namespace augtest

#endif  // AUGTEST_OUTCOME_H_

// Copyright 2026 The cbsq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CBSQ_SRC_RANDOM_STREAM_HPP
#define CBSQ_SRC_RANDOM_STREAM_HPP

#include <cstdint>
#include <random>

namespace cbsq {

// mt19937_64 is fully specified by the standard; the distributions are not,
// so uniform deviates are formed from the raw bits to stay reproducible.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cbsq

#endif  // CBSQ_SRC_RANDOM_STREAM_HPP

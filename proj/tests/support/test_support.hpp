// Copyright 2026 The corpsched Authors.
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <unistd.h>

#include "corpsched/binning.hpp"
#include "corpsched/error.hpp"
#include "corpsched/features.hpp"

namespace corpsched::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("corpsched-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::vector<std::string> ReadLines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

/// True iff `fn` throws a corpsched::Error carrying `expected`.
template <typename Fn>
bool ThrowsCode(Fn&& fn, ErrorCode expected) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == expected;
  }
  return false;
}

/// Random nonincreasing bin sizes with every bin non-empty.
inline std::vector<std::size_t> RandomMonotoneSizes(std::mt19937_64& gen, std::size_t max_bins,
                                                     std::size_t max_size) {
  const std::size_t k = 1 + gen() % max_bins;
  std::vector<std::size_t> sizes(k);
  for (auto& s : sizes) s = 1 + gen() % max_size;
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

/// Assignment with `sizes[i]` examples in bin i+1, ids interleaved randomly.
inline BinAssignment AssignmentWithSizes(const std::vector<std::size_t>& sizes,
                                         std::mt19937_64& gen) {
  std::vector<std::uint32_t> bins;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    bins.insert(bins.end(), sizes[i], static_cast<std::uint32_t>(i + 1));
  }
  std::shuffle(bins.begin(), bins.end(), gen);
  return AssignmentFromBins(std::move(bins), static_cast<std::uint32_t>(sizes.size()));
}

inline FeatureVector UniformValues(std::size_t n, FeatureValue lo, FeatureValue hi,
                                   std::uint64_t seed, const std::string& name = "tgt-length") {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<FeatureValue> dist(lo, hi);
  FeatureVector v{name, std::vector<FeatureValue>(n)};
  for (auto& x : v.values) x = dist(gen);
  return v;
}

/// True iff `ids` is a permutation of 0..n-1.
inline bool IsPermutation(std::span<const ExampleId> ids, std::size_t n) {
  if (ids.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (ExampleId id : ids) {
    if (id >= n || seen[id]) return false;
    seen[id] = true;
  }
  return true;
}

}  // namespace corpsched::testing

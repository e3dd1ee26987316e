/* Copyright 2026 The ggan Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "ggan/evaluation.hpp"

#include <algorithm>

#include "ggan/errors.hpp"

namespace ggan {
namespace {

constexpr std::size_t kEvalChunk = 512;

}  // namespace

std::vector<std::string> sample_generator_text(const Generator& gen, std::size_t n, Rng& rng) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t done = 0; done < n;) {
    const std::size_t batch = std::min(kEvalChunk, n - done);
    const NoisePair z = sample_noise(gen, batch, rng);
    GenSample s = generate(gen, z.z_c, z.z_h, 1.0, rng);
    for (auto& line : s.discrete) out.push_back(std::move(line));
    done += batch;
  }
  return out;
}

double validity_rate(std::span<const std::string> lines) {
  if (lines.empty()) return 0.0;
  const auto valid = std::count_if(lines.begin(), lines.end(),
                                   [](const std::string& s) { return recognize(s); });
  return static_cast<double>(valid) / static_cast<double>(lines.size());
}

double evaluate_validity(const Generator& gen, std::size_t n, Rng& rng) {
  if (n == 0) throw DomainError("evaluate_validity: n must be at least 1");
  return validity_rate(sample_generator_text(gen, n, rng));
}

double evaluate_validity(const LanguageModel& model, std::size_t n, Rng& rng) {
  if (n == 0) throw DomainError("evaluate_validity: n must be at least 1");
  return validity_rate(sample_mle_batch(model, n, kSeqLen, rng));
}

std::array<double, kVocabSize> char_frequencies(std::span<const std::string> lines) {
  std::array<double, kVocabSize> freq{};
  std::size_t total = 0;
  for (const auto& line : lines) {
    for (char c : line) {
      freq[Vocabulary::index(c)] += 1.0;
      ++total;
    }
  }
  if (total > 0) {
    for (double& f : freq) f /= static_cast<double>(total);
  }
  return freq;
}

ValidityReport validity_report(std::span<const std::string> lines) {
  ValidityReport r;
  r.samples = lines.size();
  r.validity_rate = validity_rate(lines);
  std::size_t longest = 0;
  for (const auto& l : lines) longest = std::max(longest, l.size());
  r.prefix_histogram.assign(longest + 1, 0);
  for (const auto& l : lines) ++r.prefix_histogram[valid_prefix_length(l)];
  r.char_freq = char_frequencies(lines);
  return r;
}

}  // namespace ggan

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

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ggan/matrix.hpp"
#include "ggan/random.hpp"

namespace ggan {

inline constexpr std::size_t kVocabSize = 6;
inline constexpr std::size_t kSeqLen = 12;

// Frozen symbol order shared by dataset files, one-hot tensors and checkpoints.
struct Vocabulary {
  static constexpr std::array<char, kVocabSize> kSymbols{'x', '+', '-', '*', '/', ' '};
  static constexpr std::size_t kX = 0;
  static constexpr std::size_t kSpace = 5;

  static constexpr std::size_t size() noexcept { return kVocabSize; }
  static std::optional<std::size_t> find(char c) noexcept;
  // Throws InputError for characters outside the vocabulary.
  static std::size_t index(char c);
  static char symbol(std::size_t index);
  static bool is_operator(char c) noexcept { return c == '+' || c == '-' || c == '*' || c == '/'; }
};

// S -> x | S+S | S-S | S*S | S/S with per-production sampling probabilities.
struct Grammar {
  double p_x = 0.5;
  double p_add = 0.125;
  double p_sub = 0.125;
  double p_mul = 0.125;
  double p_div = 0.125;

  // Only S -> x; every sample is "x".
  static Grammar terminal_only() { return {1.0, 0.0, 0.0, 0.0, 0.0}; }

  // Probabilities must be non-negative, sum to 1, and give S -> x positive mass.
  void validate() const;
};

// Samples a derivation from S, restarting whenever the partial derivation can no
// longer fit in max_len characters.
std::string sample_expression(const Grammar& grammar, std::size_t max_len, Rng& rng);

std::string pad_right(std::string_view expr, std::size_t len);

// True iff s is a nonempty derivable expression followed only by spaces. Throws
// InputError on characters outside the vocabulary.
bool recognize(std::string_view s);

// Length of the longest prefix of s that is itself a derivable expression (0 if
// none).
std::size_t valid_prefix_length(std::string_view s);

// Every terminal string of length <= up_to_len derivable from S, by breadth-first
// expansion of sentential forms. Refuses (DomainError) above length 7.
std::set<std::string> enumerate_language(const Grammar& grammar, std::size_t up_to_len);

// A batch of fixed-length sequences stored time-major: steps[t] is batch x d.
struct SequenceBatch {
  std::vector<Matrix> steps;

  std::size_t length() const noexcept { return steps.size(); }
  std::size_t batch() const noexcept { return steps.empty() ? 0 : steps.front().rows(); }
  bool row_stochastic(double tol = 1e-9) const;
};

SequenceBatch encode_one_hot(std::span<const std::string> lines);
std::vector<std::string> decode_argmax(const SequenceBatch& batch);

// n sampled expressions, each space padded to max_len.
std::vector<std::string> make_dataset(const Grammar& grammar, std::size_t n, std::size_t max_len,
                                      Rng& rng);

// One line per sample, newline terminated. Throws IoError.
void write_dataset(const std::filesystem::path& path, std::span<const std::string> lines);
// Every line must be exactly seq_len vocabulary characters; throws InputError or
// IoError.
std::vector<std::string> read_dataset(const std::filesystem::path& path,
                                      std::size_t seq_len = kSeqLen);

// Logits whose softmax puts target_prob on true_index and spreads the rest evenly.
Matrix smoothing_logits(std::size_t true_index, double target_prob, std::size_t d = kVocabSize);

// Replaces every one-hot step by a Gumbel-softmax sample around the smoothed
// distribution of its true symbol.
SequenceBatch smooth_inputs(const SequenceBatch& one_hot, double target_prob, double tau_input,
                            Rng& rng);

}  // namespace ggan

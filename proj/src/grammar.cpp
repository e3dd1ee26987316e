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

#include "ggan/grammar.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <unordered_set>

#include "ggan/errors.hpp"
#include "ggan/numeric.hpp"

namespace ggan {

std::optional<std::size_t> Vocabulary::find(char c) noexcept {
  for (std::size_t i = 0; i < kSymbols.size(); ++i) {
    if (kSymbols[i] == c) return i;
  }
  return std::nullopt;
}

std::size_t Vocabulary::index(char c) {
  if (auto i = find(c)) return *i;
  throw InputError("character '" + std::string(1, c) + "' (code " +
                   std::to_string(static_cast<unsigned char>(c)) + ") is not in the vocabulary");
}

char Vocabulary::symbol(std::size_t index) {
  if (index >= kSymbols.size()) throw InputError("vocabulary index out of range");
  return kSymbols[index];
}

void Grammar::validate() const {
  const std::array<double, 5> ps{p_x, p_add, p_sub, p_mul, p_div};
  double total = 0.0;
  for (double p : ps) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("grammar: negative production probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("grammar: production probabilities must sum to 1");
  if (!(p_x > 0.0)) throw DomainError("grammar: S -> x needs positive probability to terminate");
}

std::string sample_expression(const Grammar& grammar, std::size_t max_len, Rng& rng) {
  grammar.validate();
  if (max_len == 0) throw DomainError("sample_expression: max_len must be at least 1");
  const std::array<double, 4> binary{grammar.p_add, grammar.p_sub, grammar.p_mul, grammar.p_div};
  constexpr std::array<char, 4> ops{'+', '-', '*', '/'};

  for (;;) {
    std::string out;
    std::vector<char> pending{'S'};
    bool fits = true;
    while (!pending.empty()) {
      const char sym = pending.back();
      pending.pop_back();
      if (sym != 'S') {
        out.push_back(sym);
        continue;
      }
      double u = rng.uniform() - grammar.p_x;
      if (u < 0.0) {
        pending.push_back('x');
      } else {
        std::size_t op = ops.size() - 1;
        for (std::size_t i = 0; i < ops.size(); ++i) {
          if (binary[i] > 0.0 && (u -= binary[i]) < 0.0) {
            op = i;
            break;
          }
        }
        // Leftmost derivation: the stack top is expanded next.
        pending.push_back('S');
        pending.push_back(ops[op]);
        pending.push_back('S');
      }
      // Every pending symbol contributes at least one character.
      if (out.size() + pending.size() > max_len) {
        fits = false;
        break;
      }
    }
    if (fits) return out;
  }
}

std::string pad_right(std::string_view expr, std::size_t len) {
  std::string out(expr);
  if (out.size() < len) out.append(len - out.size(), ' ');
  return out;
}

namespace {

bool is_expression(std::string_view e) {
  if (e.empty() || e.size() % 2 == 0) return false;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i % 2 == 0 ? e[i] != 'x' : !Vocabulary::is_operator(e[i])) return false;
  }
  return true;
}

}  // namespace

bool recognize(std::string_view s) {
  for (char c : s) Vocabulary::index(c);
  const std::size_t body = std::min(s.find(' '), s.size());
  if (s.find_first_not_of(' ', body) != std::string_view::npos) return false;
  return is_expression(s.substr(0, body));
}

std::size_t valid_prefix_length(std::string_view s) {
  std::size_t best = 0;
  for (std::size_t len = 1; len <= s.size(); len += 2) {
    if (!is_expression(s.substr(0, len))) break;
    best = len;
  }
  return best;
}

std::set<std::string> enumerate_language(const Grammar& grammar, std::size_t up_to_len) {
  if (up_to_len > 7) {
    throw DomainError("enumerate_language refuses lengths above 7 (asked for " +
                      std::to_string(up_to_len) + ")");
  }
  grammar.validate();
  std::vector<std::string> rhs;
  if (grammar.p_x > 0) rhs.emplace_back("x");
  if (grammar.p_add > 0) rhs.emplace_back("S+S");
  if (grammar.p_sub > 0) rhs.emplace_back("S-S");
  if (grammar.p_mul > 0) rhs.emplace_back("S*S");
  if (grammar.p_div > 0) rhs.emplace_back("S/S");

  std::set<std::string> language;
  std::unordered_set<std::string> seen{"S"};
  std::deque<std::string> frontier{"S"};
  while (!frontier.empty()) {
    std::string form = std::move(frontier.front());
    frontier.pop_front();
    const auto nt = form.find('S');
    if (nt == std::string::npos) {
      language.insert(form);
      continue;
    }
    for (const auto& r : rhs) {
      std::string next = form.substr(0, nt) + r + form.substr(nt + 1);
      if (next.size() > up_to_len) continue;
      if (seen.insert(next).second) frontier.push_back(std::move(next));
    }
  }
  return language;
}

bool SequenceBatch::row_stochastic(double tol) const {
  for (const auto& step : steps) {
    for (std::size_t r = 0; r < step.rows(); ++r) {
      double total = 0.0;
      for (double v : step.row(r)) {
        if (!(v >= 0.0)) return false;
        total += v;
      }
      if (std::abs(total - 1.0) > tol) return false;
    }
  }
  return true;
}

SequenceBatch encode_one_hot(std::span<const std::string> lines) {
  SequenceBatch batch;
  if (lines.empty()) return batch;
  const std::size_t len = lines.front().size();
  batch.steps.assign(len, Matrix(lines.size(), kVocabSize));
  for (std::size_t b = 0; b < lines.size(); ++b) {
    if (lines[b].size() != len) throw InputError("encode_one_hot: sequences differ in length");
    for (std::size_t t = 0; t < len; ++t) batch.steps[t](b, Vocabulary::index(lines[b][t])) = 1.0;
  }
  return batch;
}

std::vector<std::string> decode_argmax(const SequenceBatch& batch) {
  std::vector<std::string> out(batch.batch(), std::string(batch.length(), ' '));
  for (std::size_t t = 0; t < batch.length(); ++t) {
    const Matrix& step = batch.steps[t];
    for (std::size_t b = 0; b < step.rows(); ++b) {
      const auto row = step.row(b);
      const auto best = std::max_element(row.begin(), row.end()) - row.begin();
      out[b][t] = Vocabulary::symbol(static_cast<std::size_t>(best));
    }
  }
  return out;
}

std::vector<std::string> make_dataset(const Grammar& grammar, std::size_t n, std::size_t max_len,
                                      Rng& rng) {
  if (n == 0) throw DomainError("make_dataset: n must be at least 1");
  std::vector<std::string> lines;
  lines.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    lines.push_back(pad_right(sample_expression(grammar, max_len, rng), max_len));
  }
  return lines;
}

void write_dataset(const std::filesystem::path& path, std::span<const std::string> lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  for (const auto& line : lines) out << line << '\n';
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<std::string> read_dataset(const std::filesystem::path& path, std::size_t seq_len) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset '" + path.string() + "'");
  std::vector<std::string> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.size() != seq_len) {
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(seq_len) + " characters, got " + std::to_string(line.size()));
    }
    for (char c : line) {
      if (!Vocabulary::find(c)) {
        throw InputError(path.string() + ":" + std::to_string(lineno) +
                         ": character outside the vocabulary");
      }
    }
    lines.push_back(line);
  }
  if (lines.empty()) throw InputError("dataset '" + path.string() + "' is empty");
  return lines;
}

Matrix smoothing_logits(std::size_t true_index, double target_prob, std::size_t d) {
  if (!(target_prob > 0.0 && target_prob < 1.0)) {
    throw DomainError("smoothing target probability must lie in (0,1)");
  }
  if (d < 2 || true_index >= d) throw DomainError("smoothing_logits: bad index or dimension");
  Matrix h(1, d, std::log((1.0 - target_prob) / static_cast<double>(d - 1)));
  h(0, true_index) = std::log(target_prob);
  return h;
}

SequenceBatch smooth_inputs(const SequenceBatch& one_hot, double target_prob, double tau_input,
                            Rng& rng) {
  if (!(tau_input > 0.0)) throw DomainError("smooth_inputs: tau_input must be positive");
  SequenceBatch out;
  out.steps.reserve(one_hot.length());
  for (const Matrix& step : one_hot.steps) {
    Matrix h(step.rows(), step.cols());
    for (std::size_t b = 0; b < step.rows(); ++b) {
      const auto row = step.row(b);
      const auto idx = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
      const Matrix proto = smoothing_logits(idx, target_prob, step.cols());
      std::copy(proto.values().begin(), proto.values().end(), h.row(b).begin());
    }
    out.steps.push_back(gumbel_softmax_sample(h, tau_input, rng).y);
  }
  return out;
}

}  // namespace ggan

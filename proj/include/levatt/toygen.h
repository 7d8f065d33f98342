// Copyright 2026 The LevAtt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Desk-scale stand-ins for tabular generators: a character n-gram model
// whose context length dials memorization up to verbatim copying, a
// structure mask that keeps samples decodable, simulated Gaussian data and
// a per-column bootstrap control that cannot memorize rows.

#ifndef LEVATT_TOYGEN_H_
#define LEVATT_TOYGEN_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "levatt/tabular.h"
#include "levatt/tlp.h"

namespace levatt {

// An order large enough to condition on the whole prefix.
inline constexpr int kFullOrder = 1 << 30;

// Character n-gram model over training encodings. Tokens are the distinct
// training characters in code point order followed by EOS. The context is
// the last order-1 symbols of BOS + prefix; a context never seen in training
// backs off to its longest seen suffix.
//
// Smoothing interpolates along the chain of distinct seen suffix contexts
// from the empty context upwards:
//   P_root(c) = (N(c) + alpha) / (N + alpha |V|)
//   P_u(c)    = (N_u(c) + alpha |V| P_parent(c)) / (N_u + alpha |V|)
// With alpha = 0 this is the maximum-likelihood estimate of the deepest
// context and unseen successors have probability 0.
class CharNgramModel {
 public:
  struct Context {
    uint32_t state = 0;
    int length = 0;  // symbols of the conditioning suffix
  };

  CharNgramModel() = default;

  // EmptyTraining if `train` has no rows; InvalidConfig if order < 1 or
  // alpha < 0.
  static absl::StatusOr<CharNgramModel> Train(const Dataset& train, int order,
                                              double alpha,
                                              const EncodingConfig& cfg);

  // Builds from distinct encodings and their multiplicities.
  static absl::StatusOr<CharNgramModel> FromCounts(
      std::map<std::string, uint64_t> counts, int order, double alpha,
      Schema schema, EncodingConfig cfg);

  int order() const { return order_; }
  double alpha() const { return alpha_; }
  const std::u32string& chars() const { return chars_; }
  size_t vocab_size() const { return chars_.size() + 1; }
  size_t eos() const { return chars_.size(); }
  size_t max_length() const { return max_length_; }
  const Schema& schema() const { return schema_; }
  const EncodingConfig& encoding() const { return encoding_; }
  const std::map<std::string, uint64_t>& counts() const { return counts_; }

  // Token index of a character, if it is in the vocabulary.
  std::optional<size_t> TokenOf(char32_t c) const;

  Context Start() const;
  Context Advance(Context ctx, size_t token) const;
  // Smoothed log probabilities for the token after the context.
  std::span<const double> LogProbs(Context ctx) const;
  // The next shallower distinct context, or nullopt at the empty context.
  std::optional<Context> Shorter(Context ctx) const;

  // Logits for the token after `prefix` (UTF-8); characters outside the
  // vocabulary break the context like any unseen string.
  LogitVector Logits(std::string_view prefix) const;

  nlohmann::json ToJson() const;
  static absl::StatusOr<CharNgramModel> FromJson(const nlohmann::json& j);

 private:
  uint32_t Step(uint32_t state, int& length, uint32_t symbol) const;
  void Build();

  int order_ = 1;
  double alpha_ = 0;
  Schema schema_;
  EncodingConfig encoding_;
  std::map<std::string, uint64_t> counts_;
  std::u32string chars_;
  size_t max_length_ = 0;

  // Suffix automaton over BOS + encoding + EOS for every distinct encoding.
  // Symbols: tokens 0..eos(), then BOS.
  size_t symbols_ = 0;
  std::vector<int32_t> next_;  // next_[state * symbols_ + symbol], -1 if none
  std::vector<int32_t> link_;
  std::vector<int32_t> len_;
  std::vector<uint64_t> occ_;
  std::vector<double> log_probs_;  // [state * vocab_size() + token]
};

// Tokens allowed at each step so that the output follows the encoding
// template: field names and separators are forced, numeric values follow the
// sign/digit/point shapes seen for that column (with the digits seen at each
// shape position), token values follow the set of training tokens.
class StructureMask {
 public:
  struct State {
    size_t column = 0;
    bool in_value = false;
    size_t literal_pos = 0;
    int node = 0;
    bool done = false;
    bool dead = false;
  };

  static absl::StatusOr<StructureMask> Build(const CharNgramModel& model);

  State Start() const;
  // allowed[token] for every model token.
  void Allowed(const State& s, std::vector<bool>& allowed) const;
  State Advance(State s, size_t token) const;

 private:
  struct Node {
    std::map<char32_t, int> children;  // kDigit stands for any digit
    uint16_t digits = 0;               // digits seen on the kDigit edge
    bool terminal = false;
  };
  static constexpr char32_t kDigit = 0xE000;

  std::u32string Literal(size_t column) const;
  const Node& NodeAt(size_t column, int node) const;

  std::u32string chars_;
  size_t eos_ = 0;
  std::vector<std::u32string> literals_;  // before each column
  std::vector<bool> numeric_;
  std::vector<std::vector<Node>> tries_;
};

// Logit stream for one sequence: model log probabilities, optionally masked
// to the encoding structure. If the mask removes every token of positive
// probability the context is shortened until one survives.
class NgramLogitSource : public LogitSource {
 public:
  NgramLogitSource(const CharNgramModel& model, const StructureMask* mask,
                   size_t length_cap);

  std::optional<LogitVector> Next(std::span<const size_t> prefix) override;

  bool hit_cap() const { return hit_cap_; }

 private:
  const CharNgramModel& model_;
  const StructureMask* mask_;
  size_t length_cap_;
  CharNgramModel::Context ctx_;
  StructureMask::State grammar_;
  size_t consumed_ = 0;
  bool hit_cap_ = false;
  std::vector<bool> allowed_;
};

enum class Decoding { kSample, kGreedy };

struct GenerateOptions {
  std::optional<TlpConfig> tlp;  // unset: vanilla sampling
  Decoding decoding = Decoding::kSample;
  bool structure_mask = true;
  uint64_t seed = 0;
  int max_retries = 5;
  int workers = 0;
};

// Samples n records. Sequence i, attempt a draws from StreamRng(seed, i, a);
// a sample that does not reach EOS within 2x the longest training encoding
// or does not decode is retried up to max_retries times.
absl::StatusOr<Dataset> Generate(const CharNgramModel& model, size_t n,
                                 const GenerateOptions& options);

// Decoded text of one token sequence (EOS and anything after it dropped).
std::string TokensToText(const CharNgramModel& model,
                         std::span<const size_t> tokens);

struct SimSpec {
  double mean = 300;
  double std = 5;
  int n_columns = 10;
  int n_rows = 1000;
  int precision = 7;
  uint64_t seed = 0;

  // Ten digits per column: precision = max(0, 10 - integer digits of mean),
  // columns = ceil(digits / 10).
  static SimSpec ForDigits(double mean, double std, int digits, int n_rows,
                           uint64_t seed);
};

// Independent columns x0..x{k-1} ~ N(mean, std), rounded to the precision.
// Column c of train draws from StreamRng(seed, 0, c) and of holdout from
// StreamRng(seed, 1, c), so a wider fixture extends a narrower one with the
// same seed column by column.
absl::StatusOr<std::pair<Dataset, Dataset>> SimulateGaussian(
    const SimSpec& spec);

// Each cell drawn independently per column from the training column; numeric
// draws get N(0, (0.1 sd)^2) jitter, sd being the column's population standard deviation.
absl::StatusOr<Dataset> ControlSampler(const Dataset& train, size_t n,
                                       std::mt19937_64& rng);

}  // namespace levatt

#endif  // LEVATT_TOYGEN_H_

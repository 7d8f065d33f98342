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

#include "levatt/levatt.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "levatt/parallel.h"
#include "levatt/status.h"

namespace levatt {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

std::vector<std::string> TextsOf(std::span<const EncodedRecord> records) {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const EncodedRecord& r : records) out.push_back(r.text);
  return out;
}

absl::StatusOr<std::pair<std::vector<std::string>, std::vector<std::string>>>
EncodePair(const Dataset& targets, const Dataset& synthetic,
           const EncodingConfig& cfg) {
  if (!(targets.schema() == synthetic.schema())) {
    return MakeError(ErrorKind::kSchemaMismatch,
                     "targets and synthetic data have different schemas");
  }
  ASSIGN_OR_RETURN(std::vector<EncodedRecord> t, EncodeDataset(targets, cfg));
  ASSIGN_OR_RETURN(std::vector<EncodedRecord> s, EncodeDataset(synthetic, cfg));
  return std::make_pair(TextsOf(t), TextsOf(s));
}

}  // namespace

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    int extra = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      extra = 1;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      extra = 2;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      extra = 3;
      cp = b0 & 0x07;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = i + extra < text.size();
    for (int k = 1; ok && k <= extra; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
      } else {
        cp = (cp << 6) | (b & 0x3F);
      }
    }
    static constexpr char32_t kMinForLength[4] = {0, 0x80, 0x800, 0x10000};
    if (ok && (cp < kMinForLength[extra] || cp > 0x10FFFF ||
               (cp >= 0xD800 && cp <= 0xDFFF))) {
      ok = false;
    }
    if (!ok) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += 1 + extra;
  }
  return out;
}

size_t Levenshtein(std::u32string_view a, std::u32string_view b) {
  // The shorter string is the bit-parallel pattern.
  if (a.size() > b.size()) std::swap(a, b);
  std::vector<char32_t> alphabet(a.begin(), a.end());
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  const auto foreign = static_cast<kernels::Symbol>(alphabet.size());
  auto to_symbol = [&](char32_t c) {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), c);
    return it != alphabet.end() && *it == c
               ? static_cast<kernels::Symbol>(it - alphabet.begin())
               : foreign;
  };
  std::vector<kernels::Symbol> pattern;
  pattern.reserve(a.size());
  for (char32_t c : a) pattern.push_back(to_symbol(c));
  std::vector<kernels::Symbol> text;
  text.reserve(b.size());
  for (char32_t c : b) text.push_back(to_symbol(c));
  const kernels::PatternMasks masks =
      kernels::BuildPatternMasks(pattern, static_cast<int>(foreign) + 1);
  return static_cast<size_t>(kernels::EditDistanceScalar(masks, text));
}

size_t Levenshtein(std::string_view a, std::string_view b) {
  return Levenshtein(std::u32string_view(DecodeUtf8(a)),
                     std::u32string_view(DecodeUtf8(b)));
}

absl::StatusOr<SyntheticIndex> SyntheticIndex::Build(
    std::span<const std::string> synthetic) {
  if (synthetic.empty()) {
    return MakeError(ErrorKind::kEmptySyntheticSet,
                     "the synthetic set has no records");
  }
  SyntheticIndex index;
  std::vector<std::u32string> decoded;
  decoded.reserve(synthetic.size());
  for (const std::string& s : synthetic) {
    decoded.push_back(DecodeUtf8(s));
    index.alphabet_.insert(index.alphabet_.end(), decoded.back().begin(),
                           decoded.back().end());
  }
  std::sort(index.alphabet_.begin(), index.alphabet_.end());
  index.alphabet_.erase(
      std::unique(index.alphabet_.begin(), index.alphabet_.end()),
      index.alphabet_.end());
  for (const std::u32string& s : decoded) {
    index.corpus_.Add(index.ToSymbols(s));
    index.lengths_.push_back(s.size());
  }
  return index;
}

std::vector<kernels::Symbol> SyntheticIndex::ToSymbols(
    std::u32string_view text) const {
  // Characters absent from the synthetic side share one extra symbol; it
  // never occurs in a text, so it mismatches everything as it should.
  const auto foreign = static_cast<kernels::Symbol>(alphabet_.size());
  std::vector<kernels::Symbol> out;
  out.reserve(text.size());
  for (char32_t c : text) {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), c);
    out.push_back(it != alphabet_.end() && *it == c
                      ? static_cast<kernels::Symbol>(it - alphabet_.begin())
                      : foreign);
  }
  return out;
}

NearestSynthetic SyntheticIndex::Nearest(std::string_view target,
                                         const LevAttOptions& options) const {
  const std::u32string decoded = DecodeUtf8(target);
  const std::vector<kernels::Symbol> pattern = ToSymbols(decoded);
  const kernels::PatternMasks masks = kernels::BuildPatternMasks(
      pattern, static_cast<int>(alphabet_.size()) + 1);
  if (options.normalization == DistanceNormalization::kRaw) {
    const kernels::MinDistance best =
        kernels::MinEditDistance(options.isa, masks, corpus_);
    return {static_cast<double>(best.distance), best.index};
  }
  NearestSynthetic best{2.0, 0};
  for (size_t i = 0; i < corpus_.size(); ++i) {
    const size_t longest = std::max(decoded.size(), lengths_[i]);
    const double d =
        longest == 0
            ? 0.0
            : static_cast<double>(
                  kernels::EditDistanceScalar(masks, corpus_.text(i))) /
                  static_cast<double>(longest);
    if (d < best.distance) best = {d, i};
  }
  return best;
}

double SyntheticIndex::Score(std::string_view target,
                             const LevAttOptions& options) const {
  return -Nearest(target, options).distance;
}

absl::StatusOr<double> LevAttScore(const EncodedRecord& target,
                                   std::span<const EncodedRecord> synthetic,
                                   const LevAttOptions& options) {
  const std::vector<std::string> texts = TextsOf(synthetic);
  ASSIGN_OR_RETURN(SyntheticIndex index, SyntheticIndex::Build(texts));
  return index.Score(target.text, options);
}

absl::StatusOr<std::vector<double>> LevAttScores(
    std::span<const std::string> targets,
    std::span<const std::string> synthetic, const LevAttOptions& options) {
  if (targets.empty()) return std::vector<double>{};
  ASSIGN_OR_RETURN(SyntheticIndex index, SyntheticIndex::Build(synthetic));
  std::vector<double> scores(targets.size());
  ParallelFor(
      targets.size(),
      [&](size_t i) { scores[i] = index.Score(targets[i], options); },
      options.workers);
  return scores;
}

absl::StatusOr<std::vector<double>> LevAttAttack(const Dataset& targets,
                                                 const Dataset& synthetic,
                                                 const EncodingConfig& cfg,
                                                 const LevAttOptions& options) {
  ASSIGN_OR_RETURN(auto texts, EncodePair(targets, synthetic, cfg));
  return LevAttScores(texts.first, texts.second, options);
}

absl::StatusOr<std::vector<NearestSynthetic>> LevAttNearest(
    const Dataset& targets, const Dataset& synthetic, const EncodingConfig& cfg,
    const LevAttOptions& options) {
  ASSIGN_OR_RETURN(auto texts, EncodePair(targets, synthetic, cfg));
  if (texts.first.empty()) return std::vector<NearestSynthetic>{};
  ASSIGN_OR_RETURN(SyntheticIndex index, SyntheticIndex::Build(texts.second));
  std::vector<NearestSynthetic> out(texts.first.size());
  ParallelFor(
      out.size(),
      [&](size_t i) { out[i] = index.Nearest(texts.first[i], options); },
      options.workers);
  return out;
}

}  // namespace levatt

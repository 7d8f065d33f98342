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

// AVX2 variants. This translation unit is the only one built with -mavx2;
// nothing here may be called unless DetectIsa() reported kAvx2.

#include <algorithm>
#include <array>
#include <cstdlib>

#include "levatt/kernels/kernels.h"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>
#define LEVATT_HAVE_AVX2 1
#endif

namespace levatt::kernels {

#ifdef LEVATT_HAVE_AVX2
namespace {

constexpr int kLanes = 4;

// Runs one pattern against up to four texts, one per 64-bit lane. Lanes
// whose distance provably reaches `bound` stop early and report `bound`.
std::array<int, kLanes> EditDistanceBatch(
    const PatternMasks& pattern, const std::array<std::span<const Symbol>,
                                                  kLanes>& texts,
    int lanes, int bound) {
  const int m = pattern.length;
  const int blocks = pattern.blocks;
  const int last_bit = (m - 1) % 64;

  std::array<int, kLanes> result;
  std::array<int, kLanes> len{};
  std::array<bool, kLanes> running{};
  int max_len = 0;
  for (int k = 0; k < kLanes; ++k) {
    len[k] = k < lanes ? static_cast<int>(texts[k].size()) : 0;
    running[k] = k < lanes;
    result[k] = bound;
    max_len = std::max(max_len, len[k]);
  }

  std::vector<__m256i> pv(blocks, _mm256_set1_epi64x(-1));
  std::vector<__m256i> mv(blocks, _mm256_setzero_si256());
  const __m256i ones = _mm256_set1_epi64x(-1);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m128i shift63 = _mm_cvtsi32_si128(63);
  const __m128i shift_last = _mm_cvtsi32_si128(last_bit);
  const auto* table = reinterpret_cast<const long long*>(pattern.peq.data());

  __m256i score = _mm256_set1_epi64x(m);
  alignas(32) long long lane_score[kLanes];
  int live = lanes;

  for (int j = 0; j < max_len && live > 0; ++j) {
    long long sym[kLanes];
    for (int k = 0; k < kLanes; ++k) {
      sym[k] = j < len[k] ? static_cast<long long>(texts[k][j]) * blocks : 0;
    }
    const __m256i base = _mm256_set_epi64x(sym[3], sym[2], sym[1], sym[0]);
    __m256i hp = one;
    __m256i hn = _mm256_setzero_si256();
    for (int b = 0; b < blocks; ++b) {
      const __m256i idx = _mm256_add_epi64(base, _mm256_set1_epi64x(b));
      __m256i eq = _mm256_i64gather_epi64(table, idx, 8);
      const __m256i xv = _mm256_or_si256(eq, mv[b]);
      eq = _mm256_or_si256(eq, hn);
      const __m256i sum =
          _mm256_add_epi64(_mm256_and_si256(eq, pv[b]), pv[b]);
      const __m256i xh =
          _mm256_or_si256(_mm256_xor_si256(sum, pv[b]), eq);
      __m256i ph = _mm256_or_si256(
          mv[b], _mm256_xor_si256(_mm256_or_si256(xh, pv[b]), ones));
      __m256i mh = _mm256_and_si256(pv[b], xh);
      const __m128i out_shift = b + 1 == blocks ? shift_last : shift63;
      const __m256i hop = _mm256_and_si256(_mm256_srl_epi64(ph, out_shift), one);
      const __m256i hon = _mm256_and_si256(_mm256_srl_epi64(mh, out_shift), one);
      ph = _mm256_or_si256(_mm256_slli_epi64(ph, 1), hp);
      mh = _mm256_or_si256(_mm256_slli_epi64(mh, 1), hn);
      pv[b] = _mm256_or_si256(
          mh, _mm256_xor_si256(_mm256_or_si256(xv, ph), ones));
      mv[b] = _mm256_and_si256(ph, xv);
      hp = hop;
      hn = hon;
    }
    score = _mm256_sub_epi64(_mm256_add_epi64(score, hp), hn);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane_score), score);
    for (int k = 0; k < kLanes; ++k) {
      if (!running[k]) continue;
      const int s = static_cast<int>(lane_score[k]);
      if (len[k] == j + 1) {
        result[k] = std::min(s, bound);
        running[k] = false;
        --live;
      } else if (s - (len[k] - j - 1) >= bound) {
        running[k] = false;
        --live;
      }
    }
  }
  return result;
}

}  // namespace

MinDistance MinEditDistanceAvx2(const PatternMasks& pattern,
                                const TextCorpus& corpus, int bound) {
  const int m = pattern.length;
  if (m == 0) return MinEditDistanceScalar(pattern, corpus, bound);

  MinDistance best{bound, corpus.size()};
  std::array<std::span<const Symbol>, kLanes> texts;
  std::array<size_t, kLanes> index{};
  int lanes = 0;

  auto flush = [&] {
    const std::array<int, kLanes> d =
        EditDistanceBatch(pattern, texts, lanes, best.distance);
    for (int k = 0; k < lanes; ++k) {
      if (d[k] < best.distance) best = {d[k], index[k]};
    }
    lanes = 0;
  };

  for (size_t i = 0; i < corpus.size() && best.distance > 0; ++i) {
    const std::span<const Symbol> text = corpus.text(i);
    const int n = static_cast<int>(text.size());
    if (std::abs(m - n) >= best.distance) continue;
    if (n == 0) {
      if (lanes > 0) flush();
      if (m < best.distance) best = {m, i};
      continue;
    }
    texts[lanes] = text;
    index[lanes] = i;
    if (++lanes == kLanes) flush();
  }
  if (lanes > 0 && best.distance > 0) flush();
  return best;
}

void SquaredDistancesAvx2(std::span<const double> query, const double* rows,
                          size_t dim, std::span<double> out) {
  const size_t dim4 = dim - dim % 4;
  const double* q = query.data();
  for (size_t r = 0; r < out.size(); ++r) {
    const double* row = rows + r * dim;
    __m256d acc = _mm256_setzero_pd();
    for (size_t j = 0; j < dim4; j += 4) {
      const __m256d diff =
          _mm256_sub_pd(_mm256_loadu_pd(q + j), _mm256_loadu_pd(row + j));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (size_t j = dim4; j < dim; ++j) {
      const double diff = q[j] - row[j];
      total = total + diff * diff;
    }
    out[r] = total;
  }
}

#else  // !LEVATT_HAVE_AVX2

MinDistance MinEditDistanceAvx2(const PatternMasks& pattern,
                                const TextCorpus& corpus, int bound) {
  return MinEditDistanceScalar(pattern, corpus, bound);
}

void SquaredDistancesAvx2(std::span<const double> query, const double* rows,
                          size_t dim, std::span<double> out) {
  SquaredDistancesScalar(query, rows, dim, out);
}

#endif  // LEVATT_HAVE_AVX2

}  // namespace levatt::kernels

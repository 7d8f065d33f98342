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

#include <algorithm>
#include <cstdlib>

#include "levatt/kernels/kernels.h"

namespace levatt::kernels {
namespace {

// One column step of one 64-row block. `hin` is the horizontal delta entering
// the block's top row (-1, 0, +1); the delta leaving its row `out_bit` is
// returned.
inline int AdvanceBlock(uint64_t eq, int hin, int out_bit, uint64_t& pv,
                        uint64_t& mv) {
  const uint64_t xv = eq | mv;
  if (hin < 0) eq |= 1;
  const uint64_t xh = (((eq & pv) + pv) ^ pv) | eq;
  uint64_t ph = mv | ~(xh | pv);
  uint64_t mh = pv & xh;
  int hout = 0;
  if ((ph >> out_bit) & 1) hout = 1;
  if ((mh >> out_bit) & 1) hout = -1;
  ph <<= 1;
  mh <<= 1;
  if (hin < 0) {
    mh |= 1;
  } else if (hin > 0) {
    ph |= 1;
  }
  pv = mh | ~(xv | ph);
  mv = ph & xv;
  return hout;
}

}  // namespace

PatternMasks BuildPatternMasks(std::span<const Symbol> pattern, int alphabet) {
  PatternMasks pm;
  pm.length = static_cast<int>(pattern.size());
  pm.blocks = (pm.length + 63) / 64;
  pm.alphabet = alphabet;
  pm.peq.assign(static_cast<size_t>(alphabet) * pm.blocks, 0);
  for (int i = 0; i < pm.length; ++i) {
    pm.peq[static_cast<size_t>(pattern[i]) * pm.blocks + i / 64] |=
        uint64_t{1} << (i % 64);
  }
  return pm;
}

int EditDistanceScalar(const PatternMasks& pattern,
                       std::span<const Symbol> text, int bound) {
  const int m = pattern.length;
  const int n = static_cast<int>(text.size());
  if (m == 0) return n;
  if (n == 0) return m;
  if (std::abs(m - n) >= bound) return bound;

  const int blocks = pattern.blocks;
  const int last_bit = (m - 1) % 64;
  // Vertical deltas start at +1: D[i][0] = i.
  uint64_t pv_small[8];
  uint64_t mv_small[8];
  std::vector<uint64_t> pv_big;
  std::vector<uint64_t> mv_big;
  uint64_t* pv = pv_small;
  uint64_t* mv = mv_small;
  if (blocks > 8) {
    pv_big.resize(blocks);
    mv_big.resize(blocks);
    pv = pv_big.data();
    mv = mv_big.data();
  }
  std::fill(pv, pv + blocks, ~uint64_t{0});
  std::fill(mv, mv + blocks, uint64_t{0});

  int score = m;
  for (int j = 0; j < n; ++j) {
    const Symbol c = text[j];
    int h = 1;  // D[0][j + 1] - D[0][j]
    for (int b = 0; b < blocks; ++b) {
      h = AdvanceBlock(pattern.at(c, b), h, b + 1 == blocks ? last_bit : 63,
                       pv[b], mv[b]);
    }
    score += h;
    // Each remaining column can lower the last-row value by at most one.
    if (score - (n - j - 1) >= bound) return bound;
  }
  return score;
}

MinDistance MinEditDistanceScalar(const PatternMasks& pattern,
                                  const TextCorpus& corpus, int bound) {
  MinDistance best{bound, corpus.size()};
  for (size_t i = 0; i < corpus.size(); ++i) {
    const int d = EditDistanceScalar(pattern, corpus.text(i), best.distance);
    if (d < best.distance) {
      best = {d, i};
      if (d == 0) break;
    }
  }
  return best;
}

void SquaredDistancesScalar(std::span<const double> query, const double* rows,
                            size_t dim, std::span<double> out) {
  const size_t dim4 = dim - dim % 4;
  const double* q = query.data();
  for (size_t r = 0; r < out.size(); ++r) {
    const double* row = rows + r * dim;
    // Four lane accumulators, combined pairwise: the AVX2 kernel's order.
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (size_t j = 0; j < dim4; j += 4) {
      for (size_t k = 0; k < 4; ++k) {
        const double diff = q[j + k] - row[j + k];
        acc[k] = acc[k] + diff * diff;
      }
    }
    double total = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (size_t j = dim4; j < dim; ++j) {
      const double diff = q[j] - row[j];
      total = total + diff * diff;
    }
    out[r] = total;
  }
}

}  // namespace levatt::kernels

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


#include "levatt/toygen.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "levatt/levatt.h"
#include "levatt/parallel.h"
#include "levatt/status.h"

namespace levatt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  for (char32_t c : text) {
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return out;
}

bool IsDigit(char32_t c) { return c >= U'0' && c <= U'9'; }

}  // namespace

absl::StatusOr<CharNgramModel> CharNgramModel::Train(const Dataset& train,
                                                     int order, double alpha,
                                                     const EncodingConfig& cfg) {
  if (train.empty()) {
    return MakeError(ErrorKind::kEmptyTraining, "training data has no rows");
  }
  ASSIGN_OR_RETURN(std::vector<EncodedRecord> encoded, EncodeDataset(train, cfg));
  std::map<std::string, uint64_t> counts;
  for (const EncodedRecord& r : encoded) ++counts[r.text];
  return FromCounts(std::move(counts), order, alpha, train.schema(), cfg);
}

absl::StatusOr<CharNgramModel> CharNgramModel::FromCounts(
    std::map<std::string, uint64_t> counts, int order, double alpha,
    Schema schema, EncodingConfig cfg) {
  if (order < 1) {
    return MakeError(ErrorKind::kInvalidConfig, "order must be at least 1");
  }
  if (!(alpha >= 0) || !std::isfinite(alpha)) {
    return MakeError(ErrorKind::kInvalidConfig, "alpha must be finite and >= 0");
  }
  std::erase_if(counts, [](const auto& kv) { return kv.second == 0; });
  if (counts.empty()) {
    return MakeError(ErrorKind::kEmptyTraining, "no training encodings");
  }
  CharNgramModel m;
  m.order_ = order;
  m.alpha_ = alpha;
  m.schema_ = std::move(schema);
  m.encoding_ = std::move(cfg);
  m.counts_ = std::move(counts);
  m.Build();
  return m;
}

void CharNgramModel::Build() {
  std::set<char32_t> chars;
  std::vector<std::pair<std::u32string, uint64_t>> texts;
  for (const auto& [text, n] : counts_) {
    std::u32string t = DecodeUtf8(text);
    chars.insert(t.begin(), t.end());
    max_length_ = std::max(max_length_, t.size());
    texts.emplace_back(std::move(t), n);
  }
  chars_.assign(chars.begin(), chars.end());
  const size_t vocab = vocab_size();
  const uint32_t bos = static_cast<uint32_t>(vocab);
  symbols_ = vocab + 1;

  next_.assign(symbols_, -1);
  link_ = {-1};
  len_ = {0};
  occ_ = {0};
  auto new_state = [this](int32_t len, const int32_t* copy_from) {
    const auto id = static_cast<int32_t>(len_.size());
    len_.push_back(len);
    link_.push_back(-1);
    occ_.push_back(0);
    if (copy_from != nullptr) {
      const size_t from = static_cast<size_t>(*copy_from) * symbols_;
      const std::vector<int32_t> row(next_.begin() + static_cast<ptrdiff_t>(from),
                                     next_.begin() + static_cast<ptrdiff_t>(from + symbols_));
      next_.insert(next_.end(), row.begin(), row.end());
      link_.back() = link_[*copy_from];
    } else {
      next_.insert(next_.end(), symbols_, -1);
    }
    return id;
  };
  auto trans = [this](int32_t s, uint32_t c) -> int32_t& {
    return next_[static_cast<size_t>(s) * symbols_ + c];
  };
  // Splits q so that the state reached from p by c has length len(p) + 1.
  auto clone_if_needed = [&](int32_t p, uint32_t c) {
    const int32_t q = trans(p, c);
    if (len_[p] + 1 == len_[q]) return q;
    const int32_t clone = new_state(len_[p] + 1, &q);
    while (p != -1 && trans(p, c) == q) {
      trans(p, c) = clone;
      p = link_[p];
    }
    link_[q] = clone;
    return clone;
  };
  auto extend = [&](int32_t last, uint32_t c) {
    if (trans(last, c) != -1) return clone_if_needed(last, c);
    const int32_t cur = new_state(len_[last] + 1, nullptr);
    int32_t p = last;
    while (p != -1 && trans(p, c) == -1) {
      trans(p, c) = cur;
      p = link_[p];
    }
    link_[cur] = p == -1 ? 0 : clone_if_needed(p, c);
    return cur;
  };

  for (const auto& [text, n] : texts) {
    int32_t last = extend(0, bos);
    occ_[last] += n;
    for (char32_t ch : text) {
      const auto token = static_cast<uint32_t>(
          std::lower_bound(chars_.begin(), chars_.end(), ch) - chars_.begin());
      last = extend(last, token);
      occ_[last] += n;
    }
    last = extend(last, static_cast<uint32_t>(eos()));
    occ_[last] += n;
  }

  const size_t states = len_.size();
  std::vector<int32_t> by_length(states);
  for (size_t i = 0; i < states; ++i) by_length[i] = static_cast<int32_t>(i);
  std::stable_sort(by_length.begin(), by_length.end(),
                   [this](int32_t a, int32_t b) { return len_[a] < len_[b]; });
  for (auto it = by_length.rbegin(); it != by_length.rend(); ++it) {
    if (link_[*it] >= 0) occ_[link_[*it]] += occ_[*it];
  }

  // Interpolated estimates, parents before children.
  const double av = alpha_ * static_cast<double>(vocab);
  std::vector<double> probs(states * vocab, 0.0);
  log_probs_.assign(states * vocab, -kInf);
  std::vector<double> n(vocab);
  for (int32_t s : by_length) {
    double total = 0;
    for (size_t c = 0; c < vocab; ++c) {
      const int32_t t = trans(s, static_cast<uint32_t>(c));
      n[c] = t == -1 ? 0.0 : static_cast<double>(occ_[t]);
      total += n[c];
    }
    double* p = &probs[static_cast<size_t>(s) * vocab];
    const int32_t parent = link_[s];
    if (parent < 0) {
      for (size_t c = 0; c < vocab; ++c) p[c] = (n[c] + alpha_) / (total + av);
    } else {
      const double* pp = &probs[static_cast<size_t>(parent) * vocab];
      if (total + av == 0) {
        std::copy(pp, pp + vocab, p);
      } else {
        for (size_t c = 0; c < vocab; ++c) p[c] = (n[c] + av * pp[c]) / (total + av);
      }
    }
    for (size_t c = 0; c < vocab; ++c) {
      log_probs_[static_cast<size_t>(s) * vocab + c] = p[c] > 0 ? std::log(p[c]) : -kInf;
    }
  }
}

std::optional<size_t> CharNgramModel::TokenOf(char32_t c) const {
  auto it = std::lower_bound(chars_.begin(), chars_.end(), c);
  if (it == chars_.end() || *it != c) return std::nullopt;
  return static_cast<size_t>(it - chars_.begin());
}

uint32_t CharNgramModel::Step(uint32_t state, int& length, uint32_t symbol) const {
  auto s = static_cast<int32_t>(state);
  while (s != 0 && next_[static_cast<size_t>(s) * symbols_ + symbol] == -1) {
    s = link_[s];
    length = len_[s];
  }
  const int32_t t = next_[static_cast<size_t>(s) * symbols_ + symbol];
  if (t == -1) {
    length = 0;
    return 0;
  }
  s = t;
  ++length;
  const int keep = order_ - 1;
  if (length > keep) {
    length = keep;
    while (s != 0 && len_[link_[s]] >= length) s = link_[s];
  }
  return static_cast<uint32_t>(s);
}

CharNgramModel::Context CharNgramModel::Start() const {
  Context ctx;
  ctx.state = Step(0, ctx.length, static_cast<uint32_t>(vocab_size()));
  return ctx;
}

CharNgramModel::Context CharNgramModel::Advance(Context ctx, size_t token) const {
  ctx.state = Step(ctx.state, ctx.length, static_cast<uint32_t>(token));
  return ctx;
}

std::span<const double> CharNgramModel::LogProbs(Context ctx) const {
  return {log_probs_.data() + static_cast<size_t>(ctx.state) * vocab_size(),
          vocab_size()};
}

std::optional<CharNgramModel::Context> CharNgramModel::Shorter(Context ctx) const {
  if (ctx.state == 0) return std::nullopt;
  const int32_t parent = link_[ctx.state];
  return Context{static_cast<uint32_t>(parent), len_[parent]};
}

LogitVector CharNgramModel::Logits(std::string_view prefix) const {
  Context ctx = Start();
  for (char32_t c : DecodeUtf8(prefix)) {
    std::optional<size_t> token = TokenOf(c);
    if (token.has_value()) {
      ctx = Advance(ctx, *token);
    } else {
      ctx = Context{};
    }
  }
  std::span<const double> lp = LogProbs(ctx);
  return LogitVector(lp.begin(), lp.end());
}

nlohmann::json CharNgramModel::ToJson() const {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& [text, n] : counts_) counts.push_back({text, n});
  return nlohmann::json{
      {"order", order_},
      {"alpha", alpha_},
      {"vocab", EncodeUtf8(chars_)},
      {"schema", levatt::ToJson(schema_)},
      {"encoding", levatt::ToJson(encoding_)},
      {"counts", counts},
  };
}

absl::StatusOr<CharNgramModel> CharNgramModel::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) {
    return MakeError(ErrorKind::kInvalidConfig, "model must be an object");
  }
  int order = 0;
  double alpha = 0;
  std::string vocab;
  Schema schema;
  EncodingConfig cfg;
  std::map<std::string, uint64_t> counts;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "order") {
        order = value.get<int>();
      } else if (key == "alpha") {
        alpha = value.get<double>();
      } else if (key == "vocab") {
        vocab = value.get<std::string>();
      } else if (key == "schema") {
        ASSIGN_OR_RETURN(schema, SchemaFromJson(value));
      } else if (key == "encoding") {
        ASSIGN_OR_RETURN(cfg, EncodingConfigFromJson(value));
      } else if (key == "counts") {
        for (const nlohmann::json& entry : value) {
          counts[entry.at(0).get<std::string>()] += entry.at(1).get<uint64_t>();
        }
      } else {
        return MakeError(ErrorKind::kInvalidConfig,
                         "unknown model key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    return MakeError(ErrorKind::kInvalidConfig, e.what());
  }
  ASSIGN_OR_RETURN(CharNgramModel m, FromCounts(std::move(counts), order, alpha,
                                                std::move(schema), std::move(cfg)));
  if (EncodeUtf8(m.chars_) != vocab) {
    return MakeError(ErrorKind::kInvalidConfig,
                     "vocab does not match the stored encodings");
  }
  return m;
}

// ---------------------------------------------------------------------------

absl::StatusOr<StructureMask> StructureMask::Build(const CharNgramModel& model) {
  const Schema& schema = model.schema();
  const EncodingConfig& cfg = model.encoding();
  StructureMask mask;
  mask.chars_ = model.chars();
  mask.eos_ = model.eos();
  const bool named = cfg.layout == EncodingTemplate::kNamedPairs;
  for (size_t c = 0; c < schema.size(); ++c) {
    std::string lit = c > 0 ? ", " : "";
    if (named) lit += schema.column(c).name + " = ";
    mask.literals_.push_back(DecodeUtf8(lit));
    mask.numeric_.push_back(schema.column(c).kind == ColumnKind::kContinuous);
    mask.tries_.push_back({Node{}});
  }
  for (const auto& [text, n] : model.counts()) {
    absl::StatusOr<std::vector<std::string_view>> values =
        SplitEncodedRecord(text, schema, cfg);
    if (!values.ok()) {
      return Annotate(values.status(), "training encoding '" + text + "'");
    }
    for (size_t c = 0; c < schema.size(); ++c) {
      std::vector<Node>& trie = mask.tries_[c];
      int node = 0;
      for (char32_t ch : DecodeUtf8((*values)[c])) {
        char32_t key = ch;
        if (mask.numeric_[c] && IsDigit(ch)) {
          key = kDigit;
          trie[node].digits |= static_cast<uint16_t>(1u << (ch - U'0'));
        }
        auto it = trie[node].children.find(key);
        if (it == trie[node].children.end()) {
          trie.push_back(Node{});
          it = trie[node].children.emplace(key, static_cast<int>(trie.size() - 1)).first;
        }
        node = it->second;
      }
      trie[node].terminal = true;
    }
  }
  return mask;
}

std::u32string StructureMask::Literal(size_t column) const {
  return literals_[column];
}

const StructureMask::Node& StructureMask::NodeAt(size_t column, int node) const {
  return tries_[column][static_cast<size_t>(node)];
}

StructureMask::State StructureMask::Start() const {
  State s;
  if (literals_.empty()) {
    s.done = true;
  } else if (literals_[0].empty()) {
    s.in_value = true;
  }
  return s;
}

void StructureMask::Allowed(const State& s, std::vector<bool>& allowed) const {
  allowed.assign(chars_.size() + 1, false);
  if (s.done || s.dead) return;
  auto allow = [&](char32_t ch) {
    auto it = std::lower_bound(chars_.begin(), chars_.end(), ch);
    if (it != chars_.end() && *it == ch) allowed[static_cast<size_t>(it - chars_.begin())] = true;
  };
  if (!s.in_value) {
    allow(literals_[s.column][s.literal_pos]);
    return;
  }
  const Node& node = NodeAt(s.column, s.node);
  for (const auto& [key, child] : node.children) {
    if (key == kDigit) {
      for (int d = 0; d < 10; ++d) {
        if ((node.digits >> d) & 1) allow(static_cast<char32_t>(U'0' + d));
      }
    } else {
      allow(key);
    }
  }
  if (node.terminal) {
    if (s.column + 1 < literals_.size()) {
      allow(literals_[s.column + 1][0]);
    } else {
      allowed[eos_] = true;
    }
  }
}

StructureMask::State StructureMask::Advance(State s, size_t token) const {
  if (s.done || s.dead) {
    s.dead = true;
    return s;
  }
  if (token == eos_) {
    const bool ok = s.in_value && s.column + 1 == literals_.size() &&
                    NodeAt(s.column, s.node).terminal;
    s.done = ok;
    s.dead = !ok;
    return s;
  }
  const char32_t ch = chars_[token];
  if (!s.in_value) {
    if (literals_[s.column][s.literal_pos] != ch) {
      s.dead = true;
      return s;
    }
    if (++s.literal_pos == literals_[s.column].size()) {
      s.in_value = true;
      s.node = 0;
    }
    return s;
  }
  const Node& node = NodeAt(s.column, s.node);
  const bool numeric_digit = numeric_[s.column] && IsDigit(ch);
  auto it = node.children.find(numeric_digit ? kDigit : ch);
  if (it != node.children.end() &&
      (!numeric_digit || ((node.digits >> (ch - U'0')) & 1))) {
    s.node = it->second;
    return s;
  }
  if (node.terminal && s.column + 1 < literals_.size() &&
      literals_[s.column + 1][0] == ch) {
    ++s.column;
    s.in_value = false;
    s.literal_pos = 1;
    if (s.literal_pos == literals_[s.column].size()) {
      s.in_value = true;
      s.node = 0;
    }
    return s;
  }
  s.dead = true;
  return s;
}

// ---------------------------------------------------------------------------

NgramLogitSource::NgramLogitSource(const CharNgramModel& model,
                                   const StructureMask* mask, size_t length_cap)
    : model_(model),
      mask_(mask),
      length_cap_(length_cap),
      ctx_(model.Start()),
      grammar_(mask != nullptr ? mask->Start() : StructureMask::State{}) {}

std::optional<LogitVector> NgramLogitSource::Next(std::span<const size_t> prefix) {
  for (; consumed_ < prefix.size(); ++consumed_) {
    const size_t token = prefix[consumed_];
    if (token == model_.eos()) return std::nullopt;
    ctx_ = model_.Advance(ctx_, token);
    if (mask_ != nullptr) grammar_ = mask_->Advance(grammar_, token);
  }
  if (prefix.size() >= length_cap_) {
    hit_cap_ = true;
    return std::nullopt;
  }
  if (mask_ == nullptr) {
    std::span<const double> lp = model_.LogProbs(ctx_);
    return LogitVector(lp.begin(), lp.end());
  }
  mask_->Allowed(grammar_, allowed_);
  LogitVector logits(model_.vocab_size(), -kInf);
  std::optional<CharNgramModel::Context> ctx = ctx_;
  while (ctx.has_value()) {
    std::span<const double> lp = model_.LogProbs(*ctx);
    bool any = false;
    for (size_t k = 0; k < logits.size(); ++k) {
      logits[k] = allowed_[k] ? lp[k] : -kInf;
      any = any || std::isfinite(logits[k]);
    }
    if (any) break;
    ctx = model_.Shorter(*ctx);
  }
  return logits;
}

std::string TokensToText(const CharNgramModel& model,
                         std::span<const size_t> tokens) {
  std::u32string text;
  for (size_t t : tokens) {
    if (t >= model.eos()) break;
    text += model.chars()[t];
  }
  return EncodeUtf8(text);
}

namespace {

absl::StatusOr<std::vector<size_t>> GreedyDecode(
    NgramLogitSource& source, const std::optional<TlpConfig>& cfg) {
  std::vector<size_t> tokens;
  while (std::optional<LogitVector> logits = source.Next(tokens)) {
    if (cfg.has_value()) {
      absl::StatusOr<LogitVector> bent = TlpTransform(*logits, *cfg);
      if (!bent.ok()) {
        return Annotate(bent.status(), "step " + std::to_string(tokens.size()));
      }
      logits = *std::move(bent);
    }
    auto best = std::max_element(logits->begin(), logits->end());
    if (!std::isfinite(*best)) {
      return MakeError(ErrorKind::kAllMasked,
                       "step " + std::to_string(tokens.size()) + ": no finite logit");
    }
    tokens.push_back(static_cast<size_t>(best - logits->begin()));
  }
  return tokens;
}

}  // namespace

absl::StatusOr<Dataset> Generate(const CharNgramModel& model, size_t n,
                                 const GenerateOptions& options) {
  if (options.tlp.has_value()) RETURN_IF_ERROR(options.tlp->Validate());
  if (options.max_retries < 0) {
    return MakeError(ErrorKind::kInvalidConfig, "max_retries must be >= 0");
  }
  std::optional<StructureMask> mask;
  if (options.structure_mask) {
    ASSIGN_OR_RETURN(mask, StructureMask::Build(model));
  }
  const size_t cap = 2 * model.max_length() + 1;
  std::vector<Record> records(n);
  std::vector<absl::Status> errors(n);
  ParallelFor(
      n,
      [&](size_t i) {
        int over_length = 0;
        int undecodable = 0;
        for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
          std::mt19937_64 rng = StreamRng(options.seed, i, static_cast<uint64_t>(attempt));
          NgramLogitSource source(model, mask ? &*mask : nullptr, cap);
          absl::StatusOr<std::vector<size_t>> tokens =
              options.decoding == Decoding::kGreedy ? GreedyDecode(source, options.tlp)
                                                    : TlpSample(source, options.tlp, rng);
          if (!tokens.ok()) {
            errors[i] = Annotate(tokens.status(), "sample " + std::to_string(i));
            return;
          }
          if (source.hit_cap()) {
            ++over_length;
            continue;
          }
          absl::StatusOr<Record> record = DecodeRecord(
              TokensToText(model, *tokens), model.schema(), model.encoding());
          if (!record.ok()) {
            ++undecodable;
            continue;
          }
          records[i] = *std::move(record);
          return;
        }
        errors[i] = MakeError(
            ErrorKind::kRetryExhausted,
            "sample " + std::to_string(i) + ": " +
                std::to_string(over_length + undecodable) + " malformed attempts (" +
                std::to_string(over_length) + " over length, " +
                std::to_string(undecodable) + " undecodable)");
      },
      options.workers);
  for (const absl::Status& e : errors) RETURN_IF_ERROR(e);
  return Dataset::Create(model.schema(), std::move(records));
}

// ---------------------------------------------------------------------------

SimSpec SimSpec::ForDigits(double mean, double std, int digits, int n_rows,
                           uint64_t seed) {
  SimSpec spec;
  spec.mean = mean;
  spec.std = std;
  spec.n_rows = n_rows;
  spec.seed = seed;
  const double magnitude = std::abs(mean);
  const int integer_digits =
      magnitude < 1 ? 1 : static_cast<int>(std::floor(std::log10(magnitude))) + 1;
  spec.precision = std::max(0, 10 - integer_digits);
  spec.n_columns = std::max(1, (digits + 9) / 10);
  return spec;
}

absl::StatusOr<std::pair<Dataset, Dataset>> SimulateGaussian(const SimSpec& spec) {
  if (spec.n_columns < 1 || spec.n_rows < 0 || spec.precision < 0 ||
      !(spec.std >= 0) || !std::isfinite(spec.mean) || !std::isfinite(spec.std)) {
    return MakeError(ErrorKind::kInvalidConfig,
                     "simulation needs >= 1 column, >= 0 rows, precision >= 0 "
                     "and a finite mean and std >= 0");
  }
  std::vector<Column> columns;
  for (int c = 0; c < spec.n_columns; ++c) {
    columns.push_back({"x" + std::to_string(c), ColumnKind::kContinuous, spec.precision});
  }
  ASSIGN_OR_RETURN(Schema schema, Schema::Create(std::move(columns)));
  auto draw = [&](uint64_t stream) {
    std::vector<Record> rows(static_cast<size_t>(spec.n_rows));
    for (int c = 0; c < spec.n_columns; ++c) {
      std::mt19937_64 rng = StreamRng(spec.seed, stream, static_cast<uint64_t>(c));
      std::normal_distribution<double> normal(spec.mean, spec.std);
      for (Record& r : rows) {
        r.push_back(*ParseNumber(FormatFixed(normal(rng), spec.precision)));
      }
    }
    return Dataset::Create(schema, std::move(rows));
  };
  ASSIGN_OR_RETURN(Dataset train, draw(0));
  ASSIGN_OR_RETURN(Dataset holdout, draw(1));
  return std::make_pair(std::move(train), std::move(holdout));
}

absl::StatusOr<Dataset> ControlSampler(const Dataset& train, size_t n,
                                       std::mt19937_64& rng) {
  if (train.empty()) {
    return MakeError(ErrorKind::kEmptyTraining, "training data has no rows");
  }
  const Schema& schema = train.schema();
  const EncodingConfig defaults;
  std::vector<double> jitter(schema.size(), 0.0);
  for (size_t c = 0; c < schema.size(); ++c) {
    if (schema.column(c).kind != ColumnKind::kContinuous) continue;
    double sum = 0;
    double count = 0;
    for (const Record& r : train.records()) {
      if (const double* v = std::get_if<double>(&r[c])) {
        sum += *v;
        count += 1;
      }
    }
    if (count == 0) continue;
    const double mean = sum / count;
    double ss = 0;
    for (const Record& r : train.records()) {
      if (const double* v = std::get_if<double>(&r[c])) ss += (*v - mean) * (*v - mean);
    }
    jitter[c] = 0.1 * std::sqrt(ss / count);
  }
  std::uniform_int_distribution<size_t> pick(0, train.num_rows() - 1);
  std::vector<Record> rows(n);
  for (Record& r : rows) {
    for (size_t c = 0; c < schema.size(); ++c) {
      Cell cell = train.record(pick(rng))[c];
      if (double* v = std::get_if<double>(&cell); v != nullptr && jitter[c] > 0) {
        std::normal_distribution<double> noise(0, jitter[c]);
        *v = *ParseNumber(FormatFixed(*v + noise(rng), defaults.PrecisionFor(schema.column(c))));
      }
      r.push_back(std::move(cell));
    }
  }
  return Dataset::Create(schema, std::move(rows));
}

}  // namespace levatt

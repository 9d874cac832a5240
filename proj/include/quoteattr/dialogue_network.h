// Copyright 2026 The quoteattr Authors.
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

// Directed speaker -> addressee network over the most talkative characters.
//
// JSON export layout:
//   {"smoothing": "log1p",
//    "nodes": [{"id", "name", "quote_count", "size", "stance", "color"}],
//    "edges": [{"from", "to", "count", "weight"}]}
// Nodes are ordered by quote_count descending then id; edges by (from, to).
// Floats are written with four decimals in every format.

#ifndef QUOTEATTR_DIALOGUE_NETWORK_H_
#define QUOTEATTR_DIALOGUE_NETWORK_H_

#include <cstddef>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quoteattr/corpus.h"

namespace quoteattr {

enum class Smoothing { kLog1p, kSqrt, kIdentity };

std::string_view SmoothingName(Smoothing smoothing);
// Throws kConfig.
Smoothing ParseSmoothing(std::string_view name);

// Throws kInput for a negative count.
double Smooth(double count, Smoothing smoothing = Smoothing::kLog1p);
std::vector<double> Smooth(std::span<const double> counts,
                           Smoothing smoothing = Smoothing::kLog1p);

// "darksalmon" for protagonists, "aquamarine" for villains, "lightgray"
// otherwise.
std::string_view StanceColor(Stance stance);

struct NetworkNode {
  std::string id;
  std::string name;
  std::size_t quote_count = 0;
  double size = 0;
  Stance stance = Stance::kUnknown;

  friend bool operator==(const NetworkNode &, const NetworkNode &) = default;
};

struct NetworkEdge {
  std::string from;  // speaker
  std::string to;    // addressee
  std::size_t count = 0;
  double weight = 0;

  friend bool operator==(const NetworkEdge &, const NetworkEdge &) = default;
};

struct DialogueNetwork {
  Smoothing smoothing = Smoothing::kLog1p;
  std::vector<NetworkNode> nodes;
  std::vector<NetworkEdge> edges;

  friend bool operator==(const DialogueNetwork &,
                         const DialogueNetwork &) = default;
};

inline constexpr std::size_t kDefaultTopK = 10;
inline constexpr std::size_t kNoTopK = std::numeric_limits<std::size_t>::max();

// Keeps the `top_k` characters with the most spoken quotations (ties by
// id). Every retained addressee of a quotation adds one to its edge.
// Throws kReference listing speakers/addressees without a roster id.
DialogueNetwork BuildNetwork(const Corpus &corpus,
                             std::size_t top_k = kDefaultTopK,
                             Smoothing smoothing = Smoothing::kLog1p);

enum class NetworkFormat { kDot, kGraphml, kJson };

// Throws kConfig.
NetworkFormat ParseNetworkFormat(std::string_view name);

std::string RenderNetwork(const DialogueNetwork &net, NetworkFormat format);
// Throws kIo when the path cannot be written.
void ExportNetwork(const DialogueNetwork &net, NetworkFormat format,
                   const std::filesystem::path &path);
// Reads the JSON export. Sizes and weights come back at four decimals.
DialogueNetwork ImportNetworkJson(const std::filesystem::path &path);
DialogueNetwork ParseNetworkJson(std::string_view text);

}  // namespace quoteattr

#endif  // QUOTEATTR_DIALOGUE_NETWORK_H_

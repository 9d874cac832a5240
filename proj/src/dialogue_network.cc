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

#include "quoteattr/dialogue_network.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "quoteattr/error.h"
#include "quoteattr/jsonl.h"

namespace quoteattr {

std::string_view SmoothingName(Smoothing smoothing) {
  switch (smoothing) {
    case Smoothing::kLog1p: return "log1p";
    case Smoothing::kSqrt: return "sqrt";
    case Smoothing::kIdentity: return "identity";
  }
  return "";
}

Smoothing ParseSmoothing(std::string_view name) {
  if (name == "log1p") return Smoothing::kLog1p;
  if (name == "sqrt") return Smoothing::kSqrt;
  if (name == "identity") return Smoothing::kIdentity;
  throw Error(ErrorKind::kConfig, "bad smoothing '" + std::string(name) +
                                      "' (expected log1p, sqrt or identity)");
}

double Smooth(double count, Smoothing smoothing) {
  if (!(count >= 0)) {
    throw Error(ErrorKind::kInput, "cannot smooth a negative count");
  }
  switch (smoothing) {
    case Smoothing::kLog1p: return std::log1p(count);
    case Smoothing::kSqrt: return std::sqrt(count);
    case Smoothing::kIdentity: return count;
  }
  return count;
}

std::vector<double> Smooth(std::span<const double> counts,
                           Smoothing smoothing) {
  std::vector<double> out;
  out.reserve(counts.size());
  for (double c : counts) out.push_back(Smooth(c, smoothing));
  return out;
}

std::string_view StanceColor(Stance stance) {
  switch (stance) {
    case Stance::kProtagonist: return "darksalmon";
    case Stance::kVillain: return "aquamarine";
    case Stance::kUnknown: return "lightgray";
  }
  return "lightgray";
}

namespace {

double Round4(double x) { return std::round(x * 1e4) / 1e4; }

std::string Fixed4(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.4f", x);
  return buffer;
}

}  // namespace

DialogueNetwork BuildNetwork(const Corpus &corpus, std::size_t top_k,
                             Smoothing smoothing) {
  std::vector<std::string> offenders;
  auto resolved = [&](const QuotationRecord &q, const Mention &m) {
    if (m.character_id && corpus.FindCharacter(*m.character_id) != nullptr) {
      return true;
    }
    offenders.push_back(q.id + ":" + m.surface);
    return false;
  };
  for (const QuotationRecord &q : corpus.quotations) {
    resolved(q, q.speaker);
    for (const Mention &a : q.addressees) resolved(q, a);
  }
  if (!offenders.empty()) {
    std::string list;
    for (const std::string &o : offenders) {
      if (!list.empty()) list += ", ";
      list += o;
    }
    throw Error(ErrorKind::kReference, "unresolved characters: " + list);
  }

  std::map<std::string, std::size_t> quote_count;
  for (const QuotationRecord &q : corpus.quotations) {
    ++quote_count[*q.speaker.character_id];
    for (const Mention &a : q.addressees) quote_count[*a.character_id];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(quote_count.begin(),
                                                          quote_count.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto &x, const auto &y) {
                     return x.second > y.second;
                   });
  if (ranked.size() > top_k) ranked.resize(top_k);

  DialogueNetwork net;
  net.smoothing = smoothing;
  std::set<std::string> retained;
  for (const auto &[id, count] : ranked) {
    const CharacterEntity *entity = corpus.FindCharacter(id);
    net.nodes.push_back({id, entity->canonical_name, count,
                         Round4(Smooth(static_cast<double>(count), smoothing)),
                         entity->stance});
    retained.insert(id);
  }

  std::map<std::pair<std::string, std::string>, std::size_t> edge_count;
  for (const QuotationRecord &q : corpus.quotations) {
    const std::string &from = *q.speaker.character_id;
    if (!retained.contains(from)) continue;
    for (const Mention &a : q.addressees) {
      if (retained.contains(*a.character_id)) {
        ++edge_count[{from, *a.character_id}];
      }
    }
  }
  for (const auto &[pair, count] : edge_count) {
    net.edges.push_back(
        {pair.first, pair.second, count,
         Round4(Smooth(static_cast<double>(count), smoothing))});
  }
  return net;
}

NetworkFormat ParseNetworkFormat(std::string_view name) {
  if (name == "dot") return NetworkFormat::kDot;
  if (name == "graphml") return NetworkFormat::kGraphml;
  if (name == "json") return NetworkFormat::kJson;
  throw Error(ErrorKind::kConfig, "bad network format '" + std::string(name) +
                                      "' (expected dot, graphml or json)");
}

namespace {

std::string DotQuote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string XmlEscape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string RenderDot(const DialogueNetwork &net) {
  std::ostringstream out;
  out << "digraph dialogue {\n";
  for (const NetworkNode &n : net.nodes) {
    out << "  " << DotQuote(n.id) << " [label=" << DotQuote(n.name)
        << ", quote_count=" << n.quote_count << ", size=" << Fixed4(n.size)
        << ", stance=" << DotQuote(std::string(StanceName(n.stance)))
        << ", style=filled, fillcolor="
        << DotQuote(std::string(StanceColor(n.stance))) << "];\n";
  }
  for (const NetworkEdge &e : net.edges) {
    out << "  " << DotQuote(e.from) << " -> " << DotQuote(e.to)
        << " [count=" << e.count << ", weight=" << Fixed4(e.weight)
        << ", penwidth=" << Fixed4(e.weight) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string RenderGraphml(const DialogueNetwork &net) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"name\" for=\"node\" attr.name=\"name\" "
         "attr.type=\"string\"/>\n"
      << "  <key id=\"quote_count\" for=\"node\" attr.name=\"quote_count\" "
         "attr.type=\"int\"/>\n"
      << "  <key id=\"size\" for=\"node\" attr.name=\"size\" "
         "attr.type=\"double\"/>\n"
      << "  <key id=\"stance\" for=\"node\" attr.name=\"stance\" "
         "attr.type=\"string\"/>\n"
      << "  <key id=\"color\" for=\"node\" attr.name=\"color\" "
         "attr.type=\"string\"/>\n"
      << "  <key id=\"count\" for=\"edge\" attr.name=\"count\" "
         "attr.type=\"int\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" "
         "attr.type=\"double\"/>\n"
      << "  <graph id=\"dialogue\" edgedefault=\"directed\">\n";
  for (const NetworkNode &n : net.nodes) {
    out << "    <node id=\"" << XmlEscape(n.id) << "\">\n"
        << "      <data key=\"name\">" << XmlEscape(n.name) << "</data>\n"
        << "      <data key=\"quote_count\">" << n.quote_count << "</data>\n"
        << "      <data key=\"size\">" << Fixed4(n.size) << "</data>\n"
        << "      <data key=\"stance\">" << StanceName(n.stance) << "</data>\n"
        << "      <data key=\"color\">" << StanceColor(n.stance) << "</data>\n"
        << "    </node>\n";
  }
  std::size_t index = 0;
  for (const NetworkEdge &e : net.edges) {
    out << "    <edge id=\"e" << index++ << "\" source=\"" << XmlEscape(e.from)
        << "\" target=\"" << XmlEscape(e.to) << "\">\n"
        << "      <data key=\"count\">" << e.count << "</data>\n"
        << "      <data key=\"weight\">" << Fixed4(e.weight) << "</data>\n"
        << "    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

std::string RenderJson(const DialogueNetwork &net) {
  Json nodes = Json::array();
  for (const NetworkNode &n : net.nodes) {
    nodes.push_back({{"id", n.id},
                     {"name", n.name},
                     {"quote_count", n.quote_count},
                     {"size", Round4(n.size)},
                     {"stance", StanceName(n.stance)},
                     {"color", StanceColor(n.stance)}});
  }
  Json edges = Json::array();
  for (const NetworkEdge &e : net.edges) {
    edges.push_back({{"from", e.from},
                     {"to", e.to},
                     {"count", e.count},
                     {"weight", Round4(e.weight)}});
  }
  const Json doc = {{"smoothing", SmoothingName(net.smoothing)},
                    {"nodes", nodes},
                    {"edges", edges}};
  return doc.dump(2) + "\n";
}

}  // namespace

std::string RenderNetwork(const DialogueNetwork &net, NetworkFormat format) {
  switch (format) {
    case NetworkFormat::kDot: return RenderDot(net);
    case NetworkFormat::kGraphml: return RenderGraphml(net);
    case NetworkFormat::kJson: return RenderJson(net);
  }
  return "";
}

void ExportNetwork(const DialogueNetwork &net, NetworkFormat format,
                   const std::filesystem::path &path) {
  WriteFile(path, RenderNetwork(net, format));
}

DialogueNetwork ParseNetworkJson(std::string_view text) {
  DialogueNetwork net;
  try {
    const Json doc = Json::parse(text);
    net.smoothing = ParseSmoothing(doc.at("smoothing").get<std::string>());
    for (const Json &n : doc.at("nodes")) {
      net.nodes.push_back({n.at("id").get<std::string>(),
                           n.at("name").get<std::string>(),
                           n.at("quote_count").get<std::size_t>(),
                           n.at("size").get<double>(),
                           ParseStance(n.at("stance").get<std::string>())});
    }
    for (const Json &e : doc.at("edges")) {
      net.edges.push_back({e.at("from").get<std::string>(),
                           e.at("to").get<std::string>(),
                           e.at("count").get<std::size_t>(),
                           e.at("weight").get<double>()});
    }
  } catch (const Json::exception &e) {
    throw ParseError(std::string("network json: ") + e.what(),
                     std::string(text));
  }
  return net;
}

DialogueNetwork ImportNetworkJson(const std::filesystem::path &path) {
  return ParseNetworkJson(ReadFile(path));
}

}  // namespace quoteattr

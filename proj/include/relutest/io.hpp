// JSON (de)serialization for network types.
//
// Formats:
//   {"type":"shl","n":N,"m":M,"A":[[...row...],...],"w":[...]}
//   {"type":"mo","n":N,"m":M,"r":R,"A":[[...]],"W":[[...r entries...],...]}
//   {"type":"deep","dims":[m0,...],"layers":[[[...]],...]}
// Deserialization validates shapes and weight ranges and rejects NaN/Inf.
#pragma once

#include <string>
#include <variant>

#include "relutest/model.hpp"

namespace relutest {

using AnyNetwork = std::variant<ShlNetwork, MoNetwork, DeepNetwork>;

std::string to_json(const ShlNetwork& net);
std::string to_json(const MoNetwork& net);
std::string to_json(const DeepNetwork& net);

AnyNetwork network_from_json(const std::string& text);

void save_network(const AnyNetwork& net, const std::string& path);
AnyNetwork load_network(const std::string& path);

}  // namespace relutest

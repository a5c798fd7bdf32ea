#pragma once

#include <optional>
#include <string_view>

namespace adsgame {

// Two-stage purchase behaviors, named by the stage-1 action and the
// stage-2 revision. The letter code reads stage by stage: P purchase,
// S subscribe, D delay, H hold, N none/no action, A nothing at all.
enum class Behavior : int {
  // unbundled + perpetual
  PPH,  // hardware + license in stage 1, hold
  PDP,  // hardware in stage 1, license in stage 2
  PDN,  // hardware in stage 1, abandon in stage 2
  NNN,  // never enter the add-on market
  // unbundled + subscription
  PSS,  // hardware + subscribe both stages
  PSN,  // subscribe stage 1, cancel in stage 2
  PDS,  // hardware in stage 1, subscribe in stage 2
  // bundled + perpetual
  PH,  // bundle + license in stage 1, hold
  DP,  // bundle in stage 1, license in stage 2
  DN,  // bundle in stage 1, abandon in stage 2
  NN,  // bundle only
  NP,  // conservative re-entry: license in stage 2
  // bundled + subscription
  SS,  // subscribe both stages
  SN,  // subscribe stage 1, cancel
  DS,  // delay, subscribe in stage 2
  NS,  // conservative re-entry: subscribe in stage 2
  // restricted market (vehicle priced above its two-stage base utility)
  PN,  // bundle in stage 1, abandon the planned stage-2 purchase
  NA,  // buy nothing in either stage
};

enum class ConsumerClass : int { progressive = 0, conservative = 1 };

constexpr const char* to_string(Behavior b) {
  switch (b) {
    case Behavior::PPH: return "PPH";
    case Behavior::PDP: return "PDP";
    case Behavior::PDN: return "PDN";
    case Behavior::NNN: return "NNN";
    case Behavior::PSS: return "PSS";
    case Behavior::PSN: return "PSN";
    case Behavior::PDS: return "PDS";
    case Behavior::PH: return "PH";
    case Behavior::DP: return "DP";
    case Behavior::DN: return "DN";
    case Behavior::NN: return "NN";
    case Behavior::NP: return "NP";
    case Behavior::SS: return "SS";
    case Behavior::SN: return "SN";
    case Behavior::DS: return "DS";
    case Behavior::NS: return "NS";
    case Behavior::PN: return "PN";
    case Behavior::NA: return "NA";
  }
  return "?";
}

constexpr const char* to_string(ConsumerClass c) {
  return c == ConsumerClass::progressive ? "progressive" : "conservative";
}

}  // namespace adsgame

#pragma once

// Uniform handle over every mechanism of the library.

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <cstdint>
#include <string>
#include <vector>

#include "cex/draft.hpp"
#include "cex/enumerate.hpp"
#include "cex/error.hpp"
#include "cex/model.hpp"
#include "cex/partition.hpp"
#include "cex/serial.hpp"
#include "cex/trading.hpp"

namespace cex {

enum class MechanismTag { Csd, Tsd, Cettc, Bttc, Npb, Sd, Ttc };

struct MechanismId {
  MechanismTag tag = MechanismTag::Csd;
  InitialDerangement mu0 = CyclicShift{};  // CE-TTC only
  std::vector<Division> sd_order;          // SD only; empty means priority
};

inline const char* to_string(MechanismTag t) {
  switch (t) {
    case MechanismTag::Csd: return "csd";
    case MechanismTag::Tsd: return "tsd";
    case MechanismTag::Cettc: return "cettc";
    case MechanismTag::Bttc: return "bttc";
    case MechanismTag::Npb: return "npb";
    case MechanismTag::Sd: return "sd";
    case MechanismTag::Ttc: return "ttc";
  }
  return "?";
}

inline MechanismTag parse_mechanism_tag(std::string name) {
  std::string key;
  for (char c : name)
    if (c != '-' && c != '_') key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (auto t : {MechanismTag::Csd, MechanismTag::Tsd, MechanismTag::Cettc,
                 MechanismTag::Bttc, MechanismTag::Npb, MechanismTag::Sd,
                 MechanismTag::Ttc})
    if (key == to_string(t)) return t;
  throw InvalidInput("unknown mechanism '" + name +
                     "' (expected csd, tsd, cettc, bttc, npb, sd or ttc)");
}

// Parses "cyclic", "seed:N" or "explicit:a,b,c".
inline InitialDerangement parse_mu0(const std::string& spec) {
  if (spec == "cyclic") return CyclicShift{};
  auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (head == "seed" && !tail.empty()) {
      std::size_t used = 0;
      const auto seed = std::stoull(tail, &used);
      if (used == tail.size()) return SeededRandom{seed};
    } else if (head == "explicit" && !tail.empty()) {
      std::vector<int> map;
      std::size_t start = 0;
      while (start <= tail.size()) {
        const auto comma = tail.find(',', start);
        const std::string tok = tail.substr(start, comma - start);
        std::size_t used = 0;
        map.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      return ExplicitDerangement{Assignment(std::move(map))};
    }
  } catch (const std::logic_error&) {
  }
  throw InvalidInput("bad --mu0 value '" + spec +
                     "' (expected cyclic, seed:N or explicit:a,b,...)");
}

inline std::string format_mu0(const InitialDerangement& mu0) {
  if (std::holds_alternative<CyclicShift>(mu0)) return "cyclic";
  if (const auto* s = std::get_if<SeededRandom>(&mu0))
    return "seed:" + std::to_string(s->seed);
  return "explicit:" + join(std::get<ExplicitDerangement>(mu0).mu0.values());
}

inline std::string describe(const MechanismId& id) {
  std::string s = to_string(id.tag);
  if (id.tag == MechanismTag::Cettc) s += "[mu0=" + format_mu0(id.mu0) + "]";
  if (id.tag == MechanismTag::Sd && !id.sd_order.empty())
    s += "[order=" + join(id.sd_order) + "]";
  return s;
}

// Mechanisms that sweeps run under the canonical partition. SD takes one
// too, which makes it the fixed-order member of the group-wise SD family.
inline bool needs_partition(MechanismTag t) {
  return t == MechanismTag::Csd || t == MechanismTag::Tsd || t == MechanismTag::Sd;
}

// Mechanisms that consult the rank of a division's own worker.
inline bool reads_own_rank(MechanismTag t) {
  return t == MechanismTag::Bttc || t == MechanismTag::Ttc || t == MechanismTag::Sd;
}

// Whether the mechanism always returns a derangement.
inline bool guarantees_ce(MechanismTag t) {
  return t != MechanismTag::Bttc && t != MechanismTag::Ttc && t != MechanismTag::Sd;
}

// Profile space used by sweeps unless overridden.
inline SpaceKind default_space(MechanismTag t) {
  return t == MechanismTag::Bttc || t == MechanismTag::Ttc ? SpaceKind::Full
                                                           : SpaceKind::Canonical;
}

inline Outcome run(const MechanismId& id, const Problem& p) {
  switch (id.tag) {
    case MechanismTag::Csd: return run_csd(p);
    case MechanismTag::Tsd: return run_tsd(p);
    case MechanismTag::Cettc: return run_cettc(p, id.mu0);
    case MechanismTag::Bttc: return run_bttc(p);
    case MechanismTag::Npb: return run_npb(p);
    case MechanismTag::Sd: return run_sd(p, id.sd_order);
    case MechanismTag::Ttc: return run_ttc_traced(p);
  }
  throw InvalidInput("unknown mechanism");
}

}  // namespace cex

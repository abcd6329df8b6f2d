#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "gfnoma/config.hpp"
#include "gfnoma/phy.hpp"

namespace gfnoma {

// One RB's cast for one RTT: the singleton UEs the receiver can try to
// decode and the collision UEs it cannot (their CTU clashed), which act
// as interference only.
struct RbUe {
  int ue_id = 0;
  double distance_m = 1.0;
  double pathgain = 1.0;
};

struct RbRound {
  int rb = 1;
  std::vector<RbUe> singleton_ues;
  std::vector<RbUe> collision_ues;
  int k_max = 1;
};

struct DecodeResult {
  std::vector<int> decoded;        // sorted ue_ids
  std::map<int, int> decoded_at;   // ue_id -> first succeeding repetition
  std::vector<int> failed;         // sorted ue_ids never decoded
};

// Channel gain per (ue, repetition). The environment plugs in the
// counter-indexed Rayleigh draws; tests plug in fixed tables.
using FadingFn = std::function<double(int ue_id, int repetition)>;

// One SIC sweep over a single repetition. Singletons are sorted by
// received power (descending, ties to the lower ue_id) and decoded
// strongest-first; the stage interference is the not-yet-decoded weaker
// singletons plus every collision signal on the RB plus noise. Decoded
// signals are subtracted exactly; the sweep stops at the first stage
// whose SINR falls below gamma_th. Returns ue_ids in decode order.
std::vector<int> sic_pass(
    const std::vector<std::pair<int, double>>& singleton_powers_w,
    const std::vector<double>& collision_powers_w, double noise_w,
    double gamma_th);

// K-repetition: every listed UE transmits in all k_max repetitions with
// fresh fading; a singleton is served if any repetition decodes it.
DecodeResult decode_k_repetition(const RbRound& round, const SimConfig& cfg,
                                 const FadingFn& fading);

// Proactive: like K-repetition, but feedback arrives 3 TTIs late, so
// from repetition k >= 4 the UEs decoded at repetition <= k-4 stop
// transmitting, and collision UEs (which never get feedback) stop after
// their third repetition.
DecodeResult decode_proactive(const RbRound& round, const SimConfig& cfg,
                              const FadingFn& fading);

DecodeResult decode_round(const RbRound& round, const SimConfig& cfg,
                          const FadingFn& fading);  // dispatch on cfg.scheme

}  // namespace gfnoma

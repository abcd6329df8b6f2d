#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gfnoma/rng.hpp"

namespace gfnoma {

// Contention-transmission units are indexed 1..C and mapped onto F
// resource blocks in contiguous groups of L = C/F: CTU c sits on RB
// ceil(c/L), RBs indexed 1..F.
struct CtuPool {
  int c_total = 0;
  int n_rbs = 0;
  int per_rb = 0;  // L

  int rb_of(int ctu) const { return (ctu + per_rb - 1) / per_rb; }
};

CtuPool build_pool(int c, int f);  // throws if c % f != 0

// Per-RTT random CTU choice. `choice` is sorted by ue_id; `by_ctu` holds
// the inverse view with occupant lists in draw order.
struct CtuAssignment {
  std::vector<std::pair<int, int>> choice;  // (ue_id, ctu)
  std::map<int, std::vector<int>> by_ctu;
};

// Each active UE picks a CTU uniformly at random, independent across
// UEs. `active` must be sorted; draws are consumed in that order.
CtuAssignment select_ctus(const std::vector<int>& active, const CtuPool& pool,
                          RngStream& rng);

// Occupancy partition of the whole pool.
struct CollisionReport {
  std::vector<int> idle;                                  // CTUs, ascending
  std::vector<std::pair<int, int>> singleton;             // (ctu, ue)
  std::vector<std::pair<int, std::vector<int>>> collision;  // (ctu, ues)
  int v_ic = 0;
  int v_sc = 0;
  int v_cc = 0;
};

CollisionReport classify(const CtuAssignment& a, const CtuPool& pool);

}  // namespace gfnoma

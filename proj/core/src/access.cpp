#include "gfnoma/access.hpp"

#include <stdexcept>
#include <string>

namespace gfnoma {

CtuPool build_pool(int c, int f) {
  if (c <= 0 || f <= 0)
    throw std::invalid_argument("build_pool: counts must be positive");
  if (c % f != 0)
    throw std::invalid_argument("build_pool: C not divisible by F (C=" +
                                std::to_string(c) + ", F=" + std::to_string(f) +
                                ")");
  return {c, f, c / f};
}

CtuAssignment select_ctus(const std::vector<int>& active, const CtuPool& pool,
                          RngStream& rng) {
  CtuAssignment a;
  a.choice.reserve(active.size());
  for (int ue : active) {
    const int ctu = 1 + rng.next_int(pool.c_total);
    a.choice.emplace_back(ue, ctu);
    a.by_ctu[ctu].push_back(ue);
  }
  return a;
}

CollisionReport classify(const CtuAssignment& a, const CtuPool& pool) {
  CollisionReport r;
  auto it = a.by_ctu.begin();
  for (int ctu = 1; ctu <= pool.c_total; ++ctu) {
    while (it != a.by_ctu.end() && it->first < ctu) ++it;
    if (it == a.by_ctu.end() || it->first != ctu) {
      r.idle.push_back(ctu);
    } else if (it->second.size() == 1) {
      r.singleton.emplace_back(ctu, it->second.front());
    } else {
      r.collision.emplace_back(ctu, it->second);
    }
  }
  r.v_ic = static_cast<int>(r.idle.size());
  r.v_sc = static_cast<int>(r.singleton.size());
  r.v_cc = static_cast<int>(r.collision.size());
  return r;
}

}  // namespace gfnoma

#include "wedsearch/oracle.hpp"

#include <algorithm>

namespace wedsearch {

std::vector<SpanMatch> all_matches_oracle(std::span<const Symbol> q, std::span<const Symbol> p,
                                          const CostModel& model, double tau) {
  std::vector<SpanMatch> out;
  if (!(tau > 0.0)) return out;
  const std::size_t n = q.size();
  std::vector<double> ins(n);
  for (std::size_t j = 0; j < n; ++j) ins[j] = model.ins(q[j]);
  std::vector<double> prev(n + 1), cur(n + 1);
  for (std::size_t s = 0; s < p.size(); ++s) {
    prev[0] = 0.0;
    for (std::size_t j = 1; j <= n; ++j) prev[j] = prev[j - 1] + ins[j - 1];
    for (std::size_t t = s; t < p.size(); ++t) {
      const double del_p = model.del(p[t]);
      cur[0] = prev[0] + del_p;
      for (std::size_t j = 1; j <= n; ++j) {
        cur[j] = std::min({prev[j - 1] + model.sub(p[t], q[j - 1]), prev[j] + del_p,
                           cur[j - 1] + ins[j - 1]});
      }
      if (cur[n] < tau) out.push_back({s, t, cur[n]});
      std::swap(prev, cur);
    }
  }
  return out;
}

}  // namespace wedsearch

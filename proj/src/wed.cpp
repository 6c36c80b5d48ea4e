#include "wedsearch/wed.hpp"

#include <algorithm>

#include "wedsearch/network.hpp"

namespace wedsearch {

QueryProfile::QueryProfile(const CostModel& model, std::span<const Symbol> query)
    : model_(&model), symbols_(query.begin(), query.end()) {
  ins_.reserve(symbols_.size());
  for (Symbol s : symbols_) {
    model.check_symbol(s);
    ins_.push_back(model.ins(s));
  }
  if (model.kind() == CostKind::kNetEdr || model.kind() == CostKind::kNetErp) {
    rows_.reserve(symbols_.size());
    for (Symbol s : symbols_) rows_.push_back(model.network()->distances_from(s));
  }
}

DpColumn boundary_column(const QueryProfile& query) {
  DpColumn col(query.size() + 1, 0.0);
  for (std::size_t j = 1; j <= query.size(); ++j) col[j] = col[j - 1] + query.ins(j - 1);
  return col;
}

void step_dp_into(const QueryProfile& query, Symbol p, std::span<const double> prev,
                  std::span<double> out) {
  const double del_p = query.del(p);
  out[0] = prev[0] + del_p;
  for (std::size_t j = 1; j <= query.size(); ++j) {
    out[j] = std::min({prev[j - 1] + query.sub(j - 1, p), prev[j] + del_p,
                       out[j - 1] + query.ins(j - 1)});
  }
}

DpColumn step_dp(const QueryProfile& query, Symbol p, std::span<const double> prev) {
  DpColumn out(query.size() + 1);
  step_dp_into(query, p, prev, out);
  return out;
}

std::vector<DpColumn> wed_matrix(std::span<const Symbol> p, std::span<const Symbol> q,
                                 const CostModel& model) {
  const std::size_t m = p.size();
  const std::size_t n = q.size();
  std::vector<DpColumn> d(m + 1, DpColumn(n + 1, 0.0));
  for (std::size_t j = 1; j <= n; ++j) d[0][j] = d[0][j - 1] + model.ins(q[j - 1]);
  for (std::size_t i = 1; i <= m; ++i) {
    d[i][0] = d[i - 1][0] + model.del(p[i - 1]);
    for (std::size_t j = 1; j <= n; ++j) {
      d[i][j] = std::min({d[i - 1][j - 1] + model.sub(p[i - 1], q[j - 1]),
                          d[i - 1][j] + model.del(p[i - 1]), d[i][j - 1] + model.ins(q[j - 1])});
    }
  }
  return d;
}

double wed(std::span<const Symbol> p, std::span<const Symbol> q, const CostModel& model) {
  return wed_matrix(p, q, model).back().back();
}

BestMatch sw_best_match(std::span<const Symbol> q, std::span<const Symbol> p,
                        const CostModel& model) {
  const std::size_t n = q.size();
  const std::size_t m = p.size();
  // Rows follow Q, columns follow P. cur_d[i] is the best cost of Q_{1:i}
  // against a nonempty substring ending at P_j; the *_k arrays carry the
  // 0-based index in P where that substring begins. fresh[i] is the cost of
  // Q_{1:i} against the empty substring, from which any column may start.
  std::vector<double> fresh(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) fresh[i] = fresh[i - 1] + model.del(q[i - 1]);
  std::vector<double> prev_d(n + 1, kInfinity), cur_d(n + 1);
  std::vector<std::size_t> prev_k(n + 1, 0), cur_k(n + 1);

  BestMatch best;
  for (std::size_t j = 1; j <= m; ++j) {
    const Symbol pj = p[j - 1];
    const double del_p = model.del(pj);
    // Predecessor in column j - 1: an open substring, or a fresh start at j - 1.
    const auto from_prev = [&](std::size_t i, double& d, std::size_t& k) {
      if (fresh[i] < prev_d[i]) {
        d = fresh[i];
        k = j - 1;
      } else {
        d = prev_d[i];
        k = prev_k[i];
      }
    };
    double c0;
    std::size_t k0;
    from_prev(0, c0, k0);
    cur_d[0] = c0 + del_p;
    cur_k[0] = k0;
    for (std::size_t i = 1; i <= n; ++i) {
      double a, c;
      std::size_t ka, kc;
      from_prev(i - 1, a, ka);
      a += model.sub(q[i - 1], pj);
      const double b = cur_d[i - 1] + model.del(q[i - 1]);
      from_prev(i, c, kc);
      c += del_p;
      if (a <= b && a <= c) {
        cur_d[i] = a;
        cur_k[i] = ka;
      } else if (b <= c) {
        cur_d[i] = b;
        cur_k[i] = cur_k[i - 1];
      } else {
        cur_d[i] = c;
        cur_k[i] = kc;
      }
    }
    if (cur_d[n] < best.value) best = {cur_k[n], j - 1, cur_d[n]};
    std::swap(prev_d, cur_d);
    std::swap(prev_k, cur_k);
  }
  return best;
}

}  // namespace wedsearch

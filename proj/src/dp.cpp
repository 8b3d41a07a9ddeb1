#include "fewocc/dp.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <limits>
#include <mutex>
#include <thread>

#include "fewocc/error.hpp"
#include "fewocc/numfmt.hpp"

namespace fewocc {

namespace {

// Slack for the double-precision prefilter, in log2 units. Anything that is
// within the slack of a decision boundary is settled with exact arithmetic.
constexpr double kSlack = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
  StepKind kind;
  int left;
  int right;
  unsigned width;
  BigInt size;
};

// Every value a width entry ever held stays in the arena, so back-pointers
// keep describing the sizes that were checked when the entry was made.
class Arena {
 public:
  int add(StepKind kind, int left, int right, unsigned width, BigInt size) {
    nodes_.push_back(Node{kind, left, right, width, std::move(size)});
    return static_cast<int>(nodes_.size()) - 1;
  }
  const Node& operator[](int id) const { return nodes_[static_cast<std::size_t>(id)]; }

  // Children-first extraction of the sub-DAG under `root`, renumbered densely.
  DerivTrace extract(int root, unsigned k) const {
    std::vector<int> order;
    std::vector<int> new_id(nodes_.size(), -1);
    std::vector<std::pair<int, bool>> stack{{root, false}};
    while (!stack.empty()) {
      auto [id, expanded] = stack.back();
      stack.pop_back();
      if (new_id[static_cast<std::size_t>(id)] >= 0) continue;
      const Node& n = (*this)[id];
      if (expanded || n.kind == StepKind::Axiom) {
        new_id[static_cast<std::size_t>(id)] = static_cast<int>(order.size());
        order.push_back(id);
        continue;
      }
      stack.push_back({id, true});
      if (n.kind == StepKind::Compose) stack.push_back({n.right, false});
      stack.push_back({n.left, false});
    }
    std::vector<TraceNode> nodes;
    std::vector<std::pair<unsigned, BigInt>> claims;
    for (int id : order) {
      const Node& n = (*this)[id];
      TraceNode t;
      t.kind = n.kind;
      if (n.left >= 0) t.left = new_id[static_cast<std::size_t>(n.left)];
      if (n.right >= 0) t.right = new_id[static_cast<std::size_t>(n.right)];
      nodes.push_back(t);
      claims.emplace_back(n.width, n.width == k ? BigInt(0) : n.size);
    }
    DerivTrace trace(std::move(nodes), new_id[static_cast<std::size_t>(root)]);
    trace.set_claims(std::move(claims));
    return trace;
  }

 private:
  std::vector<Node> nodes_;
};

}  // namespace

DpState run_dp(unsigned k, const BigInt& s, const DpOptions& opts) {
  if (k == 0) throw Error("k must be at least 1");
  if (sgn(s) < 0) throw Error("s must be nonnegative");

  DpState st;
  st.k = k;
  st.s = s;
  st.mode = opts.mode;
  const bool literal = opts.mode == RuleMode::PaperLiteral;

  Arena arena;
  std::vector<int> best(k, -1);       // arena id of the current minimum per width
  std::vector<double> lg(k, kInf);    // log2 of that minimum
  const BigInt s_minus_one = s - 1;
  const double ls = sgn(s) > 0 ? log2_of(s) : -kInf;

  // log2(2^d − 1)
  std::vector<double> lg_guard(k + 1, 0.0);
  for (unsigned d = 1; d <= k; ++d) {
    lg_guard[d] = static_cast<double>(d) + std::log1p(-std::ldexp(1.0, -static_cast<int>(d))) / std::log(2.0);
  }

  // headroom[w] = log2(s − m[w]): compose with F₂ at width w is affordable
  // iff log2((2^d − 1)·m₁) <= headroom[w].
  std::vector<double> headroom(k, -kInf);
  auto install = [&](unsigned w, int id) {
    best[w] = id;
    lg[w] = log2_of(arena[id].size);
    headroom[w] = s > arena[id].size ? log2_of(s - arena[id].size) : -kInf;
  };

  // The axiom and the splittable chain K(x₁..x_w).
  int chain = arena.add(StepKind::Axiom, -1, -1, 0, BigInt(1));
  install(0, chain);
  unsigned reach = 0;
  int chain_final = -1;
  while (reach < k && pow2(reach + 1) <= s) {
    const unsigned w = reach + 1;
    chain = arena.add(StepKind::Split, chain, -1, w, w < k ? pow2(w) : BigInt(0));
    if (w == k) {
      chain_final = chain;
    } else if (arena[chain].size <= s_minus_one) {
      install(w, chain);
    }
    reach = w;
  }
  st.chain_reach = reach;

  // Cheapest way to finish from the current table: either the chain ends at
  // width k, or compose(m[w], m[w]) costs 2^(k−w)·m[w].
  auto finishing = [&](BigInt* cost_out) -> std::pair<int, int> {
    std::pair<int, int> pick{-1, -1};
    BigInt pick_cost;
    if (chain_final >= 0) {
      pick = {chain_final, -1};
      pick_cost = pow2(k);
    }
    BigInt cost;
    for (unsigned w = 0; w < k; ++w) {
      if (best[w] < 0) continue;
      if (lg[w] + static_cast<double>(k - w) > ls + kSlack) continue;
      cost = arena[best[w]].size * pow2(k - w);
      if (cost > s) continue;
      if (pick.first < 0 || cost < pick_cost) {
        pick = {best[w], best[w]};
        pick_cost = cost;
      }
    }
    if (literal && best[k - 1] >= 0) {
      cost = 2 * arena[best[k - 1]].size;
      if (cost <= s && (pick.first < 0 || cost < pick_cost)) {
        pick = {best[k - 1], -2};
        pick_cost = cost;
      }
    }
    if (cost_out && pick.first >= 0) *cost_out = pick_cost;
    return pick;
  };

  BigInt size;
  BigInt cost;
  BigInt cand_size;
  while (true) {
    if (opts.stop_when_feasible && finishing(nullptr).first >= 0) break;
    ++st.rounds;
    bool changed = false;
    for (unsigned wp = 1; wp < k; ++wp) {
      double cur_lg = lg[wp];
      bool have_cur = best[wp] >= 0;
      if (have_cur) cand_size = arena[best[wp]].size;
      int cand_left = -1;
      int cand_right = -1;
      StepKind cand_kind = StepKind::Compose;

      // Absent widths have lg = +inf and headroom = -inf, so they fall out of
      // the comparisons below without a separate test.
      //
      // Pass 1, doubles only: the smallest estimate among clearly affordable
      // candidates. Candidates whose affordability is within the slack are
      // settled exactly on the spot.
      double clear_min = kInf;
      auto exact_try = [&](unsigned k1) {
        const unsigned d = wp - k1;
        const unsigned k2 = k - d;
        const BigInt& m1 = arena[best[k1]].size;
        mpz_mul_2exp(size.get_mpz_t(), m1.get_mpz_t(), d);
        size -= m1;
        if (have_cur && size >= cand_size) return;
        cost = size + arena[best[k2]].size;
        if (cost > s) return;
        cand_size = size;
        have_cur = true;
        cand_left = best[k1];
        cand_right = best[k2];
        cand_kind = StepKind::Compose;
      };
      for (unsigned k1 = 0; k1 < wp; ++k1) {
        const unsigned d = wp - k1;
        const double a = lg[k1] + lg_guard[d];
        if (a >= cur_lg + kSlack) continue;
        const double room = headroom[k - d];
        if (a > room + kSlack) continue;
        if (a >= room - kSlack) {
          exact_try(k1);
          continue;
        }
        clear_min = std::min(clear_min, a);
      }
      // Pass 2: exact comparison among the clear candidates that tie the
      // minimum within the slack; anything further away is strictly larger.
      if (clear_min < kInf) {
        for (unsigned k1 = 0; k1 < wp; ++k1) {
          const unsigned d = wp - k1;
          const double a = lg[k1] + lg_guard[d];
          if (a > clear_min + kSlack) continue;
          const double room = headroom[k - d];
          if (a >= room - kSlack) continue;
          exact_try(k1);
        }
      }
      if (have_cur) cur_lg = log2_of(cand_size);

      if (literal && best[wp - 1] >= 0) {
        const int child = best[wp - 1];
        size = 2 * arena[child].size;
        if (size <= s && size <= s_minus_one && (!have_cur || size < cand_size)) {
          cand_size = size;
          cur_lg = log2_of(size);
          have_cur = true;
          cand_left = child;
          cand_right = -1;
          cand_kind = StepKind::Split;
        }
      }

      if (cand_left >= 0) {
        install(wp, arena.add(cand_kind, cand_left, cand_right, wp, cand_size));
        changed = true;
      }
    }
    if (!changed) break;
  }

  BigInt final_cost;
  const auto pick = finishing(&final_cost);
  st.feasible = pick.first >= 0;
  st.min_size.resize(k);
  for (unsigned w = 0; w < k; ++w) {
    if (best[w] >= 0) st.min_size[w] = arena[best[w]].size;
  }
  if (st.feasible && opts.want_witness && !opts.stop_when_feasible) {
    int root = pick.first;
    if (pick.second == -2) {
      root = arena.add(StepKind::Split, pick.first, -1, k, BigInt(0));
    } else if (pick.second >= 0) {
      root = arena.add(StepKind::Compose, pick.first, pick.second, k, BigInt(0));
    }
    st.witness = arena.extract(root, k);
  }
  return st;
}

std::optional<DerivTrace> feasible(unsigned k, const BigInt& s, RuleMode mode) {
  DpOptions opts;
  opts.mode = mode;
  return run_dp(k, s, opts).witness;
}

BigInt f2_value(unsigned k, RuleMode mode) {
  if (k == 0) throw Error("k must be at least 1");
  DpOptions opts;
  opts.mode = mode;
  opts.stop_when_feasible = true;
  opts.want_witness = false;
  // Invariant: lo infeasible, hi feasible.
  BigInt lo = 0;
  BigInt hi = pow2(k);
  if (!run_dp(k, hi, opts).feasible) throw InternalError("split chain must finish at s = 2^k");
  BigInt mid;
  while (hi - lo > 1) {
    mid = (lo + hi) / 2;
    if (run_dp(k, mid, opts).feasible) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo;
}

F2Row f2_row(unsigned k, RuleMode mode) {
  F2Row row;
  row.k = k;
  row.f2 = f2_value(k, mode);
  row.f2_norm = format_sig6(BigRational(row.f2 * k, pow2(k)));
  row.lines = reference_lines(k);
  return row;
}

void f2_table(unsigned k_from, unsigned k_to, unsigned jobs,
              const std::function<void(const F2Row&)>& sink, RuleMode mode) {
  if (k_from < 1 || k_from > k_to) throw Error("need 1 <= k_from <= k_to");
  if (jobs <= 1) {
    for (unsigned k = k_from; k <= k_to; ++k) sink(f2_row(k, mode));
    return;
  }
  const std::size_t count = k_to - k_from + 1;
  std::vector<std::optional<F2Row>> rows(count);
  std::vector<std::exception_ptr> errors(count);
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      std::optional<F2Row> row;
      std::exception_ptr err;
      try {
        row = f2_row(k_from + static_cast<unsigned>(i), mode);
      } catch (...) {
        err = std::current_exception();
      }
      {
        std::lock_guard lock(mu);
        rows[i] = std::move(row);
        errors[i] = err;
        if (!rows[i]) rows[i].emplace();  // marks slot done; error rethrown below
      }
      ready.notify_all();
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, count); ++t) pool.emplace_back(worker);

  for (std::size_t i = 0; i < count; ++i) {
    F2Row row;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return rows[i].has_value(); });
      if (errors[i]) {
        next.store(count);
        lock.unlock();
        pool.clear();
        std::rethrow_exception(errors[i]);
      }
      row = *rows[i];
    }
    sink(row);
  }
}

std::vector<F2Row> f2_table(unsigned k_from, unsigned k_to, unsigned jobs, RuleMode mode) {
  std::vector<F2Row> out;
  f2_table(k_from, k_to, jobs, [&](const F2Row& r) { out.push_back(r); }, mode);
  return out;
}

std::string f2_csv_header() { return "k,f2,f2_norm,line_a,line_b,line_d"; }

std::string to_csv_line(const F2Row& row) {
  return std::to_string(row.k) + ',' + to_string(row.f2) + ',' + row.f2_norm + ',' +
         format_sig6(row.lines.a) + ',' + format_sig6(row.lines.b) + ',' +
         format_sig6(row.lines.d);
}

}  // namespace fewocc

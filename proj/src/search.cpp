#include "pglatlas/search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace pglatlas {

namespace {

constexpr ElementId kNone = std::numeric_limits<ElementId>::max();

using Key = std::array<ElementId, kMaxRank>;

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (ElementId x : k) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

Key to_key(std::span<const ElementId> t) {
  Key k{};
  std::copy(t.begin(), t.end(), k.begin());
  return k;
}

std::vector<ElementId> from_key(const Key& k, std::size_t n) { return {k.begin(), k.begin() + n}; }

Key reversed_key(const Key& k, std::size_t n) {
  Key r{};
  for (std::size_t i = 0; i < n; ++i) r[i] = k[n - 1 - i];
  return r;
}

// Subset closures of one tuple, indexed by bitmask over positions.
class IntersectionChecker {
 public:
  explicit IntersectionChecker(const FiniteGroup& g) : ws_(g) {}

  bool check(std::span<const ElementId> tuple, bool require_generation) {
    const std::size_t n = tuple.size();
    const unsigned full = (1U << n) - 1;
    bits_.assign(std::size_t{1} << n, {});
    std::vector<ElementId> gens;
    // Smaller subsets first so that failures surface on cheap closures.
    std::vector<unsigned> masks(full);
    std::iota(masks.begin(), masks.end(), 0U);
    std::stable_sort(masks.begin(), masks.end(),
                     [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });
    for (unsigned mask : masks) {
      gens.clear();
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1U) gens.push_back(tuple[i]);
      ws_.close(gens, true);
      // A proper subset generating everything contradicts <rho_J> meet <rho_i> = 1.
      if (ws_.whole()) return false;
      bits_[mask] = ws_.bits();
    }
    if (require_generation) {
      ws_.close(tuple, true);
      if (!ws_.whole()) return false;
    }
    const std::size_t words = bits_[0].size();
    for (unsigned j = 0; j < full; ++j) {
      for (unsigned k = j + 1; k < full; ++k) {
        if ((j & k) == j || (j & k) == k) continue;  // nested: trivially fine
        const auto& bj = bits_[j];
        const auto& bk = bits_[k];
        const auto& bjk = bits_[j & k];
        for (std::size_t w = 0; w < words; ++w)
          if ((bj[w] & bk[w]) != bjk[w]) return false;
      }
    }
    return true;
  }

 private:
  ClosureWorkspace ws_;
  std::vector<std::vector<std::uint64_t>> bits_;
};

std::vector<std::size_t> position_order(std::size_t n) {
  std::vector<std::size_t> order{0, n - 1};
  std::vector<bool> chosen(n, false);
  chosen[0] = chosen[n - 1] = true;
  while (order.size() < n) {
    std::size_t best = n;
    int best_score = -1;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (chosen[i]) continue;
      int score = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (chosen[j] && (j + 1 < i || i + 1 < j)) ++score;
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    chosen[best] = true;
    order.push_back(best);
  }
  return order;
}

}  // namespace

bool SchlafliType::degenerate() const {
  return std::any_of(entries.begin(), entries.end(), [](std::uint32_t e) { return e <= 2; });
}

SchlafliType SchlafliType::reversed() const {
  return {std::vector<std::uint32_t>(entries.rbegin(), entries.rend())};
}

std::string SchlafliType::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < entries.size(); ++i) out << (i ? "," : "") << entries[i];
  out << '}';
  return out.str();
}

bool string_condition(const FiniteGroup& g, std::span<const ElementId> tuple) {
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (g.element_order(tuple[i]) != 2) return false;
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      if (tuple[i] == tuple[j]) return false;
      if (j >= i + 2 && !g.commute(tuple[i], tuple[j])) return false;
    }
  }
  return true;
}

bool intersection_property(const FiniteGroup& g, std::span<const ElementId> tuple) {
  const std::size_t n = tuple.size();
  const unsigned full = (1U << n) - 1;
  std::vector<SubgroupSet> closures(std::size_t{1} << n);
  for (unsigned mask = 0; mask <= full; ++mask) {
    std::vector<ElementId> gens;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) gens.push_back(tuple[i]);
    closures[mask] = subgroup_closure(g, gens);
  }
  for (unsigned j = 0; j <= full; ++j)
    for (unsigned k = 0; k <= full; ++k)
      if (!(subgroup_intersect(closures[j], closures[k]) == closures[j & k])) return false;
  return true;
}

SchlafliType schlafli_type(const FiniteGroup& g, std::span<const ElementId> tuple) {
  SchlafliType t;
  for (std::size_t i = 0; i + 1 < tuple.size(); ++i)
    t.entries.push_back(g.element_order(g.mul(tuple[i], tuple[i + 1])));
  return t;
}

PolytopeRecord dual(const PolytopeRecord& record) {
  PolytopeRecord d = record;
  std::reverse(d.tuple.begin(), d.tuple.end());
  d.schlafli = record.schlafli.reversed();
  return d;
}

bool verify_record(const FiniteGroup& g, const PolytopeRecord& record) {
  const auto& t = record.tuple;
  if (t.size() < 2) return false;
  if (!string_condition(g, t)) return false;
  if (subgroup_closure(g, t).order() != g.order()) return false;
  if (!intersection_property(g, t)) return false;
  return schlafli_type(g, t) == record.schlafli;
}

// ---------------------------------------------------------------------------

DedupAction::DedupAction(const FiniteGroup& g, const FiniteGroup& dedup)
    : g_(&g), dedup_(&dedup), to_outer_(embed(g, dedup)), to_inner_(dedup.order(), kNone) {
  for (std::size_t i = 0; i < to_outer_.size(); ++i) to_inner_[to_outer_[i]] = static_cast<ElementId>(i);
  for (ElementId s : dedup.generators())
    for (ElementId x : g.generators())
      if (to_inner_[dedup.conjugate(to_outer_[x], s)] == kNone)
        throw std::invalid_argument("dedup group does not normalize the search group");
}

ElementId DedupAction::apply(ElementId x, std::size_t generator) const {
  return to_inner_[dedup_->conjugate(to_outer_[x], dedup_->generators()[generator])];
}

std::vector<ElementId> DedupAction::involution_representatives() const {
  std::vector<std::uint8_t> seen(g_->order(), 0);
  std::vector<ElementId> reps;
  for (ElementId start : g_->involutions()) {
    if (seen[start]) continue;
    reps.push_back(start);  // involutions are visited in ascending order
    std::vector<ElementId> queue{start};
    seen[start] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::size_t s = 0; s < generator_count(); ++s) {
        const ElementId y = apply(queue[head], s);
        if (!seen[y]) {
          seen[y] = 1;
          queue.push_back(y);
        }
      }
    }
  }
  return reps;
}

// ---------------------------------------------------------------------------

namespace {

struct WorkItem {
  ElementId first;
  ElementId last;
};

class Searcher {
 public:
  Searcher(const FiniteGroup& g, unsigned rank, const std::vector<std::vector<ElementId>>& commuting,
           const std::vector<std::int32_t>& inv_index)
      : g_(g), n_(rank), commuting_(commuting), inv_index_(inv_index), order_(position_order(rank)),
        checker_(g) {}

  std::vector<Key> run(const WorkItem& item, std::size_t& leaves) {
    out_.clear();
    leaves_ = 0;
    tuple_.assign(n_, kNone);
    tuple_[0] = item.first;
    tuple_[n_ - 1] = item.last;
    descend(2);
    leaves = leaves_;
    return std::move(out_);
  }

 private:
  void descend(std::size_t depth) {
    if (depth == n_) {
      ++leaves_;
      if (checker_.check(tuple_, true)) out_.push_back(to_key(tuple_));
      return;
    }
    const std::size_t pos = order_[depth];
    // Candidates: involutions commuting with every chosen non-neighbour.
    const std::vector<ElementId>* base = nullptr;
    std::vector<const std::vector<ElementId>*> filters;
    for (std::size_t j = 0; j < n_; ++j) {
      if (tuple_[j] == kNone || !(j + 1 < pos || pos + 1 < j)) continue;
      const auto* list = &commuting_[static_cast<std::size_t>(inv_index_[tuple_[j]])];
      if (!base || list->size() < base->size()) {
        if (base) filters.push_back(base);
        base = list;
      } else {
        filters.push_back(list);
      }
    }
    const std::vector<ElementId>& cands = base ? *base : g_.involutions();
    for (ElementId c : cands) {
      if (std::find(tuple_.begin(), tuple_.end(), c) != tuple_.end()) continue;
      bool ok = true;
      for (const auto* f : filters)
        if (!std::binary_search(f->begin(), f->end(), c)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      tuple_[pos] = c;
      descend(depth + 1);
      tuple_[pos] = kNone;
    }
  }

  const FiniteGroup& g_;
  std::size_t n_;
  const std::vector<std::vector<ElementId>>& commuting_;
  const std::vector<std::int32_t>& inv_index_;
  std::vector<std::size_t> order_;
  IntersectionChecker checker_;
  std::vector<ElementId> tuple_;
  std::vector<Key> out_;
  std::size_t leaves_ = 0;
};

}  // namespace

EnumerationResult enumerate_polytopes(const FiniteGroup& g, unsigned rank, const FiniteGroup& dedup,
                                      const SearchOptions& options) {
  if (rank < kMinRank || rank > kMaxRank) throw std::invalid_argument("rank must be between 3 and 5");
  const DedupAction action(g, dedup);
  const std::size_t n = rank;

  const auto& invs = g.involutions();
  std::vector<std::int32_t> inv_index(g.order(), -1);
  for (std::size_t i = 0; i < invs.size(); ++i) inv_index[invs[i]] = static_cast<std::int32_t>(i);
  std::vector<std::vector<ElementId>> commuting(invs.size());
  for (std::size_t i = 0; i < invs.size(); ++i)
    for (std::size_t j = i + 1; j < invs.size(); ++j)
      if (g.commute(invs[i], invs[j])) {
        commuting[i].push_back(invs[j]);
        commuting[j].push_back(invs[i]);
      }
  for (auto& list : commuting) std::sort(list.begin(), list.end());

  std::vector<WorkItem> items;
  for (ElementId rep : action.involution_representatives())
    for (ElementId last : commuting[static_cast<std::size_t>(inv_index[rep])]) items.push_back({rep, last});

  std::vector<std::vector<Key>> found(items.size());
  std::vector<std::size_t> leaves(items.size(), 0);
  std::vector<std::size_t> schedule(items.size());
  std::iota(schedule.begin(), schedule.end(), std::size_t{0});
  if (options.seed_partition != 0) {
    std::mt19937_64 rng(options.seed_partition);
    std::shuffle(schedule.begin(), schedule.end(), rng);
  }
  const unsigned workers = std::max(1U, options.workers);
  auto work = [&](unsigned w) {
    Searcher searcher(g, rank, commuting, inv_index);
    for (std::size_t i = w; i < schedule.size(); i += workers) {
      const std::size_t item = schedule[i];
      found[item] = searcher.run(items[item], leaves[item]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  EnumerationResult result;
  for (std::size_t l : leaves) result.leaves_examined += l;

  // Sequential dedup in item order: orbits under component-wise conjugation.
  std::unordered_map<Key, std::size_t, KeyHash> orbit_of;
  struct Orbit {
    Key canonical;
    std::size_t size;
  };
  std::vector<Orbit> orbits;
  auto explore = [&](const Key& start) {
    const std::size_t idx = orbits.size();
    std::vector<Key> queue{start};
    orbit_of.emplace(start, idx);
    Key best = start;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::size_t s = 0; s < action.generator_count(); ++s) {
        Key next{};
        for (std::size_t i = 0; i < n; ++i) next[i] = action.apply(queue[head][i], s);
        if (orbit_of.emplace(next, idx).second) {
          queue.push_back(next);
          if (next < best) best = next;
        }
      }
    }
    orbits.push_back({best, queue.size()});
    return idx;
  };

  for (const auto& list : found) {
    for (const Key& k : list) {
      ++result.tuples_accepted;
      if (!orbit_of.count(k)) explore(k);
    }
  }

  auto make_record = [&](const Key& canonical, std::size_t size) {
    PolytopeRecord r;
    r.tuple = from_key(canonical, n);
    r.schlafli = schlafli_type(g, r.tuple);
    r.group_order = g.order();
    r.degenerate = r.schlafli.degenerate();
    r.orbit_size = size;
    return r;
  };

  std::vector<std::size_t> dual_of(orbits.size());
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    auto it = orbit_of.find(reversed_key(orbits[i].canonical, n));
    // The search is exhaustive, so the reversed tuple's orbit was reached too.
    if (it == orbit_of.end()) throw std::logic_error("dual orbit missing from search output");
    dual_of[i] = it->second;
  }

  std::vector<std::size_t> order(orbits.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return orbits[a].canonical < orbits[b].canonical; });
  for (std::size_t i : order) {
    PolytopeRecord r = make_record(orbits[i].canonical, orbits[i].size);
    r.self_dual = dual_of[i] == i;
    result.iso.push_back(std::move(r));
  }
  for (std::size_t i : order) {
    const std::size_t d = dual_of[i];
    if (d != i && orbits[d].canonical < orbits[i].canonical) continue;
    PolytopeRecord r = make_record(orbits[i].canonical, orbits[i].size + (d == i ? 0 : orbits[d].size));
    r.self_dual = d == i;
    result.iso_dual.push_back(std::move(r));
  }
  return result;
}

}  // namespace pglatlas

#include "pglatlas/group.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

#include "pglatlas/errors.hpp"

namespace pglatlas {

namespace {

std::atomic<std::uint64_t> next_uid{1};

constexpr ElementId kNone = std::numeric_limits<ElementId>::max();
constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 24;

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

}  // namespace

FiniteGroup FiniteGroup::close(std::span<const Perm> seed, std::size_t cap) {
  if (seed.empty()) throw std::invalid_argument("closure needs at least one seed element");
  const std::size_t degree = seed.front().degree();
  if (degree == 0 || degree > 65536) throw std::invalid_argument("unsupported degree");
  for (const Perm& s : seed)
    if (s.degree() != degree) throw std::invalid_argument("seed elements have mixed degrees");

  FiniteGroup g;
  g.degree_ = degree;
  g.uid_ = next_uid.fetch_add(1);

  auto& store = g.storage_;
  auto view = [&store, degree](ElementId id) {
    return std::u16string_view(reinterpret_cast<const char16_t*>(store.data() + std::size_t{id} * degree),
                               degree);
  };
  auto hash = [&view](ElementId id) { return std::hash<std::u16string_view>{}(view(id)); };
  auto eq = [&view](ElementId a, ElementId b) { return view(a) == view(b); };
  std::unordered_set<ElementId, decltype(hash), decltype(eq)> seen(64, hash, eq);

  store.reserve(degree * 64);
  for (std::size_t i = 0; i < degree; ++i) store.push_back(static_cast<std::uint16_t>(i));
  seen.insert(0);
  std::size_t count = 1;

  std::vector<std::vector<std::uint16_t>> gens;
  for (const Perm& s : seed) {
    std::vector<std::uint16_t> img(degree);
    for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<std::uint16_t>(s[i]);
    gens.push_back(std::move(img));
  }

  for (std::size_t head = 0; head < count; ++head) {
    for (const auto& gen : gens) {
      // Candidate lives in the slot just past the last element until accepted.
      const std::size_t slot = count * degree;
      store.resize(slot + degree);
      for (std::size_t i = 0; i < degree; ++i) store[slot + i] = gen[store[head * degree + i]];
      if (seen.find(static_cast<ElementId>(count)) != seen.end()) {
        store.resize(slot);
        continue;
      }
      if (count + 1 > cap) throw CapExceeded("group closure exceeds cap of " + std::to_string(cap));
      seen.insert(static_cast<ElementId>(count));
      ++count;
    }
  }
  store.resize(count * degree);
  store.shrink_to_fit();
  g.order_ = count;
  seen.clear();

  g.build_index();

  for (const Perm& s : seed) {
    if (s.is_identity()) continue;
    const ElementId id = *g.find(s);
    if (std::find(g.generators_.begin(), g.generators_.end(), id) == g.generators_.end())
      g.generators_.push_back(id);
  }
  return g;
}

void FiniteGroup::build_index() {
  // Greedy base: add points while they split elements apart.
  std::vector<std::uint64_t> keys(order_, 0);
  std::uint64_t space = 1;
  std::size_t distinct = 1;
  for (Point pt = 0; pt < degree_ && distinct < order_; ++pt) {
    std::vector<std::uint64_t> next(order_);
    for (std::size_t id = 0; id < order_; ++id) next[id] = keys[id] * degree_ + storage_[id * degree_ + pt];
    std::vector<std::uint64_t> sorted = next;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t d = static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    if (d > distinct) {
      if (space > std::numeric_limits<std::uint64_t>::max() / degree_)
        throw std::length_error("group base too long to index");
      space *= degree_;
      base_.push_back(pt);
      keys = std::move(next);
      distinct = d;
    }
  }
  if (space <= kDenseLimit) {
    dense_index_.assign(space, kNone);
    for (std::size_t id = 0; id < order_; ++id) dense_index_[keys[id]] = static_cast<ElementId>(id);
  } else {
    sparse_index_.reserve(order_);
    for (std::size_t id = 0; id < order_; ++id) sparse_index_.emplace(keys[id], static_cast<ElementId>(id));
  }

  inverse_.resize(order_);
  orders_.resize(order_);
  std::vector<std::uint16_t> inv(degree_);
  for (std::size_t id = 0; id < order_; ++id) {
    const std::uint16_t* img = &storage_[id * degree_];
    for (std::size_t i = 0; i < degree_; ++i) inv[img[i]] = static_cast<std::uint16_t>(i);
    inverse_[id] = *lookup_key(key_of(inv.data()));
    orders_[id] = static_cast<std::uint32_t>(element(static_cast<ElementId>(id)).order());
    if (orders_[id] == 2) involutions_.push_back(static_cast<ElementId>(id));
  }
}

std::uint64_t FiniteGroup::key_of(const std::uint16_t* images) const {
  std::uint64_t key = 0;
  for (Point b : base_) key = key * degree_ + images[b];
  return key;
}

std::optional<ElementId> FiniteGroup::lookup_key(std::uint64_t key) const {
  if (!dense_index_.empty()) {
    if (key >= dense_index_.size() || dense_index_[key] == kNone) return std::nullopt;
    return dense_index_[key];
  }
  auto it = sparse_index_.find(key);
  if (it == sparse_index_.end()) return std::nullopt;
  return it->second;
}

ElementId FiniteGroup::mul_by_base(ElementId a, ElementId b) const {
  const std::uint16_t* ia = &storage_[std::size_t{a} * degree_];
  const std::uint16_t* ib = &storage_[std::size_t{b} * degree_];
  std::uint64_t key = 0;
  for (Point pt : base_) key = key * degree_ + ib[ia[pt]];
  if (!dense_index_.empty()) return dense_index_[key];
  return sparse_index_.find(key)->second;
}

Perm FiniteGroup::element(ElementId id) const {
  std::vector<Point> img(degree_);
  for (std::size_t i = 0; i < degree_; ++i) img[i] = storage_[std::size_t{id} * degree_ + i];
  return Perm(std::move(img));
}

std::optional<ElementId> FiniteGroup::find(const Perm& p) const {
  if (p.degree() != degree_) return std::nullopt;
  std::uint64_t key = 0;
  for (Point b : base_) key = key * degree_ + p[b];
  auto id = lookup_key(key);
  if (!id) return std::nullopt;
  for (std::size_t i = 0; i < degree_; ++i)
    if (storage_[std::size_t{*id} * degree_ + i] != p[static_cast<Point>(i)]) return std::nullopt;
  return id;
}

void FiniteGroup::enable_cayley_table() {
  if (!cayley_.empty()) return;
  if (order_ > kMaxCayleyTableOrder)
    throw std::length_error("Cayley table refused above order " + std::to_string(kMaxCayleyTableOrder));
  std::vector<ElementId> table(order_ * order_);
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b)
      table[a * order_ + b] = mul_by_base(static_cast<ElementId>(a), static_cast<ElementId>(b));
  cayley_ = std::move(table);
}

// ---------------------------------------------------------------------------

SubgroupSet::SubgroupSet(const FiniteGroup& parent, std::vector<std::uint64_t> bits)
    : SubgroupSet(parent.uid(), std::move(bits)) {
  bits_.resize(words_for(parent.order()), 0);
}

SubgroupSet::SubgroupSet(std::uint64_t parent_uid, std::vector<std::uint64_t> bits)
    : parent_(parent_uid), bits_(std::move(bits)) {
  for (std::uint64_t w : bits_) order_ += static_cast<std::size_t>(std::popcount(w));
}

SubgroupSet SubgroupSet::trivial(const FiniteGroup& g) {
  std::vector<std::uint64_t> bits(words_for(g.order()), 0);
  bits[0] = 1;
  return SubgroupSet(g, std::move(bits));
}

SubgroupSet SubgroupSet::whole(const FiniteGroup& g) {
  std::vector<std::uint64_t> bits(words_for(g.order()), ~std::uint64_t{0});
  if (g.order() % 64) bits.back() = (std::uint64_t{1} << (g.order() % 64)) - 1;
  return SubgroupSet(g, std::move(bits));
}

bool SubgroupSet::is_subset_of(const SubgroupSet& other) const {
  if (parent_ != other.parent_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~other.bits_[i]) return false;
  return true;
}

std::vector<ElementId> SubgroupSet::members() const {
  std::vector<ElementId> out;
  out.reserve(order_);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    while (word) {
      const int b = std::countr_zero(word);
      out.push_back(static_cast<ElementId>(w * 64 + static_cast<std::size_t>(b)));
      word &= word - 1;
    }
  }
  return out;
}

std::size_t SubgroupSetHash::operator()(const SubgroupSet& s) const {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ s.parent();
  for (std::uint64_t w : s.bits()) {
    h ^= w;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------

ClosureWorkspace::ClosureWorkspace(const FiniteGroup& g)
    : group_(&g), bits_(words_for(g.order()), 0) {
  members_.reserve(g.order());
}

std::size_t ClosureWorkspace::close(std::span<const ElementId> gens, bool early_exit) {
  for (ElementId id : members_) bits_[id >> 6] &= ~(std::uint64_t{1} << (id & 63));
  members_.clear();
  whole_ = false;

  const FiniteGroup& g = *group_;
  const std::size_t half = g.order() / 2;
  bits_[0] |= 1;
  members_.push_back(0);
  for (std::size_t head = 0; head < members_.size(); ++head) {
    const ElementId x = members_[head];
    for (ElementId s : gens) {
      const ElementId y = g.mul(x, s);
      std::uint64_t& word = bits_[y >> 6];
      const std::uint64_t mask = std::uint64_t{1} << (y & 63);
      if (word & mask) continue;
      word |= mask;
      members_.push_back(y);
      if (early_exit && members_.size() > half && members_.size() < g.order()) {
        whole_ = true;
        return g.order();
      }
    }
  }
  if (members_.size() == g.order()) whole_ = true;
  if (g.order() % members_.size() != 0)
    throw std::logic_error("closure violates Lagrange's theorem");
  return members_.size();
}

SubgroupSet ClosureWorkspace::to_subgroup() const {
  if (whole_) return SubgroupSet::whole(*group_);
  return SubgroupSet(*group_, bits_);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<ConjugacyClass> classes_of(const FiniteGroup& g, const std::vector<ElementId>& domain) {
  std::vector<std::uint8_t> assigned(g.order(), 0);
  std::vector<ConjugacyClass> out;
  for (ElementId start : domain) {
    if (assigned[start]) continue;
    ConjugacyClass cls;
    cls.members.push_back(start);
    assigned[start] = 1;
    for (std::size_t head = 0; head < cls.members.size(); ++head) {
      for (ElementId s : g.generators()) {
        const ElementId y = g.conjugate(cls.members[head], s);
        if (!assigned[y]) {
          assigned[y] = 1;
          cls.members.push_back(y);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    cls.representative = cls.members.front();
    out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace

std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g) {
  std::vector<ElementId> all(g.order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<ElementId>(i);
  return classes_of(g, all);
}

std::vector<ConjugacyClass> involution_classes(const FiniteGroup& g) {
  return classes_of(g, g.involutions());
}

SubgroupSet centralizer(const FiniteGroup& g, ElementId id) {
  std::vector<std::uint64_t> bits(words_for(g.order()), 0);
  for (std::size_t h = 0; h < g.order(); ++h)
    if (g.commute(static_cast<ElementId>(h), id)) bits[h >> 6] |= std::uint64_t{1} << (h & 63);
  return SubgroupSet(g, std::move(bits));
}

SubgroupSet subgroup_closure(const FiniteGroup& g, std::span<const ElementId> ids) {
  ClosureWorkspace ws(g);
  ws.close(ids, true);
  return ws.to_subgroup();
}

SubgroupSet subgroup_intersect(const SubgroupSet& a, const SubgroupSet& b) {
  if (a.parent() != b.parent()) throw std::invalid_argument("subgroups of different groups");
  std::vector<std::uint64_t> bits(a.bits().size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = a.bits()[i] & b.bits()[i];
  return SubgroupSet(a.parent(), std::move(bits));
}

SubgroupSet conjugate_subgroup(const FiniteGroup& g, const SubgroupSet& h, ElementId by) {
  std::vector<std::uint64_t> bits(h.bits().size(), 0);
  for (ElementId x : h.members()) {
    const ElementId y = g.conjugate(x, by);
    bits[y >> 6] |= std::uint64_t{1} << (y & 63);
  }
  return SubgroupSet(g, std::move(bits));
}

std::vector<ElementId> embed(const FiniteGroup& inner, const FiniteGroup& outer) {
  std::vector<ElementId> out(inner.order());
  for (std::size_t id = 0; id < inner.order(); ++id) {
    auto found = outer.find(inner.element(static_cast<ElementId>(id)));
    if (!found) throw std::invalid_argument("group is not contained in the target group");
    out[id] = *found;
  }
  return out;
}

}  // namespace pglatlas

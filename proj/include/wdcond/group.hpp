#pragma once

// Finite groups as dense multiplication tables, subgroups, and descending
// subgroup chains (finite group filtrations).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wdcond/error.hpp"
#include "wdcond/numtheory.hpp"

namespace wdcond {

using Element = std::uint32_t;

inline constexpr std::size_t default_order_cap = 2048;

/// Descriptor for the named constructions understood by build_group.
struct GroupSpec {
  std::string kind;  // cyclic, elementary_abelian, dihedral, quaternion8, heisenberg, affine, direct_product
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::int64_t k = 0;
  std::vector<GroupSpec> factors;

  static GroupSpec cyclic(std::int64_t n) { return {"cyclic", n, 0, 0, {}}; }
  static GroupSpec elementary_abelian(std::int64_t p, std::int64_t k) { return {"elementary_abelian", 0, p, k, {}}; }
  static GroupSpec dihedral(std::int64_t n) { return {"dihedral", n, 0, 0, {}}; }
  static GroupSpec quaternion8() { return {"quaternion8", 0, 0, 0, {}}; }
  static GroupSpec heisenberg(std::int64_t p) { return {"heisenberg", 0, p, 0, {}}; }
  static GroupSpec affine(std::int64_t p) { return {"affine", 0, p, 0, {}}; }
  static GroupSpec direct_product(std::vector<GroupSpec> fs) { return {"direct_product", 0, 0, 0, std::move(fs)}; }

  std::string str() const {
    if (kind == "cyclic" || kind == "dihedral") return kind + "(" + std::to_string(n) + ")";
    if (kind == "elementary_abelian") return kind + "(" + std::to_string(p) + "," + std::to_string(k) + ")";
    if (kind == "heisenberg" || kind == "affine") return kind + "(" + std::to_string(p) + ")";
    if (kind == "direct_product") {
      std::string out = "direct_product(";
      for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? "," : "") + factors[i].str();
      return out + ")";
    }
    return kind;
  }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  /// Validates a Cayley table (row-major, table[a*n+b] = ab).
  static GroupPtr from_table(std::vector<Element> table, std::string name = "table",
                             std::optional<GroupSpec> spec = std::nullopt) {
    return GroupPtr(new FiniteGroup(std::move(table), std::move(name), std::move(spec)));
  }

  std::size_t order() const { return order_; }
  std::uint64_t id() const { return id_; }
  const std::string& name() const { return name_; }
  const std::optional<GroupSpec>& spec() const { return spec_; }

  Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Element identity() const { return identity_; }
  Element inverse(Element a) const { return inverse_[a]; }
  Element conjugate(Element g, Element x) const { return mul(mul(g, x), inverse_[g]); }

  /// g^k by square-and-multiply; negative k uses the inverse.
  Element power(Element g, std::int64_t k) const {
    if (k < 0) {
      g = inverse_[g];
      k = -k;
    }
    Element result = identity_;
    while (k > 0) {
      if (k & 1) result = mul(result, g);
      g = mul(g, g);
      k >>= 1;
    }
    return result;
  }

  std::int64_t element_order(Element g) const { return element_order_[g]; }
  std::int64_t exponent() const { return exponent_; }

  std::size_t num_classes() const { return classes_.size(); }
  const std::vector<std::vector<Element>>& classes() const { return classes_; }
  const std::vector<Element>& conjugacy_class(std::size_t c) const { return classes_[c]; }
  std::size_t class_of(Element g) const { return class_of_[g]; }
  std::size_t class_size(std::size_t c) const { return classes_[c].size(); }
  Element class_rep(std::size_t c) const { return classes_[c].front(); }
  std::size_t identity_class() const { return 0; }
  std::size_t inverse_class(std::size_t c) const { return class_of_[inverse_[class_rep(c)]]; }
  /// Class of rep(c)^k.
  std::size_t power_class(std::size_t c, std::int64_t k) const { return class_of_[power(class_rep(c), k)]; }

  bool is_abelian() const { return classes_.size() == order_; }

  /// True iff |G| is a power of p (the trivial group counts).
  bool is_p_group(std::int64_t p) const { return nt::log_exact(static_cast<std::int64_t>(order_), p) >= 0; }

 private:
  FiniteGroup(std::vector<Element> table, std::string name, std::optional<GroupSpec> spec)
      : order_(0), table_(std::move(table)), name_(std::move(name)), spec_(std::move(spec)) {
    static std::atomic<std::uint64_t> next_id{1};
    id_ = next_id.fetch_add(1);
    std::size_t n = 0;
    while (n * n < table_.size()) ++n;
    require(n >= 1 && n * n == table_.size(), ErrorKind::invalid_argument, "Cayley table must be square");
    order_ = n;
    for (auto x : table_) require(x < n, ErrorKind::invalid_argument, "table entry out of range");
    validate_and_derive();
  }

  void validate_and_derive() {
    const std::size_t n = order_;
    // identity
    std::optional<Element> e;
    for (Element a = 0; a < n && !e; ++a) {
      bool ok = true;
      for (Element x = 0; x < n && ok; ++x) ok = mul(a, x) == x && mul(x, a) == x;
      if (ok) e = a;
    }
    require(e.has_value(), ErrorKind::invalid_argument, "table has no identity");
    identity_ = *e;
    inverse_.assign(n, 0);
    for (Element a = 0; a < n; ++a) {
      bool found = false;
      for (Element b = 0; b < n && !found; ++b) {
        if (mul(a, b) == identity_) {
          require(mul(b, a) == identity_, ErrorKind::invalid_argument, "inverse is not two-sided");
          inverse_[a] = b;
          found = true;
        }
      }
      require(found, ErrorKind::invalid_argument, "element without inverse");
    }
    check_associativity();
    element_order_.assign(n, 1);
    exponent_ = 1;
    for (Element a = 0; a < n; ++a) {
      std::int64_t k = 1;
      Element x = a;
      while (x != identity_) {
        x = mul(x, a);
        ++k;
      }
      element_order_[a] = k;
      exponent_ = std::lcm(exponent_, k);
    }
    // classes: identity first, then by smallest member
    class_of_.assign(n, n);
    auto add_class = [&](Element x) {
      std::vector<Element> cls;
      for (Element g = 0; g < n; ++g) {
        const Element y = conjugate(g, x);
        if (class_of_[y] == n) {
          class_of_[y] = classes_.size();
          cls.push_back(y);
        }
      }
      std::sort(cls.begin(), cls.end());
      classes_.push_back(std::move(cls));
    };
    add_class(identity_);
    for (Element x = 0; x < n; ++x)
      if (class_of_[x] == n) add_class(x);
  }

  void check_associativity() const {
    const std::size_t n = order_;
    auto assoc = [&](Element a, Element b, Element c) { return mul(mul(a, b), c) == mul(a, mul(b, c)); };
    if (n <= 256) {
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
          for (Element c = 0; c < n; ++c)
            require(assoc(a, b, c), ErrorKind::invalid_argument, "table is not associative");
    } else {
      std::mt19937_64 rng(0x5eed);
      for (int t = 0; t < 200000; ++t) {
        const auto a = static_cast<Element>(rng() % n);
        const auto b = static_cast<Element>(rng() % n);
        const auto c = static_cast<Element>(rng() % n);
        require(assoc(a, b, c), ErrorKind::invalid_argument, "table is not associative");
      }
    }
  }

  std::size_t order_;
  std::vector<Element> table_;
  std::string name_;
  std::optional<GroupSpec> spec_;
  std::uint64_t id_ = 0;
  Element identity_ = 0;
  std::vector<Element> inverse_;
  std::vector<std::int64_t> element_order_;
  std::int64_t exponent_ = 1;
  std::vector<std::vector<Element>> classes_;
  std::vector<std::size_t> class_of_;
};

namespace detail {

struct Presentation {
  std::size_t order;
  std::function<Element(Element, Element)> mul;
};

inline Presentation presentation_of(const GroupSpec& spec, std::size_t cap) {
  auto need_prime = [](std::int64_t p, const char* what) {
    require(nt::is_prime(p), ErrorKind::not_prime, std::string(what) + " requires a prime, got " + std::to_string(p));
  };
  auto check_cap = [cap](long double order) {
    require(order <= static_cast<long double>(cap), ErrorKind::order_cap_exceeded,
            "group order exceeds the cap of " + std::to_string(cap));
  };
  const std::string& kind = spec.kind;
  if (kind == "cyclic") {
    require(spec.n >= 1, ErrorKind::invalid_argument, "cyclic(n) needs n >= 1");
    check_cap(spec.n);
    const auto n = static_cast<Element>(spec.n);
    return {n, [n](Element a, Element b) { return (a + b) % n; }};
  }
  if (kind == "elementary_abelian") {
    need_prime(spec.p, "elementary_abelian");
    require(spec.k >= 1, ErrorKind::invalid_argument, "elementary_abelian needs rank >= 1");
    check_cap(std::pow(static_cast<long double>(spec.p), static_cast<long double>(spec.k)));
    const auto p = static_cast<Element>(spec.p);
    const auto k = static_cast<int>(spec.k);
    std::size_t order = 1;
    for (int i = 0; i < k; ++i) order *= p;
    return {order, [p, k](Element a, Element b) {
              Element out = 0, place = 1;
              for (int i = 0; i < k; ++i) {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
              }
              return out;
            }};
  }
  if (kind == "dihedral") {
    require(spec.n >= 1, ErrorKind::invalid_argument, "dihedral(n) needs n >= 1");
    check_cap(2.0L * spec.n);
    const auto n = static_cast<Element>(spec.n);
    return {2 * static_cast<std::size_t>(n), [n](Element x, Element y) {
              const Element a = x % n, b = x / n, c = y % n, d = y / n;
              const Element rot = b == 0 ? (a + c) % n : (a + n - c) % n;
              return rot + n * ((b + d) % 2);
            }};
  }
  if (kind == "quaternion8") {
    check_cap(8);
    // units 1,i,j,k; product of units as (sign, unit)
    static constexpr int unit_mul[4][4][2] = {
        {{0, 0}, {0, 1}, {0, 2}, {0, 3}},
        {{0, 1}, {1, 0}, {0, 3}, {1, 2}},
        {{0, 2}, {1, 3}, {1, 0}, {0, 1}},
        {{0, 3}, {0, 2}, {1, 1}, {1, 0}},
    };
    return {8, [](Element x, Element y) {
              const auto& r = unit_mul[x % 4][y % 4];
              const Element sign = (x / 4 + y / 4 + static_cast<Element>(r[0])) % 2;
              return static_cast<Element>(r[1]) + 4 * sign;
            }};
  }
  if (kind == "heisenberg") {
    need_prime(spec.p, "heisenberg");
    check_cap(std::pow(static_cast<long double>(spec.p), 3.0L));
    const auto p = static_cast<Element>(spec.p);
    return {static_cast<std::size_t>(p) * p * p, [p](Element x, Element y) {
              const Element a = x % p, b = (x / p) % p, c = x / (p * p);
              const Element a2 = y % p, b2 = (y / p) % p, c2 = y / (p * p);
              return (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p);
            }};
  }
  if (kind == "affine") {
    need_prime(spec.p, "affine");
    check_cap(static_cast<long double>(spec.p) * static_cast<long double>(spec.p - 1));
    const auto p = static_cast<Element>(spec.p);
    // x -> a x + b  <->  b + p (a - 1); product is composition (right factor first)
    return {static_cast<std::size_t>(p) * (p - 1), [p](Element x, Element y) {
              const Element b = x % p, a = x / p + 1, d = y % p, c = y / p + 1;
              const Element ac = (a * c) % p;
              const Element ad_b = (a * d + b) % p;
              return ad_b + p * (ac - 1);
            }};
  }
  if (kind == "direct_product") {
    require(!spec.factors.empty(), ErrorKind::invalid_argument, "direct_product needs factors");
    std::vector<Presentation> parts;
    long double order = 1;
    for (const auto& f : spec.factors) {
      parts.push_back(presentation_of(f, cap));
      order *= static_cast<long double>(parts.back().order);
      check_cap(order);
    }
    return {static_cast<std::size_t>(order), [parts](Element x, Element y) {
              Element out = 0, place = 1;
              for (const auto& part : parts) {
                const auto m = static_cast<Element>(part.order);
                out += part.mul(x % m, y % m) * place;
                x /= m;
                y /= m;
                place *= m;
              }
              return out;
            }};
  }
  fail(ErrorKind::input_error, "unknown group kind '" + kind + "'");
}

}  // namespace detail

/// Builds and validates one of the named constructions.
///
/// Element encodings (used wherever subgroups are given by generators):
///   cyclic(n)                 k            <-> g^k
///   elementary_abelian(p,k)   sum x_i p^i  <-> (x_0, ..., x_{k-1})
///   dihedral(n)               i + n j      <-> r^i s^j
///   quaternion8               0..7         <-> 1, i, j, k, -1, -i, -j, -k
///   heisenberg(p)             a + p b + p^2 c <-> [[1,a,c],[0,1,b],[0,0,1]]
///   affine(p)                 b + p (a-1)  <-> (x -> a x + b)
///   direct_product(G_0, ...)  mixed radix, first factor least significant
inline GroupPtr build_group(const GroupSpec& spec, std::size_t cap = default_order_cap) {
  const auto pres = detail::presentation_of(spec, cap);
  const std::size_t n = pres.order;
  std::vector<Element> table(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = pres.mul(a, b);
  return FiniteGroup::from_table(std::move(table), spec.str(), spec);
}

/// build_group memoized on the descriptor, so equal specs share one group (and one
/// cached character table).
inline GroupPtr shared_group(const GroupSpec& spec, std::size_t cap = default_order_cap) {
  static std::mutex mutex;
  static std::map<std::string, GroupPtr> cache;
  const std::string key = spec.str();
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) {
      require(it->second->order() <= cap, ErrorKind::order_cap_exceeded, key + " exceeds the order cap");
      return it->second;
    }
  }
  GroupPtr g = build_group(spec, cap);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(g)).first->second;
}

/// Subset of a parent group closed under multiplication and inverses.
class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<Element> elements) : parent_(std::move(parent)), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    const auto& g = *parent_;
    member_.assign(g.order(), 0);
    for (auto x : elements_) {
      require(x < g.order(), ErrorKind::index_out_of_range, "subgroup element out of range");
      member_[x] = 1;
    }
    require(!elements_.empty() && member_[g.identity()], ErrorKind::invalid_argument, "subgroup must contain the identity");
    for (auto x : elements_) {
      require(member_[g.inverse(x)], ErrorKind::invalid_argument, "subset not closed under inverses");
      for (auto y : elements_)
        require(member_[g.mul(x, y)], ErrorKind::invalid_argument, "subset not closed under multiplication");
    }
    class_counts_.assign(g.num_classes(), 0);
    for (auto x : elements_) ++class_counts_[g.class_of(x)];
  }

  const GroupPtr& parent() const { return parent_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(Element x) const { return x < member_.size() && member_[x]; }
  bool is_trivial() const { return elements_.size() == 1; }
  bool is_whole() const { return elements_.size() == parent_->order(); }
  /// |C ∩ H| for each conjugacy class C of the parent.
  const std::vector<std::int64_t>& class_counts() const { return class_counts_; }

  bool is_subset_of(const Subgroup& other) const {
    return std::all_of(elements_.begin(), elements_.end(), [&](Element x) { return other.contains(x); });
  }

  bool is_normal() const {
    const auto& g = *parent_;
    for (Element s = 0; s < g.order(); ++s)
      for (auto x : elements_)
        if (!contains(g.conjugate(s, x))) return false;
    return true;
  }

  /// The subgroup as a group in its own right; position i of elements() becomes element i.
  GroupPtr as_group() const {
    const auto& g = *parent_;
    const std::size_t n = elements_.size();
    std::vector<Element> local(g.order(), 0);
    for (std::size_t i = 0; i < n; ++i) local[elements_[i]] = static_cast<Element>(i);
    std::vector<Element> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) table[i * n + j] = local[g.mul(elements_[i], elements_[j])];
    return FiniteGroup::from_table(std::move(table), "subgroup of " + g.name());
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_->id() == b.parent_->id() && a.elements_ == b.elements_;
  }

 private:
  GroupPtr parent_;
  std::vector<Element> elements_;
  std::vector<char> member_;
  std::vector<std::int64_t> class_counts_;
};

/// Smallest subgroup containing gens.
inline Subgroup subgroup_generated(const GroupPtr& g, const std::vector<Element>& gens) {
  std::vector<char> seen(g->order(), 0);
  std::vector<Element> elements{g->identity()};
  seen[g->identity()] = 1;
  for (auto x : gens) require(x < g->order(), ErrorKind::index_out_of_range, "generator out of range");
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (auto s : gens) {
      const Element y = g->mul(elements[head], s);
      if (!seen[y]) {
        seen[y] = 1;
        elements.push_back(y);
      }
    }
  }
  return Subgroup(g, std::move(elements));
}

inline Subgroup whole_group(const GroupPtr& g) {
  std::vector<Element> all(g->order());
  std::iota(all.begin(), all.end(), Element{0});
  return Subgroup(g, std::move(all));
}

inline Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {g->identity()}); }

inline Subgroup center(const GroupPtr& g) {
  std::vector<Element> z;
  for (std::size_t c = 0; c < g->num_classes(); ++c)
    if (g->class_size(c) == 1) z.push_back(g->class_rep(c));
  return Subgroup(g, std::move(z));
}

/// Descending chain G = G_0 >= G_1 >= ... >= G_k = 1. Normality is not required.
class Filtration {
 public:
  Filtration(GroupPtr parent, std::vector<Subgroup> chain) : parent_(std::move(parent)), chain_(std::move(chain)) {
    require(!chain_.empty(), ErrorKind::invalid_argument, "filtration chain must be nonempty");
    for (const auto& h : chain_)
      require(h.parent()->id() == parent_->id(), ErrorKind::invalid_argument, "chain subgroups must live in the parent group");
    require(chain_.front().is_whole(), ErrorKind::bad_chain_start, "filtration must start at the whole group");
    for (std::size_t i = 1; i < chain_.size(); ++i)
      require(chain_[i].is_subset_of(chain_[i - 1]), ErrorKind::not_descending,
              "chain is not descending at step " + std::to_string(i));
    if (!chain_.back().is_trivial()) chain_.push_back(trivial_subgroup(parent_));
  }

  const GroupPtr& parent() const { return parent_; }
  std::size_t length() const { return chain_.size(); }
  const std::vector<Subgroup>& chain() const { return chain_; }

  const Subgroup& at(std::size_t i) const {
    require(i < chain_.size(), ErrorKind::index_out_of_range,
            "filtration index " + std::to_string(i) + " out of range (length " + std::to_string(chain_.size()) + ")");
    return chain_[i];
  }

  /// [G_0 : G_i]
  std::int64_t index(std::size_t i) const {
    return static_cast<std::int64_t>(parent_->order() / at(i).order());
  }

 private:
  GroupPtr parent_;
  std::vector<Subgroup> chain_;
};

inline Filtration make_filtration(const GroupPtr& g, std::vector<Subgroup> chain) {
  return Filtration(g, std::move(chain));
}

/// g^k computed by square-and-multiply.
inline Element power_map(const FiniteGroup& g, Element x, std::int64_t k) { return g.power(x, k); }

}  // namespace wdcond

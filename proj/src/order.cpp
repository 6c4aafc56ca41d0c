#include "maxitive/order.hpp"

#include <algorithm>

namespace maxitive {

namespace {

std::string name_of(const std::vector<std::string>& labels, Element x) {
  return x < labels.size() ? labels[x] : std::to_string(x);
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

OrderCheck failure(std::string detail, std::vector<Element> witness) {
  return OrderCheck{false, std::move(witness), std::move(detail)};
}

}  // namespace

Lattice Lattice::from_relation(std::vector<std::vector<bool>> leq,
                               std::vector<std::string> labels,
                               std::size_t limit) {
  const std::size_t n = leq.size();
  if (n == 0) throw OrderError(OrderError::Kind::no_bottom, "empty poset has no bottom element");
  if (n > limit || n > kMaxElements) {
    throw OrderError(OrderError::Kind::size_limit,
                     "poset has " + std::to_string(n) + " elements; limit is " +
                         std::to_string(std::min(limit, kMaxElements)));
  }
  for (const auto& row : leq) {
    if (row.size() != n) throw OrderError(OrderError::Kind::malformed, "leq relation is not square");
  }
  if (labels.empty()) labels = default_labels(n);
  if (labels.size() != n) {
    throw OrderError(OrderError::Kind::malformed, "label count does not match element count");
  }

  for (Element a = 0; a < n; ++a) {
    if (!leq[a][a]) {
      throw OrderError(OrderError::Kind::reflexivity,
                       "reflexivity fails at " + name_of(labels, a));
    }
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = a + 1; b < n; ++b) {
      if (leq[a][b] && leq[b][a]) {
        throw OrderError(OrderError::Kind::antisymmetry,
                         "antisymmetry fails: " + name_of(labels, a) + " <= " +
                             name_of(labels, b) + " <= " + name_of(labels, a));
      }
    }
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (!leq[a][b]) continue;
      for (Element c = 0; c < n; ++c) {
        if (leq[b][c] && !leq[a][c]) {
          throw OrderError(OrderError::Kind::transitivity,
                           "transitivity fails: " + name_of(labels, a) + " <= " +
                               name_of(labels, b) + " <= " + name_of(labels, c));
        }
      }
    }
  }

  Lattice l;
  l.size_ = n;
  l.labels_ = std::move(labels);
  l.all_ = n == 32 ? ~ElementSet{0} : ((ElementSet{1} << n) - 1);
  l.up_.assign(n, 0);
  l.down_.assign(n, 0);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (leq[a][b]) {
        l.up_[a] |= ElementSet{1} << b;
        l.down_[b] |= ElementSet{1} << a;
      }
    }
  }
  std::optional<Element> bottom;
  for (Element a = 0; a < n; ++a) {
    if (l.up_[a] == l.all_) bottom = a;
    if (l.down_[a] == l.all_) l.top_ = a;
  }
  if (!bottom) {
    throw OrderError(OrderError::Kind::no_bottom, "no element lies below every other element");
  }
  l.bottom_ = *bottom;
  l.build_tables();
  return l;
}

Lattice Lattice::from_pairs(std::size_t size,
                            const std::vector<std::pair<Element, Element>>& pairs,
                            std::vector<std::string> labels, std::size_t limit) {
  std::vector<std::vector<bool>> leq(size, std::vector<bool>(size, false));
  for (std::size_t i = 0; i < size; ++i) leq[i][i] = true;
  for (const auto& [lo, hi] : pairs) {
    if (lo >= size || hi >= size) {
      throw OrderError(OrderError::Kind::malformed, "pair references an unknown element");
    }
    leq[lo][hi] = true;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t i = 0; i < size; ++i)
      if (leq[i][k])
        for (std::size_t j = 0; j < size; ++j)
          if (leq[k][j]) leq[i][j] = true;
  return from_relation(std::move(leq), std::move(labels), limit);
}

Lattice Lattice::chain(std::size_t size) {
  std::vector<std::pair<Element, Element>> pairs;
  for (Element i = 1; i < size; ++i) pairs.emplace_back(i - 1, i);
  return from_pairs(size, pairs, {}, kMaxElements);
}

Lattice Lattice::boolean(std::size_t atoms) {
  const std::size_t n = std::size_t{1} << atoms;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) leq[a][b] = (a & ~b) == 0;
    std::string name;
    for (std::size_t i = 0; i < atoms; ++i)
      if ((a >> i) & 1U) name += static_cast<char>('a' + i);
    labels.push_back(name.empty() ? "0" : name);
  }
  return from_relation(std::move(leq), std::move(labels), kMaxElements);
}

Lattice Lattice::diamond() {
  return from_pairs(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}},
                    {"0", "a", "b", "c", "1"});
}

Lattice Lattice::pentagon() {
  return from_pairs(5, {{0, 1}, {1, 3}, {3, 4}, {0, 2}, {2, 4}},
                    {"0", "a", "b", "c", "1"});
}

Lattice Lattice::grid(std::size_t rows, std::size_t cols) {
  const std::size_t n = rows * cols;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      leq[a][b] = a / cols <= b / cols && a % cols <= b % cols;
    }
    labels.push_back(std::to_string(a / cols) + "," + std::to_string(a % cols));
  }
  return from_relation(std::move(leq), std::move(labels), kMaxElements);
}

std::optional<Element> Lattice::find(std::string_view label) const {
  for (Element i = 0; i < size_; ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

ElementSet Lattice::upper_bounds(ElementSet s) const {
  ElementSet out = all_;
  for_each_bit(s, [&](Element x) { out &= up_[x]; });
  return out;
}

ElementSet Lattice::lower_bounds(ElementSet s) const {
  ElementSet out = all_;
  for_each_bit(s, [&](Element x) { out &= down_[x]; });
  return out;
}

std::optional<Element> Lattice::supremum(ElementSet s) const {
  const ElementSet ub = upper_bounds(s);
  std::optional<Element> out;
  for_each_bit(ub, [&](Element x) {
    if ((up_[x] & ub) == ub) out = x;
  });
  return out;
}

std::optional<Element> Lattice::infimum(ElementSet s) const {
  const ElementSet lb = lower_bounds(s);
  std::optional<Element> out;
  for_each_bit(lb, [&](Element x) {
    if ((down_[x] & lb) == lb) out = x;
  });
  return out;
}

std::optional<Element> Lattice::try_join(Element a, Element b) const {
  const auto v = join_[a * size_ + b];
  if (v < 0) return std::nullopt;
  return static_cast<Element>(v);
}

std::optional<Element> Lattice::try_meet(Element a, Element b) const {
  const auto v = meet_[a * size_ + b];
  if (v < 0) return std::nullopt;
  return static_cast<Element>(v);
}

Element Lattice::join(Element a, Element b) const {
  const auto v = join_[a * size_ + b];
  if (v < 0) {
    throw OrderError(OrderError::Kind::missing_join,
                     "no join of " + labels_[a] + " and " + labels_[b]);
  }
  return static_cast<Element>(v);
}

Element Lattice::meet(Element a, Element b) const {
  const auto v = meet_[a * size_ + b];
  if (v < 0) {
    throw OrderError(OrderError::Kind::missing_meet,
                     "no meet of " + labels_[a] + " and " + labels_[b]);
  }
  return static_cast<Element>(v);
}

bool Lattice::is_filter(ElementSet s) const {
  if (s == 0) return false;
  bool ok = true;
  for_each_bit(s, [&](Element x) {
    if ((up_[x] & ~s) != 0) ok = false;
  });
  if (!ok) return false;
  for_each_bit(s, [&](Element x) {
    for_each_bit(s, [&](Element y) {
      if ((down_[x] & down_[y] & s) == 0) ok = false;
    });
  });
  return ok;
}

void Lattice::build_tables() {
  const std::size_t n = size_;
  join_.assign(n * n, -1);
  meet_.assign(n * n, -1);
  is_lattice_ = true;
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      const ElementSet pair = (ElementSet{1} << a) | (ElementSet{1} << b);
      if (auto j = supremum(pair)) join_[a * n + b] = static_cast<std::int16_t>(*j);
      else is_lattice_ = false;
      if (auto m = infimum(pair)) meet_[a * n + b] = static_cast<std::int16_t>(*m);
      else is_lattice_ = false;
    }
  }

  // Filters: upward closures of antichains, kept when filtered.
  filters_.clear();
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t raw = 1; raw < subsets; ++raw) {
    const auto anti = static_cast<ElementSet>(raw);
    bool antichain = true;
    for_each_bit(anti, [&](Element x) {
      if ((up_[x] & anti) != (ElementSet{1} << x)) antichain = false;
    });
    if (!antichain) continue;
    ElementSet closure = 0;
    for_each_bit(anti, [&](Element x) { closure |= up_[x]; });
    if (is_filter(closure)) filters_.push_back(closure);
  }
  std::sort(filters_.begin(), filters_.end());

  // y >> x iff y lies in every filter F that has an infimum below x.
  way_above_.assign(n, all_);
  for (ElementSet f : filters_) {
    const auto inf = infimum(f);
    if (!inf) continue;
    for (Element x = 0; x < n; ++x) {
      if (leq(*inf, x)) way_above_[x] &= f;
    }
  }

  is_domain_ = check_domain(*this).ok;
  is_frame_ = check_locally_continuous_frame(*this).ok;
}

OrderCheck check_continuity(const Lattice& l) {
  for (Element x = 0; x < l.size(); ++x) {
    const ElementSet wa = l.way_above_set(x);
    if (!l.is_filter(wa)) return failure("way-above set is not a filter", {x});
    const auto inf = l.infimum(wa);
    if (!inf || *inf != x) return failure("element is not the infimum of its way-above set", {x});
  }
  return {};
}

OrderCheck check_domain(const Lattice& l) {
  if (auto c = check_continuity(l); !c) return c;
  for (ElementSet f : l.filters()) {
    if (!l.infimum(f)) {
      std::vector<Element> members;
      for_each_bit(f, [&](Element x) { members.push_back(x); });
      return failure("filter without infimum", members);
    }
  }
  return {};
}

OrderCheck check_interpolation(const Lattice& l) {
  for (Element x = 0; x < l.size(); ++x) {
    for (Element y = 0; y < l.size(); ++y) {
      if (!l.way_above(y, x)) continue;
      bool found = false;
      for (Element z = 0; z < l.size() && !found; ++z) {
        found = l.way_above(y, z) && l.way_above(z, x);
      }
      if (!found) return failure("no interpolating element", {y, x});
    }
  }
  return {};
}

OrderCheck check_lattice(const Lattice& l) {
  for (Element a = 0; a < l.size(); ++a) {
    for (Element b = 0; b < l.size(); ++b) {
      if (!l.try_join(a, b)) return failure("missing join", {a, b});
      if (!l.try_meet(a, b)) return failure("missing meet", {a, b});
    }
  }
  return {};
}

OrderCheck check_distributive(const Lattice& l) {
  if (auto c = check_lattice(l); !c) return c;
  for (Element a = 0; a < l.size(); ++a)
    for (Element b = 0; b < l.size(); ++b)
      for (Element c = 0; c < l.size(); ++c) {
        const Element lhs = l.meet(a, l.join(b, c));
        const Element rhs = l.join(l.meet(a, b), l.meet(a, c));
        if (lhs != rhs) return failure("distributivity", {a, b, c});
      }
  return {};
}

OrderCheck check_locally_complete(const Lattice& l) {
  const std::uint64_t subsets = std::uint64_t{1} << l.size();
  for (std::uint64_t raw = 0; raw < subsets; ++raw) {
    const auto s = static_cast<ElementSet>(raw);
    if (l.upper_bounds(s) == 0) continue;
    if (!l.supremum(s)) {
      std::vector<Element> members;
      for_each_bit(s, [&](Element x) { members.push_back(x); });
      return failure("bounded subset without supremum", members);
    }
  }
  return {};
}

OrderCheck check_join_continuous(const Lattice& l) {
  if (auto c = check_lattice(l); !c) return c;
  for (ElementSet f : l.filters()) {
    const auto inf = l.infimum(f);
    if (!inf) continue;
    for (Element t = 0; t < l.size(); ++t) {
      ElementSet shifted = 0;
      for_each_bit(f, [&](Element x) { shifted |= ElementSet{1} << l.join(t, x); });
      const auto rhs = l.infimum(shifted);
      if (!rhs || *rhs != l.join(t, *inf)) {
        return failure("join-continuity", {t, *inf});
      }
    }
  }
  return {};
}

OrderCheck check_locally_continuous_frame(const Lattice& l) {
  if (auto c = check_lattice(l); !c) return c;
  if (auto c = check_locally_complete(l); !c) return c;
  if (auto c = check_continuity(l); !c) return c;
  if (auto c = check_distributive(l); !c) return c;
  return {};
}

}  // namespace maxitive

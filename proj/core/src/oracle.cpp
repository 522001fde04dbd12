#include "treespace/oracle.hpp"

#include <algorithm>
#include <map>

namespace treespace::oracle {

namespace {

std::vector<PointAddress> prefixes(const PointAddress& b) {
  std::vector<PointAddress> out;
  for (std::size_t len = 0; len <= b.depth(); ++len) out.push_back(b.prefix(len));
  return out;
}

// Direct successors of x present in the set, grouped by their last step.
std::vector<PointAddress> successors(const PointSet& f, const PointAddress& x) {
  std::vector<PointAddress> out;
  for (auto it = f.upper_bound(x); it != f.end() && it->extends(x); ++it) {
    if (it->depth() == x.depth() + 1) out.push_back(*it);
  }
  return out;
}

// Direct successors of x in the tree whose cones meet the set. They need
// not belong to the set themselves.
std::vector<PointAddress> branches(const PointSet& f, const PointAddress& x) {
  std::set<PointAddress> out;
  for (auto it = f.upper_bound(x); it != f.end() && it->extends(x); ++it) out.insert(it->prefix(x.depth() + 1));
  return {out.begin(), out.end()};
}

// Subsets of the excludable successors to try. All of them when few;
// otherwise the full set and every set missing one element (enough, since
// the diameter only shrinks as more is excluded).
std::vector<std::vector<bool>> exclusion_patterns(std::size_t k) {
  std::vector<std::vector<bool>> out;
  if (k <= 6) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<bool> pick(k);
      for (std::size_t i = 0; i < k; ++i) pick[i] = (mask >> i) & 1U;
      out.push_back(std::move(pick));
    }
    return out;
  }
  out.emplace_back(k, true);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<bool> pick(k, true);
    pick[i] = false;
    out.push_back(std::move(pick));
  }
  return out;
}

// Points of f inside U_x minus the cones of the excluded successors.
std::vector<PointAddress> neighbourhood(const PointSet& f, const PointAddress& x,
                                        const std::vector<PointAddress>& excluded) {
  std::vector<PointAddress> out;
  for (auto it = f.lower_bound(x); it != f.end() && it->extends(x); ++it) {
    const bool cut = std::any_of(excluded.begin(), excluded.end(), [&](const PointAddress& s) { return it->extends(s); });
    if (!cut) out.push_back(*it);
  }
  return out;
}

// Copies of finite groups can always be cut away; ω-copies only below the
// bound, the copy at the bound standing for the infinite remainder.
bool excludable(const TreePresentation& p, const PointAddress& s, std::uint64_t exclusion_bound) {
  return !p[template_of(p, s)].multiplicity.is_omega() || s.steps.back().copy < exclusion_bound;
}

bool is_representative(const TreePresentation& p, const PointAddress& x, std::uint64_t exclusion_bound) {
  for (std::size_t len = 1; len <= x.depth(); ++len) {
    const PointAddress a = x.prefix(len);
    if (!excludable(p, a, exclusion_bound)) return false;
  }
  return true;
}

template <class Test>
PointSet keep_if_all_neighbourhoods(const TreePresentation& p, const PointSet& f, std::uint64_t exclusion_bound,
                                    Test keep) {
  PointSet out;
  for (const auto& x : f) {
    std::vector<PointAddress> candidates;
    for (const auto& s : branches(f, x)) {
      if (excludable(p, s, exclusion_bound)) candidates.push_back(s);
    }
    bool survives = true;
    for (const auto& pick : exclusion_patterns(candidates.size())) {
      std::vector<PointAddress> excluded;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (pick[i]) excluded.push_back(candidates[i]);
      }
      if (!keep(x, neighbourhood(f, x, excluded))) {
        survives = false;
        break;
      }
    }
    if (survives) out.insert(x);
  }
  return out;
}

PointSet all_points(const TreePresentation& p, std::uint64_t copy_bound) {
  const auto v = enumerate_points(p, copy_bound);
  return PointSet(v.begin(), v.end());
}

}  // namespace

Rational distance(const TreePresentation& p, const WeightAssignment& w, const PointAddress& b,
                  const PointAddress& c) {
  const auto pb = prefixes(b);
  const auto pc = prefixes(c);
  const std::set<PointAddress> sb(pb.begin(), pb.end()), sc(pc.begin(), pc.end());
  Rational best = 0;
  auto scan = [&](const std::set<PointAddress>& mine, const std::set<PointAddress>& other) {
    for (const auto& a : mine) {
      if (other.contains(a)) continue;
      const Rational& weight = w[template_of(p, a)];
      if (weight > best) best = weight;
    }
  };
  scan(sb, sc);
  scan(sc, sb);
  return best;
}

std::size_t ordinal_index(const TreePresentation& p, std::uint64_t copy_bound) {
  PointSet left = all_points(p, copy_bound);
  std::size_t rounds = 0;
  while (!left.empty()) {
    PointSet next;
    for (const auto& x : left) {
      if (!successors(left, x).empty()) next.insert(x);
    }
    left = std::move(next);
    ++rounds;
  }
  return rounds;
}

PointSet derive(const TreePresentation& p, const WeightAssignment& w, const PointSet& f, const Rational& epsilon,
                std::uint64_t exclusion_bound) {
  // x itself lies in every neighbourhood, so in an ultrametric the
  // diameter is the largest distance from x.
  return keep_if_all_neighbourhoods(p, f, exclusion_bound, [&](const PointAddress& x, const std::vector<PointAddress>& u) {
    Rational diam = 0;
    for (const auto& y : u) {
      const Rational d = oracle::distance(p, w, x, y);
      if (d > diam) diam = d;
    }
    return diam >= epsilon;
  });
}

PointSet cb_derive(const TreePresentation& p, const PointSet& f, std::uint64_t exclusion_bound) {
  return keep_if_all_neighbourhoods(p, f, exclusion_bound,
                                    [](const PointAddress&, const std::vector<PointAddress>& u) { return u.size() > 1; });
}

CbResult cb_rank(const TreePresentation& p, std::uint64_t exclusion_bound) {
  PointSet f = all_points(p, exclusion_bound + 1);
  CbResult r{0, 0};
  while (!f.empty()) {
    r.final_count = 0;
    for (const auto& x : f) {
      if (is_representative(p, x, exclusion_bound)) ++r.final_count;
    }
    f = cb_derive(p, f, exclusion_bound);
    ++r.rank;
  }
  return r;
}

std::optional<std::size_t> frag_index(const TreePresentation& p, const WeightAssignment& w,
                                      const Rational& epsilon, std::uint64_t exclusion_bound) {
  PointSet f = all_points(p, exclusion_bound + 1);
  std::size_t steps = 0;
  while (!f.empty()) {
    PointSet next = derive(p, w, f, epsilon, exclusion_bound);
    if (next == f) return std::nullopt;
    f = std::move(next);
    ++steps;
  }
  return steps;
}

std::optional<Rational> lipschitz(const TreePresentation& p, const WeightAssignment& w, const SimpleFunction& f,
                                  std::uint64_t copy_bound) {
  const auto points = enumerate_points(p, copy_bound);
  std::vector<Rational> values;
  for (const auto& x : points) values.push_back(evaluate(f, x));
  Rational best = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const Rational diff = abs(values[i] - values[j]);
      if (diff == 0) continue;
      const Rational d = oracle::distance(p, w, points[i], points[j]);
      if (d == 0) return std::nullopt;
      const Rational ratio = diff / d;
      if (ratio > best) best = ratio;
    }
  }
  return best;
}

Rational sup_difference(const TreePresentation& p, const SimpleFunction& f, const SimpleFunction& g,
                        std::uint64_t copy_bound) {
  Rational best = 0;
  for (const auto& x : enumerate_points(p, copy_bound)) {
    const Rational diff = abs(evaluate(f, x) - evaluate(g, x));
    if (diff > best) best = diff;
  }
  return best;
}

}  // namespace treespace::oracle

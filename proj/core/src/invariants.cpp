#include "treespace/invariants.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "treespace/approximation.hpp"
#include "treespace/construction.hpp"
#include "treespace/fragmentation.hpp"
#include "treespace/oracle.hpp"
#include "treespace/topo_indices.hpp"

namespace treespace {

namespace {

class Recorder {
 public:
  void expect(const std::string& name, bool ok, const std::string& detail) {
    auto [it, fresh] = index_.try_emplace(name, checks_.size());
    if (fresh) checks_.push_back(Check{name, true, {}});
    Check& c = checks_[it->second];
    if (!ok && c.pass) {
      c.pass = false;
      c.detail = detail;
    }
  }
  void add(const std::vector<Check>& more, const std::string& prefix) {
    for (const auto& c : more) expect(prefix + c.name, c.pass, c.detail);
  }
  std::vector<Check> take() { return std::move(checks_); }

 private:
  std::vector<Check> checks_;
  std::map<std::string, std::size_t> index_;
};

oracle::PointSet as_points(const TreePresentation& p, const TemplateMarking& f, std::uint64_t bound) {
  oracle::PointSet out;
  for (const auto& x : enumerate_points(p, bound)) {
    if (contains(p, f, x)) out.insert(x);
  }
  return out;
}

}  // namespace

std::vector<Check> check_invariants(const TreePresentation& p, const WeightAssignment& w,
                                    const InvariantOptions& options, const std::optional<SimpleFunction>& g) {
  Recorder rec;
  const std::uint64_t bound = std::max<std::uint64_t>(options.copy_bound, 2);
  const Rational& eps = options.epsilon;

  const auto diags = validate(p);
  rec.expect("presentation_valid", diags.empty(), diags.empty() ? "" : diags.front().path + ": " + diags.front().message);
  if (!diags.empty()) return rec.take();

  // Metric.
  auto points = enumerate_points(p, bound);
  std::vector<PointAddress> sample(points.begin(), points.begin() + std::min(points.size(), options.pair_sample));
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = i; j < sample.size(); ++j) {
      const Rational d = distance(p, w, sample[i], sample[j]);
      rec.expect("distance_matches_oracle", d == oracle::distance(p, w, sample[i], sample[j]),
                 to_string(sample[i]) + " vs " + to_string(sample[j]));
      rec.expect("distance_symmetric", d == distance(p, w, sample[j], sample[i]), to_string(sample[i]));
      rec.expect("distance_zero_on_diagonal", i != j || d == 0, to_string(sample[i]));
    }
  }
  const std::size_t triple = std::min<std::size_t>(sample.size(), 24);
  for (std::size_t i = 0; i < triple; ++i) {
    for (std::size_t j = 0; j < triple; ++j) {
      for (std::size_t k = 0; k < triple; ++k) {
        const Rational ab = distance(p, w, sample[i], sample[j]);
        const Rational bc = distance(p, w, sample[j], sample[k]);
        const Rational ac = distance(p, w, sample[i], sample[k]);
        rec.expect("strong_triangle_inequality", ac <= std::max(ab, bc),
                   to_string(sample[i]) + ", " + to_string(sample[j]) + ", " + to_string(sample[k]));
      }
    }
  }

  // Topological indices.
  const Ordinal o = ordinal_index(p);
  const Ordinal beta = interval_type(p);
  const CbRank cb = cb_rank(p);
  rec.expect("ordinal_index_matches_oracle", o == Ordinal(static_cast<std::uint64_t>(oracle::ordinal_index(p, bound))),
             "o(T) = " + to_string(o));
  rec.expect("cb_rank_at_most_ordinal_index", cb.rank <= o, "CB = " + to_string(cb.rank) + ", o = " + to_string(o));
  rec.expect("interval_type_below_omega_power", beta < omega_pow(o),
             "β = " + to_string(beta) + ", o = " + to_string(o));
  const auto brute_cb = oracle::cb_rank(p, bound);
  rec.expect("cb_rank_matches_oracle",
             cb.rank == Ordinal(static_cast<std::uint64_t>(brute_cb.rank)) &&
                 cb.final_count == Natural(static_cast<unsigned long>(brute_cb.final_count)),
             "closed form (" + to_string(cb.rank) + ", " + cb.final_count.get_str() + "), oracle (" +
                 std::to_string(brute_cb.rank) + ", " + std::to_string(brute_cb.final_count) + ")");
  const auto cb_seq = cb_sequence(p);
  rec.expect("cb_sequence_length_is_rank", Ordinal(static_cast<std::uint64_t>(cb_seq.size() - 1)) == cb.rank,
             std::to_string(cb_seq.size() - 1) + " derivation steps");
  rec.expect("interval_roundtrip", interval_type(tree_of_interval(beta)) == beta, "β = " + to_string(beta));
  {
    std::set<Ordinal> images;
    bool within = true;
    for (const auto& x : points) {
      const Ordinal a = point_to_ordinal(p, x);
      within = within && a <= beta;
      images.insert(a);
    }
    rec.expect("point_to_ordinal_injective", images.size() == points.size(), "collision on the enumeration");
    rec.expect("point_to_ordinal_in_interval", within, "image exceeds β");
  }

  // Derivation.
  const auto seq = derivation_sequence(p, w, eps, TemplateMarking::full(p));
  const auto frag = frag_index(p, w, eps, TemplateMarking::full(p));
  const auto brute_frag = oracle::frag_index(p, w, eps, bound);
  rec.expect("frag_matches_oracle",
             frag.has_value() == brute_frag.has_value() &&
                 (!frag || *frag == Ordinal(static_cast<std::uint64_t>(*brute_frag))),
             "frag = " + (frag ? to_string(*frag) : std::string("infinite")));
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    rec.expect("derive_shrinks", seq[i + 1].subset_of(seq[i]) && (seq[i + 1].is_empty() || seq[i + 1] != seq[i]),
               "step " + std::to_string(i));
    rec.expect("derive_closed", is_closed(p, seq[i + 1]), "step " + std::to_string(i));
    for (std::uint64_t b : {bound, bound + 1}) {
      const auto brute = oracle::derive(p, w, as_points(p, seq[i], b + 1), eps, b);
      for (const auto& x : enumerate_points(p, b)) {
        const bool symbolic = contains(p, seq[i + 1], x);
        rec.expect("derive_matches_oracle", symbolic == brute.contains(x),
                   "step " + std::to_string(i) + " at " + to_string(x) + " with copy bound " + std::to_string(b));
      }
    }
    const auto finer = derive_once(p, seq[i], w, eps / 2);
    rec.expect("derive_monotone_in_epsilon", seq[i + 1].subset_of(finer), "step " + std::to_string(i));
  }
  rec.expect("frag_below_node_count_bound",
             frag && *frag <= Ordinal(static_cast<std::uint64_t>(p.size() + 1)), "node count " + std::to_string(p.size()));
  {
    const auto unit = WeightAssignment::uniform(p, 1);
    const auto bridge = derivation_sequence(p, unit, Rational(1, 2), TemplateMarking::full(p));
    rec.expect("weight_one_bridge", bridge == cb_seq, "derivation and Cantor–Bendixson sequences differ");
  }

  // Construction tree and quotient map.
  if (frag) {
    const ConstructionTree n = build_construction_tree(p, w, eps);
    rec.add(construction_report(n, bound).checks, "construction.");
    for (const auto& x : enumerate_points(p, bound)) {
      const auto q = quotient_map(n, x);
      rec.expect("quotient_is_smallest_element", member(n.descriptor(q), n.source.to_refined(x)), to_string(x));
    }
  }

  if (g) {
    const auto gd = validate(p, *g);
    rec.expect("function_valid", gd.empty(), gd.empty() ? "" : gd.front().path + ": " + gd.front().message);
    if (gd.empty()) {
      const std::uint64_t fb = max_explicit_count(*g) + 2;
      const auto l = lipschitz_bound(p, *g, w);
      const auto brute_l = oracle::lipschitz(p, w, *g, fb);
      rec.expect("lipschitz_matches_oracle", l == brute_l,
                 "symbolic " + (l ? format_rational(*l) : std::string("infinite")));
      if (l && frag) {
        const Approximation a = approximate(p, w, *g, eps, bound);
        rec.add(a.report.checks, "approximation.");
        const std::uint64_t yb = std::max(fb, max_explicit_count(a.y) + 2);
        rec.expect("approximation.error_matches_oracle",
                   *a.report.error == oracle::sup_difference(p, *g, a.y, yb),
                   "symbolic error " + format_rational(*a.report.error));
      }
    }
  }
  return rec.take();
}

}  // namespace treespace

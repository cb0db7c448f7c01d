#include "ordertop/gallery.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "ordertop/convergence.hpp"
#include "ordertop/errors.hpp"

namespace ordertop {

using nlohmann::json;

namespace {

json labels_json(const FinitePoset& p, const Subset& s) { return p.labels_of(s); }

std::optional<std::string> label_or_null(const FinitePoset& p, std::optional<Element> e) {
  if (!e) return std::nullopt;
  return p.label(*e);
}

json opt_json(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

}  // namespace

WolkTruncation wolk_truncate(std::size_t N) {
  if (N == 0) throw ParameterOutOfRange("Wolk truncation needs N >= 1");
  std::vector<std::string> labels;
  for (std::size_t n = 1; n <= N; ++n) labels.push_back("a" + std::to_string(n));
  for (std::size_t n = 1; n <= N; ++n) labels.push_back("b" + std::to_string(n));
  labels.push_back("bot");
  labels.push_back("top");
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t n = 1; n <= N; ++n) {
    covers.emplace_back("bot", "a" + std::to_string(n));
    covers.emplace_back("b" + std::to_string(n), "top");
    for (std::size_t m = n; m <= N; ++m)
      covers.emplace_back("a" + std::to_string(n), "b" + std::to_string(m));
  }
  WolkTruncation t;
  t.N = N;
  t.poset = FinitePoset::from_covers(std::move(labels), covers);
  return t;
}

Certificate wolk_no_directed_sup_one(const FinitePoset& p, std::size_t N, std::size_t bound) {
  if (N > bound || p.size() > 62)
    throw SizeBoundExceeded("Wolk truncation N=" + std::to_string(N) +
                            " exceeds the exhaustive bound " + std::to_string(bound));
  Certificate c;
  c.claim = "wolk_no_directed_sup_one";
  c.parameters = {{"N", N}, {"bound", bound}};
  const Element top = p.index_of("top");
  const std::size_t n = p.size();

  std::uint64_t directed = 0, with_sup_top = 0;
  std::optional<Subset> violation, largest;
  std::optional<Element> largest_sup;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Subset d = Subset::from_mask(n, mask);
    if (!is_directed(p, d)) continue;
    ++directed;
    auto s = sup(p, d);
    if (s == top) {
      ++with_sup_top;
      if (!d.test(top) && !violation) violation = d;
    }
    if (!d.test(top) && (!largest || d.count() > largest->count())) {
      largest = d;
      largest_sup = s;
    }
  }
  c.pass = !violation.has_value();
  c.evidence["subsets_enumerated"] = (std::uint64_t{1} << n);
  c.evidence["directed_subsets"] = directed;
  c.evidence["directed_with_sup_top"] = with_sup_top;
  c.evidence["violation"] = violation ? labels_json(p, *violation) : json(nullptr);
  if (largest) {
    c.evidence["largest_directed_without_top"] = {
        {"subset", labels_json(p, *largest)}, {"sup", opt_json(label_or_null(p, largest_sup))}};
  } else {
    c.evidence["largest_directed_without_top"] = nullptr;
  }
  return c;
}

Certificate wolk_no_directed_sup_one(std::size_t N, std::size_t bound) {
  if (N > bound)
    throw SizeBoundExceeded("Wolk truncation N=" + std::to_string(N) +
                            " exceeds the exhaustive bound " + std::to_string(bound));
  return wolk_no_directed_sup_one(wolk_truncate(N).poset, N, bound);
}

Certificate wolk_o3_to_top(std::size_t N) {
  if (N < 2) throw ParameterOutOfRange("wolk_o3_to_top needs N >= 2");
  auto t = wolk_truncate(N);
  const FinitePoset& p = t.poset;
  Certificate c;
  c.claim = "wolk_o3_to_top";
  c.parameters = {{"N", N}};

  Subset A = p.empty_subset();
  for (std::size_t n = 1; n <= N; ++n) A.set(t.a(n));
  const Element top = t.top();
  const Element bN = t.b(N);

  Subset ub = upper_bounds(p, A);
  Subset ub_inner = ub;
  ub_inner.reset(bN);
  bool inner_is_top = ub_inner == Subset::from_indices(p.size(), {top});

  // sup A once the boundary element bN is taken out.
  Subset keep = p.full_subset();
  keep.reset(bN);
  auto inner = induced_subposet(p, keep);
  Subset A_inner = inner.empty_subset();
  for (std::size_t n = 1; n <= N; ++n) A_inner.set(inner.index_of("a" + std::to_string(n)));
  auto sup_inner = sup(inner, A_inner);
  bool sup_inner_top = sup_inner && inner.label(*sup_inner) == "top";

  // b1, ..., bN held at bN. For every a_n in M and top in the filtered
  // family the sequence is eventually in [a_n, top].
  std::vector<Element> prefix;
  for (std::size_t n = 1; n < N; ++n) prefix.push_back(t.b(n));
  LassoSequence s(prefix, {bN});
  bool sandwiched = true;
  json residual_checks = json::array();
  for (std::size_t n = 1; n <= N; ++n) {
    Subset r = residual(p, s, n - 1);
    bool ok = r.is_subset_of(p.up_set(t.a(n)) & p.down_set(top));
    sandwiched &= ok;
    residual_checks.push_back({{"from_index", n}, {"within_interval", ok}});
  }
  auto inf_top = inf(p, Subset::from_indices(p.size(), {top}));
  bool inf_ok = inf_top == top;

  Subset lower_union = p.empty_subset();
  for (std::size_t k = 0; k <= s.stable_from(); ++k) lower_union |= lower_bounds(p, residual(p, s, k));
  bool union_has_A = A.is_subset_of(lower_union);

  auto v_top = o3_converges(p, s, top);
  auto v_bN = o3_converges(p, s, bN);

  c.pass = inner_is_top && sup_inner_top && sandwiched && inf_ok && union_has_A;
  c.evidence = {
      {"M", labels_json(p, A)},
      {"N_family", json::array({"top"})},
      {"upper_bounds_of_A", labels_json(p, ub)},
      {"boundary_elements", json::array({p.label(bN)})},
      {"upper_bounds_of_A_without_boundary", labels_json(p, ub_inner)},
      {"sup_A_in_truncation", opt_json(label_or_null(p, sup(p, A)))},
      {"sup_A_without_boundary", opt_json(label_or_null(inner, sup_inner))},
      {"inf_of_N_family", opt_json(label_or_null(p, inf_top))},
      {"eventually_in_interval", residual_checks},
      {"lower_bound_union_contains_A", union_has_A},
      {"truncated_sequence_o3_to_top", v_top.converges},
      {"truncated_sequence_o3_to_bN", v_bN.converges},
  };
  return c;
}

std::string olejcek_label(char letter, std::size_t k, long i) {
  return std::string(1, letter) + std::to_string(k) + "(" + std::to_string(i) + ")";
}

std::string olejcek_zero_label(std::size_t k) { return "0_" + std::to_string(k); }

bool OlejcekTruncation::is_boundary(const std::string& label) const {
  if (label.size() < 4 || (label[0] != 'a' && label[0] != 'b')) return false;
  auto open = label.find('(');
  if (open == std::string::npos) return false;
  std::size_t k = std::stoul(label.substr(1, open - 1));
  long i = std::stol(label.substr(open + 1));
  return k == K || static_cast<std::size_t>(i < 0 ? -i : i) == N;
}

OlejcekTruncation olejcek_truncate(std::size_t K, std::size_t N, const OlejcekRules& rules) {
  if (K == 0 || N == 0) throw ParameterOutOfRange("Olejcek truncation needs K, N >= 1");
  const long n = static_cast<long>(N);
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t k = 1; k <= K; ++k) {
    for (char letter : {'a', 'b'}) {
      for (long i = 1; i <= n; ++i) labels.push_back(olejcek_label(letter, k, i));
      for (long i = 1; i <= n; ++i) labels.push_back(olejcek_label(letter, k, -i));
      for (long i = 1; i < n; ++i) {
        covers.emplace_back(olejcek_label(letter, k, i + 1), olejcek_label(letter, k, i));
        covers.emplace_back(olejcek_label(letter, k, -i), olejcek_label(letter, k, -(i + 1)));
      }
      covers.emplace_back(olejcek_label(letter, k, -n), olejcek_zero_label(k));
      covers.emplace_back(olejcek_zero_label(k), olejcek_label(letter, k, n));
    }
    labels.push_back(olejcek_zero_label(k));
    for (long i = 1; i <= n; ++i) {
      covers.emplace_back(olejcek_label('a', k, i), olejcek_label('b', k, i));
      covers.emplace_back(olejcek_label('b', k, -i), olejcek_label('a', k, -i));
    }
    if (k < K) {
      covers.emplace_back(olejcek_label('a', k, -1), olejcek_label('a', k + 1, -1));
      covers.emplace_back(olejcek_label('a', k + 1, 1), olejcek_label('a', k, 1));
    }
    if (!rules.drop_a_minus_one_below_e) covers.emplace_back(olejcek_label('a', k, -1), "e");
    covers.emplace_back("e", olejcek_label('a', k, 1));
  }
  labels.push_back("e");
  labels.push_back("bot");
  labels.push_back("top");
  for (const auto& l : labels) {
    if (l == "bot" || l == "top") continue;
    covers.emplace_back("bot", l);
    covers.emplace_back(l, "top");
  }

  OlejcekTruncation t;
  t.K = K;
  t.N = N;
  t.poset_L_hat = FinitePoset::from_covers(labels, covers);
  if (auto bad = find_non_lattice_pair(t.poset_L_hat)) {
    throw TruncationNotLattice("pair (" + t.poset_L_hat.label(bad->first) + ", " +
                               t.poset_L_hat.label(bad->second) +
                               ") has no supremum or infimum");
  }
  Subset keep = t.poset_L_hat.full_subset();
  for (std::size_t k = 1; k <= K; ++k) keep.reset(t.poset_L_hat.index_of(olejcek_zero_label(k)));
  t.poset_L = induced_subposet(t.poset_L_hat, keep);
  return t;
}

FinitePoset olejcek_boundary_opened(const OlejcekTruncation& t) {
  if (t.N < 2) throw ParameterOutOfRange("opening the boundary needs N >= 2");
  const FinitePoset& L = t.poset_L;
  Subset keep = L.full_subset();
  const long n = static_cast<long>(t.N);
  for (std::size_t k = 1; k <= t.K; ++k) {
    keep.reset(L.index_of(olejcek_label('a', k, n)));
    keep.reset(L.index_of(olejcek_label('a', k, -n)));
  }
  return induced_subposet(L, keep);
}

namespace {

// Labels in `s` that are not boundary elements of `t`.
std::set<std::string> inner_labels(const OlejcekTruncation& t, const Subset& s) {
  std::set<std::string> out;
  for (const auto& l : t.poset_L_hat.labels_of(s))
    if (!t.is_boundary(l)) out.insert(l);
  return out;
}

Subset family(const OlejcekTruncation& t, long i, std::size_t upto) {
  const FinitePoset& p = t.poset_L_hat;
  Subset s = p.empty_subset();
  for (std::size_t k = 1; k <= upto; ++k) s.set(p.index_of(olejcek_label('a', k, i)));
  return s;
}

}  // namespace

Certificate olejcek_zero_sequence_converges(std::size_t K, std::size_t N, std::size_t window_start,
                                            const OlejcekRules& rules) {
  if (window_start == 0 || K < window_start + 2)
    throw WindowTooSmall("window [" + std::to_string(window_start) + ", " + std::to_string(K) +
                         "] spans fewer than 3 truncations");
  auto t = olejcek_truncate(K, N, rules);
  const FinitePoset& p = t.poset_L_hat;
  Certificate c;
  c.claim = "olejcek_zero_sequence_converges";
  c.parameters = {{"K", K},
                  {"N", N},
                  {"window", {window_start, K}},
                  {"drop_a_minus_one_below_e", rules.drop_a_minus_one_below_e}};

  // (a) every a_i(-1) with i <= k lies below the whole tail {0_j : j >= k}.
  bool tails_ok = true;
  json tails = json::array();
  for (std::size_t k = 1; k <= K; ++k) {
    Subset tail = p.empty_subset();
    for (std::size_t j = k; j <= K; ++j) tail.set(p.index_of(olejcek_zero_label(j)));
    bool ok = family(t, -1, k).is_subset_of(lower_bounds(p, tail));
    tails_ok &= ok;
    tails.push_back({{"k", k}, {"contains_a_minus_one_up_to_k", ok}});
  }
  auto sup_family = sup(p, family(t, -1, K));
  bool sup_at_boundary = sup_family && p.label(*sup_family) == olejcek_label('a', K, -1);

  // (b) bounds that persist over the window, boundary elements excluded.
  std::optional<std::set<std::string>> upper_persistent, lower_persistent;
  json per_truncation = json::array();
  for (std::size_t k2 = window_start; k2 <= K; ++k2) {
    auto tk = olejcek_truncate(k2, N, rules);
    Subset ub = upper_bounds(tk.poset_L_hat, family(tk, -1, k2));
    Subset lb = lower_bounds(tk.poset_L_hat, family(tk, 1, k2));
    auto ub_inner = inner_labels(tk, ub);
    auto lb_inner = inner_labels(tk, lb);
    json boundary = json::array();
    for (const auto& l : tk.poset_L_hat.labels_of(ub))
      if (tk.is_boundary(l)) boundary.push_back(l);
    per_truncation.push_back({{"K", k2}, {"upper_bounds_boundary", boundary}});
    auto intersect = [](std::optional<std::set<std::string>>& acc, const std::set<std::string>& s) {
      if (!acc) {
        acc = s;
        return;
      }
      std::set<std::string> out;
      std::set_intersection(acc->begin(), acc->end(), s.begin(), s.end(),
                            std::inserter(out, out.begin()));
      acc = std::move(out);
    };
    intersect(upper_persistent, ub_inner);
    intersect(lower_persistent, lb_inner);
  }
  auto to_subset = [&](const std::set<std::string>& s) {
    return p.subset_of(std::vector<std::string>(s.begin(), s.end()));
  };
  Subset up_set = to_subset(*upper_persistent);
  Subset low_set = to_subset(*lower_persistent);
  auto least_up = least_element(p, up_set);
  auto greatest_low = greatest_element(p, low_set);
  bool up_ok = least_up && p.label(*least_up) == "e";
  bool low_ok = greatest_low && p.label(*greatest_low) == "e";

  // The truncated zero sequence 0_1, ..., 0_K held at 0_K.
  std::vector<Element> zeros;
  for (std::size_t k = 1; k < K; ++k) zeros.push_back(p.index_of(olejcek_zero_label(k)));
  LassoSequence z(zeros, {p.index_of(olejcek_zero_label(K))});
  bool o3_e = o3_converges(p, z, p.index_of("e")).converges;
  bool o3_last = o3_converges(p, z, p.index_of(olejcek_zero_label(K))).converges;

  c.pass = tails_ok && sup_at_boundary && up_ok && low_ok;
  c.evidence = {
      {"tail_lower_bounds", tails},
      {"sup_a_minus_one_family", opt_json(label_or_null(p, sup_family))},
      {"sup_is_boundary_element", sup_at_boundary},
      {"persistent_upper_bounds", labels_json(p, up_set)},
      {"least_persistent_upper_bound", opt_json(label_or_null(p, least_up))},
      {"persistent_lower_bounds_of_a_one_family", labels_json(p, low_set)},
      {"greatest_persistent_lower_bound", opt_json(label_or_null(p, greatest_low))},
      {"window_truncations", per_truncation},
      {"truncated_zero_sequence_o3_to_e", o3_e},
      {"truncated_zero_sequence_o3_to_last_zero", o3_last},
  };
  return c;
}

Certificate olejcek_b_set_o1_closed(std::size_t K, std::size_t N, std::size_t bound,
                                    std::size_t max_chains) {
  if (K > bound || N > bound)
    throw SizeBoundExceeded("Olejcek b-set check limited to K, N <= " + std::to_string(bound));
  auto t = olejcek_truncate(K, N);
  const FinitePoset& L = t.poset_L;
  const std::size_t n = L.size();
  Certificate c;
  c.claim = "olejcek_b_set_o1_closed";
  c.parameters = {{"K", K}, {"N", N}};

  // copy index of each element (0 for e, bot, top) and the spine
  // {a_k(1), a_k(-1), e, bot, top}.
  std::vector<std::size_t> copy(n, 0);
  Subset spine = L.empty_subset();
  Subset B = L.empty_subset();
  for (Element x = 0; x < n; ++x) {
    const std::string& l = L.label(x);
    auto open = l.find('(');
    if (open == std::string::npos) {
      spine.set(x);
      continue;
    }
    copy[x] = std::stoul(l.substr(1, open - 1));
    long i = std::stol(l.substr(open + 1));
    if (l[0] == 'b') B.set(x);
    if (l[0] == 'a' && (i == 1 || i == -1)) spine.set(x);
  }

  // Maximal chains are the bot-to-top paths of the Hasse diagram.
  std::vector<std::vector<Element>> up_covers(n);
  for (auto [lo, hi] : L.covers()) up_covers[lo].push_back(hi);
  const Element bot = L.index_of("bot"), top = L.index_of("top");
  std::size_t chains = 0;
  std::optional<std::vector<Element>> run_violation, single_copy_counterexample;
  std::vector<Element> path{bot};
  std::function<void(Element)> walk = [&](Element x) {
    if (x == top) {
      if (++chains > max_chains)
        throw SizeBoundExceeded("more than " + std::to_string(max_chains) + " maximal chains");
      std::size_t run_copy = 0;
      std::set<std::size_t> copies;
      for (Element y : path) {
        if (spine.test(y)) {
          run_copy = 0;
          continue;
        }
        copies.insert(copy[y]);
        if (run_copy && run_copy != copy[y] && !run_violation) run_violation = path;
        run_copy = copy[y];
      }
      // Literal reading: one copy plus the spine for the whole chain.
      if (copies.size() > 1 && !single_copy_counterexample) single_copy_counterexample = path;
      return;
    }
    for (Element y : up_covers[x]) {
      path.push_back(y);
      walk(y);
      path.pop_back();
    }
  };
  walk(bot);

  // Chains inside B: every element with B-elements strictly below and above
  // it belongs to one copy shared with the rest of the chain interior, and a
  // comparison across copies starts at some b_j(-1) or ends at some b_m(1).
  std::vector<long> index(n, 0);
  for (Element x = 0; x < n; ++x) {
    const std::string& l = L.label(x);
    auto open = l.find('(');
    if (open != std::string::npos) index[x] = std::stol(l.substr(open + 1));
  }
  auto strictly = [&](const Subset& s, Element y) {
    Subset r = s & B;
    r.reset(y);
    return r.any();
  };
  std::optional<std::pair<Element, Element>> b_chain_violation;
  B.for_each([&](Element y) {
    Subset above = L.up_set(y) & B;
    above.reset(y);
    above.for_each([&](Element z) {
      if (copy[y] == copy[z] || b_chain_violation) return;
      bool inner = strictly(L.down_set(y), y) && strictly(L.up_set(z), z);
      if (inner || (index[y] != -1 && index[z] != 1)) b_chain_violation = std::make_pair(y, z);
    });
  });

  // O1 limits of lassos valued in B (cycle length <= 2; a prefix never
  // changes a verdict).
  auto members = B.members();
  std::size_t lassos = 0;
  json outside = json::array();
  auto check = [&](const LassoSequence& s) {
    ++lassos;
    for (Element x = 0; x < n; ++x)
      if (!B.test(x) && o1_converges(L, s, x).converges)
        outside.push_back({{"cycle", L.labels_of(Subset::from_indices(n, s.cycle()))},
                           {"limit", L.label(x)}});
  };
  for (Element u : members) {
    check(LassoSequence({}, {u}));
    for (Element v : members) check(LassoSequence({}, {u, v}));
  }

  c.pass = !run_violation && !b_chain_violation && outside.empty();
  auto path_json = [&](const std::optional<std::vector<Element>>& ch) {
    if (!ch) return json(nullptr);
    json out = json::array();
    for (Element y : *ch) out.push_back(L.label(y));
    return out;
  };
  c.evidence = {
      {"maximal_chains", chains},
      {"chain_run_violation", path_json(run_violation)},
      {"chain_spanning_copies", path_json(single_copy_counterexample)},
      {"b_chain_violation",
       b_chain_violation ? json::array({L.label(b_chain_violation->first),
                                        L.label(b_chain_violation->second)})
                         : json(nullptr)},
      {"b_lassos_checked", lassos},
      {"o1_limits_outside_b", outside},
      {"e_in_b", B.test(L.index_of("e"))},
  };
  // Why B is not closed in the completion-induced topology: the zeros
  // accumulate at e, which lies outside B.
  if (K >= 3) {
    auto z = olejcek_zero_sequence_converges(K, N, K >= 4 ? 2 : 1);
    c.evidence["zero_sequence"] = {{"status", z.pass ? "pass" : "fail"},
                                   {"least_persistent_upper_bound",
                                    z.evidence["least_persistent_upper_bound"]}};
  } else {
    c.evidence["zero_sequence"] = nullptr;
  }
  return c;
}

}  // namespace ordertop

#include "ordertop/completion.hpp"

#include <random>
#include <unordered_map>

namespace ordertop {

Subset cut_closure(const FinitePoset& p, const Subset& a) {
  return lower_bounds(p, upper_bounds(p, a));
}

std::vector<Subset> enumerate_cuts(const FinitePoset& p) {
  const std::size_t n = p.size();
  std::vector<Subset> cuts;
  Subset a = cut_closure(p, p.empty_subset());
  const Subset full = p.full_subset();
  while (true) {
    cuts.push_back(a);
    if (a == full) break;
    // NextClosure: the lectically next closed set after `a`.
    bool advanced = false;
    for (std::size_t i = n; i-- > 0;) {
      if (a.test(i)) {
        a.reset(i);
        continue;
      }
      Subset candidate = a;
      candidate.set(i);
      Subset b = cut_closure(p, candidate);
      if ((b - a).prefix(i).none()) {
        a = std::move(b);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;  // unreachable: the full set is always closed
  }
  return cuts;
}

std::string cut_label(const FinitePoset& p, const Subset& cut) {
  std::string s = "{";
  bool first = true;
  cut.for_each([&](Element e) {
    if (!first) s += ',';
    s += p.label(e);
    first = false;
  });
  return s + "}";
}

std::optional<Element> Completion::index_of_cut(const Subset& s) const {
  // Cuts are sorted lectically, so binary search applies.
  std::size_t lo = 0, hi = cuts.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (Bitset::lectic_less(cuts[mid], s))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < cuts.size() && cuts[lo] == s) return lo;
  return std::nullopt;
}

Completion dm_complete(const FinitePoset& p) {
  Completion c;
  c.base = p;
  c.cuts = enumerate_cuts(p);
  const std::size_t m = c.cuts.size();
  std::vector<std::string> labels;
  labels.reserve(m);
  std::vector<Bitset> up(m, Bitset(m));
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back(cut_label(p, c.cuts[i]));
    for (std::size_t j = 0; j < m; ++j)
      if (c.cuts[i].is_subset_of(c.cuts[j])) up[i].set(j);
  }
  c.lattice = FinitePoset::from_relation(std::move(labels), std::move(up));
  c.embedding.resize(p.size());
  for (Element x = 0; x < p.size(); ++x) c.embedding[x] = *c.index_of_cut(p.down_set(x));
  return c;
}

bool CompletionReport::all_pass() const {
  for (const auto& r : properties)
    if (!r.pass) return false;
  return true;
}

namespace {

constexpr const char* kPropertyText[] = {
    "",
    "A^- is a cut for every subset A",
    "sup of a family of cuts is (union)^{+-}, inf is the intersection",
    "(<-,x] is a cut and x -> (<-,x] is an order isomorphism",
    "the embedded base is join-dense and meet-dense",
    "the embedding preserves and reflects existing suprema and infima",
    "A^- = inf phi[A] and A^{+-} = sup phi[A]",
    "inf phi[A^+] = sup phi[A] and sup phi[A^-] = inf phi[A]",
};

class Checker {
 public:
  Checker(const Completion& c, CompletionReport& report) : c_(c), report_(report) {
    for (int k = 1; k <= 7; ++k) {
      PropertyResult r;
      r.property = k;
      r.description = kPropertyText[k];
      report_.properties.push_back(r);
    }
  }

  void fail(int prop, const Subset* subset, std::string expected, std::string got) {
    auto& r = report_.properties[prop - 1];
    if (!r.pass) return;  // keep the first witness
    r.pass = false;
    if (subset) r.witness_subset = c_.base.labels_of(*subset);
    r.expected = std::move(expected);
    r.got = std::move(got);
  }

  std::string lattice_label(std::optional<Element> e) const {
    return e ? c_.lattice.label(*e) : std::string("(none)");
  }
  std::string cut_text(const Subset& s) const { return cut_label(c_.base, s); }

  Subset image(const Subset& a) const {
    Subset img = c_.lattice.empty_subset();
    a.for_each([&](Element x) { img.set(c_.embedding[x]); });
    return img;
  }

  // Properties that quantify over one subset A of the base.
  void check_subset(const Subset& a) {
    const FinitePoset& p = c_.base;
    const FinitePoset& l = c_.lattice;
    Subset lower = lower_bounds(p, a);
    Subset upper = upper_bounds(p, a);
    Subset closed = lower_bounds(p, upper);

    auto lower_idx = c_.index_of_cut(lower);
    if (!lower_idx || cut_closure(p, lower) != lower)
      fail(1, &a, "A^- = " + cut_text(lower) + " is a cut", "not a cut");

    Subset img = image(a);
    auto sup_img = sup(l, img);
    auto inf_img = inf(l, img);

    // (6)
    if (!inf_img || !lower_idx || *inf_img != *lower_idx)
      fail(6, &a, "inf phi[A] = " + cut_text(lower), lattice_label(inf_img));
    auto closed_idx = c_.index_of_cut(closed);
    if (!sup_img || !closed_idx || *sup_img != *closed_idx)
      fail(6, &a, "sup phi[A] = " + cut_text(closed), lattice_label(sup_img));

    // (7)
    auto inf_up = inf(l, image(upper));
    if (inf_up != sup_img)
      fail(7, &a, "inf phi[A^+] = sup phi[A] = " + lattice_label(sup_img), lattice_label(inf_up));
    auto sup_down = sup(l, image(lower));
    if (sup_down != inf_img)
      fail(7, &a, "sup phi[A^-] = inf phi[A] = " + lattice_label(inf_img), lattice_label(sup_down));

    // (5) both directions, for suprema and infima.
    auto sup_base = sup(p, a);
    auto inf_base = inf(p, a);
    if (sup_base && sup_img != c_.embedding[*sup_base])
      fail(5, &a, "sup phi[A] = phi(" + p.label(*sup_base) + ")", lattice_label(sup_img));
    if (inf_base && inf_img != c_.embedding[*inf_base])
      fail(5, &a, "inf phi[A] = phi(" + p.label(*inf_base) + ")", lattice_label(inf_img));
    for (Element x = 0; x < p.size(); ++x) {
      if (sup_img == c_.embedding[x] && sup_base != x)
        fail(5, &a, "sup A = " + p.label(x),
             sup_base ? p.label(*sup_base) : std::string("(none)"));
      if (inf_img == c_.embedding[x] && inf_base != x)
        fail(5, &a, "inf A = " + p.label(x),
             inf_base ? p.label(*inf_base) : std::string("(none)"));
    }
  }

  // (2) for one family of cuts, given as lattice indices.
  void check_family(const Subset& family) {
    const FinitePoset& p = c_.base;
    Subset uni = p.empty_subset();
    Subset cap = p.full_subset();
    family.for_each([&](Element i) {
      uni |= c_.cuts[i];
      cap &= c_.cuts[i];
    });
    Subset join = cut_closure(p, uni);
    auto got_sup = sup(c_.lattice, family);
    auto got_inf = inf(c_.lattice, family);
    auto want_sup = c_.index_of_cut(join);
    auto want_inf = c_.index_of_cut(cap);
    if (!want_sup || got_sup != want_sup)
      fail(2, nullptr, "sup of family " + cut_label(c_.lattice, family) + " = " + cut_text(join),
           lattice_label(got_sup));
    if (!want_inf || got_inf != want_inf)
      fail(2, nullptr, "inf of family " + cut_label(c_.lattice, family) + " = " + cut_text(cap),
           lattice_label(got_inf));
  }

  void check_embedding() {
    const FinitePoset& p = c_.base;
    const FinitePoset& l = c_.lattice;
    for (Element x = 0; x < p.size(); ++x) {
      const Subset& principal = p.down_set(x);
      auto idx = c_.index_of_cut(principal);
      if (!idx || cut_closure(p, principal) != principal || c_.embedding[x] != *idx) {
        Subset w = Subset::from_indices(p.size(), {x});
        fail(3, &w, "phi(" + p.label(x) + ") = " + cut_text(principal),
             c_.embedding[x] < l.size() ? l.label(c_.embedding[x]) : "(out of range)");
      }
    }
    for (Element x = 0; x < p.size(); ++x)
      for (Element y = 0; y < p.size(); ++y) {
        bool base_le = p.leq(x, y);
        bool lat_le = l.leq(c_.embedding[x], c_.embedding[y]);
        if (base_le != lat_le || (x != y && c_.embedding[x] == c_.embedding[y])) {
          Subset w = Subset::from_indices(p.size(), {x, y});
          fail(3, &w,
               p.label(x) + (base_le ? " <= " : " !<= ") + p.label(y) + " mirrored in the lattice",
               l.label(c_.embedding[x]) + (lat_le ? " <= " : " !<= ") +
                   l.label(c_.embedding[y]));
        }
      }
  }

  void check_density() {
    const FinitePoset& l = c_.lattice;
    Subset image_all = image(c_.base.full_subset());
    for (Element a = 0; a < l.size(); ++a) {
      Subset below = image_all & l.down_set(a);
      Subset above = image_all & l.up_set(a);
      auto j = sup(l, below);
      auto m = inf(l, above);
      if (j != a) fail(4, nullptr, "join of embedded elements below " + l.label(a), lattice_label(j));
      if (m != a) fail(4, nullptr, "meet of embedded elements above " + l.label(a), lattice_label(m));
    }
  }

 private:
  const Completion& c_;
  CompletionReport& report_;
};

}  // namespace

CompletionReport verify_completion_properties(const Completion& c, const VerifyOptions& opts) {
  CompletionReport report;
  Checker checker(c, report);
  const std::size_t n = c.base.size();
  const std::size_t m = c.lattice.size();
  std::mt19937_64 rng(opts.seed);

  checker.check_embedding();
  checker.check_density();

  report.exhaustive = n <= opts.exhaustive_bound && n < 63;
  if (report.exhaustive) {
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask)
      checker.check_subset(Subset::from_mask(n, mask));
    report.subsets_checked = total;
  } else {
    for (std::size_t s = 0; s < opts.samples; ++s) {
      Subset a(n);
      for (Element x = 0; x < n; ++x)
        if (rng() & 1U) a.set(x);
      checker.check_subset(a);
    }
    report.subsets_checked = opts.samples;
  }

  // Families: empty, everything, all pairs when affordable, random families.
  checker.check_family(Subset(m));
  checker.check_family(Subset::full(m));
  if (m <= 128) {
    for (Element i = 0; i < m; ++i)
      for (Element j = i; j < m; ++j) checker.check_family(Subset::from_indices(m, {i, j}));
  } else {
    for (std::size_t s = 0; s < opts.family_samples; ++s)
      checker.check_family(Subset::from_indices(m, {rng() % m, rng() % m}));
  }
  for (std::size_t s = 0; s < opts.family_samples && m > 0; ++s) {
    Subset fam(m);
    for (Element i = 0; i < m; ++i)
      if (rng() % 4 == 0) fam.set(i);
    checker.check_family(fam);
  }
  return report;
}

nlohmann::json to_json(const CompletionReport& r) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : r.properties) {
    nlohmann::json entry;
    entry["property"] = p.property;
    entry["status"] = p.pass ? "pass" : "fail";
    if (p.pass) {
      entry["witness"] = nullptr;
    } else {
      entry["witness"] = {{"subset", p.witness_subset ? nlohmann::json(*p.witness_subset)
                                                      : nlohmann::json(nullptr)},
                          {"expected", p.expected},
                          {"got", p.got}};
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace ordertop

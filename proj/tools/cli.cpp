#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ordertop/completion.hpp"
#include "ordertop/convergence.hpp"
#include "ordertop/errors.hpp"
#include "ordertop/gallery.hpp"
#include "ordertop/io.hpp"
#include "ordertop/measure.hpp"
#include "ordertop/topology.hpp"

namespace ordertop::cli {

namespace {

using nlohmann::json;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json labels(const FinitePoset& p, const Subset& s) { return p.labels_of(s); }

json verdict_json(const FinitePoset& p, const ConvergenceVerdict& v,
                  const std::optional<Completion>& c) {
  json j = {{"mode", std::string(to_string(v.mode))},
            {"target", p.label(v.target)},
            {"converges", v.converges},
            {"limit", v.limit ? json(p.label(*v.limit)) : json(nullptr)}};
  json w = nullptr;
  if (auto* o1 = std::get_if<O1Witness>(&v.witness)) {
    w = {{"lower", format_lasso(p, o1->lower)}, {"upper", format_lasso(p, o1->upper)}};
  } else if (auto* o2 = std::get_if<O2Witness>(&v.witness)) {
    w = {{"directed", labels(p, o2->directed)}, {"filtered", labels(p, o2->filtered)}};
  } else if (auto* o3 = std::get_if<O3Witness>(&v.witness)) {
    w = {{"lower_union", labels(p, o3->lower_union)},
         {"upper_union", labels(p, o3->upper_union)},
         {"sup_lower", o3->sup_lower ? json(p.label(*o3->sup_lower)) : json(nullptr)},
         {"inf_upper", o3->inf_upper ? json(p.label(*o3->inf_upper)) : json(nullptr)},
         {"criterion_bounds", o3->criterion_bounds},
         {"criterion_closures", o3->criterion_closures}};
  } else if (auto* dm = std::get_if<ODMWitness>(&v.witness); dm && c) {
    auto cut = [&](Element e) { return cut_label(c->base, c->cuts[e]); };
    w = {{"liminf", cut(dm->liminf_cut)},
         {"limsup", cut(dm->limsup_cut)},
         {"target", cut(dm->target_cut)}};
  }
  j["witness"] = w;
  return j;
}

json completion_json(const Completion& c) {
  json cuts = json::array();
  for (std::size_t i = 0; i < c.cuts.size(); ++i)
    cuts.push_back({{"index", i},
                    {"label", c.lattice.label(i)},
                    {"members", labels(c.base, c.cuts[i])}});
  json embedding = json::object();
  for (Element e = 0; e < c.base.size(); ++e)
    embedding[c.base.label(e)] = c.lattice.label(c.embedding[e]);
  json covers = json::array();
  for (auto [lo, hi] : c.lattice.covers())
    covers.push_back({c.lattice.label(lo), c.lattice.label(hi)});
  return {{"elements", c.base.size()},
          {"base_is_lattice", is_lattice(c.base)},
          {"cut_count", c.cuts.size()},
          {"cuts", cuts},
          {"embedding", embedding},
          {"lattice_covers", covers}};
}

std::vector<StepFunction> read_step_functions(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::vector<StepFunction> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(StepFunction::parse(line));
    } catch (const ParseError& e) {
      throw ParseError(n, e.what());
    } catch (const std::exception& e) {
      throw ParseError(n, e.what());
    }
  }
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
    if (b == std::string::npos) continue;
    out.push_back(parse_rational(item.substr(b, e - b + 1)));
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Usage("cannot write " + path.string());
  f << text;
}

std::size_t thread_cap() {
  const char* v = std::getenv("ORDERTOP_THREADS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  long n = std::strtol(v, &end, 10);
  if (*end || n < 1) throw Usage("ORDERTOP_THREADS must be a positive integer");
  return static_cast<std::size_t>(n);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite order-convergence and measure certificates", "ordertop"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("-o,--out", out_path, "Write the report to this file instead of stdout");

  // complete / verify-dm / export-dot
  std::string poset_file;
  auto* complete = app.add_subcommand("complete", "Dedekind-MacNeille completion of a poset file");
  complete->add_option("poset", poset_file, "Poset file")->required();
  std::string dot_out;
  complete->add_option("--dot", dot_out, "Also write the completion as DOT");

  auto* verify = app.add_subcommand("verify-dm", "Check the completion properties");
  verify->add_option("poset", poset_file, "Poset file")->required();
  std::size_t exhaustive_bound = 8;
  std::uint64_t seed = 1;
  verify->add_option("--exhaustive-bound", exhaustive_bound, "Exhaustive up to this size")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "Seed for sampled checks");

  auto* export_dot = app.add_subcommand("export-dot", "Hasse diagram as DOT");
  export_dot->add_option("poset", poset_file, "Poset file")->required();

  // converge
  auto* converge = app.add_subcommand("converge", "Decide convergence of a lasso sequence");
  std::string seq_text, mode_text = "o3", target;
  std::string o2_search = "auto";
  converge->add_option("--poset", poset_file, "Poset file")->required();
  converge->add_option("--seq", seq_text, "Lasso, e.g. \"prefix: a ; cycle: a b\"")->required();
  converge->add_option("--mode", mode_text, "o1, o2, o3, odm or all");
  converge->add_option("--target", target, "Candidate limit")->required();
  converge->add_option("--exhaustive-bound", exhaustive_bound, "O2 exhaustive search bound")
      ->check(CLI::PositiveNumber);
  converge->add_option("--o2-search", o2_search, "auto, exhaustive or cones")
      ->check(CLI::IsMember({"auto", "exhaustive", "cones"}));

  // topology report
  auto* topology = app.add_subcommand("topology", "Closed-set reports");
  topology->require_subcommand(1);
  auto* report = topology->add_subcommand("report", "Exhaustive closed-subset scan");
  report->add_option("poset", poset_file, "Poset file")->required();
  report->add_option("--exhaustive-bound", exhaustive_bound, "Largest poset scanned")
      ->check(CLI::PositiveNumber);

  // extract
  auto* extract = app.add_subcommand("extract", "Convergent subsequence from a witness");
  std::string f_text, g_text;
  extract->add_option("--poset", poset_file, "Poset file")->required();
  extract->add_option("--f", f_text, "Lasso f")->required();
  extract->add_option("--g", g_text, "Lasso g valued in f's range")->required();
  extract->add_option("--target", target, "Limit of g")->required();

  // gallery
  auto* gallery = app.add_subcommand("gallery", "Counterexample truncations");
  gallery->require_subcommand(1);
  std::size_t n_param = 3, k_param = 3, window_start = 2, depth = 50;
  bool check = false;
  std::string out_dir;
  auto* wolk = gallery->add_subcommand("wolk", "Wolk truncation P_N");
  wolk->add_option("--n", n_param, "N")->check(CLI::PositiveNumber);
  wolk->add_flag("--check", check, "Run the certificates");
  wolk->add_option("--out-dir", out_dir, "Write poset and DOT files here");
  wolk->add_option("--exhaustive-bound", exhaustive_bound, "Largest N enumerated")
      ->check(CLI::PositiveNumber);
  auto* olejcek = gallery->add_subcommand("olejcek", "Olejcek truncation with K copies");
  olejcek->add_option("--k", k_param, "K")->check(CLI::PositiveNumber);
  olejcek->add_option("--n", n_param, "N")->check(CLI::PositiveNumber);
  olejcek->add_option("--window-start", window_start, "First copy of the persistence window")
      ->check(CLI::PositiveNumber);
  olejcek->add_flag("--check", check, "Run the certificates");
  olejcek->add_option("--out-dir", out_dir, "Write poset and DOT files here");

  // measure
  auto* measure = app.add_subcommand("measure", "Exact step-function certificates");
  measure->require_subcommand(1);
  std::string generators_file, family_file, cutoffs = "1,2,4,8";
  auto* t5 = measure->add_subcommand("t5", "Closed family and its escape witness");
  t5->add_option("--generators", generators_file, "Step functions, one per line")->required();
  t5->add_option("--depth", depth, "Largest n tried for B_n")->check(CLI::PositiveNumber);
  unsigned p = 1, q = 2;
  std::string alpha = "3/2", epsilon = "1/10";
  auto* separation = measure->add_subcommand("separation", "sigma_p versus sigma_q and tau_mu");
  separation->add_option("--p", p, "p")->check(CLI::PositiveNumber);
  separation->add_option("--q", q, "q")->check(CLI::PositiveNumber);
  separation->add_option("--alpha", alpha, "alpha as n/d");
  separation->add_option("--epsilon", epsilon, "epsilon as n/d");
  separation->add_option("--depth", depth, "Largest n checked")->check(CLI::Range(2, 62));
  auto* ui = measure->add_subcommand("ui-profile", "Uniform integrability profile");
  ui->add_option("family", family_file, "Step functions, one per line")->required();
  ui->add_option("--cutoffs", cutoffs, "Comma separated, increasing");

  // random-poset
  auto* random = app.add_subcommand("random-poset", "Seeded random poset in file format");
  std::size_t size = 6;
  double density = 0.3;
  random->add_option("--n", size, "Elements")->check(CLI::Range(1, 64));
  random->add_option("--density", density, "Edge probability")->check(CLI::Range(0.0, 1.0));
  random->add_option("--seed", seed, "Seed");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  std::string text;
  int code = kOk;
  auto emit_json = [&](const json& j) { text = j.dump(2) + "\n"; };
  try {
    thread_cap();
    if (complete->parsed()) {
      auto c = dm_complete(read_poset_file(poset_file));
      emit_json(completion_json(c));
      if (!dot_out.empty()) write_file(dot_out, to_dot(c.lattice, "completion"));
    } else if (verify->parsed()) {
      auto c = dm_complete(read_poset_file(poset_file));
      VerifyOptions opts;
      opts.exhaustive_bound = exhaustive_bound;
      opts.seed = seed;
      auto r = verify_completion_properties(c, opts);
      emit_json({{"all_pass", r.all_pass()},
                 {"exhaustive", r.exhaustive},
                 {"subsets_checked", r.subsets_checked},
                 {"properties", to_json(r)}});
      if (!r.all_pass()) code = kCertificateFailed;
    } else if (export_dot->parsed()) {
      text = to_dot(read_poset_file(poset_file));
    } else if (converge->parsed()) {
      auto poset = read_poset_file(poset_file);
      auto s = parse_lasso(poset, seq_text);
      Element x = poset.index_of(target);
      std::vector<Mode> modes;
      if (mode_text == "all") {
        modes = {Mode::O1, Mode::O2, Mode::O3, Mode::ODM};
      } else if (auto m = parse_mode(mode_text)) {
        modes = {*m};
      } else {
        throw Usage("unknown mode '" + mode_text + "'");
      }
      std::optional<Completion> c;
      json verdicts = json::array();
      for (Mode m : modes) {
        ConvergenceVerdict v;
        if (m == Mode::O2) {
          O2Options o;
          o.exhaustive_bound = exhaustive_bound;
          o.search = o2_search == "cones"        ? O2Search::Cones
                     : o2_search == "exhaustive" ? O2Search::Exhaustive
                                                 : O2Search::Auto;
          v = o2_converges(poset, s, x, o);
        } else if (m == Mode::ODM) {
          if (!c) c = dm_complete(poset);
          v = odm_converges(*c, s, x);
        } else {
          v = converges(poset, s, x, m);
        }
        verdicts.push_back(verdict_json(poset, v, c));
      }
      emit_json(modes.size() == 1 ? verdicts[0]
                                  : json{{"sequence", format_lasso(poset, s)}, {"verdicts", verdicts}});
    } else if (report->parsed()) {
      auto poset = read_poset_file(poset_file);
      auto r = topology_inclusion_report(poset, exhaustive_bound);
      emit_json(to_json(poset, r));
      if (!r.inclusions_hold()) code = kCertificateFailed;
    } else if (extract->parsed()) {
      auto poset = read_poset_file(poset_file);
      auto f = parse_lasso(poset, f_text);
      auto g = parse_lasso(poset, g_text);
      auto r = extract_convergent_subsequence(poset, f, g, poset.index_of(target));
      emit_json({{"subsequence", format_lasso(poset, r.subsequence)},
                 {"index_map", r.index_map},
                 {"kept", r.kept},
                 {"horizon", r.horizon},
                 {"status", r.status},
                 {"verdict", verdict_json(poset, r.verdict, std::nullopt)}});
    } else if (wolk->parsed()) {
      auto t = wolk_truncate(n_param);
      json j = {{"N", n_param},
                {"elements", t.poset.size()},
                {"is_lattice", is_lattice(t.poset)},
                {"poset", format_poset(t.poset)}};
      if (check) {
        json certs = json::array();
        bool ok = true;
        auto add = [&](const Certificate& c) {
          certs.push_back(c.to_json());
          ok = ok && c.pass;
        };
        add(wolk_no_directed_sup_one(n_param, exhaustive_bound));
        if (n_param >= 2) add(wolk_o3_to_top(n_param));
        j["certificates"] = certs;
        if (!ok) code = kCertificateFailed;
      }
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::string stem = "wolk_" + std::to_string(n_param);
        write_file(std::filesystem::path(out_dir) / (stem + ".poset"), format_poset(t.poset));
        write_file(std::filesystem::path(out_dir) / (stem + ".dot"), to_dot(t.poset, stem));
      }
      emit_json(j);
    } else if (olejcek->parsed()) {
      json j = {{"K", k_param}, {"N", n_param}};
      json certs = json::array();
      bool ok = true;
      try {
        auto t = olejcek_truncate(k_param, n_param);
        j["elements_L_hat"] = t.poset_L_hat.size();
        j["elements_L"] = t.poset_L.size();
        j["L_hat_is_lattice"] = true;
        if (!out_dir.empty()) {
          std::filesystem::create_directories(out_dir);
          std::string stem = "olejcek_" + std::to_string(k_param) + "_" + std::to_string(n_param);
          auto dir = std::filesystem::path(out_dir);
          write_file(dir / (stem + "_hat.poset"), format_poset(t.poset_L_hat));
          write_file(dir / (stem + "_hat.dot"), to_dot(t.poset_L_hat, stem + "_hat"));
          write_file(dir / (stem + ".poset"), format_poset(t.poset_L));
          write_file(dir / (stem + ".dot"), to_dot(t.poset_L, stem));
        }
      } catch (const TruncationNotLattice& e) {
        j["L_hat_is_lattice"] = false;
        j["lattice_failure"] = e.what();
        ok = false;
      }
      if (check) {
        if (k_param >= window_start + 2) {
          auto c = olejcek_zero_sequence_converges(k_param, n_param, window_start);
          certs.push_back(c.to_json());
          ok = ok && c.pass;
        }
        auto c = olejcek_b_set_o1_closed(k_param, n_param);
        certs.push_back(c.to_json());
        ok = ok && c.pass;
        j["certificates"] = certs;
        if (!ok) code = kCertificateFailed;
      }
      emit_json(j);
    } else if (t5->parsed()) {
      auto gens = read_step_functions(generators_file);
      if (gens.empty()) throw Usage("generator file is empty");
      auto w = t5_escape_witness(gens, depth);
      bool ok = w.gamma <= 1;
      emit_json({{"generators", gens.size()},
                 {"m", w.m},
                 {"n", w.n},
                 {"f", w.f.to_text()},
                 {"gamma", to_string(w.gamma)},
                 {"gamma_at_most_one", ok}});
      if (!ok) code = kCertificateFailed;
    } else if (separation->parsed()) {
      auto a = sigma_pq_separation(p, q, parse_rational(alpha), depth, parse_rational(epsilon));
      auto b = tau_mu_sigma1_separation(depth);
      emit_json({{"sigma_pq", a.to_json()}, {"tau_mu_sigma1", b.to_json()}});
      if (!a.pass || !b.pass) code = kCertificateFailed;
    } else if (ui->parsed()) {
      auto family = read_step_functions(family_file);
      auto rows = uniform_integrability_profile(family, parse_rational_list(cutoffs));
      json table = json::array();
      for (const auto& r : rows) table.push_back({{"cutoff", to_string(r.cutoff)}, {"tail", to_string(r.tail)}});
      emit_json({{"family", family.size()}, {"profile", table}});
    } else if (random->parsed()) {
      text = format_poset(random_poset(size, density, seed));
    }
  } catch (const Usage& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    // malformed input, unknown labels, out-of-range parameters
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kCertificateFailed;
  }

  if (out_path.empty()) {
    out << text;
  } else {
    try {
      write_file(out_path, text);
    } catch (const Usage& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
  }
  return code;
}

}  // namespace ordertop::cli

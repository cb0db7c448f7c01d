#include "ordertop/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "ordertop/errors.hpp"

namespace ordertop {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

FinitePoset parse_poset(std::string_view text) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, Element> index;
  std::vector<std::pair<Element, Element>> edges;
  // Covers are resolved at the end so that they may mention later elements.
  std::vector<std::tuple<std::size_t, std::string, std::string>> pending;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    auto toks = split_ws(strip_comment(line));
    if (toks.empty()) continue;
    if (toks[0] == "elem") {
      if (toks.size() != 2) throw ParseError(line_no, "expected 'elem <label>'");
      if (index.count(toks[1])) throw ParseError(line_no, "duplicate element '" + toks[1] + "'");
      index.emplace(toks[1], labels.size());
      labels.push_back(toks[1]);
    } else if (toks[0] == "cover") {
      if (toks.size() != 3) throw ParseError(line_no, "expected 'cover <lower> <upper>'");
      pending.emplace_back(line_no, toks[1], toks[2]);
    } else {
      throw ParseError(line_no, "unknown directive '" + toks[0] + "'");
    }
  }
  for (const auto& [ln, lo, hi] : pending) {
    auto a = index.find(lo);
    auto b = index.find(hi);
    if (a == index.end()) throw ParseError(ln, "unknown element '" + lo + "'");
    if (b == index.end()) throw ParseError(ln, "unknown element '" + hi + "'");
    edges.emplace_back(a->second, b->second);
  }
  try {
    return FinitePoset::from_edges(std::move(labels), edges);
  } catch (const CycleError& e) {
    throw ParseError(0, e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FinitePoset read_poset_file(const std::string& path) { return parse_poset(read_text_file(path)); }

std::string format_poset(const FinitePoset& p) {
  std::string out;
  for (const auto& l : p.labels()) out += "elem " + l + "\n";
  for (auto [a, b] : p.covers()) out += "cover " + p.label(a) + " " + p.label(b) + "\n";
  return out;
}

std::string to_dot(const FinitePoset& p, std::string_view graph_name) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') q += '\\';
      q += ch;
    }
    return q + "\"";
  };
  std::string out = "digraph " + quote(std::string(graph_name)) + " {\n  rankdir=BT;\n";
  for (Element e = 0; e < p.size(); ++e) out += "  " + quote(p.label(e)) + ";\n";
  for (auto [a, b] : p.covers())
    out += "  " + quote(p.label(a)) + " -> " + quote(p.label(b)) + ";\n";
  return out + "}\n";
}

LassoSequence parse_lasso(const FinitePoset& p, std::string_view text) {
  std::string_view prefix_part, cycle_part;
  auto semi = text.find(';');
  if (semi == std::string_view::npos) {
    cycle_part = text;
  } else {
    prefix_part = text.substr(0, semi);
    cycle_part = text.substr(semi + 1);
  }
  auto strip_key = [](std::string_view part, std::string_view key, bool required) {
    part = trim(part);
    if (part.substr(0, key.size()) == key) {
      part.remove_prefix(key.size());
      part = trim(part);
      if (part.empty() || part.front() != ':') throw ParseError(0, "expected ':' after '" + std::string(key) + "'");
      part.remove_prefix(1);
    } else if (required) {
      throw ParseError(0, "expected '" + std::string(key) + ":'");
    }
    return part;
  };
  auto resolve = [&](std::string_view part) {
    std::vector<Element> out;
    for (const auto& tok : split_ws(part)) {
      auto e = p.find(tok);
      if (!e) throw UnknownLabelError("unknown element '" + tok + "' in sequence");
      out.push_back(*e);
    }
    return out;
  };
  std::vector<Element> prefix;
  if (semi != std::string_view::npos) prefix = resolve(strip_key(prefix_part, "prefix", true));
  auto cycle = resolve(strip_key(cycle_part, "cycle", semi != std::string_view::npos));
  if (cycle.empty()) throw ParseError(0, "cycle must be nonempty");
  return LassoSequence(std::move(prefix), std::move(cycle));
}

std::string format_lasso(const FinitePoset& p, const LassoSequence& s) {
  std::string out = "prefix:";
  for (Element e : s.prefix()) out += " " + p.label(e);
  out += " ; cycle:";
  for (Element e : s.cycle()) out += " " + p.label(e);
  return out;
}

}  // namespace ordertop

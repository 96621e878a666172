#ifndef KNOTOID_CODES_HPP_
#define KNOTOID_CODES_HPP_

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "knotoid/errors.hpp"

namespace knotoid {

enum class Kind { Knotoid, Knot };

/// One passage of the curve through a crossing: the crossing label and
/// whether the strand goes over or under. Serialized as +label / -label.
struct Passage {
  int label = 0;
  bool over = true;

  bool operator==(const Passage&) const = default;
  auto operator<=>(const Passage&) const = default;
};

enum class CutArc { Unspecified, Tail, Head };

/// A crossing of the curve with one of the two branch-cut arcs.
/// Plain codes carry no annotation; annotated codes record which arc is
/// crossed, from which side (+1/-1 relative to the walk), and the position
/// along the arc counted from the branch point (1-based; 0 = unspecified).
struct CutEntry {
  CutArc arc = CutArc::Unspecified;
  int direction = 0;  // +1, -1 or 0 (unspecified)
  int ordinal = 0;    // 0 = unspecified

  bool annotated() const { return arc != CutArc::Unspecified; }
  bool operator==(const CutEntry&) const = default;
  auto operator<=>(const CutEntry&) const = default;
};

using Entry = std::variant<Passage, CutEntry>;

struct GaussCode {
  std::vector<Passage> sequence;
  std::vector<int> signs;  // signs[i] is the sign of crossing i+1
  Kind kind = Kind::Knotoid;

  int crossings() const { return static_cast<int>(signs.size()); }
  bool empty() const { return sequence.empty(); }
  bool operator==(const GaussCode&) const = default;
};

struct GeneralizedGaussCode {
  std::vector<Entry> sequence;
  std::vector<int> signs;

  int crossings() const { return static_cast<int>(signs.size()); }
  int cut_entries() const {
    int k = 0;
    for (const auto& e : sequence)
      if (std::holds_alternative<CutEntry>(e)) ++k;
    return k;
  }
  bool operator==(const GeneralizedGaussCode&) const = default;
};

namespace detail {

inline void validate_passages(const std::vector<Passage>& seq,
                              const std::vector<int>& signs) {
  const int n = static_cast<int>(signs.size());
  if (static_cast<int>(seq.size()) != 2 * n)
    throw InvalidCode("sequence length " + std::to_string(seq.size()) +
                      " does not match sign vector length " +
                      std::to_string(n));
  for (int s : signs)
    if (s != 1 && s != -1) throw InvalidCode("crossing sign must be +1 or -1");
  std::vector<int> over_count(n, 0), under_count(n, 0);
  for (const auto& p : seq) {
    if (p.label < 1 || p.label > n)
      throw InvalidCode("label " + std::to_string(p.label) +
                        " out of range 1.." + std::to_string(n));
    (p.over ? over_count : under_count)[p.label - 1]++;
  }
  for (int i = 0; i < n; ++i)
    if (over_count[i] != 1 || under_count[i] != 1)
      throw InvalidCode("crossing " + std::to_string(i + 1) +
                        " must appear exactly once over and once under");
}

}  // namespace detail

inline void validate(const GaussCode& code) {
  detail::validate_passages(code.sequence, code.signs);
}

inline void validate(const GeneralizedGaussCode& code) {
  std::vector<Passage> passages;
  bool saw_plain = false, saw_annotated = false;
  std::vector<std::pair<CutArc, int>> seen_ordinals;
  for (const auto& e : code.sequence) {
    if (const auto* p = std::get_if<Passage>(&e)) {
      passages.push_back(*p);
    } else {
      const auto& c = std::get<CutEntry>(e);
      (c.annotated() ? saw_annotated : saw_plain) = true;
      if (c.direction != 0 && c.arc == CutArc::Unspecified)
        throw InvalidCode("cut direction given without arc annotation");
      if (c.direction != 0 && c.direction != 1 && c.direction != -1)
        throw InvalidCode("cut direction must be +1, -1 or unspecified");
      if (c.ordinal != 0) {
        if (c.arc == CutArc::Unspecified)
          throw InvalidCode("cut ordinal given without arc annotation");
        auto key = std::make_pair(c.arc, c.ordinal);
        if (std::find(seen_ordinals.begin(), seen_ordinals.end(), key) !=
            seen_ordinals.end())
          throw InvalidCode("duplicate cut ordinal on the same arc");
        seen_ordinals.push_back(key);
      }
    }
  }
  if (saw_plain && saw_annotated)
    throw MixedAnnotation("plain and annotated cut entries in one code");
  detail::validate_passages(passages, code.signs);
}

// ---------------------------------------------------------------------------
// Canonicalization

/// Renumber crossings by order of first appearance in the sequence.
inline GaussCode relabel_by_first_appearance(const GaussCode& code) {
  const int n = code.crossings();
  std::vector<int> new_label(n + 1, 0);
  int next = 1;
  GaussCode out;
  out.kind = code.kind;
  out.signs.resize(n);
  for (const auto& p : code.sequence) {
    if (new_label[p.label] == 0) new_label[p.label] = next++;
    out.sequence.push_back({new_label[p.label], p.over});
  }
  for (int l = 1; l <= n; ++l) out.signs[new_label[l] - 1] = code.signs[l - 1];
  return out;
}

inline GeneralizedGaussCode relabel_by_first_appearance(
    const GeneralizedGaussCode& code) {
  const int n = code.crossings();
  std::vector<int> new_label(n + 1, 0);
  int next = 1;
  GeneralizedGaussCode out;
  out.signs.resize(n);
  for (const auto& e : code.sequence) {
    if (const auto* p = std::get_if<Passage>(&e)) {
      if (new_label[p->label] == 0) new_label[p->label] = next++;
      out.sequence.push_back(Passage{new_label[p->label], p->over});
    } else {
      out.sequence.push_back(e);
    }
  }
  for (int l = 1; l <= n; ++l) out.signs[new_label[l] - 1] = code.signs[l - 1];
  return out;
}

namespace detail {

inline std::vector<int> code_key(const GaussCode& c) {
  std::vector<int> key;
  key.reserve(c.sequence.size() * 2 + c.signs.size());
  for (const auto& p : c.sequence) {
    key.push_back(p.label);
    key.push_back(p.over ? 0 : 1);
  }
  for (int s : c.signs) key.push_back(s);
  return key;
}

}  // namespace detail

/// Canonical form: relabel by first appearance; for knot codes additionally
/// pick the cyclic rotation of the sequence with the lexicographically
/// smallest relabeled key (deterministic basepoint).
inline GaussCode canonicalize(const GaussCode& code) {
  if (code.kind == Kind::Knotoid || code.sequence.size() <= 1)
    return relabel_by_first_appearance(code);
  GaussCode best;
  std::vector<int> best_key;
  const int len = static_cast<int>(code.sequence.size());
  for (int r = 0; r < len; ++r) {
    GaussCode rot = code;
    std::rotate(rot.sequence.begin(), rot.sequence.begin() + r,
                rot.sequence.end());
    rot = relabel_by_first_appearance(rot);
    auto key = detail::code_key(rot);
    if (best_key.empty() || key < best_key) {
      best_key = std::move(key);
      best = std::move(rot);
    }
  }
  return best;
}

inline GeneralizedGaussCode canonicalize(const GeneralizedGaussCode& code) {
  return relabel_by_first_appearance(code);
}

// ---------------------------------------------------------------------------
// Conversions

inline GeneralizedGaussCode to_generalized(const GaussCode& code) {
  if (code.kind != Kind::Knotoid)
    throw InvalidCode("only knotoid codes generalize to gGC");
  GeneralizedGaussCode out;
  out.signs = code.signs;
  for (const auto& p : code.sequence) out.sequence.push_back(p);
  return out;
}

/// Drop cut entries, keeping the underlying knotoid Gauss code.
inline GaussCode strip_cuts(const GeneralizedGaussCode& code) {
  GaussCode out;
  out.kind = Kind::Knotoid;
  out.signs = code.signs;
  for (const auto& e : code.sequence)
    if (const auto* p = std::get_if<Passage>(&e)) out.sequence.push_back(*p);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing and serialization (paper text syntax)

namespace detail {

inline std::vector<std::string> split_tokens(const std::string& text,
                                             char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

inline Entry parse_entry(const std::string& tok) {
  if (tok.empty()) throw MalformedSyntax("empty entry");
  if (tok[0] == 'b') {
    CutEntry c;
    if (tok == "b") return c;
    if (tok.size() < 3) throw MalformedSyntax("bad cut entry '" + tok + "'");
    if (tok[1] == 't')
      c.arc = CutArc::Tail;
    else if (tok[1] == 'h')
      c.arc = CutArc::Head;
    else
      throw MalformedSyntax("bad cut arc in '" + tok + "'");
    if (tok[2] == '+')
      c.direction = 1;
    else if (tok[2] == '-')
      c.direction = -1;
    else
      throw MalformedSyntax("bad cut direction in '" + tok + "'");
    if (tok.size() > 3) {
      char* end = nullptr;
      long ord = std::strtol(tok.c_str() + 3, &end, 10);
      if (*end != '\0' || ord < 1)
        throw MalformedSyntax("bad cut ordinal in '" + tok + "'");
      c.ordinal = static_cast<int>(ord);
    }
    return c;
  }
  char* end = nullptr;
  long v = std::strtol(tok.c_str(), &end, 10);
  if (*end != '\0' || v == 0)
    throw MalformedSyntax("unparseable token '" + tok + "'");
  return Passage{static_cast<int>(v < 0 ? -v : v), v > 0};
}

inline std::pair<std::string, std::string> split_slash(
    const std::string& text) {
  auto pos = text.find('/');
  if (pos == std::string::npos)
    throw MalformedSyntax("missing '/' separator between sequence and signs");
  if (text.find('/', pos + 1) != std::string::npos)
    throw MalformedSyntax("multiple '/' separators");
  return {text.substr(0, pos), text.substr(pos + 1)};
}

inline std::vector<int> parse_signs(const std::string& part) {
  std::vector<int> signs;
  for (const auto& tok : split_tokens(part, ',')) {
    if (tok.empty()) {
      if (signs.empty()) continue;  // " / " has one empty token
      throw MalformedSyntax("empty sign entry");
    }
    if (tok == "1" || tok == "+1")
      signs.push_back(1);
    else if (tok == "-1")
      signs.push_back(-1);
    else
      throw MalformedSyntax("bad sign '" + tok + "'");
  }
  return signs;
}

}  // namespace detail

inline GeneralizedGaussCode parse_ggc(const std::string& text) {
  auto [seq_part, sign_part] = detail::split_slash(text);
  GeneralizedGaussCode code;
  for (const auto& tok : detail::split_tokens(seq_part, ',')) {
    if (tok.empty()) {
      if (code.sequence.empty()) continue;
      throw MalformedSyntax("empty sequence entry");
    }
    code.sequence.push_back(detail::parse_entry(tok));
  }
  code.signs = detail::parse_signs(sign_part);
  validate(code);
  return code;
}

inline GaussCode parse_gauss(const std::string& text,
                             Kind kind = Kind::Knotoid) {
  auto [seq_part, sign_part] = detail::split_slash(text);
  GaussCode code;
  code.kind = kind;
  for (const auto& tok : detail::split_tokens(seq_part, ',')) {
    if (tok.empty()) {
      if (code.sequence.empty()) continue;
      throw MalformedSyntax("empty sequence entry");
    }
    Entry e = detail::parse_entry(tok);
    if (!std::holds_alternative<Passage>(e))
      throw MalformedSyntax("cut entry 'b' not allowed in a plain Gauss code");
    code.sequence.push_back(std::get<Passage>(e));
  }
  code.signs = detail::parse_signs(sign_part);
  validate(code);
  return code;
}

namespace detail {

inline std::string entry_text(const Entry& e) {
  if (const auto* p = std::get_if<Passage>(&e))
    return (p->over ? "" : "-") + std::to_string(p->label);
  const auto& c = std::get<CutEntry>(e);
  if (!c.annotated()) return "b";
  std::string s = "b";
  s += (c.arc == CutArc::Tail ? 't' : 'h');
  s += (c.direction >= 0 ? '+' : '-');
  if (c.ordinal != 0) s += std::to_string(c.ordinal);
  return s;
}

inline std::string join_code(const std::vector<std::string>& seq,
                             const std::vector<int>& signs) {
  std::string out;
  for (size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ",";
    out += seq[i];
  }
  out += " / ";
  for (size_t i = 0; i < signs.size(); ++i) {
    if (i) out += ",";
    out += signs[i] > 0 ? "1" : "-1";
  }
  return out;
}

}  // namespace detail

inline std::string serialize(const GaussCode& code) {
  std::vector<std::string> seq;
  for (const auto& p : code.sequence) seq.push_back(detail::entry_text(p));
  return detail::join_code(seq, code.signs);
}

inline std::string serialize(const GeneralizedGaussCode& code) {
  std::vector<std::string> seq;
  for (const auto& e : code.sequence) seq.push_back(detail::entry_text(e));
  return detail::join_code(seq, code.signs);
}

// ---------------------------------------------------------------------------
// Involutions

/// Reversion: walk the diagram head-to-tail. Cut-arc roles swap (the old
/// tail arc becomes the head arc) and the crossing side flips with the walk
/// direction; over/under data and crossing signs are unchanged.
inline GeneralizedGaussCode reverse_code(const GeneralizedGaussCode& code) {
  GeneralizedGaussCode out;
  out.signs = code.signs;
  for (auto it = code.sequence.rbegin(); it != code.sequence.rend(); ++it) {
    Entry e = *it;
    if (auto* c = std::get_if<CutEntry>(&e)) {
      if (c->arc == CutArc::Tail)
        c->arc = CutArc::Head;
      else if (c->arc == CutArc::Head)
        c->arc = CutArc::Tail;
      c->direction = -c->direction;
    }
    out.sequence.push_back(e);
  }
  return canonicalize(out);
}

/// Mirror reflection: every crossing switched, so strand flags flip and all
/// signs negate. Traversal order and cut entries are untouched.
inline GeneralizedGaussCode mirror_code(const GeneralizedGaussCode& code) {
  GeneralizedGaussCode out = code;
  for (auto& e : out.sequence)
    if (auto* p = std::get_if<Passage>(&e)) p->over = !p->over;
  for (auto& s : out.signs) s = -s;
  return canonicalize(out);
}

/// Reflection through the line of the endpoints: traversal order and
/// over/under data survive, crossing signs and cut-crossing sides negate.
inline GeneralizedGaussCode symmetric_code(const GeneralizedGaussCode& code) {
  GeneralizedGaussCode out = code;
  for (auto& s : out.signs) s = -s;
  for (auto& e : out.sequence)
    if (auto* c = std::get_if<CutEntry>(&e)) c->direction = -c->direction;
  return canonicalize(out);
}

/// Rotation = mirror o symmetric: strand flags flip, signs survive.
inline GeneralizedGaussCode rotate_code(const GeneralizedGaussCode& code) {
  return mirror_code(symmetric_code(code));
}

// ---------------------------------------------------------------------------
// Product

/// Code-level product: walk k1 tail-to-head, then k2. Valid because the
/// product diagram places k2 with its tail in the region the head of k1
/// reaches.
inline GaussCode product_code(const GaussCode& k1, const GaussCode& k2) {
  if (k1.kind != Kind::Knotoid || k2.kind != Kind::Knotoid)
    throw InvalidCode("product is defined for knotoid codes");
  validate(k1);
  validate(k2);
  GaussCode out;
  out.kind = Kind::Knotoid;
  out.sequence = k1.sequence;
  const int shift = k1.crossings();
  for (const auto& p : k2.sequence)
    out.sequence.push_back({p.label + shift, p.over});
  out.signs = k1.signs;
  out.signs.insert(out.signs.end(), k2.signs.begin(), k2.signs.end());
  return out;
}

// ---------------------------------------------------------------------------
// JSON mirror format

inline nlohmann::json to_json(const GeneralizedGaussCode& code) {
  nlohmann::json seq = nlohmann::json::array();
  for (const auto& e : code.sequence) {
    if (const auto* p = std::get_if<Passage>(&e)) {
      seq.push_back({{"label", p->label},
                     {"strand", p->over ? "over" : "under"}});
    } else {
      const auto& c = std::get<CutEntry>(e);
      nlohmann::json cut = nlohmann::json::object();
      if (c.arc != CutArc::Unspecified)
        cut["arc"] = c.arc == CutArc::Tail ? "tail" : "head";
      if (c.direction != 0) cut["direction"] = c.direction;
      if (c.ordinal != 0) cut["ordinal"] = c.ordinal;
      seq.push_back({{"cut", cut}});
    }
  }
  return {{"sequence", seq}, {"signs", code.signs}, {"kind", "knotoid"}};
}

inline nlohmann::json to_json(const GaussCode& code) {
  nlohmann::json seq = nlohmann::json::array();
  for (const auto& p : code.sequence)
    seq.push_back(
        {{"label", p.label}, {"strand", p.over ? "over" : "under"}});
  return {{"sequence", seq},
          {"signs", code.signs},
          {"kind", code.kind == Kind::Knot ? "knot" : "knotoid"}};
}

inline GeneralizedGaussCode ggc_from_json(const nlohmann::json& j) {
  GeneralizedGaussCode code;
  for (const auto& e : j.at("sequence")) {
    if (e.contains("cut")) {
      CutEntry c;
      const auto& cut = e.at("cut");
      if (cut.contains("arc"))
        c.arc = cut.at("arc") == "tail" ? CutArc::Tail : CutArc::Head;
      if (cut.contains("direction")) c.direction = cut.at("direction");
      if (cut.contains("ordinal")) c.ordinal = cut.at("ordinal");
      code.sequence.push_back(c);
    } else {
      code.sequence.push_back(Passage{e.at("label").get<int>(),
                                      e.at("strand") == "over"});
    }
  }
  code.signs = j.at("signs").get<std::vector<int>>();
  validate(code);
  return code;
}

inline GaussCode gauss_from_json(const nlohmann::json& j) {
  GaussCode code;
  code.kind = j.at("kind") == "knot" ? Kind::Knot : Kind::Knotoid;
  for (const auto& e : j.at("sequence"))
    code.sequence.push_back(
        Passage{e.at("label").get<int>(), e.at("strand") == "over"});
  code.signs = j.at("signs").get<std::vector<int>>();
  validate(code);
  return code;
}

}  // namespace knotoid

#endif  // KNOTOID_CODES_HPP_

#include "iqcl/proof.hpp"

#include <array>
#include <cctype>

#include "iqcl/parser.hpp"

namespace iqcl {

namespace {

constexpr std::array<const char*, kAxiomCount> kAxiomNames = {
    "W1", "W2", "W3", "W4", "E1", "E2", "E3", "E4", "E5", "E6", "P1", "P2",
    "P3", "P4", "P5", "S1", "S2", "S3", "Q1", "Q2", "Q3", "Q4", "Q5"};
constexpr std::array<const char*, kLemmaCount> kLemmaNames = {"L2", "L3", "L4", "L5", "L6", "L7", "L8"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<Kind> parse_op(std::string_view s) {
  for (Kind k : kBinaryKinds)
    if (s == binary_symbol(k)) return k;
  return std::nullopt;
}

}  // namespace

std::string to_string(AxiomId id) { return kAxiomNames[static_cast<int>(id)]; }
std::string to_string(LemmaId id) { return kLemmaNames[static_cast<int>(id)]; }

std::optional<AxiomId> parse_axiom_id(std::string_view s) {
  for (int i = 0; i < kAxiomCount; ++i)
    if (s == kAxiomNames[i]) return static_cast<AxiomId>(i);
  return std::nullopt;
}

std::optional<LemmaId> parse_lemma_id(std::string_view s) {
  for (int i = 0; i < kLemmaCount; ++i)
    if (s == kLemmaNames[i]) return static_cast<LemmaId>(i);
  return std::nullopt;
}

Justification Justification::by_axiom(AxiomId id, std::optional<Substitution> s) {
  Justification j;
  j.type = Type::Axiom;
  j.axiom = id;
  j.subst = std::move(s);
  return j;
}

Justification Justification::by_lemma(LemmaId id, std::optional<Substitution> s) {
  Justification j;
  j.type = Type::Lemma;
  j.lemma = id;
  j.subst = std::move(s);
  return j;
}

Justification Justification::by_member(std::size_t index) {
  Justification j;
  j.type = Type::Member;
  j.member = index;
  return j;
}

Justification Justification::by_mp(std::size_t minor, std::size_t major) {
  Justification j;
  j.type = Type::MP;
  j.minor = minor;
  j.major = major;
  return j;
}

namespace {

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  ParseError error(const std::string& msg, std::size_t col) const { return ParseError(msg, line_no_, col + 1); }

  ProofStep parse(std::size_t expected_number) {
    std::size_t dot = line_.find('.');
    if (dot == std::string_view::npos) throw error("expected step number 'N.'", 0);
    std::string_view num = trim(line_.substr(0, dot));
    if (num.empty() || num.find_first_not_of("0123456789") != std::string_view::npos)
      throw error("expected step number 'N.'", 0);
    if (std::stoul(std::string(num)) != expected_number)
      throw error("step number " + std::string(num) + " out of sequence, expected " +
                      std::to_string(expected_number), 0);
    std::size_t sep = line_.find("::", dot + 1);
    if (sep == std::string_view::npos) throw error("missing '::' before the justification", line_.size());
    ParseOptions opt;
    opt.line = line_no_;
    opt.column = dot + 2;
    Formula f = parse_formula(line_.substr(dot + 1, sep - dot - 1), opt);
    return {f, justification(sep + 2)};
  }

 private:
  // Word starting at or after `pos`; advances pos past it.
  std::string_view word(std::size_t& pos) const {
    while (pos < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos])) && line_[pos] != '[') ++pos;
    return line_.substr(start, pos - start);
  }

  std::size_t index(std::size_t& pos) const {
    std::size_t at = pos;
    std::string_view w = word(pos);
    if (w.empty() || w.find_first_not_of("0123456789") != std::string_view::npos || w == "0")
      throw error("expected a positive index", at);
    return std::stoul(std::string(w)) - 1;
  }

  Justification justification(std::size_t pos) const {
    std::size_t at = pos;
    std::string_view tag = word(pos);
    Justification j;
    if (tag == "axiom" || tag == "lemma") {
      std::size_t id_at = pos;
      std::string_view id = word(pos);
      if (tag == "axiom") {
        auto a = parse_axiom_id(id);
        if (!a) throw error("unknown axiom '" + std::string(id) + "'", id_at);
        j = Justification::by_axiom(*a);
      } else {
        auto l = parse_lemma_id(id);
        if (!l) throw error("unknown lemma '" + std::string(id) + "'", id_at);
        j = Justification::by_lemma(*l);
      }
      while (pos < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos]))) ++pos;
      if (pos < line_.size()) {
        if (line_[pos] != '[') throw error("expected '[' or end of line", pos);
        std::size_t close = line_.rfind(']');
        if (close == std::string_view::npos || close < pos) throw error("missing ']'", line_.size());
        if (!trim(line_.substr(close + 1)).empty()) throw error("text after ']'", close + 1);
        j.subst = substitution(pos + 1, close);
      }
    } else if (tag == "hyp") {
      j = Justification::by_member(index(pos));
    } else if (tag == "mp") {
      std::size_t i = index(pos);
      std::size_t k = index(pos);
      j = Justification::by_mp(i, k);
    } else {
      throw error("unknown justification '" + std::string(tag) + "'", at);
    }
    if (j.type == Justification::Type::Member || j.type == Justification::Type::MP)
      if (!trim(line_.substr(pos)).empty()) throw error("unexpected text after justification", pos);
    return j;
  }

  Substitution substitution(std::size_t begin, std::size_t end) const {
    Substitution s;
    std::size_t pos = begin;
    while (pos < end) {
      std::size_t semi = line_.find(';', pos);
      if (semi == std::string_view::npos || semi > end) semi = end;
      std::string_view item = line_.substr(pos, semi - pos);
      if (!trim(item).empty()) {
        std::size_t bind = item.find(":=");
        if (bind == std::string_view::npos) throw error("expected 'key := formula'", pos);
        std::string key(trim(item.substr(0, bind)));
        std::string_view value = item.substr(bind + 2);
        if (key == "op") {
          auto k = parse_op(trim(value));
          if (!k) throw error("unknown connective '" + std::string(trim(value)) + "'", pos + bind + 2);
          s.op = k;
        } else {
          if (key.empty() || key.find_first_not_of("ABCRSTV") != std::string::npos || key.size() != 1)
            throw error("unknown metavariable '" + key + "'", pos);
          if (s.bindings.count(key)) throw error("metavariable '" + key + "' bound twice", pos);
          ParseOptions opt;
          opt.line = line_no_;
          opt.column = pos + bind + 3;
          s.bindings.emplace(key, parse_formula(value, opt));
        }
      }
      pos = semi + 1;
    }
    return s;
  }

  std::string_view line_;
  std::size_t line_no_;
};

}  // namespace

Proof parse_proof(std::string_view text) {
  Proof p;
  std::size_t line_no = 0, start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    p.steps.push_back(LineParser(line, line_no).parse(p.steps.size() + 1));
  }
  return p;
}

Proof load_proof(const std::string& path) { return parse_proof(read_file(path)); }

std::string print_substitution(const Substitution& s) {
  std::string out = "[";
  bool first = true;
  for (const auto& [k, f] : s.bindings) {
    if (!first) out += "; ";
    out += k + " := " + print_formula(f);
    first = false;
  }
  if (s.op) {
    if (!first) out += "; ";
    out += std::string("op := ") + binary_symbol(*s.op);
  }
  return out + "]";
}

std::string print_proof(const Proof& p) {
  std::string out;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& st = p.steps[i];
    out += std::to_string(i + 1) + ". " + print_formula(st.formula) + " :: ";
    const auto& j = st.why;
    switch (j.type) {
      case Justification::Type::Axiom:
        out += "axiom " + to_string(j.axiom);
        if (j.subst && (!j.subst->bindings.empty() || j.subst->op)) out += " " + print_substitution(*j.subst);
        break;
      case Justification::Type::Lemma:
        out += "lemma " + to_string(j.lemma);
        if (j.subst && (!j.subst->bindings.empty() || j.subst->op)) out += " " + print_substitution(*j.subst);
        break;
      case Justification::Type::Member:
        out += "hyp " + std::to_string(j.member + 1);
        break;
      case Justification::Type::MP:
        out += "mp " + std::to_string(j.minor + 1) + " " + std::to_string(j.major + 1);
        break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace iqcl

#include "iqcl/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace iqcl {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      detail_(message),
      line_(line),
      column_(column) {}

Theory::Theory(std::initializer_list<Formula> members) {
  for (const auto& f : members) add(f);
}

Theory::Theory(const std::vector<Formula>& members) {
  for (const auto& f : members) add(f);
}

bool Theory::add(const Formula& f) {
  if (contains(f)) return false;
  members_.push_back(f);
  return true;
}

bool Theory::contains(const Formula& f) const { return index_of(f) < members_.size(); }

std::size_t Theory::index_of(const Formula& f) const {
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i] == f) return i;
  return members_.size();
}

namespace {

enum class Tok { Ident, Meta, Number, LParen, RParen, Bang, Quest, Dot, Star, Plus, Amp, Bar, Arrow, Equiv, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t line, column;
};

class Lexer {
 public:
  Lexer(std::string_view src, const ParseOptions& opt)
      : src_(src), opt_(opt), line_(opt.line), column_(opt.column) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      std::size_t l = line_, c = column_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", l, c});
        return out;
      }
      char ch = src_[pos_];
      auto simple = [&](Tok t, std::size_t len) {
        out.push_back({t, std::string(src_.substr(pos_, len)), l, c});
        advance(len);
      };
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance(1);
        out.push_back({Tok::Ident, std::string(src_.substr(start, pos_ - start)), l, c});
      } else if (ch == '$') {
        if (!opt_.allow_meta) throw ParseError("unexpected character '$'", l, c);
        advance(1);
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance(1);
        if (start == pos_) throw ParseError("empty metavariable name", l, c);
        out.push_back({Tok::Meta, std::string(src_.substr(start, pos_ - start)), l, c});
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::size_t start = pos_;
        digits();
        if (pos_ < src_.size() && src_[pos_] == '/') {
          advance(1);
          if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            throw ParseError("expected denominator after '/'", line_, column_);
          digits();
        }
        out.push_back({Tok::Number, std::string(src_.substr(start, pos_ - start)), l, c});
      } else if (src_.substr(pos_, 3) == "<->") {
        simple(Tok::Equiv, 3);
      } else if (src_.substr(pos_, 2) == "->") {
        simple(Tok::Arrow, 2);
      } else {
        switch (ch) {
          case '(': simple(Tok::LParen, 1); break;
          case ')': simple(Tok::RParen, 1); break;
          case '!': simple(Tok::Bang, 1); break;
          case '?': simple(Tok::Quest, 1); break;
          case '.': simple(Tok::Dot, 1); break;
          case '*': simple(Tok::Star, 1); break;
          case '+': simple(Tok::Plus, 1); break;
          case '&': simple(Tok::Amp, 1); break;
          case '|': simple(Tok::Bar, 1); break;
          default: {
            std::string shown = static_cast<unsigned char>(ch) < 0x80 ? std::string(1, ch) : "non-ASCII byte";
            throw ParseError("unexpected character '" + shown + "'", l, c);
          }
        }
      }
    }
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }
  void digits() {
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
  }
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance(1);
  }

  std::string_view src_;
  const ParseOptions& opt_;
  std::size_t pos_ = 0, line_, column_;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse() {
    if (peek().type == Tok::End) throw error("empty formula");
    Formula f = equiv();
    if (peek().type != Tok::End) throw error("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token take() { return toks_[i_++]; }
  ParseError error(const std::string& msg) const { return ParseError(msg, peek().line, peek().column); }

  Formula equiv() {
    Formula f = implication();
    while (peek().type == Tok::Equiv) {
      take();
      f = Formula::equiv(f, implication());
    }
    return f;
  }

  Formula implication() {
    Formula f = left_assoc(0);
    if (peek().type == Tok::Arrow) {
      take();
      return Formula::implies(f, implication());
    }
    return f;
  }

  // Levels, loosest first: | & + * .
  Formula left_assoc(int level) {
    static constexpr Tok toks[] = {Tok::Bar, Tok::Amp, Tok::Plus, Tok::Star, Tok::Dot};
    static constexpr Kind kinds[] = {Kind::Join, Kind::Meet, Kind::Oplus, Kind::Odot, Kind::Product};
    if (level == 5) return unary();
    Formula f = left_assoc(level + 1);
    while (peek().type == toks[level]) {
      take();
      f = Formula::binary(kinds[level], f, left_assoc(level + 1));
    }
    return f;
  }

  Formula unary() {
    if (peek().type == Tok::Bang) {
      take();
      return Formula::neg(unary());
    }
    if (peek().type == Tok::Quest) {
      take();
      return Formula::sqrt(unary());
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::LParen: {
        take();
        Formula f = equiv();
        if (peek().type != Tok::RParen) throw error("expected ')'");
        take();
        return f;
      }
      case Tok::Ident: {
        Token id = take();
        if (id.text == "bot") return Formula::bot();
        if (id.text == "top") return Formula::top();
        if (id.text == "half") return Formula::half();
        return Formula::atom(id.text);
      }
      case Tok::Meta:
        return Formula::meta(take().text);
      case Tok::Number:
        return number();
      case Tok::End:
        throw error("unexpected end of input");
      default:
        throw error("unexpected '" + t.text + "'");
    }
  }

  Formula number() {
    const Token& t = peek();
    Rational q;
    try {
      q = parse_rational(t.text);
    } catch (const std::invalid_argument& e) {
      throw error(e.what());
    }
    if (q > 1) throw error("constant " + t.text + " exceeds 1");
    if (!is_dyadic(q)) throw error("constant " + t.text + " is not dyadic");
    take();
    return Formula::constant(SConstant::from_rational(q));
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

void print(const Formula& f, std::string& out);

void print_child(const Formula& child, bool parens, std::string& out) {
  if (parens) out += '(';
  print(child, out);
  if (parens) out += ')';
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Atom:
      out += f.name();
      return;
    case Kind::Meta:
      out += '$';
      out += f.name();
      return;
    case Kind::Const:
      if (f.value().is_zero())
        out += "bot";
      else if (f.value().is_one())
        out += "top";
      else
        out += to_string(f.value());
      return;
    case Kind::Neg:
    case Kind::Sqrt:
      out += f.kind() == Kind::Neg ? '!' : '?';
      print_child(f.operand(), is_binary(f.operand().kind()), out);
      return;
    default: {
      const int p = precedence(f.kind());
      const bool right_assoc = f.kind() == Kind::Implies;
      const int lp = precedence(f.left().kind()), rp = precedence(f.right().kind());
      print_child(f.left(), right_assoc ? lp <= p : lp < p, out);
      out += ' ';
      out += binary_symbol(f.kind());
      out += ' ';
      print_child(f.right(), right_assoc ? rp < p : rp <= p, out);
    }
  }
}

}  // namespace

int precedence(Kind k) {
  switch (k) {
    case Kind::Implies: return 1;
    case Kind::Join: return 2;
    case Kind::Meet: return 3;
    case Kind::Oplus: return 4;
    case Kind::Odot: return 5;
    case Kind::Product: return 6;
    case Kind::Neg:
    case Kind::Sqrt: return 7;
    default: return 8;
  }
}

const char* binary_symbol(Kind k) {
  switch (k) {
    case Kind::Oplus: return "+";
    case Kind::Odot: return "*";
    case Kind::Implies: return "->";
    case Kind::Product: return ".";
    case Kind::Meet: return "&";
    case Kind::Join: return "|";
    default: return "?";
  }
}

Formula parse_formula(std::string_view text, const ParseOptions& options) {
  return Parser(Lexer(text, options).run()).parse();
}

std::string print_formula(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

Theory parse_theory(std::string_view text) {
  Theory t;
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) {
      ParseOptions opt;
      opt.line = line_no;
      t.add(parse_formula(line, opt));
    }
    start = end + 1;
  }
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Theory load_theory(const std::string& path) { return parse_theory(read_file(path)); }

std::string print_theory(const Theory& t) {
  std::string out;
  for (const auto& f : t) {
    out += print_formula(f);
    out += '\n';
  }
  return out;
}

}  // namespace iqcl

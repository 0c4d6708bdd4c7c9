#include <cctype>
#include <unordered_map>

#include "helium/token.hpp"

namespace helium {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Lex: return "LexError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Name: return "NameError";
    case ErrorKind::Type: return "TypeError";
    case ErrorKind::Arity: return "ArityError";
    case ErrorKind::LoopBound: return "LoopBoundError";
    case ErrorKind::Recursion: return "RecursionError";
    case ErrorKind::Overflow: return "OverflowError";
    case ErrorKind::Cycle: return "CycleError";
    case ErrorKind::KeyResolution: return "KeyResolutionError";
    case ErrorKind::KeyMismatch: return "KeyMismatchError";
    case ErrorKind::Verify: return "VerifyError";
    case ErrorKind::MissingInput: return "MissingInputError";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Error";
}

std::string format_diagnostic(const std::string& file, const Diagnostic& d) {
  return file + ":" + std::to_string(d.span.line) + ":" +
         std::to_string(d.span.column) + ": error: " + d.message;
}

TokCategory token_category(TokKind kind) {
  switch (kind) {
    case TokKind::KwInput:
    case TokKind::KwOutput:
    case TokKind::KwVar:
    case TokKind::KwFun:
    case TokKind::KwFor:
    case TokKind::KwReturn:
    case TokKind::KwPlain:
    case TokKind::KwInt:
      return TokCategory::Keyword;
    case TokKind::Ident:
      return TokCategory::Identifier;
    case TokKind::IntLit:
      return TokCategory::IntegerLiteral;
    case TokKind::Plus:
    case TokKind::Minus:
    case TokKind::Star:
    case TokKind::StarStar:
    case TokKind::Shl:
    case TokKind::Shr:
    case TokKind::FromArrow:
    case TokKind::ToArrow:
    case TokKind::Assign:
      return TokCategory::Operator;
    default:
      return TokCategory::Punctuation;
  }
}

const char* token_kind_name(TokKind kind) {
  switch (kind) {
    case TokKind::KwInput: return "'input'";
    case TokKind::KwOutput: return "'output'";
    case TokKind::KwVar: return "'var'";
    case TokKind::KwFun: return "'fun'";
    case TokKind::KwFor: return "'for'";
    case TokKind::KwReturn: return "'return'";
    case TokKind::KwPlain: return "'plain'";
    case TokKind::KwInt: return "'int'";
    case TokKind::Ident: return "identifier";
    case TokKind::IntLit: return "integer literal";
    case TokKind::Plus: return "'+'";
    case TokKind::Minus: return "'-'";
    case TokKind::Star: return "'*'";
    case TokKind::StarStar: return "'**'";
    case TokKind::Shl: return "'<<'";
    case TokKind::Shr: return "'>>'";
    case TokKind::FromArrow: return "'<='";
    case TokKind::ToArrow: return "'=>'";
    case TokKind::Assign: return "'='";
    case TokKind::Colon: return "':'";
    case TokKind::Semi: return "';'";
    case TokKind::Comma: return "','";
    case TokKind::At: return "'@'";
    case TokKind::LParen: return "'('";
    case TokKind::RParen: return "')'";
    case TokKind::LBrace: return "'{'";
    case TokKind::RBrace: return "'}'";
    case TokKind::LBracket: return "'['";
    case TokKind::RBracket: return "']'";
    case TokKind::Eof: return "end of input";
  }
  return "token";
}

namespace {

const std::unordered_map<std::string, TokKind>& keywords() {
  static const std::unordered_map<std::string, TokKind> kw = {
      {"input", TokKind::KwInput},   {"output", TokKind::KwOutput},
      {"var", TokKind::KwVar},       {"fun", TokKind::KwFun},
      {"for", TokKind::KwFor},       {"return", TokKind::KwReturn},
      {"plain", TokKind::KwPlain},   {"int", TokKind::KwInt},
  };
  return kw;
}

class Lexer {
 public:
  explicit Lexer(const std::string& source) : src_(source) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (at_end()) break;
      out.push_back(next_token());
    }
    out.push_back(Token{TokKind::Eof, "", here(0)});
    return out;
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Span here(std::size_t length) const { return Span{line_, col_, pos_, length}; }

  void skip_trivia() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  Token make(TokKind kind, Span start) {
    Token t;
    t.kind = kind;
    t.span = start;
    t.span.length = pos_ - start.offset;
    t.lexeme = src_.substr(start.offset, t.span.length);
    return t;
  }

  Token next_token() {
    Span start = here(0);
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      Token t = make(TokKind::Ident, start);
      auto it = keywords().find(t.lexeme);
      if (it != keywords().end()) t.kind = it->second;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t value = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        int digit = peek() - '0';
        if (value > (INT64_MAX - digit) / 10)
          throw CompileError(ErrorKind::Lex, start, "integer literal out of 64-bit range");
        value = value * 10 + digit;
        advance();
      }
      return make(TokKind::IntLit, start);
    }
    switch (c) {
      case '+': advance(); return make(TokKind::Plus, start);
      case '-': advance(); return make(TokKind::Minus, start);
      case '*':
        advance();
        if (peek() == '*') { advance(); return make(TokKind::StarStar, start); }
        return make(TokKind::Star, start);
      case '<':
        advance();
        if (peek() == '<') { advance(); return make(TokKind::Shl, start); }
        if (peek() == '=') { advance(); return make(TokKind::FromArrow, start); }
        throw CompileError(ErrorKind::Lex, start, "stray '<'; expected '<<' or '<='");
      case '>':
        advance();
        if (peek() == '>') { advance(); return make(TokKind::Shr, start); }
        throw CompileError(ErrorKind::Lex, start, "stray '>'; expected '>>'");
      case '=':
        advance();
        if (peek() == '>') { advance(); return make(TokKind::ToArrow, start); }
        return make(TokKind::Assign, start);
      case ':': advance(); return make(TokKind::Colon, start);
      case ';': advance(); return make(TokKind::Semi, start);
      case ',': advance(); return make(TokKind::Comma, start);
      case '@': advance(); return make(TokKind::At, start);
      case '(': advance(); return make(TokKind::LParen, start);
      case ')': advance(); return make(TokKind::RParen, start);
      case '{': advance(); return make(TokKind::LBrace, start);
      case '}': advance(); return make(TokKind::RBrace, start);
      case '[': advance(); return make(TokKind::LBracket, start);
      case ']': advance(); return make(TokKind::RBracket, start);
      default:
        throw CompileError(ErrorKind::Lex, here(1),
                           std::string("illegal character '") + c + "'");
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(const std::string& source) {
  return Lexer(source).run();
}

}  // namespace helium

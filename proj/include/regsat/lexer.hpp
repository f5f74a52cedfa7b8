#ifndef REGSAT_LEXER_HPP
#define REGSAT_LEXER_HPP

#include <string>
#include <vector>

#include "regsat/model.hpp"

namespace regsat {

struct Token {
  enum Kind { Word, Punct, End } kind = End;
  std::string text;
  int line = 1, col = 1;
  bool glued = false;   // no whitespace before this token
};

// Words are [A-Za-z0-9_]+. With mergeQuestion, a word directly followed by
// '?' is returned as one token ("next?").
std::vector<Token> lex(const std::string& text, bool mergeQuestion);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : t_(std::move(toks)) {}
  const Token& peek(int k = 0) const;
  Token next();
  bool at_end() const { return peek().kind == Token::End; }
  bool is(const std::string& s, int k = 0) const;
  bool accept(const std::string& s);
  Token expect(const std::string& s);
  Token expect_word(const char* what);
  [[noreturn]] void fail(const std::string& msg) const;
  [[noreturn]] void fail_at(const Token& t, const std::string& msg, ErrorKind k = ErrorKind::Syntax) const;

 private:
  std::vector<Token> t_;
  std::size_t i_ = 0;
};

bool is_uint(const std::string& s);

}  // namespace regsat

#endif

#include "regsat/lexer.hpp"

#include <cctype>

namespace regsat {

namespace {

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::vector<Token> lex(const std::string& text, bool mergeQuestion) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  bool sawSpace = true;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      sawSpace = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      sawSpace = true;
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    t.glued = !sawSpace;
    sawSpace = false;
    if (word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      if (mergeQuestion && j < text.size() && text[j] == '?') ++j;
      t.kind = Token::Word;
      t.text = text.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    static const char* two[] = {":=", "->", "!="};
    bool done = false;
    for (const char* p : two) {
      if (text.compare(i, 2, p) == 0) {
        t.kind = Token::Punct;
        t.text = p;
        advance(2);
        out.push_back(t);
        done = true;
        break;
      }
    }
    if (done) continue;
    if (static_cast<unsigned char>(c) >= 0x80) {
      // keep multi-byte UTF-8 sequences together so error messages stay readable
      std::size_t j = i + 1;
      while (j < text.size() && (static_cast<unsigned char>(text[j]) & 0xC0) == 0x80) ++j;
      t.kind = Token::Punct;
      t.text = text.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    t.kind = Token::Punct;
    t.text = std::string(1, c);
    advance(1);
    out.push_back(t);
  }
  Token e;
  e.kind = Token::End;
  e.line = line;
  e.col = col;
  out.push_back(e);
  return out;
}

const Token& TokenStream::peek(int k) const {
  std::size_t j = i_ + static_cast<std::size_t>(k);
  if (j >= t_.size()) return t_.back();
  return t_[j];
}

Token TokenStream::next() {
  Token t = peek();
  if (i_ < t_.size() - 1) ++i_;
  return t;
}

bool TokenStream::is(const std::string& s, int k) const {
  const Token& t = peek(k);
  return t.kind != Token::End && t.text == s;
}

bool TokenStream::accept(const std::string& s) {
  if (is(s)) {
    next();
    return true;
  }
  return false;
}

Token TokenStream::expect(const std::string& s) {
  if (!is(s)) {
    const Token& t = peek();
    fail_at(t, "expected '" + s + "' but found " +
                   (t.kind == Token::End ? std::string("end of input") : "'" + t.text + "'"));
  }
  return next();
}

Token TokenStream::expect_word(const char* what) {
  if (peek().kind != Token::Word) {
    const Token& t = peek();
    fail_at(t, std::string("expected ") + what + " but found " +
                   (t.kind == Token::End ? std::string("end of input") : "'" + t.text + "'"));
  }
  return next();
}

void TokenStream::fail(const std::string& msg) const { fail_at(peek(), msg); }

void TokenStream::fail_at(const Token& t, const std::string& msg, ErrorKind k) const {
  throw Error(k, msg, t.line, t.col);
}

bool is_uint(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace regsat

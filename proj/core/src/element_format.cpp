#include <cctype>
#include <vector>

#include "cdtwist/element.hpp"

namespace cdtwist {

ParseError::ParseError(const std::string& message, std::string token, std::size_t offset)
    : std::invalid_argument(message + " at offset " + std::to_string(offset) + ": '" +
                            token + "'"),
      token_(std::move(token)),
      offset_(offset) {}

namespace {

enum class TokenKind { Number, Basis, Star, Plus, Minus };

struct Token {
  TokenKind kind;
  std::string_view text;
  std::size_t offset;
};

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view bad_token_at(std::string_view text, std::size_t pos) {
  std::size_t end = pos + 1;
  while (end < text.size() && !is_space(text[end]) && text[end] != '+' && text[end] != '-' &&
         text[end] != '*') {
    ++end;
  }
  return text.substr(pos, end - pos);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (is_space(c)) {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    if (c == '+' || c == '-' || c == '*') {
      tokens.push_back({c == '+'   ? TokenKind::Plus
                        : c == '-' ? TokenKind::Minus
                                   : TokenKind::Star,
                        text.substr(pos, 1), pos});
      ++pos;
    } else if (is_digit(c)) {
      while (pos < text.size() && is_digit(text[pos])) {
        ++pos;
      }
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        if (pos == text.size() || !is_digit(text[pos])) {
          throw ParseError("malformed rational", std::string(bad_token_at(text, start)), start);
        }
        while (pos < text.size() && is_digit(text[pos])) {
          ++pos;
        }
      }
      tokens.push_back({TokenKind::Number, text.substr(start, pos - start), start});
    } else if (c == 'e') {
      ++pos;
      if (pos == text.size() || !is_digit(text[pos])) {
        throw ParseError("expected basis index", std::string(bad_token_at(text, start)), start);
      }
      while (pos < text.size() && is_digit(text[pos])) {
        ++pos;
      }
      tokens.push_back({TokenKind::Basis, text.substr(start, pos - start), start});
    } else {
      throw ParseError("unexpected character", std::string(bad_token_at(text, start)), start);
    }
  }
  return tokens;
}

Scalar parse_scalar(const Token& token) {
  const auto slash = token.text.find('/');
  if (slash != std::string_view::npos &&
      token.text.find_first_not_of('0', slash + 1) == std::string_view::npos) {
    throw ParseError("zero denominator", std::string(token.text), token.offset);
  }
  Scalar value;
  if (value.set_str(std::string(token.text), 10) != 0) {
    throw ParseError("malformed coefficient", std::string(token.text), token.offset);
  }
  value.canonicalize();
  return value;
}

BasisIndex parse_index(const Token& token) {
  const std::string_view digits = token.text.substr(1);
  std::uint64_t value = 0;
  for (const char c : digits) {
    const auto digit = static_cast<std::uint64_t>(c - '0');
    if (value > (BasisIndex::kMax - digit) / 10) {
      throw ParseError("basis index exceeds 2^63 - 1", std::string(token.text), token.offset);
    }
    value = value * 10 + digit;
  }
  return BasisIndex(value);
}

}  // namespace

Element parse_element(std::string_view text) {
  const std::vector<Token> tokens = tokenize(text);
  if (tokens.empty()) {
    throw ParseError("empty element", "", 0);
  }
  if (tokens.size() == 1 && tokens[0].kind == TokenKind::Number && tokens[0].text == "0") {
    return {};
  }

  Element out;
  std::size_t i = 0;
  auto expect_more = [&](std::size_t at) {
    if (at >= tokens.size()) {
      const Token& last = tokens.back();
      throw ParseError("unexpected end of input", std::string(last.text), last.offset);
    }
  };

  bool first = true;
  while (i < tokens.size()) {
    bool negative = false;
    if (tokens[i].kind == TokenKind::Plus || tokens[i].kind == TokenKind::Minus) {
      negative = tokens[i].kind == TokenKind::Minus;
      ++i;
      expect_more(i);
    } else if (!first) {
      throw ParseError("expected '+' or '-'", std::string(tokens[i].text), tokens[i].offset);
    }
    first = false;

    Scalar coefficient = 1;
    if (tokens[i].kind == TokenKind::Number) {
      coefficient = parse_scalar(tokens[i]);
      ++i;
      expect_more(i);
      if (tokens[i].kind != TokenKind::Star) {
        throw ParseError("expected '*' after coefficient", std::string(tokens[i].text),
                         tokens[i].offset);
      }
      ++i;
      expect_more(i);
    }
    if (tokens[i].kind != TokenKind::Basis) {
      throw ParseError("expected basis term e<index>", std::string(tokens[i].text),
                       tokens[i].offset);
    }
    const BasisIndex index = parse_index(tokens[i]);
    ++i;
    out.accumulate(index, negative ? Scalar(-coefficient) : coefficient);
  }
  return out;
}

std::string to_string(const Element& x) {
  if (x.is_zero()) {
    return "0";
  }
  std::string out;
  bool first = true;
  for (const auto& [index, coefficient] : x) {
    const bool negative = sgn(coefficient) < 0;
    if (first) {
      if (negative) {
        out += '-';
      }
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Scalar magnitude = abs(coefficient);
    if (magnitude != 1) {
      out += magnitude.get_str();
      out += '*';
    }
    out += 'e';
    out += std::to_string(index);
  }
  return out;
}

}  // namespace cdtwist

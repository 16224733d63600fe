// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "slackq/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace slackq {

/// Parse failure with source position. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string msg, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + msg),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int column() const { return col_; }

private:
  int line_;
  int col_;
};

namespace detail {

struct Token {
  enum class Kind { Identifier, Number, Symbol, String, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    skipWhitespaceAndComments();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        s.push_back(take());
      }
      tok_ = {Token::Kind::Identifier, s, tok_.line, tok_.col};
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::string s;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '.' || src_[pos_] == '+' || src_[pos_] == '-')) {
        // exponent signs only directly after e/E
        if ((src_[pos_] == '+' || src_[pos_] == '-') &&
            !(s.size() && (s.back() == 'e' || s.back() == 'E'))) {
          break;
        }
        s.push_back(take());
      }
      tok_ = {Token::Kind::Number, s, tok_.line, tok_.col};
    } else if (c == '"') {
      take();
      std::string s;
      while (pos_ < src_.size() && src_[pos_] != '"') s.push_back(take());
      if (pos_ >= src_.size()) {
        throw ParseError("unterminated string", tok_.line, tok_.col);
      }
      take();
      tok_ = {Token::Kind::String, s, tok_.line, tok_.col};
    } else {
      std::string s(1, take());
      if (s == "-" && pos_ < src_.size() && src_[pos_] == '>') {
        s.push_back(take());
      }
      tok_ = {Token::Kind::Symbol, s, tok_.line, tok_.col};
    }
  }

  void skipWhitespaceAndComments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

class Parser {
public:
  explicit Parser(const std::string& src) : lex_(src) {}

  SourceCircuit parse() {
    expectIdentifier("OPENQASM");
    Token ver = expect(Token::Kind::Number);
    if (ver.text != "2.0") {
      throw ParseError("unsupported OPENQASM version '" + ver.text + "'",
                       ver.line, ver.col);
    }
    expectSymbol(";");
    circuit_.includes.clear();

    while (lex_.peek().kind != Token::Kind::End) {
      statement();
    }
    if (!sawQreg_) {
      Token t = lex_.peek();
      throw ParseError("program declares no quantum register", t.line, t.col);
    }
    return circuit_;
  }

private:
  void statement() {
    Token t = expect(Token::Kind::Identifier);
    if (t.text == "include") {
      Token file = expect(Token::Kind::String);
      expectSymbol(";");
      circuit_.includes.push_back(file.text);
    } else if (t.text == "qreg") {
      declareQreg(t);
    } else if (t.text == "creg") {
      declareCreg(t);
    } else if (t.text == "barrier") {
      barrier();
    } else if (t.text == "measure") {
      measure();
    } else if (t.text == "gate" || t.text == "opaque" || t.text == "if") {
      throw ParseError("unsupported statement '" + t.text + "'", t.line,
                       t.col);
    } else {
      gateApplication(t);
    }
  }

  void declareQreg(const Token& at) {
    if (sawQreg_) {
      throw ParseError("multiple quantum registers are not supported", at.line,
                       at.col);
    }
    Token name = expect(Token::Kind::Identifier);
    expectSymbol("[");
    circuit_.num_qubits = expectInt();
    expectSymbol("]");
    expectSymbol(";");
    if (circuit_.num_qubits < 1) {
      throw ParseError("quantum register must have at least one qubit",
                       name.line, name.col);
    }
    circuit_.qreg_name = name.text;
    sawQreg_ = true;
  }

  void declareCreg(const Token& at) {
    if (!circuit_.creg_name.empty()) {
      throw ParseError("multiple classical registers are not supported",
                       at.line, at.col);
    }
    Token name = expect(Token::Kind::Identifier);
    expectSymbol("[");
    circuit_.creg_size = expectInt();
    expectSymbol("]");
    expectSymbol(";");
    circuit_.creg_name = name.text;
  }

  void barrier() {
    RawGate g;
    g.name = "barrier";
    for (int q : argumentList(/*allow_whole_register=*/true)) {
      if (std::find(g.qubits.begin(), g.qubits.end(), q) == g.qubits.end()) {
        g.qubits.push_back(q);
      }
    }
    expectSymbol(";");
    circuit_.gates.push_back(std::move(g));
  }

  void measure() {
    Token at = lex_.peek();
    auto [qfirst, qcount] = qubitArgument();
    expectSymbol("->");
    auto [cfirst, ccount] = cregArgument();
    expectSymbol(";");
    if (qcount != ccount) {
      throw ParseError("measure register sizes differ", at.line, at.col);
    }
    for (int i = 0; i < qcount; ++i) {
      RawGate g;
      g.name = "measure";
      g.qubits = {qfirst + i};
      g.creg_bit = cfirst + i;
      circuit_.gates.push_back(std::move(g));
    }
  }

  void gateApplication(const Token& name) {
    RawGate g;
    g.name = name.text;
    if (lex_.peek().kind == Token::Kind::Symbol && lex_.peek().text == "(") {
      lex_.next();
      while (true) {
        g.params.push_back(paramExpression());
        if (lex_.peek().text == ",") {
          lex_.next();
          continue;
        }
        break;
      }
      expectSymbol(")");
    }
    g.qubits = argumentList(/*allow_whole_register=*/false);
    expectSymbol(";");

    if (g.qubits.size() == 2) {
      if (!g.is_cx() && !g.is_swap()) {
        throw ParseError("unknown two-qubit gate '" + g.name + "'", name.line,
                         name.col);
      }
      if (g.qubits[0] == g.qubits[1]) {
        throw ParseError("two-qubit gate with identical operands", name.line,
                         name.col);
      }
    } else if (g.qubits.size() == 1) {
      if (g.is_cx() || g.is_swap()) {
        throw ParseError("gate '" + g.name + "' requires two operands",
                         name.line, name.col);
      }
    } else {
      throw ParseError("gate '" + g.name + "' has unsupported operand count",
                       name.line, name.col);
    }
    circuit_.gates.push_back(std::move(g));
  }

  // Angle text between commas/parens, passed through verbatim (trimmed).
  std::string paramExpression() {
    std::string out;
    int depth = 0;
    while (true) {
      const Token& p = lex_.peek();
      if (p.kind == Token::Kind::End) {
        throw ParseError("unterminated parameter list", p.line, p.col);
      }
      if (p.kind == Token::Kind::Symbol && depth == 0 &&
          (p.text == "," || p.text == ")")) {
        break;
      }
      if (p.kind == Token::Kind::Symbol && p.text == "(") ++depth;
      if (p.kind == Token::Kind::Symbol && p.text == ")") --depth;
      out += lex_.next().text;
    }
    if (out.empty()) {
      throw ParseError("empty gate parameter", lex_.peek().line,
                       lex_.peek().col);
    }
    return out;
  }

  std::vector<int> argumentList(bool allow_whole_register) {
    std::vector<int> qubits;
    while (true) {
      auto [first, count] = qubitArgument();
      if (count > 1 && !allow_whole_register) {
        throw ParseError("whole-register operands are only supported for "
                         "barrier and measure",
                         lex_.peek().line, lex_.peek().col);
      }
      for (int i = 0; i < count; ++i) qubits.push_back(first + i);
      if (lex_.peek().text == ",") {
        lex_.next();
        continue;
      }
      break;
    }
    return qubits;
  }

  // Returns (first index, count); count == register size for bare names.
  std::pair<int, int> qubitArgument() {
    Token name = expect(Token::Kind::Identifier);
    if (!sawQreg_ || name.text != circuit_.qreg_name) {
      throw ParseError("unknown quantum register '" + name.text + "'",
                       name.line, name.col);
    }
    if (lex_.peek().text == "[") {
      lex_.next();
      int idx = expectInt();
      Token close = expectSymbol("]");
      if (idx < 0 || idx >= circuit_.num_qubits) {
        throw ParseError("qubit index " + std::to_string(idx) +
                             " out of range",
                         close.line, close.col);
      }
      return {idx, 1};
    }
    return {0, circuit_.num_qubits};
  }

  std::pair<int, int> cregArgument() {
    Token name = expect(Token::Kind::Identifier);
    if (circuit_.creg_name.empty() || name.text != circuit_.creg_name) {
      throw ParseError("unknown classical register '" + name.text + "'",
                       name.line, name.col);
    }
    if (lex_.peek().text == "[") {
      lex_.next();
      int idx = expectInt();
      Token close = expectSymbol("]");
      if (idx < 0 || idx >= circuit_.creg_size) {
        throw ParseError("classical bit index " + std::to_string(idx) +
                             " out of range",
                         close.line, close.col);
      }
      return {idx, 1};
    }
    return {0, circuit_.creg_size};
  }

  Token expect(Token::Kind kind) {
    Token t = lex_.next();
    if (t.kind != kind) {
      throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
    }
    return t;
  }

  Token expectSymbol(const std::string& s) {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Symbol || t.text != s) {
      throw ParseError("expected '" + s + "' but found '" + t.text + "'",
                       t.line, t.col);
    }
    return t;
  }

  void expectIdentifier(const std::string& s) {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Identifier || t.text != s) {
      throw ParseError("expected '" + s + "'", t.line, t.col);
    }
  }

  int expectInt() {
    Token t = expect(Token::Kind::Number);
    try {
      std::size_t used = 0;
      int v = std::stoi(t.text, &used);
      if (used != t.text.size()) throw std::invalid_argument(t.text);
      return v;
    } catch (const std::exception&) {
      throw ParseError("expected integer, found '" + t.text + "'", t.line,
                       t.col);
    }
  }

  Lexer lex_;
  SourceCircuit circuit_;
  bool sawQreg_ = false;
};

}  // namespace detail

/// Parse an OpenQASM 2.0 program over a single quantum register.
inline SourceCircuit parse_qasm(const std::string& text) {
  return detail::Parser(text).parse();
}

inline SourceCircuit parse_qasm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_qasm(ss.str());
}

namespace detail {

inline void emitGateLine(std::ostream& os, const SourceCircuit& c,
                         const RawGate& g) {
  os << g.name;
  if (!g.params.empty()) {
    os << '(';
    for (std::size_t i = 0; i < g.params.size(); ++i) {
      if (i) os << ',';
      os << g.params[i];
    }
    os << ')';
  }
  os << ' ';
  for (std::size_t i = 0; i < g.qubits.size(); ++i) {
    if (i) os << ',';
    os << c.qreg_name << '[' << g.qubits[i] << ']';
  }
  if (g.is_measure()) {
    os << " -> " << c.creg_name << '[' << g.creg_bit << ']';
  }
  os << ";\n";
}

inline void emitCx(std::ostream& os, const SourceCircuit& c, int a, int b) {
  os << "cx " << c.qreg_name << '[' << a << "]," << c.qreg_name << '[' << b
     << "];\n";
}

inline void emitH(std::ostream& os, const SourceCircuit& c, int a) {
  os << "h " << c.qreg_name << '[' << a << "];\n";
}

}  // namespace detail

/// Print a circuit as OpenQASM 2.0, deterministically (LF endings).
/// With decompose_swaps, each swap becomes 3 cx (bidirectional links) or
/// 3 cx + 4 h (single-direction links).
inline std::string emit_qasm(const SourceCircuit& c,
                             bool decompose_swaps = false,
                             bool directed = false) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\n";
  for (const auto& inc : c.includes) os << "include \"" << inc << "\";\n";
  os << "qreg " << c.qreg_name << '[' << c.num_qubits << "];\n";
  if (!c.creg_name.empty()) {
    os << "creg " << c.creg_name << '[' << c.creg_size << "];\n";
  }
  for (const auto& g : c.gates) {
    if (g.is_swap() && decompose_swaps) {
      int a = g.qubits[0];
      int b = g.qubits[1];
      if (directed) {
        detail::emitCx(os, c, a, b);
        detail::emitH(os, c, a);
        detail::emitH(os, c, b);
        detail::emitCx(os, c, a, b);
        detail::emitH(os, c, a);
        detail::emitH(os, c, b);
        detail::emitCx(os, c, a, b);
      } else {
        detail::emitCx(os, c, a, b);
        detail::emitCx(os, c, b, a);
        detail::emitCx(os, c, a, b);
      }
    } else {
      detail::emitGateLine(os, c, g);
    }
  }
  return os.str();
}

}  // namespace slackq

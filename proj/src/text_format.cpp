#include "inet/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace inet {

namespace {

enum class Tok { Word, Number, Open, Close, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++i;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance();
      continue;
    }
    if (c == '\n') {
      out.push_back({Tok::Newline, "\\n", line, column});
      advance();
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance();
      continue;
    }
    if (c == '{' || c == '}') {
      out.push_back({c == '{' ? Tok::Open : Tok::Close, std::string(1, c), line, column});
      advance();
      continue;
    }
    Token t{Tok::Word, "", line, column};
    while (i < text.size()) {
      char d = text[i];
      if (d == ' ' || d == '\t' || d == '\r' || d == '\n' || d == '{' || d == '}' || d == '#') break;
      t.text.push_back(d);
      advance();
    }
    if (std::all_of(t.text.begin(), t.text.end(), [](char d) { return d >= '0' && d <= '9'; })) {
      t.kind = Tok::Number;
    }
    out.push_back(std::move(t));
  }
  out.push_back({Tok::End, "end of input", line, column});
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
    default: return "'" + t.text + "'";
  }
}

// Ports of a block with the places they were written.
struct Spot {
  int line;
  int column;
};

struct RawBody {
  Spot open;
  std::vector<Orbit> wires;  // wire and loop lines
  std::vector<Orbit> cuts;
  std::vector<Cell> cells;
  std::vector<std::pair<std::string, Interface>> interfaces;
  std::map<Port, std::vector<Spot>> seen;
  // Start of the cell line each cell port appears on.
  std::map<Port, Spot> cell_line;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Document run() {
    Document doc;
    for (;;) {
      skip_newlines();
      const Token& t = peek();
      if (t.kind == Tok::End) break;
      if (t.kind != Tok::Word) fail(t, "expected 'symbol', 'net' or 'rule', got " + describe(t));
      if (t.text == "symbol") {
        parse_symbol(doc);
      } else if (t.text == "net") {
        parse_net(doc);
      } else if (t.text == "rule") {
        parse_rule(doc);
      } else {
        fail(t, "expected 'symbol', 'net' or 'rule', got " + describe(t));
      }
    }
    return doc;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;

  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] static void fail(const Token& t, const std::string& message,
                                ErrorKind kind = ErrorKind::SyntaxError) {
    throw ParseError(kind, message, t.line, t.column);
  }

  [[noreturn]] static void invariant(const Error& e, Spot at) {
    throw ParseError(e.kind(), e.what(), at.line, at.column, true);
  }

  void skip_newlines() {
    while (peek().kind == Tok::Newline) ++pos_;
  }

  void end_of_statement() {
    const Token& t = peek();
    if (t.kind == Tok::Newline) {
      ++pos_;
    } else if (t.kind != Tok::Close && t.kind != Tok::End) {
      fail(t, "expected end of line, got " + describe(t));
    }
  }

  bool at_statement_end() const {
    Tok k = peek().kind;
    return k == Tok::Newline || k == Tok::Close || k == Tok::End;
  }

  const Token& expect(Tok kind, const std::string& what) {
    const Token& t = peek();
    if (t.kind != kind) fail(t, "expected " + what + ", got " + describe(t));
    return take();
  }

  std::size_t number(const std::string& what) {
    const Token& t = expect(Tok::Number, what);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || v > 0xfffffffeULL) fail(t, what + " " + t.text + " is out of range");
    return static_cast<std::size_t>(v);
  }

  Port port(RawBody& body) {
    const Token& t = peek();
    Port p = static_cast<Port>(number("a port"));
    body.seen[p].push_back({t.line, t.column});
    return p;
  }

  const Token& symbol_ref(const Document& doc) {
    const Token& t = expect(Tok::Word, "a symbol name");
    if (!doc.symbols.contains(t.text)) fail(t, "unknown symbol " + t.text, ErrorKind::UnknownSymbol);
    return t;
  }

  void parse_symbol(Document& doc) {
    take();
    const Token& name = expect(Tok::Word, "a symbol name");
    std::size_t arity = number("an arity");
    if (doc.symbols.contains(name.text)) {
      fail(name, "symbol " + name.text + " is declared twice", ErrorKind::DuplicateName);
    }
    doc.symbols.declare(name.text, arity);
    end_of_statement();
  }

  // Lines of a net body up to and including the closing brace.
  RawBody parse_body(const Document& doc, bool in_rule) {
    RawBody body;
    const Token& open = expect(Tok::Open, "'{'");
    body.open = {open.line, open.column};
    std::set<std::string> names;
    for (;;) {
      skip_newlines();
      const Token& t = peek();
      if (t.kind == Tok::Close) {
        take();
        return body;
      }
      if (t.kind != Tok::Word) fail(t, "expected a net line, got " + describe(t));
      take();
      if (t.text == "wire" || (t.text == "cut" && !in_rule)) {
        Port a = port(body);
        Port b = port(body);
        (t.text == "wire" ? body.wires : body.cuts).push_back({a, b});
      } else if (t.text == "loop") {
        Port a = port(body);
        body.wires.push_back({a, a});
      } else if (t.text == "cell") {
        const Token& label = symbol_ref(doc);
        Spot line{t.line, t.column};
        Cell c;
        c.label = label.text;
        c.cycle.push_back(port(body));
        while (!at_statement_end()) c.cycle.push_back(port(body));
        for (Port p : c.cycle) body.cell_line.emplace(p, line);
        body.cells.push_back(std::move(c));
      } else if (t.text == "interface" && !in_rule) {
        const Token& name = expect(Tok::Word, "an interface name");
        if (!names.insert(name.text).second) {
          fail(name, "interface " + name.text + " is declared twice", ErrorKind::DuplicateName);
        }
        Interface ports;
        while (!at_statement_end()) ports.push_back(port(body));
        body.interfaces.push_back({name.text, std::move(ports)});
      } else {
        fail(t, "unexpected " + describe(t) + (in_rule ? " in a rule body" : " in a net body"));
      }
      end_of_statement();
    }
  }

  // Where to blame an error about port p.
  static Spot blame(const RawBody& body, const Error& e) {
    if (!e.port()) return body.open;
    switch (e.kind()) {
      case ErrorKind::ArityMismatch:
      case ErrorKind::UnknownSymbol:
      case ErrorKind::CellPortIsLoop:
      case ErrorKind::CellPortUnwired:
        if (auto c = body.cell_line.find(*e.port()); c != body.cell_line.end()) return c->second;
        break;
      default:
        break;
    }
    auto it = body.seen.find(*e.port());
    if (it == body.seen.end()) return body.open;
    if (e.kind() == ErrorKind::PortReuse && it->second.size() > 1) return it->second[1];
    return it->second.front();
  }

  static Net build_net(const RawBody& body, const SymbolTable& symbols) {
    Net net;
    try {
      net = Net(WPermutation(body.wires), CellPermutation(body.cells));
      if (auto e = validate(net, symbols)) throw *e;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      invariant(e, blame(body, e));
    }
    return net;
  }

  static ACNet build_ac(const RawBody& body, const SymbolTable& symbols) {
    ACNet net;
    try {
      net = ACNet(WPermutation(body.wires), WPermutation(body.cuts), CellPermutation(body.cells));
      if (auto e = validate_ac(net, symbols)) throw *e;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      invariant(e, blame(body, e));
    }
    return net;
  }

  void parse_net(Document& doc) {
    take();
    const Token& name = expect(Tok::Word, "a net name");
    if (doc.find_net(name.text)) fail(name, "net " + name.text + " is declared twice", ErrorKind::DuplicateName);
    RawBody body = parse_body(doc, false);
    end_of_statement();
    NetBlock block{name.text, Net(), body.interfaces};
    if (body.cuts.empty()) {
      Net net = build_net(body, doc.symbols);
      for (const auto& [iname, ports] : body.interfaces) {
        if (auto e = check_context({net, ports})) invariant(*e, blame(body, *e));
      }
      block.net = std::move(net);
    } else {
      ACNet net = build_ac(body, doc.symbols);
      for (const auto& [iname, ports] : body.interfaces) {
        PortSet distinct;
        for (Port p : ports) {
          if (!net.is_free(p)) {
            Error e(ErrorKind::IllTyped, "interface port " + std::to_string(p) + " is not free", p);
            invariant(e, blame(body, e));
          }
          if (!distinct.insert(p).second) {
            Error e(ErrorKind::PortReuse, "interface repeats port " + std::to_string(p), p);
            invariant(e, blame(body, e));
          }
        }
      }
      block.net = std::move(net);
    }
    doc.nets.push_back(std::move(block));
  }

  void parse_rule(Document& doc) {
    const Token& head = take();
    Rule rule;
    rule.left_symbol = symbol_ref(doc).text;
    rule.right_symbol = symbol_ref(doc).text;
    RawBody body;
    expect(Tok::Open, "'{'");
    skip_newlines();
    const Token& rhs = expect(Tok::Word, "'rhs'");
    if (rhs.text != "rhs") fail(rhs, "expected 'rhs', got " + describe(rhs));
    body = parse_body(doc, true);
    end_of_statement();
    skip_newlines();
    const Token& iface = expect(Tok::Word, "'interface'");
    if (iface.text != "interface") fail(iface, "expected 'interface', got " + describe(iface));
    while (!at_statement_end()) rule.replacement.interface.push_back(port(body));
    end_of_statement();
    skip_newlines();
    expect(Tok::Close, "'}'");
    end_of_statement();

    rule.replacement.net = build_net(body, doc.symbols);
    if (auto e = validate_rule(rule, doc.symbols)) invariant(*e, blame(body, *e));
    for (const Rule& r : doc.rules) {
      bool same = (r.left_symbol == rule.left_symbol && r.right_symbol == rule.right_symbol) ||
                  (r.left_symbol == rule.right_symbol && r.right_symbol == rule.left_symbol);
      if (same) {
        invariant(Error(ErrorKind::DuplicateRule,
                        "second rule for " + rule.left_symbol + " and " + rule.right_symbol),
                  {head.line, head.column});
      }
    }
    doc.rules.push_back(std::move(rule));
  }
};

void print_ports(std::ostream& out, const std::vector<Port>& ports) {
  for (Port p : ports) out << ' ' << p;
}

void print_body(std::ostream& out, const WPermutation& wiring, const WPermutation* cuts,
                const CellPermutation& cells, const std::string& indent) {
  for (const Orbit& o : wiring.orbits()) {
    if (o.fixed_point()) {
      out << indent << "loop " << o.first << '\n';
    } else {
      out << indent << "wire " << o.first << ' ' << o.second << '\n';
    }
  }
  if (cuts) {
    for (const Orbit& o : cuts->orbits()) out << indent << "cut " << o.first << ' ' << o.second << '\n';
  }
  for (const Cell& c : cells.orbits()) {
    out << indent << "cell " << c.label;
    print_ports(out, c.cycle);
    out << '\n';
  }
}

}  // namespace

const NetBlock* Document::find_net(std::string_view name) const {
  for (const NetBlock& b : nets) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

Document parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Document& doc) {
  std::ostringstream out;
  bool first = true;
  auto separate = [&] {
    if (!first) out << '\n';
    first = false;
  };
  if (!doc.symbols.entries().empty()) {
    separate();
    for (const auto& [name, arity] : doc.symbols.entries()) out << "symbol " << name << ' ' << arity << '\n';
  }
  for (const NetBlock& b : doc.nets) {
    separate();
    out << "net " << b.name << " {\n";
    if (const Net* n = std::get_if<Net>(&b.net)) {
      print_body(out, n->wiring(), nullptr, n->cells(), "  ");
    } else {
      const ACNet& a = std::get<ACNet>(b.net);
      print_body(out, a.axioms(), &a.cuts(), a.cells(), "  ");
    }
    for (const auto& [name, ports] : b.interfaces) {
      out << "  interface " << name;
      print_ports(out, ports);
      out << '\n';
    }
    out << "}\n";
  }
  for (const Rule& r : doc.rules) {
    separate();
    out << "rule " << r.left_symbol << ' ' << r.right_symbol << " {\n  rhs {\n";
    print_body(out, r.replacement.net.wiring(), nullptr, r.replacement.net.cells(), "    ");
    out << "  }\n  interface";
    print_ports(out, r.replacement.interface);
    out << "\n}\n";
  }
  return out.str();
}

std::string format_diagnostic(std::string_view file, const ParseError& e) {
  std::ostringstream out;
  out << file << ':' << e.line() << ':' << e.column() << ": error: ";
  if (e.invariant_violation()) {
    out << "InvariantViolation(" << to_string(e.kind()) << ")";
  } else {
    out << to_string(e.kind());
  }
  out << ": " << e.what();
  return out.str();
}

}  // namespace inet

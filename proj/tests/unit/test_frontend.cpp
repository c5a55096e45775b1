#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "inet/cli.hpp"
#include "inet/dot.hpp"
#include "inet/text_format.hpp"
#include "testkit.hpp"

using namespace inet;
using testkit::Rng;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<fs::path> corpus(const std::string& sub = "") {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(fs::path(CORPUS_DIR) / sub)) {
    if (e.path().extension() == ".inet") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "inet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string mll_file() { return (fs::path(CORPUS_DIR) / "mll.inet").string(); }

const Net& net_of(const NetBlock& b) { return std::get<Net>(b.net); }

std::size_t count(const std::string& text, const std::regex& re) {
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

ErrorKind parse_kind(const std::string& text, bool* invariant = nullptr) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    if (invariant) *invariant = e.invariant_violation();
    return e.kind();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorKind::Mismatch;
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("inet_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Parse, ExampleNet) {
  Document d = parse(
      "symbol Par 2\nsymbol Times 2\n"
      "net main { wire 0 3\n wire 1 2\n wire 8 4\n wire 7 5\n wire 6 9\n cell Par 0 1 2\n cell Times 3 4 5\n}\n");
  ASSERT_EQ(d.nets.size(), 1u);
  EXPECT_EQ(d.nets[0].name, "main");
  EXPECT_EQ(net_of(d.nets[0]), Net(WPermutation{{0, 3}, {1, 2}, {8, 4}, {7, 5}, {6, 9}},
                                   std::vector<Cell>{{{0, 1, 2}, "Par"}, {{3, 4, 5}, "Times"}}));
  EXPECT_EQ(d.symbols, testkit::mll_symbols());
}

TEST(Parse, CorpusFile) {
  Document d = parse(slurp(mll_file()));
  ASSERT_NE(d.find_net("main"), nullptr);
  EXPECT_EQ(net_of(*d.find_net("main")), testkit::mll_net());
  ASSERT_EQ(d.rules.size(), 1u);
  EXPECT_EQ(d.rules[0], testkit::mll_rule());
  EXPECT_EQ(d.find_net("other"), nullptr);

  Document c = parse(slurp(fs::path(CORPUS_DIR) / "combinators.inet"));
  EXPECT_EQ(c.symbols, testkit::combinator_symbols());
  EXPECT_EQ(c.rules, testkit::combinator_rules().rules());
  const NetBlock* a = c.find_net("annihilate");
  ASSERT_NE(a, nullptr);
  ASSERT_EQ(a->interfaces.size(), 2u);
  EXPECT_EQ(a->interfaces[0], (std::pair<std::string, Interface>{"left", {10, 11}}));
}

TEST(Parse, EmptyAndComments) {
  EXPECT_EQ(parse(""), Document());
  EXPECT_EQ(parse("# nothing\n\n   # here\n"), Document());
  EXPECT_EQ(print(Document()), "");
}

TEST(Parse, AcBlocks) {
  Document d = parse(slurp(fs::path(CORPUS_DIR) / "ac.inet"));
  const NetBlock* b = d.find_net("small");
  ASSERT_NE(b, nullptr);
  ASSERT_TRUE(b->is_ac());
  EXPECT_EQ(std::get<ACNet>(b->net),
            ACNet(WPermutation{{1, 2}, {3, 4}, {5, 6}}, WPermutation{{2, 3}}, std::vector<Cell>{{{4, 5}, "S"}}));
}

TEST(Parse, Errors) {
  bool inv = false;
  EXPECT_EQ(parse_kind("symbol Par 2\nnet m { wire 0 2\n wire 1 3\n cell Par 0 1 }", &inv), ErrorKind::ArityMismatch);
  EXPECT_TRUE(inv);
  EXPECT_EQ(parse_kind("symbol P", &inv), ErrorKind::SyntaxError);
  EXPECT_FALSE(inv);
  EXPECT_EQ(parse_kind("net m { cell X 0 }"), ErrorKind::UnknownSymbol);
  EXPECT_EQ(parse_kind("symbol A 0\nsymbol A 1"), ErrorKind::DuplicateName);
  EXPECT_EQ(parse_kind("net m { wire 1 2\n interface i 1\n interface i 2 }"), ErrorKind::DuplicateName);
  EXPECT_EQ(parse_kind("net m { wire 1 2"), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_kind("net m { wire 1 two }"), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_kind("frob"), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_kind("symbol A 0\nsymbol B 0\nrule A B {\n rhs {\n cut 1 2\n }\n interface\n}"), ErrorKind::SyntaxError);
  // Statements end at line ends, so a one-line rule is rejected.
  EXPECT_EQ(parse_kind("symbol A 1\nsymbol B 0\nrule A B { rhs { } interface }", &inv), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_kind("symbol A 1\nsymbol B 0\nrule A B {\n rhs {\n }\n interface\n}", &inv), ErrorKind::SizeMismatch);
  EXPECT_TRUE(inv);
  EXPECT_EQ(parse_kind("net m { wire 1 2\n interface i 7 }", &inv), ErrorKind::IllTyped);
}

TEST(Parse, DiagnosticLocation) {
  try {
    parse("symbol Par 2\nnet m {\n  wire 0 2\n  wire 1 3\n  cell Par 0 1\n}\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5);
    EXPECT_EQ(format_diagnostic("f.inet", e).rfind("f.inet:5:", 0), 0u);
    EXPECT_NE(format_diagnostic("f.inet", e).find("error: InvariantViolation(ArityMismatch): "), std::string::npos);
  }
  try {
    parse("net m {\n  wire 1 2\n  wire 3 2\n}\n");
    FAIL();
  } catch (const ParseError& e) {
    // The second use of the port is blamed.
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.kind(), ErrorKind::PortReuse);
  }
}

TEST(Print, CanonicalText) {
  Document d;
  d.symbols.declare("B", 0);
  d.symbols.declare("A", 1);
  d.nets.push_back({"n", Net(WPermutation{{9, 2}, {5}, {3, 4}}, std::vector<Cell>{{{4, 2}, "A"}}), {{"io", {3, 9}}}});
  EXPECT_EQ(print(d),
            "symbol A 1\nsymbol B 0\n\nnet n {\n  wire 2 9\n  wire 3 4\n  loop 5\n  cell A 4 2\n  interface io 3 9\n}\n");
  EXPECT_EQ(parse(print(d)), d);
}

TEST(Print, RoundTripsTheCorpus) {
  for (const fs::path& p : corpus()) {
    Document d = parse(slurp(p));
    std::string once = print(d);
    EXPECT_EQ(parse(once), d) << p;
    EXPECT_EQ(print(parse(once)), once) << p;
  }
}

TEST(Print, RoundTripsRandomDocuments) {
  Rng rng(71);
  SymbolTable syms = testkit::combinator_symbols();
  for (int trial = 0; trial < 300; ++trial) {
    Document d;
    d.symbols = syms;
    std::size_t nets = testkit::uniform(rng, 0, 3);
    for (std::size_t i = 0; i < nets; ++i) {
      Net n = testkit::random_net(rng, syms, static_cast<Port>(testkit::uniform(rng, 0, 50)), {5, 5, 2});
      NetBlock b{"n" + std::to_string(i), n, {}};
      auto free = testkit::as_vector(n.free_ports());
      if (!free.empty() && testkit::coin(rng, 0.5)) b.interfaces.push_back({"io", {free.front()}});
      if (free.size() >= 2 && testkit::coin(rng, 0.4)) {
        // Cut the first two free ports when they are not one wire.
        if (n.wiring()(free[0]) != free[1]) b.net = ACNet(n.wiring(), WPermutation{{free[0], free[1]}}, n.cells());
        b.interfaces.clear();
      }
      d.nets.push_back(std::move(b));
    }
    if (testkit::coin(rng, 0.5)) d.rules = testkit::combinator_rules().rules();
    std::string text = print(d);
    ASSERT_EQ(parse(text), d) << text;
    ASSERT_EQ(print(parse(text)), text);
  }
}

TEST(Diagnostics, BadCorpus) {
  auto bad = corpus("bad");
  EXPECT_EQ(bad.size(), 10u);
  std::regex expect_line("^# expect: (\\S+)");
  for (const fs::path& p : bad) {
    std::string text = slurp(p);
    std::smatch m;
    ASSERT_TRUE(std::regex_search(text, m, expect_line)) << p;
    Outcome r = cli({"check", p.string()});
    EXPECT_EQ(r.status, 1) << p;
    EXPECT_NE(r.err.find("error: " + m[1].str() + ": "), std::string::npos) << p << ": " << r.err;
    EXPECT_EQ(r.err.rfind(p.string() + ":", 0), 0u) << r.err;
  }
}

TEST(Dot, ExampleCounts) {
  std::string dot = to_dot(testkit::mll_net());
  EXPECT_EQ(dot.rfind("graph net {", 0), 0u);
  EXPECT_EQ(count(dot, std::regex("shape=triangle")), 3u);
  EXPECT_EQ(count(dot, std::regex("shape=plaintext")), 1u);
  EXPECT_NE(dot.find("p9 [shape=plaintext"), std::string::npos);
  EXPECT_EQ(count(dot, std::regex(" -- ")), 5u);
  EXPECT_EQ(count(dot, std::regex("color=red")), 1u);
  EXPECT_NE(dot.find("label=\"Par@0\""), std::string::npos);
}

TEST(Dot, EdgeCases) {
  std::string empty = to_dot(Net());
  EXPECT_EQ(count(empty, std::regex(" -- ")), 0u);
  EXPECT_EQ(count(empty, std::regex("shape=")), 0u);
  std::string loop = to_dot(Net(WPermutation{{4}}, CellPermutation()));
  EXPECT_EQ(count(loop, std::regex(" -- ")), 1u);
  EXPECT_NE(loop.find("l4 -- l4"), std::string::npos);
  ACNet ac(WPermutation{{1, 2}, {3, 4}, {5, 6}}, WPermutation{{2, 3}}, std::vector<Cell>{{{4, 5}, "S"}});
  std::string a = to_dot(ac, "ac");
  EXPECT_EQ(a.rfind("graph ac {", 0), 0u);
  EXPECT_EQ(count(a, std::regex("black:black")), 1u);
  EXPECT_EQ(count(a, std::regex(" -- ")), 4u);
}

TEST(Cli, Check) {
  Outcome r = cli({"check", mll_file()});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("ok (2 symbols, 1 nets, 1 rules)"), std::string::npos);
  EXPECT_EQ(cli({"check", "/nonexistent/file.inet"}).status, 1);
}

TEST(Cli, Usage) {
  EXPECT_EQ(cli({}).status, 2);
  EXPECT_EQ(cli({"frobnicate"}).status, 2);
  EXPECT_EQ(cli({"reduce"}).status, 2);
  EXPECT_EQ(cli({"reduce", mll_file(), "--strategy", "sideways"}).status, 2);
  EXPECT_EQ(cli({"reduce", mll_file(), "--engine", "magic"}).status, 2);
  EXPECT_EQ(cli({"reduce", mll_file(), "--bogus"}).status, 2);
  EXPECT_EQ(cli({"--help"}).status, 0);
}

TEST(Cli, ReducePrintsTheNormalForm) {
  Outcome r = cli({"reduce", mll_file()});
  ASSERT_EQ(r.status, 0) << r.err;
  Document d = parse(r.out);
  ASSERT_EQ(d.nets.size(), 1u);
  EXPECT_TRUE(isomorphic(net_of(d.nets[0]), testkit::mll_result(), true));
  EXPECT_NE(r.err.find("steps: 1"), std::string::npos);

  Outcome dpo = cli({"reduce", mll_file(), "--engine", "dpo"});
  ASSERT_EQ(dpo.status, 0) << dpo.err;
  EXPECT_TRUE(isomorphic(net_of(parse(dpo.out).nets[0]), testkit::mll_result(), true));

  Outcome random = cli({"reduce", mll_file(), "--strategy", "random", "--seed", "5"});
  EXPECT_EQ(random.out, r.out);
}

TEST(Cli, EnginesAgreeOnTheCorpus) {
  for (const fs::path& p : corpus()) {
    Document d = parse(slurp(p));
    for (const NetBlock& b : d.nets) {
      if (b.is_ac()) continue;
      Outcome a = cli({"reduce", p.string(), "--net", b.name});
      Outcome g = cli({"reduce", p.string(), "--net", b.name, "--engine", "dpo"});
      ASSERT_EQ(a.status, 0) << a.err;
      ASSERT_EQ(g.status, 0) << g.err;
      EXPECT_TRUE(isomorphic(net_of(parse(a.out).nets[0]), net_of(parse(g.out).nets[0]), true)) << p << " " << b.name;
    }
  }
}

TEST(Cli, TraceAndDot) {
  fs::path dir = scratch("dot");
  Outcome r = cli({"reduce", mll_file(), "--trace", "--dot-dir", dir.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.err.find("step 1: Par@0 >< Times@3 (rule Par Times)"), std::string::npos) << r.err;
  EXPECT_TRUE(fs::exists(dir / "step_0000.dot"));
  EXPECT_TRUE(fs::exists(dir / "step_0001.dot"));
  EXPECT_FALSE(fs::exists(dir / "step_0002.dot"));
  EXPECT_EQ(slurp(dir / "step_0000.dot"), to_dot(testkit::mll_net()));
  fs::remove_all(dir);
  Outcome missing = cli({"reduce", mll_file(), "--dot-dir", (fs::path(mll_file()) / "sub").string()});
  EXPECT_EQ(missing.status, 1);
}

TEST(Cli, StepLimitAndSelection) {
  fs::path dir = scratch("limit");
  std::ofstream(dir / "two.inet") << slurp(mll_file())
                                  << "net twice {\n  wire 0 3\n  wire 1 2\n  wire 4 5\n  wire 10 13\n  wire 11 12\n"
                                     "  wire 14 15\n  cell Par 0 1 2\n  cell Times 3 4 5\n  cell Par 10 11 12\n"
                                     "  cell Times 13 14 15\n}\n";
  Outcome r = cli({"reduce", (dir / "two.inet").string(), "--net", "twice", "--max-steps", "1"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.err.find("steps: 1 (step limit reached)"), std::string::npos) << r.err;
  EXPECT_EQ(parse(r.out).nets[0].name, "twice");
  EXPECT_EQ(cli({"reduce", (dir / "two.inet").string(), "--net", "absent"}).status, 1);
  fs::remove_all(dir);
}

TEST(Cli, Collapse) {
  std::string ac = (fs::path(CORPUS_DIR) / "ac.inet").string();
  Outcome r = cli({"collapse", ac, "--net", "small"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(net_of(parse(r.out).nets[0]), Net(WPermutation{{1, 4}, {5, 6}}, std::vector<Cell>{{{4, 5}, "S"}}));
  Outcome chain = cli({"collapse", ac, "--net", "chain"});
  EXPECT_EQ(net_of(parse(chain.out).nets[0]), Net(WPermutation{{1, 6}}, CellPermutation()));
  Outcome plain = cli({"collapse", mll_file()});
  EXPECT_EQ(net_of(parse(plain.out).nets[0]), testkit::mll_net());
  Outcome refused = cli({"reduce", ac});
  EXPECT_EQ(refused.status, 1);
  EXPECT_NE(refused.err.find("collapse it first"), std::string::npos);
}

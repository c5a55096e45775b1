#include <gtest/gtest.h>

#include "testkit.hpp"

using namespace inet;
using testkit::Rng;

namespace {

Net two_a_cells() {
  return Net(WPermutation{{1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 10}, {11, 12}, {13, 14}},
             std::vector<Cell>{{{2, 3, 5}, "A"}, {{8, 9, 11}, "A"}});
}

Net a_and_b() {
  return Net(WPermutation{{1, 2}, {3, 4}, {5, 6}, {7, 8}}, std::vector<Cell>{{{2, 3, 5}, "A"}, {{8}, "B"}});
}

}  // namespace

TEST(SymbolTable, DuplicateName) {
  SymbolTable s;
  s.declare("A", 2);
  EXPECT_EQ(s.arity("A"), 2u);
  EXPECT_FALSE(s.arity("B").has_value());
  try {
    s.declare("A", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DuplicateName);
  }
}

TEST(Net, ValidateExample) {
  EXPECT_FALSE(validate(testkit::mll_net(), testkit::mll_symbols()).has_value());
  try {
    Net(WPermutation{{0}, {1, 2}, {3, 4}}, std::vector<Cell>{{{0, 1, 2}, "Par"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CellPortIsLoop);
    EXPECT_EQ(e.port(), 0u);
  }
  Net short_par(WPermutation{{0, 5}, {1, 6}}, std::vector<Cell>{{{0, 1}, "Par"}});
  auto e = validate(short_par, testkit::mll_symbols());
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->kind(), ErrorKind::ArityMismatch);
  Net unknown(WPermutation{{0, 5}}, std::vector<Cell>{{{0}, "Q"}});
  EXPECT_EQ(validate(unknown, testkit::mll_symbols())->kind(), ErrorKind::UnknownSymbol);
}

TEST(Net, StructuralErrors) {
  try {
    Net(WPermutation{{0, 1}, {2, 3}}, std::vector<Cell>{{{0, 1}, "A"}, {{1, 2}, "B"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PortReuse);
  }
  try {
    Net(WPermutation{{0, 1}}, std::vector<Cell>{{{0, 7}, "A"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CellPortUnwired);
    EXPECT_EQ(e.port(), 7u);
  }
}

TEST(Net, PortPartition) {
  Net r(WPermutation{{1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}}, std::vector<Cell>{{{4, 3}, "A"}, {{5, 6, 7}, "B"}});
  PortPartition p = port_partition(r);
  EXPECT_EQ(p.loops, (PortSet{1}));
  EXPECT_EQ(p.cell_ports, (PortSet{3, 4, 5, 6, 7}));
  EXPECT_EQ(p.free_ports, (PortSet{2, 8, 9}));
  PortPartition z = port_partition(Net());
  EXPECT_TRUE(z.loops.empty() && z.cell_ports.empty() && z.free_ports.empty());
  PortPartition w = port_partition(Net(WPermutation{{1, 2}}, CellPermutation()));
  EXPECT_EQ(w.free_ports, (PortSet{1, 2}));
  EXPECT_TRUE(w.loops.empty());
}

TEST(Net, RenameTheRedex) {
  Context redex = lhs_redex(testkit::mll_rule(), testkit::mll_symbols(), 0);
  PartialInjection m{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 16}, {7, 17}, {8, 15}, {9, 14}};
  Net renamed = rename(redex.net, m);
  Net expected(WPermutation{{0, 3}, {16, 1}, {17, 2}, {15, 4}, {14, 5}},
               std::vector<Cell>{{{0, 1, 2}, "Par"}, {{3, 4, 5}, "Times"}});
  EXPECT_EQ(renamed, expected);
  EXPECT_EQ(rename(redex.net, PartialInjection(std::vector<PartialInjection::Pair>{
                                  {0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 7}, {8, 8}, {9, 9}})),
            redex.net);
  try {
    rename(redex.net, PartialInjection{{0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotTotal);
  }
}

TEST(Net, RenameRoundTrip) {
  Rng rng(3);
  SymbolTable syms = testkit::combinator_symbols();
  for (int trial = 0; trial < 200; ++trial) {
    Net n = testkit::random_net(rng, syms, 0);
    auto ports = testkit::as_vector(n.carrier());
    auto images = testkit::sample_ports(rng, ports.size(), 100, 400);
    std::vector<PartialInjection::Pair> pairs;
    for (std::size_t i = 0; i < ports.size(); ++i) pairs.push_back({ports[i], images[i]});
    PartialInjection b(pairs);
    Net there = rename(n, b);
    EXPECT_EQ(rename(there, star(b)), n);
    EXPECT_TRUE(isomorphic(n, there));
    EXPECT_TRUE(testkit::brute_isomorphic(n, there, false));
  }
}

TEST(Morphism, PaperExample) {
  PortMap f{{1, 1}, {7, 1}, {13, 1}, {2, 2}, {8, 2}, {14, 2}, {3, 3}, {9, 3},
            {5, 5}, {11, 5}, {4, 4}, {10, 4}, {6, 6}, {12, 6}};
  EXPECT_FALSE(check_morphism(two_a_cells(), a_and_b(), f).has_value());
  EXPECT_FALSE(check_morphism(a_and_b(), a_and_b(), identity_map(a_and_b())).has_value());
}

TEST(Morphism, Violations) {
  Net r = two_a_cells();
  Net s = a_and_b();
  PortMap f{{1, 1}, {7, 1}, {13, 1}, {2, 2}, {8, 2}, {14, 2}, {3, 3}, {9, 3},
            {5, 5}, {11, 5}, {4, 4}, {10, 4}, {6, 6}, {12, 6}};
  auto broken = [&](Port x, Port y) {
    PortMap g = f;
    g[x] = y;
    return check_morphism(r, s, g);
  };
  EXPECT_EQ(broken(13, 7)->kind(), ErrorKind::WiringNotPreserved);
  PortMap partial = f;
  partial.erase(12);
  EXPECT_EQ(check_morphism(r, s, partial)->kind(), ErrorKind::NotTotal);
  EXPECT_EQ(broken(13, 99)->kind(), ErrorKind::NotInTarget);

  // A rotation of a two-port cell sends its principal port to the auxiliary one.
  Net spin(WPermutation{{0, 2}, {1, 3}}, std::vector<Cell>{{{0, 1}, "C"}});
  EXPECT_EQ(check_morphism(spin, spin, {{0, 1}, {1, 0}, {2, 3}, {3, 2}})->kind(), ErrorKind::PrincipalNotPreserved);
  Net one(WPermutation{{0, 1}}, std::vector<Cell>{{{0}, "B"}});
  Net other(WPermutation{{0, 1}}, std::vector<Cell>{{{0}, "D"}});
  EXPECT_EQ(check_morphism(one, other, {{0, 0}, {1, 1}})->kind(), ErrorKind::LabelNotPreserved);
  Net bare(WPermutation{{0, 1}}, CellPermutation());
  EXPECT_EQ(check_morphism(one, bare, {{0, 0}, {1, 1}})->kind(), ErrorKind::CellPortNotPreserved);
}

TEST(Morphism, ComposesAndDividesOrbits) {
  Rng rng(8);
  SymbolTable syms;
  syms.declare("U", 1);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 60; ++trial) {
    testkit::NetShape shape{1, 4, 1};
    Net a = testkit::random_net(rng, syms, 0, shape);
    Net b = testkit::random_net(rng, syms, 0, shape);
    Net c = testkit::random_net(rng, syms, 0, shape);
    auto ab = testkit::all_morphisms(a, b, 50);
    auto bc = testkit::all_morphisms(b, c, 50);
    for (const PortMap& f : ab) {
      for (const auto& [p, q] : f) {
        // Wires go to wires or loops, loops to loops.
        if (a.wiring().fixed(p)) EXPECT_TRUE(b.wiring().fixed(q));
      }
      for (const PortMap& g : bc) {
        EXPECT_FALSE(check_morphism(a, c, compose(g, f)).has_value());
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Isomorphism, Examples) {
  Net res = testkit::mll_result();
  Net moved = rename(res, PartialInjection{{6, 20}, {7, 21}, {8, 22}, {9, 23}});
  auto iso = find_isomorphism(moved, res, false);
  ASSERT_TRUE(iso.has_value());
  EXPECT_EQ(*iso, (PortMap{{20, 6}, {21, 7}, {22, 8}, {23, 9}}));
  EXPECT_FALSE(find_isomorphism(moved, res, true).has_value());
  EXPECT_EQ(*find_isomorphism(res, res, true), identity_map(res));
  Net t(WPermutation{{0, 1}, {2, 3}, {4, 5}}, std::vector<Cell>{{{0, 2, 4}, "Times"}});
  Net p(WPermutation{{0, 1}, {2, 3}, {4, 5}}, std::vector<Cell>{{{0, 2, 4}, "Par"}});
  EXPECT_FALSE(find_isomorphism(t, p, false).has_value());
}

TEST(Isomorphism, AgreesWithBruteForce) {
  Rng rng(21);
  SymbolTable syms = testkit::combinator_symbols();
  int positive = 0;
  for (int trial = 0; trial < 400; ++trial) {
    testkit::NetShape shape{3, 4, 1};
    Net a = testkit::random_net(rng, syms, 0, shape);
    Net b = trial % 2 ? testkit::random_net(rng, syms, 0, shape) : a;
    if (trial % 2 == 0) {
      // A relabelling that fixes the free ports.
      auto inner = a.carrier();
      for (Port p : a.free_ports()) inner.erase(p);
      auto v = testkit::as_vector(inner);
      auto w = v;
      std::shuffle(w.begin(), w.end(), rng);
      std::vector<PartialInjection::Pair> pairs;
      for (std::size_t i = 0; i < v.size(); ++i) pairs.push_back({v[i], w[i] + 1000});
      for (Port p : a.free_ports()) pairs.push_back({p, p});
      b = rename(a, PartialInjection(pairs));
    }
    for (bool fix : {false, true}) {
      auto iso = find_isomorphism(a, b, fix);
      bool brute = testkit::brute_isomorphic(a, b, fix);
      EXPECT_EQ(iso.has_value(), brute) << to_string(a) << " vs " << to_string(b) << " fix=" << fix;
      EXPECT_EQ(iso.has_value(), find_isomorphism(b, a, fix).has_value());
      if (iso) {
        ++positive;
        EXPECT_FALSE(check_morphism(a, b, *iso).has_value());
        PortMap back = *find_isomorphism(b, a, fix);
        EXPECT_FALSE(check_morphism(b, a, back).has_value());
        if (fix) {
          for (Port p : a.free_ports()) EXPECT_EQ(iso->at(p), p);
        }
      }
    }
  }
  EXPECT_GT(positive, 100);
}

TEST(Net, ParallelSum) {
  Net r = testkit::mll_net();
  EXPECT_EQ(parallel_sum(r, Net()), r);
  EXPECT_EQ(parallel_sum(Net(WPermutation{{1, 2}}, CellPermutation()), Net(WPermutation{{3, 4}}, CellPermutation())),
            Net(WPermutation({{1, 2}, {3, 4}}), CellPermutation()));
  try {
    parallel_sum(r, r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DisjointnessViolation);
  }
}

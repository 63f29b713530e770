#include <gtest/gtest.h>

#include <array>
#include <random>

#include "generators.hpp"
#include "ppc/ca/engine.hpp"
#include "ppc/ca/io.hpp"

using namespace ppc::ca;

namespace {

// f(center, n1..n8): centre first, then the eight neighbours.
int f(std::array<int, 9> v) {
  int n = 0;
  for (int i = 1; i < 9; ++i) n += v[static_cast<std::size_t>(i)];
  return b2s2345().next(v[0] != 0, n) ? 1 : 0;
}

// Naive full-lattice update used to cross-check the windowed engine.
Lattice naive_step(const Lattice& in) {
  Lattice out = in;
  for (int y = 0; y < in.height(); ++y)
    for (int x = 0; x < in.width(); ++x) {
      if (in.frozen(x, y)) continue;
      int n = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if ((dx || dy) && in.alive(x + dx, y + dy)) ++n;
      out.set(x, y, gen::rule_oracle(in.alive(x, y) ? 1 : 0, n) != 0);
    }
  return out;
}

Lattice random_lattice(std::mt19937& rng, int w, int h, double p, bool walls) {
  Lattice l(w, h);
  std::bernoulli_distribution live(p), wall(0.05);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      l.set(x, y, live(rng));
      if (walls && wall(rng)) l.set_frozen(x, y, true);
    }
  return l;
}

}  // namespace

TEST(Rule, ReferenceNeighbourhoods) {
  EXPECT_EQ(f({0, 0, 0, 0, 0, 0, 1, 0, 0}), 0);
  EXPECT_EQ(f({0, 0, 0, 1, 0, 0, 0, 1, 0}), 1);
  EXPECT_EQ(f({1, 0, 0, 0, 1, 1, 0, 1, 0}), 1);
  EXPECT_EQ(f({1, 0, 1, 1, 1, 0, 1, 1, 1}), 0);
}

TEST(Rule, RandomNeighbourhoodsMatchOracle) {
  std::mt19937 rng(20240601);
  std::bernoulli_distribution bit(0.5);
  for (int i = 0; i < 10000; ++i) {
    std::array<int, 9> v{};
    for (auto& x : v) x = bit(rng) ? 1 : 0;
    int live = 0;
    for (int k = 1; k < 9; ++k) live += v[static_cast<std::size_t>(k)];
    ASSERT_EQ(f(v), gen::rule_oracle(v[0], live)) << "case " << i;
  }
}

TEST(Rule, ParseAndFormat) {
  auto r = parse_rule("B2/S2345");
  EXPECT_EQ(format_rule(r), "B2/S2345");
  EXPECT_EQ(r, b2s2345());
  EXPECT_EQ(format_rule(parse_rule("b3/s23")), "B3/S23");
  EXPECT_EQ(format_rule(parse_rule("B22/S")), "B2/S");
}

TEST(Rule, ParseErrorsCarryColumn) {
  try {
    parse_rule("B9/S23");
    FAIL();
  } catch (const ppc::ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 2u);
  }
  EXPECT_THROW(parse_rule(""), ppc::ParseError);
  EXPECT_THROW(parse_rule("B2S23"), ppc::ParseError);
  EXPECT_THROW(parse_rule("X2/S23"), ppc::ParseError);
}

TEST(Engine, MatchesNaiveStepWithWalls) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Lattice l = random_lattice(rng, 23, 17, 0.3, true);
    for (int t = 0; t < 5; ++t) {
      Lattice a = step(l, b2s2345());
      ASSERT_EQ(a, naive_step(l)) << "trial " << trial << " step " << t;
      l = a;
    }
  }
}

TEST(Engine, EmptyLatticeIsQuiescent) {
  Lattice l(40, 30);
  EXPECT_EQ(step(l, b2s2345()), l);
  EXPECT_EQ(run(l, b2s2345(), 25), l);
}

TEST(Engine, WallsNeverChange) {
  std::mt19937 rng(11);
  Lattice l = random_lattice(rng, 30, 30, 0.4, true);
  l.add_wall(Rect{0, 10, 30, 1}, true);
  Lattice end = run(l, b2s2345(), 30);
  for (int y = 0; y < l.height(); ++y)
    for (int x = 0; x < l.width(); ++x)
      if (l.frozen(x, y)) {
        ASSERT_EQ(end.alive(x, y), l.alive(x, y));
      }
}

TEST(Engine, ReflectionCommutesWithStep) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Lattice l = random_lattice(rng, 19, 13, 0.35, trial % 2 == 0);
    for (Axis a : {Axis::Horizontal, Axis::Vertical}) {
      EXPECT_EQ(step(reflect(l, a), b2s2345()), reflect(step(l, b2s2345()), a));
    }
  }
}

TEST(Engine, ChangesStayWithinLightCone) {
  Lattice l(41, 41);
  l.set(20, 20, true);
  l.set(21, 20, true);
  Lattice after = run(l, b2s2345(), 6);
  for (int y = 0; y < 41; ++y)
    for (int x = 0; x < 41; ++x) {
      bool near = x >= 20 - 6 && x <= 21 + 6 && y >= 20 - 6 && y <= 20 + 6;
      if (!near) {
        ASSERT_FALSE(after.alive(x, y)) << x << "," << y;
      }
    }
}

TEST(Engine, ObserverSeesEveryStep) {
  Lattice l(10, 10);
  l.set(4, 4, true);
  l.set(5, 4, true);
  std::vector<int> seen;
  run(l, b2s2345(), 4, [&](int t, const Lattice&) { seen.push_back(t); });
  EXPECT_EQ(seen, (std::vector<int>{0, 1, 2, 3, 4}));
  EXPECT_THROW(run(l, b2s2345(), -1), ppc::InvalidArgument);
}

TEST(Engine, ChannelPopulationRegression) {
  auto s0 = place_signal(build_channel(60, 5), "main", 0);
  auto s1 = place_signal(build_channel(60, 5), "main", 1);
  EXPECT_EQ(run(s0.lattice, b2s2345(), 37).population(), 78u);
  EXPECT_EQ(run(s1.lattice, b2s2345(), 37).population(), 113u);
}

TEST(Lattice, BoundsAndErrors) {
  EXPECT_THROW(Lattice(0, 5), ppc::InvalidArgument);
  Lattice l(3, 3);
  EXPECT_THROW(l.set(3, 0, true), ppc::InvalidArgument);
  EXPECT_FALSE(l.alive(-1, 0));
  l.add_wall(Rect{0, 0, 3, 1}, true);
  EXPECT_EQ(l.population(), 0u);  // walls are not counted
}

TEST(Frames, AsciiAndPgmAgree) {
  std::mt19937 rng(5);
  Lattice l = random_lattice(rng, 12, 7, 0.4, true);
  std::string ascii = frame_ascii(l);
  std::string pgm = frame_pgm(l);
  std::string header = "P5\n12 7\n255\n";
  ASSERT_EQ(pgm.substr(0, header.size()), header);
  std::string body = pgm.substr(header.size());
  ASSERT_EQ(body.size(), 12u * 7u);
  std::size_t i = 0;
  for (char c : ascii) {
    if (c == '\n') continue;
    unsigned char px = static_cast<unsigned char>(body[i++]);
    if (c == '#') EXPECT_EQ(px, 255);
    else if (c == '.') EXPECT_EQ(px, 0);
    else EXPECT_EQ(px, 128);
  }
  EXPECT_EQ(i, body.size());
}

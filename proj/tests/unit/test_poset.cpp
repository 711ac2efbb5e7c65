#include <random>

#include "helpers.hpp"

namespace {

using mf::Antichain;
using mf::ErrorCode;
using mf::Poset;

std::vector<Antichain> brute_antichains(const Poset& p) {
  std::vector<Antichain> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p.size()); ++mask) {
    Antichain a;
    for (std::size_t i = 0; i < p.size(); ++i)
      if ((mask >> i) & 1U) a.push_back(i);
    bool ok = true;
    for (std::size_t i : a)
      for (std::size_t j : a)
        if (i != j && p.comparable(i, j)) ok = false;
    if (ok) out.push_back(a);
  }
  return out;
}

Poset random_poset(std::mt19937_64& rng, std::size_t size) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < size; ++i) names.push_back("x" + std::to_string(i));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  // Relations only from lower to higher name index keep the closure acyclic.
  std::sort(names.begin(), names.end());
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j)
      if (rng() % 4 == 0) pairs.emplace_back(i, j);
  return Poset::from_relation(names, pairs);
}

std::vector<std::string> names_of(const Poset& p, const Antichain& a) {
  std::vector<std::string> out;
  for (std::size_t i : a) out.push_back(p.name(i));
  return out;
}

TEST(Poset, Singleton) {
  const Poset p = make_poset({"a"});
  EXPECT_EQ(p.size(), 1u);
  EXPECT_TRUE(p.leq(0, 0));
  EXPECT_EQ(p.greatest(), 0u);
}

TEST(Poset, TwoChain) {
  const Poset p = make_poset({"a", "b"}, {{"a", "b"}});
  EXPECT_TRUE(p.leq(0, 1));
  EXPECT_FALSE(p.leq(1, 0));
}

TEST(Poset, CycleIsRejected) {
  EXPECT_MF_ERROR(make_poset({"a", "b"}, {{"a", "b"}, {"b", "a"}}), ErrorCode::CycleError);
  EXPECT_MF_ERROR(make_poset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}), ErrorCode::CycleError);
}

TEST(Poset, UnknownAndDuplicateElements) {
  EXPECT_MF_ERROR(make_poset({"a"}, {{"a", "z"}}), ErrorCode::UnknownElement);
  EXPECT_THROW(make_poset({"a", "a"}), mf::Error);
}

TEST(Poset, ElementsAreSortedByName) {
  const Poset p = make_poset({"c", "a", "b"}, {{"c", "a"}});
  EXPECT_EQ(p.elements(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(p.leq(*p.index_of("c"), *p.index_of("a")));
}

TEST(Poset, ClosureIsTransitive) {
  const Poset p = chain(4);
  EXPECT_TRUE(p.leq(0, 3));
  EXPECT_EQ(p.relation().size(), 10u);
}

TEST(Antichains, ChainHasOnlySingletons) {
  const Poset p = chain(2);
  EXPECT_EQ(p.antichains(), (std::vector<Antichain>{{0}, {1}}));
}

TEST(Antichains, TwoElementAntichain) {
  const Poset p = make_poset({"a", "b"});
  EXPECT_EQ(p.antichains(), (std::vector<Antichain>{{0}, {1}, {0, 1}}));
}

TEST(Antichains, DiamondMatchesListedOrder) {
  const Poset p = make_poset({"a", "c", "d", "e"}, {{"a", "c"}, {"a", "d"}, {"c", "e"}, {"d", "e"}});
  std::vector<std::vector<std::string>> got;
  for (const auto& a : p.antichains()) got.push_back(names_of(p, a));
  const std::vector<std::vector<std::string>> expected{{"a"}, {"c"}, {"d"}, {"c", "d"}, {"e"}};
  EXPECT_EQ(got, expected);
}

TEST(Antichains, MatchBruteForceUpToTen) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 40; ++k) {
    const Poset p = random_poset(rng, 1 + rng() % 10);
    auto got = p.antichains();
    auto want = brute_antichains(p);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want);
  }
}

TEST(Antichains, SizeCap) {
  std::vector<std::string> names;
  for (int i = 0; i < 21; ++i) names.push_back("e" + std::to_string(100 + i));
  const Poset p = make_poset(names);
  EXPECT_MF_ERROR(p.antichains(), ErrorCode::PosetTooLarge);
  EXPECT_NO_THROW(p.antichains(21));
}

TEST(Covers, Chain) {
  using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;
  EXPECT_EQ(chain(3).covers(), (Pairs{{0, 1}, {1, 2}}));
  EXPECT_TRUE(make_poset({"a", "b"}).covers().empty());
}

TEST(Covers, TransitivePairIsDropped) {
  using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;
  const Poset p = make_poset({"a", "b", "c", "d"},
                             {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}, {"a", "d"}});
  EXPECT_EQ(p.covers(), (Pairs{{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
}

TEST(Floors, Examples) {
  EXPECT_EQ(chain(3).floor(0), 1u);
  EXPECT_EQ(chain(3).floor(2), 3u);
  EXPECT_EQ(diamond().floor(3), 3u);
  const Poset p = make_poset({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"a", "d"}});
  EXPECT_EQ(p.floors(), (std::vector<std::size_t>{1, 2, 3, 2}));
}

TEST(Floors, MonotoneAlongCovers) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    const Poset p = random_poset(rng, 1 + rng() % 8);
    for (std::size_t y = 0; y < p.size(); ++y) {
      const auto lower = p.lower_covers(y);
      if (lower.empty()) {
        EXPECT_EQ(p.floor(y), 1u);
        continue;
      }
      std::size_t best = 0;
      for (std::size_t x : lower) {
        EXPECT_GE(p.floor(y), p.floor(x) + 1);
        best = std::max(best, p.floor(x));
      }
      EXPECT_EQ(p.floor(y), best + 1);
    }
  }
}

TEST(Greatest, Examples) {
  EXPECT_EQ(chain(2).greatest(), 1u);
  EXPECT_FALSE(make_poset({"a", "b"}).greatest().has_value());
  EXPECT_EQ(make_poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}).greatest(), 2u);
}

TEST(Greatest, MinimalAndMaximal) {
  const Poset p = make_poset({"a", "b", "c"}, {{"a", "c"}});
  EXPECT_EQ(p.minimal_elements(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(p.maximal_elements(), (std::vector<std::size_t>{1, 2}));
}

TEST(LabeledIsomorphisms, Examples) {
  const Poset p = make_poset({"a", "b"}, {{"a", "b"}});
  const Poset q = make_poset({"u", "v"}, {{"u", "v"}});
  EXPECT_EQ(mf::labeled_isomorphisms(p, q, {1, 1}, {1, 1}), (std::vector<mf::Bijection>{{0, 1}}));
  EXPECT_TRUE(mf::labeled_isomorphisms(p, q, {1, 2}, {2, 1}).empty());
  const Poset r = make_poset({"a", "b"});
  const Poset s = make_poset({"u", "v"});
  EXPECT_EQ(mf::labeled_isomorphisms(r, s, {1, 1}, {1, 1}).size(), 2u);
}

TEST(LabeledIsomorphisms, MatchExhaustivePermutations) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 30; ++k) {
    const Poset p = random_poset(rng, 1 + rng() % 6);
    std::vector<std::int64_t> labels(p.size());
    for (auto& l : labels) l = static_cast<std::int64_t>(rng() % 2);
    auto got = mf::labeled_isomorphisms(p, p, labels, labels);
    std::vector<mf::Bijection> want;
    mf::Bijection w(p.size());
    std::iota(w.begin(), w.end(), 0);
    do {
      bool ok = true;
      for (std::size_t x = 0; x < p.size() && ok; ++x) {
        ok = labels[w[x]] == labels[x];
        for (std::size_t y = 0; y < p.size() && ok; ++y) ok = p.leq(x, y) == p.leq(w[x], w[y]);
      }
      if (ok) want.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, want);
    mf::Bijection id(p.size());
    std::iota(id.begin(), id.end(), 0);
    EXPECT_NE(std::find(got.begin(), got.end(), id), got.end());
  }
}

TEST(Poset, OrderAxiomsHold) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 20; ++k) {
    const Poset p = random_poset(rng, 1 + rng() % 9);
    const std::size_t n = p.size();
    for (std::size_t x = 0; x < n; ++x) {
      EXPECT_TRUE(p.leq(x, x));
      for (std::size_t y = 0; y < n; ++y) {
        if (x != y) EXPECT_FALSE(p.leq(x, y) && p.leq(y, x));
        for (std::size_t z = 0; z < n; ++z)
          if (p.leq(x, y) && p.leq(y, z)) EXPECT_TRUE(p.leq(x, z));
      }
    }
  }
}

TEST(Poset, InducedKeepsOrder) {
  const Poset p = diamond();
  const Poset sub = p.induced({0, 3});
  EXPECT_EQ(sub.elements(), (std::vector<std::string>{"a", "d"}));
  EXPECT_TRUE(sub.leq(0, 1));
}

}  // namespace

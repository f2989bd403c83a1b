#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "acbls/soft_regular.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace acbls;

namespace {

Automaton fig1() {
  std::ifstream in(std::string(ACBLS_DATA_DIR) + "/fig1.aut");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_automaton(ss.str());
}

struct RandomCase {
  Automaton automaton;
  LayeredGraphPtr graph;
};

RandomCase random_case(std::mt19937_64& rng, int n, bool deterministic) {
  while (true) {
    Automaton a = oracle::random_automaton(rng, 1 + static_cast<int>(rng() % 3), 5, deterministic);
    try {
      auto g = std::make_shared<const LayeredGraph>(a, n);
      return {std::move(a), std::move(g)};
    } catch (const EmptyLanguageError&) {
    }
  }
}

// Labels along the witness path, taking the matching label where one exists.
Word witness_word(const SoftRegularState& st) {
  Word w(st.values().begin(), st.values().end());
  for (int i = 0; i < st.length(); ++i) {
    const auto at = static_cast<std::size_t>(i);
    bool matched = false;
    Symbol other = 0;
    for (const auto& arc : st.graph().arcs(i, st.path()[at])) {
      if (arc.to != st.path()[at + 1]) continue;
      if (arc.symbol == w[at]) matched = true;
      other = arc.symbol;
    }
    if (!matched) w[at] = other;
  }
  return w;
}

std::uint64_t arcs_from(const LayeredGraph& g, int s) {
  std::uint64_t total = 0;
  for (int i = s; i < g.length(); ++i) total += g.arc_count(i);
  return total;
}

}  // namespace

TEST_CASE("running example: distance 1 to the language") {
  const Automaton a = fig1();
  const auto g = std::make_shared<const LayeredGraph>(a, 6);
  const auto& al = a.alphabet();
  const Word w{al.at("x"), al.at("e"), al.at("d"), al.at("e"), al.at("x"), al.at("x")};
  for (Witness policy : {Witness::smallest, Witness::sampled}) {
    SoftRegularState st(g, w, policy, 5);
    CHECK(st.violation() == 1);
    CHECK(st.violation() == oracle::min_hamming(a, w));
    st.check_invariants();
    CHECK(oracle::accepts(a, witness_word(st)));
    st.apply(std::vector<Change>{{2, al.at("x")}});
    CHECK(st.violation() == 0);
  }
}

TEST_CASE("violation equals the brute-force minimum Hamming distance") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 1500; ++trial) {
    const int n = 1 + trial % 8;
    auto c = random_case(rng, n, trial % 2 == 0);
    const int k = static_cast<int>(c.automaton.alphabet().size());
    const Word w = oracle::random_word(rng, k, n);
    const int expected = oracle::min_hamming(c.automaton, w);
    for (Witness policy : {Witness::smallest, Witness::sampled}) {
      const SoftRegularState st(c.graph, w, policy, rng());
      REQUIRE(st.violation() == expected);
      st.check_invariants();
      const Word fixed = witness_word(st);
      REQUIRE(oracle::accepts(c.automaton, fixed));
      REQUIRE(oracle::hamming(fixed, w) == expected);
    }
  }
}

TEST_CASE("one changed value moves the distance by at most one") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 8;
    auto c = random_case(rng, n, trial % 2 == 1);
    const int k = static_cast<int>(c.automaton.alphabet().size());
    SoftRegularState st(c.graph, oracle::random_word(rng, k, n));
    const int i = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const auto rec = st.probe_assign(i, static_cast<Symbol>(rng() % static_cast<std::uint64_t>(k)));
    REQUIRE(rec.delta >= -1);
    REQUIRE(rec.delta <= 1);
  }
}

TEST_CASE("incremental update equals a recompute from scratch") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 8;
    auto c = random_case(rng, n, trial % 2 == 0);
    const int k = static_cast<int>(c.automaton.alphabet().size());
    const Word w = oracle::random_word(rng, k, n);
    SoftRegularState smallest(c.graph, w, Witness::smallest);
    SoftRegularState sampled(c.graph, w, Witness::sampled, rng());
    for (int step = 0; step < 4; ++step) {
      const int i = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
      const Symbol v = static_cast<Symbol>(rng() % static_cast<std::uint64_t>(k));
      const std::vector<Change> ch{{i, v}};
      smallest.apply(ch);
      sampled.apply(ch);
      const Word now(smallest.values().begin(), smallest.values().end());
      const SoftRegularState scratch(c.graph, now, Witness::smallest);
      REQUIRE(smallest.violation() == scratch.violation());
      REQUIRE(std::equal(smallest.path().begin(), smallest.path().end(), scratch.path().begin()));
      REQUIRE(std::equal(smallest.violations().begin(), smallest.violations().end(), scratch.violations().begin()));
      REQUIRE(sampled.violation() == scratch.violation());
      for (int layer = 0; layer <= n; ++layer) {
        for (StateId q = 0; q < c.graph->num_states(); ++q) {
          if (!c.graph->alive(layer, q)) continue;
          REQUIRE(smallest.forward_cost(layer, q) == scratch.forward_cost(layer, q));
          REQUIRE(sampled.forward_cost(layer, q) == scratch.forward_cost(layer, q));
        }
      }
      sampled.check_invariants();
      smallest.check_invariants();
    }
  }
}

TEST_CASE("smallest policy picks the smallest optimal predecessor") {
  // two optimal paths for "b": through state 1 or state 2; the smallest is 1
  const Automaton a(Alphabet({"a", "b"}), 4, 0, {3}, {{0, 0, 1}, {0, 0, 2}, {1, 0, 3}, {2, 0, 3}});
  const auto g = std::make_shared<const LayeredGraph>(a, 2);
  const SoftRegularState st(g, Word{1, 0}, Witness::smallest);
  CHECK(st.violation() == 1);
  CHECK(st.path()[1] == 1);
  CHECK(st.violation_at(0) == 1);
  CHECK(st.violation_at(1) == 0);
}

TEST_CASE("sampled policy draws optimal witnesses uniformly") {
  const Automaton a = fig1();
  const auto g = std::make_shared<const LayeredGraph>(a, 6);
  // the word with the most minimal repairs
  Word w;
  std::set<Word> optimal;
  oracle::for_each_word(3, 6, [&](const Word& cand) {
    const int d = oracle::min_hamming(a, cand);
    if (d < 1) return;
    std::set<Word> opt;  // deterministic automaton: one path per word
    oracle::for_each_word(3, 6, [&](const Word& u) {
      if (oracle::accepts(a, u) && oracle::hamming(u, cand) == d) opt.insert(u);
    });
    if (opt.size() > optimal.size()) {
      optimal = opt;
      w = cand;
    }
  });
  REQUIRE(optimal.size() >= 4);

  SoftRegularState st(g, w, Witness::sampled, 77);
  std::map<Word, int> seen;
  const int trials = 30000;
  for (int t = 0; t < trials; ++t) {
    st.update(0);
    ++seen[witness_word(st)];
  }
  CHECK(seen.size() == optimal.size());
  for (const auto& [u, count] : seen) {
    CHECK(optimal.count(u) == 1);
    CHECK(std::abs(count / double(trials) - 1.0 / static_cast<double>(optimal.size())) < 0.015);
  }
}

TEST_CASE("update from s relaxes every arc of layers s..n-1") {
  const auto g = std::make_shared<const LayeredGraph>(fig1(), 30);
  SoftRegularState st(g, Word(30, 0));
  CHECK(st.relaxed_arcs() == arcs_from(*g, 0));
  for (int s : {0, 12, 29, 30}) {
    const auto before = st.relaxed_arcs();
    st.update(s);
    CHECK(st.relaxed_arcs() - before == arcs_from(*g, s));
  }
  const auto before = st.relaxed_arcs();
  (void)st.probe_swap(20, 4);
  CHECK(st.relaxed_arcs() - before == arcs_from(*g, 4));
}

TEST_CASE("probe leaves the state untouched; commit applies; stale commits throw") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 7;
    auto c = random_case(rng, n, true);
    const int k = static_cast<int>(c.automaton.alphabet().size());
    SoftRegularState st(c.graph, oracle::random_word(rng, k, n), Witness::smallest);
    const Word before(st.values().begin(), st.values().end());
    const int v0 = st.violation();
    const auto rec = st.probe_swap(0, n - 1);
    REQUIRE(Word(st.values().begin(), st.values().end()) == before);
    REQUIRE(st.violation() == v0);
    st.check_invariants();
    const auto other = st.probe_assign(0, 0);
    st.commit(rec);
    REQUIRE(st.violation() == v0 + rec.delta);
    Word swapped = before;
    std::swap(swapped.front(), swapped.back());
    REQUIRE(st.violation() == oracle::min_hamming(c.automaton, swapped));
    REQUIRE_THROWS_AS(st.commit(other), StaleProbeError);
  }
}

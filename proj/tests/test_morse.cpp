#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "errors.hpp"
#include "morse.hpp"
#include "oracles.hpp"

using namespace conley;
using namespace conley::testing;

namespace {

BoxSet ids_set(std::size_t universe, std::initializer_list<Id> ids) {
  std::vector<Id> v(ids);
  return BoxSet::from_ids(universe, v);
}

Digraph plain(const BoxMap& m) { return restrict_map(m, m.all_boxes()).as_digraph(); }

std::size_t class_of(const MorsePoset& poset, Id member) {
  for (std::size_t p = 0; p < poset.size(); ++p)
    if (poset.classes[p].contains(member)) return p;
  REQUIRE(false);
  return 0;
}

}  // namespace

TEST_CASE("recurrent classes of the reference digraphs") {
  auto r1 = recurrent_classes(plain(g1()));
  REQUIRE(r1.size() == 2);
  CHECK(r1[0].ids() == std::vector<Id>{0});
  CHECK(r1[1].ids() == std::vector<Id>{4});

  auto r4 = recurrent_classes(plain(g4()));
  REQUIRE(r4.size() == 2);
  CHECK(r4[0].ids() == std::vector<Id>{0});
  CHECK(r4[1].ids() == std::vector<Id>{1});
}

TEST_CASE("poset order follows reachability") {
  Digraph d1 = plain(g1());
  MorsePoset p1 = morse_poset(d1, recurrent_classes(d1));
  // the two loops of the first fixture are unordered (an antichain)
  CHECK_FALSE(p1.less(0, 1));
  CHECK_FALSE(p1.less(1, 0));

  Digraph d4 = plain(g4());
  MorsePoset p4 = morse_poset(d4, recurrent_classes(d4));
  std::size_t a = class_of(p4, 0), b = class_of(p4, 1);
  CHECK(p4.less(a, b));  // b -> c -> a flows downward into a
  CHECK_FALSE(p4.less(b, a));
}

TEST_CASE("intervals and attracting intervals") {
  Digraph d = plain(g4());
  MorsePoset p = morse_poset(d, recurrent_classes(d));
  std::size_t a = class_of(p, 0), b = class_of(p, 1);
  CHECK(is_interval(p, {a}));
  CHECK(is_interval(p, {a, b}));
  CHECK(is_attracting_interval(p, {a}));
  CHECK_FALSE(is_attracting_interval(p, {b}));  // not down-closed
  auto downs = attracting_intervals(p);
  REQUIRE(downs.size() == 3);  // {}, {a}, {a,b}
  CHECK(downs[0].empty());
}

TEST_CASE("interval budget is enforced") {
  // a wide antichain has exponentially many down-sets
  std::vector<std::pair<Id, Id>> edges;
  for (Id v = 0; v < 16; ++v) edges.emplace_back(v, v);
  BoxMap m = digraph_map(16, edges);
  Digraph d = plain(m);
  MorsePoset p = morse_poset(d, recurrent_classes(d));
  CHECK_THROWS_AS(attracting_intervals(p, 1000), ConleyError);
}

TEST_CASE("morse set of an interval includes connecting orbits") {
  Digraph d = plain(g4());
  MorsePoset p = morse_poset(d, recurrent_classes(d));
  std::size_t a = class_of(p, 0), b = class_of(p, 1);
  CHECK(morse_set_of_interval(d, p, {a}).ids() == std::vector<Id>{0});
  CHECK(morse_set_of_interval(d, p, {a, b}).ids() == std::vector<Id>{0, 1, 2});
  CHECK(connecting_orbits(d, p.classes[b], p.classes[a]).ids() ==
        std::vector<Id>{2});
}

TEST_CASE("attracting neighborhoods, attractors, and dual repellers") {
  Digraph d = plain(g4());
  BoxSet U = ids_set(3, {0, 2});
  CHECK(is_attracting_neighborhood(d, U));
  CHECK_FALSE(is_attracting_neighborhood(d, ids_set(3, {1})));
  CHECK(attractor_from_neighborhood(d, U).ids() == std::vector<Id>{0});
  CHECK(dual_repeller(d, d.vertices, U).ids() == std::vector<Id>{1});
  // preimage of an attracting set is attracting
  BoxSet pre = preimage_attracting(d, U);
  CHECK(is_attracting_neighborhood(d, pre & d.vertices));
}

TEST_CASE("attracting set closure properties on random digraphs") {
  std::mt19937_64 rng(20260823);
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    BoxMap m = random_digraph(rng, 10, 0.25);
    Digraph d = plain(m);
    // forward-closing a random seed gives an attracting neighborhood
    std::uniform_int_distribution<Id> vd(0, static_cast<Id>(m.node_count()) - 1);
    BoxSet U = reach_from(d.out, d.vertices, ids_set(m.node_count(), {vd(rng)}));
    BoxSet V = reach_from(d.out, d.vertices, ids_set(m.node_count(), {vd(rng)}));
    REQUIRE(is_attracting_neighborhood(d, U));
    CHECK(is_attracting_neighborhood(d, U & V));
    CHECK(is_attracting_neighborhood(d, U | V));
    // the attractor inside U is invariant and the dual repeller isolates
    BoxSet att = attractor_from_neighborhood(d, U);
    CHECK(image_set(m, att, U) == image_set(m, att, m.all_boxes()));
    BoxSet rep = dual_repeller(d, d.vertices, U);
    CHECK((att & rep).empty());
    // no orbit returns from the attractor side to the repeller
    CHECK((reach_from(d.out, d.vertices, att) & rep).empty());
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("associated decomposition of the quotient dynamics") {
  BoxMap m = g3();
  FiltrationPair p = make_pair(m, m.all_boxes(), ids_set(3, {1}));
  REQUIRE(p.valid.ok());
  PointedDigraph pd = pointed_map(m, p);
  MorsePoset poset = associated_decomposition(pd);
  REQUIRE(poset.basepoint_class.has_value());
  REQUIRE(poset.size() == 2);
  std::size_t star_c = *poset.basepoint_class;
  std::size_t y_c = 1 - star_c;
  CHECK(poset.classes[star_c].contains(pd.star));
  CHECK(poset.classes[y_c].ids() == std::vector<Id>{2});
  CHECK_FALSE(poset.less(y_c, star_c));
  CHECK_FALSE(poset.less(star_c, y_c));
}

TEST_CASE("attracting neighborhood of an interval in the quotient") {
  // a=0, b=1, c=2 with a->a, b->b, b->c, c->a, embedded as a pair with L empty
  BoxMap m = digraph_map(3, {{0, 0}, {1, 1}, {1, 2}, {2, 0}});
  FiltrationPair p = make_pair(m, m.all_boxes(), BoxSet(3));
  REQUIRE(p.valid.ok());
  PointedDigraph pd = pointed_map(m, p);
  Digraph d = as_digraph(pd);
  MorsePoset poset = associated_decomposition(pd);
  REQUIRE(poset.basepoint_class.has_value());
  std::size_t a = class_of(poset, 0);
  BoxSet ua = attracting_neighborhood_of_interval(d, poset, {a});
  CHECK(ua.ids() == std::vector<Id>{0, 2, 3});  // a, the orbit c, and the star
  BoxSet uempty = attracting_neighborhood_of_interval(d, poset, {});
  CHECK(uempty.ids() == std::vector<Id>{3});
}

TEST_CASE("split vertices witness the union defect") {
  Digraph d = plain(g1());
  MorsePoset p = morse_poset(d, recurrent_classes(d));
  CHECK(split_vertices(d, p) == std::vector<Id>{2});
  Digraph d4 = plain(g4());
  MorsePoset p4 = morse_poset(d4, recurrent_classes(d4));
  CHECK(split_vertices(d4, p4).empty());
}

TEST_CASE("chain-mode filtration of the branching fixture") {
  Digraph d = plain(g1());
  MorsePoset p = morse_poset(d, recurrent_classes(d));
  MorseFiltration f = morse_filtration(d, p, FiltrationMode::chain);
  REQUIRE(f.sets.size() == 3);
  CHECK(f.sets[0].empty());
  CHECK(f.sets[1].ids() == std::vector<Id>{0, 1});
  CHECK(f.sets[2].ids() == std::vector<Id>{0, 1, 2, 3, 4});
  // nested and growing
  for (std::size_t i = 0; i + 1 < f.sets.size(); ++i)
    CHECK(f.sets[i].subset_of(f.sets[i + 1]));
  MorseFiltrationReport rep = validate_morse_filtration(d, p, f);
  CHECK(rep.ok());
}

TEST_CASE("poset-mode filtration flags the union defect") {
  Digraph d = plain(g1());
  MorsePoset p = morse_poset(d, recurrent_classes(d));
  MorseFiltration f = morse_filtration(d, p, FiltrationMode::poset);
  CHECK(f.defects == std::vector<Id>{2});
  Digraph d4 = plain(g4());
  MorsePoset p4 = morse_poset(d4, recurrent_classes(d4));
  MorseFiltration f4 = morse_filtration(d4, p4, FiltrationMode::poset);
  CHECK(f4.defects.empty());
  CHECK(validate_morse_filtration(d4, p4, f4).ok());
}

TEST_CASE("validator rejects a corrupted filtration") {
  Digraph d = plain(g4());
  MorsePoset p = morse_poset(d, recurrent_classes(d));
  MorseFiltration f = morse_filtration(d, p, FiltrationMode::chain);
  REQUIRE(f.sets.size() >= 2);
  f.sets[1] = f.sets[1] | ids_set(f.sets[1].universe(), {1});  // leak the repeller in
  MorseFiltrationReport rep = validate_morse_filtration(d, p, f);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.failures.empty());
}

TEST_CASE("poset-mode defects appear exactly with split vertices") {
  std::mt19937_64 rng(424242);
  int with_split = 0, without = 0;
  for (int t = 0; t < 100; ++t) {
    BoxMap m = random_digraph(rng, 9, 0.22);
    Digraph d = plain(m);
    MorsePoset p = morse_poset(d, recurrent_classes(d));
    if (p.size() > 12) continue;
    MorseFiltration f = morse_filtration(d, p, FiltrationMode::poset, 1u << 14);
    bool split = !split_vertices(d, p).empty();
    CHECK(f.defects.empty() == !split);
    (split ? with_split : without) += 1;
    if (!split) CHECK(validate_morse_filtration(d, p, f).ok());
  }
  CHECK(with_split > 0);
  CHECK(without > 0);
}

TEST_CASE("chain-mode filtrations always validate on random digraphs") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 60; ++t) {
    BoxMap m = random_digraph(rng, 10, 0.25);
    Digraph d = plain(m);
    MorsePoset p = morse_poset(d, recurrent_classes(d));
    MorseFiltration f = morse_filtration(d, p, FiltrationMode::chain);
    CHECK(validate_morse_filtration(d, p, f).ok());
  }
}

TEST_CASE("interval morse sets agree with the invariant set between levels") {
  Digraph d = plain(g4());
  MorsePoset p = morse_poset(d, recurrent_classes(d));
  std::size_t a = class_of(p, 0), b = class_of(p, 1);
  BoxSet upper = attracting_neighborhood_of_interval(d, p, {a, b});
  BoxSet lower = attracting_neighborhood_of_interval(d, p, {a});
  BoxSet diff = upper - lower;
  CHECK(bi_trim(d.out, diff) == p.classes[b]);
}

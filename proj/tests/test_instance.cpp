#include <doctest.h>

#include <sstream>

#include "mfas/error.hpp"
#include "mfas/instance.hpp"
#include "support.hpp"

using namespace mfas;
using namespace mfas::test;

namespace {

ErrorCode parse_error(const std::string& text) {
  try {
    parse_instance_text(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kNonTermination;
}

}  // namespace

TEST_SUITE("instance") {

TEST_CASE("plain three-vertex file") {
  const Instance inst = parse_instance_text("mfas 1\nn 3\nweights\n0 1 2\n2 0 1\n1 2 0\nend\n");
  CHECK(inst.size() == 3);
  CHECK(inst.w(0, 1) == Weight::units(1));
  CHECK(inst.w(1, 0) == Weight::units(2));
  CHECK(inst.poset().pair_count() == 0);
}

TEST_CASE("prec lines are closed transitively") {
  const Instance inst = instance_of({"0 1 1", "1 0 1", "1 1 0"}, {{0, 1}, {1, 2}});
  const std::vector<Arc> expected = {{0, 1}, {0, 2}, {1, 2}};
  CHECK(inst.poset().pairs() == expected);
  CHECK(inst.poset().reduction() == std::vector<Arc>{{0, 1}, {1, 2}});
  CHECK(inst.fixed_cost() == Cost(Weight::units(3)));
}

TEST_CASE("format errors") {
  CHECK(parse_error("mfas 1\nn 2\nprec 0 1\nprec 1 0\nweights\n0 1\n1 0\nend\n") == ErrorCode::kPoset);
  CHECK(parse_error("mfas 1\nn 2\nprec 0 0\nweights\n0 1\n1 0\nend\n") == ErrorCode::kPoset);
  CHECK(parse_error("mfas 2\nn 2\nweights\n0 1\n1 0\nend\n") == ErrorCode::kFormat);
  CHECK(parse_error("mfas 1\nn 2\nweights\n0 1\n1 0\n") == ErrorCode::kFormat);
  CHECK(parse_error("mfas 1\nn 2\nweights\n0 1 1\n1 0\nend\n") == ErrorCode::kFormat);
  CHECK(parse_error("mfas 1\nn 2\nweights\n0 1\nend\n") == ErrorCode::kFormat);
  CHECK(parse_error("mfas 1\nn 0\nweights\nend\n") == ErrorCode::kFormat);
  CHECK(parse_error("mfas 1\nn 4097\nweights\nend\n") == ErrorCode::kFormat);
  CHECK(parse_error("mfas 1\nn 2\nprec 0 2\nweights\n0 1\n1 0\nend\n") == ErrorCode::kFormat);
  CHECK(parse_error("mfas 1\nn 2\nweights\n0 -1\n1 0\nend\n") == ErrorCode::kWeight);
  CHECK(parse_error("mfas 1\nn 2\nweights\n1 1\n1 0\nend\n") == ErrorCode::kWeight);
  CHECK(parse_error("mfas 1\nn 2\nweights\n0 0.1234567891\n1 0\nend\n") == ErrorCode::kWeight);
  CHECK(parse_error("mfas 1\nn 2\nweights\n0 1\n1 0\nend\ntrailing\n") == ErrorCode::kFormat);
}

TEST_CASE("serialization round-trips bit-exactly") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenSpec g = spec(static_cast<Vertex>(3 + seed % 7), seed, Rational(1, 3));
    g.grain = Weight::from_nanos(1);
    const Instance inst = gen_hemimetric(g);
    const std::string text = serialize_instance(inst);
    const Instance back = parse_instance_text(text);
    CHECK(back == inst);
    CHECK(serialize_instance(back) == text);
    CHECK(instance_digest(back) == instance_digest(inst));
  }
  const Instance a = bundled_instance("appendix_a");
  const Instance b = bundled_instance("k3_demo");
  CHECK(instance_digest(a) != instance_digest(b));
  CHECK(instance_digest(a).size() == 16);
}

TEST_CASE("hemimetric validation") {
  CHECK(validate_hemimetric(k3()).is_hemimetric);
  CHECK(validate_hemimetric(instance_of({"0 0 0", "0 0 0", "0 0 0"})).is_hemimetric);
  const ValidationReport r = validate_hemimetric(instance_of({"0 1 5", "1 0 1", "1 1 0"}));
  CHECK_FALSE(r.is_hemimetric);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0] == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("k-gonal validation") {
  const Instance ones_but_one = instance_of({"0 1 3", "1 0 1", "1 1 0"});
  const ValidationReport r = validate_kgonal(ones_but_one, 3);
  CHECK_FALSE(r.is_hemimetric);
  CHECK(r.checked_k == 3);
  CHECK_FALSE(r.sampled);
  CHECK(validate_kgonal(k3(), 3).is_hemimetric);
  CHECK(validate_kgonal(k3(), 5).is_hemimetric);  // fewer vertices than k

  // 4-gonal tolerates what the triangle inequality rejects.
  const Instance four = instance_of({"0 1 1 3", "1 0 1 1", "1 1 0 1", "1 1 1 0"});
  CHECK_FALSE(validate_hemimetric(four).is_hemimetric);
  CHECK(validate_kgonal(four, 4).is_hemimetric);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Instance h = gen_hemimetric(spec(9, seed));
    for (int k = 3; k <= 6; ++k) CHECK(validate_kgonal(h, k).is_hemimetric);
  }
}

TEST_CASE("k-gonal sampling and caps") {
  const Instance big = gen_hemimetric(spec(20, 3));
  KgonalOptions o;
  o.samples = 5000;
  const ValidationReport r = validate_kgonal(big, 5, o);
  CHECK(r.sampled);
  CHECK(r.seed == o.seed);
  CHECK(r.sequences_checked == 5000);
  CHECK(r.is_hemimetric);
  CHECK(validate_kgonal(big, 5, o).violations == r.violations);

  o.mode = KgonalOptions::Mode::kExhaustive;
  CHECK_THROWS_AS(validate_kgonal(big, 5, o), Error);
  CHECK_THROWS_AS(validate_kgonal(big, 2), Error);
}

TEST_CASE("incomparable pairs") {
  CHECK(incomparable_pairs(Poset(3)).size() == 6);
  const Arc chain[] = {{0, 1}, {1, 2}};
  CHECK(incomparable_pairs(Poset::from_pairs(3, chain)).empty());
  const Arc one[] = {{0, 1}};
  const std::vector<Arc> expected = {{0, 2}, {1, 2}, {2, 0}, {2, 1}};
  CHECK(incomparable_pairs(Poset::from_pairs(3, one)) == expected);
}

TEST_CASE("incomparable, poset and reversed poset pairs partition all arcs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Poset p = gen_poset(spec(9, seed, Rational(1, 4)));
    std::set<Arc> all;
    std::size_t count = 0;
    for (const Arc& a : incomparable_pairs(p)) all.insert(a), ++count;
    for (const Arc& a : p.pairs()) all.insert(a), all.insert(a.reversed()), count += 2;
    CHECK(count == all.size());
    CHECK(all.size() == 9u * 8u);
  }
}

TEST_CASE("probability constraints") {
  CHECK(satisfies_probability_constraints(bundled_instance("appendix_a")));
  CHECK_FALSE(satisfies_probability_constraints(k3()));
}

TEST_CASE("instance constructor checks dimensions") {
  CHECK_THROWS_AS(Instance(2, std::vector<Weight>(3), Poset(2)), Error);
  CHECK_THROWS_AS(Instance(2, std::vector<Weight>(4), Poset(3)), Error);
}

}

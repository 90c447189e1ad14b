#include <catch2/catch_amalgamated.hpp>

#include "lenscob/charfun.hpp"
#include "lenscob/cobord.hpp"
#include "oracles.hpp"

using namespace lenscob;

namespace {

HyperCharFn make_hyper(int n, std::vector<std::vector<Int>> vecs) {
  return HyperCharFn{n, std::move(vecs)};
}

// the standard lens assignment on the triangle
HyperCharFn triangle_lens(long long q1, long long q2, long long p) {
  return make_hyper(2, {{-q1, -q2, p}, {1, 0, 0}, {0, 1, 0}});
}

}  // namespace

TEST_CASE("hyper validity on fixed triangles") {
  CHECK(validate_hyper(make_hyper(2, {{0, 2, 3}, {4, 1, 0}, {3, 2, 4}})).valid);
  CHECK(validate_hyper(triangle_lens(1, 1, 2)).valid);

  ValidityReport rep = validate_hyper(make_hyper(2, {{-2, -1, 4}, {1, 0, 0}, {0, 1, 0}}));
  CHECK_FALSE(rep.valid);
  REQUIRE(rep.offending.size() == 1);
  CHECK(rep.offending[0] == std::vector<int>{0, 2});
}

TEST_CASE("hyper validity shape errors") {
  CHECK_THROWS_AS(validate_hyper(make_hyper(2, {{1, 0, 0}, {0, 1, 0}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_hyper(make_hyper(2, {{1, 0}, {0, 1}, {1, 1}})),
                  std::invalid_argument);
}

TEST_CASE("triangle lens assignment valid iff p coprime to both parameters") {
  for (long long p = 2; p <= 12; ++p)
    for (long long q1 = 1; q1 < p; ++q1)
      for (long long q2 = 1; q2 < p; ++q2) {
        bool expect = std::gcd(q1, p) == 1 && std::gcd(q2, p) == 1;
        REQUIRE(validate_hyper(triangle_lens(q1, q2, p)).valid == expect);
      }
}

TEST_CASE("rational validity on the tetrahedron") {
  RationalCharFn eta;
  eta.dim = 3;
  eta.facet_vectors = {{-1, -2, 5}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(validate_rational_simplex(eta).valid);

  // a standard basis plus (-1, -1, 1) in any facet slot stays valid
  std::vector<Int> extra{-1, -1, 1};
  for (int pos = 0; pos < 4; ++pos) {
    RationalCharFn f;
    f.dim = 3;
    f.facet_vectors = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    f.facet_vectors.insert(f.facet_vectors.begin() + pos, extra);
    REQUIRE(validate_rational_simplex(f).valid);
  }

  CHECK_THROWS_AS(validate_rational_simplex(1, {{1}, {1}}), std::invalid_argument);
}

TEST_CASE("vertex subsets are exempt for rational assignments") {
  // the facet triple through a vertex spans an index-5 sublattice, but every
  // pair is a summand, so the rational rule accepts it
  RationalCharFn eta;
  eta.dim = 3;
  eta.facet_vectors = {{-1, -2, 5}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<std::vector<Int>> triple{{-1, -2, 5}, {1, 0, 0}, {0, 1, 0}};
  CHECK_FALSE(is_part_of_basis(triple));
  CHECK(validate_rational_simplex(eta).valid);
}

TEST_CASE("polygon validity") {
  PolygonCharFn rect;
  rect.edges = {std::vector<Int>{1, 0}, std::vector<Int>{0, 1}, std::vector<Int>{1, 0},
                std::vector<Int>{0, 1}};
  CHECK(validate_rational_polygon(rect).valid);

  PolygonCharFn bad = rect;
  bad.edges[2] = std::vector<Int>{2, 2};
  ValidityReport rep = validate_rational_polygon(bad);
  CHECK_FALSE(rep.valid);

  PolygonCharFn two_unlabeled = rect;
  two_unlabeled.edges[0] = std::nullopt;
  two_unlabeled.edges[2] = std::nullopt;
  CHECK_THROWS_AS(validate_rational_polygon(two_unlabeled), std::invalid_argument);
}

TEST_CASE("chains give valid polygons, non-primitive flips invalidate") {
  oracles::TestRng rng(77001);
  for (int t = 0; t < 60; ++t) {
    long long p = rng.uniform(3, 80);
    long long q = rng.uniform(1, p - 1);
    if (std::gcd(p, q) != 1) continue;
    ChainCert cert = unimodular_chain(q, p);
    PolygonCharFn poly;
    for (const auto& v : cert.chain)
      poly.edges.emplace_back(std::vector<Int>{v[0], v[1]});
    poly.edges.emplace_back(std::nullopt);
    REQUIRE(validate_rational_polygon(poly).valid);
    if (cert.chain.size() >= 3) {
      std::size_t mid = 1 + rng.uniform(0, cert.chain.size() - 3);
      PolygonCharFn broken = poly;
      (*broken.edges[mid])[0] *= 2;
      (*broken.edges[mid])[1] *= 2;
      REQUIRE_FALSE(validate_rational_polygon(broken).valid);
    }
  }
}

TEST_CASE("tetrahedron extension condition on fixed inputs") {
  CHECK(rational_extension_condition(0, 0, 1, 1, 2, 5));
  CHECK(rational_extension_condition(0, -1, 1, 2, 4, 5));
  CHECK_FALSE(rational_extension_condition(0, 0, 1, 2, 4, 5));
}

TEST_CASE("extension condition agrees with simplex validation") {
  oracles::TestRng rng(77002);
  int done = 0;
  while (done < 2000) {
    long long p = rng.uniform(2, 24);
    long long q1 = rng.uniform(1, p - 1);
    long long q2 = rng.uniform(q1, p - 1);
    if (std::gcd(q1, p) != 1 || std::gcd(q2, p) != 1) continue;
    long long a = rng.uniform(-5, 5), b = rng.uniform(-5, 5), c = rng.uniform(-5, 5);
    RationalCharFn eta;
    eta.dim = 3;
    eta.facet_vectors = {{-q1, -q2, p}, {1, 0, 0}, {0, 1, 0}, {a, b, c}};
    bool via_gcds = rational_extension_condition(a, b, c, q1, q2, p);
    bool via_smith = validate_rational_simplex(eta).valid;
    REQUIRE(via_gcds == via_smith);
    ++done;
  }
}

TEST_CASE("translation by the identity and a fixed block matrix") {
  HyperCharFn f = make_hyper(2, {{5, 7, 8}, {1, 0, 0}, {0, 1, 0}});
  DeltaTranslation id(IntMatrix::identity(3));
  CHECK(translate_charfun(id, f).facet_vectors == f.facet_vectors);

  DeltaTranslation block(IntMatrix{{3, 5, 0}, {2, 3, 0}, {0, 0, 1}});
  HyperCharFn g = translate_charfun(block, f);
  CHECK(g.facet_vectors ==
        std::vector<std::vector<Int>>{{50, 31, 8}, {3, 2, 0}, {5, 3, 0}});
  CHECK(validate_hyper(g).valid);

  CHECK_THROWS_AS(DeltaTranslation(IntMatrix{{2, 0}, {0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(translate_charfun(DeltaTranslation(IntMatrix::identity(2)), f),
                  std::invalid_argument);
}

TEST_CASE("validity is invariant under translation and facet permutation") {
  oracles::TestRng rng(77003);
  for (int t = 0; t < 60; ++t) {
    int n = 2;
    HyperCharFn f;
    f.n = n;
    f.facet_vectors.resize(n + 1);
    for (auto& v : f.facet_vectors) {
      v.resize(n + 1);
      for (auto& x : v) x = rng.uniform(-5, 5);
    }
    bool valid = false;
    try {
      valid = validate_hyper(f).valid;
    } catch (const std::invalid_argument&) {
      continue;
    }

    DeltaTranslation d(oracles::random_unimodular(rng, n + 1));
    REQUIRE(validate_hyper(translate_charfun(d, f)).valid == valid);

    HyperCharFn perm = f;
    std::shuffle(perm.facet_vectors.begin(), perm.facet_vectors.end(), rng.eng);
    REQUIRE(validate_hyper(perm).valid == valid);
  }
}

#include <catch2/catch_amalgamated.hpp>

#include "lenscob/cobord.hpp"
#include "oracles.hpp"

using namespace lenscob;

namespace {

// smallest tuple for which all four extension gcd conditions fail:
// gcd{15,21}=3, gcd{56,21}=7, gcd{15,50}=5, gcd{56,50}=2
const long long kDeadQ1 = 15, kDeadQ2 = 21, kDeadP = 71;

void check_step_postconditions(const PlaneVec& u, const PlaneVec& w, const PlaneVec& e) {
  REQUIRE(abs_int(det2(u, e)) == 1);
  REQUIRE(is_primitive(e));
  REQUIRE(abs_int(det2(w, e)) < abs_int(det2(u, w)));
}

}  // namespace

TEST_CASE("chain_step fixed examples") {
  PlaneVec e1 = chain_step({1, 0}, {3, 8});
  CHECK(e1 == PlaneVec{0, 1});
  check_step_postconditions({1, 0}, {3, 8}, e1);

  PlaneVec e2 = chain_step({1, 0}, {1, 2});
  CHECK(e2 == PlaneVec{0, 1});
  check_step_postconditions({1, 0}, {1, 2}, e2);

  CHECK_THROWS_AS(chain_step({1, 0}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(chain_step({2, 0}, {3, 8}), std::invalid_argument);
}

TEST_CASE("chain_step postconditions on random primitive pairs") {
  oracles::TestRng rng(99001);
  int done = 0;
  while (done < 500) {
    PlaneVec u{rng.uniform(-40, 40), rng.uniform(-40, 40)};
    PlaneVec w{rng.uniform(-40, 40), rng.uniform(-40, 40)};
    if (!is_primitive(u) || !is_primitive(w)) continue;
    if (abs_int(det2(u, w)) <= 1) continue;
    check_step_postconditions(u, w, chain_step(u, w));
    ++done;
  }
}

TEST_CASE("unimodular_chain fixed examples") {
  ChainCert c12 = unimodular_chain(1, 2);
  CHECK(c12.chain == std::vector<PlaneVec>{{1, 0}, {0, 1}, {-1, 2}});
  CHECK(check_chain(c12).accepted);

  for (long long p : {2, 3, 5, 9, 44}) {
    ChainCert c = unimodular_chain(1, p);
    REQUIRE(c.chain == std::vector<PlaneVec>{{1, 0}, {0, 1}, {-1, p}});
    REQUIRE(check_chain(c).accepted);
  }

  ChainCert c38 = unimodular_chain(3, 8);
  CHECK(check_chain(c38).accepted);

  CHECK_THROWS_AS(unimodular_chain(2, 8), std::invalid_argument);
  CHECK_THROWS_AS(unimodular_chain(5, 3), std::invalid_argument);
}

TEST_CASE("chains for every pair up to 60 pass the invariant suite") {
  for (long long p = 2; p <= 60; ++p)
    for (long long q = 1; q < p; ++q) {
      if (std::gcd(q, p) != 1) continue;
      ChainCert c = unimodular_chain(q, p);
      REQUIRE(check_chain(c).accepted);
      REQUIRE(Int(c.chain.size()) < Int(p) + 2);
    }
}

TEST_CASE("chain tampering is caught") {
  ChainCert c = unimodular_chain(3, 8);
  ChainCert wrong_end = c;
  wrong_end.chain.back() = {3, 8};
  CHECK_FALSE(check_chain(wrong_end).accepted);

  ChainCert scaled = c;
  scaled.chain[1][0] *= 3;
  scaled.chain[1][1] *= 3;
  CHECK_FALSE(check_chain(scaled).accepted);

  ChainCert dropped = c;
  dropped.chain.erase(dropped.chain.begin() + 1);
  CHECK_FALSE(check_chain(dropped).accepted);
}

TEST_CASE("polygon certificates accept and reject") {
  PolygonCertificate ok = polygon_certificate(8, 3);
  CHECK(ok.acceptance.accepted);

  PolygonCertificate tampered = ok;
  tampered.cert.chain[1][0] += 1;
  tampered.cert.chain[1][1] += 1;
  CHECK_FALSE(verify_chain_cert(tampered.cert).accepted);

  PolygonCertificate accepted12 = polygon_certificate(2, 1);
  CHECK(accepted12.acceptance.accepted);
}

TEST_CASE("find_extension_dim3 fixed cases") {
  CHECK(find_extension_dim3(1, 1, 2) == Epsilon{0, 0});
  CHECK(find_extension_dim3(2, 4, 5) == Epsilon{-1, 0});
  CHECK_FALSE(find_extension_dim3(kDeadQ1, kDeadQ2, kDeadP).has_value());
  CHECK_THROWS_AS(find_extension_dim3(2, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(find_extension_dim3(1, 2, 4), std::invalid_argument);
}

TEST_CASE("proportional parameters always admit the (0,-1) extension") {
  oracles::TestRng rng(99002);
  int done = 0;
  while (done < 200) {
    long long q1 = rng.uniform(1, 12);
    long long k = rng.uniform(1, 6);
    long long q2 = q1 * k;
    long long p = q2 + rng.uniform(1, 30);
    if (std::gcd(p, q1) != 1 || std::gcd(p, q2) != 1) continue;
    REQUIRE(std::gcd(q1, p - q2) == 1);
    REQUIRE(find_extension_dim3(q1, q2, p).has_value());
    ++done;
  }
}

TEST_CASE("find_extension general cases") {
  CHECK(find_extension({1, 1, 1}, 2) == Epsilon{0, 0, 0});
  CHECK(find_extension({1, 2, 3}, 5) == Epsilon{0, 0, 0});
  CHECK_FALSE(find_extension({kDeadQ1, kDeadQ2}, kDeadP).has_value());
  CHECK_THROWS_AS(find_extension({3, 2}, 5), std::invalid_argument);
  CHECK_THROWS_AS(find_extension(std::vector<Int>{}, 5), std::invalid_argument);
}

TEST_CASE("general search agrees with the dim-3 fast path") {
  for (long long s = 4; s <= 25; ++s)
    for (long long q1 = 1; q1 <= s; ++q1)
      for (long long q2 = q1; q1 + q2 < s; ++q2) {
        long long p = s - q1 - q2;
        if (p <= q2) continue;
        if (std::gcd(p, q1) != 1 || std::gcd(p, q2) != 1) continue;
        auto fast = find_extension_dim3(q1, q2, p);
        auto general = find_extension({q1, q2}, p);
        REQUIRE(fast.has_value() == general.has_value());
        if (fast) {
          REQUIRE(*fast == *general);
          RationalCharFn eta = epsilon_extension({q1, q2}, p, *fast);
          REQUIRE(validate_rational_simplex(eta).valid);
        }
      }
}

TEST_CASE("pairwise bezout coefficients match the extension validity") {
  oracles::TestRng rng(99003);
  int done = 0;
  while (done < 400) {
    int n = 2 + static_cast<int>(rng.uniform(0, 1));
    long long p = rng.uniform(2, 20);
    if (p < n + 1) continue;
    std::vector<Int> q(n);
    bool ok = true;
    long long prev = 1;
    for (auto& x : q) {
      long long v = rng.uniform(prev, p - 1);
      x = v;
      prev = v;
      if (std::gcd(v, p) != 1) ok = false;
    }
    if (!ok) continue;
    Epsilon eps(n);
    for (auto& e : eps) e = rng.uniform(0, 1) ? -1 : 0;

    bool all_pairs = true;
    for (int i = 0; i < n && all_pairs; ++i)
      for (int j = i + 1; j < n && all_pairs; ++j) {
        Int ci = Int(eps[i]) * p + q[i];
        Int cj = Int(eps[j]) * p + q[j];
        Int mixed = Int(eps[i]) * q[j] - Int(eps[j]) * q[i];
        bool solvable = bezout3(cj, -ci, mixed).has_value();
        REQUIRE(solvable == (gcd_many({cj, -ci, mixed}) == 1));
        if (!solvable) all_pairs = false;
      }
    bool valid = validate_rational_simplex(epsilon_extension(q, p, eps)).valid;
    REQUIRE(valid == all_pairs);
    ++done;
  }
}

TEST_CASE("vertex cut boundaries of the worked tetrahedron") {
  RationalCharFn eta = epsilon_extension({1, 2}, 5, {0, 0});
  auto comps = vertex_cut_boundaries(eta);
  REQUIRE(comps.size() == 4);
  CHECK(comps[0].second.kind == LensKind::Sphere);
  CHECK(comps[1].second.kind == LensKind::Sphere);
  CHECK(comps[2].second == lens_class(2, 2, {1, 1}));
  CHECK(comps[3].second == lens_class(2, 5, {1, 2}));
}

TEST_CASE("unimodular assignments cut to spheres at every vertex") {
  RationalCharFn trivial;
  trivial.dim = 3;
  trivial.facet_vectors = {{-1, -1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (auto& [vertex, comp] : vertex_cut_boundaries(trivial)) {
    (void)vertex;
    REQUIRE(comp.kind == LensKind::Sphere);
  }
}

TEST_CASE("cut components at inner vertices have order |eps*p + q|") {
  oracles::TestRng rng(99004);
  int done = 0;
  while (done < 200) {
    long long p = rng.uniform(2, 30);
    long long q1 = rng.uniform(1, p - 1);
    long long q2 = rng.uniform(q1, p - 1);
    if (std::gcd(p, q1) != 1 || std::gcd(p, q2) != 1) continue;
    auto eps = find_extension_dim3(q1, q2, p);
    if (!eps) continue;
    auto comps = vertex_cut_boundaries(epsilon_extension({q1, q2}, p, *eps));
    const long long qs[2] = {q1, q2};
    for (int i = 1; i <= 2; ++i) {
      Int expect = abs_int(Int((*eps)[i - 1]) * p + qs[i - 1]);
      REQUIRE(comps[i].second.p == expect);
      REQUIRE(expect < p);
    }
    REQUIRE(comps[3].second == lens_class(2, p, {q1, q2}));
    ++done;
  }
}

TEST_CASE("build_certificate on base cases") {
  auto leaf = build_certificate(1, {7});
  REQUIRE(leaf.has_value());
  CHECK(leaf->root.sphere());

  auto tree = build_certificate(5, {1, 2});
  REQUIRE(tree.has_value());
  const ReductionNode& root = tree->root;
  CHECK(root.p == 5);
  CHECK(root.q == std::vector<Int>{1, 2});
  CHECK(root.eps == Epsilon{0, 0});
  REQUIRE(root.children.size() == 3);
  CHECK(root.children[0].sphere());
  CHECK(root.children[1].sphere());
  const ReductionNode& two = root.children[2];
  CHECK(two.p == 2);
  CHECK(two.q == std::vector<Int>{1, 1});
  REQUIRE(two.children.size() == 3);
  for (const auto& child : two.children) REQUIRE(child.sphere());

  CHECK(verify_certificate(*tree).accepted);
  CHECK_THROWS_AS(build_certificate(4, {2, 3}), std::invalid_argument);
}

TEST_CASE("build_certificate normalizes parameters first") {
  auto tree = build_certificate(5, {-4, 7});
  REQUIRE(tree.has_value());
  CHECK(tree->root.q == std::vector<Int>{1, 2});
  CHECK(verify_certificate(*tree).accepted);
}

TEST_CASE("build_certificate dead-ends where the extension search fails") {
  CHECK_FALSE(build_certificate(kDeadP, {kDeadQ1, kDeadQ2}).has_value());
}

TEST_CASE("reduction trees verify and decrease strictly") {
  oracles::TestRng rng(99005);
  int done = 0;
  while (done < 60) {
    long long p = rng.uniform(2, 40);
    long long q1 = rng.uniform(1, p - 1);
    long long q2 = rng.uniform(1, p - 1);
    if (std::gcd(p, q1) != 1 || std::gcd(p, q2) != 1) continue;
    auto tree = build_certificate(p, {q1, q2});
    if (!tree) continue;
    REQUIRE(verify_certificate(*tree).accepted);

    // strict decrease, sphere leaves, and depth bounded by the root order
    std::function<void(const ReductionNode&, Int)> walk = [&](const ReductionNode& node,
                                                              Int depth) {
      REQUIRE(depth <= tree->root.p);
      if (node.sphere()) {
        REQUIRE(node.children.empty());
        return;
      }
      REQUIRE(node.children.size() == 3);
      for (const auto& child : node.children) {
        REQUIRE(child.p < node.p);
        walk(child, depth + 1);
      }
    };
    walk(tree->root, 1);
    ++done;
  }
}

TEST_CASE("certificates are self-contained") {
  auto tree = build_certificate(11, {3, 9});
  REQUIRE(tree.has_value());
  std::function<void(const ReductionNode&)> walk = [&](const ReductionNode& node) {
    if (node.sphere()) return;
    REQUIRE(node.sum() >= node.p + Int(node.q.size()));
    auto comps = vertex_cut_boundaries(epsilon_extension(node.q, node.p, node.eps));
    REQUIRE(node.children.size() == comps.size() - 1);
    for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
      const LensClass& expect = comps[i].second;
      if (expect.kind == LensKind::Sphere) {
        REQUIRE(node.children[i].sphere());
      } else {
        REQUIRE(node.children[i].p == expect.p);
        REQUIRE(lens_normal_form(expect.p, node.children[i].q) ==
                lens_normal_form(expect.p, expect.r));
      }
      walk(node.children[i]);
    }
  };
  walk(tree->root);
}

TEST_CASE("verify_certificate rejects tampering") {
  auto tree = build_certificate(5, {1, 2});
  REQUIRE(tree.has_value());

  ReductionTree bumped = *tree;
  bumped.root.children[2].p += 1;
  VerifyReport rep = verify_certificate(bumped);
  CHECK_FALSE(rep.accepted);
  CHECK(rep.path == "root.children[2]");

  ReductionTree fake_sphere;
  fake_sphere.n = 2;
  fake_sphere.root.p = 2;
  VerifyReport rep2 = verify_certificate(fake_sphere);
  CHECK_FALSE(rep2.accepted);

  ReductionTree wrong_eps = *tree;
  wrong_eps.root.eps = {0, -1};
  CHECK_FALSE(verify_certificate(wrong_eps).accepted);

  ReductionTree swapped = *tree;
  std::swap(swapped.root.children[0], swapped.root.children[2]);
  CHECK_FALSE(verify_certificate(swapped).accepted);
}

TEST_CASE("survey on tiny ranges") {
  SurveyReport rep = survey(2, 4);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].sum == 4);
  CHECK(rep.rows[0].tuples == 1);
  CHECK(rep.rows[0].failures == 0);
  CHECK(rep.total_tuples == 1);
  CHECK(rep.total_failures == 0);
  CHECK(rep.verified_bound == 4);

  CHECK_THROWS_AS(survey(1, 10), std::invalid_argument);
  CHECK_THROWS_AS(survey(2, 2), std::invalid_argument);
}

TEST_CASE("survey is clean through sum 30") {
  SurveyReport rep = survey(2, 30);
  CHECK(rep.total_failures == 0);
  CHECK(rep.verified_bound == 30);
  std::uint64_t recount = 0;
  for (const auto& row : rep.rows) recount += row.tuples;
  CHECK(recount == rep.total_tuples);
}

TEST_CASE("survey failures replay individually") {
  SurveyReport rep = survey(2, 110, 2);
  REQUIRE(rep.total_failures >= 1);
  bool found_known = false;
  for (const auto& tuple : rep.failing) {
    REQUIRE(tuple.size() == 3);
    REQUIRE_FALSE(find_extension_dim3(tuple[0], tuple[1], tuple[2]).has_value());
    REQUIRE_FALSE(find_extension({tuple[0], tuple[1]}, tuple[2]).has_value());
    if (tuple == std::vector<Int>{kDeadQ1, kDeadQ2, kDeadP}) found_known = true;
  }
  CHECK(found_known);
  CHECK(rep.verified_bound < 107);
}

TEST_CASE("survey reports do not depend on the number of workers") {
  SurveyReport a = survey(2, 45, 1);
  SurveyReport b = survey(2, 45, 4);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    REQUIRE(a.rows[i].sum == b.rows[i].sum);
    REQUIRE(a.rows[i].tuples == b.rows[i].tuples);
    REQUIRE(a.rows[i].failures == b.rows[i].failures);
  }
  REQUIRE(a.failing == b.failing);
  REQUIRE(a.verified_bound == b.verified_bound);
}

TEST_CASE("survey in dimension three is self-consistent") {
  SurveyReport rep = survey(3, 20);
  std::uint64_t recount = 0;
  for (const auto& row : rep.rows) recount += row.tuples;
  CHECK(recount == rep.total_tuples);
  for (const auto& tuple : rep.failing) {
    std::vector<Int> q(tuple.begin(), tuple.end() - 1);
    REQUIRE_FALSE(find_extension(q, tuple.back()).has_value());
  }
}

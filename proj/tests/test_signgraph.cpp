#include <doctest.h>

#include "qsp/signgraph.hpp"

using namespace qsp;

namespace {
DiracSpec parity(Domain d) {
  return make_scalar_dirac(d, "parity", [](const GTTableau& t) { return ((t(2, 1) - t(1, 2)) % 2 == 0 ? 1.0 : -1.0) * t.r11(); });
}
}  // namespace

TEST_CASE("certified edges hold for the shipped operators") {
  for (int ell = 1; ell <= 2; ++ell) {
    auto rep = certify_edges(build_d_tilde(Domain{ell, Space::group, 8}), 1.5);
    CHECK(rep.violations.empty());
    CHECK_FALSE(rep.certificates.empty());
    auto sph = certify_edges(build_sphere_D(Domain{ell, Space::sphere, 20}), 1.5);
    CHECK(sph.violations.empty());
  }
  CHECK(default_threshold(build_d_tilde(Domain{1, Space::group, 6})) == doctest::Approx(1.5));
}

TEST_CASE("sphere plane edges") {
  DiracSpec D = build_sphere_D(Domain{2, Space::sphere, 6});
  SignGraph G = build_sign_graph(D, 1.5, EdgeRule::threshold);
  auto vid = [&](int n, int k) {
    return static_cast<int>(std::find(G.vertices.begin(), G.vertices.end(), sphere_tableau(n, k, 2)) - G.vertices.begin());
  };
  auto has = [&](int a, int b) {
    return std::find(G.edges.begin(), G.edges.end(), std::make_pair(std::min(a, b), std::max(a, b))) != G.edges.end();
  };
  CHECK(has(vid(0, 3), vid(0, 2)));
  CHECK(has(vid(2, 3), vid(2, 2)));
  CHECK(has(vid(2, 0), vid(3, 0)));
  CHECK(has(vid(0, 1), vid(0, 0)));
}

TEST_CASE("disjoint path flows") {
  CHECK(disjoint_path_flow(build_sign_graph(build_d_tilde(Domain{1, Space::group, 6}), 1.5, EdgeRule::threshold)) == 0);
  auto sph = flow_trail([](Domain d) { return build_sphere_D(d); }, 2, Space::sphere, {8, 12, 16}, 1.5,
                        EdgeRule::threshold);
  CHECK(sph.saturates());
  CHECK(sph.flows.back() == 1);
  auto par = flow_trail(parity, 1, Space::group, {4, 6, 8}, 1.5, EdgeRule::certified);
  CHECK(par.min_increase() >= 2);
}

TEST_CASE("flow is monotone in the truncation and in the edge set") {
  auto t = flow_trail(parity, 1, Space::group, {2, 3, 4, 5, 6}, 1.5, EdgeRule::threshold);
  for (std::size_t i = 1; i < t.flows.size(); ++i) CHECK(t.flows[i] >= t.flows[i - 1]);
  for (int N : {3, 5}) {
    DiracSpec D = parity(Domain{1, Space::group, N});
    int moves = disjoint_path_flow(build_sign_graph(D, 1.5, EdgeRule::threshold));
    int all = disjoint_path_flow(build_sign_graph(D, 1.5, EdgeRule::exhaustive));
    CHECK(all >= moves);
  }
  CHECK_THROWS(build_sign_graph(build_d_tilde(Domain{2, Space::group, 3}), 1.5, EdgeRule::exhaustive));
}

TEST_CASE("non-compactness witness") {
  QParam q(0.5);
  auto w = noncompact_witness(q, 2, 6);
  CHECK(w.min_abs >= 0.01);
  CHECK(w.max_mismatch < 1e-12);
  CHECK(noncompact_witness(q, 2, 7).entries.size() > w.entries.size());
  CHECK_THROWS_AS(noncompact_witness(q, 1, 6), std::invalid_argument);
}

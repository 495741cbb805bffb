#include <doctest.h>

#include <set>

#include "qsp/cgc.hpp"
#include "qsp/tableaux.hpp"

using namespace qsp;

namespace {
DiffCoords make_coords(int ell, std::vector<int> V, std::vector<std::vector<int>> H) {
  DiffCoords d;
  d.ell = ell;
  d.V = std::move(V);
  d.H = std::move(H);
  return d;
}
}  // namespace

TEST_CASE("enumeration counts") {
  CHECK(enumerate_tableaux(YoungDiagram({1, 0})).size() == 2);
  CHECK(enumerate_tableaux(YoungDiagram({1, 0, 0})).size() == 3);
  CHECK(enumerate_tableaux(YoungDiagram({2, 1, 0})).size() == 8);
  for (int ell = 1; ell <= 3; ++ell)
    for (const auto& lam : young_diagrams(ell, 4)) {
      auto ts = enumerate_tableaux(lam);
      CHECK(static_cast<long long>(ts.size()) == weyl_dimension(lam));
      CHECK(std::is_sorted(ts.begin(), ts.end()));
      for (const auto& t : ts) CHECK(is_valid(t));
    }
}

TEST_CASE("q-dimension equals the weighted tableau sum") {
  for (double qv : {0.3, 0.5, 0.8}) {
    QParam q(qv);
    for (int ell = 1; ell <= 3; ++ell)
      for (const auto& lam : young_diagrams(ell, 3))
        CHECK(q_dim_sum(lam, q).value() == doctest::Approx(weyl_q_dimension(lam, q).value()).epsilon(1e-10));
  }
}

TEST_CASE("canonical form and validity") {
  auto r = GTTableau::from_rows({{3, 1}, {2}});
  CHECK(canonical(r) == GTTableau::from_rows({{2, 0}, {1}}));
  CHECK_FALSE(is_valid(GTTableau::from_rows({{1, 0}, {2}})));
  CHECK_THROWS(GTTableau::from_rows({{1, 0}, {1, 0}}));
}

TEST_CASE("difference coordinates") {
  DiffCoords z = coords(GTTableau::zero(2));
  for (int v : z.V) CHECK(v == 0);
  for (const auto& row : z.H)
    for (int h : row) CHECK(h == 0);
  DiffCoords d = coords(GTTableau::from_rows({{2, 0}, {1}}));
  CHECK(d.v(1) == 1);
  CHECK(d.h(1, 1) == 1);
  for (int ell = 1; ell <= 3; ++ell) {
    DiffCoords s = coords(sphere_tableau(3, 2, ell));
    CHECK(s.v(1) == 3);
    CHECK(s.h(1, ell) == 2);
    int total = 0;
    for (int v : s.V) total += v;
    for (const auto& row : s.H)
      for (int h : row) total += h;
    CHECK(total == 5);
  }
}

TEST_CASE("coordinates round-trip") {
  for (int ell = 1; ell <= 3; ++ell)
    for (const auto& t : enumerate_truncation(ell, 4)) {
      DiffCoords d = coords(t);
      CHECK(satisfies_inequalities(d));
      CHECK(from_coords(d) == t);
    }
  CHECK_THROWS_AS(from_coords(make_coords(1, {0}, {{-1}})), ValidityError);
  CHECK_FALSE(satisfies_inequalities(make_coords(1, {-1}, {{0}})));
}

TEST_CASE("psi") {
  CHECK(psi(GTTableau::zero(2)) == 0.0);
  CHECK(psi(GTTableau::from_rows({{1, 0}, {0}})) == -0.5);
  CHECK(psi(GTTableau::from_rows({{1, 0}, {1}})) == 0.5);
}

TEST_CASE("moves on sphere tableaux") {
  for (int ell = 1; ell <= 3; ++ell)
    for (int n = 0; n < 3; ++n)
      for (int k = 0; k < 3; ++k) {
        auto up = apply_move(Move::M(1, 1), sphere_tableau(n, k, ell));
        REQUIRE(up);
        CHECK(*up == sphere_tableau(n + 1, k, ell));
        auto down = apply_move(Move::M(ell + 1, 1), sphere_tableau(n, k, ell));
        if (k == 0) {
          CHECK_FALSE(down);
        } else {
          REQUIRE(down);
          CHECK(*down == sphere_tableau(n, k - 1, ell));
        }
      }
  auto raised = apply_move(Move::N(1, 0, 1), GTTableau::zero(1));
  REQUIRE(raised);
  CHECK(*raised == GTTableau::from_rows({{1, 0}, {1}}));
}

TEST_CASE("move shapes") {
  CHECK(Move::M(3, 2).m == std::vector<int>{3, 2});
  CHECK(Move::N(1, 0, 2).m == std::vector<int>{1, 1, 1});
  CHECK(Move::N(2, 1, 3).m == std::vector<int>{3, 2, 2});
  for (int ell = 1; ell <= 3; ++ell)
    for (int i = 1; i <= ell + 1; ++i)
      for (const Move& M : moves_of_length(i, ell)) {
        CHECK(M.size() == i);
        for (int j = 1; j <= i; ++j) CHECK((M[j] >= 1 && M[j] <= ell + 2 - j));
      }
}

TEST_CASE("N_{j0} moves preserve the free plane") {
  for (int ell = 1; ell <= 3; ++ell)
    for (const auto& t : enumerate_truncation(ell, 3))
      for (int j = 1; j <= ell; ++j)
        if (auto s = apply_move(Move::N(j, 0, ell), t)) CHECK(same_free_plane(t, *s));
  GTTableau z = GTTableau::zero(1);
  CHECK(same_free_plane(z, z));
  CHECK(same_free_plane(z, *apply_move(Move::N(1, 0, 1), z)));
  CHECK_FALSE(same_free_plane(z, *apply_move(Move::M(1, 1), z)));
}

TEST_CASE("complementary axis") {
  CHECK(on_complementary_axis(GTTableau::zero(2)));
  CHECK_FALSE(on_complementary_axis(GTTableau::from_rows({{2, 0}, {1}})));
  CHECK(on_complementary_axis(sphere_tableau(3, 0, 2)));
  CHECK_FALSE(on_complementary_axis(sphere_tableau(3, 2, 2)));
}

TEST_CASE("the axis meets each free plane exactly once") {
  for (int ell = 1; ell <= 3; ++ell) {
    std::set<std::string> seen;
    for (const auto& t : enumerate_truncation(ell, 4)) {
      Path p = sweep_to_axis(t);
      CHECK(on_complementary_axis(p.back()));
      CHECK(same_free_plane(t, p.back()));
      if (on_complementary_axis(t)) {
        CHECK(p.size() == 1);
        CHECK(seen.insert(to_text(t)).second);
      }
    }
  }
}

TEST_CASE("sweep to the axis") {
  CHECK(sweep_to_axis(GTTableau::zero(2)).size() == 1);
  GTTableau r = from_coords(make_coords(2, {0, 0}, {{1, 1}, {1}}));
  Path p = sweep_to_axis(r);
  for (const auto& x : p) CHECK(is_valid(x));
  DiffCoords end = coords(p.back());
  CHECK(std::min(end.h(1, 1), end.h(2, 1)) == 0);
  CHECK(end.h(1, 2) == 0);
  Path fixed = sweep_to_axis_fixing_h11(r);
  for (const auto& x : fixed) CHECK(coords(x).h(1, 1) == 1);
}

TEST_CASE("sweep to V11") {
  CHECK(sweep_to_v11(GTTableau::zero(2)).size() == 1);
  GTTableau v2 = from_coords(make_coords(2, {2, 0}, {{0, 0}, {0}}));
  CHECK(sweep_to_v11(v2).size() == 1);
  GTTableau r = from_coords(make_coords(2, {1, 1}, {{1, 0}, {0}}));
  Path p = sweep_to_v11(r);
  for (const auto& x : p) {
    CHECK(is_valid(x));
    CHECK(coords(x).v(1) == 1);
  }
  CHECK(p.back() == from_coords(make_coords(2, {1, 0}, {{0, 0}, {0}})));
  Path row = sweep_row1(r);
  for (int b = 1; b <= 2; ++b) CHECK(coords(row.back()).h(1, b) == 0);
}

TEST_CASE("paths to zero") {
  CHECK(path_to_zero(GTTableau::zero(3)).size() == 1);
  CHECK(path_to_zero(GTTableau::from_rows({{1, 0}, {1}})).size() <= 2);
  for (int ell = 1; ell <= 3; ++ell)
    for (const auto& t : enumerate_truncation(ell, 4)) {
      Path p = path_to_zero(t);
      CHECK(static_cast<int>(p.size()) - 1 <= ell * t.r11());
      CHECK(p.back() == GTTableau::zero(ell));
      for (std::size_t s = 1; s < p.size(); ++s) {
        bool reached = false;
        for (int i = 1; i <= ell + 1 && !reached; ++i)
          for (const Move& M : moves_of_length(i, ell)) {
            auto y = apply_move(M, p[s - 1]);
            if (y && *y == p[s]) reached = true;
          }
        CHECK(reached);
      }
    }
}

TEST_CASE("sphere sectors") {
  CHECK(sphere_sector(0, 0, 2).size() == 1);
  CHECK(sphere_tableau(0, 0, 3) == GTTableau::zero(3));
  for (int n = 0; n < 4; ++n)
    for (int k = 0; k < 4; ++k)
      CHECK(static_cast<long long>(sphere_sector(n, k, 2).size()) == weyl_dimension(sphere_top_row(n, k, 2)));
}

TEST_CASE("text round-trip") {
  auto t = GTTableau::from_rows({{2, 1, 0}, {1, 1}, {1}});
  CHECK(to_text(t) == "[[2,1,0],[1,1],[1]]");
  CHECK(parse_tableau(to_text(t)) == t);
  CHECK_THROWS_AS(parse_tableau("[[1,0],"), std::invalid_argument);
}

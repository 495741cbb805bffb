#include "qsp/tableaux.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace qsp {

namespace {

int tableau_size(int ell) { return (ell + 1) * (ell + 2) / 2; }

}  // namespace

GTTableau::GTTableau(int ell_, std::vector<int> entries) : ell(ell_), e(std::move(entries)) {
  if (ell < 1) throw std::invalid_argument("rank must be >= 1");
  if (static_cast<int>(e.size()) != tableau_size(ell)) throw std::invalid_argument("tableau has wrong number of entries");
}

GTTableau GTTableau::zero(int ell) {
  return GTTableau(ell, std::vector<int>(static_cast<std::size_t>(tableau_size(ell)), 0));
}

GTTableau GTTableau::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("tableau needs at least two rows");
  const int ell = static_cast<int>(rows.size()) - 1;
  std::vector<int> e;
  for (int i = 1; i <= ell + 1; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i - 1)];
    if (static_cast<int>(row.size()) != ell + 2 - i) throw std::invalid_argument("tableau row has wrong length");
    e.insert(e.end(), row.begin(), row.end());
  }
  return GTTableau(ell, std::move(e));
}

std::vector<std::vector<int>> GTTableau::rows() const {
  std::vector<std::vector<int>> out;
  for (int i = 1; i <= ell + 1; ++i) {
    auto r = row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

YoungDiagram GTTableau::top() const {
  auto r = row(1);
  return YoungDiagram(std::vector<int>(r.begin(), r.end()));
}

std::size_t GTTableauHash::operator()(const GTTableau& t) const noexcept {
  std::size_t h = static_cast<std::size_t>(t.ell) * 0x9e3779b97f4a7c15ULL;
  for (int x : t.e) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

bool is_valid(const GTTableau& r) {
  const int ell = r.ell;
  for (int i = 1; i <= ell; ++i)
    for (int j = 1; j <= ell + 1 - i; ++j) {
      if (r(i, j) < r(i + 1, j)) return false;
      if (r(i + 1, j) < r(i, j + 1)) return false;
    }
  return r(1, ell + 1) >= 0;
}

GTTableau canonical(GTTableau r) {
  int c = r(1, r.ell + 1);
  if (c != 0)
    for (int& x : r.e) x -= c;
  return r;
}

DiffCoords coords(const GTTableau& r) {
  DiffCoords d;
  d.ell = r.ell;
  for (int a = 1; a <= r.ell; ++a) {
    d.V.push_back(r(a, 1) - r(a + 1, 1));
    std::vector<int> h;
    for (int b = 1; b <= r.ell + 1 - a; ++b) h.push_back(r(a + 1, b) - r(a, b + 1));
    d.H.push_back(std::move(h));
  }
  return d;
}

namespace {

GTTableau assemble(const DiffCoords& d) {
  const int ell = d.ell;
  if (static_cast<int>(d.V.size()) != ell || static_cast<int>(d.H.size()) != ell)
    throw ValidityError("coordinate arrays have wrong shape");
  for (int a = 1; a <= ell; ++a)
    if (static_cast<int>(d.H[static_cast<std::size_t>(a - 1)].size()) != ell + 1 - a)
      throw ValidityError("coordinate arrays have wrong shape");
  GTTableau r = GTTableau::zero(ell);
  for (int a = ell; a >= 1; --a) {
    r.at(a, 1) = r(a + 1, 1) + d.v(a);
    for (int j = 2; j <= ell + 2 - a; ++j) r.at(a, j) = r(a + 1, j - 1) - d.h(a, j - 1);
  }
  return canonical(std::move(r));
}

}  // namespace

bool satisfies_inequalities(const DiffCoords& d) {
  for (int x : d.V)
    if (x < 0) return false;
  for (const auto& row : d.H)
    for (int x : row)
      if (x < 0) return false;
  return is_valid(assemble(d));
}

GTTableau from_coords(const DiffCoords& d) {
  if (!satisfies_inequalities(d)) throw ValidityError("difference coordinates violate the tableau inequalities");
  return assemble(d);
}

Move Move::M(int i, int k) {
  if (k < 1 || k > i) throw std::invalid_argument("M_{ik} needs 1 <= k <= i");
  Move mv;
  for (int t = 0; t < k; ++t) mv.m.push_back(i - t);
  return mv;
}

Move Move::N(int i, int k, int ell) {
  const int len = ell + 2 - i;
  if (i < 1 || k < 0 || k > len) throw std::invalid_argument("N_{ik} out of range");
  Move mv;
  for (int t = 0; t < len; ++t) mv.m.push_back(t < k ? i + 1 : i);
  return mv;
}

std::vector<Move> moves_of_length(int i, int ell) {
  std::vector<Move> out;
  Move cur;
  cur.m.assign(static_cast<std::size_t>(i), 1);
  auto rec = [&](auto&& self, int j) -> void {
    if (j > i) {
      out.push_back(cur);
      return;
    }
    for (int x = 1; x <= ell + 2 - j; ++x) {
      cur.m[static_cast<std::size_t>(j - 1)] = x;
      self(self, j + 1);
    }
  };
  rec(rec, 1);
  return out;
}

std::optional<GTTableau> apply_move_raw(const Move& M, const GTTableau& r) {
  if (M.size() < 1 || M.size() > r.ell + 1) return std::nullopt;
  GTTableau s = r;
  for (int j = 1; j <= M.size(); ++j) {
    int mj = M[j];
    if (mj < 1 || mj > r.ell + 2 - j) return std::nullopt;
    s.at(j, mj) += 1;
  }
  if (!is_valid(s)) return std::nullopt;
  return s;
}

std::optional<GTTableau> apply_move(const Move& M, const GTTableau& r) {
  auto s = apply_move_raw(M, r);
  if (!s) return std::nullopt;
  return canonical(std::move(*s));
}

std::vector<GTTableau> enumerate_tableaux(const YoungDiagram& lambda) {
  const int ell = lambda.ell();
  std::vector<GTTableau> out;
  GTTableau cur = GTTableau::zero(ell);
  for (int j = 1; j <= ell + 1; ++j) cur.at(1, j) = lambda[j];
  // fill rows 2..l+1 entry by entry; each entry ranges over [r_{i-1,j+1}, r_{i-1,j}]
  auto rec = [&](auto&& self, int i, int j) -> void {
    if (i > ell + 1) {
      out.push_back(cur);
      return;
    }
    if (j > ell + 2 - i) {
      self(self, i + 1, 1);
      return;
    }
    for (int x = cur(i - 1, j + 1); x <= cur(i - 1, j); ++x) {
      cur.at(i, j) = x;
      self(self, i, j + 1);
    }
  };
  rec(rec, 2, 1);
  return out;
}

std::vector<GTTableau> enumerate_truncation(int ell, int n_max) {
  std::vector<GTTableau> out;
  for (const auto& lam : young_diagrams(ell, n_max)) {
    auto t = enumerate_tableaux(lam);
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

long long psi_twice(const GTTableau& r) {
  long long top = 0, rest = 0;
  for (int x : r.row(1)) top += x;
  for (int i = 2; i <= r.ell + 1; ++i)
    for (int x : r.row(i)) rest += x;
  return -static_cast<long long>(r.ell) * top + 2 * rest;
}

double psi(const GTTableau& r) { return static_cast<double>(psi_twice(r)) / 2.0; }

DiffCoords free_plane_key(const GTTableau& r) {
  DiffCoords d = coords(r);
  for (int b = 1; b <= r.ell; ++b) {
    int mn = d.h(1, b);
    for (int a = 2; a <= r.ell + 1 - b; ++a) mn = std::min(mn, d.h(a, b));
    for (int a = 1; a <= r.ell + 1 - b; ++a) d.H[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] -= mn;
  }
  return d;
}

bool same_free_plane(const GTTableau& r, const GTTableau& s) {
  if (r.ell != s.ell) return false;
  DiffCoords a = coords(r), b = coords(s);
  if (a.V != b.V) return false;
  for (int col = 1; col <= r.ell; ++col) {
    int diff = a.h(1, col) - b.h(1, col);
    for (int row = 2; row <= r.ell + 1 - col; ++row)
      if (a.h(row, col) - b.h(row, col) != diff) return false;
  }
  return true;
}

bool on_complementary_axis(const GTTableau& r) {
  DiffCoords d = coords(r);
  for (int b = 1; b <= r.ell; ++b) {
    bool has_zero = false;
    for (int a = 1; a <= r.ell + 1 - b; ++a) has_zero = has_zero || d.h(a, b) == 0;
    if (!has_zero) return false;
  }
  return true;
}

Path run_stages(const GTTableau& start, const std::vector<std::pair<int, Move>>& stages) {
  Path path{start};
  for (const auto& [count, mv] : stages)
    for (int t = 0; t < count; ++t) {
      auto next = apply_move(mv, path.back());
      if (!next) throw std::logic_error("path step left the set of valid tableaux");
      path.push_back(std::move(*next));
    }
  return path;
}

namespace {

std::vector<int> column_minima(const DiffCoords& d) {
  std::vector<int> mins;
  for (int b = 1; b <= d.ell; ++b) {
    int mn = d.h(1, b);
    for (int a = 2; a <= d.ell + 1 - b; ++a) mn = std::min(mn, d.h(a, b));
    mins.push_back(mn);
  }
  return mins;
}

Path axis_sweep(const GTTableau& r, int first_column) {
  const int ell = r.ell;
  std::vector<int> mins = column_minima(coords(r));
  std::vector<std::pair<int, Move>> stages;
  int acc = 0;
  for (int t = first_column; t <= ell; ++t) {
    acc += mins[static_cast<std::size_t>(t - 1)];
    stages.emplace_back(acc, Move::N(t + 1, 0, ell));
  }
  return run_stages(r, stages);
}

void append_row_clears(const GTTableau& r, std::vector<std::pair<int, Move>>& stages) {
  const int ell = r.ell;
  DiffCoords d = coords(r);
  for (int a = 1; a <= ell; ++a)
    for (int b = ell + 1 - a; b >= 1; --b) stages.emplace_back(d.h(a, b), Move::M(b + a, a));
}

}  // namespace

Path sweep_to_axis(const GTTableau& r) { return axis_sweep(r, 1); }

Path sweep_to_axis_fixing_h11(const GTTableau& r) { return axis_sweep(r, 2); }

Path sweep_row1(const GTTableau& r) {
  const int ell = r.ell;
  DiffCoords d = coords(r);
  std::vector<std::pair<int, Move>> stages;
  for (int b = ell; b >= 1; --b) stages.emplace_back(d.h(1, b), Move::M(b + 1, 1));
  return run_stages(r, stages);
}

Path sweep_to_v11(const GTTableau& r) {
  const int ell = r.ell;
  std::vector<std::pair<int, Move>> stages;
  append_row_clears(r, stages);
  DiffCoords d = coords(r);
  int acc = 0;
  for (int c = 2; c <= ell; ++c) {
    acc += d.v(c);
    stages.emplace_back(acc, Move::M(c + 1, c + 1));
  }
  return run_stages(r, stages);
}

Path path_to_zero(const GTTableau& r) {
  const int ell = r.ell;
  std::vector<std::pair<int, Move>> stages;
  append_row_clears(r, stages);
  DiffCoords d = coords(r);
  int acc = 0;
  for (int c = 1; c <= ell; ++c) {
    acc += d.v(c);
    stages.emplace_back(acc, Move::M(c + 1, c + 1));
  }
  return run_stages(r, stages);
}

YoungDiagram sphere_top_row(int n, int k, int ell) {
  if (n < 0 || k < 0) throw std::invalid_argument("sphere sector needs n, k >= 0");
  std::vector<int> lam(static_cast<std::size_t>(ell + 1), k);
  lam.front() = n + k;
  lam.back() = 0;
  return YoungDiagram(std::move(lam));
}

GTTableau sphere_tableau(int n, int k, int ell) {
  if (n < 0 || k < 0) throw std::invalid_argument("sphere tableau needs n, k >= 0");
  GTTableau r = GTTableau::zero(ell);
  for (int& x : r.e) x = k;
  r.at(1, 1) = n + k;
  r.at(1, ell + 1) = 0;
  return r;
}

std::vector<GTTableau> sphere_sector(int n, int k, int ell) { return enumerate_tableaux(sphere_top_row(n, k, ell)); }

std::string to_text(const GTTableau& r) {
  std::ostringstream os;
  os << '[';
  for (int i = 1; i <= r.ell + 1; ++i) {
    if (i > 1) os << ',';
    os << '[';
    auto row = r.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << row[j];
    os << ']';
  }
  os << ']';
  return os.str();
}

GTTableau parse_tableau(const std::string& text) {
  std::vector<std::vector<int>> rows;
  try {
    rows = nlohmann::json::parse(text).get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("cannot parse tableau: ") + e.what());
  }
  return GTTableau::from_rows(rows);
}

}  // namespace qsp

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsp/young.hpp"

namespace qsp {

/// Triangular array r_{ij}, 1 <= i <= l+1, 1 <= j <= l+2-i, stored row-major.
struct GTTableau {
  int ell = 1;
  std::vector<int> e;

  GTTableau() = default;
  GTTableau(int ell_, std::vector<int> entries);
  static GTTableau zero(int ell);
  static GTTableau from_rows(const std::vector<std::vector<int>>& rows);

  static int offset(int ell, int i) { return (i - 1) * (ell + 2) - (i - 1) * i / 2; }
  int row_len(int i) const { return ell + 2 - i; }
  int operator()(int i, int j) const { return e[static_cast<std::size_t>(offset(ell, i) + j - 1)]; }
  int& at(int i, int j) { return e[static_cast<std::size_t>(offset(ell, i) + j - 1)]; }
  std::span<const int> row(int i) const {
    return {e.data() + offset(ell, i), static_cast<std::size_t>(row_len(i))};
  }
  std::vector<std::vector<int>> rows() const;
  YoungDiagram top() const;
  int r11() const { return e[0]; }

  bool operator==(const GTTableau&) const = default;
  auto operator<=>(const GTTableau&) const = default;
};

struct GTTableauHash {
  std::size_t operator()(const GTTableau& t) const noexcept;
};

/// Interlacing r_{ij} >= r_{i+1,j} >= r_{i,j+1} and r_{1,l+1} >= 0.
bool is_valid(const GTTableau& r);
/// Shift so that r_{1,l+1} = 0.
GTTableau canonical(GTTableau r);

/// V_{a1} = r_{a1} - r_{a+1,1}; H_{ab} = r_{a+1,b} - r_{a,b+1}.
struct DiffCoords {
  int ell = 1;
  std::vector<int> V;               // V[a-1], a = 1..l
  std::vector<std::vector<int>> H;  // H[a-1][b-1], b = 1..l+1-a

  int v(int a) const { return V[static_cast<std::size_t>(a - 1)]; }
  int h(int a, int b) const { return H[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)]; }
  bool operator==(const DiffCoords&) const = default;
};

class ValidityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

DiffCoords coords(const GTTableau& r);
/// Throws ValidityError when the coordinates violate the tableau inequalities.
GTTableau from_coords(const DiffCoords& d);
bool satisfies_inequalities(const DiffCoords& d);

/// Move (m_1, ..., m_k): add one box at r_{j,m_j} for j = 1..k.
struct Move {
  std::vector<int> m;

  int size() const { return static_cast<int>(m.size()); }
  int operator[](int j) const { return m[static_cast<std::size_t>(j - 1)]; }
  bool operator==(const Move&) const = default;
  auto operator<=>(const Move&) const = default;

  /// M_{ik} = (i, i-1, ..., i-k+1).
  static Move M(int i, int k);
  /// N_{ik}: i+1 repeated k times then i, total length l+2-i.
  static Move N(int i, int k, int ell);
};

/// All moves of length i at rank ell, lexicographic.
std::vector<Move> moves_of_length(int i, int ell);

std::optional<GTTableau> apply_move_raw(const Move& M, const GTTableau& r);
std::optional<GTTableau> apply_move(const Move& M, const GTTableau& r);

std::vector<GTTableau> enumerate_tableaux(const YoungDiagram& lambda);
/// All canonical tableaux with r_11 <= n_max, ordered by (top row, tableau).
std::vector<GTTableau> enumerate_truncation(int ell, int n_max);

/// 2 psi(r), an integer.
long long psi_twice(const GTTableau& r);
double psi(const GTTableau& r);

/// (V, H_{ab} - min_a H_{ab}): equal exactly on free planes.
DiffCoords free_plane_key(const GTTableau& r);
bool same_free_plane(const GTTableau& r, const GTTableau& s);
bool on_complementary_axis(const GTTableau& r);

using Path = std::vector<GTTableau>;

/// Run (count, move) stages in order; throws std::logic_error on an invalid step.
Path run_stages(const GTTableau& start, const std::vector<std::pair<int, Move>>& stages);

Path sweep_to_axis(const GTTableau& r);
/// Variant fixing column 1 of H (and V).
Path sweep_to_axis_fixing_h11(const GTTableau& r);
/// Row-clearing of H_{1b}; first stage of sweep_to_v11.
Path sweep_row1(const GTTableau& r);
Path sweep_to_v11(const GTTableau& r);
Path path_to_zero(const GTTableau& r);

GTTableau sphere_tableau(int n, int k, int ell);
YoungDiagram sphere_top_row(int n, int k, int ell);
std::vector<GTTableau> sphere_sector(int n, int k, int ell);

std::string to_text(const GTTableau& r);
GTTableau parse_tableau(const std::string& text);

}  // namespace qsp

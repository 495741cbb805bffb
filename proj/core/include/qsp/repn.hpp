#pragma once

#include <Eigen/SparseCore>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsp/cgc.hpp"
#include "qsp/tableaux.hpp"

namespace qsp {

enum class Space { group, sphere };

std::string to_string(Space s);

/// Truncated orthonormal basis e_{r,s}; blocks share a top row.
class BasisSpec {
 public:
  struct Block {
    YoungDiagram lambda;
    std::vector<GTTableau> rows;  // group: all tableaux of lambda; sphere: the r^{nk} with this top row
    std::vector<GTTableau> cols;
    std::size_t offset = 0;
    std::unordered_map<GTTableau, int, GTTableauHash> row_index, col_index;
    std::size_t size() const { return rows.size() * cols.size(); }
  };

  struct Location {
    int block;
    int row;
    int col;
  };

  static std::shared_ptr<const BasisSpec> group(int ell, int cutoff);
  static std::shared_ptr<const BasisSpec> sphere(int ell, int cutoff);

  int ell() const { return ell_; }
  Space space() const { return space_; }
  int cutoff() const { return cutoff_; }
  std::size_t size() const { return size_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  /// Block for a canonical top row, if inside the truncation.
  std::optional<int> block_of(const YoungDiagram& lambda) const;
  /// Index of e_{r,s} (canonical tableaux), if inside the basis.
  std::optional<std::size_t> index_of(const GTTableau& r, const GTTableau& s) const;
  Location locate(std::size_t idx) const;
  const GTTableau& row_tableau(std::size_t idx) const;
  const GTTableau& col_tableau(std::size_t idx) const;
  /// Canonical r_11 (group) or n+k (sphere).
  int degree(std::size_t idx) const;
  /// Sphere sector (n, k) of the row label of idx.
  std::pair<int, int> sector(std::size_t idx) const;
  bool interior(std::size_t idx, int margin) const { return degree(idx) <= cutoff_ - margin; }
  std::vector<std::size_t> interior_indices(int margin) const;

 private:
  BasisSpec() = default;
  void finalize();

  int ell_ = 1;
  Space space_ = Space::group;
  int cutoff_ = 0;
  std::size_t size_ = 0;
  std::vector<Block> blocks_;
  std::map<std::vector<int>, int> block_lookup_;
  std::vector<std::size_t> block_starts_;
};

struct Triplet {
  std::size_t row;
  std::size_t col;
  Scalar value;
};

/// Column-sorted sparse matrix over a BasisSpec.
class SparseOperator {
 public:
  SparseOperator(std::shared_ptr<const BasisSpec> basis, std::vector<Triplet> triplets,
                 std::vector<bool> boundary = {});

  const BasisSpec& basis() const { return *basis_; }
  std::shared_ptr<const BasisSpec> basis_ptr() const { return basis_; }
  const std::vector<Triplet>& triplets() const { return triplets_; }
  /// Columns with at least one image outside the truncation.
  const std::vector<bool>& boundary() const { return boundary_; }
  std::size_t boundary_count() const;
  std::size_t nnz() const { return triplets_.size(); }

  Eigen::SparseMatrix<double> to_eigen() const;
  SparseOperator transpose() const;
  SparseOperator scaled(const Scalar& c) const;

  void write_csv(std::ostream& os) const;
  std::string header_json(const std::string& name) const;

 private:
  std::shared_ptr<const BasisSpec> basis_;
  std::vector<Triplet> triplets_;
  std::vector<bool> boundary_;
};

SparseOperator build_pi_u(int i, int j, QParam q, std::shared_ptr<const BasisSpec> basis);
/// Restriction of pi(u_{1j}) to the sphere basis.
SparseOperator build_pi_u1_sphere(int j, QParam q, std::shared_ptr<const BasisSpec> basis);
SparseOperator build_pi_z(int i, QParam q, std::shared_ptr<const BasisSpec> basis);

struct ResidualReport {
  Space space = Space::group;
  int ell = 1;
  int cutoff = 0;
  int margin = 1;
  std::size_t interior = 0;
  std::map<std::string, double> residuals;  // gated
  std::map<std::string, double> reported;   // informational
  double max_residual() const;
};

ResidualReport relation_residuals(QParam q, std::shared_ptr<const BasisSpec> basis, int margin);

/// Max Euclidean norm of the interior columns of A.
double max_interior_column_norm(const Eigen::SparseMatrix<double>& A, const BasisSpec& basis, int margin);

}  // namespace qsp

#include "qsp/repn.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace qsp {

std::string to_string(Space s) { return s == Space::group ? "group" : "sphere"; }

std::shared_ptr<const BasisSpec> BasisSpec::group(int ell, int cutoff) {
  if (ell < 1 || cutoff < 0) throw std::invalid_argument("group basis needs l >= 1, N >= 0");
  auto b = std::shared_ptr<BasisSpec>(new BasisSpec());
  b->ell_ = ell;
  b->space_ = Space::group;
  b->cutoff_ = cutoff;
  for (const auto& lam : young_diagrams(ell, cutoff)) {
    Block blk;
    blk.lambda = lam;
    blk.rows = enumerate_tableaux(lam);
    blk.cols = blk.rows;
    b->blocks_.push_back(std::move(blk));
  }
  b->finalize();
  return b;
}

std::shared_ptr<const BasisSpec> BasisSpec::sphere(int ell, int cutoff) {
  if (ell < 1 || cutoff < 0) throw std::invalid_argument("sphere basis needs l >= 1, N >= 0");
  auto b = std::shared_ptr<BasisSpec>(new BasisSpec());
  b->ell_ = ell;
  b->space_ = Space::sphere;
  b->cutoff_ = cutoff;
  std::map<std::vector<int>, Block> by_top;
  for (int n = 0; n <= cutoff; ++n)
    for (int k = 0; n + k <= cutoff; ++k) {
      Block& blk = by_top[sphere_top_row(n, k, ell).lambda];
      if (blk.rows.empty()) {
        blk.lambda = sphere_top_row(n, k, ell);
        blk.cols = sphere_sector(n, k, ell);
      }
      blk.rows.push_back(sphere_tableau(n, k, ell));
    }
  for (auto& [top, blk] : by_top) {
    std::sort(blk.rows.begin(), blk.rows.end());
    b->blocks_.push_back(std::move(blk));
  }
  b->finalize();
  return b;
}

void BasisSpec::finalize() {
  std::size_t off = 0;
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    Block& blk = blocks_[bi];
    blk.offset = off;
    off += blk.size();
    for (std::size_t t = 0; t < blk.rows.size(); ++t) blk.row_index.emplace(blk.rows[t], static_cast<int>(t));
    for (std::size_t t = 0; t < blk.cols.size(); ++t) blk.col_index.emplace(blk.cols[t], static_cast<int>(t));
    if (!block_lookup_.emplace(blk.lambda.lambda, static_cast<int>(bi)).second)
      throw std::logic_error("duplicate block in basis");
    block_starts_.push_back(blk.offset);
  }
  size_ = off;
}

std::optional<int> BasisSpec::block_of(const YoungDiagram& lambda) const {
  auto it = block_lookup_.find(lambda.lambda);
  if (it == block_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> BasisSpec::index_of(const GTTableau& r, const GTTableau& s) const {
  if (r.ell != ell_ || s.ell != ell_ || r.row(1)[0] != s.row(1)[0]) return std::nullopt;
  auto b = block_of(r.top());
  if (!b) return std::nullopt;
  const Block& blk = blocks_[static_cast<std::size_t>(*b)];
  auto ir = blk.row_index.find(r);
  auto is = blk.col_index.find(s);
  if (ir == blk.row_index.end() || is == blk.col_index.end()) return std::nullopt;
  return blk.offset + static_cast<std::size_t>(ir->second) * blk.cols.size() + static_cast<std::size_t>(is->second);
}

BasisSpec::Location BasisSpec::locate(std::size_t idx) const {
  if (idx >= size_) throw std::out_of_range("basis index out of range");
  auto it = std::upper_bound(block_starts_.begin(), block_starts_.end(), idx);
  int b = static_cast<int>(it - block_starts_.begin()) - 1;
  const Block& blk = blocks_[static_cast<std::size_t>(b)];
  std::size_t local = idx - blk.offset;
  return {b, static_cast<int>(local / blk.cols.size()), static_cast<int>(local % blk.cols.size())};
}

const GTTableau& BasisSpec::row_tableau(std::size_t idx) const {
  auto loc = locate(idx);
  return blocks_[static_cast<std::size_t>(loc.block)].rows[static_cast<std::size_t>(loc.row)];
}

const GTTableau& BasisSpec::col_tableau(std::size_t idx) const {
  auto loc = locate(idx);
  return blocks_[static_cast<std::size_t>(loc.block)].cols[static_cast<std::size_t>(loc.col)];
}

int BasisSpec::degree(std::size_t idx) const { return blocks_[static_cast<std::size_t>(locate(idx).block)].lambda[1]; }

std::pair<int, int> BasisSpec::sector(std::size_t idx) const {
  const GTTableau& r = row_tableau(idx);
  return {r(1, 1) - r(2, 1), r(2, 1)};
}

std::vector<std::size_t> BasisSpec::interior_indices(int margin) const {
  std::vector<std::size_t> out;
  for (const auto& blk : blocks_)
    if (blk.lambda[1] <= cutoff_ - margin)
      for (std::size_t t = 0; t < blk.size(); ++t) out.push_back(blk.offset + t);
  return out;
}

SparseOperator::SparseOperator(std::shared_ptr<const BasisSpec> basis, std::vector<Triplet> triplets,
                               std::vector<bool> boundary)
    : basis_(std::move(basis)), triplets_(std::move(triplets)), boundary_(std::move(boundary)) {
  if (boundary_.empty()) boundary_.assign(basis_->size(), false);
  std::sort(triplets_.begin(), triplets_.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
}

std::size_t SparseOperator::boundary_count() const {
  return static_cast<std::size_t>(std::count(boundary_.begin(), boundary_.end(), true));
}

Eigen::SparseMatrix<double> SparseOperator::to_eigen() const {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(triplets_.size());
  for (const auto& x : triplets_)
    t.emplace_back(static_cast<int>(x.row), static_cast<int>(x.col), static_cast<double>(x.value.value()));
  const int n = static_cast<int>(basis_->size());
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseOperator SparseOperator::transpose() const {
  std::vector<Triplet> t;
  t.reserve(triplets_.size());
  for (const auto& x : triplets_) t.push_back({x.col, x.row, x.value});
  return SparseOperator(basis_, std::move(t), boundary_);
}

SparseOperator SparseOperator::scaled(const Scalar& c) const {
  std::vector<Triplet> t = triplets_;
  for (auto& x : t) x.value = x.value * c;
  return SparseOperator(basis_, std::move(t), boundary_);
}

void SparseOperator::write_csv(std::ostream& os) const {
  os << "row,col,sign,log_magnitude\n";
  os << std::setprecision(17);
  for (const auto& x : triplets_)
    os << x.row << ',' << x.col << ',' << x.value.sign() << ',' << static_cast<double>(x.value.log_abs()) << '\n';
}

std::string SparseOperator::header_json(const std::string& name) const {
  nlohmann::ordered_json j;
  j["schema"] = "qsp.sparse_operator/1";
  j["name"] = name;
  j["space"] = to_string(basis_->space());
  j["ell"] = basis_->ell();
  j["cutoff"] = basis_->cutoff();
  j["dimension"] = basis_->size();
  j["nnz"] = triplets_.size();
  j["boundary_columns"] = boundary_count();
  j["csv_columns"] = {"row", "col", "sign", "log_magnitude"};
  return j.dump(2);
}

namespace {

struct Image {
  int m1;          // top-row entry that gained the box
  int block;       // target block, -1 when outside the truncation
  int local;       // row or column index inside the target block, -1 when block is -1
  Scalar coef;
};

enum class Side { row, col };

std::vector<Image> images(const BasisSpec& basis, const GTTableau& t, int len, QParam q, Side side,
                          const Scalar& dim_self) {
  std::vector<Image> out;
  for (const Move& M : moves_of_length(len, t.ell)) {
    auto raw = apply_move_raw(M, t);
    if (!raw) continue;
    GTTableau c = canonical(*raw);
    Image im{M[1], -1, -1, Scalar::zero()};
    CGValue cg = cg_coefficient(len, t, M, q);
    im.coef = cg.value();
    if (side == Side::row) {
      Scalar dmu = weyl_q_dimension(c.top(), q);
      real dpsi = static_cast<real>(psi_twice(t) - psi_twice(*raw)) / 2;
      im.coef = im.coef * (dim_self / dmu).sqrt_abs() * q_pow(dpsi, q);
    }
    if (auto b = basis.block_of(c.top())) {
      const auto& blk = basis.blocks()[static_cast<std::size_t>(*b)];
      const auto& idx = side == Side::row ? blk.row_index : blk.col_index;
      auto it = idx.find(c);
      if (it == idx.end()) {
        if (side == Side::row && basis.space() == Space::sphere && im.coef.is_zero()) continue;
        throw std::logic_error("move image " + to_text(c) + " is not a basis label of its block");
      }
      im.block = *b;
      im.local = it->second;
    }
    out.push_back(im);
  }
  return out;
}

SparseOperator assemble(int i, int j, QParam q, std::shared_ptr<const BasisSpec> basis) {
  const BasisSpec& B = *basis;
  std::vector<Triplet> trip;
  std::vector<bool> boundary(B.size(), false);
  for (const auto& blk : B.blocks()) {
    Scalar dl = weyl_q_dimension(blk.lambda, q);
    std::vector<std::vector<Image>> rim, cim;
    for (const auto& r : blk.rows) rim.push_back(images(B, r, i, q, Side::row, dl));
    for (const auto& s : blk.cols) cim.push_back(images(B, s, j, q, Side::col, dl));
    for (std::size_t ir = 0; ir < blk.rows.size(); ++ir)
      for (std::size_t is = 0; is < blk.cols.size(); ++is) {
        std::size_t col = blk.offset + ir * blk.cols.size() + is;
        for (const Image& a : rim[ir])
          for (const Image& b : cim[is]) {
            if (a.m1 != b.m1) continue;
            if (a.block < 0 || b.block < 0) {
              boundary[col] = true;
              continue;
            }
            if (a.block != b.block) throw std::logic_error("row and column images disagree on the target block");
            Scalar v = a.coef * b.coef;
            if (v.is_zero()) continue;
            const auto& tb = B.blocks()[static_cast<std::size_t>(a.block)];
            std::size_t row = tb.offset + static_cast<std::size_t>(a.local) * tb.cols.size() +
                              static_cast<std::size_t>(b.local);
            trip.push_back({row, col, v});
          }
      }
  }
  return SparseOperator(std::move(basis), std::move(trip), std::move(boundary));
}

}  // namespace

SparseOperator build_pi_u(int i, int j, QParam q, std::shared_ptr<const BasisSpec> basis) {
  if (basis->space() != Space::group) throw std::invalid_argument("build_pi_u needs a group basis");
  const int n = basis->ell() + 1;
  if (i < 1 || i > n || j < 1 || j > n) throw std::invalid_argument("build_pi_u: indices out of range");
  return assemble(i, j, q, std::move(basis));
}

SparseOperator build_pi_u1_sphere(int j, QParam q, std::shared_ptr<const BasisSpec> basis) {
  if (basis->space() != Space::sphere) throw std::invalid_argument("sphere restriction needs a sphere basis");
  if (j < 1 || j > basis->ell() + 1) throw std::invalid_argument("index out of range");
  return assemble(1, j, q, std::move(basis));
}

SparseOperator build_pi_z(int i, QParam q, std::shared_ptr<const BasisSpec> basis) {
  if (basis->space() != Space::sphere) throw std::invalid_argument("build_pi_z needs a sphere basis");
  return build_pi_u1_sphere(i, q, std::move(basis)).transpose().scaled(q_pow(-(i - 1), q));
}

double ResidualReport::max_residual() const {
  double m = 0;
  for (const auto& [k, v] : residuals) m = std::max(m, v);
  return m;
}

double max_interior_column_norm(const Eigen::SparseMatrix<double>& A, const BasisSpec& basis, int margin) {
  double worst = 0;
  for (std::size_t c : basis.interior_indices(margin)) {
    double s = 0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, static_cast<int>(c)); it; ++it) s += it.value() * it.value();
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

ResidualReport relation_residuals(QParam q, std::shared_ptr<const BasisSpec> basis, int margin) {
  if (margin < 1) throw std::invalid_argument("margin must be >= 1");
  const BasisSpec& B = *basis;
  ResidualReport rep;
  rep.space = B.space();
  rep.ell = B.ell();
  rep.cutoff = B.cutoff();
  rep.margin = margin;
  rep.interior = B.interior_indices(margin).size();
  if (rep.interior == 0)
    throw std::invalid_argument("no interior vectors at cutoff " + std::to_string(B.cutoff()) + " with margin " +
                                std::to_string(margin) + "; raise N");
  using SM = Eigen::SparseMatrix<double>;
  const int n = B.ell() + 1;
  const int dim = static_cast<int>(B.size());
  SM I(dim, dim);
  I.setIdentity();
  auto keep_max = [&](std::map<std::string, double>& into, const std::string& key, const SM& X) {
    double v = max_interior_column_norm(X, B, margin);
    auto [it, fresh] = into.emplace(key, v);
    if (!fresh) it->second = std::max(it->second, v);
  };
  const double qq = static_cast<double>(q.value());
  if (B.space() == Space::group) {
    std::vector<std::vector<SM>> U(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) U[static_cast<std::size_t>(i - 1)].push_back(build_pi_u(i, j, q, basis).to_eigen());
    auto u = [&](int i, int j) -> const SM& { return U[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]; };
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        SM a(dim, dim), b(dim, dim);
        for (int k = 1; k <= n; ++k) {
          a += SM(u(k, i).transpose()) * u(k, j);
          b += u(i, k) * SM(u(j, k).transpose());
        }
        if (i == j) {
          a -= I;
          b -= I;
        }
        keep_max(rep.residuals, "u*u", a);
        keep_max(rep.residuals, "uu*", b);
      }
    return rep;
  }
  std::vector<SM> Z, Zs;
  for (int i = 1; i <= n; ++i) {
    Z.push_back(build_pi_z(i, q, basis).to_eigen());
    Zs.push_back(SM(Z.back().transpose()));
  }
  auto z = [&](int i) -> const SM& { return Z[static_cast<std::size_t>(i - 1)]; };
  auto zs = [&](int i) -> const SM& { return Zs[static_cast<std::size_t>(i - 1)]; };
  rep.residuals["zz"] = 0;
  rep.residuals["zz*"] = 0;
  rep.reported["zz*_displayed_order"] = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (j < i) keep_max(rep.residuals, "zz", SM(z(i) * z(j) - qq * (z(j) * z(i))));
      if (i != j) {
        keep_max(rep.residuals, "zz*", SM(zs(j) * z(i) - qq * (z(i) * zs(j))));
        keep_max(rep.reported, "zz*_displayed_order", SM(z(i) * zs(j) - qq * (zs(j) * z(i))));
      }
    }
  SM total(dim, dim);
  for (int i = 1; i <= n; ++i) {
    SM d = z(i) * zs(i) - zs(i) * z(i);
    for (int k = i + 1; k <= n; ++k) d += (1 - qq * qq) * SM(z(k) * zs(k));
    keep_max(rep.residuals, "normal", d);
    total += z(i) * zs(i);
  }
  keep_max(rep.residuals, "sum", SM(total - I));
  return rep;
}

}  // namespace qsp

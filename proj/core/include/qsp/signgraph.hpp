#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qsp/dirac.hpp"

namespace qsp {

enum class EdgeRule {
  threshold,   // move-adjacent pairs with |d(r) - d(s)| < c
  certified,   // move-adjacent pairs whose move has exponent 0
  exhaustive,  // all pairs with |d(r) - d(s)| < c (rank 1 only)
};

std::string to_string(EdgeRule r);

struct SignGraph {
  Domain domain;
  double c = 0;
  EdgeRule rule = EdgeRule::threshold;
  std::vector<GTTableau> vertices;
  std::vector<int> label;  // +1 / -1, sign(0) = +1
  std::vector<std::pair<int, int>> edges;

  int positive() const;
  int negative() const;
};

/// Elementary move adjacency of the domain: (vertex, move, target vertex, exponent).
struct MoveEdge {
  int from;
  Move move;
  int to;
  int exponent;
};
std::vector<MoveEdge> move_edges(const Domain& dom, const std::vector<GTTableau>& vertices);

SignGraph build_sign_graph(const DiracSpec& D, double c, EdgeRule rule);

struct Certificate {
  GTTableau from;
  Move move;
  GTTableau to;
  double delta = 0;
  bool holds = false;
};

struct CertificateReport {
  double c = 0;
  std::vector<Certificate> certificates;
  std::vector<Certificate> violations;
  double max_delta = 0;
};

/// Edges from N_{j0} and from M_{ik} with exponent 0 must satisfy |delta d| < c.
CertificateReport certify_edges(const DiracSpec& D, double c);

/// 1.5 times the largest certified |delta d|.
double default_threshold(const DiracSpec& D);

/// Maximum number of vertex-disjoint paths from V+ to V-.
int disjoint_path_flow(const SignGraph& G);

struct FlowTrail {
  std::vector<int> cutoffs;
  std::vector<int> flows;
  std::vector<int> positive, negative;
  /// Unchanged over the last two steps.
  bool saturates() const;
  /// Smallest step increase.
  int min_increase() const;
};

FlowTrail flow_trail(const std::function<DiracSpec(Domain)>& make_D, int ell, Space space,
                     const std::vector<int>& schedule, double c, EdgeRule rule);

struct WitnessEntry {
  GTTableau r;
  GTTableau target;
  double direct = 0;  // -C_q(1, r, M_{l1}(r))^2 kappa(r, M_{l1}(r))
  double matrix = 0;  // <e_{m,m}, [P, pi(u_11)] e_{r,r}>
};

struct WitnessReport {
  int ell = 2;
  int cutoff = 0;
  std::vector<WitnessEntry> entries;
  double min_abs = 0;
  double max_mismatch = 0;
};

/// P projects onto the free plane through the zero tableau; throws for l = 1.
WitnessReport noncompact_witness(QParam q, int ell, int cutoff);

}  // namespace qsp

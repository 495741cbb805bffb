#include "qsp/signgraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace qsp {

std::string to_string(EdgeRule r) {
  switch (r) {
    case EdgeRule::threshold: return "threshold";
    case EdgeRule::certified: return "certified";
    default: return "exhaustive";
  }
}

int SignGraph::positive() const { return static_cast<int>(std::count(label.begin(), label.end(), 1)); }
int SignGraph::negative() const { return static_cast<int>(std::count(label.begin(), label.end(), -1)); }

std::vector<MoveEdge> move_edges(const Domain& dom, const std::vector<GTTableau>& vertices) {
  std::unordered_map<GTTableau, int, GTTableauHash> index;
  for (std::size_t v = 0; v < vertices.size(); ++v) index.emplace(vertices[v], static_cast<int>(v));
  std::vector<MoveEdge> out;
  const int max_len = dom.space == Space::group ? dom.ell + 1 : 1;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    for (int i = 1; i <= max_len; ++i)
      for (const Move& M : moves_of_length(i, dom.ell)) {
        auto t = apply_move(M, vertices[v]);
        if (!t) continue;
        auto it = index.find(*t);
        if (it == index.end()) continue;
        out.push_back({static_cast<int>(v), M, it->second, cg_exponent(i, vertices[v], M)});
      }
  return out;
}

SignGraph build_sign_graph(const DiracSpec& D, double c, EdgeRule rule) {
  if (D.is_matrix()) throw std::invalid_argument("sign graph needs a scalar operator");
  SignGraph G;
  G.domain = D.domain;
  G.c = c;
  G.rule = rule;
  G.vertices = domain_vertices(D.domain);
  std::vector<double> d;
  for (const auto& r : G.vertices) {
    d.push_back(D.scalar(r));
    G.label.push_back(sign_of(d.back()));
  }
  std::vector<std::pair<int, int>> e;
  if (rule == EdgeRule::exhaustive) {
    if (D.domain.ell != 1) throw std::invalid_argument("exhaustive edge mode is for rank 1 only");
    for (std::size_t a = 0; a < G.vertices.size(); ++a)
      for (std::size_t b = a + 1; b < G.vertices.size(); ++b)
        if (std::fabs(d[a] - d[b]) < c) e.emplace_back(static_cast<int>(a), static_cast<int>(b));
  } else {
    for (const auto& me : move_edges(D.domain, G.vertices)) {
      if (me.from == me.to) continue;
      bool keep = rule == EdgeRule::certified
                      ? me.exponent == 0
                      : std::fabs(d[static_cast<std::size_t>(me.from)] - d[static_cast<std::size_t>(me.to)]) < c;
      if (keep) e.emplace_back(std::min(me.from, me.to), std::max(me.from, me.to));
    }
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  G.edges = std::move(e);
  return G;
}

namespace {

bool certified_move(const Move& M, int ell, Space space, int exponent) {
  if (space == Space::sphere) return exponent == 0;
  for (int j = 1; j <= ell + 1; ++j)
    if (M == Move::N(j, 0, ell)) return true;
  bool is_m = M.size() >= 1;
  for (int t = 2; t <= M.size() && is_m; ++t) is_m = M[t] == M[t - 1] - 1;
  return is_m && exponent == 0;
}

}  // namespace

CertificateReport certify_edges(const DiracSpec& D, double c) {
  if (D.is_matrix()) throw std::invalid_argument("certification needs a scalar operator");
  CertificateReport rep;
  rep.c = c;
  auto verts = domain_vertices(D.domain);
  for (const auto& me : move_edges(D.domain, verts)) {
    if (!certified_move(me.move, D.domain.ell, D.domain.space, me.exponent)) continue;
    Certificate cert;
    cert.from = verts[static_cast<std::size_t>(me.from)];
    cert.to = verts[static_cast<std::size_t>(me.to)];
    cert.move = me.move;
    cert.delta = std::fabs(D.scalar(cert.from) - D.scalar(cert.to));
    cert.holds = cert.delta < c;
    rep.max_delta = std::max(rep.max_delta, cert.delta);
    if (!cert.holds) rep.violations.push_back(cert);
    rep.certificates.push_back(std::move(cert));
  }
  return rep;
}

double default_threshold(const DiracSpec& D) {
  double m = certify_edges(D, std::numeric_limits<double>::infinity()).max_delta;
  return 1.5 * (m > 0 ? m : 1.0);
}

namespace {

/// Dinic on unit capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : adj_(static_cast<std::size_t>(n)), level_(static_cast<std::size_t>(n)), it_(static_cast<std::size_t>(n)) {}

  void add(int u, int v, int cap) {
    adj_[static_cast<std::size_t>(u)].push_back(static_cast<int>(to_.size()));
    to_.push_back(v);
    cap_.push_back(cap);
    adj_[static_cast<std::size_t>(v)].push_back(static_cast<int>(to_.size()));
    to_.push_back(u);
    cap_.push_back(0);
  }

  int run(int s, int t) {
    int flow = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (int f = dfs(s, t, std::numeric_limits<int>::max())) flow += f;
    }
    return flow;
  }

 private:
  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e : adj_[static_cast<std::size_t>(u)]) {
        int v = to_[static_cast<std::size_t>(e)];
        if (cap_[static_cast<std::size_t>(e)] > 0 && level_[static_cast<std::size_t>(v)] < 0) {
          level_[static_cast<std::size_t>(v)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(v);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  int dfs(int u, int t, int f) {
    if (u == t) return f;
    auto& i = it_[static_cast<std::size_t>(u)];
    const auto& a = adj_[static_cast<std::size_t>(u)];
    for (; i < static_cast<int>(a.size()); ++i) {
      int e = a[static_cast<std::size_t>(i)];
      int v = to_[static_cast<std::size_t>(e)];
      if (cap_[static_cast<std::size_t>(e)] <= 0 || level_[static_cast<std::size_t>(v)] != level_[static_cast<std::size_t>(u)] + 1) continue;
      if (int g = dfs(v, t, std::min(f, cap_[static_cast<std::size_t>(e)]))) {
        cap_[static_cast<std::size_t>(e)] -= g;
        cap_[static_cast<std::size_t>(e ^ 1)] += g;
        return g;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> to_, cap_;
  std::vector<int> level_, it_;
};

}  // namespace

int disjoint_path_flow(const SignGraph& G) {
  const int n = static_cast<int>(G.vertices.size());
  if (G.negative() == 0 || G.positive() == 0) return 0;
  // vertex v -> in 2v, out 2v+1
  const int s = 2 * n, t = 2 * n + 1;
  MaxFlow mf(2 * n + 2);
  for (int v = 0; v < n; ++v) {
    mf.add(2 * v, 2 * v + 1, 1);
    if (G.label[static_cast<std::size_t>(v)] > 0) mf.add(s, 2 * v, 1);
    else mf.add(2 * v + 1, t, 1);
  }
  for (const auto& [a, b] : G.edges) {
    mf.add(2 * a + 1, 2 * b, 1);
    mf.add(2 * b + 1, 2 * a, 1);
  }
  return mf.run(s, t);
}

bool FlowTrail::saturates() const {
  if (flows.size() < 3) return false;
  const std::size_t n = flows.size();
  return flows[n - 1] == flows[n - 2] && flows[n - 2] == flows[n - 3];
}

int FlowTrail::min_increase() const {
  int m = std::numeric_limits<int>::max();
  for (std::size_t i = 1; i < flows.size(); ++i) m = std::min(m, flows[i] - flows[i - 1]);
  return flows.size() < 2 ? 0 : m;
}

FlowTrail flow_trail(const std::function<DiracSpec(Domain)>& make_D, int ell, Space space,
                     const std::vector<int>& schedule, double c, EdgeRule rule) {
  FlowTrail tr;
  for (int N : schedule) {
    SignGraph G = build_sign_graph(make_D(Domain{ell, space, N}), c, rule);
    tr.cutoffs.push_back(N);
    tr.flows.push_back(disjoint_path_flow(G));
    tr.positive.push_back(G.positive());
    tr.negative.push_back(G.negative());
  }
  return tr;
}

WitnessReport noncompact_witness(QParam q, int ell, int cutoff) {
  if (ell < 2) throw std::invalid_argument("the witness construction needs l >= 2");
  WitnessReport rep;
  rep.ell = ell;
  rep.cutoff = cutoff;
  const GTTableau zero = GTTableau::zero(ell);
  const Move M = Move::M(ell, 1);
  auto basis = BasisSpec::group(ell, cutoff);
  SparseOperator U = build_pi_u(1, 1, q, basis);
  std::unordered_map<std::size_t, std::unordered_map<std::size_t, double>> entries;
  for (const auto& t : U.triplets()) entries[t.col][t.row] = static_cast<double>(t.value.value());
  auto in_plane = [&](const GTTableau& r) { return same_free_plane(r, zero); };
  rep.min_abs = std::numeric_limits<double>::infinity();
  for (const auto& r : enumerate_truncation(ell, cutoff)) {
    if (!in_plane(r)) continue;
    if (r(1, ell) != 0 || r(2, ell) != 0 || r(1, ell + 1) != 0) continue;
    auto raw = apply_move_raw(M, r);
    if (!raw) continue;
    GTTableau m = canonical(*raw);
    auto col = basis->index_of(r, r);
    auto row = basis->index_of(m, m);
    if (!col || !row) continue;
    WitnessEntry w{r, m, 0, 0};
    CGValue cg = cg_coefficient(1, r, M, q);
    Scalar k = kappa(r, *raw, q);
    w.direct = -static_cast<double>((cg.magnitude * cg.magnitude * k).value());
    double u = 0;
    if (auto cit = entries.find(*col); cit != entries.end())
      if (auto rit = cit->second.find(*row); rit != cit->second.end()) u = rit->second;
    double p_row = in_plane(m) ? 1 : 0, p_col = 1;
    w.matrix = p_row * u - u * p_col;
    rep.min_abs = std::min(rep.min_abs, std::fabs(w.direct));
    rep.max_mismatch = std::max(rep.max_mismatch, std::fabs(w.direct - w.matrix));
    rep.entries.push_back(std::move(w));
  }
  if (rep.entries.empty()) rep.min_abs = 0;
  return rep;
}

}  // namespace qsp

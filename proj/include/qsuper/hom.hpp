#pragma once

#include "qsuper/lie.hpp"

#include <map>

namespace qsuper {

// Module homomorphisms by spinning: a map out of M is fixed by its values on
// a generating set, so the unknowns are only those values.  Carriers are split
// into (weight, parity) blocks when both modules carry weight bases, which
// keeps every linear solve block-sized.

namespace detail {

inline std::string block_key(const LieModule& m, std::size_t k, int parity_shift, bool use_weights) {
  std::string key = std::to_string((m.carrier.parity(k) + parity_shift) & 1);
  if (use_weights)
    for (const auto& x : m.weights[k]) key += "|" + x.str();
  return key;
}

struct Blocks {
  std::vector<std::size_t> block_of;
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::string> keys;
  std::map<std::string, std::size_t> index;
};

inline Blocks make_blocks(const LieModule& m, int parity_shift, bool use_weights) {
  Blocks b;
  for (std::size_t k = 0; k < m.dim(); ++k) {
    std::string key = block_key(m, k, parity_shift, use_weights);
    auto [it, fresh] = b.index.emplace(key, b.members.size());
    if (fresh) {
      b.members.emplace_back();
      b.keys.push_back(key);
    }
    b.block_of.push_back(it->second);
    b.members[it->second].push_back(k);
  }
  return b;
}

/// Echelon form that remembers each row as a combination of the inserted vectors.
class TrackedEchelon {
 public:
  explicit TrackedEchelon(std::size_t n) : n_(n) {}
  std::size_t count() const { return count_; }
  bool full() const { return rows_.size() == n_; }

  /// Reduces v; on return v is the residual and comb the combination removed.
  void reduce(Vec& v, Vec& comb) const {
    comb.assign(count_, Scalar());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Scalar f = v[pivots_[k]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < n_; ++c)
        if (!rows_[k][c].is_zero()) v[c] -= f * rows_[k][c];
      for (std::size_t c = 0; c < combs_[k].size(); ++c)
        if (!combs_[k][c].is_zero()) comb[c] += f * combs_[k][c];
    }
  }
  /// Inserts v (already known to be independent after reduction).
  void insert(Vec residual, Vec comb) {
    std::size_t p = 0;
    while (residual[p].is_zero()) ++p;
    Scalar inv = residual[p].inverse();
    for (auto& x : residual) x *= inv;
    // residual = v - comb·earlier, so v's own coefficient is 1
    for (auto& x : comb) x = -x * inv;
    comb.resize(count_ + 1);
    comb[count_] = inv;
    for (auto& c : combs_) c.resize(count_ + 1);
    ++count_;
    rows_.push_back(std::move(residual));
    combs_.push_back(std::move(comb));
    pivots_.push_back(p);
  }

 private:
  std::size_t n_;
  std::size_t count_ = 0;
  std::vector<Vec> rows_, combs_;
  std::vector<std::size_t> pivots_;
};

inline Vec restrict_block(const Vec& v, const std::vector<std::size_t>& members) {
  Vec out(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) out[k] = v[members[k]];
  return out;
}

}  // namespace detail

/// Basis of the parity-p intertwiners T : M -> N, i.e. T ρ_M(x) = (-1)^{p|x|} ρ_N(x) T.
inline std::vector<Matrix> hom_space(const LieModule& m, const LieModule& n, int p) {
  if (m.action.size() != n.action.size()) throw std::invalid_argument("hom_space: modules over different algebras");
  bool use_weights = !m.weights.empty() && !n.weights.empty();
  detail::Blocks bm = detail::make_blocks(m, 0, use_weights);
  detail::Blocks bn = detail::make_blocks(n, p, use_weights);
  std::vector<std::size_t> gens;
  for (std::size_t g = 0; g < m.action.size(); ++g)
    if (!m.action[g].is_zero() || !n.action[g].is_zero()) gens.push_back(g);

  auto target_block = [&](std::size_t b) -> std::optional<std::size_t> {
    auto it = bn.index.find(bm.keys[b]);
    if (it == bn.index.end()) return std::nullopt;
    return it->second;
  };
  auto block_of_vector = [&](const Vec& v) -> std::optional<std::size_t> {
    std::optional<std::size_t> b;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k].is_zero()) continue;
      if (b && *b != bm.block_of[k]) throw std::logic_error("hom_space: action does not respect the weight blocks");
      b = bm.block_of[k];
    }
    return b;
  };

  // Pass 1: spin M from greedily chosen seeds, cheapest target blocks first.
  struct Node {
    Vec v;
    std::size_t block;
    std::optional<std::size_t> parent, gen;
    std::size_t unknown_offset = 0;  // seeds only
  };
  std::vector<Node> nodes;
  std::vector<detail::TrackedEchelon> ech;
  std::vector<std::vector<std::size_t>> block_nodes(bm.members.size());
  for (const auto& mem : bm.members) ech.emplace_back(mem.size());
  struct Event {
    std::size_t node, gen;
    std::vector<std::pair<std::size_t, Scalar>> comb;  // node index, coefficient
    bool zero = false;
  };
  std::vector<Event> events;
  std::size_t unknowns = 0;

  auto try_add = [&](Vec v, std::size_t block, std::optional<std::size_t> parent, std::optional<std::size_t> gen,
                     Vec& comb) -> bool {
    Vec local = detail::restrict_block(v, bm.members[block]);
    ech[block].reduce(local, comb);
    if (is_zero_vec(local)) return false;
    ech[block].insert(std::move(local), comb);
    block_nodes[block].push_back(nodes.size());
    nodes.push_back(Node{std::move(v), block, parent, gen, 0});
    return true;
  };

  std::vector<std::size_t> order(bm.members.size());
  for (std::size_t b = 0; b < order.size(); ++b) order[b] = b;
  auto cost = [&](std::size_t b) {
    auto t = target_block(b);
    return t ? bn.members[*t].size() : 0;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return cost(x) < cost(y); });

  for (std::size_t b : order)
    for (std::size_t k : bm.members[b]) {
      if (ech[b].full()) break;
      Vec comb;
      if (!try_add(unit_vec(m.dim(), k), b, std::nullopt, std::nullopt, comb)) continue;
      nodes.back().unknown_offset = unknowns;
      unknowns += cost(b);
      for (std::size_t q = nodes.size() - 1; q < nodes.size(); ++q)
        for (std::size_t g : gens) {
          Vec w = m.action[g].apply(nodes[q].v);
          auto wb = block_of_vector(w);
          if (!wb) {
            events.push_back(Event{q, g, {}, true});
            continue;
          }
          if (try_add(w, *wb, q, g, comb)) continue;
          Event e{q, g, {}, false};
          const auto& ids = block_nodes[*wb];
          for (std::size_t c = 0; c < comb.size(); ++c)
            if (!comb[c].is_zero()) e.comb.emplace_back(ids[c], comb[c]);
          events.push_back(std::move(e));
        }
    }
  if (unknowns == 0) return {};

  // Pass 2: images T(node) as (target block rows) x unknowns matrices.
  std::vector<SparseMatrix> nt;
  for (const auto& a : n.action) nt.push_back(a.transpose());
  std::vector<Matrix> images(nodes.size());
  std::vector<std::optional<std::size_t>> image_block(nodes.size());
  auto apply_gen = [&](std::size_t g, const Matrix& img, std::size_t from, std::size_t to) {
    const auto& src = bn.members[from];
    const auto& dst = bn.members[to];
    std::map<std::size_t, std::size_t> local;
    for (std::size_t k = 0; k < dst.size(); ++k) local[dst[k]] = k;
    Matrix out(dst.size(), img.cols());
    const SparseMatrix& gt = nt[g];
    for (std::size_t s = 0; s < src.size(); ++s)
      for (const auto& [row, c] : gt.row(src[s])) {
        auto it = local.find(row);
        if (it == local.end()) {
          // N sends this block outside the expected target: only fine if the image row is zero
          for (std::size_t u = 0; u < img.cols(); ++u)
            if (!img(s, u).is_zero()) throw std::logic_error("hom_space: weight shifts of M and N disagree");
          continue;
        }
        for (std::size_t u = 0; u < img.cols(); ++u)
          if (!img(s, u).is_zero()) out(it->second, u) += c * img(s, u);
      }
    return out;
  };
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    auto tb = target_block(nodes[j].block);
    image_block[j] = tb;
    if (!tb) continue;
    if (!nodes[j].parent) {
      Matrix sel(bn.members[*tb].size(), unknowns);
      for (std::size_t k = 0; k < sel.rows(); ++k) sel(k, nodes[j].unknown_offset + k) = Scalar(1);
      images[j] = std::move(sel);
      continue;
    }
    std::size_t par = *nodes[j].parent, g = *nodes[j].gen;
    if (!image_block[par]) {
      images[j] = Matrix(bn.members[*tb].size(), unknowns);
      continue;
    }
    Matrix img = apply_gen(g, images[par], *image_block[par], *tb);
    if ((p & m.parities[g]) != 0) img = Scalar(-1) * img;
    images[j] = std::move(img);
  }

  // Constraints from the dependent spin events, plus zero images where N has no target block.
  RowEchelon cons(unknowns);
  auto add_rows = [&](const Matrix& z) {
    for (std::size_t r = 0; r < z.rows(); ++r) {
      Vec row(unknowns);
      bool any = false;
      for (std::size_t u = 0; u < unknowns; ++u)
        if (!z(r, u).is_zero()) {
          row[u] = z(r, u);
          any = true;
        }
      if (any) cons.add(std::move(row));
    }
  };
  auto vanish = [&](std::size_t g, std::size_t j) {
    std::map<std::size_t, bool> reach;
    for (std::size_t s : bn.members[*image_block[j]])
      for (const auto& [row, c] : nt[g].row(s)) reach[bn.block_of[row]] = true;
    for (const auto& [blk, unused] : reach) add_rows(apply_gen(g, images[j], *image_block[j], blk));
  };
  for (const auto& e : events) {
    if (cons.full()) break;
    std::size_t j = e.node;
    auto src = image_block[j];
    // sign · g·T(m_j) must equal Σ c T(m_k)
    if (e.zero) {
      if (src) vanish(e.gen, j);
      continue;
    }
    auto dst = image_block[e.comb.front().first];
    if (!dst) {
      if (src) vanish(e.gen, j);
      continue;
    }
    Matrix lhs(bn.members[*dst].size(), unknowns);
    if (src) {
      lhs = apply_gen(e.gen, images[j], *src, *dst);
      if ((p & m.parities[e.gen]) != 0) lhs = Scalar(-1) * lhs;
    }
    for (const auto& [k, c] : e.comb) lhs = lhs - c * images[k];
    add_rows(lhs);
  }

  std::vector<Matrix> out;
  for (const auto& u : cons.nullspace()) {
    Matrix t(n.dim(), m.dim());
    for (std::size_t b = 0; b < bm.members.size(); ++b) {
      auto tb = target_block(b);
      if (!tb) continue;
      const auto& ids = block_nodes[b];
      const auto& mem = bm.members[b];
      Matrix basis(mem.size(), ids.size()), vals(bn.members[*tb].size(), ids.size());
      for (std::size_t c = 0; c < ids.size(); ++c) {
        for (std::size_t r = 0; r < mem.size(); ++r) basis(r, c) = nodes[ids[c]].v[mem[r]];
        Vec img = images[ids[c]] * u;
        for (std::size_t r = 0; r < img.size(); ++r) vals(r, c) = img[r];
      }
      Matrix local = vals * inverse(basis);
      for (std::size_t r = 0; r < local.rows(); ++r)
        for (std::size_t c = 0; c < local.cols(); ++c) t(bn.members[*tb][r], mem[c]) = local(r, c);
    }
    out.push_back(std::move(t));
  }
  return out;
}

/// Number of (x, T) pairs violating T ρ_M(x) = (-1)^{p|x|} ρ_N(x) T.
inline std::size_t intertwiner_failures(const LieModule& m, const LieModule& n, const Matrix& t, int p) {
  SparseMatrix ts = SparseMatrix::from_dense(t);
  std::size_t bad = 0;
  for (std::size_t g = 0; g < m.action.size(); ++g) {
    SparseMatrix lhs = ts * m.action[g], rhs = n.action[g] * ts;
    if ((p & m.parities[g]) != 0) rhs = Scalar(-1) * rhs;
    if (!(lhs == rhs)) ++bad;
  }
  return bad;
}

struct IsoResult {
  bool isomorphic = false;
  int parity = 0;
  Matrix witness;
};

/// Isomorphism test.  Exact whenever M is irreducible (then every nonzero
/// homogeneous intertwiner is invertible); otherwise a fixed pseudo-random
/// combination of the Hom basis is tried per parity.
inline IsoResult is_isomorphic(const LieModule& m, const LieModule& n) {
  IsoResult out;
  if (m.dim() != n.dim() || m.action.size() != n.action.size()) return out;
  for (int p : {0, 1}) {
    auto homs = hom_space(m, n, p);
    if (homs.empty()) continue;
    Matrix t = homs[0];
    for (std::size_t k = 1; k < homs.size(); ++k)
      t = t + Scalar(static_cast<std::int64_t>(3 * k + 1)) * homs[k];
    if (rank(t) == m.dim()) {
      out.isomorphic = true;
      out.parity = p;
      out.witness = std::move(t);
      return out;
    }
  }
  return out;
}

}  // namespace qsuper

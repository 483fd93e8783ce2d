#pragma once

// Highest-weight modules over q(n) ⊗ A: truncated Verma modules built by PBW
// straightening, their simple quotients, singular vectors and an exact
// irreducibility test for finite-dimensional weight modules.

#include "qsuper/cartanmod.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace qsuper {

using Coord = std::vector<std::int64_t>;  // simple-root coordinates

/// Total order on Q⁺ coordinates: by height, then lexicographically.
struct GradedLex {
  bool operator()(const Coord& a, const Coord& b) const {
    auto ha = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    auto hb = std::accumulate(b.begin(), b.end(), std::int64_t{0});
    if (ha != hb) return ha < hb;
    return a < b;
  }
};

inline std::int64_t coord_height(const Coord& c) { return std::accumulate(c.begin(), c.end(), std::int64_t{0}); }

inline std::string coord_str(const Coord& c) {
  std::string s = "(";
  for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
  return s + ")";
}

/// Root data of q(n) ⊗ A indexed by its basis.
struct HwContext {
  QueerAlgebra q;
  MapSuper map;
  CartanContext cartan;
  std::vector<Coord> root;                   // simple-root coordinates of the root of each basis element
  std::vector<Vec> toral;                    // values of that root on h_1..h_n
  std::vector<std::size_t> lowering, raising;
  std::vector<std::optional<std::size_t>> cartan_slot;  // index in 𝔥 ⊗ A

  std::size_t n() const { return q.n(); }
  std::size_t max_root_height() const { return q.n(); }
  std::size_t default_depth() const { return q.n() * (q.n() + 1); }
  const LieSuper& lie() const { return map.lie; }
  bool is_lowering(std::size_t b) const { return coord_height(root[b]) < 0; }
  bool is_raising(std::size_t b) const { return coord_height(root[b]) > 0; }
};

inline HwContext hw_context(const QueerAlgebra& q, const CoeffAlgebra& a) {
  HwContext c{q, tensor_lie(q.lie(), a), cartan_context(q, a), {}, {}, {}, {}, {}};
  auto cart = q.cartan_indices();
  auto weights = toral_weights(c.map.lie);
  for (std::size_t b = 0; b < c.map.lie.dim(); ++b) {
    std::size_t x = c.map.q_index(b), k = c.map.a_index(b);
    auto sc = q.simple_root_coordinates(q.basis_weight(x));
    Coord co;
    for (const auto& s : *sc) co.push_back(s.base_coefficient().re.to_int64());
    c.root.push_back(co);
    c.toral.push_back(weights.at(b));
    auto pos = std::find(cart.begin(), cart.end(), x);
    if (pos != cart.end())
      c.cartan_slot.emplace_back(static_cast<std::size_t>(pos - cart.begin()) * a.dim() + k);
    else
      c.cartan_slot.emplace_back();
    if (c.is_lowering(b)) c.lowering.push_back(b);
    if (c.is_raising(b)) c.raising.push_back(b);
  }
  return c;
}

/// A PBW monomial: lowering basis indices in increasing order, odd ones without repetition.
using Mono = std::vector<std::size_t>;

/// All PBW monomials in the lowering generators of height at most `depth`.
inline std::vector<Mono> pbw_monomials(const HwContext& c, std::size_t depth) {
  std::vector<Mono> out;
  Mono cur;
  auto rec = [&](auto&& self, std::size_t from, std::int64_t left) -> void {
    out.push_back(cur);
    for (std::size_t g = from; g < c.lowering.size(); ++g) {
      std::size_t b = c.lowering[g];
      std::int64_t h = -coord_height(c.root[b]);
      if (h > left) continue;
      cur.push_back(b);
      self(self, c.lie().parity(b) ? g + 1 : g, left - h);
      cur.pop_back();
    }
  };
  rec(rec, 0, static_cast<std::int64_t>(depth));
  return out;
}

inline Coord mono_beta(const HwContext& c, const Mono& m) {
  Coord beta(c.n());
  for (auto b : m)
    for (std::size_t i = 0; i < c.n(); ++i) beta[i] -= c.root[b][i];
  return beta;
}

namespace detail {

// z · (m ⊗ h) = Σ m' ⊗ E[m'] h, with E[m'] a dim H × dim H matrix.
using Elem = std::map<Mono, Matrix>;

inline void add_scaled(Elem& acc, const Elem& x, const Scalar& s) {
  for (const auto& [m, a] : x) {
    auto it = acc.find(m);
    if (it == acc.end())
      acc.emplace(m, s * a);
    else
      it->second = it->second + s * a;
  }
}

inline void prune(Elem& e) {
  for (auto it = e.begin(); it != e.end();) it = it->second.is_zero() ? e.erase(it) : std::next(it);
}

/// Straightens z · (PBW monomial ⊗ H(ψ)) using
///   z · (y m) = (-1)^{|z||y|} y · (z · m) + [z, y] · m   and   y · y = ½ [y, y] for odd y.
class Straightener {
 public:
  Straightener(const HwContext& c, const LieModule& h) : c_(c), dimh_(h.dim()) {
    for (const auto& a : h.action) cart_.push_back(a.to_dense());
  }

  const Elem& act(std::size_t z, const Mono& m) {
    auto key = std::make_pair(z, m);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Elem out;
    const LieSuper& g = c_.lie();
    if (m.empty()) {
      if (c_.is_lowering(z))
        out.emplace(Mono{z}, Matrix::identity(dimh_));
      else if (c_.cartan_slot[z])
        out.emplace(Mono{}, cart_[*c_.cartan_slot[z]]);
    } else {
      std::size_t y = m.front();
      Mono rest(m.begin() + 1, m.end());
      bool odd_z = g.parity(z) != 0;
      if (c_.is_lowering(z) && (z < y || (z == y && !odd_z))) {
        Mono longer{z};
        longer.insert(longer.end(), m.begin(), m.end());
        out.emplace(std::move(longer), Matrix::identity(dimh_));
      } else if (c_.is_lowering(z) && z == y) {
        for (const auto& [w, v] : g.bracket(z, z)) add_scaled(out, act(w, rest), v / Scalar(2));
      } else {
        Elem moved = apply(y, act(z, rest));
        add_scaled(out, moved, Scalar(odd_z && g.parity(y) ? -1 : 1));
        for (const auto& [w, v] : g.bracket(z, y)) add_scaled(out, act(w, rest), v);
      }
    }
    prune(out);
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  /// y · e for a generator y and an element e.
  Elem apply(std::size_t y, const Elem& e) {
    Elem out;
    for (const auto& [m, a] : e) {
      const Elem& img = act(y, m);  // map nodes are stable under later insertions
      for (const auto& [m2, b] : img) {
        Matrix prod = b * a;
        auto it = out.find(m2);
        if (it == out.end())
          out.emplace(m2, std::move(prod));
        else
          it->second = it->second + prod;
      }
    }
    prune(out);
    return out;
  }

 private:
  const HwContext& c_;
  std::size_t dimh_;
  std::vector<Matrix> cart_;
  std::map<std::pair<std::size_t, Mono>, Elem> memo_;
};

}  // namespace detail

/// A module over q(n) ⊗ A with a weight basis.  `beta[k]` is λ − μ for the weight
/// μ of basis vector k; module.weights holds μ as values on h_1..h_n.
struct WeightModule {
  LieModule module;
  std::vector<Coord> beta;
  Psi psi;
  Vec lambda;
  std::size_t depth = 0;
  bool finite = false;  // simple quotients: a vanishing band was found within the depth

  std::size_t dim() const { return module.dim(); }
  std::map<Coord, std::vector<std::size_t>, GradedLex> blocks() const {
    std::map<Coord, std::vector<std::size_t>, GradedLex> out;
    for (std::size_t k = 0; k < beta.size(); ++k) out[beta[k]].push_back(k);
    return out;
  }
  std::size_t weight_dim(const Coord& b) const {
    return static_cast<std::size_t>(std::count(beta.begin(), beta.end(), b));
  }
};

namespace detail {

// Basis vectors (mono, h) of a truncated Verma module grouped by (β, parity).
struct VermaLayout {
  std::vector<Mono> monos;
  std::map<Mono, std::size_t> mono_index;
  std::size_t dimh = 0;
  std::vector<int> hpar;
  std::size_t dim() const { return monos.size() * dimh; }
  std::size_t index(std::size_t mono, std::size_t h) const { return mono * dimh + h; }
};

inline int mono_parity(const HwContext& c, const Mono& m) {
  int p = 0;
  for (auto b : m) p ^= c.lie().parity(b);
  return p;
}

// Dense action of every basis element of q ⊗ A on the truncated Verma module in
// the (mono, h) ordering; terms beyond the depth are dropped.
inline std::vector<SparseMatrix> verma_action(const HwContext& c, const LieModule& h, const VermaLayout& lay,
                                              std::size_t depth) {
  Straightener st(c, h);
  std::size_t d = lay.dim();
  std::vector<SparseMatrix> out;
  for (std::size_t z = 0; z < c.lie().dim(); ++z) {
    SparseMatrix m(d, d);
    for (std::size_t mi = 0; mi < lay.monos.size(); ++mi) {
      const Mono& mono = lay.monos[mi];
      if (coord_height(mono_beta(c, mono)) - coord_height(c.root[z]) > static_cast<std::int64_t>(depth)) continue;
      for (const auto& [m2, a] : st.act(z, mono)) {
        auto it = lay.mono_index.find(m2);
        if (it == lay.mono_index.end()) continue;
        for (std::size_t r = 0; r < lay.dimh; ++r)
          for (std::size_t s = 0; s < lay.dimh; ++s)
            if (!a(r, s).is_zero()) m.push(lay.index(it->second, r), lay.index(mi, s), a(r, s));
      }
    }
    m.normalize();
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace detail

namespace detail {

struct VermaData {
  VermaLayout lay;
  std::vector<SparseMatrix> action;
  std::vector<Coord> beta;          // per Verma basis vector
  std::vector<int> parity;          // per Verma basis vector
  std::vector<Vec> weight;          // per Verma basis vector, values on h_1..h_n
  Vec lambda;
};

inline VermaData build_verma(const HwContext& c, const Psi& psi, std::size_t depth) {
  VermaData v;
  LieModule h = build_H(c.cartan, psi).module;
  v.lambda = psi_weight(c.cartan, psi);
  v.lay.monos = pbw_monomials(c, depth);
  for (std::size_t k = 0; k < v.lay.monos.size(); ++k) v.lay.mono_index.emplace(v.lay.monos[k], k);
  v.lay.dimh = h.dim();
  v.lay.hpar = h.carrier.parities();
  v.action = verma_action(c, h, v.lay, depth);
  for (const auto& m : v.lay.monos) {
    Coord b = mono_beta(c, m);
    int p = mono_parity(c, m);
    Vec w = v.lambda;
    for (auto g : m)
      for (std::size_t i = 0; i < c.n(); ++i) w[i] += c.toral[g][i];
    for (std::size_t s = 0; s < v.lay.dimh; ++s) {
      v.beta.push_back(b);
      v.weight.push_back(w);
      v.parity.push_back(p ^ v.lay.hpar[s]);
    }
  }
  return v;
}

using BlockKey = std::pair<Coord, int>;
struct BlockLess {
  bool operator()(const BlockKey& a, const BlockKey& b) const {
    if (a.first != b.first) return GradedLex{}(a.first, b.first);
    return a.second < b.second;
  }
};

// Quotient data per (β, parity) block: RREF rows of the quotient map and their pivots.
struct BlockQuotient {
  std::vector<std::size_t> members;  // Verma indices
  Matrix proj;                       // rank × members
  std::vector<std::size_t> pivots;   // positions within members
};

using BlockTable = std::map<BlockKey, BlockQuotient, BlockLess>;

inline BlockTable verma_blocks(const VermaData& v) {
  BlockTable t;
  for (std::size_t k = 0; k < v.beta.size(); ++k) t[{v.beta[k], v.parity[k]}].members.push_back(k);
  return t;
}

inline void set_rref(BlockQuotient& b, Matrix rows) {
  auto piv = rref(rows);
  b.proj = Matrix(piv.size(), b.members.size());
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t c = 0; c < b.members.size(); ++c) b.proj(r, c) = rows(r, c);
  b.pivots = piv;
}

inline void identity_quotients(BlockTable& t) {
  for (auto& [key, b] : t) set_rref(b, Matrix::identity(b.members.size()));
}

// N_μ = {v : e·v ∈ N_{μ+α} for every raising e}, top block N_λ = 0, blocks in
// increasing height so every target is already processed.
inline void maximal_submodule_quotients(const HwContext& c, const VermaData& v, BlockTable& t) {
  std::vector<SparseMatrix> raise_t;
  for (auto z : c.raising) raise_t.push_back(v.action[z].transpose());
  std::vector<std::size_t> local(v.beta.size());
  for (auto& [key, b] : t)
    for (std::size_t k = 0; k < b.members.size(); ++k) local[b.members[k]] = k;
  for (auto& [key, b] : t) {
    if (coord_height(key.first) == 0) {
      set_rref(b, Matrix::identity(b.members.size()));
      continue;
    }
    std::vector<Vec> rows;
    for (std::size_t zi = 0; zi < c.raising.size(); ++zi) {
      std::size_t z = c.raising[zi];
      Coord target = key.first;
      for (std::size_t i = 0; i < c.n(); ++i) target[i] -= c.root[z][i];
      auto it = t.find({target, key.second ^ c.lie().parity(z)});
      if (it == t.end() || it->second.proj.rows() == 0) continue;
      const BlockQuotient& tb = it->second;
      // columns of z restricted to this block, mapped through the target projection
      Matrix img(tb.members.size(), b.members.size());
      for (std::size_t k = 0; k < b.members.size(); ++k)
        for (const auto& [r, val] : raise_t[zi].row(b.members[k])) img(local[r], k) = val;
      Matrix pr = tb.proj * img;
      for (std::size_t r = 0; r < pr.rows(); ++r) {
        Vec row(b.members.size());
        bool any = false;
        for (std::size_t k = 0; k < row.size(); ++k)
          if (!pr(r, k).is_zero()) {
            row[k] = pr(r, k);
            any = true;
          }
        if (any) rows.push_back(std::move(row));
      }
    }
    set_rref(b, rows.empty() ? Matrix(0, b.members.size()) : Matrix::from_rows(rows, b.members.size()));
  }
}

// Assembles the quotient on the blocks of height < `cap`, even blocks first.
inline WeightModule assemble(const HwContext& c, const VermaData& v, const BlockTable& t, std::int64_t cap) {
  struct Slot {
    const BlockQuotient* block;
    std::size_t offset;
  };
  std::map<BlockKey, Slot, BlockLess> slots;
  WeightModule out;
  out.lambda = v.lambda;
  std::size_t next = 0, evens = 0;
  for (int par : {0, 1})
    for (const auto& [key, b] : t) {
      if (key.second != par || coord_height(key.first) >= cap || b.pivots.empty()) continue;
      slots.emplace(key, Slot{&b, next});
      for (std::size_t k = 0; k < b.pivots.size(); ++k) {
        out.beta.push_back(key.first);
        out.module.weights.push_back(v.weight[b.members[b.pivots[k]]]);
      }
      next += b.pivots.size();
      if (par == 0) evens = next;
    }
  out.module.carrier = GradedSpace(evens, next - evens);
  out.module.parities = c.lie().space().parities();
  std::vector<std::size_t> local(v.beta.size());
  for (const auto& [key, b] : t)
    for (std::size_t k = 0; k < b.members.size(); ++k) local[b.members[k]] = k;
  for (std::size_t z = 0; z < c.lie().dim(); ++z) {
    SparseMatrix m(next, next);
    SparseMatrix zt = v.action[z].transpose();
    for (const auto& [key, s] : slots) {
      Coord target = key.first;
      for (std::size_t i = 0; i < c.n(); ++i) target[i] -= c.root[z][i];
      auto ts = slots.find({target, key.second ^ c.lie().parity(z)});
      if (ts == slots.end()) continue;
      const BlockQuotient& tb = *ts->second.block;
      for (std::size_t k = 0; k < s.block->pivots.size(); ++k) {
        std::size_t col = s.block->members[s.block->pivots[k]];
        Vec img(tb.members.size());
        for (const auto& [r, val] : zt.row(col)) img[local[r]] = val;
        Vec q = tb.proj * img;
        for (std::size_t r = 0; r < q.size(); ++r) m.push(ts->second.offset + r, s.offset + k, q[r]);
      }
    }
    m.normalize();
    out.module.action.push_back(std::move(m));
  }
  return out;
}

}  // namespace detail

/// Truncated Verma module: weights λ − β with hgt β ≤ depth.  Lowering terms that
/// would leave the truncation are dropped, so only operators that stay inside
/// act exactly.
inline WeightModule verma(const HwContext& c, const Psi& psi, std::size_t depth) {
  detail::VermaData v = detail::build_verma(c, psi, depth);
  detail::BlockTable t = detail::verma_blocks(v);
  detail::identity_quotients(t);
  WeightModule out = detail::assemble(c, v, t, static_cast<std::int64_t>(depth) + 1);
  out.psi = psi;
  out.depth = depth;
  return out;
}

/// V(ψ) = V̄(ψ)/N(ψ) up to the given depth.  When the quotient vanishes on n
/// consecutive heights (n the largest root height, so no lowering operator can
/// jump the band) the module is finite-dimensional; it is then cut at the band
/// and `finite` is set.
inline WeightModule simple_quotient(const HwContext& c, const Psi& psi, std::optional<std::size_t> depth = {}) {
  std::size_t d = depth.value_or(c.default_depth());
  detail::VermaData v = detail::build_verma(c, psi, d);
  detail::BlockTable t = detail::verma_blocks(v);
  detail::maximal_submodule_quotients(c, v, t);
  std::vector<std::size_t> per_height(d + 1);
  for (const auto& [key, b] : t) per_height[static_cast<std::size_t>(coord_height(key.first))] += b.pivots.size();
  std::size_t w = c.max_root_height();
  std::int64_t cap = static_cast<std::int64_t>(d) + 1;
  bool finite = false;
  for (std::size_t start = 1; start + w <= d + 1 && !finite; ++start) {
    bool zero = true;
    for (std::size_t h = start; h < start + w; ++h) zero = zero && per_height[h] == 0;
    if (zero) {
      cap = static_cast<std::int64_t>(start);
      finite = true;
    }
  }
  WeightModule out = detail::assemble(c, v, t, cap);
  out.psi = psi;
  out.depth = d;
  out.finite = finite;
  return out;
}

struct SingularSpace {
  Vec weight;
  std::vector<std::size_t> members;  // basis vectors of this weight
  std::vector<Vec> vectors;          // basis of the singular vectors, module coordinates
};

namespace detail {

inline std::vector<std::pair<Vec, std::vector<std::size_t>>> weight_groups(const LieModule& m) {
  if (m.weights.size() != m.dim()) throw std::invalid_argument("module has no weight basis");
  std::vector<std::pair<Vec, std::vector<std::size_t>>> out;
  for (std::size_t k = 0; k < m.dim(); ++k) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& g) { return g.first == m.weights[k]; });
    if (it == out.end())
      out.push_back({m.weights[k], {k}});
    else
      it->second.push_back(k);
  }
  return out;
}

}  // namespace detail

/// S_μ = vectors of weight μ killed by every raising basis element of n⁺ ⊗ A.
inline std::vector<SingularSpace> singular_vectors(const HwContext& c, const LieModule& m) {
  std::vector<SparseMatrix> raise_t;
  for (auto z : c.raising) raise_t.push_back(m.action[z].transpose());
  std::vector<SingularSpace> out;
  for (const auto& [w, members] : detail::weight_groups(m)) {
    std::vector<Vec> eqs;
    for (const auto& zt : raise_t) {
      std::map<std::size_t, Vec> rows;
      for (std::size_t k = 0; k < members.size(); ++k)
        for (const auto& [r, val] : zt.row(members[k])) {
          auto& row = rows[r];
          if (row.empty()) row.assign(members.size(), Scalar());
          row[k] = val;
        }
      for (auto& [r, row] : rows) eqs.push_back(std::move(row));
    }
    SingularSpace s{w, members, {}};
    std::vector<Vec> ker;
    if (eqs.empty()) {
      for (std::size_t k = 0; k < members.size(); ++k) ker.push_back(unit_vec(members.size(), k));
    } else {
      ker = kernel_basis(Matrix::from_rows(eqs, members.size()));
    }
    for (const auto& kv : ker) {
      Vec full(m.dim());
      for (std::size_t k = 0; k < members.size(); ++k) full[members[k]] = kv[k];
      s.vectors.push_back(std::move(full));
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// The four conditions that together characterise irreducible finite-dimensional
/// weight modules: any nonzero submodule has a maximal weight, whose vectors are
/// singular, so it meets the top space and then contains everything.
struct HwCheck {
  bool single_singular_weight = false;
  bool top_all_singular = false;
  bool top_irreducible = false;
  bool top_generates = false;
  Vec top;
  Psi psi;  // character of 𝔥̄₀ ⊗ A on the top space, when irreducible there
  bool irreducible() const { return single_singular_weight && top_all_singular && top_irreducible && top_generates; }
};

inline HwCheck hw_irreducibility(const HwContext& c, const LieModule& m) {
  HwCheck out;
  if (m.dim() == 0) return out;
  auto spaces = singular_vectors(c, m);
  const SingularSpace* top = nullptr;
  std::size_t nonzero = 0;
  for (const auto& s : spaces)
    if (!s.vectors.empty()) {
      ++nonzero;
      top = &s;
    }
  out.single_singular_weight = nonzero == 1;
  if (nonzero != 1) return out;
  out.top = top->weight;
  out.top_all_singular = top->vectors.size() == top->members.size();

  // the top space as a module over 𝔥 ⊗ A
  const auto& mem = top->members;
  std::size_t e = 0;
  for (auto k : mem) e += m.carrier.parity(k) == 0;
  LieModule block{GradedSpace(e, mem.size() - e), {}, c.cartan.lie().space().parities(), {}};
  std::vector<std::optional<std::size_t>> pos(m.dim());
  for (std::size_t k = 0; k < mem.size(); ++k) pos[mem[k]] = k;
  block.action.assign(c.cartan.lie().dim(), SparseMatrix(mem.size(), mem.size()));
  for (std::size_t b = 0; b < c.lie().dim(); ++b) {
    if (!c.cartan_slot[b]) continue;
    SparseMatrix& a = block.action[*c.cartan_slot[b]];
    for (std::size_t k = 0; k < mem.size(); ++k)
      for (const auto& [col, v] : m.action[b].row(mem[k])) {
        if (!pos[col]) return out;  // not a weight basis
        a.push(k, *pos[col], v);
      }
    a.normalize();
  }
  try {
    out.psi = classify_cartan_module(c.cartan, block).psi;
    out.top_irreducible = true;
  } catch (const std::invalid_argument&) {
    return out;
  }

  RowEchelon span(m.dim());
  std::vector<Vec> queue;
  for (auto k : mem)
    if (span.add(unit_vec(m.dim(), k))) queue.push_back(unit_vec(m.dim(), k));
  while (!queue.empty() && !span.full()) {
    Vec v = std::move(queue.back());
    queue.pop_back();
    for (const auto& a : m.action) {
      Vec w = a.apply(v);
      if (!is_zero_vec(w) && span.add(w)) queue.push_back(std::move(w));
    }
  }
  out.top_generates = span.full();
  return out;
}

inline bool is_irreducible_hw(const HwContext& c, const LieModule& m) { return hw_irreducibility(c, m).irreducible(); }

/// ψ(h̄₀ ⊗ I) = 0 compared with (q ⊗ I) V(ψ) = 0.
struct IdealCheck {
  bool psi_vanishes = false;
  bool ideal_acts_by_zero = false;
  bool agree() const { return psi_vanishes == ideal_acts_by_zero; }
};

inline IdealCheck check_psi0_ideal(const HwContext& c, const WeightModule& v, const IdealRep& ideal) {
  if (!v.finite) throw std::runtime_error("check_psi0_ideal: truncation inconclusive");
  IdealCheck out{true, true};
  for (const auto& f : ideal.basis) {
    for (std::size_t i = 0; i < c.n(); ++i)
      if (!psi_apply(c.cartan, v.psi, c.cartan.map.pure(i, f)).is_zero()) out.psi_vanishes = false;
    for (std::size_t x = 0; x < c.q.dim(); ++x)
      if (!v.module.act(c.map.pure(x, f)).is_zero()) out.ideal_acts_by_zero = false;
  }
  return out;
}

struct WeightRow {
  Coord beta;
  Vec weight;
  std::size_t dim = 0;
  std::size_t singular = 0;
};

/// One row per weight, ordered by height of λ − μ then lexicographically.
inline std::vector<WeightRow> weight_table(const HwContext& c, const WeightModule& v) {
  auto sing = singular_vectors(c, v.module);
  std::vector<WeightRow> out;
  for (const auto& [beta, members] : v.blocks()) {
    WeightRow r{beta, v.module.weights[members.front()], members.size(), 0};
    for (const auto& s : sing)
      if (s.weight == r.weight) r.singular = s.vectors.size();
    out.push_back(std::move(r));
  }
  return out;
}

/// The same four-condition test for any algebra with a toral part h_1..h_n
/// (h_i = E_ii − E_{i+1,i+1}) acting diagonally, e.g. (q ⊗ A)^Γ.  Positive
/// basis elements are those whose weight has nonnegative simple-root
/// coordinates; the top space is tested for irreducibility over the zero-weight
/// part with the density oracle.
inline HwCheck weight_irreducibility(const LieSuper& g, const LieModule& m) {
  HwCheck out;
  auto gw = toral_weights(g);
  if (gw.empty() || g.toral().empty()) throw std::invalid_argument("weight_irreducibility: no diagonal toral part");
  std::size_t n = g.toral().size();
  // α_j(h_i) is the A_n Cartan matrix, so coordinates are C⁻¹ μ
  Matrix cm(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    cm(i, i) = Scalar(2);
    if (i + 1 < n) cm(i, i + 1) = cm(i + 1, i) = Scalar(-1);
  }
  Matrix cinv = inverse(cm);
  std::vector<std::size_t> raising, zero;
  for (std::size_t b = 0; b < g.dim(); ++b) {
    Vec c = cinv * gw[b];
    bool nonneg = true, nz = false;
    for (const auto& x : c) {
      if (!x.in_base_field() || !x.base_coefficient().im.is_zero()) throw std::invalid_argument("weight_irreducibility: non-real weight");
      if (x.base_coefficient().re.sign() < 0) nonneg = false;
      if (!x.is_zero()) nz = true;
    }
    if (nonneg && nz) raising.push_back(b);
    if (!nz) zero.push_back(b);
  }
  if (m.dim() == 0) return out;
  std::vector<SparseMatrix> raise_t;
  for (auto z : raising) raise_t.push_back(m.action[z].transpose());
  const std::vector<std::size_t>* top = nullptr;
  std::size_t nonzero = 0;
  auto groups = detail::weight_groups(m);
  std::size_t top_singular = 0;
  for (const auto& [w, members] : groups) {
    std::vector<Vec> eqs;
    for (const auto& zt : raise_t) {
      std::map<std::size_t, Vec> rows;
      for (std::size_t k = 0; k < members.size(); ++k)
        for (const auto& [r, val] : zt.row(members[k])) {
          auto& row = rows[r];
          if (row.empty()) row.assign(members.size(), Scalar());
          row[k] = val;
        }
      for (auto& [r, row] : rows) eqs.push_back(std::move(row));
    }
    std::size_t ks = eqs.empty() ? members.size() : kernel_basis(Matrix::from_rows(eqs, members.size())).size();
    if (ks) {
      ++nonzero;
      top = &members;
      top_singular = ks;
      out.top = w;
    }
  }
  out.single_singular_weight = nonzero == 1;
  if (nonzero != 1) return out;
  out.top_all_singular = top_singular == top->size();
  const auto& mem = *top;
  std::vector<std::optional<std::size_t>> pos(m.dim());
  for (std::size_t k = 0; k < mem.size(); ++k) pos[mem[k]] = k;
  std::size_t e = 0;
  for (auto k : mem) e += m.carrier.parity(k) == 0;
  std::vector<SparseMatrix> ops;
  std::vector<int> par;
  for (auto b : zero) {
    SparseMatrix a(mem.size(), mem.size());
    for (std::size_t k = 0; k < mem.size(); ++k)
      for (const auto& [col, v] : m.action[b].row(mem[k])) {
        if (!pos[col]) return out;
        a.push(k, *pos[col], v);
      }
    a.normalize();
    ops.push_back(std::move(a));
    par.push_back(g.parity(b));
  }
  out.top_irreducible = density_type(ops, par, GradedSpace(e, mem.size() - e)).irreducible();
  if (!out.top_irreducible) return out;
  RowEchelon span(m.dim());
  std::vector<Vec> queue;
  for (auto k : mem)
    if (span.add(unit_vec(m.dim(), k))) queue.push_back(unit_vec(m.dim(), k));
  while (!queue.empty() && !span.full()) {
    Vec v = std::move(queue.back());
    queue.pop_back();
    for (const auto& a : m.action) {
      Vec w = a.apply(v);
      if (!is_zero_vec(w) && span.add(w)) queue.push_back(std::move(w));
    }
  }
  out.top_generates = span.full();
  return out;
}

}  // namespace qsuper

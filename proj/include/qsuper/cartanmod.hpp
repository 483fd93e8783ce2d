#pragma once

#include "qsuper/hom.hpp"
#include "qsuper/mapsuper.hpp"
#include "qsuper/queer.hpp"

namespace qsuper {

/// 𝔥 ⊗ A for the Cartan subalgebra 𝔥 = h̄₀ ⊕ h̄₁ of q(n).  Basis: h_i ⊗ a_k at
/// i * dim A + k, then h'_i ⊗ a_k at (n + i) * dim A + k.
struct CartanContext {
  std::size_t n = 0;
  MapSuper map;

  std::size_t adim() const { return map.a.dim(); }
  std::size_t half() const { return n * adim(); }
  const LieSuper& lie() const { return map.lie; }
};

inline CartanContext cartan_context(const QueerAlgebra& q, const CoeffAlgebra& a) {
  return CartanContext{q.n(), tensor_lie(q.subalgebra(q.cartan_indices()), a)};
}

// A functional ψ on h̄₀ ⊗ A is stored by its values on h_i ⊗ a_k, index i * dim A + k.
using Psi = Vec;

inline Scalar psi_apply(const CartanContext& c, const Psi& psi, const Vec& even) {
  Scalar s;
  for (std::size_t k = 0; k < c.half(); ++k)
    if (!psi[k].is_zero() && !even[k].is_zero()) s += psi[k] * even[k];
  return s;
}

/// λ ∘ ev_m, with λ given by its values on h_1..h_n.
inline Psi psi_at_point(const CartanContext& c, const Vec& lambda, std::size_t point) {
  Psi psi(c.half());
  const auto& chi = c.map.a.maxspec().at(point).character;
  for (std::size_t i = 0; i < c.n; ++i)
    for (std::size_t k = 0; k < c.adim(); ++k) psi[i * c.adim() + k] = lambda[i] * chi[k];
  return psi;
}

inline Psi psi_sum(const Psi& x, const Psi& y) {
  Psi out = x;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += y[k];
  return out;
}

/// λ = ψ restricted to h̄₀ ⊗ 1, as values on h_1..h_n.
inline Vec psi_weight(const CartanContext& c, const Psi& psi) {
  Vec lambda(c.n);
  for (std::size_t i = 0; i < c.n; ++i) lambda[i] = psi_apply(c, psi, c.map.pure(i, c.map.a.unit()));
  return lambda;
}

/// I_ψ: the largest ideal I with ψ(h̄₀ ⊗ I) = 0, i.e. {a : ψ(h_i ⊗ b a) = 0 for all i, b}.
inline IdealRep i_psi(const CartanContext& c, const Psi& psi) {
  const CoeffAlgebra& a = c.map.a;
  std::size_t d = a.dim();
  Matrix eqs(c.n * d, d);
  for (std::size_t i = 0; i < c.n; ++i)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t k = 0; k < d; ++k)
        for (const auto& [l, v] : a.product(b, k)) eqs(i * d + b, k) += psi[i * d + l] * v;
  return span_ideal(a, kernel_basis(eqs));
}

struct CliffordData {
  IdealRep i_psi;
  Matrix gram;                      // f_ψ(x, y) = ψ([x, y]) on the basis h'_i ⊗ a_k
  std::vector<std::size_t> pivots;  // principal block of gram that is nondegenerate
  std::size_t r = 0;                // rank of f_ψ
  std::size_t quotient_dim = 0;     // dim h̄₁ ⊗ A / I_ψ
  Vec z;                            // even element with ψ(z) = 1, empty when ψ = 0
};

/// Pivot order: rows are scanned forwards, or backwards when `reverse` is set,
/// which gives a second independent construction of the same module.
inline CliffordData build_clifford_data(const CartanContext& c, const Psi& psi, bool reverse = false) {
  CliffordData out;
  out.i_psi = i_psi(c, psi);
  out.quotient_dim = c.n * (c.adim() - out.i_psi.dim());
  std::size_t h = c.half();
  out.gram = Matrix(h, h);
  for (std::size_t x = 0; x < h; ++x)
    for (std::size_t y = 0; y < h; ++y) {
      const SparseRow& br = c.lie().bracket(h + x, h + y);
      Scalar s;
      for (const auto& [k, v] : br) s += psi[k] * v;
      out.gram(x, y) = s;
    }
  std::vector<std::size_t> order(h);
  for (std::size_t k = 0; k < h; ++k) order[k] = reverse ? h - 1 - k : k;
  RowEchelon rows(h);
  for (auto k : order) {
    Vec row(h);
    for (std::size_t j = 0; j < h; ++j) row[j] = out.gram(k, j);
    if (rows.add(std::move(row))) out.pivots.push_back(k);
  }
  out.r = out.pivots.size();
  for (std::size_t k = 0; k < h; ++k)
    if (!psi[k].is_zero()) {
      out.z = unit_vec(c.lie().dim(), k);
      out.z[k] = psi[k].inverse();
      break;
    }
  return out;
}

struct CartanModule {
  CliffordData data;
  LieModule module;
};

/// H(ψ): h̄₀ ⊗ A acts by ψ, h̄₁ ⊗ A through the Clifford algebra of ½ f_ψ on
/// a nondegenerate block, and the radical of f_ψ acts by zero.
inline CartanModule build_H(const CartanContext& c, const Psi& psi, bool reverse = false) {
  CartanModule out{build_clifford_data(c, psi, reverse), {}};
  const CliffordData& d = out.data;
  std::size_t h = c.half(), r = d.r;
  Matrix block(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) block(i, j) = d.gram(d.pivots[i], d.pivots[j]);
  Matrix half_form = (Scalar(1) / Scalar(2)) * block;
  ModuleAction irrep = clifford_irrep(QuadraticPair(half_form));
  std::size_t dim = irrep.carrier.dim();

  // generators of the Clifford algebra sit at the single-bit monomials
  std::vector<SparseMatrix> gens(r);
  auto monos = clifford_monomials(r);
  for (std::size_t k = 0; k < monos.size(); ++k)
    if (__builtin_popcount(monos[k]) == 1) gens[static_cast<std::size_t>(__builtin_ctz(monos[k]))] = irrep.action[k];

  Matrix block_inv = r ? inverse(block) : Matrix();
  LieModule& m = out.module;
  m.carrier = irrep.carrier;
  for (std::size_t k = 0; k < h; ++k) {
    m.action.push_back(psi[k] * SparseMatrix::identity(dim));
    m.parities.push_back(0);
  }
  for (std::size_t x = 0; x < h; ++x) {
    // x ≡ Σ α_s c_s modulo the radical, α = block⁻¹ · gram[S, x]
    SparseMatrix op(dim, dim);
    for (std::size_t s = 0; s < r; ++s) {
      Scalar alpha;
      for (std::size_t t = 0; t < r; ++t) alpha += block_inv(s, t) * d.gram(d.pivots[t], x);
      if (!alpha.is_zero()) op = op + alpha * gens[s];
    }
    m.action.push_back(std::move(op));
    m.parities.push_back(1);
  }
  m.weights.assign(dim, psi_weight(c, psi));
  return out;
}

/// Recovers ψ from the (scalar) action of h̄₀ ⊗ A and an isomorphism to H(ψ).
struct CartanClassification {
  Psi psi;
  IsoResult iso;
};

inline CartanClassification classify_cartan_module(const CartanContext& c, const LieModule& v) {
  if (v.dim() <= 64) {
    if (!density_type(v.action, v.parities, v.carrier).irreducible())
      throw std::invalid_argument("classify_cartan_module: module is not irreducible");
  }
  CartanClassification out;
  out.psi.assign(c.half(), Scalar());
  for (std::size_t k = 0; k < c.half(); ++k) {
    const SparseMatrix& a = v.action[k];
    Scalar s = a.row(0).empty() ? Scalar() : a.row(0).front().second;
    if (!(a == s * SparseMatrix::identity(v.dim())))
      throw std::invalid_argument("classify_cartan_module: even part does not act by scalars");
    out.psi[k] = s;
  }
  LieModule h = build_H(c, out.psi).module;
  LieModule plain = v;
  plain.weights.clear();
  h.weights.clear();
  out.iso = is_isomorphic(plain, h);
  if (!out.iso.isomorphic) throw std::invalid_argument("classify_cartan_module: module is not irreducible");
  return out;
}

/// The induced module U(𝔥 ⊗ A/I) ⊗ C_ψ for ψ(h̄₀ ⊗ I) = 0, realised as the left
/// regular module of the Clifford algebra of ½ f_ψ on h̄₁ ⊗ A/I.
inline LieModule induced_cartan_module(const CartanContext& c, const Psi& psi, const IdealRep& ideal) {
  const CoeffAlgebra& a = c.map.a;
  Quotient quo = quotient_algebra(a, ideal);
  std::size_t qd = quo.kept.size();
  std::size_t d = c.n * qd;
  // odd generators h'_i ⊗ a_kept
  Matrix gram(d, d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      Vec vx = c.map.pure(c.n + x / qd, unit_vec(a.dim(), quo.kept[x % qd]));
      Vec vy = c.map.pure(c.n + y / qd, unit_vec(a.dim(), quo.kept[y % qd]));
      gram(x, y) = psi_apply(c, psi, c.lie().bracket(vx, vy));
    }
  AssocSuper cl = clifford(QuadraticPair((Scalar(1) / Scalar(2)) * gram));
  auto monos = clifford_monomials(d);
  std::vector<SparseMatrix> gens(d);
  for (std::size_t k = 0; k < monos.size(); ++k)
    if (__builtin_popcount(monos[k]) == 1) gens[static_cast<std::size_t>(__builtin_ctz(monos[k]))] = cl.left_mult(k);
  std::size_t dim = cl.dim();
  LieModule m{cl.space(), {}, {}, {}};
  for (std::size_t k = 0; k < c.half(); ++k) {
    m.action.push_back(psi[k] * SparseMatrix::identity(dim));
    m.parities.push_back(0);
  }
  for (std::size_t i = 0; i < c.n; ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) {
      Vec coords = quo.project(unit_vec(a.dim(), k));  // coordinates over the kept basis
      SparseMatrix op(dim, dim);
      for (std::size_t t = 0; t < qd; ++t)
        if (!coords[t].is_zero()) op = op + coords[t] * gens[i * qd + t];
      m.action.push_back(std::move(op));
      m.parities.push_back(1);
    }
  return m;
}

}  // namespace qsuper

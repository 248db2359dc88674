#include "wittkit/etale.hpp"

#include <algorithm>

namespace wittkit {

namespace {

using Matrix = std::vector<std::vector<MultiPoly>>;

// Fraction-free Bareiss determinant; exact over an integral domain.
MultiPoly bareiss_det(Matrix m, const CoeffRing& ring, unsigned nvars) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(ring, nvars, 1);
  int sign = 1;
  MultiPoly prev = MultiPoly::constant(ring, nvars, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return MultiPoly(ring, nvars);
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto q = exact_divide(num, prev);
        if (!q) fail("NotIntegral", "inexact division in fraction-free elimination");
        m[i][j] = std::move(*q);
      }
      m[i][k] = MultiPoly(ring, nvars);
    }
    prev = m[k][k];
  }
  MultiPoly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

Int unit_constant_inverse(const MultiPoly& det, unsigned p) {
  Int c = det.constant_value();
  Int pz(p), inv;
  if (mpz_invert(inv.get_mpz_t(), c.get_mpz_t(), pz.get_mpz_t()) == 0)
    fail("NotEtale", "determinant " + det.str() + " is not a unit");
  return inv;
}

// Solve M x = rhs by Cramer; requires det(M) to be a unit constant of F_p.
std::vector<MultiPoly> cramer_solve(const Matrix& m, const std::vector<MultiPoly>& rhs,
                                    const MultiPoly& det, const CoeffRing& ring,
                                    unsigned nvars) {
  Int inv = unit_constant_inverse(det, ring.p());
  MultiPoly scale = MultiPoly::constant(ring, nvars, inv);
  std::vector<MultiPoly> x;
  x.reserve(m.size());
  for (std::size_t col = 0; col < m.size(); ++col) {
    Matrix replaced = m;
    for (std::size_t r = 0; r < m.size(); ++r) replaced[r][col] = rhs[r];
    x.push_back(bareiss_det(std::move(replaced), ring, nvars) * scale);
  }
  return x;
}

}  // namespace

MultiPoly formal_derivative(const MultiPoly& g, unsigned var) {
  MultiPoly out(g.ring(), g.num_vars());
  for (const auto& [m, c] : g.terms()) {
    if (m[var] == 0) continue;
    Mono mm = m;
    mm[var] -= 1;
    out.add_term(mm, c * Int(m[var]));
  }
  return out;
}

std::vector<std::vector<MultiPoly>> power_basis_matrix_inverse(const CtxPtr& ctx_b,
                                                               unsigned level) {
  if (!ctx_b->modulus) fail("SpecMismatch", "power basis needs a quotient context");
  const MultiPoly& f = *ctx_b->modulus;
  unsigned var = ctx_b->num_vars - 1;
  unsigned p = ctx_b->ring.p();
  unsigned m = static_cast<unsigned>(f.degree_in(var));

  // Columns of M express t^(jp) mod f in the power basis.
  Matrix basis(m, std::vector<MultiPoly>(m, MultiPoly(ctx_b->ring, ctx_b->num_vars)));
  for (unsigned j = 0; j < m; ++j) {
    MultiPoly tjp = ctx_b->reduce(MultiPoly::variable(ctx_b->ring, ctx_b->num_vars, var,
                                                      static_cast<std::uint32_t>(j) * p));
    for (unsigned r = 0; r < m; ++r) basis[r][j] = tjp.coeff_of(var, r);
  }
  MultiPoly det = bareiss_det(basis, ctx_b->ring, ctx_b->num_vars);
  if (!det.is_constant() || det.is_zero())
    fail("NotEtaleAtLevel", "level " + std::to_string(level) +
                                " basis matrix has non-unit determinant " + det.str());

  Matrix u(m, std::vector<MultiPoly>(m, MultiPoly(ctx_b->ring, ctx_b->num_vars)));
  for (unsigned i = 0; i < m; ++i) {
    std::vector<MultiPoly> e(m, MultiPoly(ctx_b->ring, ctx_b->num_vars));
    e[i] = MultiPoly::constant(ctx_b->ring, ctx_b->num_vars, 1);
    auto col = cramer_solve(basis, e, det, ctx_b->ring, ctx_b->num_vars);
    for (unsigned j = 0; j < m; ++j) u[j][i] = col[j];
  }
  return u;
}

EtaleExt EtaleExt::make(const CtxPtr& base, MultiPoly f, std::optional<MultiPoly> witness) {
  if (!base->ring.is_fp() || base->modulus)
    fail("UnsupportedBase", "etale extensions are built over F_p polynomial rings");
  EtaleExt ext;
  ext.ctx_a_ = base;
  unsigned nvars = base->num_vars + 1;
  if (f.num_vars() != nvars)
    fail("ArityMismatch", "modulus must add one variable to the base ring");
  ext.ctx_b_ = PolyRingCtx::quotient(base->ring, nvars, f);
  unsigned var = nvars - 1;
  ext.f_ = *ext.ctx_b_->modulus;
  ext.deg_ = static_cast<unsigned>(ext.f_.degree_in(var));
  ext.fprime_ = formal_derivative(ext.f_, var);
  if (ext.fprime_.is_zero())
    fail("NotEtale", "derivative of the modulus vanishes");

  if (witness) {
    ext.witness_ = ext.ctx_b_->reduce(std::move(*witness));
  } else {
    // Bezout identity u*f + v*f' = 1 via the Sylvester system; the etale
    // hypothesis makes its determinant (the resultant) a unit constant.
    unsigned m = ext.deg_;
    unsigned mp = static_cast<unsigned>(ext.fprime_.degree_in(var));
    unsigned size = m + mp;
    auto fc = ext.f_.coeffs_in(var);
    auto gc = ext.fprime_.coeffs_in(var);
    Matrix sys(size, std::vector<MultiPoly>(size, MultiPoly(base->ring, nvars)));
    for (unsigned r = 0; r < size; ++r) {
      for (unsigned i = 0; i < mp; ++i)
        if (r >= i && r - i < fc.size()) sys[r][i] = fc[r - i];
      for (unsigned j = 0; j < m; ++j)
        if (r >= j && r - j < gc.size()) sys[r][mp + j] = gc[r - j];
    }
    MultiPoly det = bareiss_det(sys, base->ring, nvars);
    if (!det.is_constant() || det.is_zero())
      fail("NotEtale", "resultant " + det.str() + " of f and f' is not a unit");
    std::vector<MultiPoly> rhs(size, MultiPoly(base->ring, nvars));
    rhs[0] = MultiPoly::constant(base->ring, nvars, 1);
    auto sol = cramer_solve(sys, rhs, det, base->ring, nvars);
    MultiPoly v(base->ring, nvars);
    for (unsigned j = 0; j < m; ++j)
      v = v + sol[mp + j] * MultiPoly::variable(base->ring, nvars, var, j);
    ext.witness_ = ext.ctx_b_->reduce(v);
  }

  MultiPoly check = ext.ctx_b_->reduce(ext.fprime_ * ext.witness_);
  if (!check.is_one())
    fail("NotEtale", "derivative inverse witness fails: f' * g = " + check.str());

  ext.u_ = power_basis_matrix_inverse(ext.ctx_b_, 1);
  return ext;
}

BasisCoords power_basis_coords(const MultiPoly& b, const EtaleExt& ext, unsigned n) {
  const CtxPtr& ctx_b = ext.quot_ctx();
  unsigned var = ctx_b->num_vars - 1;
  unsigned m = ext.degree();
  MultiPoly rep = ctx_b->reduce(b);
  std::vector<MultiPoly> a(m, MultiPoly(ctx_b->ring, ctx_b->num_vars));
  for (unsigned i = 0; i < m; ++i) a[i] = rep.coeff_of(var, i);

  std::vector<std::vector<MultiPoly>> u = ext.basis_inverse();
  for (unsigned level = 1; level <= n; ++level) {
    std::vector<MultiPoly> next(m, MultiPoly(ctx_b->ring, ctx_b->num_vars));
    for (unsigned j = 0; j < m; ++j)
      for (unsigned i = 0; i < m; ++i)
        if (!u[j][i].is_zero() && !a[i].is_zero()) next[j] = next[j] + u[j][i] * a[i];
    a = std::move(next);
    if (level < n)
      for (auto& row : u)
        for (auto& entry : row) entry = entry.frobenius();
  }

  BasisCoords out;
  out.level = n;
  out.coords.reserve(m);
  for (auto& c : a) out.coords.push_back(c.drop_var(var));
  return out;
}

GrowthBound power_basis_growth_bound(const EtaleExt& ext, const ValuationSpec& inner) {
  unsigned var = ext.quot_ctx()->num_vars - 1;
  ExtRat low = ExtRat::infinity();
  for (const auto& row : ext.basis_inverse())
    for (const auto& entry : row) {
      if (entry.is_zero()) continue;
      low = ExtRat::min(low, eval_valuation(inner, entry.drop_var(var)));
    }
  GrowthBound out;
  Rat c(0);
  if (low.is_finite() && low.value() < 0) c = -low.value();
  out.matrix_c = c;
  out.growth = c / Rat(ext.quot_ctx()->ring.p() - 1);
  out.growth.canonicalize();

  // d for the quotient valuation: positive and at least -inner(c_i) for every
  // non-leading coefficient of the modulus.
  Rat d(1);
  for (unsigned i = 0; i < ext.degree(); ++i) {
    MultiPoly ci = ext.modulus().coeff_of(var, i);
    if (ci.is_zero()) continue;
    ExtRat v = eval_valuation(inner, ci.drop_var(var));
    if (v.is_finite() && -v.value() > d) d = -v.value();
  }
  out.quot_d = d;
  return out;
}

std::vector<WittVector> etale_basis_expand(const WittVector& eta, const EtaleExt& ext) {
  if (!eta.ctx()->same(*ext.quot_ctx()))
    fail("Mismatch", "Witt vector does not live over the extension ring");
  const CtxPtr& ctx_b = ext.quot_ctx();
  const CtxPtr& ctx_a = ext.base_ctx();
  unsigned var = ctx_b->num_vars - 1;
  unsigned m = ext.degree();
  unsigned len = eta.length();
  unsigned p = ctx_b->ring.p();

  std::vector<WittVector> xi(m, WittVector::zero(ctx_a, len));
  WittVector rem = eta;
  for (unsigned s = 0; s < len; ++s) {
    const MultiPoly& lead = rem.comp(s);
    if (lead.is_zero()) continue;
    BasisCoords coords = power_basis_coords(lead, ext, s);
    WittVector level = WittVector::zero(ctx_b, len);
    std::uint64_t step = 1;
    for (unsigned j = 0; j < s; ++j) step *= p;
    for (unsigned i = 0; i < m; ++i) {
      const MultiPoly& c = coords.coords[i];
      if (c.is_zero()) continue;
      WittVector xi_piece = teichmuller(ctx_a, len, c);
      for (unsigned j = 0; j < s; ++j) xi_piece = verschiebung(xi_piece);
      xi[i] = witt_add(xi[i], xi_piece);
      std::uint64_t e = step * i;
      if (e > 0x7fffffffu) fail("DegreeOverflow", "basis exponent overflow");
      MultiPoly elem = ctx_b->reduce(
          c.insert_var(var) *
          MultiPoly::variable(ctx_b->ring, ctx_b->num_vars, var, static_cast<std::uint32_t>(e)));
      WittVector piece = teichmuller(ctx_b, len, elem);
      for (unsigned j = 0; j < s; ++j) piece = verschiebung(piece);
      level = witt_add(level, piece);
    }
    rem = witt_sub(rem, level);
    if (!rem.comp(s).is_zero())
      fail("NotEtaleAtLevel", "expansion failed to clear level " + std::to_string(s));
  }
  if (!rem.is_zero()) fail("NotEtaleAtLevel", "expansion left a nonzero remainder");
  return xi;
}

WittVector hensel_lift(const std::vector<WittVector>& coeffs, const MultiPoly& root,
                       const std::optional<WittVector>& start) {
  if (coeffs.empty()) fail("EmptyInput", "polynomial with no coefficients");
  const CtxPtr& ctx = coeffs[0].ctx();
  if (!ctx->ring.is_fp() || ctx->modulus)
    fail("UnsupportedBase", "hensel lifting runs over F_p polynomial bases");
  unsigned len = coeffs[0].length();
  for (const auto& c : coeffs)
    if (c.length() != len || !c.ctx()->same(*ctx)) fail("Mismatch", "coefficient mismatch");

  // Residue polynomial over A and its derivative at the proposed root.
  MultiPoly value(ctx->ring, ctx->num_vars);
  MultiPoly deriv(ctx->ring, ctx->num_vars);
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    deriv = deriv * root + value;
    value = value * root + coeffs[j].comp(0);
  }
  if (!value.is_zero())
    fail("NotARoot", "first ghost component at the root is " + value.str());
  if (!deriv.is_constant() || deriv.is_zero())
    fail("NotAUnit", "derivative at the root is " + deriv.str() + ", not a unit");

  std::vector<WittVector> dcoeffs;
  for (std::size_t j = 1; j < coeffs.size(); ++j)
    dcoeffs.push_back(witt_scale(Int(j), coeffs[j]));

  WittVector alpha = start ? *start : teichmuller(ctx, len, root);
  if (alpha.length() != len || !alpha.ctx()->same(*ctx) || !(alpha.comp(0) == ctx->reduce(root)))
    fail("NotARoot", "start vector does not reduce to the root");
  unsigned iters = 2;
  for (unsigned v = 1; v < len; v *= 2) ++iters;
  for (unsigned it = 0; it < iters; ++it) {
    WittVector residue = witt_poly_eval(coeffs, alpha);
    if (residue.is_zero()) return alpha;
    WittVector slope = witt_poly_eval(dcoeffs, alpha);
    alpha = witt_sub(alpha, witt_mul(residue, witt_inverse(slope)));
  }
  if (!witt_poly_eval(coeffs, alpha).is_zero())
    fail("NoConvergence", "Newton iteration failed to clear the truncation");
  return alpha;
}

}  // namespace wittkit

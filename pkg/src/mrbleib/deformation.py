"""Truncated formal deformations of a modified Rota-Baxter Leibniz algebra.

A deformation deforms both the bracket and the operator as polynomials in
a formal parameter, truncated at a fixed order N.  The deformation
equations are compared order by order; at each order n the weight term
enters exactly once, against the order-n bracket coefficient, which is the
reading forced by the base case n = 0 (the defining operator identity).

All cohomological bookkeeping (infinitesimals, gauge steps) happens in the
cone complex with regular coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    DefectReport,
    LeibnizAlgebra,
    OperatorContext,
    _collect,
)
from .cohomology import (
    Cochain,
    ConeCochain,
    apply_cone,
    apply_delta,
    bracket_cochain,
    classify_cochain,
    cochain_from_entries,
    operator_cochain,
    zero_cochain,
)
from .errors import (
    DimensionMismatch,
    NotACoboundaryWitness,
    NotADeformation,
    OrderMismatch,
)
from .linalg import Matrix, ZERO, kron, vec_add, vec_scale, vec_sub
from .representations import regular_rep


@dataclass(frozen=True)
class TruncatedDeformation:
    """Bracket and operator coefficients mu_0..mu_N, K_0..K_N.

    mu_0 must be the base bracket as a degree-2 cochain and K_0 the base
    operator; orders above N are deliberately out of scope.
    """

    algebra: LeibnizAlgebra
    ctx: OperatorContext
    mu: tuple[Cochain, ...]
    kk: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(self.mu))
        object.__setattr__(self, "kk", tuple(self.kk))
        if len(self.mu) != len(self.kk) or not self.mu:
            raise DimensionMismatch("mu and kk must have equal positive length")
        d = self.algebra.dim
        for c in self.mu:
            if c.degree != 2 or c.values.rows != d or c.values.cols != d * d:
                raise DimensionMismatch("each mu_i must be a degree-2 cochain on the algebra")
        for k in self.kk:
            if k.rows != d or k.cols != d:
                raise DimensionMismatch("each K_i must be a d x d matrix")
        if self.mu[0] != bracket_cochain(self.algebra):
            raise DimensionMismatch("mu_0 must equal the base bracket")
        if self.kk[0] != self.ctx.operator:
            raise DimensionMismatch("K_0 must equal the base operator")

    @property
    def order(self) -> int:
        return len(self.mu) - 1

    @classmethod
    def trivial(
        cls, alg: LeibnizAlgebra, ctx: OperatorContext, order: int
    ) -> "TruncatedDeformation":
        d = alg.dim
        mu = (bracket_cochain(alg),) + tuple(
            zero_cochain(d, d, 2) for _ in range(order)
        )
        kk = (ctx.operator,) + tuple(Matrix.zeros(d, d) for _ in range(order))
        return cls(alg, ctx, mu, kk)

    def with_order_one(self, mu1: Cochain, k1: Matrix) -> "TruncatedDeformation":
        """Replace the order-1 coefficients (order must be >= 1)."""
        if self.order < 1:
            raise OrderMismatch("deformation has no order-1 slot")
        mu = (self.mu[0], mu1) + self.mu[2:]
        kk = (self.kk[0], k1) + self.kk[2:]
        return TruncatedDeformation(self.algebra, self.ctx, mu, kk)


def _ev2(c: Cochain, d: int, u, v):
    """Evaluate a degree-2 cochain on two coordinate vectors."""
    vals = c.values
    out = [ZERO] * vals.rows
    for a, ua in enumerate(u):
        if not ua:
            continue
        for b, vb in enumerate(v):
            if not vb:
                continue
            s = ua * vb
            col = vals.column(a * d + b)
            for t, e in enumerate(col):
                if e:
                    out[t] += s * e
    return tuple(out)


def _basis(d: int, i: int):
    return tuple(Fraction(1) if t == i - 1 else ZERO for t in range(d))


def deformation_residuals(dfm: TruncatedDeformation) -> tuple[DefectReport, ...]:
    """Order-by-order residuals of the two deformation equations.

    Order n, bracket part (basis triples x,y,z):
      sum_{i+j=n} mu_i(x, mu_j(y,z)) - mu_i(mu_j(x,y), z) - mu_i(y, mu_j(x,z))
    Order n, operator part (basis pairs x,y):
      sum_{i+j+k=n} mu_i(K_j x, K_k y)
      - sum_{i+j+k=n} K_i(mu_j(K_k x, y) + mu_j(x, K_k y))
      - weight * mu_n(x, y).
    """
    d = dfm.algebra.dim
    weight = dfm.ctx.weight
    reports = []
    kcols = [[k.column(j) for j in range(d)] for k in dfm.kk]
    for n in range(dfm.order + 1):
        items = []
        for a in range(1, d + 1):
            x = _basis(d, a)
            for b in range(1, d + 1):
                y = _basis(d, b)
                for c in range(1, d + 1):
                    z = _basis(d, c)
                    res = (ZERO,) * d
                    for i in range(n + 1):
                        j = n - i
                        mi, mj = dfm.mu[i], dfm.mu[j]
                        term = _ev2(mi, d, x, _ev2(mj, d, y, z))
                        term = vec_sub(term, _ev2(mi, d, _ev2(mj, d, x, y), z))
                        term = vec_sub(term, _ev2(mi, d, y, _ev2(mj, d, x, z)))
                        res = vec_add(res, term)
                    items.append(("leibniz", (a, b, c), res))
        for a in range(1, d + 1):
            x = _basis(d, a)
            for b in range(1, d + 1):
                y = _basis(d, b)
                res = (ZERO,) * d
                for i in range(n + 1):
                    for j in range(n + 1 - i):
                        k = n - i - j
                        kjx = kcols[j][a - 1]
                        kky = kcols[k][b - 1]
                        res = vec_add(res, _ev2(dfm.mu[i], d, kjx, kky))
                        kkx = kcols[k][a - 1]
                        inner = vec_add(
                            _ev2(dfm.mu[j], d, kkx, y),
                            _ev2(dfm.mu[j], d, x, kky),
                        )
                        res = vec_sub(res, dfm.kk[i].apply(inner))
                res = vec_sub(res, vec_scale(weight, _ev2(dfm.mu[n], d, x, y)))
                items.append(("operator", (a, b), res))
        reports.append(_collect(items))
    return tuple(reports)


def is_residual_free(dfm: TruncatedDeformation, through_order: int | None = None) -> bool:
    upto = dfm.order if through_order is None else through_order
    return all(r.is_empty for r in deformation_residuals(dfm)[: upto + 1])


def infinitesimal(dfm: TruncatedDeformation) -> ConeCochain:
    """The pair (mu_1, K_1) as a degree-2 cone cochain; always a cocycle.

    Requires the deformation equations to hold through order 1.
    """
    if dfm.order < 1:
        raise NotADeformation("order >= 1 required for an infinitesimal")
    if not is_residual_free(dfm, 1):
        raise NotADeformation("deformation equations fail at order <= 1")
    cone = ConeCochain(dfm.mu[1], operator_cochain(dfm.kk[1]))
    rep = regular_rep(dfm.algebra, dfm.ctx)
    result = classify_cochain(dfm.algebra, dfm.ctx, rep, cone)
    assert result.cocycle, "infinitesimal of a deformation must be a cocycle"
    return cone


@dataclass(frozen=True)
class FormalIso:
    """Coefficients psi_0..psi_N of an invertible formal map; psi_0 = id."""

    psi: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "psi", tuple(self.psi))
        if not self.psi:
            raise DimensionMismatch("formal isomorphism needs at least psi_0")
        d = self.psi[0].rows
        if self.psi[0] != Matrix.identity(d):
            raise DimensionMismatch("psi_0 must be the identity")
        for p in self.psi:
            if p.rows != d or p.cols != d:
                raise DimensionMismatch("all psi_i must be d x d")

    @property
    def order(self) -> int:
        return len(self.psi) - 1

    def inverse_coefficients(self) -> tuple[Matrix, ...]:
        """Neumann-series coefficients of psi_t^{-1} modulo t^{N+1}."""
        d = self.psi[0].rows
        inv = [Matrix.identity(d)]
        for n in range(1, len(self.psi)):
            acc = Matrix.zeros(d, d)
            for a in range(1, n + 1):
                acc = acc + self.psi[a] @ inv[n - a]
            inv.append(-acc)
        return tuple(inv)


def apply_formal_iso(
    dfm: TruncatedDeformation, iso: FormalIso
) -> TruncatedDeformation:
    """Pull the deformation back through the iso, modulo t^(N+1).

    The result D' satisfies psi_t o mu'_t = mu_t o (psi_t x psi_t) and
    psi_t o K'_t = K_t o psi_t, i.e. the iso maps D' to D.  Residual
    freeness is preserved and asserted.
    """
    if iso.order != dfm.order:
        raise OrderMismatch(
            f"iso order {iso.order} differs from deformation order {dfm.order}"
        )
    d = dfm.algebra.dim
    inv = iso.inverse_coefficients()
    kron_cache = {}

    def kr(c, e):
        if (c, e) not in kron_cache:
            kron_cache[(c, e)] = kron(iso.psi[c], iso.psi[e])
        return kron_cache[(c, e)]

    new_mu = []
    new_kk = []
    for n in range(dfm.order + 1):
        mu_vals = Matrix.zeros(d, d * d)
        for a in range(n + 1):
            for b in range(n + 1 - a):
                rest = n - a - b
                base = inv[a] @ dfm.mu[b].values
                for c in range(rest + 1):
                    e = rest - c
                    mu_vals = mu_vals + base @ kr(c, e)
        new_mu.append(Cochain(2, mu_vals))
        k_val = Matrix.zeros(d, d)
        for a in range(n + 1):
            for b in range(n + 1 - a):
                c = n - a - b
                k_val = k_val + inv[a] @ dfm.kk[b] @ iso.psi[c]
        new_kk.append(k_val)
    out = TruncatedDeformation(dfm.algebra, dfm.ctx, tuple(new_mu), tuple(new_kk))
    if is_residual_free(dfm):
        assert is_residual_free(out), "gauge transform must preserve the equations"
    return out


def equivalence_residuals(
    d1: TruncatedDeformation, d2: TruncatedDeformation, iso: FormalIso
) -> tuple[DefectReport, ...]:
    """Order-by-order residuals of the equivalence equations for iso: D2 -> D1,
    i.e. psi_t o mu_{2,t} = mu_{1,t} o (psi_t x psi_t) and
    psi_t o K_{2,t} = K_{1,t} o psi_t."""
    if d1.order != d2.order or iso.order != d1.order:
        raise OrderMismatch("deformations and iso must share one truncation order")
    d = d1.algebra.dim
    reports = []
    for n in range(d1.order + 1):
        items = []
        lhs_mu = Matrix.zeros(d, d * d)
        for a in range(n + 1):
            lhs_mu = lhs_mu + iso.psi[a] @ d2.mu[n - a].values
        rhs_mu = Matrix.zeros(d, d * d)
        for a in range(n + 1):
            for b in range(n + 1 - a):
                c = n - a - b
                rhs_mu = rhs_mu + d1.mu[a].values @ kron(iso.psi[b], iso.psi[c])
        diff = lhs_mu - rhs_mu
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                items.append(("bracket", (i, j), diff.column((i - 1) * d + (j - 1))))
        lhs_k = Matrix.zeros(d, d)
        rhs_k = Matrix.zeros(d, d)
        for a in range(n + 1):
            lhs_k = lhs_k + iso.psi[a] @ d2.kk[n - a]
            rhs_k = rhs_k + d1.kk[a] @ iso.psi[n - a]
        diffk = lhs_k - rhs_k
        for i in range(1, d + 1):
            items.append(("operator", (i,), diffk.column(i - 1)))
        reports.append(_collect(items))
    return tuple(reports)


def gauge_step(
    dfm: TruncatedDeformation, trivializer: ConeCochain
) -> TruncatedDeformation:
    """Kill the order-1 coefficients using a degree-1 cone cochain whose
    coboundary is the infinitesimal.

    The trivializer (psi_1', x) must satisfy d(psi_1', x) = (mu_1, K_1);
    the gauge psi_t = id - psi_1 t with psi_1 = psi_1' + delta(x) then
    produces a deformation with mu'_1 = 0 and K'_1 = 0 exactly, leaving
    higher orders alone.
    """
    if dfm.order < 1:
        raise OrderMismatch("nothing to gauge below order 1")
    if not is_residual_free(dfm, 1):
        raise NotADeformation("deformation equations fail at order <= 1")
    if trivializer.degree != 1:
        raise DimensionMismatch("trivializer must be a degree-1 cone cochain")
    rep = regular_rep(dfm.algebra, dfm.ctx)
    image = apply_cone(dfm.algebra, dfm.ctx, rep, trivializer)
    target = ConeCochain(dfm.mu[1], operator_cochain(dfm.kk[1]))
    if image.leib != target.leib or image.op != target.op:
        raise NotACoboundaryWitness("coboundary of trivializer is not the infinitesimal")
    psi1 = trivializer.leib.values + apply_delta(dfm.algebra, rep, trivializer.op).values
    d = dfm.algebra.dim
    psis = [Matrix.identity(d), -psi1] + [Matrix.zeros(d, d)] * (dfm.order - 1)
    out = apply_formal_iso(dfm, FormalIso(tuple(psis)))
    assert out.mu[1].is_zero() and out.kk[1].is_zero()
    return out

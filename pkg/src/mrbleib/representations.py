"""Representations of Leibniz and modified Rota-Baxter Leibniz algebras.

A representation bundles the two action families rho_left, rho_right (one
matrix per algebra basis vector) with an operator on the module.  Two
different weighted compatibility laws appear for the module operator:

* Rota-Baxter modules put the weight term inside the operator:
  ``rhoL(Tx) T_V v = T_V(rhoL(Tx) v + rhoL(x) T_V v + w rhoL(x) v)``
* modified Rota-Baxter modules put it outside:
  ``rhoL(Kx) K_V v = K_V(rhoL(Kx) v + rhoL(x) K_V v) + w rhoL(x) v``

Conflating the two is the classic implementation bug, so each law has its
own checker and the tests pin an instance on which they disagree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    DefectReport,
    LeibnizAlgebra,
    OperatorContext,
    _collect,
    leibniz_defect,
    mrb_defect,
    rb_defect,
    derived_algebra,
    rb_to_mrb,
)
from .errors import (
    DimensionMismatch,
    NotLeibniz,
    NotMRBRepresentation,
    NotModifiedRotaBaxter,
    NotRBRepresentation,
)
from .linalg import Matrix


@dataclass(frozen=True)
class Representation:
    """Module data (V, rho_left, rho_right, k_v) over an algebra."""

    dim_v: int
    rho_left: tuple[Matrix, ...]
    rho_right: tuple[Matrix, ...]
    k_v: Matrix

    def __post_init__(self):
        object.__setattr__(self, "rho_left", tuple(self.rho_left))
        object.__setattr__(self, "rho_right", tuple(self.rho_right))
        for m in (*self.rho_left, *self.rho_right, self.k_v):
            if m.rows != self.dim_v or m.cols != self.dim_v:
                raise DimensionMismatch("action matrices must be dim_v x dim_v")

    def left_of(self, alg: LeibnizAlgebra, vec) -> Matrix:
        """rho_left extended linearly to a coordinate vector of the algebra."""
        return _combine(self.rho_left, vec, self.dim_v)

    def right_of(self, alg: LeibnizAlgebra, vec) -> Matrix:
        return _combine(self.rho_right, vec, self.dim_v)


def _combine(mats, vec, dim_v: int) -> Matrix:
    out = Matrix.zeros(dim_v, dim_v)
    for a, c in enumerate(vec):
        if c:
            out = out + mats[a].scale(c)
    return out


def _shape_check(alg: LeibnizAlgebra, rep: Representation):
    if len(rep.rho_left) != alg.dim or len(rep.rho_right) != alg.dim:
        raise DimensionMismatch(
            f"representation lists have length {len(rep.rho_left)}, algebra dim {alg.dim}"
        )


def _matrix_defects(section, where, m: Matrix):
    """Flatten a residual matrix into one defect entry (row-major)."""
    return (section, where, tuple(e for row in range(m.rows) for e in m.row(row)))


def rep_defect(alg: LeibnizAlgebra, rep: Representation) -> DefectReport:
    """Residuals of the three Leibniz module axioms on all basis pairs.

    Sections: "left-left", "left-right", "right-right", plus the derived
    diagnostic "right-absorb" (rhoR(y)(rhoL(x) + rhoR(x)) = 0), which is the
    difference of the last two axioms and pinpoints which pair fails.
    """
    _shape_check(alg, rep)
    d = alg.dim
    items = []
    for i in range(1, d + 1):
        li = rep.rho_left[i - 1]
        ri = rep.rho_right[i - 1]
        for j in range(1, d + 1):
            lj = rep.rho_left[j - 1]
            rj = rep.rho_right[j - 1]
            bracket = alg.bracket_basis(i, j)
            lb = _combine(rep.rho_left, bracket, rep.dim_v)
            rb = _combine(rep.rho_right, bracket, rep.dim_v)
            items.append(_matrix_defects("left-left", (i, j), lb - (li @ lj - lj @ li)))
            items.append(_matrix_defects("left-right", (i, j), rb - (li @ rj - rj @ li)))
            items.append(_matrix_defects("right-right", (i, j), rb - (li @ rj + rj @ ri)))
            items.append(_matrix_defects("right-absorb", (i, j), rj @ (li + ri)))
    return _collect(items)


def mrb_rep_defect(
    alg: LeibnizAlgebra, ctx: OperatorContext, rep: Representation
) -> DefectReport:
    """Residuals of the modified Rota-Baxter module law, per basis vector."""
    _shape_check(alg, rep)
    if ctx.operator.rows != alg.dim:
        raise DimensionMismatch("operator does not match algebra dimension")
    kv, w = rep.k_v, ctx.weight
    items = []
    for i in range(1, alg.dim + 1):
        kx = ctx.operator.column(i - 1)
        for section, mats in (("left", rep.rho_left), ("right", rep.rho_right)):
            rho_kx = _combine(mats, kx, rep.dim_v)
            rho_x = mats[i - 1]
            res = rho_kx @ kv - kv @ (rho_kx + rho_x @ kv) - rho_x.scale(w)
            items.append(_matrix_defects(section, (i,), res))
    return _collect(items)


def rb_rep_defect(
    alg: LeibnizAlgebra, ctx: OperatorContext, rep: Representation
) -> DefectReport:
    """Residuals of the (plain) Rota-Baxter module law, weight term inside."""
    _shape_check(alg, rep)
    if ctx.operator.rows != alg.dim:
        raise DimensionMismatch("operator does not match algebra dimension")
    tv, w = rep.k_v, ctx.weight
    items = []
    for i in range(1, alg.dim + 1):
        tx = ctx.operator.column(i - 1)
        for section, mats in (("left", rep.rho_left), ("right", rep.rho_right)):
            rho_tx = _combine(mats, tx, rep.dim_v)
            rho_x = mats[i - 1]
            res = rho_tx @ tv - tv @ (rho_tx + rho_x @ tv + rho_x.scale(w))
            items.append(_matrix_defects(section, (i,), res))
    return _collect(items)


def regular_rep(
    alg: LeibnizAlgebra, ctx: OperatorContext | None = None
) -> Representation:
    """The algebra acting on itself by left and right bracket multiplication.

    The module operator is the algebra operator when a context is given,
    else zero (only Leibniz-level consumers may omit the context).
    """
    d = alg.dim
    kv = ctx.operator if ctx is not None else Matrix.zeros(d, d)
    return Representation(
        dim_v=d,
        rho_left=tuple(alg.left_mul(i) for i in range(1, d + 1)),
        rho_right=tuple(alg.right_mul(i) for i in range(1, d + 1)),
        k_v=kv,
    )


def rb_rep_to_mrb_rep(
    alg: LeibnizAlgebra, rb_ctx: OperatorContext, rep: Representation
) -> Representation:
    """Module transform matching the operator transform T -> 2T + w*id.

    The input operator slot holds T_V; the output holds 2 T_V + w*id and is
    a module over the transformed algebra of weight -w**2.
    """
    if not rb_rep_defect(alg, rb_ctx, rep).is_empty:
        raise NotRBRepresentation("input fails the Rota-Baxter module law")
    kv = rep.k_v.scale(2) + Matrix.identity(rep.dim_v).scale(rb_ctx.weight)
    out = Representation(rep.dim_v, rep.rho_left, rep.rho_right, kv)
    mrb_ctx = rb_to_mrb(alg, rb_ctx)
    assert mrb_rep_defect(alg, mrb_ctx, out).is_empty
    return out


def induced_rep(
    alg: LeibnizAlgebra, ctx: OperatorContext, rep: Representation
) -> Representation:
    """The module over the derived algebra: rho_K(x) = rho(Kx) - K_V rho(x).

    Checked to be a genuine module over the derived bracket, and a modified
    Rota-Baxter module for the same operator and weight.
    """
    if not mrb_defect(alg, ctx).is_empty:
        raise NotModifiedRotaBaxter("operator fails the modified identity")
    if not mrb_rep_defect(alg, ctx, rep).is_empty:
        raise NotMRBRepresentation("module fails the modified module law")
    kv = rep.k_v
    left = []
    right = []
    for i in range(1, alg.dim + 1):
        kx = ctx.operator.column(i - 1)
        left.append(_combine(rep.rho_left, kx, rep.dim_v) - kv @ rep.rho_left[i - 1])
        right.append(_combine(rep.rho_right, kx, rep.dim_v) - kv @ rep.rho_right[i - 1])
    out = Representation(rep.dim_v, tuple(left), tuple(right), kv)
    derived = derived_algebra(alg, ctx)
    assert rep_defect(derived, out).is_empty
    assert mrb_rep_defect(derived, ctx, out).is_empty
    return out


def semidirect(
    alg: LeibnizAlgebra, ctx: OperatorContext, rep: Representation
) -> tuple[LeibnizAlgebra, OperatorContext]:
    """Semidirect product on g + V with operator K + K_V, same weight.

    Basis order: algebra basis first, then module basis.  The mixed
    brackets are [x, v] = rhoL(x)v and [v, y] = rhoR(y)v; V is abelian.
    """
    if not leibniz_defect(alg).is_empty:
        raise NotLeibniz("base bracket fails the Leibniz identity")
    if not mrb_defect(alg, ctx).is_empty:
        raise NotModifiedRotaBaxter("operator fails the modified identity")
    if not rep_defect(alg, rep).is_empty:
        raise NotMRBRepresentation("module fails the Leibniz module axioms")
    if not mrb_rep_defect(alg, ctx, rep).is_empty:
        raise NotMRBRepresentation("module fails the modified module law")
    if rep.dim_v == 0:
        return alg, ctx
    d, m = alg.dim, rep.dim_v
    entries = [(i, j, k, c) for (i, j, k), c in alg.entries]
    for i in range(1, d + 1):
        for b in range(1, m + 1):
            for a in range(1, m + 1):
                c = rep.rho_left[i - 1][a - 1, b - 1]
                if c:
                    entries.append((i, d + b, d + a, c))
                c = rep.rho_right[i - 1][a - 1, b - 1]
                if c:
                    entries.append((d + b, i, d + a, c))
    total = LeibnizAlgebra(d + m, entries)
    op = OperatorContext(Matrix.diag_blocks(ctx.operator, rep.k_v), ctx.weight)
    assert leibniz_defect(total).is_empty
    assert mrb_defect(total, op).is_empty
    return total, op

"""Leibniz algebras by structure constants and their (modified) Rota-Baxter
operators.

An algebra is stored as a sparse list of constants ``(i, j, k, c)`` meaning
the bracket ``[e_i, e_j]`` contains ``c * e_k`` (indices 1-based).  Nothing
is validated at construction time: loading a broken candidate and asking
*which* identity fails where is a first-class use case, so every identity
has a defect checker returning the full list of nonzero residuals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    NotLeibniz,
    NotModifiedRotaBaxter,
    NotRotaBaxter,
)
from .linalg import Matrix, ZERO, vec_add, vec_is_zero, vec_scale, vec_sub


@dataclass(frozen=True)
class Defect:
    """One failed identity instance: which check, at which basis tuple, off by what."""

    section: str
    where: tuple[int, ...]
    residual: tuple[Fraction, ...]


@dataclass(frozen=True)
class DefectReport:
    entries: tuple[Defect, ...]

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def section(self, name: str) -> tuple[Defect, ...]:
        return tuple(d for d in self.entries if d.section == name)

    def __len__(self) -> int:
        return len(self.entries)


def _collect(items) -> DefectReport:
    return DefectReport(tuple(
        Defect(section, where, tuple(res))
        for section, where, res in items
        if not vec_is_zero(res)
    ))


class LeibnizAlgebra:
    """Finite-dimensional algebra given by sparse structure constants."""

    __slots__ = ("dim", "entries", "_table")

    def __init__(self, dim: int, entries=()):
        seen = {}
        for i, j, k, c in entries:
            for idx in (i, j, k):
                if not 1 <= idx <= dim:
                    raise DimensionMismatch(
                        f"structure constant index {idx} out of range 1..{dim}"
                    )
            key = (i, j, k)
            if key in seen:
                raise DimensionMismatch(f"duplicate structure constant key {key}")
            c = Fraction(c)
            if c:
                seen[key] = c
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "entries", tuple(sorted(seen.items())))
        table = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), c in self.entries:
            table[i - 1][j - 1][k - 1] = c
        object.__setattr__(
            self, "_table",
            tuple(tuple(tuple(v) for v in row) for row in table),
        )

    def __setattr__(self, name, value):
        raise AttributeError("LeibnizAlgebra is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, LeibnizAlgebra)
            and self.dim == other.dim
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.dim, self.entries))

    def __repr__(self):
        body = ", ".join(f"[{i},{j}]+={c}*e{k}" for (i, j, k), c in self.entries)
        return f"LeibnizAlgebra(dim={self.dim}, {body or 'abelian'})"

    def bracket_basis(self, i: int, j: int) -> tuple[Fraction, ...]:
        """Coordinates of [e_i, e_j] (1-based arguments)."""
        return self._table[i - 1][j - 1]

    def bracket(self, u, v) -> tuple[Fraction, ...]:
        """Bilinear extension of the bracket to coordinate vectors."""
        out = [ZERO] * self.dim
        for a, ua in enumerate(u):
            if not ua:
                continue
            row = self._table[a]
            for b, vb in enumerate(v):
                if not vb:
                    continue
                cell = row[b]
                s = ua * vb
                for k, c in enumerate(cell):
                    if c:
                        out[k] += s * c
        return tuple(out)

    def left_mul(self, i: int) -> Matrix:
        """Matrix of x -> [e_i, x]."""
        return Matrix.from_cols(
            [self.bracket_basis(i, j) for j in range(1, self.dim + 1)], self.dim
        )

    def right_mul(self, i: int) -> Matrix:
        """Matrix of x -> [x, e_i]."""
        return Matrix.from_cols(
            [self.bracket_basis(j, i) for j in range(1, self.dim + 1)], self.dim
        )


@dataclass(frozen=True)
class OperatorContext:
    """A linear operator on the algebra together with its weight."""

    operator: Matrix
    weight: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))
        if self.operator.rows != self.operator.cols:
            raise DimensionMismatch("operator matrix must be square")


def _check_dims(alg: LeibnizAlgebra, ctx: OperatorContext):
    if ctx.operator.rows != alg.dim:
        raise DimensionMismatch(
            f"operator is {ctx.operator.rows}x{ctx.operator.cols}, algebra dim {alg.dim}"
        )


def leibniz_defect(alg: LeibnizAlgebra) -> DefectReport:
    """Residuals of [x,[y,z]] - [[x,y],z] - [y,[x,z]] on all basis triples."""
    d = alg.dim
    items = []
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            for k in range(1, d + 1):
                ei = alg.bracket_basis(j, k)
                lhs = alg.bracket(_basis(d, i), ei)
                r1 = alg.bracket(alg.bracket_basis(i, j), _basis(d, k))
                r2 = alg.bracket(_basis(d, j), alg.bracket_basis(i, k))
                items.append(("leibniz", (i, j, k), vec_sub(vec_sub(lhs, r1), r2)))
    return _collect(items)


def _basis(dim: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) if t == i - 1 else ZERO for t in range(dim))


def mrb_defect(alg: LeibnizAlgebra, ctx: OperatorContext) -> DefectReport:
    """Residuals of [Kx,Ky] - K([Kx,y] + [x,Ky]) - w[x,y] on basis pairs."""
    _check_dims(alg, ctx)
    k, w = ctx.operator, ctx.weight
    d = alg.dim
    kcols = [k.column(j) for j in range(d)]
    items = []
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            ki, kj = kcols[i - 1], kcols[j - 1]
            lhs = alg.bracket(ki, kj)
            mid = vec_add(alg.bracket(ki, _basis(d, j)), alg.bracket(_basis(d, i), kj))
            res = vec_sub(vec_sub(lhs, k.apply(mid)), vec_scale(w, alg.bracket_basis(i, j)))
            items.append(("mrb", (i, j), res))
    return _collect(items)


def rb_defect(alg: LeibnizAlgebra, ctx: OperatorContext) -> DefectReport:
    """Residuals of [Tx,Ty] - T([Tx,y] + [x,Ty] + w[x,y]) on basis pairs."""
    _check_dims(alg, ctx)
    t, w = ctx.operator, ctx.weight
    d = alg.dim
    tcols = [t.column(j) for j in range(d)]
    items = []
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            ti, tj = tcols[i - 1], tcols[j - 1]
            lhs = alg.bracket(ti, tj)
            mid = vec_add(alg.bracket(ti, _basis(d, j)), alg.bracket(_basis(d, i), tj))
            mid = vec_add(mid, vec_scale(w, alg.bracket_basis(i, j)))
            items.append(("rb", (i, j), vec_sub(lhs, t.apply(mid))))
    return _collect(items)


def rb_to_mrb(alg: LeibnizAlgebra, ctx: OperatorContext) -> OperatorContext:
    """Turn a Rota-Baxter operator T of weight w into the modified operator
    2T + w*id of weight -w**2."""
    report = rb_defect(alg, ctx)
    if not report.is_empty:
        raise NotRotaBaxter(f"{len(report)} Rota-Baxter residuals")
    k = ctx.operator.scale(2) + Matrix.identity(alg.dim).scale(ctx.weight)
    out = OperatorContext(k, -ctx.weight ** 2)
    check = mrb_defect(alg, out)
    assert check.is_empty, "transformed operator must satisfy the modified identity"
    return out


def derived_algebra(alg: LeibnizAlgebra, ctx: OperatorContext) -> LeibnizAlgebra:
    """The algebra with bracket [x,y]_K = [Kx,y] + [x,Ky].

    Requires a genuine modified Rota-Baxter structure; the result is again
    Leibniz and carries the same operator and weight, both of which are
    re-checked before returning.
    """
    if not leibniz_defect(alg).is_empty:
        raise NotLeibniz("base bracket fails the Leibniz identity")
    if not mrb_defect(alg, ctx).is_empty:
        raise NotModifiedRotaBaxter("operator fails the modified identity")
    d = alg.dim
    k = ctx.operator
    entries = []
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            vec = vec_add(
                alg.bracket(k.column(i - 1), _basis(d, j)),
                alg.bracket(_basis(d, i), k.column(j - 1)),
            )
            for t, c in enumerate(vec):
                if c:
                    entries.append((i, j, t + 1, c))
    out = LeibnizAlgebra(d, entries)
    assert leibniz_defect(out).is_empty
    assert mrb_defect(out, ctx).is_empty
    return out


def morphism_defect(
    alg1: LeibnizAlgebra,
    ctx1: OperatorContext,
    alg2: LeibnizAlgebra,
    ctx2: OperatorContext,
    phi: Matrix,
) -> DefectReport:
    """Residuals of phi[x,y] - [phi x, phi y] and phi K - K' phi."""
    if phi.cols != alg1.dim or phi.rows != alg2.dim:
        raise DimensionMismatch(
            f"morphism matrix must be {alg2.dim}x{alg1.dim}, got {phi.rows}x{phi.cols}"
        )
    _check_dims(alg1, ctx1)
    _check_dims(alg2, ctx2)
    items = []
    d = alg1.dim
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            lhs = phi.apply(alg1.bracket_basis(i, j))
            rhs = alg2.bracket(phi.column(i - 1), phi.column(j - 1))
            items.append(("bracket", (i, j), vec_sub(lhs, rhs)))
    diff = phi @ ctx1.operator - ctx2.operator @ phi
    for i in range(1, d + 1):
        items.append(("operator", (i,), diff.column(i - 1)))
    return _collect(items)


def grid_search_operators(
    alg: LeibnizAlgebra,
    weight,
    grid,
    mask: dict[tuple[int, int], Fraction] | None = None,
    budget: int = 10 ** 7,
) -> list[Matrix]:
    """All matrices with entries from ``grid`` (mask entries pinned) that are
    modified Rota-Baxter operators of the given weight.

    Candidates are enumerated with free positions in row-major order, each
    running over the grid in the order given, so the output order is the
    lexicographic one and is reproducible.
    """
    weight = Fraction(weight)
    grid = [Fraction(g) for g in grid]
    d = alg.dim
    mask = {k: Fraction(v) for k, v in (mask or {}).items()}
    for (i, j) in mask:
        if not (1 <= i <= d and 1 <= j <= d):
            raise DimensionMismatch(f"mask entry {(i, j)} out of range")
    free = [(i, j) for i in range(1, d + 1) for j in range(1, d + 1) if (i, j) not in mask]
    total = len(grid) ** len(free) if free else 1
    if total > budget:
        raise BudgetExceeded(f"{total} candidates exceed budget {budget}")
    solutions = []
    for values in itertools.product(grid, repeat=len(free)):
        entries = dict(mask)
        entries.update(zip(free, values))
        candidate = Matrix(
            [[entries[(i, j)] for j in range(1, d + 1)] for i in range(1, d + 1)]
        )
        if mrb_defect(alg, OperatorContext(candidate, weight)).is_empty:
            solutions.append(candidate)
    return solutions

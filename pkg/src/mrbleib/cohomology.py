"""Cochain complexes and cohomology of modified Rota-Baxter Leibniz algebras.

Three complexes are built as explicit matrices over the rationals:

* the Loday-Pirashvili complex (delta) of the algebra with module
  coefficients,
* the operator complex (partial), which is the same construction applied
  to the derived bracket [x,y]_K = [Kx,y] + [x,Ky] with the induced module
  rho_K(x) = rho(Kx) - K_V rho(x),
* the mapping cone of the comparison map Phi between them, shifted so that
  degree n holds a pair (degree-n cochain, degree-(n-1) operator cochain).

A degree-n cochain is a (dim V) x (dim g)^n matrix; column order follows
the flat multi-index with the leftmost argument most significant.  Every
differential matrix is assembled by evaluating the defining formula on
basis cochains, column by column, so each formula stays a small testable
evaluator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import LeibnizAlgebra, OperatorContext, derived_algebra
from .errors import BudgetExceeded, DimensionMismatch
from .linalg import Matrix, ZERO, ONE, flat_index, rank, kernel_basis, rref, solve_with_free_zero, unflatten, vec_add, vec_is_zero, vec_scale
from .representations import Representation, induced_rep

# Weight convention for the comparison map Phi, degree n >= 1:
#
#   Phi(f)(x_1..x_n) = sum over subsets S of {1..n} of
#       w(|S|) * (K_V after f, only when |S| is odd) * f(a_1..a_n),
#   a_i = x_i for i in S, a_i = K x_i otherwise,
#   w(0) = 1,  w(r odd) = -(-weight)^((r-1)/2),  w(r even) = (-weight)^(r/2).
#
# Even-size subsets carry no K_V factor.  These coefficients are the unique
# ones compatible with the degree-2 form
#   Phi(f)(x,y) = f(Kx,Ky) - K_V(f(Kx,y) + f(x,Ky)) - weight*f(x,y)
# (which must turn the bracket cochain into the defining operator identity)
# and they are certified by the chain-map test battery
# Phi . delta = partial . Phi in degrees 0..3.
PHI_CONVENTION = (
    "phi subset weights: w(0)=1, w(odd r)=-(-weight)^((r-1)/2) with module "
    "operator post-composed, w(even r)=(-weight)^(r/2) with no operator factor"
)


def phi_weight(r: int, weight: Fraction) -> Fraction:
    if r == 0:
        return ONE
    if r % 2:
        return -((-weight) ** ((r - 1) // 2))
    return (-weight) ** (r // 2)


@dataclass(frozen=True)
class Cochain:
    """Element of Hom(g^(tensor n), V) in flat coordinates."""

    degree: int
    values: Matrix

    def __post_init__(self):
        if self.degree < 0:
            raise DimensionMismatch("cochain degree must be >= 0")

    @property
    def dim_v(self) -> int:
        return self.values.rows

    def space_dim(self, alg_dim: int) -> int:
        return self.values.rows * alg_dim ** self.degree

    def __add__(self, other: "Cochain") -> "Cochain":
        if self.degree != other.degree:
            raise DimensionMismatch("cochain degrees differ")
        return Cochain(self.degree, self.values + other.values)

    def __sub__(self, other: "Cochain") -> "Cochain":
        if self.degree != other.degree:
            raise DimensionMismatch("cochain degrees differ")
        return Cochain(self.degree, self.values - other.values)

    def scale(self, s) -> "Cochain":
        return Cochain(self.degree, self.values.scale(s))

    def __neg__(self) -> "Cochain":
        return Cochain(self.degree, -self.values)

    def is_zero(self) -> bool:
        return self.values.is_zero()


def zero_cochain(dim_v: int, alg_dim: int, degree: int) -> Cochain:
    return Cochain(degree, Matrix.zeros(dim_v, alg_dim ** degree))


def cochain_from_entries(dim_v: int, alg_dim: int, degree: int, entries) -> Cochain:
    """Build a cochain from sparse entries ((i_1..i_n), v, coeff), 1-based."""
    grid = [[ZERO] * (alg_dim ** degree) for _ in range(dim_v)]
    for indices, v, c in entries:
        grid[v - 1][flat_index(indices, alg_dim)] += Fraction(c)
    return Cochain(degree, Matrix(grid))


def bracket_cochain(alg: LeibnizAlgebra) -> Cochain:
    """The bracket itself as a degree-2 cochain with values in the algebra."""
    return cochain_from_entries(
        alg.dim, alg.dim, 2, (((i, j), k, c) for (i, j, k), c in alg.entries)
    )


def operator_cochain(op: Matrix) -> Cochain:
    """A linear map as a degree-1 cochain."""
    return Cochain(1, op)


def cochain_to_vec(c: Cochain) -> tuple[Fraction, ...]:
    """Flatten columnwise: position = flat_multi_index * dim_v + row."""
    vals = c.values
    return tuple(
        vals[v, m] for m in range(vals.cols) for v in range(vals.rows)
    )


def vec_to_cochain(vec, dim_v: int, alg_dim: int, degree: int) -> Cochain:
    vec = list(vec)
    cols = alg_dim ** degree
    if len(vec) != dim_v * cols:
        raise DimensionMismatch("vector length does not match cochain space")
    grid = [[vec[m * dim_v + v] for m in range(cols)] for v in range(dim_v)]
    return Cochain(degree, Matrix(grid))


def _columns(c: Cochain):
    vals = c.values
    return [vals.column(m) for m in range(vals.cols)]


def apply_delta(alg: LeibnizAlgebra, rep: Representation, f: Cochain) -> Cochain:
    """The Loday-Pirashvili coboundary of f, degree n -> n + 1.

    (delta f)(x_1..x_{n+1}) =
        sum_{i<=n} (-1)^(i+1) rhoL(x_i) f(..no x_i..)
      + (-1)^(n+1) rhoR(x_{n+1}) f(x_1..x_n)
      + sum_{i<j} (-1)^i f(..no x_i.., [x_i,x_j] in slot j-1, ..).

    At n = 0 only the middle term survives: (delta v)(x) = -rhoR(x) v.
    """
    n = f.degree
    d = alg.dim
    dim_v = rep.dim_v
    fcols = _columns(f)
    out = []
    sign_mid = ONE if n % 2 else -ONE  # (-1)^(n+1)
    for y in itertools.product(range(1, d + 1), repeat=n + 1):
        acc = [ZERO] * dim_v
        for i in range(1, n + 1):
            col = fcols[flat_index(y[: i - 1] + y[i:], d)]
            if not vec_is_zero(col):
                image = rep.rho_left[y[i - 1] - 1].apply(col)
                if i % 2:
                    acc = [a + b for a, b in zip(acc, image)]
                else:
                    acc = [a - b for a, b in zip(acc, image)]
        col = fcols[flat_index(y[:n], d)]
        if not vec_is_zero(col):
            image = rep.rho_right[y[n] - 1].apply(col)
            acc = [a + sign_mid * b for a, b in zip(acc, image)]
        for i in range(1, n + 2):
            for j in range(i + 1, n + 2):
                bracket = alg.bracket_basis(y[i - 1], y[j - 1])
                if vec_is_zero(bracket):
                    continue
                base = list(y[: i - 1] + y[i:])
                sign = -ONE if i % 2 else ONE
                for k, c in enumerate(bracket):
                    if c:
                        base[j - 2] = k + 1
                        col = fcols[flat_index(base, d)]
                        if not vec_is_zero(col):
                            s = sign * c
                            acc = [a + s * b for a, b in zip(acc, col)]
        out.append(tuple(acc))
    return Cochain(n + 1, Matrix.from_cols(out, dim_v))


def _basis_cochains(dim_v: int, alg_dim: int, degree: int):
    """Yield the basis cochains in flat vector order."""
    cols = alg_dim ** degree
    for m in range(cols):
        for v in range(dim_v):
            grid = [[ZERO] * cols for _ in range(dim_v)]
            grid[v][m] = ONE
            yield Cochain(degree, Matrix(grid))


def _matrix_of(op, dim_v: int, alg_dim: int, degree: int) -> Matrix:
    """Assemble the matrix of a cochain operation by evaluating on basis cochains."""
    cols = [cochain_to_vec(op(c)) for c in _basis_cochains(dim_v, alg_dim, degree)]
    out_rows = len(cols[0]) if cols else 0
    return Matrix.from_cols(cols, out_rows)


def delta_matrix(alg: LeibnizAlgebra, rep: Representation, n: int) -> Matrix:
    """Matrix of the degree-n Loday-Pirashvili coboundary."""
    if n < 0:
        raise DimensionMismatch("degree must be >= 0")
    return _matrix_of(
        lambda c: apply_delta(alg, rep, c), rep.dim_v, alg.dim, n
    )


def operator_complex_pair(
    alg: LeibnizAlgebra, ctx: OperatorContext, rep: Representation
) -> tuple[LeibnizAlgebra, Representation]:
    """The (derived algebra, induced module) pair underlying the operator complex."""
    return derived_algebra(alg, ctx), induced_rep(alg, ctx, rep)


def apply_partial(
    alg: LeibnizAlgebra, ctx: OperatorContext, rep: Representation, f: Cochain
) -> Cochain:
    derived, ind = operator_complex_pair(alg, ctx, rep)
    return apply_delta(derived, ind, f)


def partial_matrix(
    alg: LeibnizAlgebra, ctx: OperatorContext, rep: Representation, n: int
) -> Matrix:
    """Matrix of the degree-n differential of the operator complex."""
    derived, ind = operator_complex_pair(alg, ctx, rep)
    return delta_matrix(derived, ind, n)


def apply_phi(
    alg: LeibnizAlgebra, ctx: OperatorContext, rep: Representation, f: Cochain
) -> Cochain:
    """The comparison map into the operator complex, degree preserved.

    See PHI_CONVENTION for the subset weights; degree 0 is the identity.
    """
    n = f.degree
    if n == 0:
        return f
    d = alg.dim
    dim_v = rep.dim_v
    k = ctx.operator
    kv = rep.k_v
    fcols = _columns(f)
    knz = [
        [(r + 1, k[r, j]) for r in range(d) if k[r, j]]
        for j in range(d)
    ]
    weights = [phi_weight(r, ctx.weight) for r in range(n + 1)]
    out = []
    for y in itertools.product(range(1, d + 1), repeat=n):
        acc = [ZERO] * dim_v
        for mask in range(1 << n):
            r = bin(mask).count("1")
            w = weights[r]
            if not w:
                continue
            choices = []
            dead = False
            for slot in range(n):
                if mask >> slot & 1:
                    choices.append(((y[slot], ONE),))
                else:
                    opts = knz[y[slot] - 1]
                    if not opts:
                        dead = True
                        break
                    choices.append(tuple(opts))
            if dead:
                continue
            term = [ZERO] * dim_v
            hit = False
            for combo in itertools.product(*choices):
                coeff = ONE
                pos = 0
                for idx, val in combo:
                    coeff *= val
                    pos = pos * d + (idx - 1)
                col = fcols[pos]
                if not vec_is_zero(col):
                    hit = True
                    term = [a + coeff * b for a, b in zip(term, col)]
            if not hit:
                continue
            if r % 2:
                term = kv.apply(term)
            acc = [a + w * b for a, b in zip(acc, term)]
        out.append(tuple(acc))
    return Cochain(n, Matrix.from_cols(out, dim_v))


def phi_matrix(
    alg: LeibnizAlgebra, ctx: OperatorContext, rep: Representation, n: int
) -> Matrix:
    """Matrix of the degree-n comparison map (identity at degree 0)."""
    if n == 0:
        return Matrix.identity(rep.dim_v)
    return _matrix_of(
        lambda c: apply_phi(alg, ctx, rep, c), rep.dim_v, alg.dim, n
    )


@dataclass(frozen=True)
class ConeCochain:
    """Degree-n element of the cone complex: a pair (leib, op) with
    deg(op) = deg(leib) - 1; the op half is absent in degree 0."""

    leib: Cochain
    op: Cochain | None

    def __post_init__(self):
        if self.leib.degree == 0:
            if self.op is not None:
                raise DimensionMismatch("degree-0 cone cochain has no operator half")
        elif self.op is None or self.op.degree != self.leib.degree - 1:
            raise DimensionMismatch("cone halves must have degrees n and n-1")

    @property
    def degree(self) -> int:
        return self.leib.degree

    def is_zero(self) -> bool:
        return self.leib.is_zero() and (self.op is None or self.op.is_zero())


def zero_cone_cochain(dim_v: int, alg_dim: int, degree: int) -> ConeCochain:
    if degree == 0:
        return ConeCochain(zero_cochain(dim_v, alg_dim, 0), None)
    return ConeCochain(
        zero_cochain(dim_v, alg_dim, degree),
        zero_cochain(dim_v, alg_dim, degree - 1),
    )


def cone_to_vec(c: ConeCochain) -> tuple[Fraction, ...]:
    if c.op is None:
        return cochain_to_vec(c.leib)
    return cochain_to_vec(c.leib) + cochain_to_vec(c.op)


def vec_to_cone(vec, dim_v: int, alg_dim: int, degree: int) -> ConeCochain:
    vec = list(vec)
    if degree == 0:
        return ConeCochain(vec_to_cochain(vec, dim_v, alg_dim, 0), None)
    split = dim_v * alg_dim ** degree
    return ConeCochain(
        vec_to_cochain(vec[:split], dim_v, alg_dim, degree),
        vec_to_cochain(vec[split:], dim_v, alg_dim, degree - 1),
    )


def cone_space_dim(dim_v: int, alg_dim: int, degree: int) -> int:
    if degree == 0:
        return dim_v
    return dim_v * alg_dim ** degree + dim_v * alg_dim ** (degree - 1)


def apply_cone(
    alg: LeibnizAlgebra, ctx: OperatorContext, rep: Representation, c: ConeCochain
) -> ConeCochain:
    """Cone differential d(f, g) = (delta f, -partial g - phi f)."""
    derived, ind = operator_complex_pair(alg, ctx, rep)
    top = apply_delta(alg, rep, c.leib)
    bottom = -apply_phi(alg, ctx, rep, c.leib)
    if c.op is not None:
        bottom = bottom - apply_delta(derived, ind, c.op)
    return ConeCochain(top, bottom)


def cone_differential(
    alg: LeibnizAlgebra, ctx: OperatorContext, rep: Representation, n: int
) -> Matrix:
    """Block matrix of the degree-n cone differential.

    Degree 0 sends f to (delta f, -f); degree n >= 1 sends (f, g) to
    (delta f, -partial g - phi f).
    """
    d = alg.dim
    dim_v = rep.dim_v
    if n == 0:
        top = delta_matrix(alg, rep, 0)
        return top.vstack(-phi_matrix(alg, ctx, rep, 0))
    derived, ind = operator_complex_pair(alg, ctx, rep)
    delta_n = delta_matrix(alg, rep, n)
    phi_n = phi_matrix(alg, ctx, rep, n)
    partial_prev = delta_matrix(derived, ind, n - 1)
    leib_dim = dim_v * d ** n
    op_dim = dim_v * d ** (n - 1)
    top = delta_n.hstack(Matrix.zeros(delta_n.rows, op_dim))
    bottom = (-phi_n).hstack(-partial_prev)
    return top.vstack(bottom)


@dataclass(frozen=True)
class ComplexTable:
    """Per-degree dimensions for one cochain complex."""

    cochain_dims: tuple[int, ...]
    differential_ranks: tuple[int, ...]
    cohomology_dims: tuple[int, ...]


@dataclass(frozen=True)
class CohomologyReport:
    max_degree: int
    leibniz: ComplexTable
    operator: ComplexTable | None
    cone: ComplexTable | None
    representatives: dict | None = None
    convention: str = PHI_CONVENTION


def _table_from_matrices(dims, mats) -> ComplexTable:
    ranks = tuple(rank(m) for m in mats)
    homs = []
    for n in range(len(dims)):
        prev = ranks[n - 1] if n else 0
        h = dims[n] - ranks[n] - prev
        assert h >= 0
        homs.append(h)
    return ComplexTable(tuple(dims), ranks, tuple(homs))


def _representatives(dims, mats):
    """Kernel-basis vectors of each differential that are independent of the
    image of the previous one; canonical given the canonical kernel basis."""
    reps = []
    for n in range(len(dims)):
        kern = kernel_basis(mats[n])
        if n == 0:
            image_cols = []
        else:
            prev = mats[n - 1]
            image_cols = [prev.column(j) for j in range(prev.cols)]
        chosen = []
        base = Matrix.from_cols(image_cols, dims[n]) if image_cols else Matrix.zeros(dims[n], 0)
        current = rank(base)
        stack = base
        for v in kern:
            candidate = stack.hstack(Matrix.from_cols([v], dims[n]))
            r = rank(candidate)
            if r > current:
                chosen.append(v)
                stack, current = candidate, r
        reps.append(tuple(chosen))
    return tuple(reps)


def cohomology_dimensions(
    alg: LeibnizAlgebra,
    rep: Representation,
    ctx: OperatorContext | None = None,
    max_degree: int = 3,
    budget: int = 10 ** 7,
    with_representatives: bool = False,
) -> CohomologyReport:
    """Exact cohomology dimensions for degrees 0..max_degree.

    With an operator context all three complexes are reported, otherwise
    only the Loday-Pirashvili one.  The budget caps the cell count of the
    largest cochain space touched (degree max_degree + 1).
    """
    d = alg.dim
    dim_v = rep.dim_v
    for n in range(max_degree + 2):
        cells = dim_v * d ** n
        if cells > budget:
            raise BudgetExceeded(
                f"degree-{n} cochain space has {cells} cells, budget {budget}"
            )
    degrees = range(max_degree + 1)
    leib_dims = [dim_v * d ** n for n in degrees]
    leib_mats = [delta_matrix(alg, rep, n) for n in degrees]
    reps_out = {} if with_representatives else None
    leib_table = _table_from_matrices(leib_dims, leib_mats)
    if with_representatives:
        reps_out["leibniz"] = _representatives(leib_dims, leib_mats)
    if ctx is None:
        return CohomologyReport(max_degree, leib_table, None, None, reps_out)
    derived, ind = operator_complex_pair(alg, ctx, rep)
    op_mats = [delta_matrix(derived, ind, n) for n in degrees]
    op_table = _table_from_matrices(leib_dims, op_mats)
    cone_dims = [cone_space_dim(dim_v, d, n) for n in degrees]
    cone_mats = [cone_differential(alg, ctx, rep, n) for n in degrees]
    cone_table = _table_from_matrices(cone_dims, cone_mats)
    if with_representatives:
        reps_out["operator"] = _representatives(leib_dims, op_mats)
        reps_out["cone"] = _representatives(cone_dims, cone_mats)
    return CohomologyReport(max_degree, leib_table, op_table, cone_table, reps_out)


@dataclass(frozen=True)
class ClassifyResult:
    cocycle: bool
    coboundary: bool
    witness: ConeCochain | None


def classify_cochain(
    alg: LeibnizAlgebra,
    ctx: OperatorContext,
    rep: Representation,
    c: ConeCochain,
) -> ClassifyResult:
    """Decide cocycle (d c = 0) and coboundary (c in the image of d) status.

    When c is a coboundary the canonical preimage (free variables zero) is
    returned as witness.
    """
    n = c.degree
    cocycle = apply_cone(alg, ctx, rep, c).is_zero()
    if n == 0:
        return ClassifyResult(cocycle, c.is_zero(), None)
    target = Matrix.from_cols([cone_to_vec(c)], cone_space_dim(rep.dim_v, alg.dim, n))
    d_prev = cone_differential(alg, ctx, rep, n - 1)
    sol = solve_with_free_zero(d_prev, target)
    if sol is None:
        return ClassifyResult(cocycle, False, None)
    witness = vec_to_cone(sol.column(0), rep.dim_v, alg.dim, n - 1)
    return ClassifyResult(cocycle, True, witness)

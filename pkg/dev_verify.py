# Development scratch: verify chain map + pin oracle values. Not shipped.
from fractions import Fraction as F

from mrbleib.algebra import (
    LeibnizAlgebra, OperatorContext, leibniz_defect, mrb_defect, grid_search_operators,
)
from mrbleib.linalg import Matrix, rank, kernel_basis
from mrbleib.representations import regular_rep, mrb_rep_defect, rep_defect, Representation
from mrbleib.cohomology import (
    delta_matrix, partial_matrix, phi_matrix, cone_differential,
    cohomology_dimensions,
)

g3 = LeibnizAlgebra(3, [(1, 1, 3, 1)])
k0 = OperatorContext(Matrix([[1,0,0],[0,0,0],[0,0,0]]), F(1))
print("g3 leibniz:", leibniz_defect(g3).is_empty)
print("g3+k0 mrb:", mrb_defect(g3, k0).is_empty)

# dim-2 Lie [e1,e2]=e2=-[e2,e1]
aff = LeibnizAlgebra(2, [(1,2,2,1),(2,1,2,-1)])
print("aff leibniz:", leibniz_defect(aff).is_empty)

# hand-checked delta kernel dims on (G3, regular)
r3 = regular_rep(g3, k0)
d0 = delta_matrix(g3, r3, 0)
d1 = delta_matrix(g3, r3, 1)
print("G3 delta0 kernel dim (expect 2):", len(kernel_basis(d0)), "rank (expect 1):", rank(d0))
print("G3 delta1 kernel dim (expect 5):", len(kernel_basis(d1)))

fixtures = []
fixtures.append(("g3/k0/l1/regular", g3, k0, regular_rep(g3, k0)))
kz = OperatorContext(Matrix([[0,0,0],[1,0,1],[0,1,1]]), F(0))
print("g3+kz mrb (weight 0):", mrb_defect(g3, kz).is_empty)
fixtures.append(("g3/kz/l0/regular", g3, kz, regular_rep(g3, kz)))
# trivial 1-dim module over g3/k0: rho = 0, K_V = 2
triv = Representation(1, (Matrix.zeros(1,1),)*3, (Matrix.zeros(1,1),)*3, Matrix([[2]]))
print("g3/k0 trivial module ok:", rep_defect(g3, triv).is_empty, mrb_rep_defect(g3, k0, triv).is_empty)
fixtures.append(("g3/k0/l1/trivial", g3, k0, triv))
# dim-1 zero algebra, K = 2, lambda = 3
z1 = LeibnizAlgebra(1, [])
zctx = OperatorContext(Matrix([[2]]), F(3))
print("z1 mrb:", mrb_defect(z1, zctx).is_empty)
fixtures.append(("z1/k2/l3/regular", z1, zctx, regular_rep(z1, zctx)))
# aff with identity, lambda=-1
ictx = OperatorContext(Matrix.identity(2), F(-1))
fixtures.append(("aff/id/l-1/regular", aff, ictx, regular_rep(aff, ictx)))

for name, alg, ctx, rep in fixtures:
    for n in range(0, 4):
        lhs = phi_matrix(alg, ctx, rep, n + 1) @ delta_matrix(alg, rep, n)
        rhs = partial_matrix(alg, ctx, rep, n) @ phi_matrix(alg, ctx, rep, n)
        ok = lhs == rhs
        print(f"chain map {name} n={n}: {ok}")
        if not ok:
            diff = lhs - rhs
            nz = [(i, j, diff[i, j]) for i in range(diff.rows) for j in range(diff.cols) if diff[i, j]]
            print("  residual entries:", nz[:10], "...")
            break

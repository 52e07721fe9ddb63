# Development scratch: find an H^2_cone = 0 fixture; pin dimension tables.
from fractions import Fraction as F

from mrbleib.algebra import (
    LeibnizAlgebra, OperatorContext, leibniz_defect, mrb_defect, grid_search_operators,
)
from mrbleib.linalg import Matrix
from mrbleib.representations import regular_rep
from mrbleib.cohomology import cohomology_dimensions

g3 = LeibnizAlgebra(3, [(1, 1, 3, 1)])
aff = LeibnizAlgebra(2, [(1,2,2,1),(2,1,2,-1)])
sl2 = LeibnizAlgebra(3, [
    (1,2,3,1),(2,1,3,-1),   # [e,f]=h
    (3,1,1,2),(1,3,1,-2),   # [h,e]=2e
    (3,2,2,-2),(2,3,2,2),   # [h,f]=-2f
])
z1 = LeibnizAlgebra(1, [])
print("sl2 leibniz:", leibniz_defect(sl2).is_empty)

def show(name, alg, ctx, maxdeg=2):
    rep = regular_rep(alg, ctx)
    r = cohomology_dimensions(alg, rep, ctx, max_degree=maxdeg)
    print(f"{name}: leib H {r.leibniz.cohomology_dims}  op H {r.operator.cohomology_dims}  cone H {r.cone.cohomology_dims}")

show("z1 K=0 l=0   ", z1, OperatorContext(Matrix([[0]]), F(0)))
show("g3 k0 l=1    ", g3, OperatorContext(Matrix([[1,0,0],[0,0,0],[0,0,0]]), F(1)))
show("aff id l=-1  ", aff, OperatorContext(Matrix.identity(2), F(-1)))
show("sl2 id l=-1  ", sl2, OperatorContext(Matrix.identity(3), F(-1)))
show("aff 0 l=0    ", aff, OperatorContext(Matrix.zeros(2,2), F(0)))
show("sl2 0 l=0    ", sl2, OperatorContext(Matrix.zeros(3,3), F(0)))
show("aff 2id l=-4 ", aff, OperatorContext(Matrix.identity(2).scale(2), F(-4)))

# grid search weight-0 and weight-1 MRB operators on aff over {-1,0,1}
sols0 = grid_search_operators(aff, F(0), [F(-1), F(0), F(1)])
sols1 = grid_search_operators(aff, F(1), [F(-1), F(0), F(1)])
print("aff weight0 ops over {-1,0,1}:", len(sols0))
print("aff weight1 ops over {-1,0,1}:", len(sols1))
for s in sols1[:8]:
    print("  w1:", s)
for s in sols0[:12]:
    print("  w0:", s)

#!/usr/bin/env python3
"""A guided tour: certify a liftable field, run the unfolding pipeline, and
compare with the tangency module of the discriminant.

Run as `python docs/walkthrough.py`; every step asserts what it prints.
"""

from germlift import (
    Divisor,
    MapGerm,
    ModuleElement,
    Submodule,
    Unfolding,
    VarSet,
    VectorField,
    derlog_tangent,
    discriminant,
    is_liftable,
    lift_from_unfolding,
    module_equal,
    parse_poly,
)

# The plane germ f(x, y) = (x^4 + xy, y) and its one-parameter stable
# unfolding F(x, y, z) = (x^4 + xy + z x^2, y, z).
srcf = VarSet(["x", "y"], weights=[1, 3])
tgtf = VarSet(["X", "Y"], weights=[4, 3])
srcF = VarSet(["x", "y", "z"], weights=[1, 3, 2])
tgtF = VarSet(["X", "Y", "Z"], weights=[4, 3, 2])

f = MapGerm(srcf, tgtf, [parse_poly("x^4 + y*x", srcf), parse_poly("y", srcf)])
F = MapGerm(srcF, tgtF, [parse_poly("x^4 + y*x + z*x^2", srcF),
                         parse_poly("y", srcF), parse_poly("z", srcF)])
U = Unfolding(F, ["z"], ["Z"], f)

# 1. A field on the unfolded target, certified liftable with a witness.
eta = VectorField(tgtF, [parse_poly(s, tgtF) for s in ("4*X", "3*Y", "2*Z")])
res = is_liftable(F, eta)
assert res.certified
print("witness for the weighted Euler field:", res.certificate.xi)

# 2. The three generators of the unfolding's liftable fields.
rows = [
    ("4*X", "3*Y", "2*Z"),
    ("-9*Y^2 - 16*X*Z", "12*Y*Z", "48*X + 4*Z^2"),
    ("Y*Z", "-8*X - 2*Z^2", "6*Y"),
]
lift_F = Submodule(tgtF, 3, [
    ModuleElement(tgtF, [parse_poly(s, tgtF) for s in row]) for row in rows
])

# 3. Push them through the pipeline: intersect with the fields that restrict
#    to the parameter zero section, restrict, prune, certify.
lift_f = lift_from_unfolding(U, lift_F)
print("liftable fields of the core germ:")
for g in lift_f.generators:
    print("   ", g)

# 4. Same module, other route: tangency fields of the discriminant of f.
D = discriminant(f)
print("discriminant of f:", D.h)
T = derlog_tangent(D)
assert module_equal(lift_f, T.module)
print("pipeline output equals the tangency module of the discriminant.")

# 5. The unfolding's own discriminant is the quartic swallowtail section.
DF = discriminant(F)
assert DF.h.is_weighted_homogeneous()
print("discriminant of F is quasihomogeneous of degree",
      DF.h.weighted_degrees()[0])

from fractions import Fraction

import pytest

from germlift.errors import InputNotLiftable, StructureError
from germlift.exprio import parse_poly
from germlift.germs import MapGerm, Unfolding, VectorField
from germlift.groebner import module_equal
from germlift.lifting import (
    LiftCertificate,
    is_liftable,
    lift_from_unfolding,
    origin_span,
    prune,
    restrict_field,
    restrictable_fields,
    tau_tilde,
)
from germlift.modules import ModuleElement, Submodule
from germlift.poly import Polynomial, VarSet

from oracles import membership_bounded


def _field(ring, *texts):
    return VectorField(ring, [parse_poly(t, ring) for t in texts])


def test_fold_direction_certified():
    src = VarSet(["x", "lam"])
    tgt = VarSet(["X", "Lam"])
    g = MapGerm(src, tgt, [parse_poly("x", src), parse_poly("lam^2", src)])
    res = is_liftable(g, _field(tgt, "0", "Lam"))
    assert res.certified
    assert res.certificate.xi == _field(src, "0", "1/2*lam")


def _H2():
    src2 = VarSet(["x", "y"], [4, 1])
    tgt3 = VarSet(["X", "Y", "Z"], [4, 3, 5])
    return MapGerm(src2, tgt3, [parse_poly(t, src2) for t in
                                ("x", "y^3", "y^5 + x*y")])


def test_H2_euler_generator_certified():
    H2 = _H2()
    res = is_liftable(H2, _field(H2.target, "4*X", "3*Y", "5*Z"))
    assert res.certified
    assert res.certificate.xi == _field(H2.source, "4*x", "y")


def test_H2_constant_direction_obstructed_conclusively():
    H2 = _H2()
    res = is_liftable(H2, _field(H2.target, "0", "0", "1"))
    assert not res.certified
    assert res.conclusive
    assert not res.obstruction.is_zero
    # the degree-bounded oracle agrees there is no polynomial witness
    from germlift.germs import tf_generators, wf_apply

    rhs = wf_apply(_field(H2.target, "0", "0", "1"), H2)
    assert membership_bounded(rhs, list(tf_generators(H2).generators), 7) is None


def test_certificate_identity_enforced():
    H2 = _H2()
    with pytest.raises(StructureError):
        LiftCertificate(H2, _field(H2.target, "4*X", "3*Y", "5*Z"),
                        _field(H2.source, "x", "y"))


def _unfolding_H2():
    H2 = _H2()
    src4 = VarSet(["u1", "v1", "v2", "y"])
    tgt5 = VarSet(["U1", "V1", "V2", "W1", "W2"])
    F2 = MapGerm(src4, tgt5, [parse_poly(t, src4) for t in
                              ("u1", "v1", "v2", "y^3 + u1*y",
                               "v1*y + v2*y^2 + y^5 + u1*y^3")])
    return Unfolding(F2, ["u1", "v2"], ["U1", "V2"], H2)


def test_constraint_module_p3_r2():
    U = _unfolding_H2()
    G = restrictable_fields(U)
    got = {str(g) for g in G.generators}
    assert got == {
        "(0, 1, 0, 0, 0)", "(0, 0, 0, 1, 0)", "(0, 0, 0, 0, 1)",
        "(U1, 0, 0, 0, 0)", "(V2, 0, 0, 0, 0)",
        "(0, 0, U1, 0, 0)", "(0, 0, V2, 0, 0)",
    }


def test_constraint_module_trailing_r1():
    src = VarSet(["x", "lam"])
    tgt = VarSet(["X", "Lam"])
    f = MapGerm(VarSet(["x"]), VarSet(["X"]), [parse_poly("x^2", VarSet(["x"]))])
    total = MapGerm(src, tgt, [parse_poly("x^2", src), parse_poly("lam", src)])
    U = Unfolding(total, ["lam"], ["Lam"], f)
    got = {str(g) for g in restrictable_fields(U).generators}
    assert got == {"(1, 0)", "(0, Lam)"}


def test_constraint_module_r0_is_free():
    f = _H2()
    U = Unfolding(f, [], [], f)
    got = restrictable_fields(U)
    assert len(got.generators) == 3
    assert all(str(g).count("1") == 1 for g in got.generators)


def test_restrict_field_eta_ke():
    U = _unfolding_H2()
    tgt5 = U.total.target
    eta_ke = _field(tgt5, "2*U1", "2*V1", "V2 - 2*W1", "3*W1", "3*W2")
    got = restrict_field(eta_ke, U)
    assert got == _field(U.core.target, "2*X", "3*Y", "3*Z")


def test_restrict_field_kills_parameter_only_generators():
    U = _unfolding_H2()
    param_only = ("(U1, 0, 0, 0, 0)", "(V2, 0, 0, 0, 0)",
                  "(0, 0, U1, 0, 0)", "(0, 0, V2, 0, 0)")
    for g in restrictable_fields(U).generators:
        if str(g) in param_only:
            assert restrict_field(VectorField.from_element(g), U).is_zero


def test_pipeline_trivial_fold_unfolding():
    # Lift of the fold x -> x^2 from its trivial 1-parameter unfolding;
    # the expected module <X d/dX> was derived by a degree-bounded solve of
    # eta(x^2) = 2x*xi(x)
    srcc = VarSet(["x"])
    tgtc = VarSet(["X"])
    f = MapGerm(srcc, tgtc, [parse_poly("x^2", srcc)])
    src = VarSet(["x", "lam"])
    tgt = VarSet(["X", "Lam"])
    total = MapGerm(src, tgt, [parse_poly("x^2", src), parse_poly("lam", src)])
    U = Unfolding(total, ["lam"], ["Lam"], f)
    liftF = Submodule(tgt, 2, [
        ModuleElement(tgt, [parse_poly("X", tgt), Polynomial.zero(tgt)]),
        ModuleElement(tgt, [Polynomial.zero(tgt), Polynomial.const(tgt, 1)]),
    ])
    out = lift_from_unfolding(U, liftF)
    expected = Submodule(tgtc, 1, [ModuleElement(tgtc, [parse_poly("X", tgtc)])])
    assert module_equal(out, expected)


def test_pipeline_r0_returns_input():
    f = _H2()
    U = Unfolding(f, [], [], f)
    liftF = Submodule(f.target, 3, [
        _field(f.target, "4*X", "3*Y", "5*Z").as_element()])
    out = lift_from_unfolding(U, liftF)
    assert out is liftF


def test_pipeline_rejects_nonliftable_input():
    srcc = VarSet(["x"])
    tgtc = VarSet(["X"])
    f = MapGerm(srcc, tgtc, [parse_poly("x^2", srcc)])
    src = VarSet(["x", "lam"])
    tgt = VarSet(["X", "Lam"])
    total = MapGerm(src, tgt, [parse_poly("x^2", src), parse_poly("lam", src)])
    U = Unfolding(total, ["lam"], ["Lam"], f)
    bad = Submodule(tgt, 2, [ModuleElement(tgt, [Polynomial.const(tgt, 1),
                                                 Polynomial.zero(tgt)])])
    with pytest.raises(InputNotLiftable):
        lift_from_unfolding(U, bad)


def test_prune_examples(xy):
    x = parse_poly("x", xy)
    M = Submodule.ideal(xy, [x, parse_poly("x^2", xy)])
    assert [str(g.entries[0]) for g in prune(M).generators] == ["x"]


def test_tau_zero_for_positive_degree_fields():
    tgt3 = VarSet(["X", "Y", "Z"], [4, 3, 5])
    gens = [
        _field(tgt3, "4*X", "3*Y", "5*Z"),
        _field(tgt3, "X^2 + 5*Y*Z", "-3*X*Y", "5*Y^3"),
    ]
    M = Submodule(tgt3, 3, [g.as_element() for g in gens])
    assert origin_span(M) == []


def test_tau_contains_translation_direction():
    tgt = VarSet(["X", "Lam"])
    M = Submodule(tgt, 2, [
        ModuleElement(tgt, [Polynomial.zero(tgt), Polynomial.const(tgt, 1)]),
        ModuleElement(tgt, [parse_poly("X", tgt), Polynomial.zero(tgt)]),
    ])
    span = tau_tilde(M)
    assert (Fraction(0), Fraction(1)) in [tuple(r) for r in span]


def test_tau_empty_module():
    tgt = VarSet(["X"])
    assert origin_span(Submodule(tgt, 1, [])) == []


def test_intersection_output_satisfies_parameter_conditions():
    # every element of the computed crossing at k=2 has its parameter
    # components vanishing once the parameters are set to zero; this is the
    # membership definition, checked here independently of the kernel
    U = _unfolding_H2()
    tgt5 = U.total.target
    table = [
        ("2*U1", "2*V1", "V2 - 2*W1", "3*W1", "3*W2"),
        ("4*U1^2", "-3*U1*V1 + 3*V2*W1 + 3*W1^2",
         "-5*U1*V2 - 11*U1*W1 - 3*W2", "6*U1*W1", "-3*V1*W1 + 2*U1*W2"),
        ("6*U1", "-3*V1", "-6*V2 - 15*W1", "9*W1", "0"),
        ("9*V1", "-6*V2^2 - 12*V2*W1 - 6*W1^2",
         "-9*W2 - 3*U1*V2 - 3*U1*W1", "9*W2 + 3*U1*V2 + 3*U1*W1",
         "3*V1*V2 + 3*V1*W1"),
        ("0", "-3*U1*V2 - 3*U1*W1 - 3*W2", "3*V1", "0",
         "-3*V2*W1 - 3*W1^2"),
        ("-9*W1", "2*U1*V2 + 2*U1*W1", "-3*V1 - 2*U1^2", "2*U1^2",
         "6*V2*W1 + 6*W1^2 + 2*U1*V1"),
        ("-9*W2 - 3*U1*V2 - 3*U1*W1", "-3*V1*V2 - 3*V1*W1", "-3*U1*V1",
         "3*U1*V1", "6*V2*W2 + 6*W1*W2 + 3*V1^2"),
    ]
    liftF2 = Submodule(tgt5, 5, [_field(tgt5, *row).as_element()
                                 for row in table])
    crossed = liftF2.intersect(restrictable_fields(U))
    zero_params = {"U1": Polynomial.zero(tgt5), "V2": Polynomial.zero(tgt5)}
    for g in crossed.generators:
        for idx in U.target_param_indices():
            assert g.entries[idx].substitute(zero_params).is_zero

import pytest

from germlift.errors import (
    DescentResidueError,
    NotDivisible,
    NotEquidimensional,
    StructureError,
)
from germlift.exprio import parse_poly
from germlift.derlog import (
    AugmentationSpec,
    Divisor,
    augment_field,
    augment_field_div,
    augment_map,
    augment_unfolding,
    derlog_strict,
    derlog_tangent,
    descend_field,
    discriminant,
    euler_field,
    last_component_ideal,
    poly_gcd,
    squarefree_part,
    tangency_quotient,
)
from germlift.germs import MapGerm, Unfolding, VectorField
from germlift.groebner import module_equal
from germlift.modules import ModuleElement, Submodule
from germlift.poly import Polynomial, VarSet, exact_divide, integer_normalize


def _field(ring, *texts):
    return VectorField(ring, [parse_poly(t, ring) for t in texts])


def test_derlog_strict_rotation():
    R = VarSet(["X", "Y"])
    D = Divisor(R, parse_poly("X^2 + Y^2", R))
    S = derlog_strict(D)
    expected = Submodule(R, 2, [_field(R, "Y", "-X").as_element()])
    assert module_equal(S, expected)


def test_derlog_strict_torus_direction():
    R = VarSet(["X", "Y"])
    D = Divisor(R, parse_poly("X*Y", R))
    S = derlog_strict(D)
    assert S.contains(_field(R, "X", "-Y").as_element())


def test_derlog_tangent_smooth_hypersurface():
    R = VarSet(["X", "Y"])
    D = Divisor(R, parse_poly("X", R))
    T = derlog_tangent(D)
    expected = Submodule(R, 2, [
        _field(R, "X", "0").as_element(),
        _field(R, "0", "1").as_element(),
    ])
    assert module_equal(T.module, expected)
    for g, a in zip(T.module.generators, T.quotients):
        eta = VectorField(R, g.entries)
        assert eta.apply_to(D.h) == a * D.h


def test_euler_field_weights():
    R = VarSet(["X", "Y", "Z"], [4, 3, 2])
    e = euler_field(R)
    assert e == _field(R, "4*X", "3*Y", "2*Z")
    single = VarSet(["X"], [1])
    assert euler_field(single) == _field(single, "X")


def test_discriminant_fold():
    src = VarSet(["x"])
    tgt = VarSet(["X"])
    f = MapGerm(src, tgt, [parse_poly("x^2", src)])
    D = discriminant(f)
    assert D.h == parse_poly("X", tgt)


def test_discriminant_requires_equidimensional():
    src = VarSet(["x"])
    tgt = VarSet(["X", "Y"])
    f = MapGerm(src, tgt, [parse_poly("x", src), parse_poly("x^2", src)])
    with pytest.raises(NotEquidimensional):
        discriminant(f)


def test_poly_gcd_and_squarefree(xy):
    a = parse_poly("x^2*y", xy)
    b = parse_poly("x*y^2", xy)
    assert poly_gcd(a, b) == parse_poly("x*y", xy)
    h = parse_poly("x + y", xy) ** 2 * parse_poly("x - y", xy)
    sf = squarefree_part(h)
    assert sf == integer_normalize(parse_poly("x + y", xy) * parse_poly("x - y", xy))


QUARTIC_H = ("256*X^3 + 27*Y^4 + 144*X*Y^2*Z + 128*X^2*Z^2"
             " + 4*Y^2*Z^3 + 16*X*Z^4")


def _quartic_setup():
    srcf = VarSet(["x", "y"], [1, 3])
    tgt2 = VarSet(["X", "Y"], [4, 3])
    srcF = VarSet(["x", "y", "z"], [1, 3, 2])
    tgtF = VarSet(["X", "Y", "Z"], [4, 3, 2])
    f = MapGerm(srcf, tgt2, [parse_poly("x^4 + y*x", srcf), parse_poly("y", srcf)])
    F = MapGerm(srcF, tgtF, [parse_poly("x^4 + y*x + z*x^2", srcF),
                             parse_poly("y", srcF), parse_poly("z", srcF)])
    U = Unfolding(F, ["z"], ["Z"], f)
    H = Divisor(tgtF, parse_poly(QUARTIC_H, tgtF), (4, 3, 2))
    return f, F, U, H


def _etas(tgtF):
    return (
        _field(tgtF, "4*X", "3*Y", "2*Z"),
        _field(tgtF, "-9*Y^2 - 16*X*Z", "12*Y*Z", "48*X + 4*Z^2"),
        _field(tgtF, "Y*Z", "-8*X - 2*Z^2", "6*Y"),
    )


def test_augment_map_and_unfolding():
    f, F, U, H = _quartic_setup()
    spec2 = AugmentationSpec(f, U, 2)
    A2 = augment_map(spec2)
    assert A2.components[0] == parse_poly("x^4 + y*x + z^2*x^2", F.source)
    spec1 = AugmentationSpec(f, U, 1)
    assert augment_map(spec1) == F
    AF = augment_unfolding(spec2)
    assert AF.restrict() == A2
    assert AF.total.components[0] == parse_poly(
        "x^4 + y*x + z^2*x^2 + mu*x^2", AF.total.source
    )


def test_augmentation_spec_validated():
    f, F, U, H = _quartic_setup()
    with pytest.raises(StructureError):
        AugmentationSpec(f, U, 0)


def test_tilde_reproduces_table_k2():
    f, F, U, H = _quartic_setup()
    eta1, eta2, eta3 = _etas(F.target)
    k = 2
    tgtA = VarSet(["X", "Y", "Z"], [4 * k, 3 * k, 2])
    got = augment_field(eta2, k, into=tgtA)
    assert got == _field(tgtA, "-18*Y^2*Z - 32*X*Z^3", "24*Y*Z^3", "48*X + 4*Z^4")


def test_tilde_k1_scales_by_one():
    f, F, U, H = _quartic_setup()
    _, eta2, _ = _etas(F.target)
    assert augment_field(eta2, 1) == eta2


def test_tilde_div_euler_and_xi():
    f, F, U, H = _quartic_setup()
    eta1, eta2, eta3 = _etas(F.target)
    for k in (2, 3):
        tgtA = VarSet(["X", "Y", "Z"], [4 * k, 3 * k, 2])
        e_tilde = augment_field_div(eta1.scale(k), k, into=tgtA)
        assert e_tilde == _field(tgtA, f"{4*k}*X", f"{3*k}*Y", "2*Z")
        xi = eta2.scale(parse_poly(f"{k}*Y", F.target)) - eta3.scale(
            parse_poly(f"{8*k}*X", F.target))
        got = augment_field_div(xi, k, into=tgtA)
        want = _field(
            tgtA,
            f"-{9*k}*Y^3 - {24*k}*X*Y*Z^{k}",
            f"{64*k}*X^2 + {12*k}*Y^2*Z^{k} + {16*k}*X*Z^{2*k}",
            f"4*Y*Z^{k+1}",
        )
        assert got == want


def test_tilde_div_requires_vanishing_last_entry():
    f, F, U, H = _quartic_setup()
    _, eta2, _ = _etas(F.target)
    with pytest.raises(NotDivisible):
        augment_field_div(eta2, 2)  # last entry 48X + 4Z^2 survives at Z=0


def test_transform_quotient_divisible_by_derivative():
    # eta tangent to H implies the transform is tangent to h with quotient
    # divisible by the derivative k*Z^(k-1)
    f, F, U, H = _quartic_setup()
    for k in (2, 3):
        tgtA = VarSet(["X", "Y", "Z"], [4 * k, 3 * k, 2])
        h = H.h.substitute({"Z": parse_poly(f"Z^{k}", tgtA)}, into=tgtA)
        for eta in _etas(F.target):
            tilde = augment_field(eta, k, into=tgtA)
            q = tangency_quotient(tilde, h)
            assert q is not None
            if not q.is_zero:
                exact_divide(q, parse_poly(f"{k}*Z^{k-1}", tgtA))


def test_pi2_ideal_from_table():
    f, F, U, H = _quartic_setup()
    M = Submodule(F.target, 3, [e.as_element() for e in _etas(F.target)])
    I = last_component_ideal(M)
    short = I.ring
    expected = Submodule.ideal(short, [parse_poly("48*X", short),
                                       parse_poly("6*Y", short)])
    assert module_equal(I, expected)
    xy_ideal = Submodule.ideal(short, [parse_poly("X", short),
                                       parse_poly("Y", short)])
    assert module_equal(I, xy_ideal)


def test_pi2_zero_module():
    R = VarSet(["X", "Y", "Z"])
    M = Submodule(R, 3, [])
    assert last_component_ideal(M).generators == ()


def test_descend_roundtrip_tilde_image():
    f, F, U, H = _quartic_setup()
    _, eta2, _ = _etas(F.target)
    k = 2
    tgtA = VarSet(["X", "Y", "Z"], [8, 6, 2])
    res = descend_field(augment_field(eta2, k, into=tgtA), k, H)
    assert res.field == eta2
    assert res.discarded.is_zero


def test_descend_recovers_annihilator_with_divisible_last_entry():
    f, F, U, H = _quartic_setup()
    _, eta2, eta3 = _etas(F.target)
    k = 2
    tgtA = VarSet(["X", "Y", "Z"], [8, 6, 2])
    xi = eta2.scale(parse_poly("2*Y", F.target)) - eta3.scale(
        parse_poly("16*X", F.target))
    res = descend_field(augment_field_div(xi, k, into=tgtA), k, H)
    assert res.field == VectorField(F.target, xi.entries)
    # strict annihilation: the recovered field kills H
    assert res.quotient.is_zero
    exact_divide(res.field.entries[-1], parse_poly("Z", F.target))


def test_descend_k1_identity():
    f, F, U, H = _quartic_setup()
    eta1, eta2, eta3 = _etas(F.target)
    for eta in (eta1, eta2, eta3):
        res = descend_field(eta, 1, H)
        assert res.field == eta
        assert res.discarded.is_zero


def test_descend_rejects_non_tangent_input():
    f, F, U, H = _quartic_setup()
    bad = _field(F.target, "1", "0", "0")
    with pytest.raises(DescentResidueError):
        descend_field(bad, 2, H)


def test_divisor_invariants():
    R = VarSet(["X", "Y"])
    with pytest.raises(StructureError):
        Divisor(R, Polynomial.const(R, 1))
    with pytest.raises(StructureError):
        Divisor(R, parse_poly("X + Y^2", R), (1, 1))


def test_strict_part_complements_euler():
    # tangency module = <Euler> + strict annihilator for the quasihomogeneous
    # quartic discriminant
    _, F, _, H = _quartic_setup()
    T = derlog_tangent(H)
    S = derlog_strict(H)
    e = euler_field(H.ring)
    assert e.apply_to(H.h) == H.h * 12
    combined = Submodule(H.ring, 3,
                         list(S.generators) + [e.as_element()])
    assert module_equal(combined, T.module)


def test_transform_quotients_on_computed_tangency_module():
    # every generator of the computed tangency module transforms to a field
    # tangent to the substituted equation, quotient divisible by k*Z^(k-1)
    _, F, _, H = _quartic_setup()
    computed = derlog_tangent(H)
    for k in (2, 3):
        tgtA = VarSet(["X", "Y", "Z"], [4 * k, 3 * k, 2])
        h = H.h.substitute({"Z": parse_poly(f"Z^{k}", tgtA)}, into=tgtA)
        for g in computed.module.generators:
            tilde = augment_field(VectorField(H.ring, g.entries), k, into=tgtA)
            q = tangency_quotient(tilde, h)
            assert q is not None
            if not q.is_zero:
                exact_divide(q, parse_poly(f"{k}*Z^{k-1}", tgtA))


def test_euler_property_on_all_fixture_divisors():
    from germlift.manifest import load_manifest
    from conftest import fixture_path

    m = load_manifest(fixture_path("augment.manifest.json"))
    for name, D in sorted(m.divisors.items()):
        w = D.effective_weights()
        assert w is not None, name
        (d,) = D.h.weighted_degrees(w)
        assert euler_field(D.ring, w).apply_to(D.h) == D.h * d


def test_image_tangency_module_matches_certified_generators():
    # fully independent route: eliminate the source variables to get the
    # defining equation of the image of (x, y) -> (x, y^3, y^(3k-1) + x*y),
    # then take its tangency module; it must equal the module of the five
    # certified generators that the unfolding pipeline also produces
    from germlift.groebner import eliminate
    from germlift.poly import integer_normalize

    def Yp(n):
        return f"Y^{n}" if n >= 1 else "1"

    for k in (2, 3, 4, 5):
        big = VarSet(["y", "X", "Y", "Z"])
        image_ideal = Submodule.ideal(big, [
            parse_poly("Y - y^3", big),
            parse_poly(f"Z - y^{3*k-1} - X*y", big),
        ])
        gens = eliminate(image_ideal, ["y"]).ideal_generators()
        assert len(gens) == 1
        h = integer_normalize(gens[0])
        tgt3 = VarSet(["X", "Y", "Z"], [3 * k - 2, 3, 3 * k - 1])
        D = Divisor(tgt3, Polynomial(tgt3, h.terms), (3 * k - 2, 3, 3 * k - 1))
        T = derlog_tangent(D)
        table = [
            [f"{3*k-2}*X", "3*Y", f"{3*k-1}*Z"],
            [f"X^2 + {3*k-1}*{Yp(k-1)}*Z", "-3*X*Y", f"{3*k-1}*Y^{2*k-1}"],
            [f"Z^2 - X*Y^{k}", "0", f"X^2*Y + Y^{k}*Z"],
            [f"{3*k-1}*Y^{2*k-1} + X*Z", "-3*Y*Z", f"-{3*k-1}*X*Y^{k}"],
            [f"-{3*k-1}*Y^{2*k-2}*Z - X^2*{Yp(k-1)}", "3*Z^2",
             f"{3*k}*X*{Yp(k-1)}*Z + X^3"],
        ]
        M = Submodule(tgt3, 3, [
            ModuleElement(tgt3, [parse_poly(t, tgt3) for t in row])
            for row in table
        ])
        assert module_equal(T.module, M), k

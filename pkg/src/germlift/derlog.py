"""Discriminants, logarithmic vector fields, and augmentation transforms.

For a reduced equation h, the strict module is the annihilator
{eta : eta(h) = 0}; the tangent module is {eta : eta(h) in <h>}, computed as
syzygies of the partials (with h adjoined), with the quotient eta(h)/h
recovered and stored for every generator.  The augmentation machinery moves
fields between the discriminant of a one-parameter stable unfolding and the
discriminants of its augmentations by powers of the augmenting variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AmbientError,
    DescentResidueError,
    NotDivisible,
    NotEquidimensional,
    StructureError,
)
from .germs import MapGerm, Unfolding, VectorField, mapgerm_determinant
from .groebner import Budget, eliminate, module_intersect, prune_module, syzygy_module
from .modules import ModuleElement, Submodule
from .poly import Polynomial, VarSet, exact_divide, integer_normalize


class Divisor:
    """A reduced hypersurface germ given by its defining equation."""

    __slots__ = ("ring", "h", "weights")

    def __init__(self, ring: VarSet, h: Polynomial, weights=None):
        if h.ring != ring:
            raise AmbientError("equation must live over the ambient ring")
        if h.constant_term() != 0:
            raise StructureError("divisor must pass through the origin")
        self.ring = ring
        self.h = h
        self.weights = tuple(weights) if weights is not None else None
        if self.weights is not None and not h.is_weighted_homogeneous(self.weights):
            raise StructureError("equation is not quasihomogeneous for the weights")

    def effective_weights(self):
        return self.weights if self.weights is not None else self.ring.weights

    def __repr__(self) -> str:
        return f"Divisor({self.h})"


def tangency_quotient(eta: VectorField, h: Polynomial) -> Polynomial | None:
    """The quotient eta(h)/h when it exists exactly, else None."""
    try:
        return exact_divide(eta.apply_to(h), h)
    except NotDivisible:
        return None


def derlog_strict(D: Divisor, budget: Budget | None = None) -> Submodule:
    """Fields annihilating h: the syzygies of the partial derivatives."""
    ring = D.ring
    partials = [ModuleElement(ring, (D.h.diff(v),)) for v in ring.names]
    syz = syzygy_module(partials, budget)
    for g in syz.generators:
        if not VectorField(ring, g.entries).apply_to(D.h).is_zero:
            raise StructureError("internal: strict derlog generator fails eta(h)=0")
    return syz


@dataclass(frozen=True)
class TangentFields:
    """Derlog of the divisor: generators plus their quotients eta(h) = a*h."""

    module: Submodule
    quotients: tuple


def derlog_tangent(D: Divisor, budget: Budget | None = None) -> TangentFields:
    """Fields tangent to the divisor, with the quotient of each generator."""
    ring = D.ring
    p = len(ring)
    gens = [ModuleElement(ring, (D.h.diff(v),)) for v in ring.names]
    gens.append(ModuleElement(ring, (D.h,)))
    syz = syzygy_module(gens, budget)
    projected = [
        ModuleElement(ring, s.entries[:p])
        for s in syz.generators
        if not all(q.is_zero for q in s.entries[:p])
    ]
    module = prune_module(Submodule(ring, p, projected), budget)
    quotients = []
    for g in module.generators:
        alpha = tangency_quotient(VectorField(ring, g.entries), D.h)
        if alpha is None:
            raise StructureError("internal: tangent derlog generator fails eta(h) in <h>")
        quotients.append(alpha)
    return TangentFields(module, tuple(quotients))


def euler_field(space: VarSet, weights=None) -> VectorField:
    """sum w_i x_i d/dx_i for the given (or the ring's) weights."""
    w = tuple(weights) if weights is not None else space.weights
    if w is None:
        raise AmbientError("no weights available for an Euler field")
    if len(w) != len(space) or any(x <= 0 for x in w):
        raise AmbientError("need one positive weight per variable")
    return VectorField(
        space, [Polynomial.variable(space, n) * int(wi) for n, wi in zip(space.names, w)]
    )


def _reringed(p: Polynomial, ring: VarSet) -> Polynomial:
    if p.ring.names != ring.names:
        raise AmbientError("cannot move polynomial between unrelated rings")
    return Polynomial(ring, p.terms)


def poly_lcm(a: Polynomial, b: Polynomial, budget: Budget | None = None) -> Polynomial:
    """Least common multiple via intersection of principal ideals."""
    ring = a.ring
    meet = module_intersect(
        Submodule.ideal(ring, [a]), Submodule.ideal(ring, [b]), budget
    )
    gens = meet.ideal_generators()
    if len(gens) != 1:
        raise StructureError("intersection of principal ideals is not principal")
    return integer_normalize(gens[0])


def poly_gcd(a: Polynomial, b: Polynomial, budget: Budget | None = None) -> Polynomial:
    if a.is_zero:
        return integer_normalize(b)
    if b.is_zero:
        return integer_normalize(a)
    return integer_normalize(exact_divide(a * b, poly_lcm(a, b, budget)))


def squarefree_part(h: Polynomial, budget: Budget | None = None) -> Polynomial:
    """h with repeated factors removed, via gcd with the partials."""
    if h.is_zero or h.total_degree() == 0:
        return h
    g = h
    for v in h.ring.names:
        d = h.diff(v)
        if d.is_zero:
            continue
        g = poly_gcd(g, d, budget)
        if g.total_degree() == 0:
            break
    return integer_normalize(exact_divide(h, g))


def discriminant(f: MapGerm, budget: Budget | None = None) -> Divisor:
    """Reduced defining equation of the image of the non-submersive points.

    Restricted to equidimensional germs: eliminate the source variables from
    the graph ideal together with det(df), then take the squarefree part,
    normalized to coprime integer coefficients with positive leading term.
    """
    if f.n != f.p:
        raise NotEquidimensional(f"need n = p, got {f.n} -> {f.p}")
    det = mapgerm_determinant(f)
    if det.is_zero:
        raise StructureError("Jacobian determinant vanishes identically")
    if set(f.source.names) & set(f.target.names):
        raise AmbientError("source and target variable names must be disjoint")
    big = VarSet(f.source.names + f.target.names)
    lift_src = {
        n: Polynomial.variable(big, n) for n in f.source.names
    }
    gens = []
    for name, comp in zip(f.target.names, f.components):
        gens.append(
            Polynomial.variable(big, name) - comp.substitute(lift_src, into=big)
        )
    gens.append(det.substitute(lift_src, into=big))
    elim = eliminate(Submodule.ideal(big, gens), list(f.source.names), budget)
    polys = elim.ideal_generators()
    if len(polys) != 1:
        raise StructureError(
            f"eliminated ideal is not principal ({len(polys)} generators)"
        )
    h = squarefree_part(_reringed(polys[0], f.target), budget)
    h = integer_normalize(h)
    weights = None
    if f.target.weights is not None and h.is_weighted_homogeneous(f.target.weights):
        weights = f.target.weights
    return Divisor(f.target, h, weights)


@dataclass(frozen=True)
class AugmentationSpec:
    """An augmentation of ``core`` by a one-parameter stable unfolding and
    the power function z -> z^k in the unfolding parameter."""

    core: MapGerm
    unfolding: Unfolding
    k: int

    def __post_init__(self):
        if self.unfolding.r != 1:
            raise StructureError("augmentation needs a one-parameter unfolding")
        if self.unfolding.core != self.core:
            raise StructureError("unfolding does not unfold the stated core")
        if self.k < 1:
            raise StructureError("k must be a positive integer")


def augment_map(spec: AugmentationSpec) -> MapGerm:
    """The augmented germ: substitute z^k for the unfolding parameter and
    keep the parameter slot as the new source variable z."""
    F = spec.unfolding.total
    lam = spec.unfolding.source_params[0]
    tgt_idx = spec.unfolding.target_param_indices()[0]
    lam_poly = Polynomial.variable(F.source, lam)
    mapping = {lam: lam_poly**spec.k}
    comps = []
    for i, c in enumerate(F.components):
        comps.append(lam_poly if i == tgt_idx else c.substitute(mapping))
    return MapGerm(F.source, F.target, comps)


def _fresh(names, stem):
    name = stem
    while name in names:
        name += "_"
    return name


def augment_unfolding(spec: AugmentationSpec) -> Unfolding:
    """The canonical one-parameter stable unfolding of the augmented germ,
    obtained by substituting z^k + mu for the unfolding parameter."""
    F = spec.unfolding.total
    lam = spec.unfolding.source_params[0]
    Lam = spec.unfolding.target_params[0]
    tgt_idx = spec.unfolding.target_param_indices()[0]
    mu = _fresh(F.source.names, "mu")
    MU = _fresh(F.target.names, "Mu")
    src = VarSet(F.source.names + (mu,))
    tgt = VarSet(F.target.names + (MU,))
    lam_poly = Polynomial.variable(src, lam)
    mu_poly = Polynomial.variable(src, mu)
    mapping = {
        lam: lam_poly**spec.k + mu_poly,
        **{n: Polynomial.variable(src, n) for n in F.source.names if n != lam},
    }
    comps = []
    for i, c in enumerate(F.components):
        comps.append(lam_poly if i == tgt_idx else c.substitute(mapping, into=src))
    comps.append(mu_poly)
    total = MapGerm(src, tgt, comps)
    return Unfolding(total, (mu,), (MU,), augment_map(spec))


def _last_var(space: VarSet) -> str:
    return space.names[-1]


def augment_field(eta: VectorField, k: int, into: VarSet | None = None) -> VectorField:
    """Transform a field on the unfolding target to the augmentation target:
    substitute z^k for the last coordinate everywhere, and multiply every
    entry except the last by the derivative k*z^(k-1)."""
    space = into if into is not None else eta.space
    if space.names != eta.space.names:
        raise AmbientError("target space must share coordinate names")
    z = _last_var(eta.space)
    zk = Polynomial.variable(space, z) ** k
    phi_prime = Polynomial.variable(space, z) ** (k - 1) * k
    out = []
    for i, p in enumerate(eta.entries):
        q = p.substitute({z: zk}, into=space)
        out.append(q if i == len(eta.entries) - 1 else q * phi_prime)
    return VectorField(space, out)


def augment_field_div(eta: VectorField, k: int, into: VarSet | None = None) -> VectorField:
    """The transform above divided exactly by k*z^(k-1); requires the last
    entry of eta to vanish on the zero section of the last coordinate."""
    space = into if into is not None else eta.space
    if space.names != eta.space.names:
        raise AmbientError("target space must share coordinate names")
    z = _last_var(eta.space)
    last = eta.entries[-1]
    if not last.substitute({z: Polynomial.zero(eta.space)}).is_zero:
        raise NotDivisible("last entry does not vanish at the zero section")
    zk = Polynomial.variable(space, z) ** k
    divisor = Polynomial.variable(space, z) ** (k - 1) * k
    out = []
    for i, p in enumerate(eta.entries):
        q = p.substitute({z: zk}, into=space)
        out.append(exact_divide(q, divisor) if i == len(eta.entries) - 1 else q)
    return VectorField(space, out)


def last_component_ideal(M: Submodule) -> Submodule:
    """Ideal of last components with the last coordinate set to zero,
    over the ring without that coordinate."""
    ring = M.ring
    if M.rank != len(ring):
        raise AmbientError("module rank must match the coordinate count")
    short = VarSet(
        ring.names[:-1],
        ring.weights[:-1] if ring.weights is not None else None,
    )
    last_idx = len(ring) - 1
    out = []
    for g in M.generators:
        p = g.entries[-1]
        terms = {}
        for e, c in p.terms.items():
            if e[last_idx] == 0:
                terms[e[:-1]] = c
        q = Polynomial(short, terms)
        if not q.is_zero:
            out.append(q)
    return Submodule.ideal(short, out)


@dataclass(frozen=True)
class DescentResult:
    """Outcome of descending a field from an augmented discriminant."""

    field: VectorField          # tangent to the unfolding discriminant
    discarded: VectorField      # eta_bar minus the re-transformed field
    quotient: Polynomial        # field(H) / H


def descend_field(eta_bar: VectorField, k: int, H_div: Divisor) -> DescentResult:
    """Descend a field tangent to the discriminant of the k-th augmentation
    to one tangent to the unfolding discriminant.

    Only the residue classes of the degree in the last coordinate that
    survive the substitution z -> z^k are retained; which classes those are
    depends on whether the last entry vanishes on the zero section (the two
    descent cases).  The discarded part is returned and checked
    to be tangent to the augmented discriminant itself.
    """
    space = eta_bar.space
    H_ring = H_div.ring
    if space.names != H_ring.names:
        raise AmbientError("field and divisor must share coordinate names")
    z = _last_var(space)
    zi = len(space) - 1
    h = H_div.h.substitute({z: Polynomial.variable(space, z) ** k}, into=space)
    alpha_bar = tangency_quotient(eta_bar, h)
    if alpha_bar is None:
        raise DescentResidueError("input field is not tangent to the augmented divisor")
    p = len(space) - 1
    beta_zero = eta_bar.entries[-1].substitute({z: Polynomial.zero(space)}).is_zero

    def extract(poly: Polynomial, residue: int, post_add: int,
                scale: Fraction) -> Polynomial:
        terms = {}
        for e, c in poly.terms.items():
            if e[zi] % k != residue % k:
                continue
            new = list(e)
            new[zi] = (e[zi] - residue) // k + post_add
            terms[tuple(new)] = c * scale
        return Polynomial(H_ring, terms)

    entries = []
    if beta_zero:
        for i in range(p):
            entries.append(extract(eta_bar.entries[i], 0, 0, Fraction(1)))
        entries.append(extract(eta_bar.entries[-1], 1, 1, Fraction(k)))
    else:
        for i in range(p):
            entries.append(extract(eta_bar.entries[i], k - 1, 0, Fraction(1, k)))
        entries.append(extract(eta_bar.entries[-1], 0, 0, Fraction(1)))
    field = VectorField(H_ring, entries)

    alpha = tangency_quotient(field, H_div.h)
    if alpha is None:
        raise DescentResidueError("retained part is not tangent to the divisor")
    if beta_zero:
        reconstructed = augment_field_div(field, k, into=space)
    else:
        reconstructed = augment_field(field, k, into=space)
    discarded = eta_bar - reconstructed
    if tangency_quotient(discarded, h) is None:
        raise DescentResidueError("discarded part is not tangent to the augmented divisor")
    return DescentResult(field, discarded, alpha)

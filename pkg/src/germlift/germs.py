"""Polynomial map-germs, unfoldings with arbitrarily placed parameters, and
transport of vector fields along target diffeomorphisms."""

from __future__ import annotations

from typing import Sequence

from .errors import AmbientError, InverseCheckFailed, RankError, StructureError
from .modules import ModuleElement, Submodule
from .poly import Polynomial, VarSet


class MapGerm:
    """A polynomial map fixing the origin, (K^n, 0) -> (K^p, 0)."""

    __slots__ = ("source", "target", "components", "_tf")

    def __init__(self, source: VarSet, target: VarSet, components: Sequence[Polynomial]):
        self.source = source
        self.target = target
        self.components = tuple(components)
        if len(self.components) != len(target):
            raise StructureError(
                f"{len(self.components)} components for a {len(target)}-dimensional target"
            )
        for p in self.components:
            if p.ring != source:
                raise AmbientError("components must live over the source ring")
            if p.constant_term() != 0:
                raise StructureError("germ must map the origin to the origin")
        self._tf = None

    @property
    def n(self) -> int:
        return len(self.source)

    @property
    def p(self) -> int:
        return len(self.target)

    def component_map(self) -> dict[str, Polynomial]:
        return dict(zip(self.target.names, self.components))

    def compose(self, inner: "MapGerm") -> "MapGerm":
        """self after inner."""
        if inner.target.names != self.source.names:
            raise AmbientError("composition: inner target must match outer source")
        mapping = dict(zip(self.source.names, inner.components))
        comps = [c.substitute(mapping, into=inner.source) for c in self.components]
        return MapGerm(inner.source, self.target, comps)

    def is_identity(self) -> bool:
        if self.source.names != self.target.names:
            return False
        return all(
            c == Polynomial.variable(self.source, n)
            for c, n in zip(self.components, self.source.names)
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MapGerm)
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.source, self.target, self.components))

    def __str__(self) -> str:
        comps = ", ".join(str(c) for c in self.components)
        return f"({', '.join(self.source.names)}) -> ({comps})"

    def __repr__(self) -> str:
        return f"MapGerm{self}"


class VectorField:
    """An element of theta_p: one polynomial entry per coordinate of a space."""

    __slots__ = ("space", "entries")

    def __init__(self, space: VarSet, entries: Sequence[Polynomial]):
        self.space = space
        self.entries = tuple(entries)
        if len(self.entries) != len(space):
            raise RankError("a vector field needs one entry per coordinate")
        for p in self.entries:
            if p.ring != space:
                raise AmbientError("field entries must live over their space")

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self.entries)

    def as_element(self) -> ModuleElement:
        return ModuleElement(self.space, self.entries)

    @staticmethod
    def from_element(elem: ModuleElement) -> "VectorField":
        return VectorField(elem.ring, elem.entries)

    def apply_to(self, h: Polynomial) -> Polynomial:
        """Directional derivative sum(entry_i * dh/dx_i)."""
        if h.ring != self.space:
            raise AmbientError("field and function over different rings")
        out = Polynomial.zero(self.space)
        for name, a in zip(self.space.names, self.entries):
            out = out + a * h.diff(name)
        return out

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField.from_element(self.as_element() + other.as_element())

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField.from_element(self.as_element() - other.as_element())

    def scale(self, c) -> "VectorField":
        return VectorField.from_element(self.as_element().scale(c))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VectorField)
            and self.space == other.space
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.space, self.entries))

    def __str__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.entries) + ")"

    def __repr__(self) -> str:
        return f"VectorField{self}"


def jacobian(f: MapGerm) -> list[list[Polynomial]]:
    """The p x n matrix of partials, entry (i, j) = d f_i / d x_j."""
    return [[c.diff(v) for v in f.source.names] for c in f.components]


def tf_generators(f: MapGerm) -> Submodule:
    """The columns of df as a submodule of rank p over the source ring."""
    if f._tf is None:
        J = jacobian(f)
        cols = [
            ModuleElement(f.source, [J[i][j] for i in range(f.p)])
            for j in range(f.n)
        ]
        f._tf = Submodule(f.source, f.p, cols)
    return f._tf


def wf_apply(eta: VectorField, f: MapGerm) -> ModuleElement:
    """eta composed with f, a rank-p element over the source ring."""
    if eta.space != f.target:
        raise AmbientError("field must live on the target of the germ")
    mapping = f.component_map()
    return ModuleElement(
        f.source, [p.substitute(mapping, into=f.source) for p in eta.entries]
    )


def push_forward(eta: VectorField, H: MapGerm, H_inv: MapGerm) -> VectorField:
    """Transport of a field through a diffeomorphism, dH o eta o H^{-1}.

    Both composites of H and H_inv are checked to be the identity, exactly.
    """
    if eta.space != H.source:
        raise AmbientError("field must live on the source of the diffeomorphism")
    if not H.compose(H_inv).is_identity() or not H_inv.compose(H).is_identity():
        raise InverseCheckFailed("supplied inverse does not invert the map")
    inv_map = H_inv.component_map()
    J = jacobian(H)
    entries_at_inv = [p.substitute(inv_map, into=H_inv.source) for p in eta.entries]
    out = []
    for i in range(H.p):
        acc = Polynomial.zero(H.target)
        for j in range(H.n):
            Jij = J[i][j].substitute(inv_map, into=H_inv.source)
            acc = acc + Jij * entries_at_inv[j]
        out.append(acc)
    return VectorField(H.target, out)


def mapgerm_determinant(f: MapGerm) -> Polynomial:
    """det(df) for an equidimensional germ, by cofactor expansion."""
    if f.n != f.p:
        raise StructureError("determinant requires n = p")
    J = jacobian(f)

    def det(rows, cols):
        if len(rows) == 1:
            return J[rows[0]][cols[0]]
        acc = Polynomial.zero(f.source)
        r = rows[0]
        rest = rows[1:]
        for k, c in enumerate(cols):
            minor = det(rest, cols[:k] + cols[k + 1 :])
            term = J[r][c] * minor
            acc = acc + term if k % 2 == 0 else acc - term
        return acc

    idx = list(range(f.n))
    return det(idx, idx)


class Unfolding:
    """An unfolding F(x, l) = (f_l(x), l) with explicit parameter positions.

    ``source_params`` and ``target_params`` name the parameter variables in
    the source and the matching parameter coordinates in the target; they may
    sit at arbitrary positions, not only trailing ones.
    """

    __slots__ = ("total", "source_params", "target_params", "core")

    def __init__(self, total: MapGerm, source_params: Sequence[str],
                 target_params: Sequence[str], core: MapGerm):
        self.total = total
        self.source_params = tuple(source_params)
        self.target_params = tuple(target_params)
        self.core = core
        if len(self.source_params) != len(self.target_params):
            raise StructureError("source and target parameter counts differ")
        for v in self.source_params:
            total.source.index(v)
        for v in self.target_params:
            total.target.index(v)
        for sv, tv in zip(self.source_params, self.target_params):
            comp = total.components[total.target.index(tv)]
            if comp != Polynomial.variable(total.source, sv):
                raise StructureError(
                    f"target component {tv} must equal the source parameter {sv}"
                )
        if self.restrict() != core:
            raise StructureError("restricting the unfolding does not give the core")

    @property
    def r(self) -> int:
        return len(self.source_params)

    @property
    def p(self) -> int:
        return self.total.p - self.r

    def source_param_indices(self) -> list[int]:
        return [self.total.source.index(v) for v in self.source_params]

    def target_param_indices(self) -> list[int]:
        return [self.total.target.index(v) for v in self.target_params]

    def non_param_target_indices(self) -> list[int]:
        tp = set(self.target_param_indices())
        return [i for i in range(self.total.p) if i not in tp]

    def restrict(self) -> MapGerm:
        """Set all parameters to zero and drop parameter coordinates.

        Remaining source variables are renamed positionally onto the core's
        source ring, so the result is directly comparable with the core.
        """
        total = self.total
        sp = set(self.source_params)
        keep_src = [n for n in total.source.names if n not in sp]
        if len(keep_src) != len(self.core.source):
            raise StructureError("core source dimension mismatch")
        zero = {v: Polynomial.zero(self.core.source) for v in self.source_params}
        rename = {
            old: Polynomial.variable(self.core.source, new)
            for old, new in zip(keep_src, self.core.source.names)
        }
        mapping = {**zero, **rename}
        comps = [
            total.components[i].substitute(mapping, into=self.core.source)
            for i in self.non_param_target_indices()
        ]
        return MapGerm(self.core.source, self.core.target, comps)

    def __repr__(self) -> str:
        return (
            f"Unfolding(params {self.source_params} -> {self.target_params}, "
            f"total {self.total!r})"
        )


def unfolding_restrict(U: Unfolding) -> MapGerm:
    """Recompute the core from the total map; must equal the stored core."""
    got = U.restrict()
    if got != U.core:
        raise StructureError("unfolding invariant failed: restriction != core")
    return got

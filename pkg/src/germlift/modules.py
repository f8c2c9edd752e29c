"""Free-module elements and finitely generated submodules over a polynomial ring."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AmbientError, RankError
from .poly import Exp, MonomialOrder, Polynomial, VarSet


class ModuleElement:
    """A vector of polynomials of fixed rank over one ambient ring."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring: VarSet, entries: Sequence[Polynomial]):
        self.ring = ring
        self.entries = tuple(entries)
        for p in self.entries:
            if p.ring != ring:
                raise AmbientError("module element entries must share one ring")

    @staticmethod
    def zero(ring: VarSet, rank: int) -> "ModuleElement":
        z = Polynomial.zero(ring)
        return ModuleElement(ring, (z,) * rank)

    @staticmethod
    def unit(ring: VarSet, rank: int, comp: int) -> "ModuleElement":
        entries = [Polynomial.zero(ring)] * rank
        entries[comp] = Polynomial.const(ring, 1)
        return ModuleElement(ring, entries)

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self.entries)

    def _check(self, other: "ModuleElement"):
        if self.ring != other.ring:
            raise AmbientError("module elements over different rings")
        if self.rank != other.rank:
            raise RankError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._check(other)
        return ModuleElement(self.ring, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        self._check(other)
        return ModuleElement(self.ring, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "ModuleElement":
        return ModuleElement(self.ring, [-a for a in self.entries])

    def scale(self, c) -> "ModuleElement":
        """Multiply by a Polynomial, Fraction or int."""
        return ModuleElement(self.ring, [p * c if isinstance(c, (int, Fraction)) else c * p for p in self.entries])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModuleElement)
            and self.ring == other.ring
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring, self.entries))

    def at_origin(self) -> tuple[Fraction, ...]:
        return tuple(p.constant_term() for p in self.entries)

    def __str__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.entries) + ")"

    def __repr__(self) -> str:
        return f"ModuleElement{self}"


def proportional(a: ModuleElement, b: ModuleElement) -> Fraction | None:
    """The nonzero rational ``c`` with ``a == c*b``, or None."""
    a._check(b)
    c = None
    for pa, pb in zip(a.entries, b.entries):
        if pa.is_zero != pb.is_zero:
            return None
        if pa.is_zero:
            continue
        eb, cb = pb.leading()
        if eb not in pa.terms:
            return None
        ratio = pa.terms[eb] / cb
        if c is None:
            c = ratio
        elif c != ratio:
            return None
        if pa != pb * ratio:
            return None
    return Fraction(1) if c is None else c


@dataclass(frozen=True)
class ModuleOrder:
    """Extension of a monomial order to (monomial, component) pairs.

    ``precedence`` ranks components, earlier entries are greater; the default
    is the natural order e_0 > e_1 > ...
    """

    base: MonomialOrder
    position_over_term: bool = False
    precedence: tuple[int, ...] | None = None

    def component_rank(self, comp: int) -> int:
        if self.precedence is None:
            return comp
        return self.precedence.index(comp)

    def key(self, comp: int, exp: Exp):
        mono = self.base.key(exp)
        pos = -self.component_rank(comp)
        if self.position_over_term:
            return (pos, mono)
        return (mono, pos)


class Submodule:
    """Finitely generated submodule of a free module with a cached basis."""

    def __init__(
        self,
        ring: VarSet,
        rank: int,
        generators: Iterable[ModuleElement],
        order: ModuleOrder | None = None,
    ):
        self.ring = ring
        self.rank = int(rank)
        if self.rank < 1:
            raise RankError("rank must be a positive integer")
        self.generators = tuple(g for g in generators)
        for g in self.generators:
            if g.ring != ring:
                raise AmbientError("generators over a different ring")
            if g.rank != self.rank:
                raise RankError("generator rank differs from module rank")
        self.order = order or ModuleOrder(ring.default_order())
        self._gb = None  # GroebnerBasis, filled lazily
        self._plain = None  # untracked reduced basis, filled lazily

    @staticmethod
    def ideal(ring: VarSet, polys: Iterable[Polynomial], order=None) -> "Submodule":
        gens = [ModuleElement(ring, (p,)) for p in polys]
        return Submodule(ring, 1, gens, order)

    def ideal_generators(self) -> tuple[Polynomial, ...]:
        if self.rank != 1:
            raise RankError("not a rank-1 module")
        return tuple(g.entries[0] for g in self.generators)

    # Thin wrappers over the kernel; imported locally to avoid a cycle.

    def groebner(self, budget=None):
        from . import groebner as _g

        return _g.compute_gb(self, budget)

    def basis_elements(self, budget=None):
        return self.groebner(budget).elements

    def express(self, v: ModuleElement, budget=None):
        from . import groebner as _g

        return _g.express(v, self, budget)

    def normal_form(self, v: ModuleElement, budget=None) -> ModuleElement:
        from . import groebner as _g

        return _g.normal_form(v, self, budget)

    def contains(self, v: ModuleElement, budget=None) -> bool:
        from . import groebner as _g

        return _g.contains(self, v, budget)

    def intersect(self, other: "Submodule", budget=None) -> "Submodule":
        from . import groebner as _g

        return _g.module_intersect(self, other, budget)

    def equals_module(self, other: "Submodule", budget=None) -> bool:
        from . import groebner as _g

        return _g.module_equal(self, other, budget)

    def pruned(self, budget=None) -> "Submodule":
        from . import groebner as _g

        return _g.prune_module(self, budget)

    def __repr__(self) -> str:
        return f"Submodule(rank={self.rank}, {len(self.generators)} generators)"

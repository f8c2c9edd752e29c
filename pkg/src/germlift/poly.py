"""Exact multivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction` throughout; there is no floating
point anywhere in the package.  Monomials are dense exponent tuples whose
length is fixed by the ambient :class:`VarSet`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .errors import AmbientError, NotDivisible

Exp = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

# Process-wide order override used by the CLI's --order flag.  "weighted"
# (the built-in default) prefers the ring's weights when declared.
_DEFAULT_ORDER_KIND: str | None = None


def set_default_order_kind(kind: str | None):
    global _DEFAULT_ORDER_KIND
    if kind not in (None, "weighted", "grevlex", "lex"):
        raise ValueError(f"unknown order kind {kind!r}")
    _DEFAULT_ORDER_KIND = None if kind == "weighted" else kind


def exp_add(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def exp_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(x if x > y else y for x, y in zip(a, b))


def exp_divides(a: Exp, b: Exp) -> bool:
    """True when the monomial with exponents ``a`` divides the one with ``b``."""
    return all(x <= y for x, y in zip(a, b))


class VarSet:
    """An ordered set of variable names with optional positive integer weights."""

    __slots__ = ("names", "weights", "_index")

    def __init__(self, names: Iterable[str], weights: Iterable[int] | None = None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise AmbientError(f"variable names are not distinct: {self.names}")
        for n in self.names:
            if not n or not (n[0].isalpha() or n[0] == "_"):
                raise AmbientError(f"invalid variable name {n!r}")
        if weights is None:
            self.weights = None
        else:
            self.weights = tuple(int(w) for w in weights)
            if len(self.weights) != len(self.names):
                raise AmbientError("weights length does not match variable count")
            if any(w <= 0 for w in self.weights):
                raise AmbientError("weights must be positive integers")
        self._index = {n: i for i, n in enumerate(self.names)}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VarSet)
            and self.names == other.names
            and self.weights == other.weights
        )

    def __hash__(self) -> int:
        return hash((self.names, self.weights))

    def __repr__(self) -> str:
        if self.weights is None:
            return f"VarSet({list(self.names)})"
        return f"VarSet({list(self.names)}, weights={list(self.weights)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AmbientError(f"variable {name!r} not in {self.names}") from None

    def zero_exp(self) -> Exp:
        return (0,) * len(self.names)

    def unit_exp(self, i: int) -> Exp:
        e = [0] * len(self.names)
        e[i] = 1
        return tuple(e)

    def default_order(self) -> "MonomialOrder":
        kind = _DEFAULT_ORDER_KIND
        if kind == "lex":
            return MonomialOrder.lex()
        if kind == "grevlex":
            return MonomialOrder.grevlex()
        if self.weights is not None:
            return MonomialOrder.wgrevlex(self.weights)
        return MonomialOrder.grevlex()


def _grevlex_key(e: Exp):
    return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    """A term order given as a sort key on exponent tuples.

    ``key(e)`` is monotone: larger monomial, larger key.  All four kinds are
    total well-orders compatible with multiplication.
    """

    kind: str
    weights: tuple[int, ...] | None = None
    block: int = 0

    @staticmethod
    def lex() -> "MonomialOrder":
        return MonomialOrder("lex")

    @staticmethod
    def grevlex() -> "MonomialOrder":
        return MonomialOrder("grevlex")

    @staticmethod
    def wgrevlex(weights: Iterable[int]) -> "MonomialOrder":
        return MonomialOrder("wgrevlex", weights=tuple(weights))

    @staticmethod
    def elimination(block: int) -> "MonomialOrder":
        """Block order eliminating the first ``block`` variables."""
        return MonomialOrder("block", block=block)

    def key(self, e: Exp):
        if self.kind == "grevlex":
            return _grevlex_key(e)
        if self.kind == "wgrevlex":
            w = self.weights
            return (sum(wi * xi for wi, xi in zip(w, e)), _grevlex_key(e))
        if self.kind == "lex":
            return e
        if self.kind == "block":
            b = self.block
            return (_grevlex_key(e[:b]), _grevlex_key(e[b:]))
        raise ValueError(f"unknown order kind {self.kind!r}")


class Polynomial:
    """Immutable polynomial: a map from exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: VarSet, terms: Mapping[Exp, Fraction] | None = None):
        self.ring = ring
        clean: dict[Exp, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(ring: VarSet) -> "Polynomial":
        return Polynomial(ring)

    @staticmethod
    def const(ring: VarSet, c) -> "Polynomial":
        return Polynomial(ring, {ring.zero_exp(): Fraction(c)})

    @staticmethod
    def variable(ring: VarSet, name: str) -> "Polynomial":
        return Polynomial(ring, {ring.unit_exp(ring.index(name)): ONE})

    @staticmethod
    def monomial(ring: VarSet, exp: Exp, coeff=ONE) -> "Polynomial":
        return Polynomial(ring, {tuple(exp): Fraction(coeff)})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring.zero_exp(), ZERO)

    def _check_same_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise AmbientError(
                f"ambient mismatch: {self.ring!r} vs {other.ring!r}"
            )

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        self._check_same_ring(other)
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, ZERO) + c
            if s:
                res[e] = s
            elif e in res:
                del res[e]
        out = Polynomial.__new__(Polynomial)
        out.ring, out.terms = self.ring, res
        return out

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        out = Polynomial.__new__(Polynomial)
        out.ring = self.ring
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self.__add__(self._coerce(other).__neg__())

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial.zero(self.ring)
            out = Polynomial.__new__(Polynomial)
            out.ring = self.ring
            out.terms = {e: k * c for e, k in self.terms.items()}
            return out
        self._check_same_ring(other)
        res: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_add(e1, e2)
                s = res.get(e, ZERO) + c1 * c2
                if s:
                    res[e] = s
                elif e in res:
                    del res[e]
        out = Polynomial.__new__(Polynomial)
        out.ring, out.terms = self.ring, res
        return out

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponents are outside the polynomial model")
        result = Polynomial.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(self.ring, other)
        raise TypeError(f"cannot combine Polynomial with {type(other)!r}")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.ring, other)
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- calculus and substitution ------------------------------------------

    def diff(self, name: str) -> "Polynomial":
        """Formal partial derivative with respect to the named variable."""
        i = self.ring.index(name)
        res: dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            d = list(e)
            d[i] -= 1
            res[tuple(d)] = c * e[i]
        return Polynomial(self.ring, res)

    def substitute(
        self,
        mapping: Mapping[str, "Polynomial"],
        into: VarSet | None = None,
    ) -> "Polynomial":
        """Substitute polynomials for variables.

        Variables absent from ``mapping`` are mapped to the variable of the
        same name in the target ring; if the target ring has no such variable
        the substitution is rejected.
        """
        target = into
        for v in mapping.values():
            if target is None:
                target = v.ring
            elif v.ring != target:
                raise AmbientError("substitution images live in different rings")
        if target is None:
            target = self.ring
        images: list[Polynomial | None] = []
        for i, name in enumerate(self.ring.names):
            if name in mapping:
                images.append(mapping[name])
            elif any(e[i] for e in self.terms):
                if name not in target._index:
                    raise AmbientError(
                        f"no image for variable {name!r} in target ring"
                    )
                images.append(Polynomial.variable(target, name))
            else:
                images.append(None)
        result = Polynomial.zero(target)
        pow_cache: dict[tuple[int, int], Polynomial] = {}
        for e, c in self.terms.items():
            term = Polynomial.const(target, c)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                key = (i, k)
                p = pow_cache.get(key)
                if p is None:
                    p = images[i] ** k
                    pow_cache[key] = p
                term = term * p
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        """Exact evaluation at a rational point (all variables required)."""
        vals = [Fraction(point[n]) for n in self.ring.names]
        total = ZERO
        for e, c in self.terms.items():
            v = c
            for x, k in zip(vals, e):
                if k:
                    v *= x**k
            total += v
        return total

    # -- gradings -------------------------------------------------------------

    def weighted_degrees(self, weights: Iterable[int] | None = None) -> tuple[int, ...]:
        """Sorted distinct weighted degrees of the terms (empty for zero)."""
        if weights is None:
            if self.ring.weights is None:
                raise AmbientError("no weights declared for this ring")
            w = self.ring.weights
        else:
            w = tuple(weights)
            if len(w) != len(self.ring):
                raise AmbientError("weights length does not match ring")
            if any(x <= 0 for x in w):
                raise AmbientError("weights must be positive")
        degs = {sum(wi * ei for wi, ei in zip(w, e)) for e in self.terms}
        return tuple(sorted(degs))

    def is_weighted_homogeneous(self, weights: Iterable[int] | None = None) -> bool:
        return len(self.weighted_degrees(weights)) <= 1

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    # -- ordered access ---------------------------------------------------------

    def leading(self, order: MonomialOrder | None = None) -> tuple[Exp, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        order = order or self.ring.default_order()
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def sorted_terms(self, order: MonomialOrder | None = None):
        order = order or self.ring.default_order()
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- printing -----------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for j, (e, c) in enumerate(self.sorted_terms()):
            factors = []
            for name, k in zip(self.ring.names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mag = abs(c)
            if not factors or mag != 1:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if j == 0:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Dispatch form of +, -, *; exact result in canonical form."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def substitute(p: Polynomial, mapping, into: VarSet | None = None) -> Polynomial:
    return p.substitute(mapping, into)


def partial_derivative(p: Polynomial, name: str) -> Polynomial:
    return p.diff(name)


def exact_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    """Return ``q`` with ``a == q*b``; raise :class:`NotDivisible` otherwise."""
    a._check_same_ring(b)
    if b.is_zero:
        if a.is_zero:
            return a
        raise NotDivisible("division by zero polynomial")
    order = a.ring.default_order()
    eb, cb = b.leading(order)
    quot: dict[Exp, Fraction] = {}
    rem = a
    while not rem.is_zero:
        ea, ca = rem.leading(order)
        if not exp_divides(eb, ea):
            raise NotDivisible(f"{b} does not divide {a}")
        q = Polynomial.monomial(a.ring, exp_sub(ea, eb), ca / cb)
        quot[exp_sub(ea, eb)] = ca / cb
        rem = rem - q * b
    return Polynomial(a.ring, quot)


def integer_normalize(p: Polynomial) -> Polynomial:
    """Scale to coprime integer coefficients with positive leading coefficient."""
    if p.is_zero:
        return p
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    num = 0
    for c in p.terms.values():
        num = gcd(num, abs(c.numerator * (den // c.denominator)))
    scale = Fraction(den, num)
    if p.leading()[1] < 0:
        scale = -scale
    return p * scale

"""Buchberger kernel for submodules of free modules over Q[x_1..x_n].

One engine serves four needs:

* reduced Groebner bases (deterministic for a fixed module order),
* normal forms and membership with coefficient extraction, every returned
  identity re-verified by exact expansion,
* syzygy modules, computed by embedding the generators alongside unit
  vectors and eliminating the leading block,
* submodule intersection and variable elimination via block orders.

Working vectors are plain dicts mapping ``(component, exponent-tuple)`` to
``Fraction``; ModuleElement is used only at the boundaries.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import AmbientError, GroebnerTimeout, RankError, StructureError
from .modules import ModuleElement, ModuleOrder, Submodule
from .poly import (
    MonomialOrder,
    Polynomial,
    VarSet,
    exp_add,
    exp_divides,
    exp_lcm,
    exp_sub,
)

Vec = dict  # {(comp, exp): Fraction}

ONE = Fraction(1)


@dataclass
class Budget:
    """Caps on the kernel's work; exhausted budgets raise GroebnerTimeout."""

    max_reductions: int | None = 4_000_000
    max_basis: int | None = 4000
    seconds: float | None = None
    reductions: int = 0
    spairs: int = 0
    zero_reductions: int = 0
    _deadline: float | None = field(default=None, repr=False)

    def _over_time(self) -> bool:
        if self.seconds is None:
            return False
        if self.seconds <= 0:
            return True
        if self._deadline is None:
            self._deadline = time.monotonic() + self.seconds
        return time.monotonic() >= self._deadline

    def charge_reduction(self) -> str | None:
        self.reductions += 1
        if self.max_reductions is not None and self.reductions > self.max_reductions:
            return f"reduction limit {self.max_reductions} exceeded"
        if self.reductions % 512 == 0 and self._over_time():
            return f"time limit {self.seconds}s exceeded"
        return None

    def charge_spair(self, basis_size: int) -> str | None:
        self.spairs += 1
        if self.max_basis is not None and basis_size > self.max_basis:
            return f"basis size limit {self.max_basis} exceeded"
        if self._over_time():
            return f"time limit {self.seconds}s exceeded"
        return None

    def stats(self) -> dict:
        return {
            "reductions": self.reductions,
            "s_pairs": self.spairs,
            "zero_reductions": self.zero_reductions,
        }


def _vec_of(elem: ModuleElement) -> Vec:
    v: Vec = {}
    for c, p in enumerate(elem.entries):
        for e, k in p.terms.items():
            v[(c, e)] = k
    return v


def _elem_of(ring: VarSet, rank: int, vec: Vec) -> ModuleElement:
    polys = [dict() for _ in range(rank)]
    for (c, e), k in vec.items():
        polys[c][e] = k
    return ModuleElement(ring, [Polynomial(ring, t) for t in polys])


class _Kernel:
    """One Buchberger run over a fixed key function."""

    def __init__(self, key: Callable, budget: Budget, use_product: bool,
                 partial_cb: Callable[[list], tuple]):
        self.memo: dict = {}
        self.rawkey = key
        self.budget = budget
        self.use_product = use_product
        self.partial_cb = partial_cb
        self.basis: list[Vec] = []
        self.leads: list[tuple] = []  # (comp, exp)
        self.pairs: dict = {}  # (i,j) -> lcm exp
        self.heap: list = []

    def key(self, t):
        k = self.memo.get(t)
        if k is None:
            k = self.rawkey(t[0], t[1])
            self.memo[t] = k
        return k

    def _timeout(self, reason: str):
        raise GroebnerTimeout(reason, partial=self.partial_cb(self.basis),
                              stats=self.budget.stats())

    def _lead(self, vec: Vec):
        return max(vec, key=self.key)

    def reduce_full(self, work: Vec, main_rank: int | None = None,
                    skip: int | None = None) -> Vec:
        """Complete normal form of ``work`` against the current basis.

        With ``main_rank`` set, only terms in components < main_rank are
        reduction targets (the rest pass through to the remainder).  ``skip``
        excludes one basis index (used during interreduction).
        """
        rem: Vec = {}
        basis = self.basis
        leads = self.leads
        while work:
            if main_rank is None:
                t = max(work, key=self.key)
            else:
                best = None
                for t2 in work:
                    if t2[0] < main_rank and (best is None or self.key(t2) > self.key(best)):
                        best = t2
                if best is None:
                    rem.update(work)
                    return rem
                t = best
            c, e = t
            coeff = work[t]
            hit = -1
            for i in range(len(basis)):
                if i == skip:
                    continue
                lc_, le_ = leads[i]
                if lc_ == c and exp_divides(le_, e):
                    hit = i
                    break
            if hit < 0:
                rem[t] = coeff
                del work[t]
                continue
            over = self.budget.charge_reduction()
            if over:
                self._timeout(over)
            shift = exp_sub(e, leads[hit][1])
            red = basis[hit]
            lead_t = leads[hit]
            q = coeff / red[lead_t]
            zero_shift = not any(shift)
            for (c2, e2), k2 in red.items():
                t2 = (c2, e2) if zero_shift else (c2, exp_add(e2, shift))
                s = work.get(t2)
                if s is None:
                    work[t2] = -q * k2
                else:
                    s = s - q * k2
                    if s:
                        work[t2] = s
                    else:
                        del work[t2]
        return rem

    def _monic(self, vec: Vec, lead) -> Vec:
        lc = vec[lead]
        if lc == 1:
            return vec
        return {t: k / lc for t, k in vec.items()}

    def add(self, vec: Vec):
        """Insert a (nonzero) vector, updating the pair set a la Gebauer-Moeller."""
        t = len(self.basis)
        lead = self._lead(vec)
        vec = self._monic(vec, lead)
        self.basis.append(vec)
        self.leads.append(lead)
        ct, et = lead
        # criterion B: prune old pairs strictly covered by the new lead
        for (i, j), L in list(self.pairs.items()):
            if self.leads[i][0] == ct and exp_divides(et, L):
                if exp_lcm(self.leads[i][1], et) != L and exp_lcm(self.leads[j][1], et) != L:
                    del self.pairs[(i, j)]
        cand = [i for i in range(t) if self.leads[i][0] == ct]
        lcms = {i: exp_lcm(self.leads[i][1], et) for i in cand}
        # criterion M: keep only minimal lcms
        keep = []
        for i in cand:
            Li = lcms[i]
            if any(lcms[j] != Li and exp_divides(lcms[j], Li) for j in cand):
                continue
            keep.append(i)
        # criterion F: one representative per lcm
        seen: dict = {}
        for i in keep:
            L = lcms[i]
            if L in seen:
                continue
            seen[L] = i
            # product criterion is only sound for ideals (rank 1)
            if self.use_product and L == exp_add(self.leads[i][1], et):
                continue
            self.pairs[(i, t)] = L
            heapq.heappush(self.heap, (self.key((ct, L)), i, t))

    def spair(self, i: int, j: int) -> Vec:
        ci, ei = self.leads[i]
        cj, ej = self.leads[j]
        L = exp_lcm(ei, ej)
        si = exp_sub(L, ei)
        sj = exp_sub(L, ej)
        out: Vec = {}
        for (c, e), k in self.basis[i].items():
            out[(c, exp_add(e, si))] = k
        for (c, e), k in self.basis[j].items():
            t = (c, exp_add(e, sj))
            s = out.get(t)
            if s is None:
                out[t] = -k
            else:
                s = s - k
                if s:
                    out[t] = s
                else:
                    del out[t]
        return out

    def run(self, vecs: Sequence[Vec]):
        for v in vecs:
            if not v:
                continue
            r = self.reduce_full(dict(v))
            if r:
                self.add(r)
        while self.heap:
            _, i, j = heapq.heappop(self.heap)
            if (i, j) not in self.pairs:
                continue
            del self.pairs[(i, j)]
            over = self.budget.charge_spair(len(self.basis))
            if over:
                self._timeout(over)
            r = self.reduce_full(self.spair(i, j))
            if r:
                self.add(r)
            else:
                self.budget.zero_reductions += 1

    def interreduce(self):
        """Minimalize and tail-reduce; the result is the unique reduced basis."""
        order = sorted(range(len(self.basis)), key=lambda i: self.key(self.leads[i]))
        minimal: list[int] = []
        for i in order:
            ci, ei = self.leads[i]
            if any(self.leads[j][0] == ci and exp_divides(self.leads[j][1], ei)
                   for j in minimal):
                continue
            minimal.append(i)
        self.basis = [self.basis[i] for i in minimal]
        self.leads = [self.leads[i] for i in minimal]
        changed = True
        while changed:
            changed = False
            for i in range(len(self.basis)):
                work = dict(self.basis[i])
                r = self.reduce_full(work, skip=i)
                if r != self.basis[i]:
                    lead = self._lead(r)
                    self.basis[i] = self._monic(r, lead)
                    self.leads[i] = lead
                    changed = True


def _plain_key(morder: ModuleOrder):
    return lambda c, e: morder.key(c, e)


def _embedded_key(morder: ModuleOrder, main_rank: int):
    base = morder.key
    tail = MonomialOrder.grevlex()

    def key(c, e):
        if c < main_rank:
            return (1, base(c, e))
        return (0, (tail.key(e), main_rank - c))

    return key


@dataclass
class GroebnerBasis:
    """Reduced basis of a submodule plus tracking data.

    ``reps[i]`` expresses ``elements[i]`` in the original generators;
    ``syzygies`` generate all relations among the original generators.
    """

    ring: VarSet
    rank: int
    order: ModuleOrder
    elements: tuple
    reps: tuple
    syzygies: tuple
    stats: dict


def _tracked_gb(ring: VarSet, rank: int, gens: Sequence[ModuleElement],
                morder: ModuleOrder, budget: Budget | None) -> GroebnerBasis:
    budget = budget or Budget()
    m = len(gens)
    key = _embedded_key(morder, rank)

    def partial(basis):
        return tuple(
            _elem_of(ring, rank, {t: k for t, k in v.items() if t[0] < rank})
            for v in basis
        )

    kern = _Kernel(key, budget, use_product=False, partial_cb=partial)
    vecs = []
    for i, g in enumerate(gens):
        v = _vec_of(g)
        v[(rank + i, ring.zero_exp())] = ONE
        vecs.append(v)
    kern.run(vecs)
    kern.interreduce()

    elements = []
    reps = []
    syzygies = []
    for vec, lead in sorted(zip(kern.basis, kern.leads), key=lambda p: key(*p[1])):
        main = {(c, e): k for (c, e), k in vec.items() if c < rank}
        tailv = {(c - rank, e): k for (c, e), k in vec.items() if c >= rank}
        if main:
            elements.append(_elem_of(ring, rank, main))
            reps.append(tuple(_elem_of(ring, m, tailv).entries) if m else ())
        else:
            syzygies.append(_elem_of(ring, m, tailv))

    # self-check: every basis element re-expands from its representation,
    # every syzygy expands to zero, and every input generator reduces to
    # zero against the basis (mutual membership of the cached basis).
    for elem, rep in zip(elements, reps):
        acc = ModuleElement.zero(ring, rank)
        for c, g in zip(rep, gens):
            acc = acc + g.scale(c)
        if acc != elem:
            raise StructureError("internal: basis representation failed to re-expand")
    for s in syzygies:
        acc = ModuleElement.zero(ring, rank)
        for c, g in zip(s.entries, gens):
            acc = acc + g.scale(c)
        if not acc.is_zero:
            raise StructureError("internal: syzygy failed to expand to zero")
    check = _Kernel(key, Budget(), use_product=False, partial_cb=lambda b: ())
    for elem in elements:
        vec = _vec_of(elem)
        check.basis.append(vec)
        check.leads.append(max(vec, key=check.key))
    for g in gens:
        rem = check.reduce_full(_vec_of(g), main_rank=rank)
        if any(t[0] < rank for t in rem):
            raise StructureError("internal: generator does not reduce to zero")

    return GroebnerBasis(
        ring=ring,
        rank=rank,
        order=morder,
        elements=tuple(elements),
        reps=tuple(reps),
        syzygies=tuple(syzygies),
        stats=budget.stats(),
    )


def compute_gb(M: Submodule, budget: Budget | None = None) -> GroebnerBasis:
    """The cached reduced basis (with tracking) of a submodule."""
    if M._gb is None:
        M._gb = _tracked_gb(M.ring, M.rank, M.generators, M.order, budget)
    return M._gb


def groebner_basis(M: Submodule, order: ModuleOrder | None = None,
                   budget: Budget | None = None) -> Submodule:
    """Reduced Groebner basis, returned as a submodule with cached basis."""
    if order is not None and order != M.order:
        M = Submodule(M.ring, M.rank, M.generators, order)
    gb = compute_gb(M, budget)
    return Submodule(M.ring, M.rank, gb.elements, M.order)


@dataclass
class Membership:
    """Result of dividing a vector by a submodule's basis."""

    coefficients: tuple | None
    remainder: ModuleElement

    @property
    def is_member(self) -> bool:
        return self.coefficients is not None


def express(v: ModuleElement, M: Submodule, budget: Budget | None = None) -> Membership:
    """Division with coefficient extraction against the original generators.

    On membership, returns coefficients c with sum(c_i * gen_i) == v, the
    identity re-verified by exact expansion before returning.  Otherwise the
    nonzero normal form is the certificate of polynomial non-membership.
    """
    if v.ring != M.ring:
        raise AmbientError("vector and module over different rings")
    if v.rank != M.rank:
        raise RankError(f"rank mismatch: {v.rank} vs {M.rank}")
    gb = compute_gb(M)
    m = len(M.generators)
    key = _embedded_key(M.order, M.rank)
    kern = _Kernel(key, budget or Budget(), use_product=False,
                   partial_cb=lambda b: ())
    for elem, rep in zip(gb.elements, gb.reps):
        vec = _vec_of(elem)
        for i, p in enumerate(rep):
            for e, k in p.terms.items():
                vec[(M.rank + i, e)] = k
        lead = max((t for t in vec if t[0] < M.rank), key=kern.key)
        kern.basis.append(vec)
        kern.leads.append(lead)
    work = _vec_of(v)
    rem_all = kern.reduce_full(work, main_rank=M.rank)
    remainder = _elem_of(M.ring, M.rank,
                         {t: k for t, k in rem_all.items() if t[0] < M.rank})
    if not remainder.is_zero:
        return Membership(None, remainder)
    coeffs = _elem_of(M.ring, m if m else 1,
                      {(t[0] - M.rank, t[1]): -k for t, k in rem_all.items()
                       if t[0] >= M.rank})
    coefficients = tuple(coeffs.entries[:m])
    acc = ModuleElement.zero(M.ring, M.rank)
    for c, g in zip(coefficients, M.generators):
        acc = acc + g.scale(c)
    if acc != v:
        raise StructureError("internal: expressed coefficients failed to re-expand")
    return Membership(coefficients, remainder)


def normal_form(v: ModuleElement, M: Submodule, budget: Budget | None = None) -> ModuleElement:
    return express(v, M, budget).remainder


def contains(M: Submodule, v: ModuleElement, budget: Budget | None = None) -> bool:
    return express(v, M, budget).is_member


def _contains_plain(M: Submodule, v: ModuleElement, budget: Budget | None = None) -> bool:
    """Membership by plain reduction, without coefficient extraction."""
    key = _plain_key(M.order)
    kern = _Kernel(key, budget or Budget(), use_product=False, partial_cb=lambda b: ())
    if getattr(M, "_plain", None) is None:
        seed = _Kernel(key, budget or Budget(), use_product=(M.rank == 1),
                       partial_cb=lambda b: tuple(_elem_of(M.ring, M.rank, x) for x in b))
        seed.run([_vec_of(g) for g in M.generators])
        seed.interreduce()
        M._plain = (seed.basis, seed.leads)
    kern.basis, kern.leads = M._plain
    return not kern.reduce_full(_vec_of(v))


def module_equal(M: Submodule, N: Submodule, budget: Budget | None = None) -> bool:
    """Two-sided membership of generators."""
    return all(contains(N, g, budget) for g in M.generators) and all(
        contains(M, g, budget) for g in N.generators
    )


def syzygy_module(gens: Sequence[ModuleElement], budget: Budget | None = None,
                  order: ModuleOrder | None = None) -> Submodule:
    """All relations sum(c_i * gens_i) = 0, each verified by exact expansion."""
    if not gens:
        raise RankError("syzygy computation needs at least one generator")
    ring = gens[0].ring
    rank = gens[0].rank
    for g in gens:
        if g.ring != ring:
            raise AmbientError("generators over different rings")
        if g.rank != rank:
            raise RankError("generators of unequal rank")
    morder = order or ModuleOrder(ring.default_order())
    gb = _tracked_gb(ring, rank, gens, morder, budget)
    return Submodule(ring, len(gens), gb.syzygies)


def _fresh_name(ring: VarSet, stem: str = "t") -> str:
    name = stem
    while name in ring.names:
        name += "_"
    return name


def module_intersect(M: Submodule, N: Submodule,
                     budget: Budget | None = None) -> Submodule:
    """Generators of the intersection via one auxiliary scalar variable.

    Eliminates t from t*M + (1-t)*N; every output generator is checked for
    membership in both inputs before being returned.
    """
    if M.ring != N.ring:
        raise AmbientError("modules over different rings")
    if M.rank != N.rank:
        raise RankError(f"rank mismatch: {M.rank} vs {N.rank}")
    ring = M.ring
    rank = M.rank
    budget = budget or Budget()
    tname = _fresh_name(ring)
    ring_t = VarSet((tname,) + ring.names)
    base = MonomialOrder.elimination(1)
    morder = ModuleOrder(base)
    key = _plain_key(morder)

    def lift(vecs, with_t, complement):
        out = []
        for g in vecs:
            v: Vec = {}
            for c, p in enumerate(g.entries):
                for e, k in p.terms.items():
                    if with_t:
                        v[(c, (1,) + e)] = k
                    if complement:
                        v[(c, (0,) + e)] = v.get((c, (0,) + e), Fraction(0)) + k
                        v[(c, (1,) + e)] = v.get((c, (1,) + e), Fraction(0)) - k
            out.append({t: k for t, k in v.items() if k})
        return out

    def partial(basis):
        return tuple(_elem_of(ring_t, rank, v) for v in basis)

    kern = _Kernel(key, budget, use_product=(rank == 1), partial_cb=partial)
    kern.run(lift(M.generators, True, False) + lift(N.generators, False, True))
    kern.interreduce()

    gens_out = []
    for vec, lead in sorted(zip(kern.basis, kern.leads), key=lambda p: key(*p[1])):
        if all(e[0] == 0 for (_, e) in vec):
            stripped = {(c, e[1:]): k for (c, e), k in vec.items()}
            gens_out.append(_elem_of(ring, rank, stripped))
    for g in gens_out:
        if not contains(M, g) or not contains(N, g):
            raise StructureError("internal: intersection output failed membership")
    return Submodule(ring, rank, gens_out, M.order)


def eliminate(I: Submodule, names: Sequence[str],
              budget: Budget | None = None) -> Submodule:
    """Generators of I intersected with the subring without ``names``.

    ``I`` must have rank 1; the result lives over the reduced variable set.
    """
    if I.rank != 1:
        raise RankError("elimination expects a rank-1 module (an ideal)")
    ring = I.ring
    names = list(names)
    for n in names:
        ring.index(n)
    elim_idx = [ring.index(n) for n in names]
    keep_idx = [i for i in range(len(ring)) if i not in elim_idx]
    perm = elim_idx + keep_idx
    kept_weights = None
    if ring.weights is not None:
        kept_weights = [ring.weights[i] for i in keep_idx]
    kept_ring = VarSet([ring.names[i] for i in keep_idx], kept_weights)
    big_ring = VarSet([ring.names[i] for i in perm])
    nb = len(elim_idx)
    base = MonomialOrder.elimination(nb)
    key = _plain_key(ModuleOrder(base))

    def permute(e):
        return tuple(e[i] for i in perm)

    def partial(basis):
        return tuple(_elem_of(big_ring, 1, v) for v in basis)

    kern = _Kernel(key, budget or Budget(), use_product=True, partial_cb=partial)
    vecs = []
    for g in I.generators:
        vecs.append({(0, permute(e)): k for e, k in g.entries[0].terms.items()})
    kern.run(vecs)
    kern.interreduce()

    out = []
    for vec, lead in sorted(zip(kern.basis, kern.leads), key=lambda p: key(*p[1])):
        if all(not any(e[:nb]) for (_, e) in vec):
            out.append(Polynomial(kept_ring, {e[nb:]: k for (_, e), k in vec.items()}))
    return Submodule.ideal(kept_ring, out)


def _element_sort_key(g: ModuleElement, morder: ModuleOrder):
    terms = []
    for c, p in enumerate(g.entries):
        for e, k in p.terms.items():
            terms.append((morder.key(c, e), k))
    terms.sort(reverse=True)
    return (tuple(terms),)


def prune_module(M: Submodule, budget: Budget | None = None) -> Submodule:
    """Drop generators lying in the submodule of the others; canonical sort.

    Module equality with the input is verified by membership of every
    dropped and kept generator in the pruned module.
    """
    gens = [g for g in M.generators if not g.is_zero]
    gens.sort(key=lambda g: _element_sort_key(g, M.order))
    kept = list(gens)
    for g in sorted(kept, key=lambda g: _element_sort_key(g, M.order), reverse=True):
        others = [h for h in kept if h is not g]
        if not others:
            continue
        rest = Submodule(M.ring, M.rank, others, M.order)
        if _contains_plain(rest, g, budget):
            kept = others
    out = Submodule(M.ring, M.rank, kept, M.order)
    for g in M.generators:
        if not contains(out, g, budget):
            raise StructureError("internal: prune changed the module")
    return out

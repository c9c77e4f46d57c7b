"""Buchberger's algorithm, polynomial reduction and ideal dimension.

The basis computation follows the classical improved Buchberger loop: normal
pair selection (smallest lcm degree, ties broken by the monomial order),
Gebauer-Moeller style application of the coprimality and chain criteria, and a
final interreduction yielding the unique reduced basis.  Dimension of the
zero set is read off the initial ideal as the largest set of variables that
supports no leading monomial.

Internally polynomials are plain {exponent tuple: coefficient} dicts and all
basis elements are kept monic, so a reduction step is a fused
multiply-subtract.  The prime-field and rational inner loops are specialized:
the modular one runs on raw ints, the rational one on Fractions.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import DimensionMismatchError, InvalidInputError
from .polyring import MonomialOrder, PolyRing, Polynomial, PrimeField, monomial_lcm


@dataclass(frozen=True)
class GBStats:
    """Progress snapshot handed to a poll callback during buchberger()."""

    basis_size: int
    pairs_done: int
    pairs_left: int


class Ideal:
    """A finitely generated ideal; zero generators are dropped."""

    __slots__ = ("ring", "generators")

    def __init__(self, generators):
        gens = [g for g in generators]
        if not gens:
            raise InvalidInputError("an ideal needs at least one generator")
        ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise DimensionMismatchError("ideal generators live in different rings")
        nonzero = tuple(g for g in gens if not g.is_zero())
        if not nonzero:
            raise InvalidInputError("all generators are zero (the zero ideal is not supported)")
        self.ring = ring
        self.generators = nonzero

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"Ideal({list(map(str, self.generators))})"


class GroebnerBasis:
    """A reduced Groebner basis: monic, mutually irredundant, order-sorted."""

    __slots__ = ("ring", "polys")

    def __init__(self, ring: PolyRing, polys):
        self.ring = ring
        self.polys = tuple(polys)

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    @property
    def is_unit_ideal(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].total_degree() == 0

    def leading_monomials(self):
        return [g.leading_monomial() for g in self.polys]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def __repr__(self):
        return f"GroebnerBasis({list(map(str, self.polys))})"


# ---------------------------------------------------------------------------
# Reduction (multivariate division)
# ---------------------------------------------------------------------------

def _leading(terms: dict, order) -> tuple:
    key = order.key
    return max(terms, key=key)


def _monic_dict(terms: dict, lm, field) -> dict:
    lc = terms[lm]
    if lc == field.one:
        return dict(terms)
    inv = field.inv(lc)
    if isinstance(field, PrimeField):
        p = field.p
        return {m: c * inv % p for m, c in terms.items()}
    return {m: c * inv for m, c in terms.items()}


def _make_reducers(term_dicts, order, field):
    """Precompute (leading monomial, monic tail) pairs, small leads first."""
    entries = []
    for terms in term_dicts:
        if not terms:
            continue
        lm = _leading(terms, order)
        monic = _monic_dict(terms, lm, field)
        tail = [(m, c) for m, c in monic.items() if m != lm]
        entries.append((lm, tail))
    entries.sort(key=lambda e: order.key(e[0]))
    return entries


def _reduce_full(fdict: dict, reducers, order, field) -> dict:
    """Full normal form of fdict modulo the (monic) reducers.

    Repeatedly extracts the largest remaining monomial; either eliminates it
    with the first reducer whose lead divides it or moves it to the remainder.
    A lazy-deletion heap keeps extraction cheap.
    """
    if not fdict or not reducers:
        return dict(fdict)
    heap_key = order.heap_key
    work = dict(fdict)
    heap = [(heap_key(m), m) for m in work]
    heapq.heapify(heap)
    push = heapq.heappush
    pop = heapq.heappop
    rem = {}

    if isinstance(field, PrimeField):
        p = field.p
        while heap:
            m = pop(heap)[1]
            c = work.pop(m, None)
            if c is None:
                continue
            for lm, tail in reducers:
                divisible = True
                for a, b in zip(lm, m):
                    if a > b:
                        divisible = False
                        break
                if not divisible:
                    continue
                if tail:
                    shift = tuple(x - y for x, y in zip(m, lm))
                    for mt, ct in tail:
                        mm = tuple(x + y for x, y in zip(mt, shift))
                        prev = work.get(mm)
                        if prev is None:
                            v = -c * ct % p
                            if v:
                                work[mm] = v
                                push(heap, (heap_key(mm), mm))
                        else:
                            v = (prev - c * ct) % p
                            if v:
                                work[mm] = v
                            else:
                                del work[mm]
                break
            else:
                rem[m] = c
    else:
        while heap:
            m = pop(heap)[1]
            c = work.pop(m, None)
            if c is None:
                continue
            for lm, tail in reducers:
                divisible = True
                for a, b in zip(lm, m):
                    if a > b:
                        divisible = False
                        break
                if not divisible:
                    continue
                if tail:
                    shift = tuple(x - y for x, y in zip(m, lm))
                    for mt, ct in tail:
                        mm = tuple(x + y for x, y in zip(mt, shift))
                        prev = work.get(mm)
                        if prev is None:
                            v = -c * ct
                            if v:
                                work[mm] = v
                                push(heap, (heap_key(mm), mm))
                        else:
                            v = prev - c * ct
                            if v:
                                work[mm] = v
                            else:
                                del work[mm]
                break
            else:
                rem[m] = c
    return rem


def normal_form(f: Polynomial, basis) -> Polynomial:
    """Remainder of f under multivariate division by the given polynomials.

    No term of the result is divisible by any leading term of the basis, and
    f minus the result lies in the ideal the basis generates.
    """
    polys = list(basis)
    ring = f.ring
    for g in polys:
        if g.ring != ring:
            raise DimensionMismatchError("normal_form operands live in different rings")
    reducers = _make_reducers([g.terms for g in polys if not g.is_zero()], ring.order, ring.field)
    rem = _reduce_full(f.terms, reducers, ring.order, ring.field)
    return Polynomial(ring, rem)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """The S-polynomial of f and g (leading terms cancelled against the lcm)."""
    if f.ring != g.ring:
        raise DimensionMismatchError("s_polynomial operands live in different rings")
    if f.is_zero() or g.is_zero():
        raise InvalidInputError("s_polynomial of a zero polynomial")
    ring = f.ring
    field = ring.field
    fm = _monic_dict(f.terms, f.leading_monomial(), field)
    gm = _monic_dict(g.terms, g.leading_monomial(), field)
    out = _spoly_dict(fm, f.leading_monomial(), gm, g.leading_monomial(), field)
    return Polynomial(ring, out)


def _spoly_dict(fi: dict, lmi, fj: dict, lmj, field) -> dict:
    lcm = monomial_lcm(lmi, lmj)
    ui = tuple(a - b for a, b in zip(lcm, lmi))
    uj = tuple(a - b for a, b in zip(lcm, lmj))
    out = {}
    for m, c in fi.items():
        out[tuple(x + y for x, y in zip(m, ui))] = c
    zero = field.zero
    sub = field.sub
    neg = field.neg
    for m, c in fj.items():
        mm = tuple(x + y for x, y in zip(m, uj))
        prev = out.get(mm)
        if prev is None:
            out[mm] = neg(c)
        else:
            v = sub(prev, c)
            if v == zero:
                del out[mm]
            else:
                out[mm] = v
    return out


# ---------------------------------------------------------------------------
# Buchberger's algorithm
# ---------------------------------------------------------------------------

def buchberger(generators, *, poll=None, poll_every=8) -> GroebnerBasis:
    """Compute the reduced Groebner basis of the given ideal.

    ``generators`` is an :class:`Ideal` or an iterable of polynomials in one
    ring.  ``poll``, when given, is called with a :class:`GBStats` every
    ``poll_every`` processed pairs and may raise to cancel the run (the
    command line uses this for timeouts).  Output is deterministic for fixed
    input and order.
    """
    if isinstance(generators, Ideal):
        ideal = generators
    else:
        ideal = Ideal(list(generators))
    ring = ideal.ring
    field = ring.field
    order = ring.order
    okey = order.key

    # Interreduce the input: replace each generator by its normal form
    # modulo the others until stable.  Cheap, and trims redundant seeds.
    seed = [dict(g.terms) for g in ideal.generators]
    while True:
        reduced = []
        changed = False
        for i, terms in enumerate(seed):
            others = reduced + seed[i + 1:]
            reducers = _make_reducers(others, order, field)
            r = _reduce_full(terms, reducers, order, field)
            if r != terms:
                changed = True
            if r:
                reduced.append(_monic_dict(r, _leading(r, order), field))
        seed = reduced
        if not changed:
            break
    if not seed:
        raise InvalidInputError("all generators are zero (the zero ideal is not supported)")

    polys: list[dict] = []   # append-only store of monic candidates
    lms: list[tuple] = []
    active: list[int] = []   # indices of the current basis, ascending
    pairs: dict = {}         # (i, j) i<j -> selection key
    reducers_dirty = [True]
    reducer_cache: list = []

    def current_reducers():
        if reducers_dirty[0]:
            reducer_cache.clear()
            entries = []
            for idx in active:
                lm = lms[idx]
                tail = [(m, c) for m, c in polys[idx].items() if m != lm]
                entries.append((lm, tail))
            entries.sort(key=lambda e: okey(e[0]))
            reducer_cache.extend(entries)
            reducers_dirty[0] = False
        return reducer_cache

    def pair_key(i, j):
        lcm = monomial_lcm(lms[i], lms[j])
        return (sum(lcm), okey(lcm), i, j)

    def update(ih):
        """Gebauer-Moeller update of basis and pair set with new element ih."""
        nonlocal pairs
        mh = lms[ih]
        # Phase 1: filter candidate pairs (ih, g) with the chain criterion.
        candidates = list(active)
        D = []
        while candidates:
            ig = candidates.pop()
            mg = lms[ig]
            lcm_hg = monomial_lcm(mh, mg)
            coprime = all(a + b == c for a, b, c in zip(mh, mg, lcm_hg))

            def covered(ip):
                lcm_hp = monomial_lcm(mh, lms[ip])
                return all(x <= y for x, y in zip(lcm_hp, lcm_hg))

            if coprime or (
                not any(covered(ip) for ip in candidates)
                and not any(covered(pr[1]) for pr in D)
            ):
                D.append((ih, ig, coprime))
        # Phase 2: drop pairs with coprime leads (Buchberger's first criterion).
        new_pairs = [(ih, ig) for ih, ig, coprime in D if not coprime]
        # Phase 3: prune old pairs made redundant by mh (chain criterion).
        kept = {}
        for (i1, i2), k in pairs.items():
            l12 = monomial_lcm(lms[i1], lms[i2])
            if (
                not all(x <= y for x, y in zip(mh, l12))
                or monomial_lcm(lms[i1], mh) == l12
                or monomial_lcm(lms[i2], mh) == l12
            ):
                kept[(i1, i2)] = k
        for ih_, ig in new_pairs:
            a, b = (ig, ih_) if ig < ih_ else (ih_, ig)
            kept[(a, b)] = pair_key(a, b)
        pairs = kept
        # Phase 4: retire basis elements whose lead became divisible.
        survivors = [ig for ig in active if not all(x <= y for x, y in zip(mh, lms[ig]))]
        survivors.append(ih)
        survivors.sort()
        active[:] = survivors
        reducers_dirty[0] = True

    def add_poly(terms: dict) -> int:
        lm = _leading(terms, order)
        polys.append(_monic_dict(terms, lm, field))
        lms.append(lm)
        return len(polys) - 1

    for terms in sorted(seed, key=lambda t: okey(_leading(t, order))):
        update(add_poly(terms))

    pairs_done = 0
    while pairs:
        (i, j) = min(pairs, key=pairs.__getitem__)
        del pairs[(i, j)]
        s = _spoly_dict(polys[i], lms[i], polys[j], lms[j], field)
        h = _reduce_full(s, current_reducers(), order, field)
        pairs_done += 1
        if poll is not None and pairs_done % poll_every == 0:
            poll(GBStats(len(active), pairs_done, len(pairs)))
        if h:
            update(add_poly(h))

    # Interreduce the minimal basis into the reduced one.
    final = []
    for idx in active:
        others = _make_reducers(
            [polys[k] for k in active if k != idx], order, field
        )
        r = _reduce_full(polys[idx], others, order, field)
        final.append(Polynomial(ring, r))
    final.sort(key=lambda g: okey(g.leading_monomial()), reverse=True)
    return GroebnerBasis(ring, final)


def ideal_membership(f: Polynomial, basis) -> bool:
    """True when f reduces to zero modulo the basis."""
    return normal_form(f, basis).is_zero()


# ---------------------------------------------------------------------------
# Dimension of the zero set
# ---------------------------------------------------------------------------

def _min_hitting_set_size(supports, nvars: int) -> int:
    """Smallest number of variables meeting every support set (exact B&B)."""
    minimal = []
    for s in sorted(set(supports), key=len):
        if not any(t <= s for t in minimal):
            minimal.append(s)
    best = [nvars]

    def search(chosen: set):
        for s in minimal:
            if chosen.isdisjoint(s):
                if len(chosen) + 1 >= best[0]:
                    return
                for v in sorted(s):
                    chosen.add(v)
                    search(chosen)
                    chosen.remove(v)
                return
        if len(chosen) < best[0]:
            best[0] = len(chosen)

    search(set())
    return best[0]


def ideal_dimension(basis: GroebnerBasis) -> int:
    """Affine dimension of the zero set of the ideal, from its initial ideal.

    Computed as the largest cardinality of a variable subset containing the
    support of no leading monomial.  Returns -1 for the unit ideal (empty
    variety).
    """
    if basis.is_unit_ideal:
        return -1
    nvars = basis.ring.nvars
    supports = [
        frozenset(i for i, e in enumerate(lm) if e)
        for lm in basis.leading_monomials()
    ]
    return nvars - _min_hitting_set_size(supports, nvars)


def is_reduced_groebner_basis(basis) -> bool:
    """Check the defining properties: S-polynomials reduce to zero, elements
    are monic, and no term is divisible by another element's lead."""
    polys = list(basis)
    if not polys:
        return False
    ring = polys[0].ring
    field = ring.field
    for g in polys:
        if g.is_zero() or g.leading_coefficient() != field.one:
            return False
    leads = [g.leading_monomial() for g in polys]
    for i, g in enumerate(polys):
        for m in g.terms:
            for j, lm in enumerate(leads):
                if i == j:
                    continue
                if all(a <= b for a, b in zip(lm, m)):
                    return False
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if not normal_form(s_polynomial(polys[i], polys[j]), polys).is_zero():
                return False
    return True

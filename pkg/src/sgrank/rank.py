"""Symmetric geometric rank, geometric rank and the bound-chain report.

The symmetric geometric rank of a nonzero homogeneous form F in n+1 variables
is (n+1) minus the affine dimension of the common zero set of its partial
derivatives.  This affine convention matches the projective codimension
whenever the singular locus is projectively nonempty and returns n+1 for
smooth hypersurfaces.

The geometric rank of an order-d tensor uses the multilinear form in d-1
variable groups: the generators are its partial derivatives with respect to
the last group, giving n+1 polynomials in (d-1)(n+1) variables.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatchError, InvalidInputError
from .groebner import Ideal, buchberger, ideal_dimension
from .polyring import GREVLEX, PolyRing, Polynomial, PrimeField
from .tensor import GeneralTensor, SymmetricTensor


def _as_polynomial(obj, field=None, order=None) -> Polynomial:
    if isinstance(obj, SymmetricTensor):
        if field is not None:
            obj = obj.with_field(field)
        poly = obj.to_polynomial(order or GREVLEX)
    elif isinstance(obj, Polynomial):
        poly = obj
        if field is not None:
            poly = poly.convert_field(field)
        if order is not None:
            poly = poly.convert_order(order)
    else:
        raise InvalidInputError(f"expected a polynomial or symmetric tensor, got {type(obj)!r}")
    return poly


def singular_ideal(form: Polynomial) -> Ideal:
    """The ideal of all first partial derivatives of a homogeneous form."""
    if form.is_zero():
        raise InvalidInputError("the zero form has no singular ideal")
    if not form.is_homogeneous():
        raise InvalidInputError("singular ideal needs a homogeneous form")
    if form.total_degree() < 2:
        raise InvalidInputError("singular ideal needs degree at least 2")
    partials = [form.partial_derivative(i) for i in range(form.ring.nvars)]
    nonzero = [g for g in partials if not g.is_zero()]
    if not nonzero:
        # cannot happen in characteristic 0 or for p > degree; guard anyway
        raise InvalidInputError("all partial derivatives vanish identically")
    return Ideal(nonzero)


def sgr(obj, *, field=None, order=None, poll=None) -> int:
    """Symmetric geometric rank of a symmetric tensor or homogeneous form."""
    return sgr_details(obj, field=field, order=order, poll=poll)[0]


def sgr_details(obj, *, field=None, order=None, poll=None):
    """(sgr, affine dimension of the singular locus, Groebner basis)."""
    form = _as_polynomial(obj, field=field, order=order)
    basis = buchberger(singular_ideal(form), poll=poll)
    dim = ideal_dimension(basis)
    return form.ring.nvars - dim, dim, basis


def _multilinear_generators(t: GeneralTensor, order=GREVLEX):
    """Partial derivatives of the multilinear form w.r.t. the last group.

    Generator j collects the entries whose last index is j, as a multilinear
    polynomial in the first (d-1) variable groups.
    """
    d = t.order
    m = t.dim
    nvars = (d - 1) * m
    ring = PolyRing(nvars, t.field, order)
    field = t.field
    gens = [dict() for _ in range(m)]
    for idx, val in t.entries.items():
        mono = [0] * nvars
        for g in range(d - 1):
            mono[g * m + idx[g]] += 1
        key = tuple(mono)
        bucket = gens[idx[-1]]
        prev = bucket.get(key)
        if prev is None:
            bucket[key] = val
        else:
            s = field.add(prev, val)
            if s == field.zero:
                del bucket[key]
            else:
                bucket[key] = s
    return ring, [Polynomial(ring, g) for g in gens if g]


def gr(obj, *, field=None, order=None, poll=None) -> int:
    """Geometric rank of a tensor of order at least 2."""
    return gr_details(obj, field=field, order=order, poll=poll)[0]


def gr_details(obj, *, field=None, order=None, poll=None):
    if isinstance(obj, SymmetricTensor):
        t = obj.to_general()
    elif isinstance(obj, GeneralTensor):
        t = obj
    else:
        raise InvalidInputError(f"expected a tensor, got {type(obj)!r}")
    if field is not None:
        t = t.with_field(field)
    if t.is_zero():
        raise InvalidInputError("geometric rank of the zero tensor is undefined")
    if t.order < 2:
        raise InvalidInputError("geometric rank needs order at least 2")
    ring, gens = _multilinear_generators(t, order or GREVLEX)
    basis = buchberger(Ideal(gens), poll=poll)
    dim = ideal_dimension(basis)
    return ring.nvars - dim, dim, basis


# ---------------------------------------------------------------------------
# Exact matrix rank
# ---------------------------------------------------------------------------

def matrix_rank(matrix, field=None) -> int:
    """Rank of an exact matrix by fraction-free (Bareiss) elimination.

    Rational and integer input is eliminated over the integers after clearing
    row denominators; prime-field input reduces modulo p.
    """
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise DimensionMismatchError("ragged matrix")

    if isinstance(field, PrimeField):
        p = field.p
        a = [[field.convert(v) for v in r] for r in rows]
        rank = 0
        col = 0
        nrows = len(a)
        while rank < nrows and col < ncols:
            pivot = next((r for r in range(rank, nrows) if a[r][col] % p), None)
            if pivot is None:
                col += 1
                continue
            a[rank], a[pivot] = a[pivot], a[rank]
            inv = pow(a[rank][col], p - 2, p)
            for r in range(rank + 1, nrows):
                f = a[r][col] * inv % p
                if f:
                    a[r] = [(x - f * y) % p for x, y in zip(a[r], a[rank])]
            rank += 1
            col += 1
        return rank

    # integer Bareiss after clearing denominators row by row
    cleared = []
    for r in rows:
        fr = [Fraction(v) if not isinstance(v, Fraction) else v for v in r]
        lcm = 1
        for v in fr:
            lcm = lcm * v.denominator // _gcd(lcm, v.denominator)
        cleared.append([int(v * lcm) for v in fr])
    a = cleared
    nrows = len(a)
    rank = 0
    col = 0
    prev = 1
    while rank < nrows and col < ncols:
        pivot = next((r for r in range(rank, nrows) if a[r][col]), None)
        if pivot is None:
            col += 1
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for r in range(rank + 1, nrows):
            a[r] = [
                (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) // prev
                for c in range(ncols)
            ]
        prev = a[rank][col]
        rank += 1
        col += 1
    return rank


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass
class RankReport:
    """Computed ranks plus the varieties' dimensions and run metadata.

    ``sgr`` is an upper bound on the symmetric subrank, which is not computed
    here; ``gr`` is present only when requested or implied by the input.
    """

    sgr: int | None
    gr: int | None
    sing_dim_affine: int | None
    ambient: int
    field: str
    ms: float
    sgr_basis_size: int | None = None
    gr_basis_size: int | None = None

    def bound_chain(self) -> str:
        parts = []
        if self.sgr is not None:
            parts.append(f"symmetric subrank <= {self.sgr} = SGR")
        if self.gr is not None:
            if parts:
                parts.append(f"<= {self.gr} = GR")
            else:
                parts.append(f"GR = {self.gr}")
        return " ".join(parts)

    def to_json_dict(self):
        return {
            "sgr": self.sgr,
            "gr": self.gr,
            "sing_dim_affine": self.sing_dim_affine,
            "ambient": self.ambient,
            "field": self.field,
            "ms": self.ms,
        }


def rank_report(obj, compute_gr: bool = False, *, field=None, order=None, poll=None) -> RankReport:
    """Full report for a symmetric tensor or homogeneous form.

    With ``compute_gr`` the tensor form of the input is rebuilt when needed.
    General (non-symmetric) tensors get a GR-only report.
    """
    t0 = time.perf_counter()
    if isinstance(obj, GeneralTensor) and not obj.is_symmetric():
        g, gdim, gbasis = gr_details(obj, field=field, order=order, poll=poll)
        ms = (time.perf_counter() - t0) * 1000.0
        fld = field if field is not None else obj.field
        return RankReport(
            sgr=None, gr=g, sing_dim_affine=None,
            ambient=obj.dim, field=fld.name, ms=round(ms, 3),
            gr_basis_size=len(gbasis),
        )

    if isinstance(obj, GeneralTensor):
        obj = obj.to_symmetric()

    form = _as_polynomial(obj, field=field, order=order)
    s, sdim, sbasis = sgr_details(form, poll=poll)
    g = None
    gsize = None
    if compute_gr:
        tens = obj if isinstance(obj, SymmetricTensor) else SymmetricTensor.from_polynomial(form)
        g, _, gbasis = gr_details(tens, field=field, order=order, poll=poll)
        gsize = len(gbasis)
    ms = (time.perf_counter() - t0) * 1000.0
    return RankReport(
        sgr=s, gr=g, sing_dim_affine=sdim,
        ambient=form.ring.nvars, field=form.ring.field.name, ms=round(ms, 3),
        sgr_basis_size=len(sbasis), gr_basis_size=gsize,
    )

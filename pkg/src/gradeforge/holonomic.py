"""P-recursive sequences and an exact Hadamard-product closure.

A :class:`PRecurrence` pins down a sequence by a linear recurrence with
integer polynomial coefficients,

    p_0(n) a_n + p_1(n) a_{n+1} + ... + p_r(n) a_{n+r} = 0    for n >= n0,

together with the initial terms a_0 .. a_{n0+r-1}.  The constructor shifts
n0 past every integer zero of p_r, so unrolling never divides by zero and
the stored data determines the sequence uniquely.

`hadamard_recurrence` is the closure algorithm: write both inputs as
companion systems u_{n+1} = A(n) u_n, v_{n+1} = B(n) v_n; the termwise
product satisfies c_{n+k} = rho_k(n) (u_n (x) v_n) where rho_0 = e_1 (x) e_1
and rho_{k+1}(n) = rho_k(n+1) (A(n) (x) B(n)).  The rs+1 functionals
rho_0 .. rho_{rs} over an rs-dimensional space must be linearly dependent
over Q(n); fraction-free elimination finds the first such dependence, and
clearing the accumulated denominators turns it into a recurrence for c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import _intpoly as ip
from .errors import (
    DegenerateInput,
    NoFit,
    NoKernel,
    SchemaError,
    UnderdeterminedRecurrence,
)
from .polynomials import (
    Poly,
    dense_to_poly,
    fraction_free_left_kernel,
    poly_to_dense,
)
from .rationals import coerce_rational, format_rational, parse_rational
from .series import TruncSeries


def _shift_poly(p: Poly, k: int) -> Poly:
    """p(n) -> p(n + k)."""
    coeffs, den = poly_to_dense(p)
    return dense_to_poly(ip.shift_arg(coeffs, k), den)


def _raise_base(lead: list[int], n0: int) -> int:
    """Smallest base >= n0 with no integer zero of `lead` at or past it."""
    roots = ip.int_roots(lead)
    if roots:
        n0 = max(n0, max(roots) + 1)
    return n0


@dataclass(frozen=True)
class PRecurrence:
    """Recurrence Σ p_i(n)·a_{n+i} = 0 (n >= n0) plus initial terms.

    Construction normalizes to a deterministic representative: coefficients
    are cleared to integers, divided by their common integer content, and
    sign-fixed so the leading coefficient of p_r is positive; n0 is raised
    past the integer zeros of p_r; `initial` is checked against the
    recurrence where it overlaps and trimmed to exactly n0 + r terms.

    `empirical` marks recurrences produced by guessing: true only up to the
    window they were verified on.  It is metadata, ignored by equality.
    """

    coeffs: tuple[Poly, ...]
    n0: int
    initial: tuple[Fraction, ...]
    empirical: bool = field(default=False, compare=False)

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise ValueError("recurrence order must be at least 1")
        for p in self.coeffs:
            if not isinstance(p, Poly) or p.nvars != 1:
                raise ValueError("coefficients must be univariate Poly in n")
        if not self.coeffs[-1]:
            raise ValueError("leading coefficient p_r must be nonzero")
        if self.n0 < 0:
            raise ValueError("n0 must be nonnegative")
        r = len(self.coeffs) - 1

        dense: list[list[int]] = []
        dens: list[int] = []
        for p in self.coeffs:
            c, d = poly_to_dense(p)
            dense.append(c)
            dens.append(d)
        scale = 1
        for d in dens:
            scale = scale * d // math.gcd(scale, d)
        dense = [ip.scale(c, scale // d) for c, d in zip(dense, dens)]
        g = 0
        for c in dense:
            g = math.gcd(g, ip.content(c) if c else 0)
        if g > 1:
            dense = [[x // g for x in c] for c in dense]
        if dense[-1][-1] < 0:
            dense = [ip.neg(c) for c in dense]

        n0 = _raise_base(dense[-1], self.n0)
        initial = tuple(coerce_rational(x) for x in self.initial)
        need = n0 + r
        if len(initial) < need:
            raise UnderdeterminedRecurrence(
                f"need {need} initial terms (base {n0}, order {r}), "
                f"got {len(initial)}"
            )
        # any supplied terms past the claimed base must satisfy the recurrence
        for n in range(self.n0, len(initial) - r):
            acc = Fraction(0)
            for i, c in enumerate(dense):
                acc += ip.eval_at(c, n) * initial[n + i]
            if acc:
                raise ValueError(
                    f"initial terms violate the recurrence at n = {n}"
                )

        object.__setattr__(
            self, "coeffs", tuple(dense_to_poly(c) for c in dense)
        )
        object.__setattr__(self, "n0", n0)
        object.__setattr__(self, "initial", initial[:need])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_dense(cls, coeffs: Sequence[Sequence], n0: int,
                   initial: Sequence, empirical: bool = False
                   ) -> "PRecurrence":
        """Build from dense coefficient lists (ints, Fractions, or strings)."""
        polys = []
        for c in coeffs:
            vals = [coerce_rational(x) for x in c]
            den = 1
            for v in vals:
                den = den * v.denominator // math.gcd(den, v.denominator)
            polys.append(dense_to_poly([int(v * den) for v in vals], den))
        return cls(tuple(polys), n0, tuple(initial), empirical)

    def to_json_dict(self) -> dict:
        return {
            "kind": "holonomic",
            "order": self.order,
            "coeffs": [
                [format_rational(c) for c in _dense_fractions(p)]
                for p in self.coeffs
            ],
            "n0": self.n0,
            "initial": [format_rational(x) for x in self.initial],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "PRecurrence":
        if not isinstance(d, dict):
            raise SchemaError("holonomic payload must be an object")
        for key in ("order", "coeffs", "n0", "initial"):
            if key not in d:
                raise SchemaError(f"holonomic payload missing '{key}'")
        order = d["order"]
        coeffs = d["coeffs"]
        n0 = d["n0"]
        initial = d["initial"]
        if not isinstance(order, int) or order < 1:
            raise SchemaError("'order' must be a positive integer")
        if not isinstance(n0, int) or n0 < 0:
            raise SchemaError("'n0' must be a nonnegative integer")
        if (not isinstance(coeffs, list)
                or len(coeffs) != order + 1
                or not all(isinstance(c, list) and c for c in coeffs)):
            raise SchemaError(
                "'coeffs' must be a list of order+1 nonempty coefficient lists"
            )
        if not isinstance(initial, list):
            raise SchemaError("'initial' must be a list of rationals")
        try:
            return cls.from_dense(
                [[parse_rational(str(x)) for x in c] for c in coeffs],
                n0,
                [parse_rational(str(x)) for x in initial],
            )
        except ValueError as exc:
            raise SchemaError(f"inconsistent holonomic payload: {exc}") from exc


def _dense_fractions(p: Poly) -> list[Fraction]:
    c, den = poly_to_dense(p)
    return [Fraction(x, den) for x in c]


def unroll(rec: PRecurrence, n: int) -> TruncSeries:
    """First n terms of the sequence, in exact rational arithmetic."""
    if n < 1:
        raise ValueError("need at least one term")
    r = rec.order
    dense = [poly_to_dense(p)[0] for p in rec.coeffs]
    out = list(rec.initial[:n])
    while len(out) < n:
        m = len(out) - r
        acc = Fraction(0)
        for i in range(r):
            acc += ip.eval_at(dense[i], m) * out[m + i]
        out.append(-acc / ip.eval_at(dense[r], m))
    return TruncSeries(tuple(out))


def _companion(rec: PRecurrence) -> tuple[list[list[Poly]], Poly]:
    """Companion matrix numerators and the cleared leading coefficient.

    The true transition matrix is the returned matrix divided by p_r(n).
    """
    r = rec.order
    zero = Poly.zero(1)
    lead = rec.coeffs[r]
    mat = [[zero] * r for _ in range(r)]
    for i in range(r - 1):
        mat[i][i + 1] = lead
    for j in range(r):
        mat[r - 1][j] = -rec.coeffs[j]
    return mat, lead


def _reject_zero(rec: PRecurrence) -> None:
    window = unroll(rec, rec.n0 + rec.order)
    if all(x == 0 for x in window.coeffs):
        raise DegenerateInput(
            "input sequence is identically zero; the zero sequence satisfies "
            "every recurrence and breaks kernel normalization"
        )


def _finish(q_dense: list[list[int]], n0_base: int,
            terms_of: Callable[[int], Sequence[Fraction]],
            empirical: bool) -> PRecurrence:
    """Shared tail of closure and guessing.

    Takes the raw dependence coefficients q_0..q_m (integer dense lists,
    relation Σ q_k(n)·c_{n+k} = 0 valid for n >= n0_base), strips zero
    polynomials at both ends, divides out the polynomial content, raises the
    base past every integer zero of the content and of the new leading
    coefficient, and assembles the PRecurrence with initial terms drawn from
    `terms_of`.
    """
    top = max(k for k, c in enumerate(q_dense) if c)
    low = min(k for k, c in enumerate(q_dense) if c)
    if top == low:
        # single-term relation q(n)·c_{n+low} = 0: the sequence vanishes
        # wherever q does not; represent as the order-1 "copy zero forward"
        # recurrence 0·c_n + q(n+1-low... ) — concretely c_{m+1} is pinned to
        # zero once m exceeds every integer zero of the coefficient.
        p1 = ip.shift_arg(q_dense[top], 1 - low)
        n0 = _raise_base(p1, max(n0_base + low - 1, 0))
        terms = terms_of(n0 + 1)
        return PRecurrence(
            (Poly.zero(1), dense_to_poly(ip.primitive(p1))),
            n0, tuple(terms), empirical,
        )
    shifted = [ip.shift_arg(q_dense[k], -low) for k in range(low, top + 1)]
    g = shifted[0]
    for c in shifted[1:]:
        g = ip.gcd(g, c)
    if len(g) > 1:
        shifted = [ip.exact_div(c, g) for c in shifted]
    n0 = n0_base + low
    if len(g) > 1:
        n0 = _raise_base(g, n0)
    n0 = _raise_base(shifted[-1], n0)
    r = len(shifted) - 1
    terms = terms_of(n0 + r)
    return PRecurrence(
        tuple(dense_to_poly(c) for c in shifted), n0, tuple(terms), empirical
    )


def hadamard_recurrence(ra: PRecurrence, rb: PRecurrence) -> PRecurrence:
    """A recurrence for the termwise product c_n = a_n * b_n, order <= r*s."""
    _reject_zero(ra)
    _reject_zero(rb)
    r, s = ra.order, rb.order
    rs = r * s
    amat, alead = _companion(ra)
    bmat, blead = _companion(rb)
    kron = [
        [amat[i][i2] * bmat[j][j2] for i2 in range(r) for j2 in range(s)]
        for i in range(r) for j in range(s)
    ]
    lead = alead * blead

    one = Poly.const(1, 1)
    zero = Poly.zero(1)
    pi = [zero] * rs
    pi[0] = one
    rows = [list(pi)]
    delta = one
    deltas = [delta]
    for _ in range(rs):
        up = [_shift_poly(p, 1) for p in pi]
        pi = [
            sum((up[c] * kron[c][c2] for c in range(rs) if up[c]), zero)
            for c2 in range(rs)
        ]
        delta = _shift_poly(delta, 1) * lead
        rows.append(list(pi))
        deltas.append(delta)

    v = fraction_free_left_kernel(rows)
    q_dense = []
    for k in range(rs + 1):
        prod = v[k] * deltas[k]
        c, den = poly_to_dense(prod)
        assert den == 1
        q_dense.append(c)

    n0_base = max(ra.n0, rb.n0)

    def terms_of(count: int) -> list[Fraction]:
        if count == 0:
            return []
        ua = unroll(ra, count)
        ub = unroll(rb, count)
        return [x * y for x, y in zip(ua.coeffs, ub.coeffs)]

    return _finish(q_dense, n0_base, terms_of, empirical=False)


def guess_recurrence(f: TruncSeries, max_order: int,
                     max_degree: int) -> PRecurrence:
    """Fit Σ_{i<=R} Σ_{d<=D} λ_{i,d} n^d a_{n+i} = 0 against all terms of f.

    Exact null-space computation; the returned recurrence reproduces every
    supplied term but is certified no further — it carries empirical=True.
    Raises NoFit when only the zero combination annihilates the data.
    """
    R, D = max_order, max_degree
    if R < 1 or D < 0:
        raise ValueError("need max_order >= 1 and max_degree >= 0")
    need = (R + 1) * (D + 1) + R + 10
    if f.order < need:
        raise ValueError(
            f"guessing with order {R}, degree {D} needs at least {need} "
            f"terms, got {f.order}"
        )
    terms = f.coeffs
    npoints = f.order - R
    rows = []
    for i in range(R + 1):
        for d in range(D + 1):
            rows.append([
                Poly.const(1, Fraction(n ** d) * terms[n + i])
                for n in range(npoints)
            ])
    try:
        v = fraction_free_left_kernel(rows)
    except NoKernel:
        raise NoFit(
            f"no recurrence of order <= {R} with coefficient degree <= {D} "
            f"fits the {f.order} supplied terms"
        ) from None

    q_dense: list[list[int]] = []
    for i in range(R + 1):
        coeffs = []
        for d in range(D + 1):
            val = v[i * (D + 1) + d].constant_term()
            assert val.denominator == 1
            coeffs.append(int(val))
        q_dense.append(ip.trim(coeffs))

    def terms_of(count: int) -> list[Fraction]:
        if count > f.order:
            raise UnderdeterminedRecurrence(
                f"certifying the guessed recurrence needs {count} terms, "
                f"only {f.order} supplied"
            )
        return list(terms[:count])

    try:
        rec = _finish(q_dense, 0, terms_of, empirical=True)
    except UnderdeterminedRecurrence as exc:
        raise NoFit(str(exc)) from exc
    if unroll(rec, f.order).coeffs != terms:
        raise NoFit(
            "candidate dependence does not extend to all supplied terms"
        )
    return rec

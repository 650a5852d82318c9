"""Exact multivariate polynomials and rational functions.

Representation: sparse dict mapping exponent tuples to nonzero Fractions.
The monomial order everywhere is graded lexicographic (total degree first,
then leftmost variable most significant); canonical text rendering, leading
terms, and the deterministic elimination in `fraction_free_left_kernel` all
use it.

`fraction_free_left_kernel` works over univariate integer polynomials using
Bareiss elimination (exact divisions, no fractions), which is what the
recurrence closure code needs: entries stay in the integer-polynomial ring
instead of blowing up as reduced rational functions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence

from . import _intpoly as ip
from .errors import (
    InexactDivision,
    NoKernel,
    PoleAtPoint,
    VariableMismatch,
)
from .rationals import coerce_rational, format_rational


def _grlex_key(expo: tuple[int, ...]):
    return (sum(expo), expo)


class Poly:
    """Sparse multivariate polynomial over Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction]):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        for expo, coeff in terms.items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != nvars or any(e < 0 for e in expo):
                raise ValueError(f"bad exponent tuple {expo} for {nvars} vars")
            c = coerce_rational(coeff) if not isinstance(coeff, Fraction) else coeff
            if c:
                clean[expo] = clean.get(expo, Fraction(0)) + c
                if not clean[expo]:
                    del clean[expo]
        self.terms = clean

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, value) -> "Poly":
        value = coerce_rational(value)
        return cls(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        expo = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {expo: Fraction(1)})

    # -- structure -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        """Graded-lex leading (exponent, coefficient)."""
        expo = max(self.terms, key=_grlex_key)
        return expo, self.terms[expo]

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise VariableMismatch(
                f"operands over {self.nvars} and {other.nvars} variables"
            )

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = Poly.zero(self.nvars)
        res.terms = out
        return res

    def __neg__(self) -> "Poly":
        res = Poly.zero(self.nvars)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            k = coerce_rational(other)
            res = Poly.zero(self.nvars)
            if k:
                res.terms = {e: c * k for e, c in self.terms.items()}
            return res
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        res = Poly.zero(self.nvars)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Exact quotient; raises InexactDivision on nonzero remainder."""
        self._check(divisor)
        if divisor.is_zero():
            raise InexactDivision("division by the zero polynomial")
        rem = dict(self.terms)
        out: dict[tuple[int, ...], Fraction] = {}
        de, dc = divisor.leading()
        while rem:
            le = max(rem, key=_grlex_key)
            lc = rem[le]
            qe = tuple(a - b for a, b in zip(le, de))
            if any(x < 0 for x in qe):
                raise InexactDivision("leading term not divisible")
            qc = lc / dc
            out[qe] = out.get(qe, Fraction(0)) + qc
            for e2, c2 in divisor.terms.items():
                e = tuple(a + b for a, b in zip(qe, e2))
                s = rem.get(e, Fraction(0)) - qc * c2
                if s:
                    rem[e] = s
                else:
                    rem.pop(e, None)
        res = Poly.zero(self.nvars)
        res.terms = {e: c for e, c in out.items() if c}
        return res

    def derivative(self, var: int) -> "Poly":
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            if e[var] == 0:
                continue
            e2 = tuple(x - 1 if i == var else x for i, x in enumerate(e))
            out[e2] = out.get(e2, Fraction(0)) + c * e[var]
        res = Poly.zero(self.nvars)
        res.terms = {e: c for e, c in out.items() if c}
        return res

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise VariableMismatch(
                f"point has {len(point)} coordinates, polynomial {self.nvars}"
            )
        pt = [coerce_rational(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(pt, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def embed(self, nvars: int, positions: Sequence[int]) -> "Poly":
        """Map variable i of self to variable positions[i] of a larger ring."""
        if len(positions) != self.nvars:
            raise VariableMismatch("positions must cover every variable")
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            e2 = [0] * nvars
            for i, k in enumerate(e):
                e2[positions[i]] += k
            out[tuple(e2)] = c
        res = Poly.zero(nvars)
        res.terms = out
        return res

    # -- rendering -------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = (
            ["n"] if self.nvars == 1
            else ["z", "y"] if self.nvars == 2
            else [f"x{i}" for i in range(self.nvars)]
        )
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{names[i]}^{k}" if k > 1 else names[i]
                for i, k in enumerate(e) if k
            )
            if mono:
                cs = "" if c == 1 else "-" if c == -1 else f"{format_rational(c)}*"
                parts.append(f"{cs}{mono}")
            else:
                parts.append(format_rational(c))
        text = " + ".join(parts).replace("+ -", "- ")
        return text


class RatFun:
    """Ratio of two polynomials, canonicalized only up to the sign of the
    denominator's graded-lex leading coefficient (no gcd reduction)."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if num.nvars != den.nvars:
            raise VariableMismatch("numerator/denominator variable counts differ")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        _, lead = den.leading()
        if lead < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def eval(self, point: Sequence) -> Fraction:
        d = self.den.eval(point)
        if d == 0:
            raise PoleAtPoint(f"denominator vanishes at {list(point)}")
        return self.num.eval(point) / d

    def __mul__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.num, self.den * other.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"({self.num!r}) / ({self.den!r})"


# -- univariate bridge -------------------------------------------------------

def poly_to_dense(p: Poly) -> tuple[list[int], int]:
    """Univariate Poly -> (integer coefficient list, positive denominator)."""
    if p.nvars != 1:
        raise VariableMismatch("dense form needs a univariate polynomial")
    if p.is_zero():
        return [], 1
    deg = p.degree_in(0)
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    out = [0] * (deg + 1)
    for e, c in p.terms.items():
        out[e[0]] = int(c * den)
    return out, den


def dense_to_poly(c: Sequence[int], den: int = 1) -> Poly:
    return Poly(1, {(i,): Fraction(x, den) for i, x in enumerate(c) if x})


# -- fraction-free left kernel ------------------------------------------------

def fraction_free_left_kernel(matrix: Sequence[Sequence[Poly]]) -> list[Poly]:
    """A nonzero row vector v with v * matrix = 0, over univariate Poly.

    Deterministic: Bareiss elimination over the integer-polynomial ring,
    processing columns left to right, pivot = first nonzero row.  The result
    is content-free (polynomial and integer content divided out) with the
    first nonzero entry's leading coefficient positive.

    Raises NoKernel when the matrix has full row rank (no such vector).
    """
    rows = len(matrix)
    if rows == 0:
        raise NoKernel("empty matrix has no nonzero kernel vector")
    cols = len(matrix[0])
    if any(len(r) != cols for r in matrix):
        raise VariableMismatch("ragged matrix")

    # Equations: columns of `matrix`.  E[k][i] = matrix[i][k], as dense ints
    # (clearing each equation's denominators leaves the kernel unchanged).
    E: list[list[list[int]]] = []
    for k in range(cols):
        dense = []
        lcm_den = 1
        for i in range(rows):
            c, d = poly_to_dense(matrix[i][k])
            dense.append((c, d))
            lcm_den = lcm_den * d // math.gcd(lcm_den, d)
        row = [ip.scale(c, lcm_den // d) for c, d in dense]
        g = 0
        for c in row:
            g = math.gcd(g, ip.content(c))
        if g > 1:
            row = [[x // g for x in c] for c in row]
        E.append(row)

    prev: list[int] = [1]
    pivot_rows: list[tuple[int, int]] = []  # (equation row, variable column)
    next_row = 0
    free_cols: list[int] = []
    for col in range(rows):
        pr = next((i for i in range(next_row, cols) if E[i][col]), None)
        if pr is None:
            free_cols.append(col)
            continue
        E[next_row], E[pr] = E[pr], E[next_row]
        piv = E[next_row][col]
        for i in range(next_row + 1, cols):
            if not any(E[i][j] for j in range(col, rows)):
                continue
            head = E[i][col]
            for j in range(col + 1, rows):
                t = ip.sub(ip.mul(piv, E[i][j]), ip.mul(head, E[next_row][j]))
                E[i][j] = t if prev == [1] else ip.exact_div(t, prev)
            E[i][col] = []
        prev = piv
        pivot_rows.append((next_row, col))
        next_row += 1
        if next_row == cols:
            free_cols.extend(range(col + 1, rows))
            break

    if not free_cols:
        raise NoKernel("matrix has full row rank")
    j0 = free_cols[0]

    # Back-substitution over reduced integer-polynomial fractions.
    def reduce(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
        if not num:
            return [], [1]
        g = ip.gcd(num, den)
        if g != [1]:
            num = ip.exact_div(num, g)
            den = ip.exact_div(den, g)
        cg = math.gcd(ip.content(num), ip.content(den))
        if den[-1] < 0:
            cg = -cg
        if cg != 1:
            num = [x // cg for x in num]
            den = [x // cg for x in den]
        return num, den

    v_num: dict[int, list[int]] = {j0: [1]}
    v_den: dict[int, list[int]] = {j0: [1]}
    for prow, pcol in reversed(pivot_rows):
        if pcol > j0:
            continue  # v is zero there; equation already satisfied
        acc_n: list[int] = []
        acc_d: list[int] = [1]
        for j, nj in v_num.items():
            if j <= pcol:
                continue
            entry = E[prow][j]
            if not entry:
                continue
            # acc += entry * v_j
            tn = ip.mul(entry, nj)
            td = v_den[j]
            acc_n = ip.add(ip.mul(acc_n, td), ip.mul(tn, acc_d))
            acc_d = ip.mul(acc_d, td)
            acc_n, acc_d = reduce(acc_n, acc_d)
        piv = E[prow][pcol]
        num, den = reduce(ip.neg(acc_n), ip.mul(acc_d, piv))
        if num:
            v_num[pcol] = num
            v_den[pcol] = den

    # Clear denominators: split each into integer content times primitive
    # part so both lcm computations stay exact over the integers.
    split: dict[int, tuple[int, list[int]]] = {}
    lcm_int = 1
    lcm_poly: list[int] = [1]
    for j, d in v_den.items():
        c = ip.content(d)
        p = [x // c for x in d]
        split[j] = (c, p)
        lcm_int = lcm_int * c // math.gcd(lcm_int, c)
        lcm_poly = ip.lcm(lcm_poly, p)
    vec: list[list[int]] = [[] for _ in range(rows)]
    for j, nj in v_num.items():
        c, p = split[j]
        q = ip.mul(nj, ip.exact_div(lcm_poly, p))
        vec[j] = ip.scale(q, lcm_int // c)

    # content-free normalization
    gpoly: list[int] = []
    for c in vec:
        if c:
            gpoly = ip.gcd(gpoly, c) if gpoly else ip.primitive(c)
        if gpoly == [1]:
            break
    if gpoly and gpoly != [1]:
        vec = [ip.exact_div(c, gpoly) if c else [] for c in vec]
    gint = 0
    for c in vec:
        gint = math.gcd(gint, ip.content(c))
    if gint > 1:
        vec = [[x // gint for x in c] for c in vec]
    first = next((c for c in vec if c), None)
    if first is None:
        raise NoKernel("elimination produced the zero vector")
    if first[-1] < 0:
        vec = [ip.neg(c) for c in vec]
    return [dense_to_poly(c) for c in vec]

"""Diagonal realizations of algebraic branches and their Hadamard products.

A branch through the origin is the diagonal of an explicit bivariate
rational function (Furstenberg's construction); multiplying such
witnesses over pairwise disjoint variable pairs realizes the Hadamard
product of the branches as the complete diagonal of a rational function
in twice as many variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .algebraic import Annihilator, expand_branch
from .errors import (
    BranchNotAtZero,
    BudgetExceeded,
    DenominatorVanishesAtOrigin,
    NotARoot,
    RamifiedAtOrigin,
    SchemaError,
    VariableCollision,
)
from .polynomials import Poly, RatFun
from .rationals import coerce_rational, format_rational, parse_rational
from .series import TruncSeries, hadamard_mul

#: Hard caps for multivariate expansion; anything larger is not a desk job.
DESK_MAX_VARS = 6
DESK_MAX_ORDER = 12


# -- bivariate construction ---------------------------------------------------

def _substitute_first(p: Poly) -> Poly:
    """Apply z -> x*y to a bivariate polynomial: z^a y^b becomes x^a y^(a+b)."""
    out = {(a, a + b): c for (a, b), c in p.terms.items()}
    return Poly(2, out)


def _shift_down_y(p: Poly) -> Poly:
    """Exact division by y (every term must already carry a y factor)."""
    return Poly(2, {(a, b - 1): c for (a, b), c in p.terms.items()})


def furstenberg_bivariate(ann: Annihilator) -> RatFun:
    """Rational R(x, y) whose diagonal is the branch of ``ann`` at the origin.

    R = y^2 P_y(xy, y) / P(xy, y), reduced by the common factor y so the
    denominator is a unit at (0, 0).  Variable 0 is x, variable 1 is y.
    """
    if ann.y0 != 0:
        raise BranchNotAtZero(
            f"branch point y0 = {format_rational(ann.y0)}; "
            "shift the branch to the origin first"
        )
    p = ann.poly
    if p.eval([Fraction(0), Fraction(0)]) != 0:
        raise NotARoot("P(0, 0) != 0: no branch through the origin")
    py = p.derivative(1)
    if py.eval([Fraction(0), Fraction(0)]) == 0:
        raise RamifiedAtOrigin("P_y(0, 0) = 0")

    num = _substitute_first(py)          # P_y(xy, y), unit constant term
    den = _substitute_first(p)           # P(xy, y)
    # P(0,0) = 0 kills the constant term of den, while P_y(0,0) != 0 means P
    # has a linear y term, which survives the substitution with y-exponent 1.
    # So den is divisible by y exactly once and y^2 * num exactly twice.
    y = Poly.variable(2, 1)
    return RatFun(y * num, _shift_down_y(den))


def _translate_branch(p: Poly, c: Fraction) -> Poly:
    """P(z, y + c): move the branch point c to the origin."""
    z = Poly.variable(2, 0)
    shifted_y = Poly.variable(2, 1) + Poly.const(2, c)
    out = Poly.zero(2)
    for (a, b), coeff in p.terms.items():
        out = out + Poly.const(2, coeff) * z**a * shifted_y**b
    return out


# -- diagonal extraction ------------------------------------------------------

def _mul_capped(a: Poly, b: Poly, cap: int) -> Poly:
    """Product with every exponent clipped at ``cap``.

    Exponents only grow under multiplication by the nonnegative-exponent
    factors used here, so dropping a monomial with some exponent > cap can
    never affect a retained coefficient: the truncation is exact on the
    kept monomials.
    """
    out: dict[tuple[int, ...], Fraction] = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if max(e) > cap:
                continue
            out[e] = out.get(e, Fraction(0)) + ca * cb
    return Poly(a.nvars, out)


def diagonal_extract(rat: RatFun, order: int) -> TruncSeries:
    """Coefficients of x_1^n ... x_m^n for n < order.

    Expands num/den as an exact multivariate series, inverting the
    denominator as den(0) * (1 - Q) via the geometric series; the
    expansion is truncated by total degree m * order.
    """
    if order < 1:
        raise ValueError("need at least one diagonal coefficient")
    m = rat.nvars
    if m > DESK_MAX_VARS or order > DESK_MAX_ORDER:
        raise BudgetExceeded(
            f"diagonal extraction capped at {DESK_MAX_VARS} variables "
            f"and order {DESK_MAX_ORDER}; asked for {m} variables, "
            f"order {order}"
        )
    d0 = rat.den.constant_term()
    if d0 == 0:
        raise DenominatorVanishesAtOrigin(
            "denominator has no constant term; the series does not exist"
        )
    cap = order - 1
    one = Poly.const(m, 1)
    q = Poly(m, {
        e: -c / d0 for e, c in rat.den.terms.items()
        if any(e) and max(e) <= cap
    })
    # 1/(1 - Q) = sum Q^k; Q has no constant term, so total degree >= k
    # at step k and m * cap passes saturate every retained monomial.
    inv = one
    for _ in range(m * cap):
        inv = one + _mul_capped(q, inv, cap)
    full = _mul_capped(rat.num, inv, cap)
    diag = tuple(
        full.terms.get((n,) * m, Fraction(0)) / d0 for n in range(order)
    )
    return TruncSeries(diag)


# -- witnesses ----------------------------------------------------------------

def _poly_terms_json(p: Poly) -> list[list]:
    from .polynomials import _grlex_key

    rows = []
    for e in sorted(p.terms, key=_grlex_key, reverse=True):
        rows.append([*e, format_rational(p.terms[e])])
    return rows


def _poly_terms_parse(rows, nvars: int, what: str) -> Poly:
    if not isinstance(rows, list):
        raise SchemaError(f"{what} must be a list of term rows")
    terms: dict[tuple[int, ...], Fraction] = {}
    for row in rows:
        if (not isinstance(row, list) or len(row) != nvars + 1
                or not all(isinstance(e, int) and e >= 0 for e in row[:-1])
                or not isinstance(row[-1], str)):
            raise SchemaError(
                f"{what} term must be [{nvars} exponents..., coeff string]"
            )
        try:
            c = parse_rational(row[-1])
        except ValueError as exc:
            raise SchemaError(f"{what}: {exc}") from exc
        terms[tuple(row[:-1])] = terms.get(tuple(row[:-1]), Fraction(0)) + c
    return Poly(nvars, terms)


@dataclass(frozen=True)
class DiagonalWitness:
    """Rational function in 2d variables whose complete diagonal is a
    Hadamard product of d algebraic branches (up to a constant at n = 0)."""

    R: RatFun
    d: int
    verified_order: int
    factor_annihilators: tuple[Annihilator, ...] = ()
    constant_shift: Fraction = Fraction(0)

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("need at least one factor")
        if self.R.nvars != 2 * self.d:
            raise ValueError(
                f"witness for {self.d} factors needs {2 * self.d} variables, "
                f"got {self.R.nvars}"
            )
        if self.verified_order < 1:
            raise ValueError("verified_order must be positive")
        if self.R.den.constant_term() == 0:
            raise DenominatorVanishesAtOrigin(
                "witness denominator must be a unit at the origin"
            )
        object.__setattr__(
            self, "factor_annihilators", tuple(self.factor_annihilators)
        )
        if self.factor_annihilators and len(self.factor_annihilators) != self.d:
            raise ValueError("factor annihilator count must match d")
        object.__setattr__(
            self, "constant_shift", coerce_rational(self.constant_shift)
        )

    def diagonal(self, order: int) -> TruncSeries:
        """Complete diagonal with the recorded constant re-added at n = 0."""
        base = diagonal_extract(self.R, order)
        if self.constant_shift == 0:
            return base
        return TruncSeries(
            (base.coeffs[0] + self.constant_shift,) + base.coeffs[1:]
        )

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "R": {
                "num": _poly_terms_json(self.R.num),
                "den": _poly_terms_json(self.R.den),
            },
            "verified_order": self.verified_order,
            "constant_shift": format_rational(self.constant_shift),
        }

    @classmethod
    def from_json_dict(cls, obj) -> "DiagonalWitness":
        if not isinstance(obj, dict):
            raise SchemaError("witness must be a JSON object")
        missing = {"d", "R", "verified_order", "constant_shift"} - set(obj)
        if missing:
            raise SchemaError(f"witness missing keys: {sorted(missing)}")
        d = obj["d"]
        if not isinstance(d, int) or d < 1:
            raise SchemaError("d must be a positive integer")
        rat = obj["R"]
        if not isinstance(rat, dict) or set(rat) != {"num", "den"}:
            raise SchemaError('R must be an object with "num" and "den"')
        num = _poly_terms_parse(rat["num"], 2 * d, "num")
        den = _poly_terms_parse(rat["den"], 2 * d, "den")
        if den.is_zero():
            raise SchemaError("den must be nonzero")
        order = obj["verified_order"]
        if not isinstance(order, int) or order < 1:
            raise SchemaError("verified_order must be a positive integer")
        if not isinstance(obj["constant_shift"], str):
            raise SchemaError("constant_shift must be a rational string")
        try:
            shift = parse_rational(obj["constant_shift"])
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
        return cls(RatFun(num, den), d, order, (), shift)


def diagonal_witness(ann: Annihilator, verified_order: int = 10) -> DiagonalWitness:
    """Construct and check the d = 1 witness for a branch.

    A branch with constant term c != 0 is lifted as f - c and c is
    recorded on the witness, to be re-added at n = 0.
    """
    shift = ann.y0
    at_zero = ann
    if shift != 0:
        at_zero = Annihilator(
            _translate_branch(ann.poly, shift), Fraction(0)
        )
    rat = furstenberg_bivariate(at_zero)
    witness = DiagonalWitness(rat, 1, verified_order, (ann,), shift)
    want = expand_branch(ann, verified_order)
    got = witness.diagonal(verified_order)
    assert got.coeffs == want.coeffs, (
        "diagonal disagrees with the branch expansion"
    )
    return witness


def product_lift(
    parts: Sequence[Union[DiagonalWitness, RatFun]],
    positions: Sequence[Sequence[int]] | None = None,
) -> RatFun:
    """Product of rational functions over disjoint variable blocks.

    The complete diagonal of the result is the Hadamard product of the
    constituent diagonals.  By default part i occupies the next
    consecutive block of variables; explicit ``positions`` may interleave
    them but must stay pairwise disjoint.
    """
    rats = [p.R if isinstance(p, DiagonalWitness) else p for p in parts]
    if len(rats) < 2:
        raise ValueError("product lift needs at least two factors")
    total = sum(r.nvars for r in rats)
    if positions is None:
        offsets = []
        at = 0
        for r in rats:
            offsets.append(tuple(range(at, at + r.nvars)))
            at += r.nvars
        positions = offsets
    else:
        if len(positions) != len(rats):
            raise ValueError("one position block per factor")
        for r, pos in zip(rats, positions):
            if len(pos) != r.nvars:
                raise ValueError("position block size must match factor arity")
            if not all(0 <= i < total for i in pos):
                raise ValueError("position index outside the ambient ring")
        flat = [i for pos in positions for i in pos]
        if len(set(flat)) != len(flat):
            raise VariableCollision(
                "factor variable blocks overlap; they must be disjoint"
            )
    num = Poly.const(total, 1)
    den = Poly.const(total, 1)
    for r, pos in zip(rats, positions):
        num = num * r.num.embed(total, pos)
        den = den * r.den.embed(total, pos)
    return RatFun(num, den)


def product_witness(
    factors: Sequence[DiagonalWitness], verified_order: int = 8
) -> DiagonalWitness:
    """Combine witnesses; the result's diagonal is the Hadamard product
    of the factors' diagonals (shifts composed at n = 0)."""
    if len(factors) < 2:
        raise ValueError("need at least two factors")
    rat = product_lift(factors)
    d = sum(f.d for f in factors)
    # The diagonals multiply pointwise, so only n = 0 needs a correction:
    # shifted product minus the bare product of the witnesses' n = 0 values.
    with_shift = Fraction(1)
    bare = Fraction(1)
    for f in factors:
        at0 = f.R.num.constant_term() / f.R.den.constant_term()
        with_shift *= at0 + f.constant_shift
        bare *= at0
    anns: tuple[Annihilator, ...] = ()
    if all(f.factor_annihilators for f in factors):
        anns = tuple(a for f in factors for a in f.factor_annihilators)
    witness = DiagonalWitness(rat, d, verified_order, anns, with_shift - bare)
    out = witness.diagonal(verified_order)
    acc = factors[0].diagonal(verified_order)
    for f in factors[1:]:
        acc = hadamard_mul(acc, f.diagonal(verified_order))
    assert out.coeffs == acc.coeffs, (
        "product diagonal disagrees with the Hadamard product"
    )
    return witness

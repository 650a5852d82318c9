"""Rational-diagonal witnesses for branches and their Hadamard products."""

import json
import random
from fractions import Fraction

import pytest

from gradeforge import (
    DiagonalWitness,
    diagonal_extract,
    diagonal_witness,
    expand_branch,
    furstenberg_bivariate,
    hadamard_mul,
    product_lift,
    product_witness,
)
from gradeforge.algebraic import Annihilator
from gradeforge.catalog import CORPUS_ANNIHILATORS
from gradeforge.errors import (
    BranchNotAtZero,
    BudgetExceeded,
    DenominatorVanishesAtOrigin,
    NotARoot,
    RamifiedAtOrigin,
    SchemaError,
    VariableCollision,
)
from gradeforge.polynomials import Poly, RatFun

from oracles import catalan_witness_diagonal, diagonal_from_box, rational_series_box

X = Poly.variable(2, 0)
Y = Poly.variable(2, 1)
ONE = Poly.const(2, 1)


# ---------------------------------------------------------------------------
# the bivariate construction


def test_bivariate_witness_for_shifted_catalans():
    # P = y^2 - y + z gives R = y(2y - 1) / (x + y - 1)
    R = furstenberg_bivariate(CORPUS_ANNIHILATORS["catalan-shifted"])
    assert R.num == Poly(2, {(0, 2): Fraction(2), (0, 1): Fraction(-1)})
    assert R.den == Poly(2, {(1, 0): Fraction(1), (0, 1): Fraction(1),
                             (0, 0): Fraction(-1)})


def test_bivariate_witness_diagonal_matches_binomial_oracle():
    R = furstenberg_bivariate(CORPUS_ANNIHILATORS["catalan-shifted"])
    got = diagonal_extract(R, 10)
    assert list(got.coeffs) == catalan_witness_diagonal(10)


def test_bivariate_witness_requires_branch_at_origin():
    with pytest.raises(BranchNotAtZero):
        furstenberg_bivariate(CORPUS_ANNIHILATORS["catalan"])  # y0 = 1


def test_bivariate_witness_requires_root_at_origin():
    p = ONE - Y + Poly.variable(2, 0)  # P(0, 0) = 1
    with pytest.raises(NotARoot):
        furstenberg_bivariate(Annihilator(p, Fraction(0)))


def test_bivariate_witness_rejects_ramified_branch():
    with pytest.raises(RamifiedAtOrigin):
        furstenberg_bivariate(Annihilator(Y * Y - X, Fraction(0)))


# ---------------------------------------------------------------------------
# diagonal extraction


def test_diagonal_of_two_variable_geometric_is_central_binomial():
    got = diagonal_extract(RatFun(ONE, ONE - X - Y), 8)
    assert [int(c) for c in got.coeffs] == [1, 2, 6, 20, 70, 252, 924, 3432]


def test_diagonal_of_constant_is_delta():
    got = diagonal_extract(RatFun(ONE, ONE), 5)
    assert [int(c) for c in got.coeffs] == [1, 0, 0, 0, 0]


def test_diagonal_requires_unit_denominator():
    with pytest.raises(DenominatorVanishesAtOrigin):
        diagonal_extract(RatFun(ONE, X + Y), 4)


def test_diagonal_rejects_nonpositive_order():
    with pytest.raises(ValueError):
        diagonal_extract(RatFun(ONE, ONE - X - Y), 0)


def test_diagonal_enforces_desk_caps():
    with pytest.raises(BudgetExceeded):
        diagonal_extract(RatFun(ONE, ONE - X - Y), 13)
    wide = RatFun(Poly.const(7, 1), Poly.const(7, 1))
    with pytest.raises(BudgetExceeded):
        diagonal_extract(wide, 2)


def test_diagonal_matches_linear_solve_oracle():
    # num/den with several mixed terms; the oracle solves den*S = num
    # degree by degree instead of inverting a geometric series
    num = {(0, 0): 1, (1, 1): -2}
    den = {(0, 0): 2, (1, 0): -1, (0, 1): -1, (1, 1): 1}
    box = rational_series_box(num, den, (8, 8))
    want = diagonal_from_box(box, 2, 8)
    rat = RatFun(
        Poly(2, {k: Fraction(v) for k, v in num.items()}),
        Poly(2, {k: Fraction(v) for k, v in den.items()}),
    )
    assert list(diagonal_extract(rat, 8).coeffs) == want


# ---------------------------------------------------------------------------
# single-branch witnesses


@pytest.mark.parametrize("name", sorted(CORPUS_ANNIHILATORS))
def test_witness_round_trips_corpus_branch(name):
    ann = CORPUS_ANNIHILATORS[name]
    w = diagonal_witness(ann, 10)
    assert w.d == 1
    assert w.constant_shift == ann.y0
    assert w.diagonal(10).coeffs == expand_branch(ann, 10).coeffs


@pytest.mark.parametrize("poly", [
    Y**3 + Y - X,            # cubic branch through the origin
    Y * Y + Poly.const(2, 2) * Y - X,
])
def test_witness_round_trips_other_branches(poly):
    ann = Annihilator(poly, Fraction(0))
    w = diagonal_witness(ann, 10)
    assert w.diagonal(10).coeffs == expand_branch(ann, 10).coeffs


def test_witness_records_branch_constant():
    w = diagonal_witness(CORPUS_ANNIHILATORS["geometric"], 8)
    assert w.constant_shift == 1
    # the underlying rational diagonal starts at 0; the shift restores it
    assert diagonal_extract(w.R, 3).coeffs[0] == 0
    assert w.diagonal(3).coeffs[0] == 1


# ---------------------------------------------------------------------------
# products over disjoint variable blocks


def test_product_witness_multiplies_diagonals():
    w1 = diagonal_witness(CORPUS_ANNIHILATORS["catalan"], 8)
    w2 = diagonal_witness(CORPUS_ANNIHILATORS["central-binomial"], 8)
    pw = product_witness([w1, w2], 8)
    assert pw.d == 2
    assert pw.R.nvars == 4
    want = hadamard_mul(w1.diagonal(8), w2.diagonal(8))
    assert pw.diagonal(8).coeffs == want.coeffs
    assert [int(c) for c in pw.diagonal(6).coeffs] == [
        1, 2, 12, 100, 980, 10584,
    ]


def test_product_witness_composes_constant_shifts():
    w = diagonal_witness(CORPUS_ANNIHILATORS["geometric"], 6)
    pw = product_witness([w, w], 6)
    # each factor's bare diagonal starts at 0, so the composed shift is
    # (0 + 1)(0 + 1) - 0*0 = 1
    assert pw.constant_shift == 1
    assert all(c == 1 for c in pw.diagonal(6).coeffs)


def test_product_lift_accepts_interleaved_positions():
    w1 = diagonal_witness(CORPUS_ANNIHILATORS["catalan-shifted"], 6)
    w2 = diagonal_witness(CORPUS_ANNIHILATORS["geometric"], 6)
    default = product_lift([w1, w2])
    braided = product_lift([w1, w2], positions=[(0, 2), (1, 3)])
    # the complete diagonal ignores how the blocks are interleaved
    assert (diagonal_extract(default, 6).coeffs
            == diagonal_extract(braided, 6).coeffs)


def test_product_lift_rejects_overlapping_blocks():
    w = diagonal_witness(CORPUS_ANNIHILATORS["geometric"], 4)
    with pytest.raises(VariableCollision):
        product_lift([w, w], positions=[(0, 1), (1, 2)])


def test_product_lift_validates_positions():
    w = diagonal_witness(CORPUS_ANNIHILATORS["geometric"], 4)
    with pytest.raises(ValueError):
        product_lift([w])  # one factor is not a product
    with pytest.raises(ValueError):
        product_lift([w, w], positions=[(0, 1)])
    with pytest.raises(ValueError):
        product_lift([w, w], positions=[(0, 1), (2,)])
    with pytest.raises(ValueError):
        product_lift([w, w], positions=[(0, 1), (2, 9)])


def test_random_disjoint_products_realize_hadamard_products():
    rng = random.Random(20260818)
    for _ in range(5):
        rats = []
        for _ in range(2):
            num = Poly(2, {
                (i, j): Fraction(rng.randint(-3, 3))
                for i in range(2) for j in range(2)
            })
            den_terms = {
                (i, j): Fraction(rng.randint(-2, 2))
                for i in range(2) for j in range(2) if (i, j) != (0, 0)
            }
            den_terms[(0, 0)] = Fraction(rng.choice([1, 2, -1]))
            rats.append(RatFun(num, Poly(2, den_terms)))
        lifted = product_lift(rats)
        assert lifted.nvars == 4
        got = diagonal_extract(lifted, 6)
        want = hadamard_mul(diagonal_extract(rats[0], 6),
                            diagonal_extract(rats[1], 6))
        assert got.coeffs == want.coeffs


# ---------------------------------------------------------------------------
# witness objects and serialization


def test_witness_validates_shape():
    R = RatFun(ONE, ONE - X - Y)
    with pytest.raises(ValueError):
        DiagonalWitness(R, 0, 4)
    with pytest.raises(ValueError):
        DiagonalWitness(R, 2, 4)  # d = 2 needs 4 variables
    with pytest.raises(ValueError):
        DiagonalWitness(R, 1, 0)
    with pytest.raises(DenominatorVanishesAtOrigin):
        DiagonalWitness(RatFun(ONE, X + Y), 1, 4)
    with pytest.raises(ValueError):
        DiagonalWitness(R, 1, 4,
                        factor_annihilators=(
                            CORPUS_ANNIHILATORS["catalan"],
                            CORPUS_ANNIHILATORS["catalan"],
                        ))


def test_witness_json_round_trip():
    w = diagonal_witness(CORPUS_ANNIHILATORS["catalan"], 10)
    blob = json.dumps(w.to_json_dict())
    back = DiagonalWitness.from_json_dict(json.loads(blob))
    assert back.d == w.d
    assert back.constant_shift == w.constant_shift
    assert back.verified_order == w.verified_order
    assert back.diagonal(10).coeffs == w.diagonal(10).coeffs
    # annihilators are deliberately not serialized
    assert back.factor_annihilators == ()


def test_witness_json_shape():
    w = diagonal_witness(CORPUS_ANNIHILATORS["catalan-shifted"], 6)
    d = w.to_json_dict()
    assert set(d) == {"d", "R", "verified_order", "constant_shift"}
    assert d["d"] == 1
    assert d["constant_shift"] == "0"
    for row in d["R"]["num"] + d["R"]["den"]:
        assert len(row) == 3  # two exponents and a coefficient string
        assert isinstance(row[0], int) and isinstance(row[1], int)
        assert isinstance(row[2], str)


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("d"),
    lambda d: d.update(d=0),
    lambda d: d.update(R=[1, 2]),
    lambda d: d.update(R={"num": []}),
    lambda d: d["R"].update(den=[]),
    lambda d: d["R"]["num"].append([0, 0, 0, "1"]),
    lambda d: d["R"]["num"].append([0, 0, "x"]),
    lambda d: d.update(verified_order="six"),
    lambda d: d.update(constant_shift=1),
    lambda d: d.update(constant_shift="1/0"),
])
def test_witness_json_rejects_malformed_payloads(mutate):
    w = diagonal_witness(CORPUS_ANNIHILATORS["catalan-shifted"], 6)
    payload = w.to_json_dict()
    payload["R"] = {"num": list(payload["R"]["num"]),
                    "den": list(payload["R"]["den"])}
    mutate(payload)
    with pytest.raises(SchemaError):
        DiagonalWitness.from_json_dict(payload)

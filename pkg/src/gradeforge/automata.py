"""Residue sequences mod p^r and the q-kernel automaton.

`reduce_mod` maps an exact rational series onto Z/p^r (refusing primes that
divide any coefficient denominator — those are the finitely many bad primes
a rational-coefficient series excludes).  `kernel_closure` then explores the
set of arithmetic-progression subsequences n -> a_{q^k n + j}, merging two
of them whenever their first-L-term fingerprints agree.  A finite closure is
the desk-scale face of automaticity; since truncation makes true subsequence
equality undecidable, "closed" always means *closed at fingerprint length L*
and callers are expected to re-run with a larger L to probe stability.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional

from .algebraic import Annihilator, expand_branch
from .config import Defaults
from .errors import BudgetTooSmall, PrimeDividesDenominator
from .series import TruncSeries


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


@dataclass(frozen=True)
class ResidueSequence:
    """Residues of a coefficient sequence mod p^r."""

    modulus: int
    terms: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        if any(not (0 <= t < self.modulus) for t in self.terms):
            raise ValueError("every term must lie in [0, modulus)")

    @property
    def source_truncation(self) -> int:
        return len(self.terms)


def reduce_mod(f: TruncSeries, p: int, r: int = 1) -> ResidueSequence:
    """Coefficients of f mod p^r, via modular inverse of the denominators."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if r < 1:
        raise ValueError("exponent r must be at least 1")
    modulus = p ** r
    terms = []
    for n, c in enumerate(f.coeffs):
        if c.denominator % p == 0:
            raise PrimeDividesDenominator(p, n)
        terms.append(c.numerator * pow(c.denominator, -1, modulus) % modulus)
    return ResidueSequence(modulus, tuple(terms))


@dataclass(frozen=True)
class KernelBudgets:
    max_states: int
    max_depth: int
    fingerprint_length: int

    def __post_init__(self):
        if self.max_states < 1 or self.max_depth < 0:
            raise ValueError("budgets must be positive")
        if self.fingerprint_length < 1:
            raise ValueError("fingerprint length must be positive")


@dataclass(frozen=True)
class KernelState:
    """One merged kernel element, named by its first-discovered (k, j)."""

    k: int
    j: int
    fingerprint: tuple[int, ...]
    transitions: tuple[Optional[int], ...]

    def fingerprint_hash(self) -> str:
        payload = ",".join(str(t) for t in self.fingerprint)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class KernelAutomaton:
    q: int
    modulus: int
    fingerprint_length: int
    truncation: int
    states: tuple[KernelState, ...]
    status: str  # closed | exhausted-budget | truncation-limited

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "modulus": self.modulus,
            "fingerprint_length": self.fingerprint_length,
            "truncation": self.truncation,
            "status": self.status,
            "states": [
                {
                    "id": i,
                    "k": st.k,
                    "j": st.j,
                    "fingerprint_hash": st.fingerprint_hash(),
                    "transitions": list(st.transitions),
                }
                for i, st in enumerate(self.states)
            ],
        }

    def to_dot(self) -> str:
        lines = [
            "digraph kernel {",
            "  rankdir=LR;",
            f'  label="base {self.q}, mod {self.modulus}, {self.status}";',
        ]
        for i, st in enumerate(self.states):
            lines.append(f'  s{i} [label="s{i}\\n(k={st.k}, j={st.j})"];')
        for i, st in enumerate(self.states):
            for d, t in enumerate(st.transitions):
                if t is None:
                    lines.append(
                        f'  u{i}_{d} [label="?", shape=plaintext];'
                    )
                    lines.append(f'  s{i} -> u{i}_{d} '
                                 f'[label="{d}", style=dashed];')
                else:
                    lines.append(f'  s{i} -> s{t} [label="{d}"];')
        lines.append("}")
        return "\n".join(lines)


def kernel_closure(s: ResidueSequence, q: int,
                   budgets: KernelBudgets) -> KernelAutomaton:
    """BFS closure of {n -> a_{q^k n + j}} under fingerprint merging.

    Exploration is deterministic: levels in increasing k, states within a
    level in increasing representative j, digits in increasing order.  The
    budget precondition T >= L·q^K guarantees a full L-term fingerprint for
    every state within the depth budget; only transitions probing one level
    past it can run out of terms, in which case the target is matched by
    prefix and the automaton is flagged truncation-limited (an ambiguous
    prefix leaves the transition unresolved).  A genuinely new fingerprint
    that the state or depth budget cannot accommodate stops the search with
    exhausted-budget.
    """
    if q < 2:
        raise ValueError("base q must be at least 2")
    S, K, L = (budgets.max_states, budgets.max_depth,
               budgets.fingerprint_length)
    T = s.source_truncation
    if L * q ** K > T:
        raise BudgetTooSmall(
            f"truncation {T} < L*q^K = {L}*{q}^{K} = {L * q ** K}"
        )
    terms = s.terms

    def fingerprint(k: int, j: int) -> tuple[int, ...]:
        step = q ** k
        return tuple(terms[j + step * n]
                     for n in range(L) if j + step * n < T)

    reps: list[tuple[int, int]] = [(0, 0)]
    fps: list[tuple[int, ...]] = [fingerprint(0, 0)]
    trans: list[list[Optional[int]]] = [[None] * q]
    fp_index = {fps[0]: 0}
    truncated = False
    exhausted = False

    level = [0]
    while level and not exhausted:
        level.sort(key=lambda sid: reps[sid][1])
        next_level = []
        for sid in level:
            k, j = reps[sid]
            step = q ** k
            for d in range(q):
                kk, jj = k + 1, j + d * step
                fp = fingerprint(kk, jj)
                if len(fp) == L:
                    tid = fp_index.get(fp)
                    if tid is None:
                        if kk > K or len(reps) >= S:
                            exhausted = True
                            break
                        tid = len(reps)
                        reps.append((kk, jj))
                        fps.append(fp)
                        trans.append([None] * q)
                        fp_index[fp] = tid
                        next_level.append(tid)
                    trans[sid][d] = tid
                else:
                    # ran past the truncation: match by prefix
                    truncated = True
                    matches = [i for i, full in enumerate(fps)
                               if full[:len(fp)] == fp]
                    if len(matches) == 1:
                        trans[sid][d] = matches[0]
                    elif not matches:
                        # provably new, but no budget can hold it past K
                        exhausted = True
                        break
                    # ambiguous: leave unresolved
            if exhausted:
                break
        level = next_level

    if exhausted:
        status = "exhausted-budget"
    elif truncated:
        status = "truncation-limited"
    else:
        status = "closed"
    states = tuple(
        KernelState(k=reps[i][0], j=reps[i][1], fingerprint=fps[i],
                    transitions=tuple(trans[i]))
        for i in range(len(reps))
    )
    return KernelAutomaton(
        q=q, modulus=s.modulus, fingerprint_length=L, truncation=T,
        states=states, status=status,
    )


@dataclass(frozen=True)
class ChristolReport:
    """Outcome of expand -> reduce -> closure for an algebraic branch."""

    p: int
    r: int
    q: int
    automaton: KernelAutomaton

    @property
    def status(self) -> str:
        return self.automaton.status

    @property
    def state_count(self) -> int:
        return len(self.automaton.states)

    @property
    def consistent_with_finite_kernel(self) -> bool:
        return self.automaton.status == "closed"

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "q": self.q,
            "status": self.status,
            "state_count": self.state_count,
            "consistent": self.consistent_with_finite_kernel,
            "automaton": self.automaton.to_json_dict(),
        }


def christol_report(ann: Annihilator, p: int, r: int = 1,
                    q: Optional[int] = None,
                    budgets: Optional[KernelBudgets] = None) -> ChristolReport:
    """Expand the branch, reduce mod p^r, close the q-kernel.

    q defaults to p — the setting in which a finite closure is the expected
    outcome for an algebraic branch.  The depth budget (default: the global
    rule of 8 halvings worth of digits, scaled by log2 q) is a cap, not a
    commitment: expansion and closure run at increasing depth and stop at
    the first closed kernel.  Each attempt is sized to exactly the closure
    precondition L·q^k, so shallow kernels never pay for long expansions —
    which matters, because exact branch coefficients grow exponentially
    and expansion cost is driven by their bit size.
    """
    if q is None:
        q = p
    if budgets is None:
        budgets = KernelBudgets(max_states=4096,
                                max_depth=Defaults().depth_for_base(q),
                                fingerprint_length=64)
    automaton = None
    for depth in range(1, budgets.max_depth + 1):
        attempt = KernelBudgets(budgets.max_states, depth,
                                budgets.fingerprint_length)
        f = expand_branch(ann, attempt.fingerprint_length * q**depth)
        automaton = kernel_closure(reduce_mod(f, p, r), q, attempt)
        if automaton.status == "closed":
            break
    return ChristolReport(p=p, r=r, q=q, automaton=automaton)

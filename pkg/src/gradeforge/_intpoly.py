"""Dense integer-coefficient univariate polynomial kernels (internal).

Coefficient lists are ascending (index = exponent) with no trailing zeros;
the zero polynomial is the empty list.  Everything here is exact integer
arithmetic; callers clear rational denominators before entering and restore
them on the way out.

Two pieces deserve a note:

* ``conv`` switches to Kronecker substitution (pack the coefficients into one
  big integer and let CPython's big-int multiplication do the work) once the
  schoolbook loop would dominate.
* ``int_roots`` isolates real roots with a Sturm chain and bisection down to
  unit intervals, then tests the integer endpoint.  This stays exact and fast
  even when the constant term is hundreds of digits, where the divisors-of-
  the-constant-term approach would need an integer factorization.
"""

from __future__ import annotations

import math

_SCHOOLBOOK_CUTOFF = 2048  # len(a)*len(b) at or below this: plain double loop


def trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def sub(a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        out[i] -= x
    return trim(out)


def neg(a: list[int]) -> list[int]:
    return [-x for x in a]


def scale(a: list[int], k: int) -> list[int]:
    if k == 0:
        return []
    return [x * k for x in a]


def _conv_schoolbook(a, b, limit):
    out = [0] * min(len(a) + len(b) - 1, limit)
    for i, x in enumerate(a):
        if x == 0 or i >= limit:
            continue
        jmax = min(len(b), limit - i)
        for j in range(jmax):
            out[i + j] += x * b[j]
    return out


try:  # optional accelerator for very large packed products
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = None

# below ~64 kB per operand CPython's Karatsuba is fine and conversion
# overhead is not worth it
_GMP_BYTES = 1 << 16


def _pack_biased(c, bias_bits, stride_bytes):
    """Pack c[i] + 2^bias_bits (always nonnegative) into one big integer."""
    bias = 1 << bias_bits
    buf = bytearray(len(c) * stride_bytes)
    for i, x in enumerate(c):
        buf[i * stride_bytes:(i + 1) * stride_bytes] = (x + bias).to_bytes(
            stride_bytes, "little")
    return int.from_bytes(buf, "little")


def conv(a: list[int], b: list[int], limit: int | None = None) -> list[int]:
    """Convolution of coefficient lists, truncated to `limit` entries.

    The result has exact length min(len(a)+len(b)-1, limit); trailing zeros
    are kept so series code can rely on positional meaning.

    Large products use Kronecker substitution with biased packing: adding
    2^bits to every coefficient makes both packed integers nonnegative, so a
    single big-integer multiplication suffices; the bias contributions are
    windowed prefix sums, subtracted per slot in linear time.
    """
    if not a or not b:
        return []
    n = len(a) + len(b) - 1
    if limit is None or limit > n:
        limit = n
    if min(len(a), len(b)) <= 16 or len(a) * len(b) <= _SCHOOLBOOK_CUTOFF:
        return _conv_schoolbook(a, b, limit)

    la, lb = len(a), len(b)
    bits_a = max(abs(x).bit_length() for x in a)
    bits_b = max(abs(x).bit_length() for x in b)
    stride_bits = bits_a + bits_b + 2 + min(la, lb).bit_length() + 1
    stride_bytes = (stride_bits + 7) // 8

    pa = _pack_biased(a, bits_a, stride_bytes)
    pb = _pack_biased(b, bits_b, stride_bytes)
    if _mpz is not None and min(la, lb) * stride_bytes > _GMP_BYTES:
        prod = int(_mpz(pa) * _mpz(pb))
    else:
        prod = pa * pb
    prod_bytes = prod.to_bytes((n + 1) * stride_bytes, "little")

    # prefix sums for the bias corrections
    pref_a = [0]
    for x in a:
        pref_a.append(pref_a[-1] + x)
    pref_b = [0]
    for y in b:
        pref_b.append(pref_b[-1] + y)

    out = []
    for t in range(limit):
        lo_i = max(0, t - lb + 1)
        hi_i = min(t, la - 1)
        cnt = hi_i - lo_i + 1
        sa = pref_a[hi_i + 1] - pref_a[lo_i]
        # the j-window mirrors the i-window
        lo_j = t - hi_i
        hi_j = t - lo_i
        sb = pref_b[hi_j + 1] - pref_b[lo_j]
        slot = int.from_bytes(
            prod_bytes[t * stride_bytes:(t + 1) * stride_bytes], "little")
        out.append(
            slot - (sa << bits_b) - (sb << bits_a) - (cnt << (bits_a + bits_b))
        )
    return out


def mul(a: list[int], b: list[int]) -> list[int]:
    return trim(conv(a, b))


def exact_div(a: list[int], b: list[int]) -> list[int]:
    """Quotient a/b when b divides a exactly; raises ValueError otherwise."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    if len(a) < len(b):
        raise ValueError("inexact polynomial division")
    rem = list(a)
    out = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(out) - 1, -1, -1):
        num = rem[k + len(b) - 1]
        if num == 0:
            continue
        q, r = divmod(num, lead)
        if r != 0:
            raise ValueError("inexact polynomial division")
        out[k] = q
        for j, x in enumerate(b):
            rem[k + j] -= q * x
    if any(rem):
        raise ValueError("inexact polynomial division")
    return trim(out)


def content(a: list[int]) -> int:
    g = 0
    for x in a:
        g = math.gcd(g, x)
        if g == 1:
            return 1
    return g


def primitive(a: list[int]) -> list[int]:
    """Divide out the content; normalize the leading coefficient positive."""
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]


def _prem_positive(a: list[int], b: list[int]) -> list[int]:
    """A positive scalar multiple of (a mod b), as integer coefficients.

    Computes the pseudo-remainder lead(b)^(da-db+1) * a mod b, then fixes the
    sign so the result is a positive multiple of the true remainder (what a
    Sturm chain needs).
    """
    da, db = len(a) - 1, len(b) - 1
    lead = b[-1]
    total = da - db + 1
    applied = 0
    r = list(a)
    while r and len(r) - 1 >= db:
        s = len(r) - 1 - db
        top = r[-1]
        r = [x * lead for x in r]
        for j, y in enumerate(b):
            r[s + j] -= top * y
        trim(r)
        applied += 1
    if r and applied < total:
        r = [x * lead ** (total - applied) for x in r]
    if lead < 0 and total % 2 == 1:
        r = [-x for x in r]
    return trim(r)


def deriv(a: list[int]) -> list[int]:
    return trim([i * c for i, c in enumerate(a)][1:])


def _sturm_chain(p: list[int]) -> list[list[int]]:
    chain = [list(p), deriv(p)]
    while chain[-1]:
        a, b = chain[-2], chain[-1]
        if len(a) < len(b):
            break
        r = _prem_positive(a, b)
        r = [-x for x in r]
        if r:
            g = content(r)
            r = [x // g for x in r]
        chain.append(r)
    if chain and not chain[-1]:
        chain.pop()
    return chain


def _sign_changes(chain: list[list[int]], x: int) -> int:
    signs = []
    for p in chain:
        v = eval_at(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def int_roots(a: list[int]) -> list[int]:
    """All integer roots of a nonzero polynomial, ascending, exact."""
    if not a:
        raise ZeroDivisionError("zero polynomial has every root")
    roots: set[int] = set()
    c = list(a)
    while c and c[0] == 0:
        roots.add(0)
        c.pop(0)
    if len(c) > 1:
        c = primitive(c)
        g = gcd(c, deriv(c))
        sq = exact_div(c, g) if len(g) > 1 else c
        chain = _sturm_chain(sq)
        # Cauchy bound: every real root has |x| < 1 + max|c_i|/|lead|
        lead = abs(sq[-1])
        top = max(abs(x) for x in sq[:-1]) if len(sq) > 1 else 0
        bound = 1 + (top + lead - 1) // lead
        counts = {-bound - 1: _sign_changes(chain, -bound - 1)}
        stack = [(-bound - 1, bound + 1)]
        while stack:
            lo, hi = stack.pop()
            if hi not in counts:
                counts[hi] = _sign_changes(chain, hi)
            n_roots = counts[lo] - counts[hi]
            if n_roots <= 0:
                continue
            if hi - lo == 1:
                if eval_at(sq, hi) == 0:
                    roots.add(hi)
                continue
            mid = (lo + hi) // 2
            if mid not in counts:
                counts[mid] = _sign_changes(chain, mid)
            stack.append((lo, mid))
            stack.append((mid, hi))
    return sorted(roots)


def gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive polynomial gcd (primitive pseudo-remainder sequence)."""
    if not a:
        return primitive(list(b))
    if not b:
        return primitive(list(a))
    a = primitive(list(a))
    b = primitive(list(b))
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        r = _prem_positive(a, b)
        a, b = b, primitive(r)
    return primitive(a)


def lcm(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    g = gcd(a, b)
    return primitive(mul(exact_div(a, g), b))


def eval_at(a: list[int], n: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * n + c
    return acc


def shift_arg(a: list[int], k: int) -> list[int]:
    """Return the coefficient list of p(n + k)."""
    out: list[int] = []
    for c in reversed(a):
        # out = out*(n+k) + c
        nxt = [0] + out
        for i, x in enumerate(out):
            nxt[i] += k * x
        if nxt:
            nxt[0] += c
        elif c:
            nxt = [c]
        out = trim(nxt)
    return out

"""Component arithmetic for the base rings Z_n and GF(p^k).

Elements are plain integers.  A GF(p^k) element is the integer whose base-p
digits are the polynomial coefficients, lowest degree first, so in GF(4)
with modulus x^2+x+1 the element ``x`` is 2 and ``x+1`` is 3.
"""

from __future__ import annotations

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> dict[int, int]:
    """Trial-division factorization ``{p: e}``; n is at most a few thousand here."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with q = p**k, or None if q is not a prime power."""
    f = prime_factors(q) if q >= 2 else {}
    if len(f) != 1:
        return None
    (p, k), = f.items()
    return p, k


# -- polynomials over Z_p as coefficient lists, lowest degree first ----------

def _digits(code: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(code % p)
        code //= p
    return out


def _undigits(coeffs: list[int], p: int) -> int:
    code = 0
    for c in reversed(coeffs):
        code = code * p + c
    return code


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = _trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _polymul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(coeffs: list[int], p: int) -> bool:
    """Irreducibility over Z_p by trial division with every monic polynomial
    of degree at most half the degree."""
    deg = len(coeffs) - 1
    for d in range(1, deg // 2 + 1):
        for tail in range(p**d):
            divisor = _digits(tail, p, d) + [1]
            if not _polymod(coeffs, divisor, p):
                return False
    return True


def least_irreducible(p: int, k: int) -> list[int]:
    """Lexicographically least monic irreducible polynomial of degree k over Z_p.

    Monic polynomials of degree k are enumerated by the integer code of their
    lower coefficients, which orders them lexicographically from x^(k-1) down.
    """
    for tail in range(p**k):
        coeffs = _digits(tail, p, k) + [1]
        if is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError(f"no irreducible polynomial of degree {k} over Z_{p}")


def format_poly(coeffs: list[int], var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


class ZnArith:
    """Residues modulo n, vectorized over integer arrays."""

    def __init__(self, n: int):
        self.n = n
        self.size = n

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def is_unit(self, a):
        return np.gcd(np.asarray(a), self.n) == 1

    def label(self, a: int) -> str:
        return str(int(a))


class GFArith:
    """GF(p^k) built on the least monic irreducible of degree k.

    Multiplication goes through discrete log tables over a primitive element,
    addition is digitwise mod p.
    """

    def __init__(self, p: int, k: int):
        self.p, self.k = p, k
        self.size = q = p**k
        self.modulus = least_irreducible(p, k)
        self._pow = p ** np.arange(k, dtype=np.int64)

        def mulcode(a: int, b: int) -> int:
            prod = _polymul(_trim(_digits(a, p, k)), _trim(_digits(b, p, k)), p)
            return _undigits(_polymod(prod, self.modulus, p), p)

        self._mulcode = mulcode
        exp = None
        for g in range(1, q):
            seq = [1]
            x = g
            while x != 1:
                seq.append(x)
                x = mulcode(x, g)
            if len(seq) == q - 1:
                exp = seq
                break
        assert exp is not None
        self.exp = np.array(exp, dtype=np.int64)
        self.log = np.zeros(q, dtype=np.int64)
        self.log[self.exp] = np.arange(q - 1)

    @property
    def modulus_str(self) -> str:
        return format_poly(self.modulus)

    def _split(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pow) % self.p

    def add(self, a, b):
        return ((self._split(a) + self._split(b)) % self.p) @ self._pow

    def neg(self, a):
        return ((-self._split(a)) % self.p) @ self._pow

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self.log[a], self.log[b]
        out = self.exp[(la + lb) % (self.size - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def is_unit(self, a):
        return np.asarray(a) != 0

    def label(self, a: int) -> str:
        if self.k == 1:
            return str(int(a))
        return format_poly(_digits(int(a), self.p, self.k), var="a")

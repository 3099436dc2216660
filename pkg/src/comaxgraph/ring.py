"""Finite commutative rings given as products of Z_n and GF(p^k).

Elements are indices ``0..size-1``.  For a product ring the index is the
mixed-radix number whose digits are the component values, first factor most
significant, so index order is the lexicographic order of component tuples.

Everything the graphs need is cached on the ring: units, principal ideals,
the full ideal lattice, maximal ideals, the Jacobson radical, and per-element
S-signatures (bit i set iff the element lies in the i-th maximal ideal).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Union

import numpy as np

from .errors import CapExceeded, InconsistencyError, RingError
from .fields import GFArith, ZnArith, is_prime, prime_factors

DEFAULT_CAP = 4096
DEFAULT_LATTICE_GUARD = 100_000
DEFAULT_CROSSCHECK_LIMIT = 512


@dataclass(frozen=True)
class Zn:
    n: int

    @property
    def size(self) -> int:
        return self.n

    def __str__(self) -> str:
        return f"Z{self.n}"


@dataclass(frozen=True)
class GF:
    p: int
    k: int = 1

    @property
    def size(self) -> int:
        return self.p**self.k

    def __str__(self) -> str:
        return f"GF({self.size})"


BaseSpec = Union[Zn, GF]


@dataclass(frozen=True)
class RingSpec:
    factors: tuple[BaseSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    @classmethod
    def of(cls, *factors: BaseSpec) -> "RingSpec":
        return cls(tuple(factors))

    @property
    def size(self) -> int:
        out = 1
        for f in self.factors:
            out *= f.size
        return out

    def validate(self, cap: int = DEFAULT_CAP) -> None:
        if not self.factors:
            raise RingError("a ring needs at least one factor")
        for f in self.factors:
            if isinstance(f, Zn):
                if f.n < 2:
                    raise RingError(f"Z_n needs n >= 2, got {f.n}")
            elif isinstance(f, GF):
                if not is_prime(f.p):
                    raise RingError(f"GF characteristic {f.p} is not prime")
                if f.k < 1:
                    raise RingError(f"GF degree must be >= 1, got {f.k}")
                if f.size > cap:
                    raise CapExceeded(f"{f} exceeds size cap {cap}")
            else:
                raise RingError(f"unknown base ring {f!r}")
        if self.size > cap:
            raise CapExceeded(f"ring {self} has {self.size} elements, cap is {cap}")

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class LocalFactor:
    """One local ring in the canonical decomposition of a product ring."""

    size: int
    residue_size: int

    @property
    def is_field(self) -> bool:
        return self.size == self.residue_size


def local_factorization(spec: RingSpec) -> list[LocalFactor]:
    """Split every Z_n into its Z_{p^e} parts; GF factors are already fields."""
    out = []
    for f in spec.factors:
        if isinstance(f, GF):
            out.append(LocalFactor(f.size, f.size))
        else:
            for p, e in sorted(prime_factors(f.n).items()):
                out.append(LocalFactor(p**e, p))
    return out


@dataclass(frozen=True)
class Ideal:
    members: tuple[int, ...]
    generators: tuple[int, ...] = field(default=(), compare=False)

    @cached_property
    def mask(self) -> int:
        m = 0
        for x in self.members:
            m |= 1 << x
        return m

    def __contains__(self, x: int) -> bool:
        return (self.mask >> x) & 1 == 1

    def __len__(self) -> int:
        return len(self.members)

    def issubset(self, other: "Ideal") -> bool:
        return self.mask & ~other.mask == 0

    def key(self):
        return (len(self.members), self.members)


def _ideal_from_array(arr: np.ndarray, generators: Iterable[int]) -> Ideal:
    return Ideal(tuple(int(v) for v in np.unique(arr)), tuple(int(g) for g in generators))


class Ring:
    """Base class: subclasses supply vectorized ``_add``, ``_mul``, ``_neg``
    on int64 arrays plus ``size``, ``name`` and ``label``."""

    size: int
    name: str
    zero: int = 0
    one: int
    lattice_guard: int = DEFAULT_LATTICE_GUARD
    crosscheck_limit: int = DEFAULT_CROSSCHECK_LIMIT

    def _add(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def label(self, x: int) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"

    # -- arithmetic --------------------------------------------------------

    def _check(self, *xs: int) -> None:
        for x in xs:
            if not 0 <= x < self.size:
                raise RingError(f"element index {x} out of range for {self.name}")

    def arith(self, a: int, b: int, op: str) -> int:
        if op == "neg":
            self._check(a)
            return int(self._neg(np.int64(a)))
        self._check(a, b)
        if op == "add":
            return int(self._add(np.int64(a), np.int64(b)))
        if op == "mul":
            return int(self._mul(np.int64(a), np.int64(b)))
        if op == "sub":
            return int(self._add(np.int64(a), self._neg(np.int64(b))))
        raise RingError(f"unknown operation {op!r}")

    def add(self, a: int, b: int) -> int:
        return self.arith(a, b, "add")

    def mul(self, a: int, b: int) -> int:
        return self.arith(a, b, "mul")

    def sub(self, a: int, b: int) -> int:
        return self.arith(a, b, "sub")

    def neg(self, a: int) -> int:
        return self.arith(a, 0, "neg")

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    # -- units -------------------------------------------------------------

    def _units_exhaustive(self) -> np.ndarray:
        """Boolean mask of x with some y, xy = 1, found by trying every y."""
        out = np.zeros(self.size, dtype=bool)
        chunk = max(1, 2_000_000 // self.size)
        ys = self.elements
        for start in range(0, self.size, chunk):
            xs = self.elements[start : start + chunk]
            prod = self._mul(xs[:, None], ys[None, :])
            out[start : start + chunk] = (prod == self.one).any(axis=1)
        return out

    @cached_property
    def unit_mask(self) -> np.ndarray:
        return self._units_exhaustive()

    @cached_property
    def units(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.unit_mask))

    # -- ideals ------------------------------------------------------------

    @cached_property
    def _principal(self) -> tuple[list[Ideal], np.ndarray]:
        seen: dict[bytes, int] = {}
        ideals: list[Ideal] = []
        owner = np.empty(self.size, dtype=np.int64)
        for x in range(self.size):
            row = np.unique(self._mul(self.elements, np.int64(x)))
            key = row.tobytes()
            if key not in seen:
                seen[key] = len(ideals)
                ideals.append(_ideal_from_array(row, [x]))
            owner[x] = seen[key]
        return ideals, owner

    def principal_ideal(self, x: int) -> Ideal:
        self._check(x)
        ideals, owner = self._principal
        return Ideal(ideals[owner[x]].members, (x,))

    @property
    def principal_ideals(self) -> list[Ideal]:
        """Distinct principal ideals, each with its least generator."""
        return list(self._principal[0])

    @property
    def principal_class(self) -> np.ndarray:
        """``principal_class[x]`` indexes ``principal_ideals`` at Rx."""
        return self._principal[1]

    def _member_mask(self, ideal: Ideal) -> np.ndarray:
        m = np.zeros(self.size, dtype=bool)
        m[list(ideal.members)] = True
        return m

    def ideal_sum(self, a: Ideal, b: Ideal) -> Ideal:
        """I + J as the additive subgroup generated by both.

        Each b-element outside the running subgroup S contributes its cyclic
        cosets S + kb until kb falls back into S, so the cost is linear in
        the size of the result.
        """
        mask = self._member_mask(a)
        base = np.array(a.members, dtype=np.int64)
        for y in b.members:
            if mask[y]:
                continue
            parts = [base]
            ky = np.int64(y)
            while not mask[int(ky)]:
                parts.append(self._add(base, ky))
                mask[parts[-1]] = True
                ky = self._add(ky, np.int64(y))
            base = np.concatenate(parts)
        return Ideal(tuple(int(v) for v in np.flatnonzero(mask)), a.generators + b.generators)

    @cached_property
    def all_ideals(self) -> list[Ideal]:
        """Closure of the principal ideals under pairwise sums."""
        principal = self.principal_ideals
        found: dict[tuple[int, ...], Ideal] = {I.members: I for I in principal}
        frontier = list(found.values())
        while frontier:
            fresh = []
            for I in frontier:
                for P in principal:
                    if P.issubset(I):
                        continue
                    S = self.ideal_sum(I, P)
                    if S.members not in found:
                        found[S.members] = S
                        fresh.append(S)
                        if len(found) > self.lattice_guard:
                            raise CapExceeded(
                                f"ideal lattice of {self.name} exceeds guard {self.lattice_guard}"
                            )
            frontier = fresh
        return sorted(found.values(), key=Ideal.key)

    @cached_property
    def maximal_ideals(self) -> list[Ideal]:
        proper = [I for I in self.all_ideals if len(I) < self.size]
        maxi = [I for I in proper if not any(I.mask != J.mask and I.issubset(J) for J in proper)]
        return sorted(maxi, key=lambda I: I.members)

    @property
    def is_local(self) -> bool:
        return len(self.maximal_ideals) == 1

    @property
    def is_field(self) -> bool:
        return len(self.all_ideals) == 2

    @cached_property
    def radical(self) -> Ideal:
        mask = ~0
        for m in self.maximal_ideals:
            mask &= m.mask
        members = tuple(x for x in range(self.size) if (mask >> x) & 1)
        return Ideal(members, ())

    @cached_property
    def radical_mask(self) -> np.ndarray:
        return self._member_mask(self.radical)

    def radical_by_units(self) -> tuple[int, ...]:
        """{x : 1 + r x is a unit for every r}, by exhaustive search."""
        units = self.unit_mask
        out = []
        for x in range(self.size):
            vals = self._add(np.int64(self.one), self._mul(self.elements, np.int64(x)))
            if units[vals].all():
                out.append(x)
        return tuple(out)

    @cached_property
    def signatures(self) -> np.ndarray:
        """S-signature bitmask of every element."""
        sig = np.zeros(self.size, dtype=np.int64)
        for i, m in enumerate(self.maximal_ideals):
            sig[list(m.members)] |= 1 << i
        return sig

    @property
    def full_signature(self) -> int:
        return (1 << len(self.maximal_ideals)) - 1

    def s_signature(self, x: int) -> int:
        self._check(x)
        return int(self.signatures[x])

    # -- co-maximality -------------------------------------------------------

    def _one_in_sum(self, a: Ideal, b: Ideal) -> bool:
        """1 in A + B iff some a in A has 1 - a in B."""
        arr = np.array(a.members, dtype=np.int64)
        diffs = self._add(np.int64(self.one), self._neg(arr))
        return bool(self._member_mask(b)[diffs].any())

    def is_comaximal(self, x: int, y: int) -> bool:
        self._check(x, y)
        by_ideal = self._one_in_sum(self.principal_ideal(x), self.principal_ideal(y))
        by_sig = (self.s_signature(x) & self.s_signature(y)) == 0
        if by_ideal != by_sig:
            raise InconsistencyError(
                f"{self.name}: Rx+Ry=R is {by_ideal} but signature test says {by_sig} "
                f"for x={self.label(x)}, y={self.label(y)}"
            )
        return by_ideal

    @cached_property
    def comaximal_matrix(self) -> np.ndarray:
        """Boolean matrix of the relation Rx + Ry = R over all elements.

        The ideal-sum test runs once per pair of distinct principal ideals
        and is expanded to elements; the signature test runs per element
        pair.  Any disagreement raises.
        """
        ideals, owner = self._principal
        t = len(ideals)
        cls = np.zeros((t, t), dtype=bool)
        for i in range(t):
            for j in range(i, t):
                cls[i, j] = cls[j, i] = self._one_in_sum(ideals[i], ideals[j])
        by_ideal = cls[np.ix_(owner, owner)]
        sig = self.signatures
        by_sig = (sig[:, None] & sig[None, :]) == 0
        if not np.array_equal(by_ideal, by_sig):
            x, y = map(int, np.argwhere(by_ideal != by_sig)[0])
            raise InconsistencyError(
                f"{self.name}: co-maximality criteria disagree at "
                f"({self.label(x)}, {self.label(y)})"
            )
        by_ideal.setflags(write=False)
        return by_ideal

    # -- vertex classes ------------------------------------------------------

    @cached_property
    def gamma_mask(self) -> np.ndarray:
        """Elements outside U(R) and J(R)."""
        return ~self.unit_mask & ~self.radical_mask

    def is_prime_ideal(self, ideal: Ideal) -> bool:
        """Proper, and xy in I forces x in I or y in I."""
        if len(ideal) == self.size:
            return False
        inside = self._member_mask(ideal)
        outside = self.elements[~inside]
        if outside.size == 0:
            return False
        prod = self._mul(outside[:, None], outside[None, :])
        return not inside[prod].any()


class ProductRing(Ring):
    def __init__(self, spec: RingSpec, cap: int = DEFAULT_CAP):
        spec.validate(cap)
        self.spec = spec
        self.name = str(spec)
        self.cap = cap
        self.size = spec.size
        self.parts = [ZnArith(f.n) if isinstance(f, Zn) else GFArith(f.p, f.k) for f in spec.factors]
        self.radices = np.array([p.size for p in self.parts], dtype=np.int64)
        strides = np.ones(len(self.parts), dtype=np.int64)
        for i in range(len(self.parts) - 2, -1, -1):
            strides[i] = strides[i + 1] * self.radices[i + 1]
        self.strides = strides
        self.zero = 0
        self.one = self.encode([1] * len(self.parts))

    @property
    def gf_moduli(self) -> dict[int, str]:
        """Chosen irreducible polynomial per GF factor position."""
        return {i: p.modulus_str for i, p in enumerate(self.parts) if isinstance(p, GFArith)}

    def decode(self, x: int) -> tuple[int, ...]:
        self._check(x)
        return tuple(int(x // s % r) for s, r in zip(self.strides, self.radices))

    def encode(self, comps) -> int:
        if len(comps) != len(self.parts):
            raise RingError("wrong number of components")
        for c, r in zip(comps, self.radices):
            if not 0 <= c < r:
                raise RingError(f"component {c} out of range {r}")
        return int(sum(int(c) * int(s) for c, s in zip(comps, self.strides)))

    def _comps(self, a):
        a = np.asarray(a, dtype=np.int64)
        return [(a // s) % r for s, r in zip(self.strides, self.radices)]

    def _join(self, comps):
        out = 0
        for c, s in zip(comps, self.strides):
            out = out + np.asarray(c, dtype=np.int64) * s
        return out

    def _add(self, a, b):
        return self._join(p.add(x, y) for p, x, y in zip(self.parts, self._comps(a), self._comps(b)))

    def _mul(self, a, b):
        return self._join(p.mul(x, y) for p, x, y in zip(self.parts, self._comps(a), self._comps(b)))

    def _neg(self, a):
        return self._join(p.neg(x) for p, x in zip(self.parts, self._comps(a)))

    def label(self, x: int) -> str:
        comps = self.decode(x)
        text = [p.label(c) for p, c in zip(self.parts, comps)]
        return text[0] if len(text) == 1 else "(" + ",".join(text) + ")"

    @cached_property
    def unit_mask(self) -> np.ndarray:
        mask = np.ones(self.size, dtype=bool)
        for p, c in zip(self.parts, self._comps(self.elements)):
            mask &= p.is_unit(c)
        if self.size <= self.crosscheck_limit:
            if not np.array_equal(mask, self._units_exhaustive()):
                raise InconsistencyError(f"{self.name}: componentwise units disagree with search")
        return mask

    def structural_maximal_ideals(self) -> list[Ideal]:
        """One maximal ideal per prime of each factor: elements whose
        component there is divisible by that prime (zero, for GF factors)."""
        comps = self._comps(self.elements)
        out = []
        for i, f in enumerate(self.spec.factors):
            primes = [None] if isinstance(f, GF) else sorted(prime_factors(f.n))
            for p in primes:
                sel = comps[i] == 0 if p is None else comps[i] % p == 0
                out.append(_ideal_from_array(self.elements[sel], ()))
        return sorted(out, key=lambda I: I.members)


class QuotientRing(Ring):
    """R/I for a proper ideal I inside J(R).

    Cosets are numbered by their least member in R; ``rep[i]`` is that member
    and ``coset_of[x]`` the coset index of x.
    """

    def __init__(self, parent: Ring, ideal: Ideal):
        self.parent = parent
        self.ideal = ideal
        self.name = f"({parent.name})/{_ideal_text(parent, ideal)}"
        members = np.array(ideal.members, dtype=np.int64)
        coset_of = np.full(parent.size, -1, dtype=np.int64)
        reps = []
        for x in range(parent.size):
            if coset_of[x] >= 0:
                continue
            coset_of[parent._add(members, np.int64(x))] = len(reps)
            reps.append(x)
        self.rep = np.array(reps, dtype=np.int64)
        self.coset_of = coset_of
        self.size = len(reps)
        self.zero = int(coset_of[parent.zero])
        self.one = int(coset_of[parent.one])
        self.lattice_guard = parent.lattice_guard
        self.crosscheck_limit = parent.crosscheck_limit

    def _add(self, a, b):
        return self.coset_of[self.parent._add(self.rep[a], self.rep[b])]

    def _mul(self, a, b):
        return self.coset_of[self.parent._mul(self.rep[a], self.rep[b])]

    def _neg(self, a):
        return self.coset_of[self.parent._neg(self.rep[a])]

    def label(self, x: int) -> str:
        return "[" + self.parent.label(int(self.rep[x])) + "]"


def _ideal_text(R: Ring, I: Ideal) -> str:
    if len(I) == 1:
        return "0"
    if I.mask == R.radical.mask:
        return "J"
    return "{" + ",".join(R.label(x) for x in I.members) + "}"


def make_ring(
    spec: RingSpec,
    *,
    cap: int = DEFAULT_CAP,
    lattice_guard: int = DEFAULT_LATTICE_GUARD,
    crosscheck_limit: int = DEFAULT_CROSSCHECK_LIMIT,
) -> ProductRing:
    """Build a product ring with every cache filled and cross-checked."""
    R = ProductRing(spec, cap)
    R.lattice_guard = lattice_guard
    R.crosscheck_limit = crosscheck_limit
    _populate(R)
    structural = R.structural_maximal_ideals()
    if [I.members for I in structural] != [I.members for I in R.maximal_ideals]:
        raise InconsistencyError(f"{R.name}: lattice and structural maximal ideals differ")
    return R


def _populate(R: Ring) -> None:
    R.unit_mask
    R.maximal_ideals
    R.radical
    R.signatures
    if R.one not in R.units:
        raise InconsistencyError(f"{R.name}: 1 is not a unit")
    if R.size <= R.crosscheck_limit and R.radical_by_units() != R.radical.members:
        raise InconsistencyError(f"{R.name}: radical definitions disagree")


def quotient_ring(R: Ring, ideal: Ideal) -> QuotientRing:
    if len(ideal) == R.size:
        raise RingError("cannot take the quotient by the whole ring")
    if not ideal.issubset(R.radical):
        raise RingError("quotients are only supported by ideals inside J(R)")
    Q = QuotientRing(R, ideal)
    _populate(Q)
    return Q


def stable_range_one(R: Ring) -> tuple[bool, tuple[int, int] | None]:
    """Check that x + Ry meets U(R) whenever Rx + Ry = R.

    The coset x + Ry depends on y only through Ry, so the scan runs over the
    distinct principal ideals.  Returns a violating pair (x, y) on failure.
    """
    comax = R.comaximal_matrix
    units = R.unit_mask
    ideals, owner = R._principal
    for ci, P in enumerate(ideals):
        members = np.array(P.members, dtype=np.int64)
        y = int(np.flatnonzero(owner == ci)[0])
        xs = np.flatnonzero(comax[:, y])
        hits = units[R._add(xs[:, None], members[None, :])].any(axis=1)
        if not hits.all():
            return False, (int(xs[~hits][0]), y)
    return True, None

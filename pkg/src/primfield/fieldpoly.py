"""Monic polynomial arithmetic over a prime field, plus a factor sieve.

Polynomials are canonical dense coefficient tuples (low degree first,
leading coefficient 1).  Every monic polynomial of degree d also has an
integer index in [q^d, 2*q^d): the coefficient vector read as base-q
digits.  Bulk work (sieving, enumeration, factoring) runs on raw indices
with numpy; the dataclass layer stays small and convenient.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetError, UsageError

DEFAULT_SIEVE_ENTRIES = 2**31
DEFAULT_ENUM_BUDGET = 2**26


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Trial-division primality, adequate for field characteristics."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_prime(q: int) -> None:
    if not is_prime(q):
        raise UsageError(f"field order {q} is not prime")


@dataclass(frozen=True)
class FieldElement:
    """Canonical representative of an element of F_q, q prime."""

    q: int
    value: int

    def __post_init__(self) -> None:
        _check_prime(self.q)
        object.__setattr__(self, "value", self.value % self.q)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.q, self.value + other.value)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.q, self.value * other.value)

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.q, -self.value)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return FieldElement(self.q, pow(self.value, self.q - 2, self.q))

    def _check(self, other: "FieldElement") -> None:
        if self.q != other.q:
            raise UsageError(f"mixed fields F_{self.q} and F_{other.q}")


# ----------------------------------------------------------------------
# MonicPoly: the canonical object layer
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MonicPoly:
    """Monic polynomial over F_q; coeffs run low to high, last entry 1."""

    q: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_prime(self.q)
        c = tuple(int(x) for x in self.coeffs)
        if not c:
            raise UsageError("empty coefficient vector")
        if c[-1] != 1:
            raise UsageError("leading coefficient must be 1")
        if any(not 0 <= x < self.q for x in c):
            raise UsageError(f"coefficients must lie in [0, {self.q})")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def norm(self) -> int:
        """q^degree, the number of residues mod this polynomial."""
        return self.q**self.degree

    @property
    def index(self) -> int:
        """Coefficient vector read as base-q digits; degree-d range [q^d, 2 q^d)."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.q + c
        return v

    @classmethod
    def from_index(cls, q: int, index: int) -> "MonicPoly":
        _check_prime(q)
        if index < 1:
            raise UsageError(f"index {index} is not positive")
        digits = []
        v = index
        while v:
            v, r = divmod(v, q)
            digits.append(r)
        if digits[-1] != 1:
            raise UsageError(f"index {index} has leading base-{q} digit != 1")
        return cls(q, tuple(digits))

    @classmethod
    def one(cls, q: int) -> "MonicPoly":
        return cls(q, (1,))

    def __mul__(self, other: "MonicPoly") -> "MonicPoly":
        return poly_mul(self, other)

    def sort_key(self) -> tuple[int, int]:
        return (self.degree, self.index)

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(f: MonicPoly) -> str:
    """Canonical text form, e.g. x^2+x+1 over F_2 is 'q=2;1,1,1'."""
    return f"q={f.q};" + ",".join(str(c) for c in f.coeffs)


def parse_poly(text: str, q: int | None = None) -> MonicPoly:
    """Parse the canonical text form; with q given, also a bare decimal
    index or a bare coefficient list."""
    s = text.strip()
    if s.startswith("q="):
        head, sep, tail = s.partition(";")
        if not sep:
            raise UsageError(f"missing ';' in polynomial text {text!r}")
        try:
            q_in = int(head[2:])
        except ValueError:
            raise UsageError(f"bad field order in {text!r}") from None
        if q is not None and q != q_in:
            raise UsageError(f"expected q={q}, got q={q_in}")
        try:
            coeffs = tuple(int(t) for t in tail.split(","))
        except ValueError:
            raise UsageError(f"bad coefficient list in {text!r}") from None
        return MonicPoly(q_in, coeffs)
    if q is None:
        raise UsageError(f"bare form {text!r} needs an explicit field order")
    try:
        if "," in s:
            return MonicPoly(q, tuple(int(t) for t in s.split(",")))
        return MonicPoly.from_index(q, int(s))
    except (ValueError, UsageError):
        raise UsageError(f"cannot parse polynomial {text!r}") from None


# ----------------------------------------------------------------------
# Coefficient-level arithmetic
# ----------------------------------------------------------------------

def poly_mul(a: MonicPoly, b: MonicPoly) -> MonicPoly:
    """Product of two monic polynomials (schoolbook convolution mod q)."""
    if a.q != b.q:
        raise UsageError(f"mixed fields F_{a.q} and F_{b.q}")
    q = a.q
    out = [0] * (a.degree + b.degree + 1)
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j, bj in enumerate(b.coeffs):
                out[i + j] = (out[i + j] + ai * bj) % q
    return MonicPoly(q, tuple(out))


def poly_divrem(a: MonicPoly, b: MonicPoly) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Quotient and remainder coefficient vectors of a divided by monic b.

    Returned vectors are raw (low to high, possibly empty / not monic);
    remainder has degree < deg b.
    """
    if a.q != b.q:
        raise UsageError(f"mixed fields F_{a.q} and F_{b.q}")
    q = a.q
    rem = list(a.coeffs)
    db = b.degree
    if a.degree < db:
        return (), tuple(rem)
    quot = [0] * (a.degree - db + 1)
    for shift in range(a.degree - db, -1, -1):
        c = rem[shift + db] % q
        if c:
            quot[shift] = c
            for i, bi in enumerate(b.coeffs):
                rem[shift + i] = (rem[shift + i] - c * bi) % q
    return tuple(quot), tuple(rem[:db])


def divides(a: MonicPoly, b: MonicPoly) -> bool:
    """True when a divides b."""
    if a.degree > b.degree:
        return False
    _, rem = poly_divrem(b, a)
    return not any(rem)


def enumerate_monic(q: int, degree: int,
                    max_count: int = DEFAULT_ENUM_BUDGET) -> Iterator[MonicPoly]:
    """All monic polynomials of the given degree, in index order."""
    _check_prime(q)
    if degree < 0:
        raise UsageError("degree must be >= 0")
    count = q**degree
    if count > max_count:
        raise BudgetError(f"enumerating {count} polynomials exceeds budget {max_count}")
    base = count
    for idx in range(base, 2 * base):
        yield MonicPoly.from_index(q, idx)


def is_irreducible(f: MonicPoly, sieve: "FactorSieve | None" = None) -> bool:
    """Irreducibility by trial division (or one sieve lookup when available).

    Both routes implement the same predicate: no monic divisor of degree
    in [1, deg f / 2].  Units (degree 0) are not irreducible.
    """
    d = f.degree
    if d == 0:
        return False
    if sieve is not None and sieve.q == f.q and sieve.horizon >= d:
        return sieve.is_irreducible_index(f.index)
    for e in range(1, d // 2 + 1):
        for g in enumerate_monic(f.q, e):
            if divides(g, f):
                return False
    return True


# ----------------------------------------------------------------------
# Index-level helpers (bulk paths)
# ----------------------------------------------------------------------

def index_degree(q: int, idx: int) -> int:
    d = 0
    v = idx // q
    while v:
        d += 1
        v //= q
    return d


def _index_digits(q: int, idx: int) -> list[int]:
    out = []
    v = idx
    while v:
        v, r = divmod(v, q)
        out.append(r)
    return out


def index_mul(q: int, a: int, b: int) -> int:
    """Index of the product of the polynomials with indices a and b."""
    if q == 2:
        # carry-less multiply: base-2 digit convolution mod 2
        out = 0
        x = a
        shift = 0
        while x:
            if x & 1:
                out ^= b << shift
            x >>= 1
            shift += 1
        return out
    da = _index_digits(q, a)
    db = _index_digits(q, b)
    out_digits = [0] * (len(da) + len(db) - 1)
    for i, ai in enumerate(da):
        if ai:
            for j, bj in enumerate(db):
                out_digits[i + j] += ai * bj
    v = 0
    for c in reversed(out_digits):
        v = v * q + (c % q)
    return v


def index_divrem(q: int, a: int, b: int) -> tuple[int, int]:
    """(quotient index, remainder index-value) of index a by monic index b."""
    da = index_degree(q, a)
    db = index_degree(q, b)
    if da < db:
        return 0, a
    if q == 2:
        quot = 0
        rem = a
        for shift in range(da - db, -1, -1):
            if rem >> (shift + db) & 1:
                quot |= 1 << shift
                rem ^= b << shift
        return quot, rem
    rd = _index_digits(q, a)
    bd = _index_digits(q, b)
    quot_digits = [0] * (da - db + 1)
    for shift in range(da - db, -1, -1):
        c = rd[shift + db] % q
        if c:
            quot_digits[shift] = c
            for i, bi in enumerate(bd):
                rd[shift + i] = (rd[shift + i] - c * bi) % q
    quot = 0
    for c in reversed(quot_digits):
        quot = quot * q + c
    rem = 0
    for c in reversed(rd[:db]):
        rem = rem * q + (c % q)
    return quot, rem


# ----------------------------------------------------------------------
# Factor sieve
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    """Sorted factorization into distinct irreducibles with multiplicities."""

    q: int
    factors: tuple[tuple[MonicPoly, int], ...]

    @property
    def degree(self) -> int:
        return sum(p.degree * m for p, m in self.factors)

    @property
    def omega(self) -> int:
        """Number of distinct irreducible factors."""
        return len(self.factors)

    @property
    def big_omega(self) -> int:
        """Number of irreducible factors counted with multiplicity."""
        return sum(m for _, m in self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(m == 1 for _, m in self.factors)

    @property
    def max_factor_degree(self) -> int:
        """D(f): largest degree among irreducible factors (0 for the unit)."""
        return max((p.degree for p, _ in self.factors), default=0)

    def product(self) -> MonicPoly:
        out = MonicPoly.one(self.q)
        for p, m in self.factors:
            for _ in range(m):
                out = poly_mul(out, p)
        return out

    def divisor_degree_mask(self) -> int:
        """Bit n set iff some monic divisor has degree exactly n."""
        mask = 1
        for p, m in self.factors:
            for _ in range(m):
                mask |= mask << p.degree
        return mask


class FactorSieve:
    """Least-factor table for every monic polynomial of degree <= horizon.

    spf[i] holds the index of the least (degree, index) irreducible factor
    of the polynomial with index i, and cof[i] the index of the cofactor,
    so factoring is a chain of O(1) lookups.  Array slots outside the
    valid index ranges [q^d, 2 q^d) stay zero.
    """

    def __init__(self, q: int, horizon: int, spf: np.ndarray, cof: np.ndarray):
        self.q = q
        self.horizon = horizon
        self.spf = spf
        self.cof = cof
        self._irr_cache: dict[int, np.ndarray] = {}

    def is_irreducible_index(self, idx: int) -> bool:
        return bool(self.spf[idx] == idx)

    def irreducible_indices(self, degree: int) -> np.ndarray:
        """Ascending indices of the irreducibles of one degree."""
        if not 1 <= degree <= self.horizon:
            raise UsageError(f"degree {degree} outside sieve horizon {self.horizon}")
        got = self._irr_cache.get(degree)
        if got is None:
            base = self.q**degree
            sl = self.spf[base:2 * base]
            got = (np.nonzero(sl == np.arange(base, 2 * base, dtype=sl.dtype))[0]
                   + base)
            self._irr_cache[degree] = got
        return got

    def factor_index(self, idx: int) -> list[tuple[int, int]]:
        """Factorization of an index as (irreducible index, multiplicity) pairs."""
        if idx == 1:
            return []
        out: list[tuple[int, int]] = []
        spf = self.spf
        cof = self.cof
        v = idx
        while v != 1:
            p = int(spf[v])
            if p == 0:
                raise UsageError(f"index {v} outside sieve coverage")
            mult = 0
            while v != 1 and int(spf[v]) == p:
                mult += 1
                v = int(cof[v])
            out.append((p, mult))
        return out


def build_factor_sieve(q: int, horizon: int,
                       max_entries: int = DEFAULT_SIEVE_ENTRIES) -> FactorSieve:
    """Sieve least factors for all monic polynomials of degree <= horizon.

    Irreducibles are discovered degree by degree: once every irreducible
    of smaller degree has marked its multiples, the unmarked slots of a
    degree are exactly its irreducibles.  Marking each irreducible's
    unmarked multiples in (degree, index) order makes spf the least
    factor.
    """
    _check_prime(q)
    if horizon < 1:
        raise UsageError("sieve horizon must be >= 1")
    n_entries = 2 * q**horizon
    if n_entries > max_entries:
        raise BudgetError(
            f"sieve for q={q}, horizon={horizon} needs {n_entries} entries"
            f" (budget {max_entries})")
    dtype = np.int32 if n_entries <= 2**31 else np.int64
    spf = np.zeros(n_entries, dtype=dtype)
    cof = np.zeros(n_entries, dtype=dtype)

    digit_cache: dict[int, np.ndarray] = {}

    def digit_matrix(e: int) -> np.ndarray:
        got = digit_cache.get(e)
        if got is None:
            idxs = np.arange(q**e, 2 * q**e, dtype=np.int64)
            cols = np.empty((e + 1, q**e), dtype=np.int64)
            v = idxs.copy()
            for i in range(e + 1):
                cols[i] = v % q
                v //= q
            digit_cache[e] = cols
            got = cols
        return got

    for d in range(1, horizon + 1):
        base = q**d
        block = spf[base:2 * base]
        irr = np.nonzero(block == 0)[0] + base
        spf[irr] = irr
        cof[irr] = 1
        emax = horizon - d
        if emax < 1:
            continue
        if q == 2:
            g_all = np.arange(2, 2 << emax, dtype=np.int64)
            for p in irr.tolist():
                prods = np.zeros_like(g_all)
                x = int(p)
                shift = 0
                while x:
                    if x & 1:
                        prods ^= g_all << shift
                    x >>= 1
                    shift += 1
                unmarked = spf[prods] == 0
                tgt = prods[unmarked]
                spf[tgt] = p
                cof[tgt] = g_all[unmarked]
        else:
            qpow = q**np.arange(horizon + 1, dtype=np.int64)
            for p in irr.tolist():
                pd = _index_digits(q, int(p))
                for e in range(1, emax + 1):
                    g_cols = digit_matrix(e)
                    out_len = e + d + 1
                    prods = np.zeros(q**e, dtype=np.int64)
                    for j in range(out_len):
                        col = np.zeros(q**e, dtype=np.int64)
                        for i, pi in enumerate(pd):
                            if pi and 0 <= j - i <= e:
                                col += pi * g_cols[j - i]
                        prods += (col % q) * qpow[j]
                    unmarked = spf[prods] == 0
                    tgt = prods[unmarked]
                    spf[tgt] = p
                    cof[tgt] = (np.arange(q**e, 2 * q**e, dtype=np.int64))[unmarked]
        digit_cache.pop(emax, None)  # largest width not needed again
    return FactorSieve(q, horizon, spf, cof)


def factorize(f: MonicPoly, sieve: FactorSieve) -> Factorization:
    """Full factorization via the sieve's least-factor chain."""
    if f.q != sieve.q:
        raise UsageError(f"sieve is for q={sieve.q}, polynomial has q={f.q}")
    if f.degree > sieve.horizon:
        raise UsageError(
            f"degree {f.degree} exceeds sieve horizon {sieve.horizon}")
    pairs = sieve.factor_index(f.index)
    return Factorization(
        f.q, tuple((MonicPoly.from_index(f.q, p), m) for p, m in pairs))

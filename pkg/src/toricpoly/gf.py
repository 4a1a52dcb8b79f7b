"""Finite fields F_q for small prime powers q, with a fixed primitive element.

An element is encoded by the integer ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
where ``c_0 + c_1 x + ...`` is its residue modulo the defining polynomial.
For prime fields that is just the residue mod p.

The full addition and multiplication tables are precomputed as numpy arrays;
code construction and the distance searches index into them directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import FieldDivisionByZeroError, NotPrimePowerError

# defining polynomials (constant term first); other extension fields use the
# smallest monic irreducible polynomial in coefficient order
FIXED_MODULI = {
    4: (1, 1, 1),      # x^2 + x + 1
    8: (1, 1, 0, 1),   # x^3 + x + 1
    9: (1, 0, 1),      # x^2 + 1
}


def prime_power(q: int) -> tuple[int, int]:
    """``(p, k)`` with ``q = p**k``; raises for non prime powers."""
    if q < 2:
        raise NotPrimePowerError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise NotPrimePowerError(f"{q} is not a prime power")
    return p, k


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except NotPrimePowerError:
        return False
    return True


SUPPORTED_Q = tuple(q for q in range(2, 65) if is_prime_power(q))


def _poly_mod(a: list[int], f: tuple[int, ...], p: int) -> list[int]:
    a = a[:]
    k = len(f) - 1
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i] % p
        if c:
            for j in range(k + 1):
                a[i - k + j] = (a[i - k + j] - c * f[j]) % p
    return [c % p for c in a[:k]] + [0] * max(0, k - len(a))


def _is_irreducible(f: tuple[int, ...], p: int) -> bool:
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = tail + (1,)
            if not any(_poly_mod(list(f), g, p)):
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    for tail in itertools.product(range(p), repeat=k):
        f = tail[::-1] + (1,)
        if f[0] and _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")


def _digits(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(a % p)
        a //= p
    return out


def _undigits(c: list[int], p: int) -> int:
    return sum(ci * p ** i for i, ci in enumerate(c))


@dataclass(frozen=True, eq=False)
class Field:
    """F_q with its tables and designated primitive element ``epsilon``."""

    q: int
    p: int
    degree: int
    modulus: tuple[int, ...]
    epsilon: int
    add_table: np.ndarray
    mul_table: np.ndarray
    neg_table: np.ndarray
    inv_table: np.ndarray
    exp_table: np.ndarray  # exp_table[i] = epsilon**i, 0 <= i < 2(q-1)
    log_table: np.ndarray  # log_table[0] = -1

    def __repr__(self):
        return f"Field(q={self.q}, epsilon={self.epsilon})"

    def __call__(self, rep: int) -> "FieldElement":
        return FieldElement(self, int(rep) % self.q if self.degree == 1 else int(rep))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, a) for a in range(self.q)]

    def eps_pow(self, e: int) -> int:
        return int(self.exp_table[e % (self.q - 1)])

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldDivisionByZeroError("zero has no inverse")
        return int(self.inv_table[a])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise FieldDivisionByZeroError("zero to a negative power")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % (self.q - 1)])

    def order(self, a: int) -> int:
        if a == 0:
            raise FieldDivisionByZeroError("zero has no multiplicative order")
        x, k = a, 1
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k


class FieldElement:
    __slots__ = ("field", "rep")

    def __init__(self, field: Field, rep: int):
        if not 0 <= rep < field.q:
            raise ValueError(f"{rep} is not an element code of F_{field.q}")
        self.field = field
        self.rep = rep

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.field is not self.field:
                raise ValueError("elements of different fields")
            return b.rep
        return self.field(b).rep

    def __add__(self, b):
        return FieldElement(self.field, self.field.add(self.rep, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return FieldElement(self.field, self.field.sub(self.rep, self._other(b)))

    def __mul__(self, b):
        return FieldElement(self.field, self.field.mul(self.rep, self._other(b)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.rep))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.rep))

    def __truediv__(self, b):
        return self * FieldElement(self.field, self._other(b)).inverse()

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.rep, e))

    def __eq__(self, b):
        if isinstance(b, FieldElement):
            return self.field is b.field and self.rep == b.rep
        if isinstance(b, int):
            return self.rep == b
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.rep))

    def __bool__(self):
        return self.rep != 0

    def __int__(self):
        return self.rep

    def __repr__(self):
        return f"F{self.field.q}({self.rep})"


@lru_cache(maxsize=None)
def field_make(q: int) -> Field:
    p, k = prime_power(q)
    if k == 1:
        modulus = (0, 1)
    else:
        modulus = FIXED_MODULI.get(q) or _smallest_irreducible(p, k)
        if not _is_irreducible(modulus, p):
            raise AssertionError(f"modulus {modulus} is reducible")

    digits = [_digits(a, p, k) for a in range(q)]
    add = np.empty((q, q), dtype=np.int16)
    mul = np.empty((q, q), dtype=np.int16)
    for a in range(q):
        for b in range(q):
            add[a, b] = _undigits([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
            if k == 1:
                mul[a, b] = (a * b) % p
            else:
                prod = [0] * (2 * k - 1)
                for i, x in enumerate(digits[a]):
                    for j, y in enumerate(digits[b]):
                        prod[i + j] += x * y
                mul[a, b] = _undigits(_poly_mod(prod, modulus, p), p)

    def order(a):
        x, n = a, 1
        while x != 1:
            x = int(mul[x, a])
            n += 1
        return n

    eps = next(a for a in range(1, q) if order(a) == q - 1)
    exp = np.empty(2 * (q - 1), dtype=np.int16)
    log = np.full(q, -1, dtype=np.int16)
    x = 1
    for i in range(2 * (q - 1)):
        exp[i] = x
        if i < q - 1:
            log[x] = i
        x = int(mul[x, eps])
    neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int16)
    inv = np.zeros(q, dtype=np.int16)
    for a in range(1, q):
        inv[a] = exp[(q - 1 - log[a]) % (q - 1)]
    for arr in (add, mul, neg, inv, exp, log):
        arr.setflags(write=False)
    return Field(q, p, k, tuple(modulus), eps, add, mul, neg, inv, exp, log)


def rref(F: Field, A: np.ndarray, columns=None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over ``F``.

    Pivots are searched in the order given by ``columns`` (default: left to
    right), so the pivot set is the first independent subsequence of it.
    Returns the reduced matrix (rank rows first) and the pivot columns.
    """
    R = np.array(A, dtype=np.int16, copy=True)
    rows, _ = R.shape
    order = range(R.shape[1]) if columns is None else columns
    pivots = []
    r = 0
    for c in order:
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = F.mul_table[F.inv_table[R[r, c]], R[r]]
        for j in range(rows):
            f = R[j, c]
            if j != r and f:
                R[j] = F.add_table[R[j], F.neg_table[F.mul_table[f, R[r]]]]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: Field, A: np.ndarray) -> int:
    return len(rref(F, A)[1])


def in_row_space(F: Field, G: np.ndarray, v: np.ndarray) -> bool:
    return rank(F, np.vstack([G, np.asarray(v)[None, :]])) == rank(F, G)

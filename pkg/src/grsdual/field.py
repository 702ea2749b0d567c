"""Finite fields GF(p^m) for odd p, with table-driven arithmetic.

Elements are stored as integer codes: the residue c_0 + c_1 x + ... + c_{m-1} x^{m-1}
is encoded as c_0 + c_1 p + ... + c_{m-1} p^{m-1}.  Every nonzero element is a
power of the primitive element ``omega``; the exp/log tables built at
construction time drive multiplication, discrete logarithms, square roots and
the quadratic character.

Scalar code goes through :class:`FieldElement`.  Matrix code (``grs``, ``linalg``)
works on numpy arrays of element codes through the ``v*`` methods of
:class:`FieldContext`.
"""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import (
    ContextMismatch,
    DivisionByZero,
    FieldTooLarge,
    NotADivisor,
    NotASquare,
    NotPrime,
    ZeroArgument,
)

DEFAULT_MAX_FIELD = 2**20
# full q x q add/mul tables are built below this size
_TABLE_LIMIT = 1024


def max_field_size() -> int:
    """Upper bound on q; ``GRSDUAL_MAX_FIELD`` overrides the default."""
    env = os.environ.get("GRSDUAL_MAX_FIELD")
    if env:
        return int(env)
    return DEFAULT_MAX_FIELD


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, e) with n = p**e, or None if n is not a prime power."""
    if n < 2:
        return None
    ps = prime_factors(n)
    if len(ps) != 1:
        return None
    p = ps[0]
    e = 0
    while n > 1:
        n //= p
        e += 1
    return p, e


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists with the constant term first
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(a), f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over GF(p)."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**m, f, p), x, p):
        return False
    for ell in prime_factors(m):
        h = _poly_sub(_poly_powmod(x, p ** (m // ell), f, p), x, p)
        if len(_poly_gcd(list(f), h, p)) != 1:
            return False
    return True


def _x_is_primitive(f: Sequence[int], p: int) -> bool:
    m = len(f) - 1
    q = p**m
    if m == 1:
        root = (-f[0]) % p
        if root == 0:
            return False
        return all(pow(root, (q - 1) // ell, p) != 1 for ell in prime_factors(q - 1))
    for ell in prime_factors(q - 1):
        if _poly_powmod([0, 1], (q - 1) // ell, f, p) == [1]:
            return False
    return True


# ---------------------------------------------------------------------------
# field context and elements
# ---------------------------------------------------------------------------

class _Infinity:
    """The point at infinity of the projective line F_q ∪ {∞}."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "∞"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_infinity(point) -> bool:
    return point is INF


class FieldContext:
    """The field GF(p^m) with a fixed modulus and primitive element.

    Immutable after construction.  Use :func:`build_field` to obtain the
    canonical context for (p, m).
    """

    def __init__(self, p: int, modulus: Sequence[int], primitive_code: int):
        self.p = p
        self.modulus = tuple(int(c) % p for c in modulus)
        self.m = len(self.modulus) - 1
        self.q = p**self.m
        q = self.q
        self._powers = np.array([p**i for i in range(self.m)], dtype=np.int64)
        self.digits = (np.arange(q, dtype=np.int64)[:, None] // self._powers[None, :]) % p

        # exp table by repeated multiplication with the primitive element
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        gen = self._coeffs(primitive_code)
        cur = [1]
        for j in range(q - 1):
            code = self._code(cur)
            if code == 0 or (j > 0 and code == 1):
                raise ValueError(f"element {primitive_code} is not primitive")
            exp[j] = code
            log[code] = j
            cur = _poly_mod(_poly_mul(cur, gen, p), self.modulus, p)
        if self._code(cur) != 1:
            raise ValueError(f"element {primitive_code} is not primitive")
        for j in range(q - 1, 2 * (q - 1)):
            exp[j] = exp[j - (q - 1)]
        self._exp_list = exp
        self._log_list = log
        self.exp = np.array(exp, dtype=np.int64)
        self.log = np.array(log, dtype=np.int64)

        neg = self._recombine((-self.digits) % p)
        self.neg_table = neg
        inv = np.zeros(q, dtype=np.int64)
        nz = np.arange(1, q)
        inv[nz] = self.exp[(q - 1 - self.log[nz]) % (q - 1)]
        self.inv_table = inv
        self._neg_list = neg.tolist()
        self._inv_list = inv.tolist()

        self.add_table = None
        self.sub_table = None
        self.mul_table = None
        if q <= _TABLE_LIMIT:
            a = np.arange(q)
            self.add_table = self._recombine((self.digits[:, None, :] + self.digits[None, :, :]) % p)
            self.sub_table = self._recombine((self.digits[:, None, :] - self.digits[None, :, :]) % p)
            la = self.log[a]
            mt = self.exp[la[:, None] + la[None, :]]
            mt[0, :] = 0
            mt[:, 0] = 0
            self.mul_table = mt
            self._add_flat = self.add_table.ravel()
            self._sub_flat = self.sub_table.ravel()
            self._mul_flat = mt.ravel()

        self.omega = FieldElement(self, primitive_code)
        self.zero = FieldElement(self, 0)
        self.one = FieldElement(self, 1)

    # -- encoding -----------------------------------------------------------
    def _code(self, coeffs: Sequence[int]) -> int:
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def _coeffs(self, code: int) -> list[int]:
        return [(code // self.p**i) % self.p for i in range(self.m)]

    def _recombine(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self._powers

    # -- element construction ----------------------------------------------
    def __call__(self, value: Union[int, "FieldElement"]) -> "FieldElement":
        """Embed an integer as a constant of the prime subfield."""
        if isinstance(value, FieldElement):
            self.check(value)
            return value
        return FieldElement(self, int(value) % self.p)

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise ValueError(f"element code {code} out of range for GF({self.q})")
        return FieldElement(self, int(code))

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        """Element from coefficients (constant first); missing high terms are zero."""
        if not 1 <= len(coeffs) <= self.m or any(not 0 <= int(c) < self.p for c in coeffs):
            raise ValueError(f"expected 1 to {self.m} coefficients in [0, {self.p - 1}], got {list(coeffs)}")
        return FieldElement(self, self._code(list(coeffs) + [0] * (self.m - len(coeffs))))

    def power_of_omega(self, j: int) -> "FieldElement":
        return FieldElement(self, self._exp_list[j % (self.q - 1)])

    def elements(self) -> Iterator["FieldElement"]:
        for c in range(self.q):
            yield FieldElement(self, c)

    def nonzero(self) -> Iterator["FieldElement"]:
        for c in range(1, self.q):
            yield FieldElement(self, c)

    def check(self, x: "FieldElement") -> None:
        if x.ctx is not self and x.ctx != self:
            raise ContextMismatch(f"element of {x.ctx} used in {self}")

    # -- scalar ops on codes ------------------------------------------------
    def _add(self, a: int, b: int) -> int:
        if self.add_table is not None:
            return int(self.add_table[a, b])
        if self.m == 1:
            return (a + b) % self.p
        return self._code([x + y for x, y in zip(self._coeffs(a), self._coeffs(b))])

    def _mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    # -- group-theoretic operations ----------------------------------------
    def dlog(self, x: "FieldElement") -> int:
        """Exponent j in [0, q-2] with omega**j == x."""
        self.check(x)
        if x.value == 0:
            raise ZeroArgument("dlog of zero")
        return self._log_list[x.value]

    def quadratic_character(self, x: "FieldElement") -> int:
        self.check(x)
        if x.value == 0:
            raise ZeroArgument("quadratic character of zero")
        return 1 if self._log_list[x.value] % 2 == 0 else -1

    def is_square(self, x: "FieldElement") -> bool:
        return x.value == 0 or self.quadratic_character(x) == 1

    def sqrt(self, x: "FieldElement") -> "FieldElement":
        """Canonical square root: the root whose dlog lies in [0, (q-1)/2)."""
        self.check(x)
        if x.value == 0:
            raise ZeroArgument("sqrt of zero")
        j = self._log_list[x.value]
        if j % 2:
            raise NotASquare(f"{x} is not a square in GF({self.q})")
        return self.power_of_omega(j // 2)

    def subgroup(self, d: int) -> list["FieldElement"]:
        """The cyclic subgroup of order d, listed as omega**(j*(q-1)/d)."""
        if d < 1 or (self.q - 1) % d:
            raise NotADivisor(f"{d} does not divide q-1 = {self.q - 1}")
        step = (self.q - 1) // d
        return [self.power_of_omega(j * step) for j in range(d)]

    # -- vectorized ops on arrays of codes -----------------------------------
    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        if self.add_table is not None:
            return self._add_flat[a * self.q + b]
        return self._recombine((self.digits[a] + self.digits[b]) % self.p)

    def vneg(self, a) -> np.ndarray:
        return self.neg_table[np.asarray(a)]

    def vsub(self, a, b) -> np.ndarray:
        if self.sub_table is not None:
            return self._sub_flat[np.asarray(a) * self.q + np.asarray(b)]
        return self.vadd(a, self.neg_table[np.asarray(b)])

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        if self.mul_table is not None:
            return self._mul_flat[a * self.q + b]
        r = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self.inv_table[a]

    def vpow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a)
        if e == 0:
            return np.ones_like(a)
        r = self.exp[(self.log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0, r)

    def vsum(self, a, axis=None) -> np.ndarray:
        """Field sum of an array of codes along ``axis``."""
        a = np.asarray(a)
        d = self.digits[a]
        if axis is None:
            s = d.reshape(-1, self.m).sum(axis=0)
        else:
            ax = axis if axis >= 0 else a.ndim + axis
            s = d.sum(axis=ax)
        return self._recombine(s % self.p)

    def vdot(self, a, b, axis=-1) -> np.ndarray:
        return self.vsum(self.vmul(a, b), axis=axis)

    # -- misc -----------------------------------------------------------------
    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldContext):
            return NotImplemented
        return (
            self.p == other.p
            and self.modulus == other.modulus
            and self.omega.value == other.omega.value
        )

    def __hash__(self) -> int:
        return hash((self.p, self.modulus, self.omega.value))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"


@dataclass(frozen=True, eq=False)
class FieldElement:
    ctx: FieldContext
    value: int

    @property
    def coeffs(self) -> list[int]:
        return self.ctx._coeffs(self.value)

    def _other(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch(f"cannot mix {self.ctx} and {other.ctx}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ctx(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx._add(self.value, o.value))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx._neg_list[self.value])

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx._mul(self.value, o.value))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise DivisionByZero("inverse of zero")
        return FieldElement(self.ctx, self.ctx._inv_list[self.value])

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        e = int(e)
        if self.value == 0:
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return self.ctx.one if e == 0 else self
        j = self.ctx._log_list[self.value] * e
        return self.ctx.power_of_omega(j)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.value == other.value and (self.ctx is other.ctx or self.ctx == other.ctx)
        if isinstance(other, (int, np.integer)):
            return self.value == self.ctx(int(other)).value
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        if self.ctx.m == 1:
            return str(self.value)
        if self.value == 0:
            return "0"
        return f"w^{self.ctx._log_list[self.value]}"


EvaluationPoint = Union[FieldElement, _Infinity]


def arith(a: FieldElement, b: FieldElement | int | None, kind: str) -> FieldElement:
    """Dispatch a named field operation (add, sub, mul, div, neg, inv, pow)."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    if kind == "neg":
        return -a
    if kind == "inv":
        return a.inverse()
    if kind == "pow":
        return a ** int(b)
    raise ValueError(f"unknown operation {kind!r}")


def _check_size(p: int, m: int) -> None:
    if p == 2:
        raise NotPrime("characteristic 2 is not supported; p must be an odd prime")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if p**m > max_field_size():
        raise FieldTooLarge(f"q = {p}^{m} exceeds the bound {max_field_size()}")


@functools.lru_cache(maxsize=None)
def _build_field(p: int, m: int, bound: int) -> FieldContext:
    for tail in itertools.product(range(p), repeat=m):
        f = list(reversed(tail)) + [1]  # constant term first
        if f[0] == 0:
            continue
        if is_irreducible(f, p) and _x_is_primitive(f, p):
            gen = (-f[0]) % p if m == 1 else p  # code of the residue class of x
            return FieldContext(p, f, gen)
    raise AssertionError(f"no primitive polynomial of degree {m} over GF({p})")


def build_field(p: int, m: int = 1) -> FieldContext:
    """Canonical GF(p^m): smallest primitive modulus, omega = class of x."""
    _check_size(p, m)
    return _build_field(p, m, max_field_size())


def field_of_order(q: int) -> FieldContext:
    pe = prime_power(q)
    if pe is None:
        raise NotPrime(f"{q} is not a prime power")
    return build_field(*pe)


def field_from_modulus(p: int, modulus: Sequence[int]) -> FieldContext:
    """Context for an explicit modulus (used when reading descriptors)."""
    m = len(modulus) - 1
    _check_size(p, m)
    modulus = [int(c) % p for c in modulus]
    canonical = build_field(p, m)
    if list(canonical.modulus) == modulus:
        return canonical
    if modulus[-1] != 1 or not is_irreducible(modulus, p):
        raise ValueError(f"modulus {modulus} is not monic irreducible over GF({p})")
    return _field_from_modulus(p, tuple(modulus))


@functools.lru_cache(maxsize=None)
def _field_from_modulus(p: int, modulus: tuple[int, ...]) -> FieldContext:
    q = p ** (len(modulus) - 1)
    for code in range(1, q):
        try:
            return FieldContext(p, modulus, code)
        except ValueError:
            continue
    raise AssertionError("a finite field always has a primitive element")


def elements_from_codes(ctx: FieldContext, codes: Iterable[int]) -> list[FieldElement]:
    return [FieldElement(ctx, int(c)) for c in codes]

"""Finite fields GF(p^e) built as towers of simple extensions.

An element of a field ``F`` with ground field ``G`` and degree ``u`` is a
polynomial of degree < u over ``G``.  Elements are stored as Python / numpy
integers: coefficient ``i`` (itself an integer encoding of a ``G`` element)
contributes ``c_i * |G|**i``.  Flattened, the encoding is just the base-p
digits of the element, so a subfield element has the same integer in every
field of its tower and embedding is the identity on integers.

Scalar arithmetic on :class:`Fe` is pure polynomial arithmetic.  The
vectorised methods on :class:`FieldSpec` (``add``, ``mul``, ``dot`` ...)
work on integer arrays and use log/antilog tables built lazily on first use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

__all__ = [
    "FieldSpec",
    "Fe",
    "field_build",
    "field_extend",
    "field_from_order",
    "field_arith",
    "embed",
    "trace",
    "default_modulus",
    "is_irreducible",
    "field_to_text",
    "field_from_text",
]

# Largest field order that gets log/antilog tables.
TABLE_LIMIT = 1 << 20

# Default moduli over GF(2), little-endian bit packing (bit i = coeff of x^i).
GF2_DEFAULT_MODULI = {
    2: 0b111,  # x^2+x+1
    3: 0b1011,  # x^3+x+1
    4: 0b10011,  # x^4+x+1
    5: 0b100101,  # x^5+x^2+1
    6: 0b1011011,  # x^6+x^4+x^3+x+1
    7: 0b10000011,  # x^7+x+1
    8: 0x11D,  # x^8+x^4+x^3+x^2+1
    9: 0x211,  # x^9+x^4+1
    10: 0x409,  # x^10+x^3+1
    11: 0x805,  # x^11+x^2+1
    12: 0x10EB,  # x^12+x^7+x^6+x^5+x^3+x+1
    13: 0x201B,  # x^13+x^4+x^3+x+1
    14: 0x40A9,  # x^14+x^7+x^5+x^3+1
    15: 0x8035,  # x^15+x^5+x^4+x^2+1
    16: 0x1002D,  # x^16+x^5+x^3+x^2+1
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomials over a field, as little-endian lists of element integers


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(F: FieldSpec, a: list[int], b: list[int]):
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = F.scalar_inv(b[-1])
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = F.scalar_mul(a[-1], lead_inv)
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = F.scalar_sub(a[shift + i], F.scalar_mul(c, bi))
        _trim(a)
    return q, a


def _poly_mul(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = F.scalar_add(out[i + j], F.scalar_mul(ai, bj))
    return _trim(out)


def _poly_mulmod(F, a, b, f):
    return _poly_divmod(F, _poly_mul(F, a, b), f)[1]


def _poly_powmod(F, base, e: int, f):
    result = [1]
    base = _poly_divmod(F, base, f)[1]
    while e:
        if e & 1:
            result = _poly_mulmod(F, result, base, f)
        base = _poly_mulmod(F, base, base, f)
        e >>= 1
    return result


def _poly_gcd(F, a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_divmod(F, a, b)[1]
    return a


def _poly_sub(F, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([F.scalar_sub(x, y) for x, y in zip(a, b)])


def is_irreducible(ground: FieldSpec, poly: Sequence[int]) -> bool:
    """Rabin's irreducibility test for a polynomial over ``ground``.

    ``poly`` is little-endian (constant term first).
    """
    f = _trim(list(poly))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    q = ground.order
    x = [0, 1]

    def frob(k):
        # x^(q^k) mod f
        r = x
        for _ in range(k):
            r = _poly_powmod(ground, r, q, f)
        return r

    if _poly_sub(ground, frob(n), x):
        return False
    for r in _prime_factors(n):
        g = _poly_gcd(ground, _poly_sub(ground, frob(n // r), x), f)
        if len(g) != 1:
            return False
    return True


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """A finite field given as a simple extension of ``ground``.

    Prime fields have ``ground=None`` and an empty modulus.  Otherwise
    ``modulus`` holds the little-endian coefficients (ground-field integers)
    of a monic irreducible polynomial over ``ground``.
    """

    characteristic: int
    ground: FieldSpec | None = None
    modulus: tuple[int, ...] = ()

    def __post_init__(self):
        p = self.characteristic
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if self.ground is None:
            if self.modulus:
                raise ValueError("a prime field takes no modulus")
            return
        if self.ground.characteristic != p:
            raise ValueError("ground field has a different characteristic")
        mod = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) < 2:
            raise ValueError("modulus must have degree >= 1")
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        if any(not 0 <= c < self.ground.order for c in mod):
            raise ValueError("modulus coefficient outside the ground field")
        if not is_irreducible(self.ground, mod):
            raise ValueError(
                f"modulus {list(mod)} is reducible over {self.ground.name}")

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree over the ground field (1 for a prime field)."""
        return len(self.modulus) - 1 if self.ground is not None else 1

    @cached_property
    def prime_degree(self) -> int:
        if self.ground is None:
            return 1
        return self.degree * self.ground.prime_degree

    @cached_property
    def order(self) -> int:
        return self.characteristic ** self.prime_degree

    @property
    def is_prime(self) -> bool:
        return self.ground is None

    @property
    def name(self) -> str:
        if self.ground is None:
            return f"GF({self.characteristic})"
        return f"GF({self.characteristic}^{self.prime_degree})"

    def __repr__(self):
        if self.ground is None or self.ground.is_prime:
            return self.name
        return f"{self.name}/{self.ground!r}"

    def chain(self) -> list[FieldSpec]:
        """This field followed by every field below it in the tower."""
        out, f = [], self
        while f is not None:
            out.append(f)
            f = f.ground
        return out

    def extends(self, other: FieldSpec) -> bool:
        """True if ``other`` is this field or sits below it in the tower."""
        return other in self.chain()

    def degree_over(self, base: FieldSpec) -> int:
        if not self.extends(base):
            raise ValueError(f"{base!r} is not a subfield of {self!r}")
        return self.prime_degree // base.prime_degree

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def contains(self, a) -> bool:
        a = np.asarray(a)
        return bool(np.all((a >= 0) & (a < self.order)))

    # -- scalar, table-free arithmetic -------------------------------------

    def coeffs(self, a: int) -> list[int]:
        """Coefficients of ``a`` over the ground field, little-endian."""
        g = self.ground.order
        out = []
        for _ in range(self.degree):
            a, c = divmod(a, g)
            out.append(c)
        return out

    def from_coeffs(self, cs: Sequence[int]) -> int:
        g = self.ground.order
        v = 0
        for c in reversed(cs):
            v = v * g + int(c)
        return v

    def scalar_add(self, a: int, b: int) -> int:
        p = self.characteristic
        if p == 2:
            return a ^ b
        if self.ground is None:
            return (a + b) % p
        out, pw = 0, 1
        for _ in range(self.prime_degree):
            out += ((a // pw + b // pw) % p) * pw
            pw *= p
        return out

    def scalar_neg(self, a: int) -> int:
        p = self.characteristic
        if p == 2:
            return a
        if self.ground is None:
            return (-a) % p
        out, pw = 0, 1
        for _ in range(self.prime_degree):
            out += ((-(a // pw)) % p) * pw
            pw *= p
        return out

    def scalar_sub(self, a: int, b: int) -> int:
        return self.scalar_add(a, self.scalar_neg(b))

    def scalar_mul(self, a: int, b: int) -> int:
        if self.ground is None:
            return (a * b) % self.characteristic
        if a == 0 or b == 0:
            return 0
        G = self.ground
        prod = _poly_mul(G, self.coeffs(a), self.coeffs(b))
        _, rem = _poly_divmod(G, prod, list(self.modulus))
        return self.from_coeffs(rem)

    def scalar_pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.scalar_inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.scalar_mul(result, a)
            a = self.scalar_mul(a, a)
            e >>= 1
        return result

    def scalar_inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        return self.scalar_pow(a, self.order - 2)

    # -- tables and vectorised arithmetic ----------------------------------

    @cached_property
    def primitive_element(self) -> int:
        """Smallest integer that generates the multiplicative group."""
        n = self.order - 1
        if n == 1:
            return 1
        factors = _prime_factors(n)
        for g in range(2, self.order):
            if all(self.scalar_pow(g, n // r) != 1 for r in factors):
                return g
        raise AssertionError("no primitive element found")  # unreachable

    @cached_property
    def _tables(self):
        Q = self.order
        if Q > TABLE_LIMIT:
            return None
        n = Q - 1
        g = self.primitive_element
        powers = np.empty(n, dtype=np.int64)
        v = 1
        for i in range(n):
            powers[i] = v
            v = self.scalar_mul(v, g)
        # log(0) is a sentinel that pushes any sum past 2n, where exp is 0
        log = np.empty(Q, dtype=np.int64)
        log[powers] = np.arange(n)
        log[0] = 2 * n
        exp = np.zeros(4 * n + 1, dtype=np.int64)
        exp[: 2 * n] = np.concatenate([powers, powers])
        return exp, log

    def _vectorize(self, fn, *args):
        return np.frompyfunc(fn, len(args), 1)(*args).astype(np.int64)

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p = self.characteristic
        if p == 2:
            return a ^ b
        if self.ground is None:
            return (a + b) % p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.prime_degree):
            out += ((a // pw + b // pw) % p) * pw
            pw *= p
        return out

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        p = self.characteristic
        if p == 2:
            return a.copy()
        if self.ground is None:
            return (-a) % p
        out = np.zeros_like(a)
        pw = 1
        for _ in range(self.prime_degree):
            out += ((-(a // pw)) % p) * pw
            pw *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.ground is None:
            return (a * b) % self.characteristic
        t = self._tables
        if t is None:
            return self._vectorize(self.scalar_mul, a, b)
        exp, log = t
        return exp[log[a] + log[b]]

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        t = self._tables
        if t is None:
            return self._vectorize(self.scalar_inv, a)
        exp, log = t
        n = self.order - 1
        return exp[(n - log[a]) % n]

    def pow(self, a, e):
        """Elementwise ``a**e``; ``e`` may be an integer or an array."""
        a = np.asarray(a, dtype=np.int64)
        e = np.asarray(e, dtype=np.int64)
        if np.any((a == 0) & (e < 0)):
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        t = self._tables
        if t is None:
            return self._vectorize(self.scalar_pow, a, e)
        exp, log = t
        n = self.order - 1
        nz = a != 0
        la = np.where(nz, log[a], 0)
        out = exp[(la * (e % n)) % n]
        return np.where(nz, out, np.where(e == 0, 1, 0))

    def sum(self, a, axis=-1):
        a = np.asarray(a, dtype=np.int64)
        p = self.characteristic
        if p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.ground is None:
            return a.sum(axis=axis) % p
        out = 0
        pw = 1
        for _ in range(self.prime_degree):
            out = out + ((a // pw) % p).sum(axis=axis) % p * pw
            pw *= p
        return np.asarray(out, dtype=np.int64)

    def prod(self, a, axis=-1):
        a = np.asarray(a, dtype=np.int64)
        t = self._tables
        if t is None or self.ground is None:
            return self._reduce_prod_slow(a, axis)
        exp, log = t
        n = self.order - 1
        zero = np.any(a == 0, axis=axis)
        s = np.where(a == 0, 0, log[a]).sum(axis=axis) % n
        return np.where(zero, 0, exp[s])

    def _reduce_prod_slow(self, a, axis):
        a = np.moveaxis(a, axis, -1)
        out = np.ones(a.shape[:-1], dtype=np.int64)
        for i in range(a.shape[-1]):
            out = self.mul(out, a[..., i])
        return out

    def dot(self, a, b):
        """Inner product along the last axis."""
        return self.sum(self.mul(a, b), axis=-1)

    def digits(self, a, base: FieldSpec) -> np.ndarray:
        """Coordinates of ``a`` over the subfield ``base``.

        Adds a trailing axis of length ``[self : base]``.
        """
        u = self.degree_over(base)
        a = np.asarray(a, dtype=np.int64)
        q = base.order
        pw = q ** np.arange(u, dtype=np.int64)
        return (a[..., None] // pw) % q

    def from_digits(self, d, base: FieldSpec) -> np.ndarray:
        u = self.degree_over(base)
        d = np.asarray(d, dtype=np.int64)
        pw = base.order ** np.arange(u, dtype=np.int64)
        return (d * pw).sum(axis=-1)

    def trace(self, a, base: FieldSpec | None = None) -> np.ndarray:
        """Vectorised trace down to ``base`` (default: the ground field)."""
        if base is None:
            if self.ground is None:
                raise ValueError(f"{self.name} has no declared subfield")
            base = self.ground
        u = self.degree_over(base)
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros_like(a)
        e = 1
        for _ in range(u):
            out = self.add(out, self.pow(a, e))
            e *= base.order
        return out


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class Fe:
    """A single field element with operator overloading.

    Arithmetic goes through the table-free scalar routines of the field.
    """

    field: FieldSpec
    value: int

    def __post_init__(self):
        v = int(self.value)
        if not 0 <= v < self.field.order:
            raise ValueError(f"{v} is not an element of {self.field.name}")
        object.__setattr__(self, "value", v)

    @property
    def coeffs(self) -> tuple[int, ...]:
        if self.field.ground is None:
            return (self.value,)
        return tuple(self.field.coeffs(self.value))

    def _other(self, b) -> int:
        if isinstance(b, Fe):
            if b.field != self.field:
                raise ValueError(
                    f"mixed fields {self.field.name} and {b.field.name}")
            return b.value
        if isinstance(b, (int, np.integer)):
            return Fe(self.field, b).value
        return NotImplemented

    def __add__(self, b):
        return Fe(self.field, self.field.scalar_add(self.value, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return Fe(self.field, self.field.scalar_sub(self.value, self._other(b)))

    def __neg__(self):
        return Fe(self.field, self.field.scalar_neg(self.value))

    def __mul__(self, b):
        return Fe(self.field, self.field.scalar_mul(self.value, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return self * Fe(self.field, self._other(b)).inverse()

    def __pow__(self, e: int):
        return Fe(self.field, self.field.scalar_pow(self.value, e))

    def inverse(self) -> Fe:
        return Fe(self.field, self.field.scalar_inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fe({self.field.name}, {self.value:#x})"


def field_arith(a: Fe, b: Fe | int | None, op: str) -> Fe:
    """Dispatch ``op`` in {add, sub, mul, inv, pow}; ``b`` is the exponent for pow."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown field operation {op!r}")


def embed(a: Fe, target: FieldSpec) -> Fe:
    """Image of ``a`` in an extension ``target`` of its field."""
    if not target.extends(a.field):
        raise ValueError(f"{target!r} does not extend {a.field!r}")
    return Fe(target, a.value)


def trace(b: Fe, base: FieldSpec | None = None) -> Fe:
    """Tr(b) = sum of b^(|base|^i), i < [F:base], as an element of ``base``."""
    F = b.field
    if base is None:
        if F.ground is None:
            raise ValueError(f"{F.name} has no declared subfield")
        base = F.ground
    u = F.degree_over(base)
    acc = 0
    e = 1
    for _ in range(u):
        acc = F.scalar_add(acc, F.scalar_pow(b.value, e))
        e *= base.order
    if acc >= base.order:
        raise AssertionError("trace left the subfield")  # field bug guard
    return Fe(base, acc)


# ---------------------------------------------------------------------------
# construction


def _unpack(value: int, radix: int) -> list[int]:
    out = []
    while value:
        value, c = divmod(value, radix)
        out.append(c)
    return out


def default_modulus(ground: FieldSpec, degree: int) -> tuple[int, ...]:
    """Deterministic default modulus of the given degree over ``ground``.

    GF(2) uses the fixed table ``GF2_DEFAULT_MODULI``; anything else takes
    the monic irreducible with the smallest packed integer encoding.
    """
    q = ground.order
    if ground.is_prime and q == 2 and degree in GF2_DEFAULT_MODULI:
        return tuple(_unpack(GF2_DEFAULT_MODULI[degree], 2))
    start = q ** degree
    for packed in range(start, 2 * start):
        cs = _unpack(packed, q)
        if cs[0] == 0:
            continue  # divisible by x
        if is_irreducible(ground, cs):
            return tuple(cs)
    raise ValueError(f"no irreducible polynomial of degree {degree}")


def _modulus_coeffs(modulus, ground: FieldSpec) -> tuple[int, ...]:
    if isinstance(modulus, (int, np.integer)):
        return tuple(_unpack(int(modulus), ground.order))
    return tuple(int(c) for c in modulus)


def field_extend(ground: FieldSpec, degree: int, modulus=None) -> FieldSpec:
    """Extension of ``ground`` of the given degree (identity for degree 1)."""
    if degree < 1:
        raise ValueError("extension degree must be >= 1")
    if degree == 1:
        return ground
    if modulus is None:
        mod = default_modulus(ground, degree)
    else:
        mod = _modulus_coeffs(modulus, ground)
        if len(mod) - 1 != degree:
            raise ValueError(
                f"modulus has degree {len(mod) - 1}, expected {degree}")
    return FieldSpec(ground.characteristic, ground, mod)


def field_build(characteristic: int, base_degree: int = 1, ext_degree: int = 1,
                modulus=None, *, base_modulus=None) -> FieldSpec:
    """Build GF(q^u) with q = characteristic**base_degree.

    ``modulus`` defines the top step of the tower: the F_q -> F_{q^u} step
    when ``ext_degree > 1``, otherwise the prime -> F_q step.  Use
    ``base_modulus`` to pin the lower step of a two-step tower.  Moduli are
    packed integers (digit i = coefficient of x^i) or little-endian
    coefficient sequences.
    """
    prime = FieldSpec(characteristic)
    if ext_degree == 1 and base_modulus is None:
        base_modulus = modulus
        modulus = None
    base = field_extend(prime, base_degree, base_modulus)
    return field_extend(base, ext_degree, modulus)


def field_from_order(q: int) -> FieldSpec:
    """Default single-step field of order ``q`` (a prime power)."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    d, r = 0, q
    while r % p == 0:
        r //= p
        d += 1
    if r != 1 or not _is_prime(p):
        raise ValueError(f"{q} is not a prime power")
    return field_build(p, d)


# ---------------------------------------------------------------------------
# text form: "GF(2^8) mod 0x11d", "GF(3^2) mod [1,0,1]",
# towers append " ext <u> mod [c0,c1,...]"


def _fmt_modulus(F: FieldSpec) -> str:
    if F.ground.is_prime and F.characteristic == 2:
        return hex(F.from_coeffs(F.modulus))
    return "[" + ",".join(str(c) for c in F.modulus) + "]"


def field_to_text(F: FieldSpec) -> str:
    if F.ground is None:
        return F.name
    if F.ground.is_prime:
        return f"{F.name} mod {_fmt_modulus(F)}"
    return f"{field_to_text(F.ground)} ext {F.degree} mod {_fmt_modulus(F)}"


_HEAD = re.compile(r"^GF\((\d+)(?:\^(\d+))?\)(?:\s+mod\s+(\S+))?")
_EXT = re.compile(r"\s+ext\s+(\d+)\s+mod\s+(\S+)")


def _parse_modulus(tok: str, ground: FieldSpec) -> tuple[int, ...]:
    if tok.startswith("["):
        if not tok.endswith("]"):
            raise ValueError(f"bad coefficient list {tok!r}")
        body = tok[1:-1].strip()
        return tuple(int(c) for c in body.split(",")) if body else ()
    return _modulus_coeffs(int(tok, 0), ground)


def field_from_text(text: str) -> FieldSpec:
    text = text.strip()
    m = _HEAD.match(text)
    if not m:
        raise ValueError(f"unrecognised field text {text!r}")
    p = int(m.group(1))
    d = int(m.group(2) or 1)
    F = FieldSpec(p)
    if d > 1:
        if m.group(3) is None:
            raise ValueError(f"missing modulus in {text!r}")
        F = field_extend(F, d, _parse_modulus(m.group(3), F))
    elif m.group(3) is not None:
        raise ValueError(f"prime field takes no modulus: {text!r}")
    rest = text[m.end():]
    while rest:
        e = _EXT.match(rest)
        if not e:
            raise ValueError(f"trailing garbage in field text: {rest!r}")
        F = field_extend(F, int(e.group(1)), _parse_modulus(e.group(2), F))
        rest = rest[e.end():]
    return F

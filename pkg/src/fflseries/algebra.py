"""Finite fields F_{p^e} and the polynomial ring A = F_q[theta].

Field elements are plain ints: the element sum c_i X^i (X = class of the
generator, 0 <= c_i < p) is encoded as sum c_i p^i.  The zero element is 0
and the prime subfield is the range 0..p-1.  All arithmetic is exhaustive
and deterministic; no probabilistic algorithms.

Defining polynomials are the lexicographically smallest monic irreducibles
(smallest integer encoding of the non-leading coefficient vector), so that
make_field(p, e) is reproducible across runs.  Compatibility between
F_{q^a} and F_{q^ab} is provided by explicit embeddings computed by root
finding and cached per field pair.

Desk-scale bound: p^e <= 2^20.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterator, Sequence

import numpy as np

SIZE_BOUND = 1 << 20
_TABLE_CAP = 1 << 12  # build add/mul numpy tables up to this field size


class SizeError(ValueError):
    """Requested object exceeds the configured desk-scale bounds."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- raw polynomial helpers over F_p (dense int lists, used only for field
#    construction; everything user-facing goes through Poly) ---------------

def _pp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pp_trim(out)


def _pp_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and _pp_trim(a):
        if not a:
            break
        shift = len(a) - 1 - dm
        c = (a[-1] * inv_lead) % p
        for i, mi in enumerate(m):
            a[i + shift] = (a[i + shift] - c * mi) % p
        _pp_trim(a)
    return a


def _pp_powmod(a: Sequence[int], n: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pp_mod(a, m, p)
    while n:
        if n & 1:
            result = _pp_mod(_pp_mul(result, base, p), m, p)
        base = _pp_mod(_pp_mul(base, base, p), m, p)
        n >>= 1
    return result


def _pp_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _pp_mod(a, b, p)
    return a


def _irreducible_fp(coeffs: Sequence[int], p: int) -> bool:
    """Irreducibility over F_p via gcd(X^{p^k} - X, f) for k <= deg/2."""
    f = _pp_trim(list(coeffs))
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    x = [0, 1]
    xp = list(x)
    for _ in range(deg // 2):
        xp = _pp_powmod(xp, p, f, p)
        g = _pp_gcd(f, _pp_trim([(c - d) % p for c, d in
                                 itertools.zip_longest(xp, x, fillvalue=0)]), p)
        if len(g) - 1 >= 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def _defining_poly(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree e over F_p (lex on low coeffs)."""
    if e == 1:
        return (0, 1)
    for enc in range(p ** e):
        low = [(enc // p**i) % p for i in range(e)]
        cand = low + [1]
        if _irreducible_fp(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible found")  # cannot happen


class Field:
    """The finite field F_{p^e}, elements encoded as ints below p^e."""

    def __init__(self, p: int, e: int, _token=None):
        if _token is not _FIELD_TOKEN:
            raise TypeError("use make_field(p, e)")
        self.p = p
        self.e = e
        self.order = p ** e
        self.defining_poly = _defining_poly(p, e)
        self._embed_cache: dict[int, list[int]] = {}
        if self.order <= _TABLE_CAP:
            self._build_tables()
        else:
            self._exp = self._log = None
            self._np_add = self._np_mul = None

    # -- construction of log/exp (and numpy) tables -----------------------

    def _mul_poly(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        da = [(a // p**i) % p for i in range(e)]
        db = [(b // p**i) % p for i in range(e)]
        prod = _pp_mod(_pp_mul(da, db, p), list(self.defining_poly), p)
        return sum(c * p**i for i, c in enumerate(prod))

    def _build_tables(self) -> None:
        n = self.order
        # find a multiplicative generator by exhaustive order check
        target = n - 1
        gen = None
        for g in range(1, n):
            x, k = g, 1
            while x != 1:
                x = self._mul_poly(x, g)
                k += 1
            if k == target:
                gen = g
                break
        assert gen is not None
        exp = [0] * (2 * target)
        log = [0] * n
        x = 1
        for i in range(target):
            exp[i] = x
            log[x] = i
            x = self._mul_poly(x, gen)
        for i in range(target, 2 * target):
            exp[i] = exp[i - target]
        self._exp, self._log = exp, log
        p, e = self.p, self.e
        idx = np.arange(n)
        digits = np.stack([(idx // p**i) % p for i in range(e)])
        add = np.zeros((n, n), dtype=np.int32)
        for i in range(e):
            add += ((digits[i][:, None] + digits[i][None, :]) % p) * p**i
        self._np_add = add.astype(np.int32)
        mul = np.zeros((n, n), dtype=np.int32)
        la = np.array(log)
        ea = np.array(exp)
        nz = idx[1:]
        mul[np.ix_(nz, nz)] = ea[la[nz][:, None] + la[nz][None, :]]
        self._np_mul = mul
        self._np_neg = np.array([self.neg(a) for a in range(n)], dtype=np.int32)
        self._np_inv = np.array([0] + [self.inv(a) for a in range(1, n)],
                                dtype=np.int32)

    # -- scalar operations -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        out, mult = 0, 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        out, mult = 0, 1
        while a:
            out += ((p - a % p) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def pow(self, a: int, n: int) -> int:
        n %= self.order - 1
        if a == 0:
            return 0 if n else 1
        if self._exp is not None:
            return self._exp[(self._log[a] * n) % (self.order - 1)]
        out, base = 1, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def frob(self, a: int, qpow: int) -> int:
        """a ** qpow, intended for q-power Frobenius maps."""
        return self.pow(a, qpow)

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:
        return f"F_{self.p}^{self.e}" if self.e > 1 else f"F_{self.p}"

    # -- vectorized operations on numpy int arrays -------------------------

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        return self._np_add[a, b]

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        return self._np_neg[a]

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (a * b) % self.p
        return self._np_mul[a, b]

    def vinv(self, a: np.ndarray) -> np.ndarray:
        if self.e == 1:
            p = self.p
            table = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)])
            return table[a]
        return self._np_inv[a]

    def to_digits(self, a: np.ndarray) -> np.ndarray:
        """Decompose encodings into F_p digit vectors, shape (..., e)."""
        p = self.p
        return np.stack([(a // p**i) % p for i in range(self.e)], axis=-1)

    def from_digits(self, d: np.ndarray) -> np.ndarray:
        p = self.p
        weights = p ** np.arange(self.e)
        return (d * weights).sum(axis=-1)

    @functools.cached_property
    def mul_tensor(self) -> np.ndarray:
        """Structure constants M[i,j,k]: X^i * X^j has X^k coefficient M[i,j,k]."""
        e, p = self.e, self.p
        m = np.zeros((e, e, e), dtype=np.int64)
        for i in range(e):
            for j in range(e):
                enc = self._mul_poly(self.p ** i if i else 1, p ** j if j else 1)
                for k in range(e):
                    m[i, j, k] = (enc // p**k) % p
        return m


_FIELD_TOKEN = object()


@functools.lru_cache(maxsize=None)
def make_field(p: int, e: int) -> Field:
    """F_{p^e} with the canonical (lex-smallest) defining polynomial."""
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    if p ** e > SIZE_BOUND:
        raise SizeError(f"field size {p}^{e} exceeds bound 2^20")
    return Field(p, e, _token=_FIELD_TOKEN)


@functools.lru_cache(maxsize=None)
def embed_map(small: Field, big: Field) -> tuple[int, ...]:
    """Images of 0..small.order-1 under the designated embedding small -> big.

    The generator of `small` is sent to the root of its defining polynomial
    in `big` with the smallest encoding; this fixes one compatible system of
    embeddings for the whole session.
    """
    if small is big:
        return tuple(range(small.order))
    if small.p != big.p or big.e % small.e:
        raise ValueError(f"no embedding {small} -> {big}")
    if small.e == 1:
        return tuple(range(small.p))
    root = None
    for x in big.elements():
        acc = 0
        for c in reversed(small.defining_poly):
            acc = big.add(big.mul(acc, x), c % big.p)
        if acc == 0:
            root = x
            break
    assert root is not None, "defining polynomial must split in the bigger field"
    p = small.p
    images = []
    for a in small.elements():
        acc, xp = 0, 1
        for i in range(small.e):
            acc = big.add(acc, big.mul((a // p**i) % p, xp))
            xp = big.mul(xp, root)
        images.append(acc)
    return tuple(images)


def embed(a: int, small: Field, big: Field) -> int:
    return embed_map(small, big)[a]


def common_field(f1: Field, f2: Field) -> Field:
    """Smallest canonical field containing both (lcm of extension degrees)."""
    if f1.p != f2.p:
        raise ValueError("different characteristics")
    e1, e2 = f1.e, f2.e
    g = np.gcd(e1, e2)
    return make_field(f1.p, e1 * e2 // int(g))


class Poly:
    """Dense univariate polynomial over a Field (the variable is theta).

    Immutable; coefficients are stored low degree first with no trailing
    zeros.  Doubles as the element type of A = F_q[theta] and as generic
    polynomials over extension fields (characters' minimal polynomials,
    torsion relations and so on).
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence[int]):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def theta(cls, field: Field) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: Field, c: int) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def parse(cls, field: Field, text: str) -> "Poly":
        """Parse the serialization format: comma-separated, low degree first."""
        text = text.strip()
        if not text:
            return cls.zero(field)
        return cls(field, [int(c) % field.p if field.e == 1 else int(c)
                           for c in text.split(",")])

    def serialize(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    # -- structure ----------------------------------------------------------

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.field is other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({self.pretty()})"

    def pretty(self, var: str = "θ") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.deg, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}{var}" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(F, out)

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    def shift(self, n: int) -> "Poly":
        """Multiply by theta^n."""
        if self.is_zero():
            return self
        return Poly(self.field, (0,) * n + self.coeffs)

    def __pow__(self, n: int) -> "Poly":
        out = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.deg
        inv_lead = F.inv(other.coeffs[-1])
        quo = [0] * max(0, len(rem) - db)
        while len(rem) - 1 >= db and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < db:
                break
            shift = len(rem) - 1 - db
            c = F.mul(rem[-1], inv_lead)
            quo[shift] = c
            for i, bc in enumerate(other.coeffs):
                rem[i + shift] = F.sub(rem[i + shift], F.mul(c, bc))
        return Poly(F, quo), Poly(F, rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.scale(self.field.inv(a.coeffs[-1]))

    def derivative(self) -> "Poly":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            c = 0
            for _ in range(i % F.p):
                c = F.add(c, self.coeffs[i])
            out.append(c)
        return Poly(F, out)

    # -- evaluation -----------------------------------------------------------

    def eval(self, zeta: int, zfield: Field | None = None) -> int:
        """Horner evaluation; zeta lives in zfield (default: own field)."""
        zfield = zfield or self.field
        if zfield is not self.field:
            emb = embed_map(self.field, zfield)
        else:
            emb = None
        acc = 0
        for c in reversed(self.coeffs):
            ce = emb[c] if emb else c
            acc = zfield.add(zfield.mul(acc, zeta), ce)
        return acc

    def map_field(self, big: Field) -> "Poly":
        emb = embed_map(self.field, big)
        return Poly(big, [emb[c] for c in self.coeffs])

    def is_irreducible(self) -> bool:
        """Trial division by all lower-degree monic irreducibles."""
        if self.deg < 1:
            return False
        if self.deg == 1:
            return True
        for d in range(1, self.deg // 2 + 1):
            for q in prime_enum(self.field, d):
                if (self % q).is_zero():
                    return False
        return True


def monic_enum(field: Field, k: int) -> Iterator[Poly]:
    """All monic polynomials of degree k, lexicographic on coefficient vectors.

    The tuple (a_0, ..., a_{k-1}) of non-leading coefficients runs in
    lexicographic order of element encodings (a_0 most significant).
    """
    if k < 0:
        raise ValueError("degree must be >= 0")
    if k == 0:
        yield Poly.one(field)
        return
    for low in itertools.product(field.elements(), repeat=k):
        yield Poly(field, list(low) + [1])


def monic_coeff_array(field: Field, k: int) -> np.ndarray:
    """Coefficient matrix of monic_enum(field, k): shape (order^k, k+1).

    Row order matches monic_enum; column j holds the theta^j coefficient.
    """
    n = field.order
    count = n ** k
    idx = np.arange(count)
    cols = [((idx // (n ** (k - 1 - j))) % n) for j in range(k)]
    cols.append(np.full(count, 1))
    return np.stack(cols, axis=1).astype(np.int64)


@functools.lru_cache(maxsize=None)
def prime_enum(field: Field, d: int) -> tuple[Poly, ...]:
    """All monic irreducibles of degree d, lexicographic order."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d == 1:
        return tuple(monic_enum(field, 1))
    out = []
    lower = [p for dd in range(1, d // 2 + 1) for p in prime_enum(field, dd)]
    for cand in monic_enum(field, d):
        if all(not (cand % q).is_zero() for q in lower):
            out.append(cand)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _roots_in(poly: Poly, field: Field) -> tuple[int, ...]:
    return tuple(x for x in field.elements() if poly.eval(x, field) == 0)


def residue_root(P: Poly, target: Field | None = None) -> tuple[int, Field]:
    """The designated root zeta_P of a monic irreducible P.

    Returns (zeta, F) where F = make_field(p, e*deg P) unless an explicit
    larger target field is supplied; zeta is the root with the smallest
    encoding, used consistently by every later construction.
    """
    d = P.deg
    base = P.field
    if target is None:
        target = make_field(base.p, base.e * d)
    roots = _roots_in(P, target)
    if not roots:
        raise ValueError(f"{P!r} has no root in {target!r} (reducible input?)")
    return roots[0], target


def poly_eval(a: Poly, zeta: int, zfield: Field) -> int:
    """Evaluate a at zeta (convenience wrapper around Poly.eval)."""
    return a.eval(zeta, zfield)

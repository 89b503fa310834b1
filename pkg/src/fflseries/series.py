"""Truncated Laurent series and multivariate Tate/affinoid elements.

A LaurentSeries is an exact list of coefficients c_n x^n for n in
[off, prec) in a *tagged* uniformizer x:

  * tag "inf":      x = 1/theta, residue field F_q, v(theta) = -1;
  * tag "prime":    x = u = theta - zeta_P, residue field F_{q^d} (or an
                    unramified extension F_{q^dm}), v normalized v(P) = 1;
  * tag "ramified": x = gamma with gamma^(q^d - 1) = zeta_P - theta, so the
                    stored exponents are in units of 1/(q^d - 1).

prec is the first unknown exponent: coefficients are exact for all
exponents < prec, and prec = INF marks an exact element (a polynomial in
the uniformizer).  Arithmetic never reports more precision than the
min-propagation rules allow, and "zero to precision N" (empty coefficient
list) is distinguished from exact zero.

A TateElement is a finite map from t-monomials to LaurentSeries, optionally
divided by (P(t_1)...P(t_s))^denom at a prime place.  At the infinite place
denominators are t-monomials, which are absorbed as negative exponents.
These realize the rings T_s, A_s and their affinoid variants at finite
precision.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import Field, Poly, common_field, embed_map, make_field

INF = float("inf")


class PrecisionError(ArithmeticError):
    """An operation cannot certify the requested precision."""


class TagMismatch(ValueError):
    """Operands live over different completions."""


@dataclass(frozen=True)
class Tag:
    """Identifies the completion a series lives in."""

    kind: str                 # "inf" | "prime" | "ramified"
    q: int                    # size of the base coefficient field F_q
    prime: Poly | None = None  # P for prime/ramified kinds

    def __post_init__(self):
        if self.kind not in ("inf", "prime", "ramified"):
            raise ValueError(f"unknown tag kind {self.kind!r}")
        if self.kind != "inf" and (self.prime is None or not self.prime.is_monic()):
            raise ValueError("prime/ramified tags need a monic prime")

    @property
    def d(self) -> int:
        return 1 if self.kind == "inf" else self.prime.deg

    @property
    def ram(self) -> int:
        """Ramification index: stored exponents are v * ram."""
        return self.q ** self.d - 1 if self.kind == "ramified" else 1

    def uniformizer_name(self) -> str:
        return {"inf": "1/θ", "prime": "u", "ramified": "γ"}[self.kind]

    def __repr__(self):
        if self.kind == "inf":
            return f"Tag(inf, q={self.q})"
        return f"Tag({self.kind}, q={self.q}, P={self.prime.pretty()})"


def tag_inf(q: int) -> Tag:
    return Tag("inf", q)


def tag_prime(P: Poly) -> Tag:
    return Tag("prime", P.field.order, P)


def tag_ramified(P: Poly) -> Tag:
    return Tag("ramified", P.field.order, P)


def _min_prec(a, b):
    return a if a <= b else b


class LS:
    """Truncated Laurent series over a Field in the tagged uniformizer."""

    __slots__ = ("tag", "field", "off", "coeffs", "prec")

    def __init__(self, tag: Tag, field: Field, off: int,
                 coeffs: Sequence[int], prec):
        cs = list(coeffs)
        # trim beyond precision
        if prec is not INF and off + len(cs) > prec:
            cs = cs[:max(0, int(prec) - off)]
        # normalize leading zeros
        while cs and cs[0] == 0:
            cs.pop(0)
            off += 1
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            off = 0
        self.tag = tag
        self.field = field
        self.off = off
        self.coeffs = tuple(cs)
        self.prec = prec

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, tag: Tag, field: Field, prec=INF) -> "LS":
        return cls(tag, field, 0, (), prec)

    @classmethod
    def const(cls, tag: Tag, field: Field, c: int, prec=INF) -> "LS":
        return cls(tag, field, 0, (c,), prec)

    @classmethod
    def one(cls, tag: Tag, field: Field, prec=INF) -> "LS":
        return cls.const(tag, field, 1, prec)

    @classmethod
    def x(cls, tag: Tag, field: Field, n: int = 1, prec=INF) -> "LS":
        """The uniformizer to the n-th power."""
        return cls(tag, field, n, (1,), prec)

    # -- basic structure -------------------------------------------------------

    def is_zero(self) -> bool:
        """Zero to the stated precision (not necessarily exact zero)."""
        return not self.coeffs

    def val(self):
        """Valuation in stored-exponent units; None when zero to precision."""
        return self.off if self.coeffs else None

    def val_or_prec(self):
        return self.off if self.coeffs else self.prec

    def valuation(self):
        """Normalized valuation (Fraction for ramified tags), None if zero."""
        v = self.val()
        if v is None:
            return None
        r = self.tag.ram
        return Fraction(v, r) if r > 1 else v

    def coeff(self, n: int) -> int:
        if self.prec is not INF and n >= self.prec:
            raise PrecisionError(f"coefficient at {n} beyond precision {self.prec}")
        i = n - self.off
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def residue(self) -> int:
        """Coefficient at exponent 0 (the sgn of a v >= 0 element)."""
        return self.coeff(0)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LS) and self.tag == other.tag
                and self.field is other.field and self.off == other.off
                and self.coeffs == other.coeffs and self.prec == other.prec)

    def __hash__(self):
        return hash((self.off, self.coeffs, self.prec))

    def __repr__(self):
        x = self.tag.uniformizer_name()
        if not self.coeffs:
            return f"O({x}^{self.prec})"
        parts = [f"{c}·{x}^{self.off + i}" for i, c in enumerate(self.coeffs) if c]
        tail = "" if self.prec is INF else f" + O({x}^{self.prec})"
        return " + ".join(parts) + tail

    # -- precision bookkeeping -------------------------------------------------

    def truncate(self, prec) -> "LS":
        if prec >= self.prec:
            return self
        return LS(self.tag, self.field, self.off, self.coeffs, prec)

    def _check(self, other: "LS"):
        if self.tag != other.tag:
            raise TagMismatch(f"{self.tag} vs {other.tag}")
        if self.field is not other.field:
            raise TagMismatch("coefficient fields differ; use change_field")

    def change_field(self, big: Field) -> "LS":
        if big is self.field:
            return self
        emb = embed_map(self.field, big)
        return LS(self.tag, big, self.off, [emb[c] for c in self.coeffs], self.prec)

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other: "LS") -> "LS":
        self._check(other)
        prec = _min_prec(self.prec, other.prec)
        if not self.coeffs:
            return other.truncate(prec)
        if not other.coeffs:
            return self.truncate(prec)
        F = self.field
        off = min(self.off, other.off)
        hi = max(self.off + len(self.coeffs), other.off + len(other.coeffs))
        out = [0] * (hi - off)
        for i, c in enumerate(self.coeffs):
            out[self.off - off + i] = c
        for i, c in enumerate(other.coeffs):
            j = other.off - off + i
            out[j] = F.add(out[j], c)
        return LS(self.tag, F, off, out, prec)

    def __neg__(self) -> "LS":
        F = self.field
        return LS(self.tag, F, self.off, [F.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other: "LS") -> "LS":
        return self + (-other)

    def __mul__(self, other: "LS") -> "LS":
        self._check(other)
        prec = _min_prec(self.val_or_prec() + other.prec,
                         other.val_or_prec() + self.prec)
        if not self.coeffs or not other.coeffs:
            return LS.zero(self.tag, self.field, prec)
        F = self.field
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return LS(self.tag, F, self.off + other.off, out, prec)

    def scale(self, c: int) -> "LS":
        F = self.field
        if c == 0:
            return LS.zero(self.tag, F, self.prec)
        return LS(self.tag, F, self.off, [F.mul(c, x) for x in self.coeffs], self.prec)

    def shift(self, n: int) -> "LS":
        """Multiply by the uniformizer^n."""
        prec = self.prec if self.prec is INF else self.prec + n
        return LS(self.tag, self.field, self.off + n, self.coeffs, prec)

    def inverse(self, prec=None) -> "LS":
        """Invert a unit-to-precision series by long division.

        The result carries the same relative precision as the input; an
        explicit prec is required to invert exact elements.
        """
        if not self.coeffs:
            raise PrecisionError("cannot invert a series that is 0 to precision")
        if self.prec is INF:
            if prec is None:
                raise PrecisionError("inverting an exact element needs a target precision")
            rel = prec + self.off  # relative precision so result has prec `prec - off`...
            return self.truncate(self.off + max(1, int(rel))).inverse()
        F = self.field
        v = self.off
        rel = int(self.prec) - v
        a = list(self.coeffs) + [0] * (rel - len(self.coeffs))
        inv0 = F.inv(a[0])
        out = [0] * rel
        out[0] = inv0
        for n in range(1, rel):
            acc = 0
            for i in range(1, min(n, len(a) - 1) + 1):
                if a[i] and out[n - i]:
                    acc = F.add(acc, F.mul(a[i], out[n - i]))
            out[n] = F.neg(F.mul(inv0, acc))
        return LS(self.tag, F, -v, out, -v + rel)

    def __truediv__(self, other: "LS") -> "LS":
        if other.prec is INF and self.prec is not INF:
            other = other.truncate(other.val_or_prec() + int(self.prec - self.val_or_prec()) + 1)
        return self * other.inverse()

    def __pow__(self, n: int) -> "LS":
        if n < 0:
            return self.inverse() ** (-n)
        out = LS.one(self.tag, self.field, INF if self.prec is INF else None)
        out = LS.one(self.tag, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def tau(self, k: int = 1) -> "LS":
        """q-power Frobenius: coefficients to the q^k, exponents times q^k."""
        q = self.tag.q
        qk = q ** k
        F = self.field
        if not self.coeffs:
            return LS.zero(self.tag, F, self.prec if self.prec is INF else self.prec * qk)
        out = [0] * ((len(self.coeffs) - 1) * qk + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * qk] = F.frob(c, qk)
        prec = INF if self.prec is INF else self.prec * qk
        return LS(self.tag, F, self.off * qk, out, prec)

    # -- comparisons ---------------------------------------------------------------

    def eq_to_prec(self, other: "LS") -> tuple[bool, object]:
        """(equal up to joint precision, certified precision)."""
        diff = self - other
        return diff.is_zero(), diff.prec


def poly_to_ls_inf(a: Poly, tag: Tag, field: Field | None = None) -> LS:
    """a(theta) as an exact series in 1/theta: theta^i becomes x^-i."""
    field = field or a.field
    emb = embed_map(a.field, field)
    if a.is_zero():
        return LS.zero(tag, field)
    cs = [emb[c] for c in reversed(a.coeffs)]
    return LS(tag, field, -a.deg, cs, INF)


def poly_to_ls_prime(a: Poly, tag: Tag, field: Field, zeta: int) -> LS:
    """a(theta) expanded exactly at theta = zeta + u (Taylor shift)."""
    emb = embed_map(a.field, field)
    cs = [emb[c] for c in a.coeffs]
    n = len(cs)
    out = []
    # repeated synthetic division by (theta - zeta)
    for _ in range(n):
        rem = 0
        for i in range(len(cs) - 1, -1, -1):
            rem = field.add(field.mul(rem, zeta), cs[i]) if i == len(cs) - 1 else rem
        # standard Horner-style Taylor shift
        break
    # simpler: classical in-place Taylor expansion
    work = list(cs)
    for j in range(n):
        carry = 0
        for i in range(len(work) - 1, j - 1, -1):
            carry = field.add(field.mul(carry, zeta), work[i]) if False else carry
        # fall through to explicit loop below
        break
    # explicit O(n^2) Taylor shift: repeatedly divide by (X - zeta)
    out = []
    work = list(cs)
    while work:
        rem = 0
        for i in range(len(work) - 1, -1, -1):
            rem = field.add(field.mul(rem, zeta), work[i])
            work[i] = rem if i else work[i]
        # after the pass: remainder = value at zeta; quotient coeffs shift down
        quo = []
        rem = 0
        for i in range(len(work) - 1, -1, -1):
            quo.append(rem)
            rem = field.add(field.mul(rem, zeta), work[i])
        quo.reverse()
        out.append(rem)
        work = quo[1:] if quo and quo[0] == 0 and False else [q for q in quo[1:]]
        work = quo[1:]
        if quo:
            work = quo[1:]
    return LS(tag, field, 0, out, INF)


def poly_to_ls(a: Poly, tag: Tag, field: Field, zeta: int | None = None) -> LS:
    """a(theta) as an exact LaurentSeries in the tagged completion."""
    if tag.kind == "inf":
        return poly_to_ls_inf(a, tag, field)
    if tag.kind == "prime":
        assert zeta is not None
        return poly_to_ls_prime(a, tag, field, zeta)
    raise ValueError("expand into the unramified layer first, then embed_to_ramified")


def embed_to_ramified(x: LS, rtag: Tag, rfield: Field | None = None) -> LS:
    """View an unramified series (in u) inside F((gamma)), u = -gamma^(q^d-1)."""
    if x.tag.kind != "prime":
        raise TagMismatch("only prime-tag series embed into the ramified layer")
    ram = rtag.ram
    F = rfield or x.field
    emb = embed_map(x.field, F)
    if not x.coeffs:
        return LS.zero(rtag, F, x.prec if x.prec is INF else x.prec * ram)
    out = [0] * ((len(x.coeffs) - 1) * ram + 1)
    for i, c in enumerate(x.coeffs):
        if c:
            n = x.off + i
            s = F.neg(emb[c]) if (n % 2 == 1 and F.p != 2) else emb[c]
            out[i * ram] = s
    prec = INF if x.prec is INF else x.prec * ram
    return LS(rtag, F, x.off * ram, out, prec)

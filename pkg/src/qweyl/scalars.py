"""Exact scalar tower: rationals, Laurent polynomials in t, cyclotomic fields.

Every value here is immutable and arithmetic never mutates its operands, so
scalars can be shared freely across threads.  All exact domains have decidable
equality, which the normal-form layers above rely on; floating point enters
only through explicit embeddings used for limit detection.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

try:
    import gmpy2 as _gmpy2
except ImportError:  # pragma: no cover - declared dependency, but stay usable
    _gmpy2 = None

__all__ = [
    "Rational",
    "Cyclo",
    "LaurentPoly",
    "Jet",
    "ExactDivisionError",
    "cyclotomic_polynomial",
    "euler_phi",
    "qint",
    "qfact",
    "specialize",
    "embed",
    "exact_div",
]

Rational = Fraction
RationalLike = Union[int, Fraction]


class ExactDivisionError(ArithmeticError):
    """Raised when a polynomial division that must be exact leaves a remainder."""


# ---------------------------------------------------------------------------
# integer polynomial convolution
# ---------------------------------------------------------------------------

# Below this operand size the plain double loop beats the packing overhead.
_PACK_MIN_LEN = 10


def _conv_school(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


_BIAS_CACHE: Dict[Tuple[int, int], object] = {}


def _pack_signed(v: Sequence[int], bits: int):
    if min(v) >= 0:
        return _gmpy2.pack(list(v), bits)
    return _gmpy2.pack([c if c > 0 else 0 for c in v], bits) - _gmpy2.pack(
        [-c if c < 0 else 0 for c in v], bits
    )


def _conv_packed(a: Sequence[int], b: Sequence[int]) -> List[int]:
    # Kronecker substitution: evaluate both polynomials at 2**bits and do a
    # single big-integer multiply.  bits leaves one sign bit of headroom so
    # the biased unpack below recovers signed coefficients without carries.
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    if not ma or not mb:
        return [0] * (len(a) + len(b) - 1)
    bits = (ma * mb * min(len(a), len(b))).bit_length() + 2
    ka = _pack_signed(a, bits)
    kb = _pack_signed(b, bits)
    length = len(a) + len(b) - 1
    half = 1 << (bits - 1)
    key = (bits, length)
    bias = _BIAS_CACHE.get(key)
    if bias is None:
        bias = _BIAS_CACHE[key] = _gmpy2.pack([half] * length, bits)
    limbs = _gmpy2.unpack(ka * kb + bias, bits)
    out = [int(x) - half for x in limbs]
    if len(out) < length:
        out.extend([0] * (length - len(out)))
    return out[:length]


def _conv(a: Sequence[int], b: Sequence[int]) -> List[int]:
    if not a or not b:
        return []
    if _gmpy2 is not None and min(len(a), len(b)) >= _PACK_MIN_LEN:
        return _conv_packed(a, b)
    return _conv_school(a, b)


# ---------------------------------------------------------------------------
# cyclotomic polynomials and per-level reduction tables
# ---------------------------------------------------------------------------


def _poly_div_exact_int(num: Sequence[int], den: Sequence[int]) -> List[int]:
    """Quotient of integer polynomials; den must be monic and divide num."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            out[k - dd] = c
            for j, dj in enumerate(den):
                num[k - dd + j] -= c * dj
    if any(num):
        raise ExactDivisionError("non-exact integer polynomial division")
    return out


_CYCLO_CACHE: Dict[int, Tuple[int, ...]] = {}


def cyclotomic_polynomial(level: int) -> Tuple[int, ...]:
    """Integer coefficients (ascending) of the level-th cyclotomic polynomial."""
    if level < 1:
        raise ValueError("level must be positive")
    got = _CYCLO_CACHE.get(level)
    if got is not None:
        return got
    if level == 1:
        poly: Tuple[int, ...] = (-1, 1)
    else:
        num = [-1] + [0] * (level - 1) + [1]  # t^level - 1
        quot = num
        for d in range(1, level):
            if level % d == 0:
                quot = _poly_div_exact_int(quot, cyclotomic_polynomial(d))
        poly = tuple(quot)
    _CYCLO_CACHE[level] = poly
    return poly


def euler_phi(level: int) -> int:
    return len(cyclotomic_polynomial(level)) - 1


class _LevelData:
    __slots__ = ("level", "phi", "degree", "rows", "zeta_c")

    def __init__(self, level: int):
        self.level = level
        self.phi = cyclotomic_polynomial(level)
        d = len(self.phi) - 1
        self.degree = d
        # rows[j] = coefficient vector of z^j reduced mod Phi, for d <= j < level
        rows: Dict[int, Tuple[int, ...]] = {}
        cur = [-c for c in self.phi[:d]]
        rows[d] = tuple(cur)
        for j in range(d + 1, level):
            top = cur[d - 1]
            cur = [(cur[k - 1] if k >= 1 else 0) + top * rows[d][k] for k in range(d)]
            rows[j] = tuple(cur)
        self.rows = rows
        self.zeta_c = cmath.exp(2j * math.pi / level)


_LEVELS: Dict[int, _LevelData] = {}


def _leveldata(level: int) -> _LevelData:
    got = _LEVELS.get(level)
    if got is None:
        got = _LEVELS[level] = _LevelData(level)
    return got


def _reduce_vec(vec: List[int], data: _LevelData) -> List[int]:
    """Reduce an integer coefficient vector mod Phi_level, in place."""
    level, d = data.level, data.degree
    if len(vec) > level:
        # z^level = 1 holds mod every cyclotomic polynomial of that level
        for idx in range(level, len(vec)):
            vec[idx - level] += vec[idx]
        del vec[level:]
    for idx in range(len(vec) - 1, d - 1, -1):
        c = vec[idx]
        if c:
            row = data.rows[idx]
            for k in range(d):
                vec[k] += c * row[k]
    del vec[d:]
    if len(vec) < d:
        vec.extend([0] * (d - len(vec)))
    return vec


# ---------------------------------------------------------------------------
# cyclotomic field elements
# ---------------------------------------------------------------------------


class Cyclo:
    """Element of the cyclotomic field Q(zeta_level).

    The residue is stored reduced mod the level-th cyclotomic polynomial as an
    integer vector over a positive common denominator with content 1, so
    equality is a plain tuple comparison.  The distinguished embedding sends
    the generator to exp(2*pi*i/level).
    """

    __slots__ = ("level", "num", "den")

    def __init__(self, level: int, coeffs: Iterable[RationalLike], den: int = 1):
        data = _leveldata(level)
        fracs = [Fraction(c) for c in coeffs]
        common = den
        for f in fracs:
            common = common * f.denominator // math.gcd(common, f.denominator)
        vec = [int(f * common) for f in fracs]
        if len(vec) > data.degree:
            _reduce_vec(vec, data)
        elif len(vec) < data.degree:
            vec.extend([0] * (data.degree - len(vec)))
        obj = Cyclo._normalized(level, vec, common)
        object.__setattr__(self, "level", obj.level)
        object.__setattr__(self, "num", obj.num)
        object.__setattr__(self, "den", obj.den)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclo values are immutable")

    @staticmethod
    def _raw(level: int, num: Tuple[int, ...], den: int) -> "Cyclo":
        obj = object.__new__(Cyclo)
        object.__setattr__(obj, "level", level)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    @staticmethod
    def _normalized(level: int, num: List[int], den: int) -> "Cyclo":
        if den < 0:
            den = -den
            num = [-c for c in num]
        if den > 1:  # den == 1 forces content gcd 1, nothing to cancel
            g = math.gcd(den, *num)
            if g > 1:
                den //= g
                num = [c // g for c in num]
            if not any(num):
                den = 1
        return Cyclo._raw(level, tuple(num), den)

    # construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, level: int) -> "Cyclo":
        return cls._raw(level, (0,) * euler_phi(level), 1)

    @classmethod
    def one(cls, level: int) -> "Cyclo":
        return cls.from_rational(level, 1)

    @classmethod
    def from_rational(cls, level: int, value: RationalLike) -> "Cyclo":
        f = Fraction(value)
        d = euler_phi(level)
        return cls._raw(level, (f.numerator,) + (0,) * (d - 1), f.denominator)

    @classmethod
    def zeta(cls, level: int, power: int = 1) -> "Cyclo":
        data = _leveldata(level)
        vec = [0] * max(data.degree, (power % level) + 1)
        vec[power % level] = 1
        return cls._normalized(level, _reduce_vec(vec, data), 1)

    # queries ---------------------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.num)

    def as_rational(self) -> Optional[Fraction]:
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def coefficients(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    # arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> Optional["Cyclo"]:
        if isinstance(other, Cyclo):
            if other.level == self.level:
                return other
            r = other.as_rational()
            if r is not None:
                return Cyclo.from_rational(self.level, r)
            if self.as_rational() is not None:
                return None  # handled by reflected op on the other side
            raise ValueError(
                f"cyclotomic level mismatch: {self.level} vs {other.level}"
            )
        if isinstance(other, (int, Fraction)):
            return Cyclo.from_rational(self.level, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = [a * o.den + b * self.den for a, b in zip(self.num, o.num)]
        return Cyclo._normalized(self.level, num, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = [a * o.den - b * self.den for a, b in zip(self.num, o.num)]
        return Cyclo._normalized(self.level, num, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Cyclo._raw(self.level, tuple(-c for c in self.num), self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        vec = _conv(self.num, o.num)
        _reduce_vec(vec, _leveldata(self.level))
        return Cyclo._normalized(self.level, vec, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> "Cyclo":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclo.one(self.level)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "Cyclo":
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        # extended Euclid over Q[z] against the (irreducible) minimal polynomial
        phi = [Fraction(c) for c in _leveldata(self.level).phi]
        a = [Fraction(c, self.den) for c in self.num]
        r0, r1 = phi, _trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            if len(r1) == 1:
                break
            q, r = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _trim(_poly_sub_frac(s0, _poly_mul_frac(q, s1)))
        if len(r1) != 1 or r1[0] == 0:
            raise ZeroDivisionError("element not invertible (unexpected)")
        inv = [c / r1[0] for c in s1]
        return Cyclo(self.level, inv)

    # comparisons / misc ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclo):
            if other.level == self.level:
                return self.num == other.num and self.den == other.den
            a, b = self.as_rational(), other.as_rational()
            return a is not None and a == b
        if isinstance(other, (int, Fraction)):
            return self.as_rational() == Fraction(other)
        return NotImplemented

    def __hash__(self):
        r = self.as_rational()
        if r is not None:
            return hash(r)
        return hash((self.level, self.num, self.den))

    def embed(self) -> complex:
        # The value can be exponentially smaller than its integer
        # coordinates (binomial-sized coefficients cancelling to a tiny
        # number), so escalate the working precision with the coefficient
        # size; plain double Horner would return cancellation noise.
        maxc = max(abs(c) for c in self.num) if self.num else 0
        if _gmpy2 is not None and maxc.bit_length() > 16:
            prec = maxc.bit_length() + 128
            with _gmpy2.context(precision=prec):
                z = _gmpy2.exp(_gmpy2.mpc(0, 2 * _gmpy2.const_pi() / self.level))
                acc = _gmpy2.mpc(0, 0)
                for c in reversed(self.num):
                    acc = acc * z + c
                return complex(acc / self.den)
        z = _leveldata(self.level).zeta_c
        acc = 0j
        for c in reversed(self.num):
            acc = acc * z + c
        return acc / self.den

    def __repr__(self):
        return f"Cyclo({self.level}, {list(self.num)!r}, den={self.den})"

    def __str__(self):
        terms = []
        for j, c in enumerate(self.num):
            if not c:
                continue
            coef = Fraction(c, self.den)
            if j == 0:
                terms.append(str(coef))
            else:
                zj = "q" if j == 1 else f"q^{j}"
                terms.append(zj if coef == 1 else f"{coef}*{zj}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _trim(p: List[Fraction]) -> List[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul_frac(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_sub_frac(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return out


def _poly_divmod_frac(a: List[Fraction], b: List[Fraction]):
    r = list(a)
    db = len(b) - 1
    q = [Fraction(0)] * max(1, len(a) - db)
    inv_lead = 1 / b[-1]
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv_lead
        if c:
            q[k - db] = c
            for j, bj in enumerate(b):
                r[k - db + j] -= c * bj
    return q, r[:db] if db else [Fraction(0)]


# ---------------------------------------------------------------------------
# Laurent polynomials in t
# ---------------------------------------------------------------------------


def _scalar_is_zero(c) -> bool:
    return not c


class LaurentPoly:
    """Sparse Laurent polynomial in the single deformation variable t.

    Coefficients are rationals or cyclotomic elements; exponents may be
    negative.  Zero coefficients are never stored.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[Mapping[int, object]] = None):
        d = {}
        if coeffs:
            for e, c in coeffs.items():
                if isinstance(c, int):
                    c = Fraction(c)
                if not _scalar_is_zero(c):
                    d[int(e)] = c
        object.__setattr__(self, "coeffs", d)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly values are immutable")

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def t_power(cls, e: int, c=1) -> "LaurentPoly":
        return cls({e: c})

    # queries ----------------------------------------------------------------

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs or set(self.coeffs) == {0}

    def constant_value(self):
        return self.coeffs.get(0, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def min_exponent(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def max_exponent(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    # arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            cur = d.get(e)
            s = c if cur is None else cur + c
            if _scalar_is_zero(s):
                d.pop(e, None)
            else:
                d[e] = s
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "coeffs", d)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "coeffs", {e: -c for e, c in self.coeffs.items()})
        return out

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            d: Dict[int, object] = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    e = e1 + e2
                    p = c1 * c2
                    cur = d.get(e)
                    s = p if cur is None else cur + p
                    if _scalar_is_zero(s):
                        d.pop(e, None)
                    else:
                        d[e] = s
            out = LaurentPoly.__new__(LaurentPoly)
            object.__setattr__(out, "coeffs", d)
            return out
        if isinstance(other, (int, Fraction, Cyclo)):
            if _scalar_is_zero(other):
                return LaurentPoly.zero()
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self.coeffs.items()
            cr = Fraction(c) if isinstance(c, int) else c
            return LaurentPoly({e * exponent: cr ** exponent})
        result = LaurentPoly.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, Cyclo)):
            if _scalar_is_zero(other):
                return not self.coeffs
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def evaluate(self, value):
        """Exact evaluation at any invertible scalar."""
        acc = None
        inv = None
        for e, c in self.coeffs.items():
            if e >= 0:
                term = c * _scalar_pow(value, e)
            else:
                if inv is None:
                    inv = _scalar_invert(value)
                term = c * _scalar_pow(inv, -e)
            acc = term if acc is None else acc + term
        return acc if acc is not None else Fraction(0)

    def __repr__(self):
        if not self.coeffs:
            return "LaurentPoly(0)"
        bits = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            te = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if te:
                bits.append(f"({c})*{te}")
            else:
                bits.append(f"({c})")
        return "LaurentPoly(" + " + ".join(bits) + ")"


def _as_laurent(x) -> Optional[LaurentPoly]:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction, Cyclo)):
        return LaurentPoly({0: x})
    return None


def _scalar_pow(v, e: int):
    if isinstance(v, (Fraction, Cyclo, int, float, complex)):
        return v ** e
    raise TypeError(f"cannot exponentiate {type(v).__name__}")


def _scalar_invert(v):
    if isinstance(v, Cyclo):
        return v.inverse()
    if isinstance(v, (int, Fraction)):
        return Fraction(1) / Fraction(v)
    if isinstance(v, (float, complex)):
        return 1 / v
    raise TypeError(f"cannot invert {type(v).__name__}")


# ---------------------------------------------------------------------------
# first-order expansions around a root of unity
# ---------------------------------------------------------------------------


class Jet:
    """Truncated expansion  val + dt*(t - root)  of a scalar around a fixed
    root of unity; products drop the (t - root)^2 term.

    This is the coefficient domain used for divided commutators: it carries
    exactly the value at the root and the first divided difference.
    """

    __slots__ = ("val", "dt")

    def __init__(self, val: Cyclo, dt: Cyclo):
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "dt", dt)

    def __setattr__(self, name, value):
        raise AttributeError("Jet values are immutable")

    @property
    def level(self) -> int:
        return self.val.level

    def _coerce(self, other) -> Optional["Jet"]:
        if isinstance(other, Jet):
            return other
        if isinstance(other, (int, Fraction)):
            lv = self.level
            return Jet(Cyclo.from_rational(lv, other), Cyclo.zero(lv))
        if isinstance(other, Cyclo):
            return Jet(other, Cyclo.zero(other.level))
        return None

    def __bool__(self):
        return bool(self.val) or bool(self.dt)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.val + o.val, self.dt + o.dt)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.val, -self.dt)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.val - o.val, self.dt - o.dt)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.val * o.val, self.val * o.dt + self.dt * o.val)

    __rmul__ = __mul__

    def inverse(self) -> "Jet":
        vi = self.val.inverse()
        return Jet(vi, -(vi * vi * self.dt))

    def __pow__(self, exponent: int) -> "Jet":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        lv = self.level
        result = Jet(Cyclo.one(lv), Cyclo.zero(lv))
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.val == o.val and self.dt == o.dt

    def __hash__(self):
        return hash((self.val, self.dt))

    def __repr__(self):
        return f"Jet({self.val!s}, dt={self.dt!s})"


# ---------------------------------------------------------------------------
# quantum integers and the module-level operations
# ---------------------------------------------------------------------------


def qint(m: int) -> LaurentPoly:
    """The quantum integer 1 + t + ... + t^(m-1); zero for m = 0."""
    if m < 0:
        raise ValueError("quantum integers are defined for m >= 0")
    return LaurentPoly({j: 1 for j in range(m)})


def qfact(m: int) -> LaurentPoly:
    """Product of the quantum integers 1..m; one for m = 0."""
    if m < 0:
        raise ValueError("quantum factorials are defined for m >= 0")
    out = LaurentPoly.one()
    for k in range(2, m + 1):
        out = out * qint(k)
    return out if m >= 1 else LaurentPoly.one()


def specialize(p: LaurentPoly, level: int, qpow: int = 1) -> Cyclo:
    """Evaluate a Laurent polynomial at the chosen primitive root of unity.

    Rational coefficients land in Q(zeta_level); cyclotomic coefficients must
    already live there.  This is a ring homomorphism.
    """
    if level < 1:
        raise ValueError("level must be positive")
    acc = Cyclo.zero(level)
    for e, c in p.coeffs.items():
        z = Cyclo.zeta(level, (e * qpow) % level)
        acc = acc + c * z
    return acc


def embed(value) -> complex:
    """Distinguished complex embedding (generator of level l -> exp(2*pi*i/l))."""
    if isinstance(value, Cyclo):
        return value.embed()
    if isinstance(value, (int, Fraction)):
        return complex(Fraction(value))
    if isinstance(value, (float, complex)):
        return complex(value)
    raise TypeError(f"cannot embed {type(value).__name__}")


def exact_div(p: LaurentPoly, root) -> LaurentPoly:
    """Exact quotient p / (t - root); raises unless p vanishes at root.

    root must be an invertible scalar (a root of unity in practice), so the
    Laurent case reduces to ordinary synthetic division after factoring out
    the lowest power of t.
    """
    if not p:
        return LaurentPoly.zero()
    lo = p.min_exponent()
    hi = p.max_exponent()
    dense = [p.coeffs.get(e, Fraction(0)) for e in range(lo, hi + 1)]
    # synthetic division of sum dense[k] t^k by (t - root)
    quot = [None] * (len(dense) - 1)
    carry = dense[-1]
    for k in range(len(dense) - 2, -1, -1):
        quot[k] = carry
        carry = dense[k] + root * carry
    if not _scalar_is_zero(carry):
        raise ExactDivisionError("polynomial does not vanish at the given root")
    return LaurentPoly({lo + k: c for k, c in enumerate(quot)})

"""Exact Laurent polynomials in x = q^(1/2), reduced ratios, and the
symmetrization maps onto polynomials in t = [1]^2 and y = [1/2]^2.

Exponents are stored as integers counting units of 1/2 (so the q-power k
lives at exponent 2k).  Coefficients are Fractions throughout; no floating
point ever enters.  Pole extraction works by exact polynomial remainder
arithmetic modulo t_k, never by evaluating at roots of unity.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from gvexact.partitions import Partition


class NotSymmetricInT(ValueError):
    """Raised when a ratio has no image in Q[t] (or Q[y] in half mode)."""


class NoSuchDecomposition(ValueError):
    """Raised when pole extraction modulo t_k fails to produce the stated shape."""


# ---------------------------------------------------------------------------
# Laurent polynomials in x = q^(1/2)
# ---------------------------------------------------------------------------


class QLaurent:
    """Laurent polynomial in x = q^(1/2) with Fraction coefficients.

    Immutable by convention; `coeffs` maps exponent (int, units of 1/2)
    to a nonzero Fraction.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, Fraction] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[e] = Fraction(v)
        self.coeffs = c

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "QLaurent":
        return QLaurent()

    @staticmethod
    def one() -> "QLaurent":
        return QLaurent({0: Fraction(1)})

    @staticmethod
    def const(v) -> "QLaurent":
        return QLaurent({0: Fraction(v)})

    @staticmethod
    def monomial(e: int, v=1) -> "QLaurent":
        return QLaurent({e: Fraction(v)})

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == {0: Fraction(1)}

    def min_exp(self) -> int:
        return min(self.coeffs)

    def max_exp(self) -> int:
        return max(self.coeffs)

    def constant_value(self) -> Fraction | None:
        """The value if this is a constant (possibly 0), else None."""
        if not self.coeffs:
            return Fraction(0)
        if len(self.coeffs) == 1 and 0 in self.coeffs:
            return self.coeffs[0]
        return None

    def __eq__(self, other) -> bool:
        return isinstance(other, QLaurent) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "QLaurent") -> "QLaurent":
        c = dict(self.coeffs)
        for e, v in other.coeffs.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        out = QLaurent.__new__(QLaurent)
        out.coeffs = c
        return out

    def __neg__(self) -> "QLaurent":
        out = QLaurent.__new__(QLaurent)
        out.coeffs = {e: -v for e, v in self.coeffs.items()}
        return out

    def __sub__(self, other: "QLaurent") -> "QLaurent":
        return self + (-other)

    def __mul__(self, other: "QLaurent") -> "QLaurent":
        if not self.coeffs or not other.coeffs:
            return QLaurent.zero()
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        c: dict[int, Fraction] = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                s = c.get(e, 0) + v1 * v2
                if s:
                    c[e] = s
                else:
                    c.pop(e, None)
        out = QLaurent.__new__(QLaurent)
        out.coeffs = c
        return out

    def scaled(self, v) -> "QLaurent":
        v = Fraction(v)
        if not v:
            return QLaurent.zero()
        out = QLaurent.__new__(QLaurent)
        out.coeffs = {e: c * v for e, c in self.coeffs.items()}
        return out

    def shifted(self, k: int) -> "QLaurent":
        """Multiply by x^k."""
        out = QLaurent.__new__(QLaurent)
        out.coeffs = {e + k: c for e, c in self.coeffs.items()}
        return out

    def substitute_power(self, m: int) -> "QLaurent":
        """The ring map q -> q^m (every exponent multiplied by m)."""
        out = QLaurent.__new__(QLaurent)
        out.coeffs = {e * m: c for e, c in self.coeffs.items()}
        return out

    # -- predicates and evaluations ------------------------------------------

    def is_symmetric(self) -> bool:
        """Invariant under q -> 1/q, i.e. coeffs[e] == coeffs[-e]."""
        return all(self.coeffs.get(-e) == v for e, v in self.coeffs.items())

    def has_integer_powers(self) -> bool:
        return all(e % 2 == 0 for e in self.coeffs)

    def has_integer_coeffs(self) -> bool:
        return all(v.denominator == 1 for v in self.coeffs.values())

    def value_at_one(self) -> Fraction:
        """Evaluation at x = 1 (q = 1)."""
        return sum(self.coeffs.values(), Fraction(0))

    # -- polynomial helpers (treating self as a polynomial in x) -------------

    def divmod_poly(self, other: "QLaurent") -> tuple["QLaurent", "QLaurent"]:
        """Division with remainder after clearing x-valuations.

        Both operands are shifted so their lowest exponent is 0 (the shift
        difference lands in the quotient; Laurent units are invertible).
        """
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        sv = self.min_exp() if self.coeffs else 0
        ov = other.min_exp()
        num = dict(self.shifted(-sv).coeffs)
        den = other.shifted(-ov).coeffs
        dd = max(den)
        lead = den[dd]
        q: dict[int, Fraction] = {}
        while num:
            nd = max(num)
            if nd < dd:
                break
            f = num[nd] / lead
            q[nd - dd] = f
            for e, v in den.items():
                e2 = e + nd - dd
                s = num.get(e2, 0) - f * v
                if s:
                    num[e2] = s
                else:
                    num.pop(e2, None)
        quot = QLaurent(q).shifted(sv - ov)
        rem = QLaurent(num).shifted(sv)
        return quot, rem

    def divide_exact(self, other: "QLaurent") -> "QLaurent":
        q, r = self.divmod_poly(other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def primitive_int(self) -> tuple[Fraction, dict[int, int]]:
        """Write self = content * P with P primitive over Z, positive lead."""
        if not self.coeffs:
            return Fraction(0), {}
        den_lcm = math.lcm(*(v.denominator for v in self.coeffs.values()))
        ints = {e: int(v * den_lcm) for e, v in self.coeffs.items()}
        g = math.gcd(*(abs(c) for c in ints.values()))
        if ints[max(ints)] < 0:
            g = -g
        return Fraction(g, den_lcm), {e: c // g for e, c in ints.items()}

    def __repr__(self) -> str:
        return f"QLaurent({format_qlaurent(self)})"


def _int_poly_gcd(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    """Primitive gcd of two primitive integer polynomials (min exp 0)."""

    def primitive(p: dict[int, int]) -> dict[int, int]:
        if not p:
            return p
        g = math.gcd(*(abs(c) for c in p.values()))
        if p[max(p)] < 0:
            g = -g
        return {e: c // g for e, c in p.items()}

    def pseudo_rem(u: dict[int, int], v: dict[int, int]) -> dict[int, int]:
        # primitive pseudo-remainder sequence step
        du, dv = max(u), max(v)
        lead = v[dv]
        u = dict(u)
        while u and max(u) >= dv:
            duu = max(u)
            lu = u[duu]
            # u = lead*u - lu * x^(duu-dv) * v
            nu: dict[int, int] = {}
            for e, c in u.items():
                nu[e] = c * lead
            for e, c in v.items():
                e2 = e + duu - dv
                nu[e2] = nu.get(e2, 0) - lu * c
            u = {e: c for e, c in nu.items() if c}
        return u

    a = primitive(a)
    b = primitive(b)
    if not a:
        return b
    if not b:
        return a
    u, v = a, b
    if max(u) < max(v):
        u, v = v, u
    while v:
        r = primitive(pseudo_rem(u, v))
        u, v = v, r
    return primitive(u)


def qlaurent_gcd(a: QLaurent, b: QLaurent) -> QLaurent:
    """Primitive polynomial gcd in x of the shifted-to-zero operands."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    _, ai = a.shifted(-a.min_exp()).primitive_int()
    _, bi = b.shifted(-b.min_exp()).primitive_int()
    g = _int_poly_gcd(ai, bi)
    return QLaurent({e: Fraction(c) for e, c in g.items()})


# ---------------------------------------------------------------------------
# q-numbers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def qnum(k: int) -> QLaurent:
    """[k] = q^(k/2) - q^(-k/2)."""
    if k == 0:
        return QLaurent.zero()
    return QLaurent({k: Fraction(1), -k: Fraction(-1)})


def qnum_product(p: Partition) -> QLaurent:
    """[p] = prod over parts [p_i]; empty product is 1."""
    out = QLaurent.one()
    for a in p:
        out = out * qnum(a)
    return out


# ---------------------------------------------------------------------------
# Reduced ratios
# ---------------------------------------------------------------------------


class QRatio:
    """Reduced ratio of QLaurents.

    Invariants after construction: the denominator is a primitive integer
    polynomial in x with lowest exponent 0 and positive leading coefficient;
    num/den share no polynomial factor.  Monomial units stay in the numerator,
    so the numerator may be a genuine Laurent polynomial.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: QLaurent, den: QLaurent | None = None):
        if den is None:
            den = QLaurent.one()
        if den.is_zero():
            raise ZeroDivisionError("QRatio with zero denominator")
        if num.is_zero():
            self.num = QLaurent.zero()
            self.den = QLaurent.one()
            return
        dv = den.min_exp()
        num = num.shifted(-dv)
        den = den.shifted(-dv)
        if not den.is_one():
            g = qlaurent_gcd(num, den)
            if not g.is_one():
                num = num.divide_exact(g)
                den = den.divide_exact(g)
            cd, di = den.shifted(-den.min_exp()).primitive_int()
            shift = den.min_exp()
            num = num.shifted(-shift).scaled(1 / cd)
            den = QLaurent({e: Fraction(c) for e, c in di.items()})
        self.num = num
        self.den = den

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero() -> "QRatio":
        return QRatio(QLaurent.zero())

    @staticmethod
    def one() -> "QRatio":
        return QRatio(QLaurent.one())

    @staticmethod
    def const(v) -> "QRatio":
        return QRatio(QLaurent.const(v))

    @staticmethod
    def from_laurent(p: QLaurent) -> "QRatio":
        return QRatio(p)

    # -- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QRatio.const(other)
        return (
            isinstance(other, QRatio)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic -------------------------------------------------------------

    @staticmethod
    def _coerce(v) -> "QRatio":
        if isinstance(v, QRatio):
            return v
        if isinstance(v, QLaurent):
            return QRatio(v)
        return QRatio.const(v)

    def __add__(self, other) -> "QRatio":
        o = QRatio._coerce(other)
        if self.den == o.den:
            return QRatio(self.num + o.num, self.den)
        return QRatio(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "QRatio":
        out = QRatio.__new__(QRatio)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other) -> "QRatio":
        return self + (-QRatio._coerce(other))

    def __rsub__(self, other) -> "QRatio":
        return QRatio._coerce(other) + (-self)

    def __mul__(self, other) -> "QRatio":
        o = QRatio._coerce(other)
        return QRatio(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QRatio":
        o = QRatio._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("QRatio division by zero")
        return QRatio(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "QRatio":
        return QRatio._coerce(other) / self

    def __pow__(self, n: int) -> "QRatio":
        if n < 0:
            return QRatio.one() / self ** (-n)
        out = QRatio.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def substitute_power(self, m: int) -> "QRatio":
        """q -> q^m, a ring homomorphism; m >= 1."""
        if m < 1:
            raise ValueError("substitution power must be >= 1")
        return QRatio(self.num.substitute_power(m), self.den.substitute_power(m))

    def __repr__(self) -> str:
        return f"QRatio({format_qratio(self)})"


def field_arith(op: str, a: QRatio, b: QRatio | None = None) -> QRatio:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    raise ValueError(f"unknown field op {op!r}")


# ---------------------------------------------------------------------------
# Dense rational polynomials (used for both the t- and y-images)
# ---------------------------------------------------------------------------


class RPoly:
    """Dense univariate polynomial over Fractions, trailing zeros trimmed.

    Serves as both TPoly (variable t) and YPoly (variable y); the variable
    is bookkeeping at the call sites.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(v) -> "RPoly":
        return RPoly([Fraction(v)])

    @staticmethod
    def x() -> "RPoly":
        return RPoly([0, 1])

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RPoly.const(other)
        return isinstance(other, RPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "RPoly":
        if isinstance(other, (int, Fraction)):
            other = RPoly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "RPoly":
        return RPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "RPoly":
        if isinstance(other, (int, Fraction)):
            other = RPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "RPoly":
        return RPoly.const(other) - self

    def __mul__(self, other) -> "RPoly":
        if isinstance(other, (int, Fraction)):
            return RPoly([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "RPoly") -> tuple["RPoly", "RPoly"]:
        if other.is_zero():
            raise ZeroDivisionError
        num = list(self.coeffs)
        d = other.degree()
        lead = other.coeffs[-1]
        q = [Fraction(0)] * max(0, len(num) - d)
        while len(num) - 1 >= d and num:
            nd = len(num) - 1
            f = num[-1] / lead
            q[nd - d] = f
            for j, b in enumerate(other.coeffs):
                num[nd - d + j] -= f * b
            while num and not num[-1]:
                num.pop()
        return RPoly(q), RPoly(num)

    def mod(self, other: "RPoly") -> "RPoly":
        return self.divmod(other)[1]

    def divide_exact(self, other: "RPoly") -> "RPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("division not exact")
        return q

    def eval(self, v: Fraction) -> Fraction:
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * v + c
        return out

    def compose(self, other: "RPoly") -> "RPoly":
        out = RPoly()
        for c in reversed(self.coeffs):
            out = out * other + RPoly.const(c)
        return out

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def constant(self) -> Fraction:
        return self[0]

    def constant_only(self) -> Fraction | None:
        return self[0] if self.degree() <= 0 else None

    def __repr__(self) -> str:
        return f"RPoly({list(self.coeffs)})"


TPoly = RPoly
YPoly = RPoly


# ---------------------------------------------------------------------------
# t_k, symmetrization, pole extraction
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def t_k_in_t(k: int) -> RPoly:
    """t_k = [k]^2 as an integer polynomial in t:
    sum_{j=1..k} (k/j) C(j+k-1, 2j-1) t^j."""
    if k < 1:
        raise ValueError("k must be >= 1")
    coeffs = [Fraction(0)] * (k + 1)
    for j in range(1, k + 1):
        coeffs[j] = Fraction(k, j) * math.comb(j + k - 1, 2 * j - 1)
    p = RPoly(coeffs)
    assert p.is_integral()
    return p


_COSH_BASIS: list[RPoly] = [RPoly.const(2), RPoly([2, 1])]


def _cosh_basis(m: int) -> RPoly:
    """q^(m/2) + q^(-m/2) in y (equivalently q^m + q^-m in t).

    Chebyshev-style recurrence: P_0 = 2, P_1 = v + 2,
    P_{m+1} = (v + 2) P_m - P_{m-1}.
    """
    while len(_COSH_BASIS) <= m:
        _COSH_BASIS.append(RPoly([2, 1]) * _COSH_BASIS[-1] - _COSH_BASIS[-2])
    return _COSH_BASIS[m]


def _laurent_to_poly(p: QLaurent, step: int) -> RPoly:
    """Symmetric QLaurent with exponents in step*Z -> polynomial (t or y)."""
    if not p.is_symmetric():
        raise NotSymmetricInT("not invariant under q -> 1/q")
    if any(e % step for e in p.coeffs):
        raise NotSymmetricInT("exponent parity does not match the target ring")
    out = RPoly()
    for e, c in p.coeffs.items():
        if e < 0:
            continue
        if e == 0:
            out = out + RPoly.const(c)
        else:
            out = out + _cosh_basis(e // step) * c
    return out


def to_t_poly(f: QRatio) -> RPoly:
    """Unique image in Q[t] of a q->1/q symmetric Laurent polynomial with
    integer q-powers; raises NotSymmetricInT otherwise."""
    if not f.is_laurent():
        raise NotSymmetricInT("nontrivial denominator after reduction")
    return _laurent_to_poly(f.num, 2)


def to_y_poly(f: QRatio) -> RPoly:
    """Same as to_t_poly but onto Q[y], allowing half-integer q-powers."""
    if not f.is_laurent():
        raise NotSymmetricInT("nontrivial denominator after reduction")
    return _laurent_to_poly(f.num, 1)


def try_to_t_poly(f: QRatio) -> RPoly | None:
    try:
        return to_t_poly(f)
    except NotSymmetricInT:
        return None


def t_poly_to_y_poly(p: RPoly) -> RPoly:
    """Substitute t = y(y+4)."""
    return p.compose(RPoly([0, 4, 1]))


def t_k_qratio(k: int) -> QRatio:
    """t_k = [k]^2 as a QRatio."""
    return QRatio(qnum(k) * qnum(k))


def pole_extract(f: QRatio, k: int, mode: str = "plain") -> tuple[Fraction, RPoly]:
    """Decompose f against the simple pole at t_k = 0.

    plain: f = g/t_k + remainder(t)           -> (g, remainder as TPoly)
    half : f = (g/t_k)(1 + t_{k/2}/2) + rem   -> (g, remainder as YPoly),
           only for even k.
    Raises NoSuchDecomposition when f*t_k is not a (suitably symmetric)
    Laurent polynomial or the modular remainder has the wrong shape.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    prod = f * t_k_qratio(k)
    if mode == "plain":
        try:
            p = to_t_poly(prod)
        except NotSymmetricInT as exc:
            raise NoSuchDecomposition(str(exc)) from exc
        q, r = p.divmod(t_k_in_t(k))
        g = r.constant_only()
        if g is None:
            raise NoSuchDecomposition("modular remainder is not a constant")
        return g, q
    if mode == "half":
        if k % 2:
            raise ValueError("half mode needs even k")
        try:
            p = to_y_poly(prod)
        except NotSymmetricInT as exc:
            raise NoSuchDecomposition(str(exc)) from exc
        tk_y = t_poly_to_y_poly(t_k_in_t(k))
        half_y = RPoly.const(1) + t_poly_to_y_poly(t_k_in_t(k // 2)) * Fraction(1, 2)
        rp = p.mod(tk_y)
        rh = half_y.mod(tk_y)
        if rh.is_zero():
            raise NoSuchDecomposition("degenerate half-mode modulus")
        g = rp.coeffs[-1] / rh.coeffs[-1] if rp.coeffs else Fraction(0)
        if rh * g != rp:
            raise NoSuchDecomposition("modular remainder not proportional to 1 + t_{k/2}/2")
        rem = (p - half_y * g).divide_exact(tk_y)
        return g, rem
    raise ValueError(f"unknown pole_extract mode {mode!r}")


# ---------------------------------------------------------------------------
# Serialization (exact strings; used by the CLI JSON schema)
# ---------------------------------------------------------------------------


def format_fraction(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def format_qlaurent(p: QLaurent) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p.coeffs):
        c = format_fraction(p.coeffs[e])
        parts.append(f"{c}*x^{e}")
    return " + ".join(parts)


def format_qratio(f: QRatio) -> str:
    if f.is_laurent():
        return format_qlaurent(f.num)
    return f"({format_qlaurent(f.num)}) / ({format_qlaurent(f.den)})"


def format_rpoly(p: RPoly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if c:
            parts.append(f"{format_fraction(c)}*{var}^{i}")
    return " + ".join(parts)

"""Exact arithmetic in a real quadratic field K = Q(sqrt(D)): elements with
rational coordinates, conjugation, norms and traces, continued-fraction
fundamental units, integral ideals in Hermite normal form, and congruence
conditions on units."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .numerics import DEFAULT_CTX, PrecisionCtx


def _squarefree(n: int) -> bool:
    if n < 1:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


class QuadElem:
    """x + y*sqrt(D) with exact rational x, y."""

    __slots__ = ("D", "x", "y")

    def __init__(self, D: int, x=0, y=0):
        self.D = D
        self.x = Fraction(x)
        self.y = Fraction(y)

    # -- construction helpers -------------------------------------------
    @staticmethod
    def _coerce(D, other):
        if isinstance(other, QuadElem):
            if other.D != D:
                raise ValueError("mixed-field arithmetic rejected")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(D, other)
        return NotImplemented

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        o = self._coerce(self.D, other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElem(self.D, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.D, -self.x, -self.y)

    def __sub__(self, other):
        o = self._coerce(self.D, other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElem(self.D, self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(self.D, other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElem(
            self.D,
            self.x * o.x + self.D * self.y * o.y,
            self.x * o.y + self.y * o.x,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero element")
        return QuadElem(self.D, self.x / n, -self.y / n)

    def __truediv__(self, other):
        o = self._coerce(self.D, other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadElem(self.D, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- field structure ---------------------------------------------------
    def conjugate(self) -> "QuadElem":
        return QuadElem(self.D, self.x, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x - self.D * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_rational(self) -> bool:
        return self.y == 0

    def sign(self) -> int:
        """Exact sign of x + y*sqrt(D), by integer comparison of x^2 vs D y^2."""
        x, y = self.x, self.y
        if x == 0 and y == 0:
            return 0
        if x >= 0 and y >= 0:
            return 1
        if x <= 0 and y <= 0:
            return -1
        # mixed signs: compare |x| with |y| sqrt(D)
        lhs = x * x
        rhs = self.D * y * y
        if lhs == rhs:  # impossible for squarefree D > 1 and x, y != 0
            raise ArithmeticError("sqrt(D) cannot be rational")
        bigger_is_x = lhs > rhs
        return (1 if x > 0 else -1) if bigger_is_x else (1 if y > 0 else -1)

    def is_totally_positive(self) -> bool:
        return self.sign() > 0 and self.conjugate().sign() > 0

    def compare(self, other) -> int:
        o = self._coerce(self.D, other)
        return (self - o).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        if not isinstance(other, QuadElem):
            return NotImplemented
        return self.D == other.D and self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.D, self.x, self.y))

    def floor(self) -> int:
        """Exact floor via a float guess corrected with exact comparisons."""
        approx = float(self.x) + float(self.y) * math.sqrt(self.D)
        k = math.floor(approx)
        while self.compare(k) < 0:
            k -= 1
        while self.compare(k + 1) >= 0:
            k += 1
        return k

    def __abs__(self):
        return self if self.sign() >= 0 else -self

    def __repr__(self):
        return f"QuadElem({self.D}, {self.x}, {self.y})"

    # -- embeddings ---------------------------------------------------------
    def embed(self, which: str = "id", ctx: PrecisionCtx = DEFAULT_CTX):
        """Real embedding at working precision ('id' or 'conj')."""
        if which not in ("id", "conj"):
            raise ValueError("which must be 'id' or 'conj'")
        with ctx.workprec():
            root = mp.sqrt(mp.mpf(self.D))
            y = self.y if which == "id" else -self.y
            return +(
                mp.mpf(self.x.numerator) / self.x.denominator
                + (mp.mpf(y.numerator) / y.denominator) * root
            )


@dataclass(frozen=True)
class FieldCtx:
    """Real quadratic field Q(sqrt(D)) with its ring of integers Z[omega]."""

    D: int

    def __post_init__(self):
        if self.D <= 1 or not _squarefree(self.D):
            raise ValueError("D must be a squarefree integer > 1")

    @property
    def omega(self) -> QuadElem:
        if self.D % 4 == 1:
            return QuadElem(self.D, Fraction(1, 2), Fraction(1, 2))
        return QuadElem(self.D, 0, 1)

    @property
    def disc(self) -> int:
        return self.D if self.D % 4 == 1 else 4 * self.D

    @property
    def omega_trace(self) -> int:
        return 1 if self.D % 4 == 1 else 0

    @property
    def omega_norm(self) -> int:
        return (1 - self.D) // 4 if self.D % 4 == 1 else -self.D

    def elem(self, x=0, y=0) -> QuadElem:
        return QuadElem(self.D, x, y)

    def from_coords(self, u, v) -> QuadElem:
        """u + v*omega as a QuadElem."""
        return self.elem(u) + Fraction(v) * self.omega

    def coords(self, e: QuadElem) -> tuple[Fraction, Fraction]:
        """(u, v) with e = u + v*omega; exact."""
        if e.D != self.D:
            raise ValueError("element from a different field")
        w = self.omega
        v = e.y / w.y
        u = e.x - v * w.x
        return u, v

    def is_integral(self, e: QuadElem) -> bool:
        u, v = self.coords(e)
        return u.denominator == 1 and v.denominator == 1


# ---------------------------------------------------------------------------
# continued fractions of quadratic irrationals (exact integer state machine)
# ---------------------------------------------------------------------------


def _isqrt(n: int) -> int:
    return math.isqrt(n)


class CFState:
    """State (P + sqrt(Delta)) / Q of a continued-fraction expansion, with
    Delta = D * m^2 kept in the form allowing exact value comparison."""

    __slots__ = ("P", "Q", "Delta", "D", "m")

    def __init__(self, P: int, Q: int, D: int, m: int):
        # value = (P + m*sqrt(D)) / Q, m > 0
        self.P, self.Q, self.D, self.m = P, Q, D, m
        self.Delta = D * m * m

    def value(self) -> QuadElem:
        return QuadElem(self.D, Fraction(self.P, self.Q), Fraction(self.m, self.Q))

    def floor(self) -> int:
        # floor((P + m*sqrt(D)) / Q); the numerator lies in [P+s, P+s+1)
        # with s = floor(m*sqrt(D)), and is irrational (never the endpoint).
        s = _isqrt(self.Delta)
        if self.Q > 0:
            return (self.P + s) // self.Q
        return -((self.P + s) // (-self.Q)) - 1


def _cf_normalize(theta: QuadElem) -> CFState:
    """Express theta = (P + m sqrt(D)) / Q with Q | (Delta - P^2)."""
    if theta.y == 0:
        raise ValueError("rational input is degenerate for the CF machine")
    # common denominator
    den = math.lcm(theta.x.denominator, theta.y.denominator)
    P = int(theta.x * den)
    mden = int(theta.y * den)
    Q = den
    if mden < 0:
        P, mden, Q = -P, -mden, -Q
    D = theta.D
    Delta = D * mden * mden
    if (Delta - P * P) % Q != 0:
        # rescale by |Q| to force the divisibility invariant
        s = abs(Q)
        P *= s
        mden *= s
        Q *= s
    return CFState(P, Q, D, mden)


def cf_expand(theta: QuadElem, max_steps: int = 10000):
    """Exact continued fraction of a quadratic irrational.

    Returns (partial_quotients, values, (first_index, cycle_length)) where
    values[k] is the k-th complete quotient as a QuadElem (values[0] = theta);
    stops at the first exact repetition of a complete quotient."""
    st = _cf_normalize(theta)
    quotients: list[int] = []
    values: list[QuadElem] = []
    seen: dict = {}
    for k in range(max_steps):
        val = st.value()
        if val in seen:
            return quotients, values, (seen[val], k - seen[val])
        seen[val] = k
        values.append(val)
        a = val.floor()
        quotients.append(a)
        # step: theta_{k+1} = 1 / (theta_k - a)
        P1 = a * st.Q - st.P
        Q1 = (st.Delta - P1 * P1) // st.Q
        if Q1 == 0:
            raise ArithmeticError("CF state degenerated (rational value?)")
        st = CFState(P1, Q1, st.D, st.m)
    raise ArithmeticError("continued fraction did not cycle within max_steps")


@lru_cache(maxsize=None)
def fundamental_unit(D: int) -> QuadElem:
    """Fundamental unit eps0 > 1 of O_K, |N(eps0)| = 1, via the continued
    fraction of omega: the matrix recovering the first repeated complete
    quotient fixes it, and its bottom row yields the unit."""
    F = FieldCtx(D)
    omega = F.omega
    quotients, values, (start, period) = cf_expand(omega)
    # M_k maps the k-th complete quotient back to theta_0:
    # theta_0 = (p_{k-1} x + p_{k-2}) / (q_{k-1} x + q_{k-2}) at x = theta_k
    def mat_upto(k):
        a, b, c, d = 1, 0, 0, 1
        for q in quotients[:k]:
            a, b, c, d = a * q + b, a, c * q + d, c
        return a, b, c, d

    a1, b1, c1, d1 = mat_upto(start)
    a2, b2, c2, d2 = mat_upto(start + period)
    # g = M_{start}^{-1} * M_{start+period} fixes theta_{start}
    det1 = a1 * d1 - b1 * c1
    inv = (d1 * det1, -b1 * det1, -c1 * det1, a1 * det1)  # det1 = +-1
    g = (
        inv[0] * a2 + inv[1] * c2,
        inv[0] * b2 + inv[1] * d2,
        inv[2] * a2 + inv[3] * c2,
        inv[2] * b2 + inv[3] * d2,
    )
    theta = values[start]
    eps = QuadElem(D, g[2]) * theta + g[3]
    # normalize to the unit > 1
    if eps.norm() not in (1, -1):
        raise ArithmeticError("CF automorph did not give a unit")
    candidates = [eps, -eps, eps.inverse(), -eps.inverse()]
    eps = next(e for e in candidates if e.compare(1) > 0)
    if not F.is_integral(eps):
        raise ArithmeticError("unit not integral")
    return eps


def pell_fundamental_unit(D: int, bound: int = 4000) -> QuadElem | None:
    """Brute-force oracle: the smallest unit > 1 of O_K found by scanning
    omega-coordinates 1 <= v <= bound (ascending) and solving the norm
    equation for the rational coordinate.  The scan stops once no unit
    smaller than the best candidate can appear at larger v."""
    F = FieldCtx(D)
    t, n = F.omega_trace, F.omega_norm
    best: QuadElem | None = None
    for v in range(1, bound + 1):
        if best is not None:
            # any unit e > 1 has v-coordinate > (e - 1)/sqrt(D)
            if v * v * D > (1 + _float_embed(best)) ** 2:
                break
        for target in (1, -1):
            # N(u + v*omega) = u^2 + t v u + n v^2 = target
            disc = t * t * v * v - 4 * (n * v * v - target)
            if disc < 0:
                continue
            r = _isqrt(disc)
            if r * r != disc:
                continue
            for num in (-t * v + r, -t * v - r):
                if num % 2 == 0:
                    e = F.from_coords(num // 2, v)
                    if e.compare(1) > 0 and (best is None or e.compare(best) < 0):
                        best = e
    return best


# ---------------------------------------------------------------------------
# integral ideals in HNF
# ---------------------------------------------------------------------------


def _hnf_2col(rows: list[tuple[int, int]]):
    """HNF (a, b, c) of the Z-module spanned by integer coordinate rows
    (u, v) meaning u + v*omega: module = aZ + (b + c*omega)Z."""
    rows = [r for r in rows if r != (0, 0)]
    if not rows:
        raise ValueError("zero module")
    rows = [list(r) for r in rows]
    # eliminate the omega column down to a single row via extended gcd
    pivot = None
    for r in rows:
        if r[1] != 0:
            if pivot is None:
                pivot = r
            else:
                g, s, t = _xgcd(pivot[1], r[1])
                new_pivot = [s * pivot[0] + t * r[0], g]
                k = r[1] // g
                j = pivot[1] // g
                r[0] = r[0] * j - pivot[0] * k
                r[1] = 0
                pivot[0], pivot[1] = new_pivot
    a = 0
    for r in rows:
        if r[1] == 0:
            a = math.gcd(a, abs(r[0]))
    if pivot is None:
        raise ValueError("module has rank < 2 (not an ideal-like module)")
    if a == 0:
        raise ValueError("module has rank < 2 (not an ideal-like module)")
    b, c = pivot
    if c < 0:
        b, c = -b, -c
    b %= a
    return a, b, c


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class QuadIdeal:
    """Integral ideal of O_K stored as the HNF triple (a, b, c):
    the Z-module aZ + (b + c*omega)Z, with 0 <= b < a, c | a, c | b."""

    __slots__ = ("field", "a", "b", "c")

    def __init__(self, field: FieldCtx, a: int, b: int, c: int, check: bool = True):
        self.field = field
        self.a, self.b, self.c = a, b, c
        if check and not self._closed_under_omega():
            raise ValueError("module is not an O_K ideal (not omega-stable)")

    # -- construction -----------------------------------------------------
    @classmethod
    def from_generators(cls, field: FieldCtx, gens) -> "QuadIdeal":
        """Ideal generated (over O_K) by the given integral elements."""
        rows = []
        omega = field.omega
        for g in gens:
            if isinstance(g, (int, Fraction)):
                g = field.elem(g)
            for h in (g, g * omega):
                u, v = field.coords(h)
                if u.denominator != 1 or v.denominator != 1:
                    raise ValueError("generators must be integral")
                rows.append((int(u), int(v)))
        a, b, c = _hnf_2col(rows)
        return cls(field, a, b, c)

    @classmethod
    def principal(cls, field: FieldCtx, g) -> "QuadIdeal":
        return cls.from_generators(field, [g])

    @classmethod
    def unit_ideal(cls, field: FieldCtx) -> "QuadIdeal":
        return cls.from_generators(field, [1])

    # -- structure ----------------------------------------------------------
    def _closed_under_omega(self) -> bool:
        if self.a <= 0 or self.c <= 0 or not (0 <= self.b < self.a):
            return False
        if self.a % self.c or self.b % self.c:
            return False
        F = self.field
        return all(
            self.contains(g * F.omega) for g in self.module_generators()
        )

    def module_generators(self) -> list[QuadElem]:
        F = self.field
        return [F.elem(self.a), F.from_coords(self.b, self.c)]

    def contains(self, e: QuadElem) -> bool:
        """Exact membership of a field element in the ideal's Z-module."""
        if isinstance(e, (int, Fraction)):
            e = self.field.elem(e)
        u, v = self.field.coords(e)
        if u.denominator != 1 or v.denominator != 1:
            return False
        u, v = int(u), int(v)
        if v % self.c:
            return False
        k = v // self.c
        return (u - k * self.b) % self.a == 0

    def norm(self) -> int:
        return self.a * self.c

    def hnf(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __eq__(self, other):
        if not isinstance(other, QuadIdeal):
            return NotImplemented
        return self.field.D == other.field.D and self.hnf() == other.hnf()

    def __hash__(self):
        return hash((self.field.D, self.hnf()))

    def __repr__(self):
        return f"QuadIdeal(D={self.field.D}, a={self.a}, b={self.b}, c={self.c})"

    def is_unit_ideal(self) -> bool:
        return self.hnf() == (1, 0, 1)

    # -- arithmetic -----------------------------------------------------------
    def _same_field(self, other: "QuadIdeal"):
        if self.field.D != other.field.D:
            raise ValueError("mixed-field ideals rejected")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadElem)):
            gens = [g * other for g in self.module_generators()]
            rows = []
            for g in gens:
                u, v = self.field.coords(g)
                if u.denominator != 1 or v.denominator != 1:
                    raise ValueError("scaling must keep the ideal integral")
                rows.append((int(u), int(v)))
            a, b, c = _hnf_2col(rows)
            return QuadIdeal(self.field, a, b, c)
        self._same_field(other)
        rows = []
        for g in self.module_generators():
            for h in other.module_generators():
                u, v = self.field.coords(g * h)
                rows.append((int(u), int(v)))
        a, b, c = _hnf_2col(rows)
        return QuadIdeal(self.field, a, b, c)

    __rmul__ = __mul__

    def gcd(self, other: "QuadIdeal") -> "QuadIdeal":
        """Ideal sum (the gcd in the lattice of ideals)."""
        self._same_field(other)
        rows = []
        for g in self.module_generators() + other.module_generators():
            u, v = self.field.coords(g)
            rows.append((int(u), int(v)))
        a, b, c = _hnf_2col(rows)
        return QuadIdeal(self.field, a, b, c)

    def coprime(self, other: "QuadIdeal") -> bool:
        return self.gcd(other).is_unit_ideal()

    def conjugate(self) -> "QuadIdeal":
        gens = [g.conjugate() for g in self.module_generators()]
        rows = []
        F = self.field
        omega = F.omega
        for g in gens:
            for h in (g, g * omega):
                u, v = F.coords(h)
                rows.append((int(u), int(v)))
        a, b, c = _hnf_2col(rows)
        return QuadIdeal(F, a, b, c)

    def divide_by_integer(self, n: int) -> "QuadIdeal":
        """Exact quotient (1/n) * self; requires all HNF data divisible."""
        F = self.field
        gens = [g * Fraction(1, n) for g in self.module_generators()]
        rows = []
        for g in gens:
            u, v = F.coords(g)
            if u.denominator != 1 or v.denominator != 1:
                raise ValueError("ideal not divisible by %d" % n)
            rows.append((int(u), int(v)))
        a, b, c = _hnf_2col(rows)
        return QuadIdeal(F, a, b, c)

    def inverse_up_to_principal(self) -> tuple["QuadIdeal", int]:
        """Returns (A', n) with self * A' = (n): the conjugate ideal and the
        norm, since A * conj(A) = (N(A))."""
        return self.conjugate(), self.norm()

    def divide(self, other: "QuadIdeal") -> "QuadIdeal":
        """Exact ideal quotient self / other, assuming other | self."""
        prod = self * other.conjugate()
        return prod.divide_by_integer(other.norm())

    # -- principality -----------------------------------------------------------
    def principal_generator(self, eps_plus: QuadElem | None = None):
        """Searches for alpha with (alpha) = self; returns alpha or None.

        Any generator can be scaled by a unit into the box
        |alpha|, |alpha'| <= sqrt(N * eps_plus), which is scanned exactly."""
        F = self.field
        if eps_plus is None:
            e0 = fundamental_unit(F.D)
            eps_plus = e0 if e0.is_totally_positive() else e0 * e0
        n = self.norm()
        bound = math.sqrt(n * float(eps_plus.x + 0) + n * float(eps_plus.y) * math.sqrt(F.D)) * 1.000001
        g1, g2 = self.module_generators()
        g1r, g1c = _float_embed(g1), _float_embed_conj(g1)
        g2r, g2c = _float_embed(g2), _float_embed_conj(g2)
        det = g1r * g2c - g2r * g1c
        # coordinate bounds from inverting [[g1r, g2r], [g1c, g2c]]
        pmax = int((abs(g2c) + abs(g2r)) * bound / abs(det)) + 2
        qmax = int((abs(g1c) + abs(g1r)) * bound / abs(det)) + 2
        t, nn = F.omega_trace, F.omega_norm
        u1, v1 = (int(x) for x in F.coords(g1))
        u2, v2 = (int(x) for x in F.coords(g2))
        for p in range(-pmax, pmax + 1):
            for q in range(-qmax, qmax + 1):
                if p == 0 and q == 0:
                    continue
                u = p * u1 + q * u2
                v = p * v1 + q * v2
                norm = u * u + t * u * v + nn * v * v
                if norm == n or norm == -n:
                    alpha = F.from_coords(u, v)
                    if QuadIdeal.principal(F, alpha) == self:
                        return alpha
        return None


def _float_embed(e: QuadElem) -> float:
    return float(e.x) + float(e.y) * math.sqrt(e.D)


def _float_embed_conj(e: QuadElem) -> float:
    return float(e.x) - float(e.y) * math.sqrt(e.D)


# ---------------------------------------------------------------------------
# unit congruence data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnitData:
    """Units of O_K relative to a modulus f.

    eps0: fundamental unit > 1.
    eps_plus: least totally positive unit > 1 (eps0 or eps0^2).
    eps_f: generator g of {units == 1 mod f} with |g| minimal > 1 (the
        returned element may be negative; |eps_f| > 1).
    eps_f_plus: least totally positive unit > 1 that is == 1 mod f.
    kappa: index [E_f : <eps_f_plus>] counting orbit splitting, in {1, 2, 4}.
    sign_condition: True iff every unit == 1 mod f has positive conjugate
        (equivalently: -1 is not == 1 mod f and eps_f' > 0).
    minus_one_in_ef: True iff -1 == 1 mod f.
    """

    eps0: QuadElem
    eps_plus: QuadElem
    eps_f: QuadElem
    eps_f_plus: QuadElem
    kappa: int
    sign_condition: bool
    minus_one_in_ef: bool


def unit_mod_f(F: FieldCtx, f: QuadIdeal, max_power: int = 200) -> UnitData:
    """Generator data for the congruence unit group {eps == 1 mod f}."""
    eps0 = fundamental_unit(F.D)
    eps_plus = eps0 if eps0.is_totally_positive() else eps0 * eps0
    minus_one = f.contains(F.elem(-2))  # -1 == 1 mod f  <=>  2 in f
    if f.is_unit_ideal():
        g = eps0
        k_found = 1
    else:
        g = None
        power = F.elem(1)
        for k in range(1, max_power + 1):
            power = power * eps0
            if f.contains(power - 1):
                g = power
                k_found = k
                break
            if f.contains(power + 1):
                g = -power
                k_found = k
                break
        if g is None:
            raise ArithmeticError("no unit == 1 mod f found up to eps0^%d" % max_power)
    # least totally positive unit == 1 mod f (of the form +-g^j)
    if g.is_totally_positive():
        g_plus = g
        ratio = 1
    elif minus_one and (-g).is_totally_positive():
        g_plus = -g
        ratio = 1
    else:
        g_plus = g * g
        ratio = 2
    kappa = ratio * (2 if minus_one else 1)
    sign_condition = (not minus_one) and g.conjugate().sign() > 0
    return UnitData(
        eps0=eps0,
        eps_plus=eps_plus,
        eps_f=g,
        eps_f_plus=g_plus,
        kappa=kappa,
        sign_condition=sign_condition,
        minus_one_in_ef=minus_one,
    )

"""Exact arithmetic foundation.

Arbitrary-precision rationals, a small algebraic-number tower Q(i, sqrt2, sqrt3)
for the handful of irrational structure constants, truncated series with exact
rational exponents, guarded parameter sampling, and exact linear solving /
polynomial interpolation.

Everything here is immutable after construction and safe to share.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is expected in normal installs
    from fractions import Fraction as Rat

__all__ = [
    "Rat",
    "rat",
    "AlgNum",
    "I_UNIT",
    "SQRT2",
    "SQRT3",
    "Scalar",
    "TimeKind",
    "TSeries",
    "INF",
    "series_combine",
    "series_dlog",
    "ParamPoint",
    "GuardConfig",
    "GuardExhausted",
    "sample_params",
    "SingularSystem",
    "InconsistentOverdetermined",
    "solve_exact",
    "fit_polynomial",
    "SymPoly",
]

INF = math.inf

RatLike = Union[int, "Rat"]


def rat(x: RatLike | str, y: int | None = None) -> Rat:
    """Exact rational from int, string '3/7', or an existing rational."""
    if y is not None:
        return Rat(x, y)
    return Rat(x)


_R0 = rat(0)
_R1 = rat(1)


# ---------------------------------------------------------------------------
# Algebraic scalars: Q(i, sqrt2, sqrt3)
# ---------------------------------------------------------------------------

# basis element key: (i_bit, sqrt2_bit, sqrt3_bit), each 0 or 1
_ONE_KEY = (0, 0, 0)


class AlgNum:
    """Element of the field Q(i, sqrt2, sqrt3), exact.

    Stored as rational components over the 8-element basis
    {1, i} x {1, sqrt2} x {1, sqrt3}.  Arithmetic coerces int/Rat operands.
    Inverse goes through the product of the 7 nontrivial conjugates divided by
    the (rational) norm.
    """

    __slots__ = ("comps",)

    def __init__(self, comps: Mapping[tuple[int, int, int], RatLike] | RatLike = 0):
        if isinstance(comps, (int, type(_R0))):
            c = rat(comps)
            self.comps = {} if c == 0 else {_ONE_KEY: c}
            return
        clean: dict[tuple[int, int, int], Rat] = {}
        for k, v in comps.items():
            v = rat(v)
            if v != 0:
                clean[k] = v
        self.comps = clean

    # -- constructors -------------------------------------------------------
    @staticmethod
    def of(x: "AlgNum | RatLike") -> "AlgNum":
        return x if isinstance(x, AlgNum) else AlgNum(x)

    # -- predicates ---------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.comps)

    def is_rational(self) -> bool:
        return all(k == _ONE_KEY for k in self.comps)

    def rational_value(self) -> Rat:
        if not self.comps:
            return _R0
        if not self.is_rational():
            raise ValueError("not a rational element: %r" % self)
        return self.comps[_ONE_KEY]

    # -- ring ops -----------------------------------------------------------
    def __add__(self, other):
        other = _coerce_alg(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.comps)
        for k, v in other.comps.items():
            s = out.get(k, _R0) + v
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        res = AlgNum.__new__(AlgNum)
        res.comps = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = AlgNum.__new__(AlgNum)
        res.comps = {k: -v for k, v in self.comps.items()}
        return res

    def __sub__(self, other):
        other = _coerce_alg(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_alg(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_alg(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, int, int], Rat] = {}
        for (a1, b1, c1), v1 in self.comps.items():
            for (a2, b2, c2), v2 in other.comps.items():
                sign = -1 if (a1 and a2) else 1
                carry = (2 ** ((b1 + b2) // 2)) * (3 ** ((c1 + c2) // 2))
                key = ((a1 + a2) % 2, (b1 + b2) % 2, (c1 + c2) % 2)
                term = v1 * v2 * (sign * carry)
                s = out.get(key, _R0) + term
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        res = AlgNum.__new__(AlgNum)
        res.comps = out
        return res

    __rmul__ = __mul__

    def conj(self, which: int) -> "AlgNum":
        """Sign-flip conjugation: which selects the generator (0:i, 1:s2, 2:s3)."""
        res = AlgNum.__new__(AlgNum)
        res.comps = {
            k: (-v if k[which] else v) for k, v in self.comps.items()
        }
        return res

    def inverse(self) -> "AlgNum":
        if not self.comps:
            raise ZeroDivisionError("AlgNum division by zero")
        prod = AlgNum(1)
        for mask in range(1, 8):
            x = self
            for g in range(3):
                if mask & (1 << g):
                    x = x.conj(g)
            prod = prod * x
        norm = (prod * self).comps
        assert set(norm) <= {_ONE_KEY}, "norm of AlgNum must be rational"
        n = norm.get(_ONE_KEY, _R0)
        return prod * AlgNum(rat(1) / n)

    def __truediv__(self, other):
        other = _coerce_alg(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce_alg(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = AlgNum(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparisons --------------------------------------------------------
    def __eq__(self, other):
        other = _coerce_alg(other)
        if other is NotImplemented:
            return NotImplemented
        return self.comps == other.comps

    def __hash__(self):
        if self.is_rational():
            return hash(self.comps.get(_ONE_KEY, _R0))
        return hash(tuple(sorted((k, v) for k, v in self.comps.items())))

    def __repr__(self):
        if not self.comps:
            return "AlgNum(0)"
        names = {
            (0, 0, 0): "",
            (1, 0, 0): "*i",
            (0, 1, 0): "*r2",
            (0, 0, 1): "*r3",
            (1, 1, 0): "*i*r2",
            (1, 0, 1): "*i*r3",
            (0, 1, 1): "*r6",
            (1, 1, 1): "*i*r6",
        }
        parts = [
            "%s%s" % (v, names[k])
            for k, v in sorted(self.comps.items())
        ]
        return "AlgNum(%s)" % " + ".join(parts)

    # -- numeric collapse ---------------------------------------------------
    def to_complex(self, to_float=float, sqrt=math.sqrt) -> complex:
        """Collapse to a complex number; to_float/sqrt pluggable for mpmath."""
        total = 0
        r2 = sqrt(to_float(2))
        r3 = sqrt(to_float(3))
        for (ai, b2, b3), v in self.comps.items():
            x = to_float(v.numerator) / to_float(v.denominator)
            if b2:
                x = x * r2
            if b3:
                x = x * r3
            total = total + (x * 1j if ai else x)
        return total


def _coerce_alg(x):
    if isinstance(x, AlgNum):
        return x
    if isinstance(x, (int, type(_R0))):
        return AlgNum(x)
    return NotImplemented


I_UNIT = AlgNum({(1, 0, 0): _R1})
SQRT2 = AlgNum({(0, 1, 0): _R1})
SQRT3 = AlgNum({(0, 0, 1): _R1})

Scalar = Union[Rat, int, AlgNum]


def scalar_is_zero(x: Scalar) -> bool:
    if isinstance(x, AlgNum):
        return not x.comps
    return x == 0


def scalar_div(x: Scalar, y: Scalar) -> Scalar:
    """Exact division staying in Rat when both operands are rational."""
    if isinstance(x, AlgNum) or isinstance(y, AlgNum):
        return AlgNum.of(x) / AlgNum.of(y)
    return rat(x) / rat(y)


# ---------------------------------------------------------------------------
# Time kinds
# ---------------------------------------------------------------------------


class TimeKind:
    """Derivative convention for the one time variable of a series.

    PLAIN      d/dt
    LOG        t d/dt            (derivative in ln t)
    LOG_SHIFT  t(t-1) d/dt       (derivative in ln(1 - 1/t))
    STRONG     d/ds              (plain derivative in the strong variable)
    """

    PLAIN = "plain_t"
    LOG = "log_t"
    LOG_SHIFT = "log_one_minus_inv_t"
    STRONG = "strong_s"

    ALL = (PLAIN, LOG, LOG_SHIFT, STRONG)


# ---------------------------------------------------------------------------
# Truncated series with rational exponents
# ---------------------------------------------------------------------------


class TSeries:
    """Finite exponent->coefficient map plus a truncation order.

    Exponents are exact rationals (plain ints allowed, they hash/compare the
    same).  truncation_order INF means the series is an exact (Laurent)
    polynomial; all arithmetic propagates truncation pessimistically, so a
    finite order never silently improves.
    """

    __slots__ = ("terms", "order")

    def __init__(self, terms: Mapping | Iterable | None = None, order=INF):
        data: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for e, c in items:
                if scalar_is_zero(c):
                    continue
                if e in data:
                    s = data[e] + c
                    if scalar_is_zero(s):
                        del data[e]
                    else:
                        data[e] = s
                else:
                    data[e] = c
        if order is not INF:
            data = {e: c for e, c in data.items() if e < order}
        self.terms = data
        self.order = order

    # -- constructors -------------------------------------------------------
    @staticmethod
    def const(c: Scalar, order=INF) -> "TSeries":
        return TSeries({0: c}, order)

    @staticmethod
    def mono(e, c: Scalar = 1, order=INF) -> "TSeries":
        return TSeries({e: c}, order)

    @staticmethod
    def zero(order=INF) -> "TSeries":
        return TSeries({}, order)

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e) -> Scalar:
        if self.order is not INF and e >= self.order:
            raise KeyError("exponent %s at/above truncation %s" % (e, self.order))
        return self.terms.get(e, _R0)

    def min_exp(self):
        return min(self.terms) if self.terms else INF

    def exponents(self):
        return sorted(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.terms == other.terms and self.order == other.order

    def __hash__(self):
        return hash((tuple(sorted(self.terms.items(), key=lambda kv: rat(kv[0]))), self.order))

    def __repr__(self):
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(
                "(%s)*t^%s" % (c, e) for e, c in sorted(self.terms.items(), key=lambda kv: rat(kv[0]))
            )
        tail = "" if self.order is INF else " + O(t^%s)" % self.order
        return "<%s%s>" % (body, tail)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        order = min(self.order, other.order)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if scalar_is_zero(s):
                    del out[e]
                else:
                    out[e] = s
        if order is not INF:
            out = {e: c for e, c in out.items() if e < order}
        res = TSeries.__new__(TSeries)
        res.terms = out
        res.order = order
        return res

    def __neg__(self):
        res = TSeries.__new__(TSeries)
        res.terms = {e: -c for e, c in self.terms.items()}
        res.order = self.order
        return res

    def __sub__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        order = _mul_order(self, other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if e >= order:
                    continue
                term = c1 * c2
                s = out.get(e)
                if s is None:
                    out[e] = term
                else:
                    s = s + term
                    if scalar_is_zero(s):
                        del out[e]
                    else:
                        out[e] = s
        res = TSeries.__new__(TSeries)
        res.terms = out
        res.order = order
        return res

    def scale(self, c: Scalar) -> "TSeries":
        if scalar_is_zero(c):
            return TSeries.zero(self.order)
        res = TSeries.__new__(TSeries)
        res.terms = {e: v * c for e, v in self.terms.items()}
        res.order = self.order
        return res

    def shift(self, de) -> "TSeries":
        """Multiply by t^de."""
        res = TSeries.__new__(TSeries)
        res.terms = {e + de: c for e, c in self.terms.items()}
        res.order = self.order if self.order is INF else self.order + de
        return res

    def truncate(self, order) -> "TSeries":
        order = min(order, self.order)
        res = TSeries.__new__(TSeries)
        res.terms = {e: c for e, c in self.terms.items() if e < order}
        res.order = order
        return res

    def inverse(self, order=None) -> "TSeries":
        """Series inverse; leading term must be a single invertible monomial.

        Default order follows honest propagation: a series known mod O(t^N)
        with leading exponent e0 has inverse known mod O(t^{N-2*e0}).
        """
        if not self.terms:
            raise ZeroDivisionError("inverse of zero series")
        e0 = self.min_exp()
        c0 = self.terms[e0]
        inv_c0 = scalar_div(1, c0)
        u = (self - TSeries.mono(e0, c0, self.order)).shift(-e0).scale(inv_c0)
        if order is None:
            order = INF if self.order is INF else self.order - 2 * e0
        if order is INF:
            if u.is_zero():
                return TSeries.mono(-e0, inv_c0)
            raise ValueError("inverse of a multi-term exact polynomial needs a truncation order")
        work = order + e0
        u = u.truncate(work)
        neg_u = -u
        acc = TSeries.const(1, work)
        term = TSeries.const(1, work)
        while True:
            term = (term * neg_u).truncate(work)
            if term.is_zero():
                break
            acc = acc + term
        return acc.shift(-e0).scale(inv_c0)


def _mul_order(f: TSeries, g: TSeries):
    if f.order is INF and g.order is INF:
        return INF
    cands = []
    if f.order is not INF:
        cands.append(f.order + (g.min_exp() if g.terms else 0))
    if g.order is not INF:
        cands.append(g.order + (f.min_exp() if f.terms else 0))
    if f.order is not INF and g.order is not INF:
        cands.append(f.order + g.order)
    return min(cands)


def series_combine(lhs: TSeries, rhs: TSeries, op: str) -> TSeries:
    """add/mul with the truncation propagation rules baked into TSeries."""
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError("op must be 'add' or 'mul', got %r" % op)


def series_dlog(f, factor: str):
    """Derivative of f under the stated time factor (not f'/f).

    PLAIN/STRONG: c t^e -> c e t^{e-1};  LOG: c t^e -> c e t^e;
    LOG_SHIFT: t(t-1) d/dt, i.e. c e t^{e+1} - c e t^e.  Coefficient rings
    that carry their own deriv(kind) dispatch through it.
    """
    deriv = getattr(f, "deriv", None)
    if deriv is not None:
        return deriv(factor)
    if factor in (TimeKind.PLAIN, TimeKind.STRONG):
        res = TSeries.__new__(TSeries)
        res.terms = {e - 1: c * rat(e) for e, c in f.terms.items() if e != 0}
        res.order = f.order if f.order is INF else f.order - 1
        return res
    if factor == TimeKind.LOG:
        res = TSeries.__new__(TSeries)
        res.terms = {e: c * rat(e) for e, c in f.terms.items() if e != 0}
        res.order = f.order
        return res
    if factor == TimeKind.LOG_SHIFT:
        log_part = series_dlog(f, TimeKind.LOG)
        return log_part.shift(1) - log_part
    raise ValueError("unknown time factor %r" % factor)


# ---------------------------------------------------------------------------
# Parameter points and guarded sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParamPoint:
    """One exact parameter point: Omega background plus Coulomb/mass data."""

    eps1: Rat
    eps2: Rat
    a: Rat
    masses: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "eps1", rat(self.eps1))
        object.__setattr__(self, "eps2", rat(self.eps2))
        object.__setattr__(self, "a", rat(self.a))
        object.__setattr__(self, "masses", tuple(rat(m) for m in self.masses))
        if self.eps1 == 0 or self.eps2 == 0:
            raise ValueError("eps1, eps2 must be nonzero")
        if self.eps == 0 or self.kappa == 0:
            raise ValueError("eps and kappa must be nonzero")

    @property
    def eps(self) -> Rat:
        return self.eps1 + self.eps2

    @property
    def kappa(self) -> Rat:
        return self.eps2 - self.eps1

    def with_a(self, a) -> "ParamPoint":
        return ParamPoint(self.eps1, self.eps2, a, self.masses)

    def with_masses(self, masses) -> "ParamPoint":
        return ParamPoint(self.eps1, self.eps2, self.a, tuple(masses))

    def key(self) -> str:
        return "%s|%s|%s|%s" % (
            self.eps1,
            self.eps2,
            self.a,
            ",".join(str(m) for m in self.masses),
        )


@dataclass(frozen=True)
class GuardConfig:
    """Resonance-guard knobs for sample_params."""

    denom_bound: int = 12
    resonance_bound: int | None = None  # default 2*(k_max + n_max)
    n_max: int = 5
    k_max: int = 5
    mass_guards: bool = True
    retry_budget: int = 4000

    @property
    def bound(self) -> int:
        if self.resonance_bound is not None:
            return self.resonance_bound
        return 2 * (self.k_max + self.n_max)


class GuardExhausted(RuntimeError):
    pass


def check_guards(p: ParamPoint, guards: GuardConfig) -> bool:
    """True iff p clears every resonance/denominator guard."""
    b = guards.bound
    e1, e2 = p.eps1, p.eps2
    if p.eps == 0 or p.kappa == 0:
        return False
    two_a = 2 * p.a
    for i in range(-b, b + 1):
        base = two_a + i * e1
        for j in range(-b, b + 1):
            if base + j * e2 == 0:
                return False
    w = (2 * p.a + p.eps) / p.kappa
    if w.denominator <= 2 * guards.n_max * guards.k_max:
        return False
    if guards.mass_guards:
        half = p.eps / 2
        for m in p.masses:
            for sa in (p.a, -p.a):
                base0 = m + sa - half
                for i in range(-b, b + 1):
                    base = base0 + i * e1
                    for j in range(-b, b + 1):
                        if base + j * e2 == 0:
                            return False
    return True


def sample_params(seed: int, n_masses: int, guards: GuardConfig | None = None) -> ParamPoint:
    """Deterministic guarded random parameter point with n_masses masses."""
    guards = guards or GuardConfig()
    rng = random.Random(seed)
    d = guards.denom_bound
    for _ in range(guards.retry_budget):
        def draw():
            num = rng.randint(-6 * d, 6 * d)
            den = rng.randint(1, d)
            return rat(num, den)

        e1 = draw()
        e2 = draw()
        if e1 == 0 or e2 == 0 or e1 == e2 or e1 == -e2:
            continue
        a = draw()
        masses = tuple(draw() for _ in range(n_masses))
        try:
            p = ParamPoint(e1, e2, a, masses)
        except ValueError:
            continue
        if check_guards(p, guards):
            return p
    raise GuardExhausted("no guarded sample within %d tries (seed=%d)" % (guards.retry_budget, seed))


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------


class SingularSystem(RuntimeError):
    pass


class InconsistentOverdetermined(RuntimeError):
    pass


def solve_exact(matrix: Sequence[Sequence], rhs: Sequence) -> list:
    """Exact solution of a square or overdetermined consistent linear system.

    Fraction-free (Bareiss) elimination on the denominator-cleared augmented
    matrix.  Overdetermined rows beyond the rank are checked against the
    solution; any mismatch raises InconsistentOverdetermined, which upstream
    callers treat as a failed identity.
    """
    rows = len(matrix)
    if rows == 0:
        return []
    cols = len(matrix[0])
    if rows < cols:
        raise SingularSystem("underdetermined system: %d rows < %d cols" % (rows, cols))
    work_is_alg = any(
        isinstance(x, AlgNum) for row in matrix for x in row
    ) or any(isinstance(x, AlgNum) for x in rhs)
    if work_is_alg:
        aug = [[AlgNum.of(x) for x in row] + [AlgNum.of(rhs[i])] for i, row in enumerate(matrix)]
        zero = AlgNum(0)
    else:
        aug = [[rat(x) for x in row] + [rat(rhs[i])] for i, row in enumerate(matrix)]
        zero = _R0
        # clear denominators rowwise so elimination stays in integers
        for row in aug:
            den = 1
            for x in row:
                den = den * x.denominator // math.gcd(den, int(x.denominator))
            for k, x in enumerate(row):
                row[k] = rat(x * den)
    # Bareiss elimination with row pivoting
    n = cols
    prev = 1 if not work_is_alg else AlgNum(1)
    row_order = list(range(rows))
    r = 0
    for c in range(n):
        piv = None
        for rr in range(r, rows):
            if aug[row_order[rr]][c] != zero:
                piv = rr
                break
        if piv is None:
            raise SingularSystem("no pivot in column %d" % c)
        row_order[r], row_order[piv] = row_order[piv], row_order[r]
        pr = aug[row_order[r]]
        for rr in range(r + 1, rows):
            cur = aug[row_order[rr]]
            for cc in range(c + 1, n + 1):
                num = pr[c] * cur[cc] - cur[c] * pr[cc]
                # Bareiss: division by the previous pivot is exact
                cur[cc] = num / prev if work_is_alg else rat(num) / rat(prev)
            cur[c] = zero
        prev = pr[c]
        r += 1
        if r == n:
            break
    # back substitution on the first n pivot rows
    sol = [zero] * n
    for i in range(n - 1, -1, -1):
        row = aug[row_order[i]]
        s = row[n]
        for j in range(i + 1, n):
            s = s - row[j] * sol[j]
        if row[i] == zero:
            raise SingularSystem("zero pivot in back substitution")
        if work_is_alg:
            sol[i] = s / row[i]
        else:
            sol[i] = rat(s) / rat(row[i])
    # overdetermined: verify every original row against the solution
    if rows > n:
        for i in range(rows):
            row_i = matrix[i]
            if work_is_alg:
                s = AlgNum(0)
                for j in range(n):
                    s = s + AlgNum.of(row_i[j]) * AlgNum.of(sol[j])
                want = AlgNum.of(rhs[i])
            else:
                s = _R0
                for j in range(n):
                    s = s + rat(row_i[j]) * sol[j]
                want = rat(rhs[i])
            if s != want:
                raise InconsistentOverdetermined(
                    "row %d inconsistent: %r != %r" % (i, s, want)
                )
    return sol


def fit_polynomial(xs: Sequence, ys: Sequence, degree: int) -> list:
    """Unique polynomial (coeff list, low to high) of stated degree through the samples.

    More samples than degree+1 are allowed; extra rows must be consistent.
    """
    if len(xs) != len(ys):
        raise ValueError("sample length mismatch")
    if len(xs) < degree + 1:
        raise SingularSystem("need at least degree+1 samples")
    matrix = []
    for x in xs:
        row = []
        acc = rat(1) if not isinstance(x, AlgNum) else AlgNum(1)
        for _ in range(degree + 1):
            row.append(acc)
            acc = acc * x
        matrix.append(row)
    return solve_exact(matrix, list(ys))


# ---------------------------------------------------------------------------
# Deferred-symbol polynomials
# ---------------------------------------------------------------------------


class SymPoly:
    """Polynomial in one deferred symbol with exact coefficients.

    Used to carry a free integration constant through a solve; degree_cap is a
    hard bound, exceeded degree raises immediately.
    """

    __slots__ = ("coeffs", "degree_cap")

    def __init__(self, coeffs: Sequence, degree_cap: int = 4):
        cs = [c for c in coeffs]
        while cs and scalar_is_zero(cs[-1]):
            cs.pop()
        if len(cs) > degree_cap + 1:
            raise ValueError("degree %d exceeds cap %d" % (len(cs) - 1, degree_cap))
        self.coeffs = cs
        self.degree_cap = degree_cap

    @staticmethod
    def const(c, degree_cap: int = 4) -> "SymPoly":
        return SymPoly([c], degree_cap)

    @staticmethod
    def symbol(degree_cap: int = 4) -> "SymPoly":
        return SymPoly([0, 1], degree_cap)

    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        other = _coerce_sym(other, self.degree_cap)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            x = self.coeffs[i] if i < len(self.coeffs) else 0
            y = other.coeffs[i] if i < len(other.coeffs) else 0
            out.append(x + y)
        return SymPoly(out, max(self.degree_cap, other.degree_cap))

    __radd__ = __add__

    def __neg__(self):
        return SymPoly([-c for c in self.coeffs], self.degree_cap)

    def __sub__(self, other):
        other = _coerce_sym(other, self.degree_cap)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_sym(other, self.degree_cap)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_sym(other, self.degree_cap)
        if other is NotImplemented:
            return NotImplemented
        cap = max(self.degree_cap, other.degree_cap)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1) if self.coeffs and other.coeffs else []
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return SymPoly(out, cap)

    __rmul__ = __mul__

    def eval_at(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        other = _coerce_sym(other, self.degree_cap)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "SymPoly(0)"
        return "SymPoly(%s)" % " + ".join(
            "(%s)*c^%d" % (c, i) for i, c in enumerate(self.coeffs) if not scalar_is_zero(c)
        )


def _coerce_sym(x, cap):
    if isinstance(x, SymPoly):
        return x
    if isinstance(x, (int, type(_R0), AlgNum)):
        return SymPoly([x], cap)
    return NotImplemented

"""Noncommutative Weyl algebra with [p, q] = eps.

Elements are kept in normal order: every monomial is q^m p^n with the q power
on the left.  q powers range over all integers (Laurent), p powers are
nonnegative.  Coefficients are central series in the time variable: TSeries
for ordinary work, BiSeries (time plus a scaling variable u) for coalescence
limits.  The single rewrite rule, valid for every integer m:

    p q^m = q^m p + m eps q^{m-1}

iterated to  p^n q^m = sum_k C(n,k) (m)_k eps^k q^{m-k} p^{n-k}  with (m)_k
the falling factorial.
"""

from __future__ import annotations

import math
from typing import Callable, Mapping

from .core import (
    INF,
    Rat,
    TSeries,
    TimeKind,
    rat,
    scalar_div,
    scalar_is_zero,
    series_dlog,
)

__all__ = [
    "BiSeries",
    "PoleSeries",
    "WeylElem",
    "generators",
    "normal_mul",
    "commutator",
    "anticommutator",
    "weyl_pow",
    "substitute",
    "heisenberg_jets",
    "scaled_expand",
    "NotInvertible",
]


class NotInvertible(ValueError):
    pass


# ---------------------------------------------------------------------------
# Bivariate series: Laurent in t, truncated Laurent in the scaling variable u
# ---------------------------------------------------------------------------


class BiSeries:
    """terms: {(t_exp, u_exp): scalar}; truncation order applies to u only."""

    __slots__ = ("terms", "u_order")

    def __init__(self, terms: Mapping | None = None, u_order=INF):
        data: dict = {}
        if terms:
            for (te, ue), c in terms.items():
                if scalar_is_zero(c):
                    continue
                if u_order is not INF and ue >= u_order:
                    continue
                k = (te, ue)
                if k in data:
                    s = data[k] + c
                    if scalar_is_zero(s):
                        del data[k]
                    else:
                        data[k] = s
                else:
                    data[k] = c
        self.terms = data
        self.u_order = u_order

    @staticmethod
    def const(c, u_order=INF) -> "BiSeries":
        return BiSeries({(0, 0): c}, u_order)

    @staticmethod
    def mono(t_exp, u_exp, c=1, u_order=INF) -> "BiSeries":
        return BiSeries({(t_exp, u_exp): c}, u_order)

    def is_zero(self) -> bool:
        return not self.terms

    def min_u(self):
        return min(ue for _, ue in self.terms) if self.terms else INF

    def u_slice(self, u_exp) -> TSeries:
        """Coefficient of u^{u_exp} as a series in t (exact)."""
        if self.u_order is not INF and u_exp >= self.u_order:
            raise KeyError("u^%s at/above truncation %s" % (u_exp, self.u_order))
        return TSeries({te: c for (te, ue), c in self.terms.items() if ue == u_exp})

    def u_exponents(self):
        return sorted({ue for _, ue in self.terms})

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.terms == other.terms and self.u_order == other.u_order

    def __hash__(self):
        return hash((tuple(sorted(self.terms.items(), key=lambda kv: (rat(kv[0][0]), rat(kv[0][1])))), self.u_order))

    def __repr__(self):
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(
                "(%s)*t^%s*u^%s" % (c, te, ue)
                for (te, ue), c in sorted(self.terms.items(), key=lambda kv: (rat(kv[0][1]), rat(kv[0][0])))
            )
        tail = "" if self.u_order is INF else " + O(u^%s)" % self.u_order
        return "<<%s%s>>" % (body, tail)

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        order = min(self.u_order, other.u_order)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if scalar_is_zero(s):
                    del out[k]
                else:
                    out[k] = s
        if order is not INF:
            out = {k: c for k, c in out.items() if k[1] < order}
        res = BiSeries.__new__(BiSeries)
        res.terms = out
        res.u_order = order
        return res

    def __neg__(self):
        res = BiSeries.__new__(BiSeries)
        res.terms = {k: -c for k, c in self.terms.items()}
        res.u_order = self.u_order
        return res

    def __sub__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        order = _bi_mul_order(self, other)
        out: dict = {}
        for (t1, u1), c1 in self.terms.items():
            for (t2, u2), c2 in other.terms.items():
                ue = u1 + u2
                if ue >= order:
                    continue
                k = (t1 + t2, ue)
                term = c1 * c2
                s = out.get(k)
                if s is None:
                    out[k] = term
                else:
                    s = s + term
                    if scalar_is_zero(s):
                        del out[k]
                    else:
                        out[k] = s
        res = BiSeries.__new__(BiSeries)
        res.terms = out
        res.u_order = order
        return res

    def scale(self, c) -> "BiSeries":
        if scalar_is_zero(c):
            return BiSeries({}, self.u_order)
        res = BiSeries.__new__(BiSeries)
        res.terms = {k: v * c for k, v in self.terms.items()}
        res.u_order = self.u_order
        return res

    def truncate_u(self, order) -> "BiSeries":
        order = min(order, self.u_order)
        res = BiSeries.__new__(BiSeries)
        res.terms = {k: c for k, c in self.terms.items() if k[1] < order}
        res.u_order = order
        return res

    def inverse(self, order=None) -> "BiSeries":
        """Inverse when the leading u slice is a single t-monomial."""
        if not self.terms:
            raise ZeroDivisionError("inverse of zero BiSeries")
        u0 = self.min_u()
        lead = self.u_slice(u0)
        if len(lead.terms) != 1:
            raise NotInvertible("leading u-slice is not a monomial: %r" % lead)
        t0 = lead.min_exp()
        c0 = lead.terms[t0]
        inv_c0 = scalar_div(1, c0)
        # self = c0 t^{t0} u^{u0} (1 + rho), rho of positive u order
        rho = (self - BiSeries.mono(t0, u0, c0, self.u_order)) * BiSeries.mono(-t0, -u0, inv_c0)
        if not rho.is_zero() and rho.min_u() <= 0:
            raise NotInvertible("residual terms at nonpositive u order")
        if order is None:
            order = INF if self.u_order is INF else self.u_order - 2 * u0
        if order is INF:
            if rho.is_zero():
                return BiSeries.mono(-t0, -u0, inv_c0)
            raise NotInvertible("exact inverse of a multi-term BiSeries needs a u truncation")
        work = order + u0
        rho = rho.truncate_u(work)
        neg = -rho
        acc = BiSeries.const(1, work)
        term = BiSeries.const(1, work)
        while True:
            term = (term * neg).truncate_u(work)
            if term.is_zero():
                break
            acc = acc + term
        return acc * BiSeries.mono(-t0, -u0, inv_c0)

    def int_pow(self, e: int, order=None) -> "BiSeries":
        if e < 0:
            return self.inverse(order=order).int_pow(-e)
        out = BiSeries.const(1)
        base = self
        n = e
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out if order is None else out.truncate_u(order)


def _bi_mul_order(f: BiSeries, g: BiSeries):
    if f.u_order is INF and g.u_order is INF:
        return INF
    cands = []
    if f.u_order is not INF:
        cands.append(f.u_order + (g.min_u() if g.terms else 0))
    if g.u_order is not INF:
        cands.append(g.u_order + (f.min_u() if f.terms else 0))
    if f.u_order is not INF and g.u_order is not INF:
        cands.append(f.u_order + g.u_order)
    return min(cands)


# ---------------------------------------------------------------------------
# Rational functions with poles only at t = 0 and t = 1
# ---------------------------------------------------------------------------


def _padd(out: dict, key, c):
    s = out.get(key)
    if s is None:
        if not scalar_is_zero(c):
            out[key] = c
    else:
        s = s + c
        if scalar_is_zero(s):
            del out[key]
        else:
            out[key] = s


def _mono_times_pole(n: int, k: int, c, t_out: dict, p_out: dict):
    """Accumulate c * t^n (t-1)^{-k} in the partial-fraction basis."""
    if n == 0:
        _padd(p_out, k, c)
        return
    if n > 0:
        # t^n = sum_j C(n,j) (t-1)^j
        for j in range(n + 1):
            w = c * rat(math.comb(n, j))
            d = j - k
            if d < 0:
                _padd(p_out, -d, w)
            else:
                for i in range(d + 1):
                    _padd(t_out, i, w * rat((-1) ** (d - i) * math.comb(d, i)))
        return
    n = -n
    # 1/(t^n (t-1)^k) split: residues at 0 then at 1
    for m in range(n):
        _padd(t_out, -(n - m), c * rat((-1) ** k * math.comb(k - 1 + m, m)))
    for m in range(k):
        _padd(p_out, k - m, c * rat((-1) ** m * math.comb(n + m - 1, m)))


class PoleSeries:
    """Laurent polynomial in t plus a finite principal part at t = 1.

    terms: {e: scalar} for t^e (e any integer); poles: {k: scalar} for
    (t-1)^{-k}, k >= 1.  An exact ring: products resolve through partial
    fractions, and d/dt, t -> 1-t, t -> 1/t all stay inside it.  This is the
    coefficient ring forced on the sixth system, whose flow derivative
    t(t-1) d/dt keeps jets rational with poles only at t = 0, 1.
    """

    __slots__ = ("terms", "poles")

    def __init__(self, terms: Mapping | None = None, poles: Mapping | None = None):
        t_out: dict = {}
        p_out: dict = {}
        if terms:
            for e, c in terms.items():
                ie = int(e)
                if ie != e:
                    raise ValueError("non-integer t exponent %r" % (e,))
                _padd(t_out, ie, c)
        if poles:
            for k, c in poles.items():
                ik = int(k)
                if ik != k or ik < 1:
                    raise ValueError("pole order must be a positive integer: %r" % (k,))
                _padd(p_out, ik, c)
        self.terms = t_out
        self.poles = p_out

    @staticmethod
    def _make(t_out: dict, p_out: dict) -> "PoleSeries":
        res = PoleSeries.__new__(PoleSeries)
        res.terms = t_out
        res.poles = p_out
        return res

    @staticmethod
    def const(c) -> "PoleSeries":
        return PoleSeries({0: c})

    @staticmethod
    def t_mono(e: int, c=1) -> "PoleSeries":
        return PoleSeries({e: c})

    @staticmethod
    def pole(k: int, c=1) -> "PoleSeries":
        return PoleSeries(None, {k: c})

    @staticmethod
    def from_tseries(f: TSeries) -> "PoleSeries":
        if f.order is not INF:
            raise ValueError("only exact series convert losslessly")
        return PoleSeries(f.terms)

    def to_tseries(self) -> TSeries:
        if self.poles:
            raise ValueError("nonzero principal part at t = 1: %r" % self)
        return TSeries(dict(self.terms))

    def is_zero(self) -> bool:
        return not self.terms and not self.poles

    def coeff_t(self, e: int):
        return self.terms.get(e, rat(0))

    def pole_coeff(self, k: int):
        return self.poles.get(k, rat(0))

    def __eq__(self, other):
        if not isinstance(other, PoleSeries):
            return NotImplemented
        return self.terms == other.terms and self.poles == other.poles

    def __hash__(self):
        return hash(
            (
                tuple(sorted(self.terms.items(), key=lambda kv: kv[0])),
                tuple(sorted(self.poles.items(), key=lambda kv: kv[0])),
            )
        )

    def __repr__(self):
        parts = ["(%s)*t^%s" % (c, e) for e, c in sorted(self.terms.items())]
        parts += ["(%s)*(t-1)^-%s" % (c, k) for k, c in sorted(self.poles.items())]
        return "<<%s>>" % (" + ".join(parts) if parts else "0")

    def __add__(self, other):
        if not isinstance(other, PoleSeries):
            return NotImplemented
        t_out = dict(self.terms)
        p_out = dict(self.poles)
        for e, c in other.terms.items():
            _padd(t_out, e, c)
        for k, c in other.poles.items():
            _padd(p_out, k, c)
        return PoleSeries._make(t_out, p_out)

    def __neg__(self):
        return PoleSeries._make(
            {e: -c for e, c in self.terms.items()},
            {k: -c for k, c in self.poles.items()},
        )

    def __sub__(self, other):
        if not isinstance(other, PoleSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PoleSeries):
            return NotImplemented
        t_out: dict = {}
        p_out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _padd(t_out, e1 + e2, c1 * c2)
            for k2, c2 in other.poles.items():
                _mono_times_pole(e1, k2, c1 * c2, t_out, p_out)
        for k1, c1 in self.poles.items():
            for e2, c2 in other.terms.items():
                _mono_times_pole(e2, k1, c1 * c2, t_out, p_out)
            for k2, c2 in other.poles.items():
                _padd(p_out, k1 + k2, c1 * c2)
        return PoleSeries._make(t_out, p_out)

    def scale(self, c) -> "PoleSeries":
        if scalar_is_zero(c):
            return PoleSeries()
        return PoleSeries._make(
            {e: v * c for e, v in self.terms.items()},
            {k: v * c for k, v in self.poles.items()},
        )

    def ddt(self) -> "PoleSeries":
        return PoleSeries._make(
            {e - 1: c * rat(e) for e, c in self.terms.items() if e != 0},
            {k + 1: c * rat(-k) for k, c in self.poles.items()},
        )

    def deriv(self, kind: str) -> "PoleSeries":
        """Derivative under the stated time factor (mirrors series_dlog)."""
        if kind in (TimeKind.PLAIN, TimeKind.STRONG):
            return self.ddt()
        if kind == TimeKind.LOG:
            return PoleSeries({1: 1}) * self.ddt()
        if kind == TimeKind.LOG_SHIFT:
            return PoleSeries({2: 1, 1: -1}) * self.ddt()
        raise ValueError("unknown time factor %r" % kind)

    def sub_one_minus_t(self) -> "PoleSeries":
        """Image under t -> 1-t (swaps the poles at 0 and 1)."""
        t_out: dict = {}
        p_out: dict = {}
        for e, c in self.terms.items():
            if e >= 0:
                for i in range(e + 1):
                    _padd(t_out, i, c * rat((-1) ** i * math.comb(e, i)))
            else:
                _padd(p_out, -e, c * rat((-1) ** (-e)))
        for k, c in self.poles.items():
            _padd(t_out, -k, c * rat((-1) ** k))
        return PoleSeries._make(t_out, p_out)

    def sub_inv_t(self) -> "PoleSeries":
        """Image under t -> 1/t."""
        out = PoleSeries({-e: c for e, c in self.terms.items()})
        for k, c in self.poles.items():
            out = out + PoleSeries.t_mono(k, c * rat((-1) ** k)) * PoleSeries.pole(k)
        return out

    def inverse(self) -> "PoleSeries":
        if len(self.terms) == 1 and not self.poles:
            e, c = next(iter(self.terms.items()))
            return PoleSeries({-e: scalar_div(1, c)})
        if len(self.poles) == 1 and not self.terms:
            k, c = next(iter(self.poles.items()))
            ic = scalar_div(1, c)
            return PoleSeries({i: ic * rat((-1) ** (k - i) * math.comb(k, i)) for i in range(k + 1)})
        raise NotInvertible("inverse needs a single basis term: %r" % self)


# ---------------------------------------------------------------------------
# Normal-ordered elements
# ---------------------------------------------------------------------------


def _falling(m: int, k: int):
    """Falling factorial m (m-1) ... (m-k+1), integer m of either sign."""
    out = 1
    for j in range(k):
        out *= m - j
    return out


class WeylElem:
    """Normal-ordered element: {(q_pow, p_pow): central series coefficient}.

    Carries its eps so that * can reorder; mixing elements with different eps
    is an error.  Coefficients are TSeries or BiSeries (duck-typed).
    """

    __slots__ = ("terms", "eps")

    def __init__(self, terms: Mapping | None = None, eps=None):
        if eps is None:
            raise ValueError("WeylElem needs eps")
        data: dict = {}
        if terms:
            for (m, n), c in terms.items():
                if n < 0:
                    raise ValueError("negative p power in normal form: %s" % ((m, n),))
                if c.is_zero():
                    continue
                if (m, n) in data:
                    data[(m, n)] = data[(m, n)] + c
                    if data[(m, n)].is_zero():
                        del data[(m, n)]
                else:
                    data[(m, n)] = c
        self.terms = data
        self.eps = eps

    # -- constructors -------------------------------------------------------
    @staticmethod
    def zero(eps) -> "WeylElem":
        return WeylElem({}, eps)

    @staticmethod
    def from_coeff(c, eps) -> "WeylElem":
        return WeylElem({(0, 0): c}, eps)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, m: int, n: int):
        c = self.terms.get((m, n))
        if c is not None:
            return c
        for other in self.terms.values():
            return type(other)()  # zero of the right series type
        return TSeries()

    def __eq__(self, other):
        if not isinstance(other, WeylElem):
            return NotImplemented
        return self.terms == other.terms and self.eps == other.eps

    def __hash__(self):
        return hash((tuple(sorted(self.terms.items())), self.eps))

    def __repr__(self):
        if not self.terms:
            return "Weyl(0)"
        parts = []
        for (m, n), c in sorted(self.terms.items()):
            mono = []
            if m:
                mono.append("q^%d" % m)
            if n:
                mono.append("p^%d" % n)
            parts.append("%r%s" % (c, ("*" + "*".join(mono)) if mono else ""))
        return "Weyl(%s)" % " + ".join(parts)

    # -- linear structure ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, WeylElem):
            return NotImplemented
        assert self.eps == other.eps, "eps mismatch"
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
        res = WeylElem.__new__(WeylElem)
        res.terms = out
        res.eps = self.eps
        return res

    def __neg__(self):
        res = WeylElem.__new__(WeylElem)
        res.terms = {k: -c for k, c in self.terms.items()}
        res.eps = self.eps
        return res

    def __sub__(self, other):
        if not isinstance(other, WeylElem):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "WeylElem":
        """Multiply by a central scalar."""
        if scalar_is_zero(c):
            return WeylElem.zero(self.eps)
        res = WeylElem.__new__(WeylElem)
        res.terms = {k: v.scale(c) for k, v in self.terms.items()}
        res.eps = self.eps
        return res

    def scale_series(self, s) -> "WeylElem":
        """Multiply by a central series (same coefficient type)."""
        out = {}
        for k, v in self.terms.items():
            c = v * s
            if not c.is_zero():
                out[k] = c
        res = WeylElem.__new__(WeylElem)
        res.terms = out
        res.eps = self.eps
        return res

    # -- multiplicative structure -------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, WeylElem):
            return NotImplemented
        return normal_mul(self, other)

    def max_p_power(self) -> int:
        return max((n for _, n in self.terms), default=0)

    def inverse_monomial(self) -> "WeylElem":
        """Inverse of a single q^m term with invertible central coefficient."""
        if len(self.terms) != 1:
            raise NotInvertible("not a monomial: %r" % self)
        (m, n), c = next(iter(self.terms.items()))
        if n != 0:
            raise NotInvertible("p-dependent monomials are not invertible here")
        return WeylElem({(-m, 0): c.inverse()}, self.eps)

    def map_coeffs(self, fn: Callable) -> "WeylElem":
        out = {}
        for k, v in self.terms.items():
            c = fn(v)
            if not c.is_zero():
                out[k] = c
        res = WeylElem.__new__(WeylElem)
        res.terms = out
        res.eps = self.eps
        return res


def normal_mul(a: WeylElem, b: WeylElem) -> WeylElem:
    """Product in normal order via p^n q^m = sum_k C(n,k)(m)_k eps^k q^{m-k}p^{n-k}."""
    assert a.eps == b.eps, "eps mismatch"
    eps = a.eps
    out: dict = {}
    for (m1, n1), c1 in a.terms.items():
        for (m2, n2), c2 in b.terms.items():
            c = c1 * c2
            # push p^{n1} through q^{m2}
            for k in range(n1 + 1):
                fall = _falling(m2, k)
                if fall == 0:
                    continue
                w = rat(math.comb(n1, k) * fall) * eps**k
                key = (m1 + m2 - k, n1 + n2 - k)
                term = c.scale(w)
                s = out.get(key)
                if s is None:
                    out[key] = term
                else:
                    s = s + term
                    if s.is_zero():
                        del out[key]
                    else:
                        out[key] = s
    res = WeylElem.__new__(WeylElem)
    res.terms = {k: v for k, v in out.items() if not v.is_zero()}
    res.eps = eps
    return res


def commutator(a: WeylElem, b: WeylElem) -> WeylElem:
    return a * b - b * a


def anticommutator(a: WeylElem, b: WeylElem) -> WeylElem:
    return a * b + b * a


def weyl_pow(x: WeylElem, e: int) -> WeylElem:
    if e < 0:
        return weyl_pow(x.inverse_monomial(), -e)
    out = WeylElem.from_coeff(_one_like(x), x.eps)
    for _ in range(e):
        out = out * x
    return out


def _one_like(x: WeylElem):
    for c in x.terms.values():
        if isinstance(c, BiSeries):
            return BiSeries.const(1, c.u_order)
        if isinstance(c, PoleSeries):
            return PoleSeries.const(1)
        return TSeries.const(1, c.order)
    return TSeries.const(1)


def generators(eps, order=INF):
    """(q, p, t, one) over TSeries coefficients."""
    one = TSeries.const(1, order)
    return (
        WeylElem({(1, 0): one}, eps),
        WeylElem({(0, 1): one}, eps),
        WeylElem({(0, 0): TSeries.mono(1, 1, order)}, eps),
        WeylElem({(0, 0): one}, eps),
    )


# ---------------------------------------------------------------------------
# Substitution and jets
# ---------------------------------------------------------------------------


def substitute(
    elem: WeylElem,
    q_image: WeylElem,
    p_image: WeylElem,
    coeff_map: Callable | None = None,
    check_canonical: bool = True,
) -> WeylElem:
    """Evaluate elem with q -> q_image, p -> p_image (canonical pair).

    coeff_map transforms each central coefficient (time reparametrization or
    coefficient-ring change); identity when omitted.  The images must satisfy
    [p_image, q_image] = eps, checked unless disabled.
    """
    eps = q_image.eps
    assert p_image.eps == eps
    one = _one_like(q_image)
    if check_canonical:
        comm = commutator(p_image, q_image)
        want = WeylElem.from_coeff(one.scale(eps), eps)
        if not (comm - want).is_zero():
            raise ValueError("images are not canonical: [p', q'] = %r" % comm)
    out = WeylElem.zero(eps)
    q_pows: dict[int, WeylElem] = {}
    p_pows: dict[int, WeylElem] = {}

    def qp(m):
        if m not in q_pows:
            q_pows[m] = weyl_pow(q_image, m)
        return q_pows[m]

    def pp(n):
        if n not in p_pows:
            p_pows[n] = weyl_pow(p_image, n)
        return p_pows[n]

    for (m, n), c in elem.terms.items():
        word = qp(m) * pp(n)
        mapped = coeff_map(c) if coeff_map is not None else c
        out = out + word.scale_series(mapped)
    return out


def time_deriv(elem: WeylElem, kind: str) -> WeylElem:
    """Apply the TimeKind derivative to every central coefficient."""
    out = {}
    for k, c in elem.terms.items():
        d = series_dlog(c, kind)
        if not d.is_zero():
            out[k] = d
    res = WeylElem.__new__(WeylElem)
    res.terms = out
    res.eps = elem.eps
    return res


def heisenberg_jets(
    hamiltonian: WeylElem,
    seed: WeylElem,
    count: int,
    kind: str,
    kappa,
) -> list[WeylElem]:
    """Jets f^(0..count) with f^(k+1) = d_T f^(k) + [H_T, f^(k)] / (eps kappa).

    hamiltonian must be the generator conjugate to the same time coordinate T
    that kind differentiates along.
    """
    eps = hamiltonian.eps
    inv = scalar_div(1, eps * kappa)
    jets = [seed]
    for _ in range(count):
        f = jets[-1]
        jets.append(time_deriv(f, kind) + commutator(hamiltonian, f).scale(inv))
    return jets


def scaled_expand(elem: WeylElem) -> dict:
    """Split a BiSeries-coefficient element into {u_exp: TSeries-coefficient elem}."""
    slices: dict = {}
    for (m, n), c in elem.terms.items():
        if not isinstance(c, BiSeries):
            raise TypeError("scaled_expand needs BiSeries coefficients")
        for (te, ue), v in c.terms.items():
            w = slices.setdefault(ue, {})
            s = w.get((m, n))
            w[(m, n)] = (s + TSeries({te: v})) if s is not None else TSeries({te: v})
    out = {}
    for ue, terms in slices.items():
        terms = {k: v for k, v in terms.items() if not v.is_zero()}
        if terms:
            out[ue] = WeylElem(terms, elem.eps)
    return out

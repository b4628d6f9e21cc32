"""Catalog of the eight quantized Painleve flows and their exact identities.

This module is the single source of truth for system-specific data:

* the registry of flow names (``qp1`` .. ``qp6``) with time kinds, mass
  arities and scaling dimensions;
* polynomial Hamiltonian builders over any Weyl ring (``build_hamiltonian``
  works from a parameter point, ``build_from_generators`` from caller-supplied
  generators so coalescence maps can reuse the same expressions);
* Heisenberg jets of each Hamiltonian in its native time frame;
* formal words in the jet letters ``J_k`` / ``K_k`` and the coordinate
  letters ``q^m`` / ``p^n`` (:class:`JetWord`), with a Leibniz derivative and
  exact evaluation back into the Weyl ring;
* the closed catalog of identities each flow satisfies: the third-order
  precursor, the polynomial Hamiltonian form (plain and, where it exists,
  factorized), commutator triples, and coordinate-reconstruction words;
* bilinear tau rows (orders 1, 3, 4), the paired-transform rows, and the
  ladder expansion that turns any row into a :class:`JetWord`;
* shared-frame prefactor data for the flavored partition sums and the exact
  constants of every strong-coupling branch.

Coefficients of catalog words are kept fully symbolic via
:class:`ParamScalar`: exact rational functions of ``eps1``, ``eps2`` and the
masses whose denominators are monomials in ``eps1, eps2, kappa, eps``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

from .core import (
    INF,
    AlgNum,
    I_UNIT,
    Rat,
    SQRT2,
    SQRT3,
    ParamPoint,
    TimeKind,
    TSeries,
    rat,
    series_dlog,
)
from .weyl import WeylElem, generators, heisenberg_jets, weyl_pow

__all__ = [
    "SYSTEMS",
    "NotInCatalog",
    "BadMassArity",
    "canonical_system",
    "SystemInfo",
    "system_info",
    "ParamPoly",
    "ParamScalar",
    "JetWord",
    "jet_word_grades",
    "jetword_to_weyl",
    "root_variables",
    "build_from_generators",
    "build_hamiltonian",
    "system_jets",
    "jet_equation",
    "equation_names",
    "BilinearAtom",
    "BilinearOp",
    "ladder_expand",
    "tau_rows",
    "okamoto_rows",
    "translation_rows",
    "ZakPrefactor",
    "weak_flavor_count",
    "zak_prefactor",
    "StrongBranchConfig",
    "strong_branch_config",
]

_R0 = rat(0)
_R1 = rat(1)
_HALF = rat(1, 2)


# --------------------------------------------------------------------------
# registry
# --------------------------------------------------------------------------

class NotInCatalog(LookupError):
    """Requested system, equation or row is not part of the catalog."""


class BadMassArity(ValueError):
    """Mass tuple has the wrong length or violates a linear constraint."""


SYSTEMS = ("qp1", "qp2", "qp3_1", "qp3_2", "qp3_3", "qp4", "qp5", "qp6")

_ALIASES = {
    "qp31": "qp3_1",
    "qp32": "qp3_2",
    "qp33": "qp3_3",
}


def canonical_system(name: str) -> str:
    """Normalize a system name; raise :class:`NotInCatalog` if unknown."""
    key = name.strip().lower().replace("-", "_").replace(" ", "")
    key = _ALIASES.get(key, key)
    if key not in SYSTEMS:
        raise NotInCatalog("unknown system %r" % (name,))
    return key


@dataclass(frozen=True)
class SystemInfo:
    name: str
    time_kind: str
    n_masses: int
    masses_sum_to_zero: bool
    dims: tuple  # scaling weights of (q, p, t, H); every parameter has weight 1
    dim_denominator: int  # lcm of the weight denominators


_INFO = {
    "qp1": SystemInfo("qp1", TimeKind.PLAIN, 0, False,
                      (rat(2, 5), rat(3, 5), rat(4, 5), rat(6, 5)), 5),
    "qp2": SystemInfo("qp2", TimeKind.PLAIN, 1, False,
                      (rat(1, 3), rat(2, 3), rat(2, 3), rat(4, 3)), 3),
    "qp3_1": SystemInfo("qp3_1", TimeKind.LOG, 2, False,
                        (rat(1), rat(0), rat(2), rat(2)), 1),
    "qp3_2": SystemInfo("qp3_2", TimeKind.LOG, 1, False,
                        (rat(2), rat(-1), rat(3), rat(2)), 1),
    "qp3_3": SystemInfo("qp3_3", TimeKind.LOG, 0, False,
                        (rat(2), rat(-1), rat(4), rat(2)), 1),
    "qp4": SystemInfo("qp4", TimeKind.PLAIN, 3, True,
                      (rat(1, 2), rat(1, 2), rat(1, 2), rat(3, 2)), 2),
    "qp5": SystemInfo("qp5", TimeKind.LOG, 3, False,
                      (rat(1), rat(0), rat(1), rat(2)), 1),
    "qp6": SystemInfo("qp6", TimeKind.LOG_SHIFT, 4, False,
                      (rat(0), rat(1), rat(0), rat(2)), 1),
}


def system_info(system: str) -> SystemInfo:
    return _INFO[canonical_system(system)]


# --------------------------------------------------------------------------
# exact parameter scalars
# --------------------------------------------------------------------------
#
# ParamPoly: polynomial in (eps1, eps2, m1, m2, m3, m4) over the rationals,
# stored as {exponent 6-tuple: Rat}.  ParamScalar: ParamPoly divided by a
# monomial eps1^a eps2^b kappa^c eps^d; sums re-express kappa = eps2 - eps1
# and eps = eps1 + eps2 inside the numerator, so zero tests stay exact.

_NVARS = 6


class ParamPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for exps, c in terms.items():
                c = rat(c) if isinstance(c, int) else c
                if c != 0:
                    prev = data.get(exps)
                    if prev is None:
                        data[exps] = c
                    else:
                        s = prev + c
                        if s == 0:
                            del data[exps]
                        else:
                            data[exps] = s
        self.terms = data

    @staticmethod
    def const(c) -> "ParamPoly":
        return ParamPoly({(0,) * _NVARS: rat(c) if isinstance(c, int) else c})

    @staticmethod
    def variable(i: int) -> "ParamPoly":
        exps = [0] * _NVARS
        exps[i] = 1
        return ParamPoly({tuple(exps): _R1})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self):
        """Set of total degrees over the terms (all parameters weigh 1)."""
        return {sum(exps) for exps in self.terms}

    def eval(self, point: ParamPoint):
        vals = (point.eps1, point.eps2) + tuple(point.masses)
        total = _R0
        for exps, c in self.terms.items():
            factor = c
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                if i >= len(vals):
                    raise BadMassArity(
                        "parameter polynomial needs mass %d" % (i - 1))
                factor = factor * vals[i] ** e
            total = total + factor
        return total

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exps, c in other.terms.items():
            prev = out.get(exps)
            s = c if prev is None else prev + c
            if s == 0:
                out.pop(exps, None)
            else:
                out[exps] = s
        res = ParamPoly.__new__(ParamPoly)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = ParamPoly.__new__(ParamPoly)
        res.terms = {exps: -c for exps, c in self.terms.items()}
        return res

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ParamPoly):
            out = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    exps = tuple(a + b for a, b in zip(e1, e2))
                    c = c1 * c2
                    prev = out.get(exps)
                    s = c if prev is None else prev + c
                    if s == 0:
                        out.pop(exps, None)
                    else:
                        out[exps] = s
            res = ParamPoly.__new__(ParamPoly)
            res.terms = out
            return res
        if isinstance(other, int):
            other = rat(other)
        if isinstance(other, type(_R0)) or isinstance(other, Rat):
            if other == 0:
                return ParamPoly({})
            res = ParamPoly.__new__(ParamPoly)
            res.terms = {e: c * other for e, c in self.terms.items()}
            return res
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = ParamPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return "ParamPoly(%r)" % (self.terms,)


def _as_poly(x):
    if isinstance(x, ParamPoly):
        return x
    if isinstance(x, int):
        return ParamPoly.const(rat(x))
    if isinstance(x, type(_R0)) or isinstance(x, Rat):
        return ParamPoly.const(x)
    return NotImplemented


_E1 = ParamPoly.variable(0)
_E2 = ParamPoly.variable(1)
_MASS = tuple(ParamPoly.variable(2 + i) for i in range(4))
_EPS = _E1 + _E2
_KAP = _E2 - _E1


def _esym(ms, k: int) -> ParamPoly:
    """Elementary symmetric polynomial e_k of the given mass polynomials."""
    if k == 0:
        return ParamPoly.const(1)
    total = ParamPoly({})
    for combo in itertools.combinations(ms, k):
        prod = ParamPoly.const(1)
        for m in combo:
            prod = prod * m
        total = total + prod
    return total


def _wsym(ms, k: int) -> ParamPoly:
    """e_k of the squared masses (the even invariants w_{2k})."""
    return _esym([m * m for m in ms], k)


class ParamScalar:
    """Exact rational function: ParamPoly / (eps1^a eps2^b kappa^c eps^d)."""

    __slots__ = ("num", "den")

    def __init__(self, num: ParamPoly, den=(0, 0, 0, 0)):
        if num.is_zero():
            den = (0, 0, 0, 0)
        self.num = num
        self.den = tuple(den)

    @staticmethod
    def of(x) -> "ParamScalar":
        if isinstance(x, ParamScalar):
            return x
        poly = _as_poly(x)
        if poly is NotImplemented:
            raise TypeError("cannot build ParamScalar from %r" % (x,))
        return ParamScalar(poly)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def eval(self, point: ParamPoint):
        a, b, c, d = self.den
        den = point.eps1 ** a * point.eps2 ** b * point.kappa ** c * point.eps ** d
        return self.num.eval(point) / den

    def degrees(self):
        drop = sum(self.den)
        return {g - drop for g in self.num.degrees()}

    def _aligned(self, other: "ParamScalar"):
        den = tuple(max(a, b) for a, b in zip(self.den, other.den))
        return self._raise_to(den), other._raise_to(den), den

    def _raise_to(self, den) -> ParamPoly:
        num = self.num
        for i, base in enumerate((_E1, _E2, _KAP, _EPS)):
            delta = den[i] - self.den[i]
            for _ in range(delta):
                num = num * base
        return num

    def __add__(self, other):
        other = _coerce_ps(other)
        if other is NotImplemented:
            return NotImplemented
        n1, n2, den = self._aligned(other)
        return ParamScalar(n1 + n2, den)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce_ps(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ParamScalar):
            return ParamScalar(
                self.num * other.num,
                tuple(a + b for a, b in zip(self.den, other.den)),
            )
        poly = _as_poly(other)
        if poly is NotImplemented:
            return NotImplemented
        return ParamScalar(self.num * poly, self.den)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = ParamScalar.of(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _coerce_ps(other)
        if other is NotImplemented:
            return NotImplemented
        n1, n2, _ = self._aligned(other)
        return (n1 - n2).is_zero()

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return "ParamScalar(%r, den=%r)" % (self.num, self.den)


def _coerce_ps(x):
    if isinstance(x, ParamScalar):
        return x
    poly = _as_poly(x)
    if poly is NotImplemented:
        return NotImplemented
    return ParamScalar(poly)


def _pfrac(num, eps1=0, eps2=0, kappa=0, eps=0) -> ParamScalar:
    poly = _as_poly(num)
    if poly is NotImplemented:
        raise TypeError("bad numerator %r" % (num,))
    return ParamScalar(poly, (eps1, eps2, kappa, eps))


def _ps(x) -> ParamScalar:
    return ParamScalar.of(x)


def _ts(terms) -> TSeries:
    """TSeries in t with ParamScalar coefficients."""
    return TSeries({e: _ps(c) for e, c in terms.items()})


_TS_ZERO = TSeries.zero()


# --------------------------------------------------------------------------
# words in jet letters
# --------------------------------------------------------------------------

_COORD = ("q", "p")
_JETLIKE = ("J", "K")


def _norm_word(letters):
    out = []
    for kind, k in letters:
        if kind in _COORD and k == 0:
            continue
        if out and out[-1][0] == kind and kind in _COORD:
            merged = out[-1][1] + k
            out.pop()
            if merged:
                out.append((kind, merged))
        else:
            out.append((kind, k))
    return tuple(out)


def _coerce_series(x) -> TSeries:
    if isinstance(x, TSeries):
        return x
    if isinstance(x, (ParamPoly, ParamScalar)):
        return TSeries.const(_ps(x))
    if isinstance(x, int):
        return TSeries.const(rat(x))
    return TSeries.const(x)


class JetWord:
    """Formal sum of words in the letters J_k, K_k, q^m, p^n.

    Coefficients are TSeries in t (ParamScalar or rational scalars).  Words
    multiply by concatenation; adjacent coordinate letters merge exponents,
    jet letters never merge.  The prime maps J_k -> J_{k+1} (and K alike) by
    the Leibniz rule, with the coefficient differentiated in the word's time
    kind; words holding coordinate letters cannot be primed.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for word, coeff in terms.items():
                coeff = _coerce_series(coeff)
                if coeff.is_zero():
                    continue
                key = _norm_word(word)
                prev = data.get(key)
                s = coeff if prev is None else prev + coeff
                if s.is_zero():
                    data.pop(key, None)
                else:
                    data[key] = s
        self.terms = data

    # -- constructors -------------------------------------------------------
    @staticmethod
    def zero() -> "JetWord":
        return JetWord()

    @staticmethod
    def const(coeff) -> "JetWord":
        return JetWord({(): coeff})

    @staticmethod
    def one() -> "JetWord":
        return JetWord({(): _R1})

    @staticmethod
    def letter(kind: str, k: int, coeff=1) -> "JetWord":
        if kind not in _COORD and kind not in _JETLIKE:
            raise ValueError("unknown letter kind %r" % (kind,))
        return JetWord({((kind, k),): coeff})

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def jet_degree(self) -> int:
        """Largest number of jet letters in any word."""
        if not self.terms:
            return 0
        return max(
            sum(1 for kind, _ in word if kind in _JETLIKE)
            for word in self.terms
        )

    def letters_used(self):
        kinds = set()
        for word in self.terms:
            for kind, _ in word:
                kinds.add(kind)
        return kinds

    def __eq__(self, other):
        if not isinstance(other, JetWord):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        return "JetWord(%d terms)" % (len(self.terms),)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, JetWord):
            return NotImplemented
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            prev = out.get(word)
            s = coeff if prev is None else prev + coeff
            if s.is_zero():
                out.pop(word, None)
            else:
                out[word] = s
        res = JetWord.__new__(JetWord)
        res.terms = out
        return res

    def __neg__(self):
        res = JetWord.__new__(JetWord)
        res.terms = {w: c.scale(-_R1) for w, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if not isinstance(other, JetWord):
            return NotImplemented
        return self + (-other)

    def scale(self, x) -> "JetWord":
        """Multiply every coefficient by a central scalar or TSeries."""
        out = {}
        if isinstance(x, TSeries):
            for w, c in self.terms.items():
                s = c * x
                if not s.is_zero():
                    out[w] = s
        else:
            if isinstance(x, int):
                x = rat(x)
            if isinstance(x, (ParamPoly, ParamScalar)):
                x = _ps(x)
            for w, c in self.terms.items():
                s = c.scale(x)
                if not s.is_zero():
                    out[w] = s
        res = JetWord.__new__(JetWord)
        res.terms = out
        return res

    def __mul__(self, other):
        if isinstance(other, JetWord):
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    word = _norm_word(w1 + w2)
                    coeff = c1 * c2
                    prev = out.get(word)
                    s = coeff if prev is None else prev + coeff
                    if s.is_zero():
                        out.pop(word, None)
                    else:
                        out[word] = s
            res = JetWord.__new__(JetWord)
            res.terms = out
            return res
        return self.scale(other)

    def __rmul__(self, other):
        # non-JetWord factors are central
        return self.scale(other)

    def __pow__(self, n: int):
        out = JetWord.one()
        for _ in range(n):
            out = out * self
        return out

    # -- derivative ---------------------------------------------------------
    def prime(self, kind: str) -> "JetWord":
        out = JetWord.zero()
        for word, coeff in self.terms.items():
            dc = series_dlog(coeff, kind)
            if not dc.is_zero():
                out = out + JetWord({word: dc})
            for i, (lk, k) in enumerate(word):
                if lk in _COORD:
                    raise ValueError(
                        "cannot differentiate a word holding coordinate letters")
                bumped = word[:i] + ((lk, k + 1),) + word[i + 1:]
                out = out + JetWord({bumped: coeff})
        return out


def _comm(a: JetWord, b: JetWord) -> JetWord:
    return a * b - b * a


def _acomm(a: JetWord, b: JetWord) -> JetWord:
    return a * b + b * a


def _J(k: int) -> JetWord:
    return JetWord.letter("J", k)


def _lq(m: int) -> JetWord:
    return JetWord.letter("q", m)


def _lp(n: int) -> JetWord:
    return JetWord.letter("p", n)


def jet_word_grades(word: JetWord, system: str):
    """Scaling weights present in a word; a singleton means homogeneous.

    Jet letters weigh [H] + k([H]-2) in plain time and 2 in the log frames;
    every parameter (eps1, eps2, masses, and the denominator monomials)
    weighs 1, t weighs its system dimension.
    """
    info = system_info(system)
    qd, pd, td, hd = info.dims
    if info.time_kind == TimeKind.PLAIN:
        def jdim(k):
            return hd + k * (hd - rat(2))
    else:
        def jdim(k):
            return rat(2)
    grades = set()
    for letters, coeff in word.terms.items():
        base = rat(0)
        for kind, k in letters:
            if kind in _JETLIKE:
                base = base + jdim(k)
            elif kind == "q":
                base = base + k * qd
            else:
                base = base + k * pd
        for e, s in coeff.terms.items():
            g0 = base + e * td
            if isinstance(s, (ParamScalar, ParamPoly)):
                degs = s.degrees()
            else:
                degs = {0}
            for d in degs:
                grades.add(g0 + d)
    return grades


def jetword_to_weyl(word, jets, point, kjets=None, gens=None) -> WeylElem:
    """Evaluate a word on concrete jets, returning an exact Weyl element.

    ``jets`` feeds the J letters (index = jet order), ``kjets`` the K
    letters, and ``gens`` (a (q, p, ...) tuple) the coordinate letters.
    Coefficients are evaluated at ``point`` before entering the ring.
    """
    if not word.terms:
        eps = jets[0].eps
        return WeylElem.zero(eps)
    eps = jets[0].eps
    total = WeylElem.zero(eps)
    for letters, coeff in word.terms.items():
        evaluated = TSeries(
            {e: (s.eval(point) if isinstance(s, (ParamScalar, ParamPoly)) else s)
             for e, s in coeff.terms.items()},
            coeff.order,
        )
        elem = WeylElem.from_coeff(evaluated, eps)
        for kind, k in letters:
            if kind == "J":
                source = jets
            elif kind == "K":
                if kjets is None:
                    raise ValueError("word uses K letters but kjets is None")
                source = kjets
            else:
                if gens is None:
                    raise ValueError("word uses coordinate letters but gens is None")
                elem = elem * weyl_pow(gens[0] if kind == "q" else gens[1], k)
                continue
            if k >= len(source):
                raise ValueError(
                    "word needs jet index %d, only %d available" % (k, len(source) - 1))
            elem = elem * source[k]
        total = total + elem
    return total


# --------------------------------------------------------------------------
# Hamiltonian builders and jets
# --------------------------------------------------------------------------

def root_variables(system: str, masses, kappa) -> dict:
    """Root-variable combinations of the masses, over any commutative ring."""
    name = canonical_system(system)
    if name in ("qp6",):
        m1, m2, m3, m4 = masses
        return {
            "a0": kappa - m1 - m3,
            "a1": m4 - m2,
            "a2": m1 - m4,
            "a3": m2 + m4,
            "a4": m3 - m1,
        }
    if name == "qp5":
        m1, m2, m3 = masses
        return {
            "a0": kappa - m1 - m3,
            "a1": m1 - m2,
            "a2": m3 - m1,
            "a3": m1 + m2,
        }
    if name == "qp3_1":
        m1, m2 = masses
        return {
            "a0p": kappa - m1 - m2,
            "a1p": m1 + m2,
            "a0m": kappa + m2 - m1,
            "a1m": m1 - m2,
        }
    if name == "qp3_2":
        (m1,) = masses
        return {"a0": kappa - m1 - m1, "a1": m1 + m1}
    if name == "qp4":
        m1, m2, m3 = masses
        return {"a0": kappa + m2 - m3, "a1": m3 - m1, "a2": m1 - m2}
    if name == "qp2":
        (m,) = masses
        return {"a0": kappa - m - m, "a1": m + m}
    return {}


def _check_masses(info: SystemInfo, masses):
    if len(masses) != info.n_masses:
        raise BadMassArity(
            "%s expects %d masses, got %d" % (info.name, info.n_masses, len(masses)))


def build_from_generators(system, gens, masses, kappa) -> WeylElem:
    """Left side of the printed Hamiltonian over caller-supplied generators.

    For the log-frame systems this is t*H (and for qp6 the t(t-1)-scaled
    form), i.e. exactly the polynomial whose Heisenberg jets the catalog
    equations are written in.  ``masses`` and ``kappa`` may be ring scalars
    or central elements of the same ring as ``gens``.
    """
    name = canonical_system(system)
    info = _INFO[name]
    q, p, t, one = gens

    def cen(x):
        if isinstance(x, WeylElem):
            return x
        return one.scale(rat(x) if isinstance(x, int) else x)

    ms = [cen(m) for m in masses]
    _check_masses(info, ms)
    if info.masses_sum_to_zero:
        total = ms[0]
        for m in ms[1:]:
            total = total + m
        if not total.is_zero():
            raise BadMassArity("%s masses must sum to zero" % (name,))
    kap = cen(kappa)
    roots = root_variables(name, ms, kap)

    if name == "qp1":
        return (p * p).scale(_HALF) - (q * q * q).scale(rat(2)) - t * q

    if name == "qp2":
        a1 = roots["a1"]
        return (p * p).scale(_HALF) - q * p * q - (t * p).scale(_HALF) - a1 * q

    if name == "qp4":
        a1, a2 = roots["a1"], roots["a2"]
        h = p * q * p - q * p * q - (t * (q * p + p * q)).scale(_HALF)
        h = h - a1 * p - a2 * q + ((a1 - a2) * t).scale(rat(1, 3))
        return h

    if name == "qp5":
        a1, a2, a3 = roots["a1"], roots["a2"], roots["a3"]
        h = p * q * (q - t) * p
        h = h + (q * p * (q - t) + (q - t) * p * q).scale(_HALF)
        h = h + ((a1 + a3) * (p * q + q * p)).scale(_HALF)
        h = h + a2 * t * p + a1 * q
        h = h - ((a1 - a2 - a2 - a3) * t).scale(rat(1, 4))
        h = h + ((a1 + a3) * (a1 + a3)).scale(rat(1, 4))
        return h

    if name == "qp3_1":
        a1p, a1m = roots["a1p"], roots["a1m"]
        h = q * p * (p + one) * q
        h = h + ((a1p + a1m) * (p * q + q * p)).scale(_HALF)
        h = h + a1m * q + t * p + t.scale(_HALF)
        h = h + ((a1p + a1m) * (a1p + a1m)).scale(rat(1, 4))
        return h

    if name == "qp3_2":
        a1 = roots["a1"]
        h = q * p * p * q + (a1 * (p * q + q * p)).scale(_HALF)
        h = h + t * p - q + ms[0] * ms[0]
        return h

    if name == "qp3_3":
        return q * p * p * q - q - t * weyl_pow(q, -1)

    # qp6
    m1, m2, m3, m4 = ms
    a0, a1, a2, a3, a4 = (roots[k] for k in ("a0", "a1", "a2", "a3", "a4"))
    a0k = a0 - kap
    zero_c = one.scale(_R0)
    h = WeylElem.zero(q.eps)
    for x, y, z in itertools.permutations((zero_c, t, one)):
        h = h + (q - x) * p * (q - y) * p * (q - z)
    h = h.scale(rat(1, 6))
    h = h - (a0k * (q * p * (q - one) + (q - one) * p * q)).scale(_HALF)
    h = h - (a3 * (q * p * (q - t) + (q - t) * p * q)).scale(_HALF)
    h = h - (a4 * ((q - t) * p * (q - one) + (q - one) * p * (q - t))).scale(_HALF)
    h = h + a2 * (a1 + a2) * q
    quad = a0k * a0k + a1 * a1 + a3 * a3 + a4 * a4
    h = h + (quad * (one + t)).scale(rat(1, 12))
    # (a3 + a4)^2, with the cross term: the squared-sum variant breaks every
    # t-derivative identity by a central multiple of a3*a4
    s34 = a3 + a4
    h = h - ((s34 * s34) * t).scale(rat(1, 4))
    h = h - ((a4 + a0k) * (a4 + a0k)).scale(rat(1, 4))
    return h


def build_hamiltonian(system, point: ParamPoint, order=INF) -> WeylElem:
    """Printed Hamiltonian at an exact parameter point."""
    name = canonical_system(system)
    gens = generators(point.eps, order)
    return build_from_generators(name, gens, point.masses, point.kappa)


def system_jets(system, point: ParamPoint, count: int, order=INF) -> list:
    """Heisenberg jets [G, G', ..., G^(count)] in the native time frame."""
    name = canonical_system(system)
    info = _INFO[name]
    g = build_hamiltonian(name, point, order)
    return heisenberg_jets(g, g, count, info.time_kind, point.kappa)


# --------------------------------------------------------------------------
# catalog equations (formal words; every identity is written as word == 0)
# --------------------------------------------------------------------------

def _eqs_qp1():
    J0, J1, J2, J3 = _J(0), _J(1), _J(2), _J(3)
    kap = _ps(_KAP)
    kap2 = _ps(_KAP * _KAP)
    eps = _ps(_EPS)
    t1 = _ts({1: 1})
    eqs = {}
    eqs["precursor"] = J3.scale(kap2) + (J1 * J1).scale(6) + JetWord.const(t1)
    eqs["hamForm"] = (
        (J2 * J2).scale(_ps(_KAP * _KAP * _HALF))
        + (J1 * J1 * J1).scale(2)
        + J1.scale(t1)
        - J0
    )
    eqs["triple_0"] = _comm(J0, J1) - J2.scale(_ps(_EPS * _KAP))
    eqs["triple_1"] = _comm(J2, J1).scale(kap) - JetWord.const(eps)
    eqs["triple_2"] = (
        _comm(J0, J2).scale(kap)
        + ((J1 * J1).scale(6) + JetWord.const(t1)).scale(eps)
    )
    eqs["reconstructionQ"] = J1 + _lq(1)
    eqs["reconstructionP"] = J2.scale(kap) + _lp(1)
    return eqs


def _eqs_qp2():
    J0, J1, J2, J3 = _J(0), _J(1), _J(2), _J(3)
    m = _MASS[0]
    kap = _ps(_KAP)
    kap2 = _ps(_KAP * _KAP)
    eps = _ps(_EPS)
    t1 = _ts({1: 1})
    t2x = _ts({1: 2})
    const = _ps(m * m - _EPS * _EPS * rat(1, 4))
    eqs = {}
    eqs["precursor"] = (
        J3.scale(kap2) + (J1 * J1).scale(6) + J1.scale(t2x) - J0
    )
    eqs["hamForm"] = (
        (J2 * J2).scale(kap2)
        + (J1 * J1).scale(t2x)
        - _acomm(J0, J1)
        + (J1 * J1 * J1).scale(4)
        - JetWord.const(const)
    )
    eqs["hamFormTwisted"] = (
        (J2 * J2).scale(kap2)
        + J2.scale(_ps(_EPS * _KAP))
        + (J1 * J1).scale(t2x)
        - (J0 * J1).scale(2)
        + (J1 * J1 * J1).scale(4)
        - JetWord.const(const)
    )
    eqs["triple_0"] = _comm(J0, J1) - J2.scale(_ps(_EPS * _KAP))
    eqs["triple_1"] = (
        _comm(J0, J2).scale(kap)
        - (J0 - J1.scale(t2x) - (J1 * J1).scale(6)).scale(eps)
    )
    eqs["triple_2"] = _comm(J2, J1).scale(kap) - J1.scale(eps)
    eqs["reconstructionQ"] = (
        (_lq(1) * J1).scale(2)
        - J2.scale(kap)
        - JetWord.const(_ps(m + _EPS * _HALF))
    )
    eqs["reconstructionP"] = _lp(1) + J1.scale(2)
    return eqs


def _eqs_qp4():
    J0, J1, J2, J3 = _J(0), _J(1), _J(2), _J(3)
    ms = _MASS[:3]
    e2 = _esym(ms, 2)
    e3 = _esym(ms, 3)
    kap = _ps(_KAP)
    kap2 = _ps(_KAP * _KAP)
    eps = _ps(_EPS)
    t1 = _ts({1: 1})
    body = J0 - J1.scale(t1)
    hp = body + J2.scale(kap)
    hm = body - J2.scale(kap)
    eqs = {}
    eqs["precursor"] = (
        J3.scale(kap2)
        + (J1 * J1).scale(6)
        + body.scale(t1)
        + JetWord.const(_ps(e2 * 2 + _EPS * _EPS * _HALF))
    )
    eqs["hamForm"] = (
        (J2 * J2).scale(kap2)
        - body * body
        + (J1 * J1 * J1).scale(4)
        + J1.scale(_ps(e2 * 4 + _EPS * _EPS * 3))
        + JetWord.const(_ps(e3 * 4))
    )
    prod = JetWord.one()
    for m in ms:
        prod = prod * (J1 + JetWord.const(_ps(m + _EPS * _HALF)))
    eqs["hamFormTwisted"] = hp * hm - prod.scale(4)
    eqs["triple_0"] = _comm(J0, J1) - J2.scale(_ps(_EPS * _KAP))
    eqs["triple_1"] = _comm(hp, J1) - hp.scale(eps)
    eqs["triple_2"] = _comm(hm, J1) + hm.scale(eps)
    eqs["triple_3"] = (
        _comm(hp, hm)
        - ((J1 * J1).scale(12) + JetWord.const(_ps(e2 * 4 + _EPS * _EPS))).scale(eps)
    )
    eqs["reconstructionQ"] = (
        hp - ((J1 + JetWord.const(_ps(ms[1] + _EPS * _HALF))) * _lq(1)).scale(2)
    )
    eqs["reconstructionP"] = (
        hm + (_lp(1) * (J1 + JetWord.const(_ps(ms[2] + _EPS * _HALF)))).scale(2)
    )
    return eqs


def _eqs_qp5():
    J0, J1, J2, J3 = _J(0), _J(1), _J(2), _J(3)
    m1, m2, m3 = _MASS[:3]
    w2 = _wsym(_MASS[:3], 1)
    w4 = _wsym(_MASS[:3], 2)
    e3 = _esym(_MASS[:3], 3)
    wme = w2 - _EPS * _EPS
    kap2 = _ps(_KAP * _KAP)
    eps = _ps(_EPS)
    t1 = _ts({1: 1})
    t2 = _ts({2: 1})
    x = (
        (J1 * J1).scale(2)
        + (J0 - J1).scale(t2)
        - JetWord.const(_ts({2: wme * _HALF}))
    )
    wing = (J2 - J1).scale(_ts({1: _KAP}))
    hp = x + wing
    hm = x - wing
    eqs = {}
    eqs["precursor"] = (
        (J3 - J2.scale(2) + J1).scale(kap2)
        + (J1 * J1).scale(6)
        - _acomm(J0, J1).scale(2)
        + (J0 - J1).scale(t2)
        - JetWord.const(_ts({2: wme * _HALF}))
        + JetWord.const(_ts({1: e3 * 2}))
    )
    eqs["hamForm"] = (
        ((J2 - J1) * (J2 - J1)).scale(_ts({2: _KAP * _KAP}))
        - x * x
        + (J1 * J1 * J1 * J1).scale(4)
        - (J1 * J1).scale(_ts({2: (w2 - _EPS * _EPS * 3) * 2}))
        + J1.scale(_ts({3: e3 * 4}))
        - JetWord.const(_ts({4: w4 - wme * wme * rat(1, 4)}))
    )
    prod = JetWord.one()
    for s1, s2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        prod = prod * (
            J1.scale(2)
            + JetWord.const(_ts({1: m1 * s1 + m2 * s2 + m3 * (s1 * s2) + _EPS}))
        )
    eqs["hamFormTwisted"] = (hp * hm).scale(4) - prod
    eqs["triple_0"] = _comm(J0, J1) - (J2 - J1).scale(_ps(_EPS * _KAP))
    eqs["triple_1"] = _comm(hp, J1) - hp.scale(_ts({1: _EPS}))
    eqs["triple_2"] = _comm(hm, J1) + hm.scale(_ts({1: _EPS}))
    eqs["triple_3"] = (
        _comm(hp, hm)
        - (
            (J1 * J1 * J1).scale(4)
            - J1.scale(_ts({2: wme}))
            + JetWord.const(_ts({3: e3}))
        ).scale(_ts({1: _EPS * 4}))
    )
    # normal-ordering -t^{-1} J1 forces the a2-rooted combination m1-m3+eps
    m13e = m1 - m3 + _EPS
    eqs["reconstructionQ"] = (
        J1.scale(_ts({-1: 1}))
        + _lq(1) * _lp(2)
        + _lq(1) * _lp(1)
        + _lp(1).scale(_ps(m13e))
        + JetWord.const(_ps(m13e * _HALF - m2 * _HALF))
    )
    b1 = J1.scale(2) + JetWord.const(_ts({1: m1 - m2 - m3 + _EPS}))
    b2 = J1.scale(2) + JetWord.const(_ts({1: m2 - m1 - m3 + _EPS}))
    eqs["reconstructionP"] = (
        hp * _lp(1) - (b1 * b2 * (_lp(1) + JetWord.one())).scale(_HALF)
    )
    return eqs


def _eqs_qp3_1():
    J0, J1, J2, J3 = _J(0), _J(1), _J(2), _J(3)
    m1, m2 = _MASS[:2]
    w2 = m1 * m1 + m2 * m2
    e2 = m1 * m2
    kap = _ps(_KAP)
    kap2 = _ps(_KAP * _KAP)
    eps = _ps(_EPS)
    t1 = _ts({1: 1})
    t2 = _ts({2: 1})
    eqs = {}
    eqs["precursor"] = (
        (J3 - J2.scale(2) + J1).scale(kap2)
        + (J1 * J1).scale(6)
        - _acomm(J0, J1).scale(2)
        - JetWord.const(_ts({2: _HALF}))
        + JetWord.const(_ts({1: e2 * 2}))
    )
    eqs["hamForm"] = (
        ((J2 - J1) * (J2 - J1)).scale(kap2)
        - (J1 * (J0 - J1) * J1).scale(4)
        + (J0 - J1).scale(t2)
        + J1.scale(_ts({1: e2 * 4}))
        - JetWord.const(_ts({2: w2 - _EPS * _EPS}))
    )
    wing = (J2 - J1).scale(kap)
    eqs["hamFormTwisted"] = (
        wing * (wing + J1.scale(_ps(_EPS * 4)))
        - (J0 - J1) * ((J1 * J1).scale(4) - JetWord.const(t2))
        + J1.scale(_ts({1: e2 * 4}))
        - JetWord.const(_ts({2: w2 - _EPS * _EPS}))
    )
    eqs["triple_0"] = _comm(J0, J1) - (J2 - J1).scale(_ps(_EPS * _KAP))
    eqs["triple_1"] = (
        _comm(J0, wing)
        - (
            _acomm(J0, J1).scale(2)
            - (J1 * J1).scale(6)
            + JetWord.const(_ts({2: _HALF}))
            - JetWord.const(_ts({1: e2 * 2}))
        ).scale(eps)
    )
    eqs["triple_2"] = (
        _comm(J2, J1).scale(kap)
        - (J1 * J1).scale(_ps(_EPS * 2))
        + JetWord.const(_ts({2: _EPS * _HALF}))
    )
    eqs["reconstructionQ"] = (
        _lq(1) * (JetWord.const(t2) - (J1 * J1).scale(4))
        - (
            wing
            + J1.scale(_ps((m1 + _EPS) * 2))
            - JetWord.const(_ts({1: m2}))
        ).scale(_ts({1: 2}))
    )
    eqs["reconstructionP"] = (
        _lp(1) - J1.scale(_ts({-1: 1})) + JetWord.const(_HALF)
    )
    return eqs


def _eqs_qp3_2():
    J0, J1, J2, J3 = _J(0), _J(1), _J(2), _J(3)
    m1 = _MASS[0]
    kap = _ps(_KAP)
    kap2 = _ps(_KAP * _KAP)
    eps = _ps(_EPS)
    t1 = _ts({1: 1})
    t2 = _ts({2: 1})
    wing = (J2 - J1).scale(kap)
    eqs = {}
    eqs["precursor"] = (
        (J3 - J2.scale(2) + J1).scale(kap2)
        + (J1 * J1).scale(6)
        - _acomm(J0, J1).scale(2)
        + JetWord.const(_ts({1: m1 * 2}))
    )
    eqs["hamForm"] = (
        ((J2 - J1) * (J2 - J1)).scale(kap2)
        - (J1 * (J0 - J1) * J1).scale(4)
        + J1.scale(_ts({1: m1 * 4}))
        - JetWord.const(t2)
    )
    eqs["hamFormTwisted"] = (
        wing * (wing + J1.scale(_ps(_EPS * 4)))
        - ((J0 - J1) * J1 * J1).scale(4)
        + J1.scale(_ts({1: m1 * 4}))
        - JetWord.const(t2)
    )
    eqs["triple_0"] = _comm(J0, J1) - (J2 - J1).scale(_ps(_EPS * _KAP))
    eqs["triple_1"] = (
        _comm(J0, wing)
        - (
            _acomm(J0, J1).scale(2)
            - (J1 * J1).scale(6)
            - JetWord.const(_ts({1: m1 * 2}))
        ).scale(eps)
    )
    eqs["triple_2"] = _comm(J2, J1).scale(kap) - (J1 * J1).scale(_ps(_EPS * 2))
    eqs["reconstructionQ"] = (
        _lq(1) * J1 * J1
        + (
            wing
            + J1.scale(_ps((m1 + _EPS) * 2))
            - JetWord.const(t1)
        ).scale(_ts({1: _HALF}))
    )
    eqs["reconstructionP"] = _lp(1) - J1.scale(_ts({-1: 1}))
    return eqs


def _eqs_qp3_3():
    J0, J1, J2, J3 = _J(0), _J(1), _J(2), _J(3)
    kap = _ps(_KAP)
    kap2 = _ps(_KAP * _KAP)
    eps = _ps(_EPS)
    t1 = _ts({1: 1})
    wing = (J2 - J1).scale(kap)
    eqs = {}
    eqs["precursor"] = (
        (J3 - J2.scale(2) + J1).scale(kap2)
        + (J1 * J1).scale(6)
        - _acomm(J0, J1).scale(2)
        + JetWord.const(_ts({1: 2}))
    )
    eqs["hamForm"] = (
        ((J2 - J1) * (J2 - J1)).scale(kap2)
        - (J1 * (J0 - J1) * J1).scale(4)
        + J1.scale(_ts({1: 4}))
    )
    eqs["hamFormTwisted"] = (
        wing * (wing + J1.scale(_ps(_EPS * 4)))
        - ((J0 - J1) * J1 * J1).scale(4)
        + J1.scale(_ts({1: 4}))
    )
    eqs["triple_0"] = _comm(J0, J1) - (J2 - J1).scale(_ps(_EPS * _KAP))
    eqs["triple_1"] = (
        _comm(J0, wing)
        - (
            _acomm(J0, J1).scale(2)
            - (J1 * J1).scale(6)
            - JetWord.const(_ts({1: 2}))
        ).scale(eps)
    )
    eqs["triple_2"] = _comm(J2, J1).scale(kap) - (J1 * J1).scale(_ps(_EPS * 2))
    eqs["reconstructionQ"] = _lq(1) * J1 + JetWord.const(t1)
    eqs["reconstructionP"] = wing - _lp(1).scale(_ts({1: 2}))
    return eqs


def _eqs_qp6():
    J0, J1, J2, J3 = _J(0), _J(1), _J(2), _J(3)
    m1, m2, m3, m4 = _MASS
    w2 = _wsym(_MASS, 1)
    w4 = _wsym(_MASS, 2)
    w6 = _wsym(_MASS, 3)
    e4 = _esym(_MASS, 4)
    eps2_sq = _EPS * _EPS
    w2t = w2 - eps2_sq * 2
    s34e4 = e4 * _HALF - w4 * rat(1, 4) + w2 * w2 * rat(1, 16)
    kap2 = _ps(_KAP * _KAP)
    eps = _ps(_EPS)
    tshift = TSeries({2: _ps(1), 1: _ps(-1)})  # t(t-1)
    two_t_minus_1 = _ts({1: 2, 0: -1})
    c6 = _ps(w2t * rat(1, 6))
    h0 = J1.scale(_ts({1: 1})) - (J0 - JetWord.const(c6)).scale(tshift)
    h1 = J1.scale(_ts({1: 1, 0: -1})) - (J0 + JetWord.const(c6)).scale(tshift)
    h2 = (J2 - J1.scale(two_t_minus_1)).scale(_ps(_KAP))
    eqs = {}

    def _prec(low_order_reading: bool):
        word = (
            J3 - J2.scale(_ts({1: 4, 0: -2}))
            + J1.scale(_ts({2: 2, 1: -2, 0: 1}))
        ).scale(kap2)
        word = word + (J1 * J1).scale(6)
        word = word - _acomm(J0, J1).scale(_ts({1: 2, 0: -1})).scale(2)
        word = word + (J0 * J0).scale(tshift).scale(2)
        if low_order_reading:
            # literal reading: -2(1 + t(t-1) J1) inside the w-term
            tail = JetWord.const(_ts({0: 2})) + J1.scale(tshift).scale(2)
        else:
            tail = J1.scale(_ts({2: 2, 1: -2, 0: 2}))
        word = word + (
            J0.scale(_ts({3: 2, 2: -3, 1: 1})) - tail
        ).scale(_ps(w2t * rat(1, 3)))
        inner = TSeries({0: _ps(e4), 1: _ps(s34e4 - e4)})
        word = word - JetWord.const(inner * tshift).scale(2)
        return word

    eqs["precursor"] = _prec(False)
    eqs["precursor_literal"] = _prec(True)
    ham_const = (
        w6 - w2 * e4
        + (e4 + s34e4) * eps2_sq * 4
        - w2t * w2t * eps2_sq * rat(1, 4)
    )
    t3 = tshift * tshift * tshift
    eqs["hamForm"] = (
        (h2 * h2).scale(tshift)
        + (h0 * h1 * h0 - h1 * h0 * h1).scale(4)
        - _acomm(h0, h1).scale(tshift).scale(_ps(w2 - eps2_sq * 6))
        + (
            h1.scale(_ps(e4)) - h0.scale(_ps(s34e4))
        ).scale(tshift * tshift).scale(4)
        - JetWord.const(t3.scale(_ps(ham_const)))
    )
    eqs["triple_0"] = (
        _comm(J0, J1) - (J2 - J1.scale(two_t_minus_1)).scale(_ps(_EPS * _KAP))
    )
    inner0 = (
        h0 * h0 - _acomm(h0, h1)
        - h0.scale(tshift).scale(_ps(w2t * _HALF))
        + JetWord.const((tshift * tshift).scale(_ps(e4)))
    )
    eqs["triple_1"] = _comm(h2, h0) - inner0.scale(_ps(_EPS * 2))
    # mirror of triple_1 under the point swap 0 <-> 1, which sends
    # (h0, h1, h2) to (-h1, -h0, -h2) and e4 to its sigma_34 partner; the
    # w-term therefore enters with the opposite sign from triple_1
    inner1 = (
        h1 * h1 - _acomm(h0, h1)
        + h1.scale(tshift).scale(_ps(w2t * _HALF))
        + JetWord.const((tshift * tshift).scale(_ps(s34e4)))
    )
    eqs["triple_2"] = _comm(h2, h1) - inner1.scale(_ps(_EPS * 2))

    e1 = _esym(_MASS, 1)
    xword = h0 - h1 - JetWord.const(tshift.scale(_ps(w2t * _HALF)))
    a2c = (m2 - e1 * _HALF) * (m2 + _EPS - e1 * _HALF)
    a4c = (m4 - e1 * _HALF) * (m4 + _EPS - e1 * _HALF)
    bc = (m2 + _EPS - e1 * _HALF) * (m4 + _EPS - e1 * _HALF)
    cc = (m1 - _EPS) * (m3 - _EPS)
    dc = (m1 + m3 - _EPS) * (cc + m2 * m4)
    # the a2c/a4c constants add to the J1 bracket (same orientation as the
    # analogous bracket constant in the momentum relation below); subtracting
    # them leaves a residue 2(a2c + a4c) t(t-1) J1 q
    eqs["reconstructionQ"] = (
        (xword + JetWord.const(tshift.scale(_ps(a2c))))
        * (xword + JetWord.const(tshift.scale(_ps(a4c))))
        * _lq(1)
        - (xword - JetWord.const(tshift.scale(_ps(bc))))
        * (h0 + JetWord.const(tshift.scale(_ps(cc))))
        + (h2 - JetWord.const(tshift.scale(_ps(dc))))
        .scale(tshift).scale(_ps((m1 + m3 - _EPS) * _HALF))
    )
    ec = (m2 + m4 - e1 * _HALF) * (m2 + m4 - _EPS - e1 * _HALF)
    fc = m1 * (m1 + _EPS)
    # q(q-1)p enters negatively: the positive-sign variant leaves a residue
    # 2(m1+m3+eps) t(t-1) q(q-1) p
    eqs["reconstructionP"] = (
        ((_lq(1) - _lq(2)) * _lp(1)).scale(tshift).scale(_ps(m1 + m3 + _EPS))
        - _lq(1) * (h1 + JetWord.const(tshift.scale(_ps(ec))))
        + (_lq(1) - JetWord.one()) * (h0 - JetWord.const(tshift.scale(_ps(fc))))
    )
    return eqs


_EQ_BUILDERS = {
    "qp1": _eqs_qp1,
    "qp2": _eqs_qp2,
    "qp3_1": _eqs_qp3_1,
    "qp3_2": _eqs_qp3_2,
    "qp3_3": _eqs_qp3_3,
    "qp4": _eqs_qp4,
    "qp5": _eqs_qp5,
    "qp6": _eqs_qp6,
}


@functools.lru_cache(maxsize=None)
def _equations(system: str) -> dict:
    return _EQ_BUILDERS[system]()


def equation_names(system: str):
    """Catalog identity names available for a system."""
    return tuple(sorted(_equations(canonical_system(system))))


def jet_equation(system: str, which: str) -> JetWord:
    """Formal word of a catalog identity; the identity is `word == 0`."""
    eqs = _equations(canonical_system(system))
    try:
        return eqs[which]
    except KeyError:
        raise NotInCatalog(
            "%s has no %r identity" % (canonical_system(system), which)) from None


# --------------------------------------------------------------------------
# bilinear rows and ladder expansion
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BilinearAtom:
    """coeff * Outer^outer(Hirota^order) applied to the tau pair."""
    coeff: TSeries
    outer: int = 0
    order: int = 0


@dataclass(frozen=True)
class BilinearOp:
    """A bilinear row: sum of atoms annihilating a tau pair.

    ``left_shift``/``right_shift`` are constants added to the two
    log-derivative ladders (power-of-t twists on the entries).
    ``transform_side`` marks which entry is a transformed tau (its letters
    become K), ``transform`` names the transformation.  ``prefactor_left``/
    ``prefactor_right`` record the log-derivative offset between the catalog
    tau normalization and the bare transform-sum normalization; they are
    metadata for the series-level consumers and are not applied here.
    """
    system: str
    name: str
    kind: str
    atoms: tuple
    left_shift: TSeries = _TS_ZERO
    right_shift: TSeries = _TS_ZERO
    transform_side: str | None = None
    transform: str | None = None
    prefactor_left: TSeries = _TS_ZERO
    prefactor_right: TSeries = _TS_ZERO


def ladder_expand(op: BilinearOp, h_left=None, h_right=None) -> JetWord:
    """Expand a bilinear row into a jet word.

    The default ladders are the universal tau log-derivatives
    h_left = -J0/(2 eps1 kappa) + left_shift (acting from the left) and
    h_right = +X0/(2 eps2 kappa) + right_shift (acting from the right, with
    letter X = K when the right entry is transformed).  Passing explicit
    ladders overrides both the letters and the shifts.
    """
    left_letter = "K" if op.transform_side == "left" else "J"
    right_letter = "K" if op.transform_side == "right" else "J"
    if h_left is None:
        h_left = JetWord.letter(left_letter, 0, _pfrac(rat(-1, 2), eps1=1, kappa=1))
        if not op.left_shift.is_zero():
            h_left = h_left + JetWord.const(op.left_shift)
    if h_right is None:
        h_right = JetWord.letter(right_letter, 0, _pfrac(rat(1, 2), eps2=1, kappa=1))
        if not op.right_shift.is_zero():
            h_right = h_right + JetWord.const(op.right_shift)
    kind = op.kind
    top = max(atom.order for atom in op.atoms)
    ladder_l = [JetWord.one()]
    ladder_r = [JetWord.one()]
    for k in range(top):
        ladder_l.append(h_left * ladder_l[k] + ladder_l[k].prime(kind))
        ladder_r.append(ladder_r[k] * h_right + ladder_r[k].prime(kind))
    out = JetWord.zero()
    for atom in op.atoms:
        n = atom.order
        word = JetWord.zero()
        for j in range(n + 1):
            coeff = _pfrac(_E1 ** j * _E2 ** (n - j) * rat(math.comb(n, j)))
            word = word + (ladder_l[j] * ladder_r[n - j]).scale(coeff)
        for _ in range(atom.outer):
            word = h_left * word + word.prime(kind) + word * h_right
        out = out + word.scale(atom.coeff)
    return out


def _e1e2(scale=1) -> ParamScalar:
    return _ps(_E1 * _E2 * scale)


def _prefactors(system: str):
    """Log-derivative offsets of the catalog taus against the bare sums."""
    if system == "qp6":
        w2t = _wsym(_MASS, 1) - _EPS * _EPS * 2
        e1 = _esym(_MASS, 1)
        e2 = _esym(_MASS, 2)
        beta_num = w2t - (e2 + e1 * _EPS + _EPS * _EPS) * 6
        left = TSeries({
            0: _pfrac(w2t * rat(1, 12), eps1=1, kappa=1),
            1: _pfrac(-(beta_num * rat(1, 24)), eps1=1, kappa=1),
        })
        right = TSeries({
            0: _pfrac(-(w2t * rat(1, 12)), eps2=1, kappa=1),
            1: _pfrac(beta_num * rat(1, 24), eps2=1, kappa=1),
        })
        return left, right
    if system == "qp5":
        e1 = _esym(_MASS[:3], 1)
        left = TSeries({1: _pfrac(-((e1 + _EPS) * rat(1, 4)), eps1=1, kappa=1)})
        right = TSeries({1: _pfrac((e1 + _EPS) * rat(1, 4), eps2=1, kappa=1)})
        return left, right
    if system == "qp3_1":
        left = TSeries({1: _pfrac(rat(-1, 4), eps1=1, kappa=1)})
        right = TSeries({1: _pfrac(rat(1, 4), eps2=1, kappa=1)})
        return left, right
    return _TS_ZERO, _TS_ZERO


@functools.lru_cache(maxsize=None)
def tau_rows(system: str) -> dict:
    """Bilinear rows of orders 1, 3 and 4 for the universal tau pair."""
    name = canonical_system(system)
    info = _INFO[name]
    kind = info.time_kind
    pre_l, pre_r = _prefactors(name)
    one = TSeries.const(_R1)

    def op(key, atoms):
        return BilinearOp(
            system=name, name=key, kind=kind, atoms=tuple(atoms),
            prefactor_left=pre_l, prefactor_right=pre_r,
        )

    rows = {"d1": op("d1", [BilinearAtom(one, 0, 1)])}

    if name in ("qp1", "qp2", "qp4"):
        rows["d3"] = op("d3", [BilinearAtom(one, 0, 3)])
    elif name == "qp6":
        rows["d3"] = op("d3", [
            BilinearAtom(one, 0, 3),
            BilinearAtom(_ts({1: _EPS * (-2), 0: _EPS}), 0, 2),
        ])
    else:
        rows["d3"] = op("d3", [
            BilinearAtom(one, 0, 3),
            BilinearAtom(TSeries.const(_ps(-_EPS)), 0, 2),
        ])

    ee = _E1 * _E2
    eps_sq = _EPS * _EPS
    if name == "qp1":
        rows["d4"] = op("d4", [
            BilinearAtom(one, 0, 4),
            BilinearAtom(_ts({1: rat(1, 8)}), 0, 0),
        ])
    elif name == "qp2":
        rows["d4"] = op("d4", [
            BilinearAtom(one, 0, 4),
            BilinearAtom(_ts({1: _HALF}), 0, 2),
            BilinearAtom(TSeries.const(_e1e2(rat(1, 4))), 1, 0),
        ])
    elif name == "qp4":
        e2m = _esym(_MASS[:3], 2)
        rows["d4"] = op("d4", [
            BilinearAtom(one, 0, 4),
            BilinearAtom(_ts({2: rat(-1, 4)}), 0, 2),
            BilinearAtom(_ts({1: ee * rat(-1, 4)}), 1, 0),
            BilinearAtom(TSeries.const(_ps((e2m + eps_sq * rat(1, 4)) * rat(1, 4))), 0, 0),
        ])
    elif name == "qp5":
        w2 = _wsym(_MASS[:3], 1)
        e3 = _esym(_MASS[:3], 3)
        rows["d4"] = op("d4", [
            BilinearAtom(one, 0, 4),
            BilinearAtom(TSeries.const(_e1e2(2)), 1, 2),
            BilinearAtom(_ts({2: rat(-1, 4), 0: -(ee + eps_sq)}), 0, 2),
            BilinearAtom(_ts({2: ee * rat(-1, 4)}), 1, 0),
            BilinearAtom(_ts({1: e3 * rat(1, 4), 2: -(w2 - eps_sq) * rat(1, 16)}), 0, 0),
        ])
    elif name in ("qp3_1", "qp3_2", "qp3_3"):
        if name == "qp3_1":
            last = _ts({1: _esym(_MASS[:2], 2) * rat(1, 4), 2: rat(-1, 16)})
        elif name == "qp3_2":
            last = _ts({1: _MASS[0] * rat(1, 4)})
        else:
            last = _ts({1: rat(1, 4)})
        rows["d4"] = op("d4", [
            BilinearAtom(one, 0, 4),
            BilinearAtom(TSeries.const(_e1e2(2)), 1, 2),
            BilinearAtom(TSeries.const(_ps(-(ee + eps_sq))), 0, 2),
            BilinearAtom(last, 0, 0),
        ])
    else:  # qp6
        w2t = _wsym(_MASS, 1) - eps_sq * 2
        w2 = _wsym(_MASS, 1)
        w4 = _wsym(_MASS, 2)
        e4 = _esym(_MASS, 4)
        tsh = TSeries({2: _ps(1), 1: _ps(-1)})
        one_plus = _ts({0: 1, 1: -1, 2: 1})  # 1 + t(t-1)
        bracket = w2t * rat(1, 6) + ee + eps_sq * 6
        d2_coeff = one_plus.scale(_ps(-bracket)) + _ts({0: eps_sq * 5})
        d0_inner = TSeries({0: _ps(e4), 1: _ps(-(e4 * 2 + w4 - w2 * w2 * rat(1, 4)) * rat(1, 4))})
        rows["d4"] = op("d4", [
            BilinearAtom(one, 0, 4),
            BilinearAtom(_ts({1: ee * 4, 0: ee * (-2)}), 1, 2),
            BilinearAtom(tsh.scale(_ps(ee * ee)), 2, 0),
            BilinearAtom(d2_coeff, 0, 2),
            BilinearAtom(
                _ts({3: 2, 2: -3, 1: 1}).scale(_ps(w2t * ee * rat(-1, 12))), 1, 0),
            BilinearAtom((d0_inner * tsh).scale(_ps(rat(-1, 4))), 0, 0),
        ])
    return rows


_EIGHT_KAPPA_TWIST = TSeries({0: _pfrac(_EPS * rat(1, 8), kappa=1)})


@functools.lru_cache(maxsize=None)
def okamoto_rows(system: str) -> dict:
    """Paired-transform rows linking a tau with its transformed partner."""
    name = canonical_system(system)
    if name == "qp3_3":
        one = TSeries.const(_R1)
        half_ee = TSeries.const(_e1e2(_HALF))
        drop = TSeries.const(_ps(-(_E1 * _E2 + _EPS * _EPS) * rat(1, 16)))
        rows = {}
        for side, suffix in (("right", ""), ("left", "_left")):
            for k in (2, 3):
                rows["d%d%s" % (k, suffix)] = BilinearOp(
                    system=name,
                    name="d%d%s" % (k, suffix),
                    kind=TimeKind.LOG,
                    atoms=(
                        BilinearAtom(one, 0, k),
                        BilinearAtom(half_ee, 1, k - 2),
                        BilinearAtom(drop, 0, k - 2),
                    ),
                    left_shift=_EIGHT_KAPPA_TWIST,
                    right_shift=_EIGHT_KAPPA_TWIST.scale(-_R1),
                    transform_side=side,
                    transform="pi",
                )
        return rows
    if name == "qp2":
        one = TSeries.const(_R1)
        m = _MASS[0]
        rows = {
            "d2": BilinearOp(
                system=name, name="d2", kind=TimeKind.PLAIN,
                atoms=(
                    BilinearAtom(one, 0, 2),
                    BilinearAtom(_ts({1: rat(1, 8)}), 0, 0),
                ),
                transform_side="right", transform="pi",
            ),
            "d3": BilinearOp(
                system=name, name="d3", kind=TimeKind.PLAIN,
                atoms=(
                    BilinearAtom(one, 0, 3),
                    BilinearAtom(_ts({1: rat(1, 8)}), 0, 1),
                    BilinearAtom(
                        TSeries.const(_ps((_KAP - m * 4 + _EPS * 3) * rat(1, 16))),
                        0, 0),
                ),
                transform_side="right", transform="pi",
            ),
        }
        return rows
    raise NotInCatalog("no paired-transform rows for %s" % (name,))


@functools.lru_cache(maxsize=None)
def translation_rows(system: str) -> dict:
    """Mass-shift translation rows (all written in the log time frame)."""
    name = canonical_system(system)
    one = TSeries.const(_R1)
    ee = _E1 * _E2
    eps_sq = _EPS * _EPS

    def op(key, atoms):
        return BilinearOp(
            system=name, name=key, kind=TimeKind.LOG, atoms=tuple(atoms),
            left_shift=_EIGHT_KAPPA_TWIST,
            right_shift=_EIGHT_KAPPA_TWIST.scale(-_R1),
            transform_side="right", transform="translate",
        )

    if name == "qp6":
        e1 = _esym(_MASS, 1)
        e2 = _esym(_MASS, 2)
        e3 = _esym(_MASS, 3)
        te1 = e1 + _KAP + _EPS * 3
        te2 = (
            e2
            + (_KAP * 3 + _EPS * 7) * (e1 + _KAP) * rat(1, 4)
            + (ee + eps_sq * 3) * rat(3, 4)
        )
        te3 = (
            e3
            + (_KAP + _EPS * 3) * (
                e2
                + (e1 + _KAP + _EPS * 3) * _KAP * rat(3, 4)
                - (_KAP + _EPS * 3) ** 2 * rat(1, 4)
            ) * _HALF
            + (ee + eps_sq * 17) * (e1 + _KAP + _EPS * 3) * rat(1, 8)
        )
        d2 = op("d2", [
            BilinearAtom(_ts({0: 1, 1: -1}), 0, 2),
            BilinearAtom(_ts({0: ee * _HALF, 1: ee * _HALF}), 1, 0),
            BilinearAtom(_ts({1: -(te1 * _HALF)}), 0, 1),
            BilinearAtom(_ts({0: -(ee + eps_sq) * rat(1, 16), 1: -(te2 * rat(1, 4))}), 0, 0),
        ])
        d1_coeff = (
            _ts({0: ee, 1: ee * (-17)})
            + _ts({0: 1, 1: -1}) * _ts({0: eps_sq, 1: te2 * 4})
            + _ts({1: te1 * _EPS * 8, 2: te1 * te1 * 4})
        ).scale(_ps(rat(-1, 16)))
        d3 = op("d3", [
            BilinearAtom(_ts({0: 1, 1: -1}) * _ts({0: 1, 1: -1}), 0, 3),
            BilinearAtom(_ts({0: ee * _HALF, 2: -(ee * _HALF)}), 1, 1),
            BilinearAtom(_ts({1: te1 * ee * rat(3, 4), 2: te1 * ee * rat(1, 4)}), 1, 0),
            BilinearAtom(d1_coeff, 0, 1),
            BilinearAtom(_ts({1: -(te3 * rat(1, 4)), 2: -(te2 * te1 * rat(1, 8))}), 0, 0),
        ])
        return {"d2": d2, "d3": d3}
    if name == "qp5":
        e1 = _esym(_MASS[:3], 1)
        e2 = _esym(_MASS[:3], 2)
        d2 = op("d2", [
            BilinearAtom(one, 0, 2),
            BilinearAtom(TSeries.const(_e1e2(_HALF)), 1, 0),
            BilinearAtom(_ts({1: -_HALF}), 0, 1),
            BilinearAtom(
                _ts({0: -(ee + eps_sq) * rat(1, 16),
                     1: -(e1 * 4 + _KAP * 3 + _EPS * 7) * rat(1, 16)}),
                0, 0),
        ])
        d0_c1 = e2 * 8 + (_KAP + _EPS * 3) * (e1 * 4 + _KAP * 3) + ee + eps_sq * 17
        d0_c2 = e1 * 4 + _KAP * 3 + _EPS * 7
        d3 = op("d3", [
            BilinearAtom(one, 0, 3),
            BilinearAtom(TSeries.const(_e1e2(_HALF)), 1, 1),
            BilinearAtom(_ts({1: ee * rat(3, 4)}), 1, 0),
            BilinearAtom(
                _ts({0: -(ee + eps_sq) * rat(1, 16),
                     1: -(e1 * 4 + _KAP * 3 + _EPS * 15) * rat(1, 16),
                     2: rat(-1, 4)}),
                0, 1),
            BilinearAtom(
                _ts({1: -(d0_c1 * rat(1, 32)), 2: -(d0_c2 * rat(1, 32))}), 0, 0),
        ])
        return {"d2": d2, "d3": d3}
    if name == "qp3_1":
        e1 = _esym(_MASS[:2], 1)
        d2 = op("d2", [
            BilinearAtom(one, 0, 2),
            BilinearAtom(TSeries.const(_e1e2(_HALF)), 1, 0),
            BilinearAtom(_ts({0: -(ee + eps_sq) * rat(1, 16), 1: rat(-1, 4)}), 0, 0),
        ])
        d3 = op("d3", [
            BilinearAtom(one, 0, 3),
            BilinearAtom(TSeries.const(_e1e2(_HALF)), 1, 1),
            BilinearAtom(_ts({0: -(ee + eps_sq) * rat(1, 16), 1: rat(-1, 4)}), 0, 1),
            BilinearAtom(_ts({1: -(e1 * 2 + _KAP + _EPS * 3) * rat(1, 8)}), 0, 0),
        ])
        return {"d2": d2, "d3": d3}
    if name == "qp3_2":
        d2 = op("d2", [
            BilinearAtom(one, 0, 2),
            BilinearAtom(TSeries.const(_e1e2(_HALF)), 1, 0),
            BilinearAtom(TSeries.const(_ps(-(ee + eps_sq) * rat(1, 16))), 0, 0),
        ])
        d3 = op("d3", [
            BilinearAtom(one, 0, 3),
            BilinearAtom(TSeries.const(_e1e2(_HALF)), 1, 1),
            BilinearAtom(TSeries.const(_ps(-(ee + eps_sq) * rat(1, 16))), 0, 1),
            BilinearAtom(_ts({1: rat(-1, 4)}), 0, 0),
        ])
        return {"d2": d2, "d3": d3}
    raise NotInCatalog("no translation rows for %s" % (name,))


# --------------------------------------------------------------------------
# shared-frame prefactors of the flavored partition sums
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ZakPrefactor:
    """f = t^t_exponent (1-t)^one_minus_t_exponent exp(exp_coeff * t)."""
    n_flavors: int
    t_exponent: ParamScalar | None = None
    one_minus_t_exponent: ParamScalar | None = None
    exp_coeff: ParamScalar | None = None


_NF_FOR_SYSTEM = {"qp6": 4, "qp5": 3, "qp3_1": 2, "qp3_2": 1, "qp3_3": 0}


def weak_flavor_count(system: str) -> int:
    name = canonical_system(system)
    try:
        return _NF_FOR_SYSTEM[name]
    except KeyError:
        raise NotInCatalog("%s has no flavored weak expansion" % (name,)) from None


@functools.lru_cache(maxsize=None)
def zak_prefactor(nf: int) -> ZakPrefactor:
    if nf == 4:
        w2t = _wsym(_MASS, 1) - _EPS * _EPS * 2
        e1 = _esym(_MASS, 1)
        t_exp = _pfrac(w2t * rat(1, 6), eps1=1, eps2=1)
        omt_exp = t_exp + _pfrac(-(e1 * (e1 + _EPS * 2)) * rat(1, 4), eps1=1, eps2=1)
        return ZakPrefactor(4, t_exponent=t_exp, one_minus_t_exponent=omt_exp)
    if nf == 3:
        e1 = _esym(_MASS[:3], 1)
        return ZakPrefactor(
            3, exp_coeff=_pfrac((e1 + _EPS) * _HALF, eps1=1, eps2=1))
    if nf == 2:
        return ZakPrefactor(2, exp_coeff=_pfrac(_HALF, eps1=1, eps2=1))
    if nf in (0, 1):
        return ZakPrefactor(nf)
    raise NotInCatalog("no flavored prefactor for nf=%d" % (nf,))


# --------------------------------------------------------------------------
# strong-coupling branch constants
# --------------------------------------------------------------------------

_PP0 = ParamPoly({})


def _vq(c0=None, c1=None, c2=None):
    """Quadratic in the branch's free invariant: c0 + c1 v + c2 v^2."""
    def pp(x):
        if x is None:
            return _PP0
        poly = _as_poly(x)
        return poly
    return (pp(c0), pp(c1), pp(c2))


@dataclass(frozen=True)
class StrongBranchConfig:
    """Exact data of one strong-coupling expansion branch.

    ``xi1``, ``xi2`` and each entry of ``mu_elem`` (elementary symmetric
    values of the 1-loop shifts) are coefficient triples (c0, c1, c2) in the
    branch's free invariant v.  ``stated_power``/``stated_value`` give the
    closed form of v**stated_power that the solve must reproduce;
    ``chi_exp`` is e^chi and ``chi_half_exp`` its square root when it exists
    in the coefficient field.  ``depth`` maps |n| to the minimal t-order of
    the mode coefficient needed by the constant-fixing recipe.
    """
    system: str
    branch: str
    n_poles: int
    s_power: Rat
    s_scale: object | None
    s_note: str
    beta: object
    delta: object
    chi_exp: object
    chi_half_exp: object | None
    xi1: tuple
    xi2: tuple
    mu_elem: tuple
    free_invariant: str | None
    stated_power: int
    stated_value: ParamPoly | None
    fix_strategy: str
    depth: dict | None


def _branch(system, branch, **kw) -> StrongBranchConfig:
    return StrongBranchConfig(system=system, branch=branch, **kw)


@functools.lru_cache(maxsize=None)
def _strong_table() -> dict:
    ee = _E1 * _E2
    eps_sq = _EPS * _EPS
    table = {}

    w2_5 = _wsym(_MASS[:3], 1)
    e3_5 = _esym(_MASS[:3], 3)
    w4_5 = _wsym(_MASS[:3], 2)
    table[("qp5", "L")] = _branch(
        "qp5", "L", n_poles=4, s_power=rat(1), s_scale=_R1, s_note="s = t",
        beta=_R0, delta=_R1, chi_exp=_R1, chi_half_exp=_R1,
        xi1=_vq(), xi2=_vq((w2_5 - eps_sq) * _HALF),
        mu_elem=(
            _vq(),
            _vq(-(w2_5 * _HALF)),
            _vq(e3_5),
            _vq(-(w2_5 * w2_5) * rat(1, 16), rat(1, 8)),
        ),
        free_invariant="w4", stated_power=1, stated_value=w4_5,
        fix_strategy="sampling", depth=None,
    )
    table[("qp5", "S")] = _branch(
        "qp5", "S", n_poles=1, s_power=rat(1), s_scale=_R1, s_note="s = t",
        beta=rat(1, 32), delta=I_UNIT * rat(1, 2),
        chi_exp=I_UNIT * rat(-1, 2),
        chi_half_exp=(AlgNum(1) - I_UNIT) * rat(1, 2),
        xi1=_vq(),
        xi2=_vq(w2_5 - eps_sq * rat(5, 8) + ee * rat(1, 4)),
        mu_elem=(_vq(),),
        free_invariant="w4", stated_power=1,
        stated_value=(
            w4_5 - w2_5 * eps_sq * rat(3, 8) + eps_sq * eps_sq * rat(105, 1024)
        ),
        fix_strategy="kernel", depth={0: -3, 1: -3, 2: -2, 3: -1, 4: 0},
    )

    e2_31 = _esym(_MASS[:2], 2)
    w2_31 = _wsym(_MASS[:2], 1)
    table[("qp3_1", "default")] = _branch(
        "qp3_1", "default", n_poles=2, s_power=rat(1, 2),
        s_scale=I_UNIT * rat(8), s_note="s = 8i t^(1/2)",
        beta=rat(-1, 128), delta=_HALF, chi_exp=_R1, chi_half_exp=_R1,
        xi1=_vq(),
        xi2=_vq(e2_31 * _HALF - eps_sq * rat(3, 4), rat(3, 4)),
        mu_elem=(_vq(), _vq(e2_31 * _HALF, rat(-1, 4))),
        free_invariant="w2", stated_power=1, stated_value=w2_31,
        fix_strategy="sampling", depth=None,
    )

    m1_32 = _MASS[0]
    table[("qp3_2", "default")] = _branch(
        "qp3_2", "default", n_poles=1, s_power=rat(1, 3),
        s_scale=None, s_note="s^3 = 54 (m1/v) t with v the free mass",
        beta=rat(-1, 8), delta=SQRT3, chi_exp=SQRT3 * rat(-1, 36),
        chi_half_exp=None,
        xi1=_vq(None, rat(-1)),
        xi2=_vq(-(eps_sq * rat(23, 24)) - ee * rat(1, 12), None, rat(1)),
        mu_elem=(_vq(),),
        free_invariant="m1", stated_power=2, stated_value=m1_32 * m1_32,
        fix_strategy="mass_ratio", depth=None,
    )

    table[("qp3_3", "default")] = _branch(
        "qp3_3", "default", n_poles=1, s_power=rat(1, 4),
        s_scale=I_UNIT * rat(-32), s_note="s = -32i t^(1/4)",
        beta=rat(-1, 256), delta=rat(-1, 4), chi_exp=_R1, chi_half_exp=_R1,
        xi1=_vq(), xi2=_vq(-(eps_sq * rat(9, 8)) - ee * rat(1, 4)),
        mu_elem=(_vq(),),
        free_invariant=None, stated_power=1, stated_value=None,
        fix_strategy="degenerate", depth=None,
    )

    e2_4 = _esym(_MASS[:3], 2)
    e3_4 = _esym(_MASS[:3], 3)
    table[("qp4", "L")] = _branch(
        "qp4", "L", n_poles=3, s_power=rat(2), s_scale=_R1, s_note="s = t^2",
        beta=_R0, delta=_HALF, chi_exp=_R1, chi_half_exp=_R1,
        xi1=_vq(), xi2=_vq(-(e2_4 * _HALF) - eps_sq * rat(1, 8)),
        mu_elem=(_vq(), _vq(e2_4), _vq(None, rat(1))),
        free_invariant="e3", stated_power=1, stated_value=e3_4,
        fix_strategy="sampling", depth=None,
    )
    table[("qp4", "S")] = _branch(
        "qp4", "S", n_poles=1, s_power=rat(2), s_scale=_R1, s_note="s = t^2",
        beta=rat(1, 108), delta=I_UNIT * SQRT3 * rat(1, 6),
        chi_exp=I_UNIT * SQRT3 * rat(-1, 3), chi_half_exp=None,
        xi1=_vq(),
        xi2=_vq(-(e2_4 * rat(3, 2)) - eps_sq * rat(5, 24) + ee * rat(1, 6)),
        mu_elem=(_vq(),),
        free_invariant="e3", stated_power=1, stated_value=e3_4,
        fix_strategy="kernel", depth={0: -2, 1: -2, 2: -1, 3: 0},
    )

    m_2 = _MASS[0]
    table[("qp2", "L")] = _branch(
        "qp2", "L", n_poles=2, s_power=rat(3, 2),
        s_scale=I_UNIT * SQRT2 * rat(2), s_note="s = 2 sqrt(2) i t^(3/2)",
        beta=_R0, delta=rat(1, 3), chi_exp=rat(1, 4), chi_half_exp=_HALF,
        xi1=_vq(),
        xi2=_vq(-(eps_sq * rat(1, 12)), None, rat(1, 3)),
        mu_elem=(_vq(), _vq(None, None, rat(-1))),
        free_invariant="m", stated_power=2, stated_value=m_2 * m_2,
        fix_strategy="sampling", depth=None,
    )
    table[("qp2", "S")] = _branch(
        "qp2", "S", n_poles=1, s_power=rat(3, 2),
        s_scale=I_UNIT * SQRT2 * rat(2), s_note="s = 2 sqrt(2) i t^(3/2)",
        beta=rat(1, 192), delta=I_UNIT * SQRT2 * rat(-1, 6),
        chi_exp=I_UNIT * SQRT2 * rat(1, 4), chi_half_exp=None,
        xi1=_vq(),
        xi2=_vq(ee * rat(1, 12), None, rat(2, 3)),
        mu_elem=(_vq(),),
        free_invariant="m", stated_power=2,
        stated_value=m_2 * m_2 - eps_sq * rat(3, 32),
        fix_strategy="sampling", depth={0: -1, 1: -1, 2: 0},
    )

    table[("qp1", "default")] = _branch(
        "qp1", "default", n_poles=1, s_power=rat(5, 4),
        s_scale=None, s_note="s = -8(1+i) (6t)^(5/4)",
        beta=rat(-1, 103680), delta=rat(1, 60), chi_exp=_R1, chi_half_exp=_R1,
        xi1=_vq(),
        xi2=_vq(-(eps_sq * rat(7, 120)) + ee * rat(1, 60)),
        mu_elem=(_vq(),),
        free_invariant=None, stated_power=1, stated_value=None,
        fix_strategy="degenerate", depth=None,
    )
    return table


def strong_branch_config(system: str, branch: str = "default") -> StrongBranchConfig:
    """Exact constants of a strong-coupling branch; qp6 has none."""
    name = canonical_system(system)
    if name == "qp6":
        raise NotInCatalog("qp6 has no strong-coupling expansion")
    table = _strong_table()
    available = sorted(b for (s, b) in table if s == name)
    if branch not in available:
        raise NotInCatalog(
            "%s strong branches are %s, got %r" % (name, available, branch))
    return table[(name, branch)]

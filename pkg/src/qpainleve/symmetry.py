"""Affine Weyl symmetries of the eight systems.

Root-variable actions of the extended Weyl groups (reflections, diagram
automorphisms, translations), exact Moebius records for the induced time
maps, Backlund transport of Hamiltonians through the Laurent-representable
generators, and the one-form invariance of the Hamiltonians under the
autonomous symmetries.
"""

import dataclasses
import functools
import math
import random
from typing import Callable, Mapping

from .core import (
    INF,
    AlgNum,
    I_UNIT,
    ParamPoint,
    SQRT3,
    TSeries,
    TimeKind,
    rat,
    sample_params,
    scalar_is_zero,
)
from .weyl import WeylElem, generators, substitute, weyl_pow
from .catalog import (
    build_from_generators,
    build_hamiltonian,
    canonical_system,
    root_variables,
    system_info,
)

__all__ = [
    "BadArity",
    "DynkinData",
    "GenSpec",
    "InvalidWord",
    "NotRepresentable",
    "RelationReport",
    "SymState",
    "TAction",
    "Transport",
    "act_on_roots",
    "backlund_hamiltonian",
    "backlund_transport",
    "check_group_relations",
    "dynkin_data",
    "invariant_value",
    "masses_from_roots",
    "one_form_defect",
    "one_form_invariance",
    "sym_state",
]

_R0 = rat(0)
_R1 = rat(1)
_M1 = rat(-1)
_HALF = rat(1, 2)
_NEG_I = AlgNum(0) - I_UNIT
_OMEGA = (I_UNIT * SQRT3 - AlgNum(1)) * _HALF  # primitive cube root of unity
_TS_T = TSeries({1: _R1})
_TS_NEG_T = TSeries({1: _M1})
_TS_INV_T = TSeries({-1: _R1})


class InvalidWord(ValueError):
    pass


class NotRepresentable(ValueError):
    pass


class BadArity(ValueError):
    pass


# --------------------------------------------------------------------------
# exact Moebius records for the time maps
# --------------------------------------------------------------------------

def _alg(x) -> AlgNum:
    return x if isinstance(x, AlgNum) else AlgNum(rat(x))


def _down(x):
    """Collapse a rational AlgNum back to Rat; keep true algebraics."""
    if isinstance(x, AlgNum) and x.is_rational():
        return x.rational_value()
    return x


@dataclasses.dataclass(frozen=True)
class TAction:
    """Invertible Moebius map t -> (a t + b) / (c t + d), exact and normalized.

    The matrix is scaled so its first nonzero entry is 1, making equality of
    records equality of maps.  compose(other) applies ``other`` first.
    """

    mat: tuple

    @staticmethod
    def of(a, b, c, d) -> "TAction":
        ent = (_alg(a), _alg(b), _alg(c), _alg(d))
        if scalar_is_zero(ent[0] * ent[3] - ent[1] * ent[2]):
            raise ValueError("singular time map")
        lead = next(e for e in ent if not scalar_is_zero(e))
        inv = lead.inverse()
        return TAction(tuple(e * inv for e in ent))

    @staticmethod
    def identity() -> "TAction":
        return _ID_ACT

    @property
    def is_identity(self) -> bool:
        return self.mat == _ID_ACT.mat

    def compose(self, other: "TAction") -> "TAction":
        a1, b1, c1, d1 = self.mat
        a2, b2, c2, d2 = other.mat
        return TAction.of(
            a1 * a2 + b1 * c2, a1 * b2 + b1 * d2,
            c1 * a2 + d1 * c2, c1 * b2 + d1 * d2,
        )

    def inverse(self) -> "TAction":
        a, b, c, d = self.mat
        return TAction.of(d, AlgNum(0) - b, AlgNum(0) - c, a)

    @property
    def label(self) -> str:
        known = _KNOWN_TACTIONS()
        if self in known:
            return known[self]
        a, b, c, d = self.mat
        return "((%r)t+(%r))/((%r)t+(%r))" % (a, b, c, d)

    def map_series(self, series: TSeries) -> TSeries:
        """Pull a coefficient series through the map, exactly or not at all."""
        a, b, c, d = self.mat
        if self.is_identity:
            return series
        az, bz = scalar_is_zero(a), scalar_is_zero(b)
        cz, dz = scalar_is_zero(c), scalar_is_zero(d)
        if cz and bz:  # t -> s t
            s = a / d
            return TSeries(
                {e: _down(co * s ** _intexp(e)) for e, co in series.terms.items()},
                series.order,
            )
        if series.order is not INF:
            raise NotRepresentable("cannot move a truncated series through %s"
                                   % self.label)
        if az and dz:  # t -> u / t
            u = b / c
            return TSeries(
                {-e: _down(co * u ** _intexp(e)) for e, co in series.terms.items()})
        if cz:  # t -> s t + w
            s, w = a / d, b / d
            acc: dict = {}
            for e, co in series.terms.items():
                k = _intexp(e)
                if k < 0:
                    raise NotRepresentable(
                        "negative power of t under an affine time map")
                for j in range(k + 1):
                    term = co * (s ** j) * (w ** (k - j)) * rat(math.comb(k, j))
                    acc[j] = acc[j] + term if j in acc else term
            return TSeries({e: _down(co) for e, co in acc.items()})
        raise NotRepresentable("no exact Laurent image under %s" % self.label)


def _intexp(e) -> int:
    k = int(e)
    if k != e:
        raise NotRepresentable("fractional power of t under a time map")
    return k


_ID_ACT = TAction.of(1, 0, 0, 1)


@functools.lru_cache(maxsize=1)
def _KNOWN_TACTIONS() -> dict:
    return {
        TAction.of(1, 0, 0, 1): "t",
        TAction.of(-1, 0, 0, 1): "-t",
        TAction.of(-1, 1, 0, 1): "1-t",
        TAction.of(0, 1, 1, 0): "1/t",
        TAction.of(1, 0, 1, -1): "t/(t-1)",
        TAction.of(1, -1, 1, 0): "(t-1)/t",
        TAction.of(0, 1, -1, 1): "1/(1-t)",
        TAction.of(I_UNIT, 0, 0, 1): "i*t",
        TAction.of(_NEG_I, 0, 0, 1): "-i*t",
    }


def _one_form_factor(kind, act: TAction):
    """Scalar monomial (c, k) with H dt = (moved H) * c t^k dt, per time frame.

    The factor collects d(M(t))/dt together with the frame weight that turns
    the stored element into the plain Hamiltonian (1, t, or t(t-1)).
    """
    if act.is_identity:
        return _R1, 0
    a, b, c, d = act.mat
    az, bz = scalar_is_zero(a), scalar_is_zero(b)
    cz, dz = scalar_is_zero(c), scalar_is_zero(d)
    if kind == TimeKind.PLAIN:
        if cz:
            return _down(a / d), 0
        raise NotRepresentable("no monomial one-form factor for %s" % act.label)
    if kind == TimeKind.LOG:
        if cz and bz:
            return _R1, 0
        if az and dz:
            return _M1, 0
        raise NotRepresentable("no monomial one-form factor for %s" % act.label)
    if kind == TimeKind.LOG_SHIFT:
        if cz and bz and a == d:
            return _R1, 0
        if cz and not bz and b == d and a == AlgNum(0) - d:  # t -> 1 - t
            return _M1, 0
        if az and dz and b == c:  # t -> 1/t
            return _R1, 1
        raise NotRepresentable("no monomial one-form factor for %s" % act.label)
    raise NotRepresentable("one-form factors undefined in the %s frame" % kind)


# --------------------------------------------------------------------------
# symmetric invariants of the masses
# --------------------------------------------------------------------------

def _esym(vals, k: int):
    """Elementary symmetric polynomial e_k over any commutative ring."""
    e = [rat(1)]
    for v in vals:
        nxt = [rat(1)]
        for j in range(1, len(e) + 1):
            term = e[j - 1] * v
            nxt.append(term if j == len(e) else e[j] + term)
        e = nxt
    return e[k]


def invariant_value(kind: str, masses):
    """Weyl-invariant combinations: e<k>, w<2k> (= e_k of the squares), and
    the half-period image sigma34_e4 = e4/2 - w4/4 + w2^2/16."""
    ms = tuple(masses)
    n = len(ms)
    if kind == "sigma34_e4":
        if n != 4:
            raise BadArity("sigma34_e4 needs 4 masses, got %d" % n)
        sq = [m * m for m in ms]
        e4 = _esym(ms, 4)
        w2, w4 = _esym(sq, 1), _esym(sq, 2)
        return e4 * _HALF - w4 * rat(1, 4) + w2 * w2 * rat(1, 16)
    if len(kind) >= 2 and kind[0] in "ew" and kind[1:].isdigit():
        idx = int(kind[1:])
        if kind[0] == "e":
            if not 1 <= idx <= n:
                raise BadArity("e%d needs at least %d masses, got %d" % (idx, idx, n))
            return _esym(ms, idx)
        if idx % 2 == 0 and idx > 0:
            k = idx // 2
            if not k <= n:
                raise BadArity("w%d needs at least %d masses, got %d" % (idx, k, n))
            return _esym([m * m for m in ms], k)
    raise ValueError("unknown invariant kind %r" % (kind,))


# --------------------------------------------------------------------------
# Dynkin data: nodes, Cartan pairings, generators
# --------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class GenSpec:
    """One generator: its root action, time record, and coordinate images.

    kind is "refl" (node reflection), "aut" (diagram automorphism; perm maps
    each slot to the slot whose old value it receives), or "trans" (shift
    node -> multiple of kappa).  images, when present, builds the exact
    canonical pair (q-image, p-image) from root values, kappa, and (q, p, t,
    one) generators.
    """

    tag: str
    kind: str
    node: str = ""
    perm: Mapping = dataclasses.field(default_factory=dict)
    shift: Mapping = dataclasses.field(default_factory=dict)
    taction: TAction = _ID_ACT
    images: Callable = None

    @property
    def representable(self) -> bool:
        return self.images is not None


@dataclasses.dataclass(frozen=True)
class DynkinData:
    """Affine diagram of one system plus its symmetry generators."""

    system: str
    nodes: tuple
    marks: Mapping
    cartan: Mapping  # unordered off-diagonal entries, keyed both ways
    relations: tuple  # node -> coefficient maps, each summing to kappa
    generators: Mapping

    def cartan_entry(self, i: str, j: str) -> int:
        if i == j:
            return 2
        return self.cartan.get((i, j), 0)

    def tags(self, kind: str) -> tuple:
        return tuple(t for t, g in self.generators.items() if g.kind == kind)


def _refl(tag, node, taction=_ID_ACT):
    return GenSpec(tag, "refl", node=node, taction=taction)


def _aut(tag, perm, taction=_ID_ACT, images=None):
    return GenSpec(tag, "aut", perm=perm, taction=taction, images=images)


def _trans(tag, shift):
    return GenSpec(tag, "trans", shift=shift)


def _edges(pairs):
    out = {}
    for i, j, c in pairs:
        out[(i, j)] = c
        out[(j, i)] = c
    return out


# -- coordinate images, straight from the transformation tables ------------

def _i_qp6_s34(rv, kap, gens):
    q, p, t, one = gens
    return one - q, p.scale(_M1)


def _i_qp6_s14(rv, kap, gens):
    q, p, t, one = gens
    return weyl_pow(q, -1), (q * p * q + q.scale(rv["a2"])).scale(_M1)


def _i_qp6_s03(rv, kap, gens):
    q, p, t, one = gens
    return q.scale_series(_TS_INV_T), p.scale_series(_TS_T)


def _i_qp5_pi(rv, kap, gens):
    q, p, t, one = gens
    return p.scale_series(_TS_NEG_T), q.scale_series(_TS_INV_T) - one


def _i_qp5_s13(rv, kap, gens):
    q, p, t, one = gens
    return q.scale(_M1), p.scale(_M1) - one


def _i_qp31_pip(rv, kap, gens):
    q, p, t, one = gens
    pimg = (q * p * q + q.scale(rv["a1m"])).scale_series(_TS_INV_T)
    return weyl_pow(q, -1).scale_series(_TS_NEG_T), pimg


def _i_qp31_pim(rv, kap, gens):
    q, p, t, one = gens
    pimg = (q * (p + one) * q + q.scale(rv["a1p"])).scale_series(_TS_INV_T)
    return weyl_pow(q, -1).scale_series(_TS_T), pimg.scale(_M1) - one


def _i_qp31_sigma(rv, kap, gens):
    q, p, t, one = gens
    return q.scale(_M1), (one + p).scale(_M1)


def _i_qp32_pi(rv, kap, gens):
    q, p, t, one = gens
    return p.scale_series(_TS_NEG_T), q.scale_series(_TS_INV_T)


def _i_qp33_pi(rv, kap, gens):
    q, p, t, one = gens
    pimg = (q.scale(kap * _HALF) - q * p * q).scale_series(_TS_INV_T)
    return weyl_pow(q, -1).scale_series(_TS_T), pimg


def _i_qp4_pi(rv, kap, gens):
    q, p, t, one = gens
    return p.scale(_M1), q - p + t


def _i_qp4_s12(rv, kap, gens):
    q, p, t, one = gens
    return p.scale(_NEG_I), q.scale(_NEG_I)


def _i_qp2_pi(rv, kap, gens):
    q, p, t, one = gens
    return q.scale(_M1), (q * q).scale(rat(2)) - p + t


_NEG_T = TAction.of(-1, 0, 0, 1)
_ONE_MINUS_T = TAction.of(-1, 1, 0, 1)
_INV_ACT = TAction.of(0, 1, 1, 0)


@functools.lru_cache(maxsize=None)
def dynkin_data(system: str) -> DynkinData:
    name = canonical_system(system)
    if name == "qp6":
        nodes = ("a0", "a1", "a2", "a3", "a4")
        gens = {}
        for i in range(5):
            gens["s%d" % i] = _refl("s%d" % i, "a%d" % i)
        gens["sigma34"] = _aut("sigma34", {"a3": "a4", "a4": "a3"},
                               _ONE_MINUS_T, _i_qp6_s34)
        gens["sigma14"] = _aut("sigma14", {"a1": "a4", "a4": "a1"},
                               _INV_ACT, _i_qp6_s14)
        gens["sigma03"] = _aut("sigma03", {"a0": "a3", "a3": "a0"},
                               _INV_ACT, _i_qp6_s03)
        gens["sigma04"] = _aut("sigma04", {"a0": "a4", "a4": "a0"},
                               TAction.of(1, 0, 1, -1))
        gens["pi1"] = _aut("pi1", {"a0": "a3", "a3": "a0", "a1": "a4", "a4": "a1"})
        gens["pi2"] = _aut("pi2", {"a0": "a1", "a1": "a0", "a3": "a4", "a4": "a3"})
        for i in (1, 2, 3, 4):
            gens["T%d" % i] = _trans("T%d" % i, {"a%d" % i: 1, "a0": -(2 if i == 2 else 1)})
        return DynkinData(
            system=name, nodes=nodes,
            marks={"a0": 1, "a1": 1, "a2": 2, "a3": 1, "a4": 1},
            cartan=_edges([("a0", "a2", -1), ("a1", "a2", -1),
                           ("a3", "a2", -1), ("a4", "a2", -1)]),
            relations=({"a0": 1, "a1": 1, "a2": 2, "a3": 1, "a4": 1},),
            generators=gens)
    if name == "qp5":
        nodes = ("a0", "a1", "a2", "a3")
        gens = {}
        for i in range(4):
            gens["s%d" % i] = _refl("s%d" % i, "a%d" % i)
        gens["pi"] = _aut("pi", {"a0": "a3", "a1": "a0", "a2": "a1", "a3": "a2"},
                          _ID_ACT, _i_qp5_pi)
        gens["sigma13"] = _aut("sigma13", {"a1": "a3", "a3": "a1"},
                               _NEG_T, _i_qp5_s13)
        for i in (1, 2, 3):
            gens["T%d" % i] = _trans("T%d" % i, {"a%d" % i: 1, "a0": -1})
        return DynkinData(
            system=name, nodes=nodes,
            marks={n: 1 for n in nodes},
            cartan=_edges([("a0", "a1", -1), ("a1", "a2", -1),
                           ("a2", "a3", -1), ("a3", "a0", -1)]),
            relations=({n: 1 for n in nodes},),
            generators=gens)
    if name == "qp3_1":
        nodes = ("a0p", "a1p", "a0m", "a1m")
        gens = {
            "s0p": _refl("s0p", "a0p"),
            "s1p": _refl("s1p", "a1p"),
            "s0m": _refl("s0m", "a0m"),
            "s1m": _refl("s1m", "a1m"),
            "pi+": _aut("pi+", {"a0p": "a1p", "a1p": "a0p"}, _ID_ACT, _i_qp31_pip),
            "pi-": _aut("pi-", {"a0m": "a1m", "a1m": "a0m"}, _ID_ACT, _i_qp31_pim),
            "sigma": _aut("sigma", {"a0p": "a0m", "a0m": "a0p",
                                    "a1p": "a1m", "a1m": "a1p"},
                          _NEG_T, _i_qp31_sigma),
            "T1p": _trans("T1p", {"a1p": 1, "a0p": -1}),
            "T1m": _trans("T1m", {"a1m": 1, "a0m": -1}),
        }
        return DynkinData(
            system=name, nodes=nodes,
            marks={n: 1 for n in nodes},
            cartan=_edges([("a0p", "a1p", -2), ("a0m", "a1m", -2)]),
            relations=({"a0p": 1, "a1p": 1}, {"a0m": 1, "a1m": 1}),
            generators=gens)
    if name == "qp3_2":
        nodes = ("a0", "a1")
        gens = {
            "s0": _refl("s0", "a0", _NEG_T),
            "s1": _refl("s1", "a1", _NEG_T),
            "pi": _aut("pi", {"a0": "a1", "a1": "a0"}, _NEG_T, _i_qp32_pi),
            "T1": _trans("T1", {"a1": 1, "a0": -1}),
        }
        return DynkinData(
            system=name, nodes=nodes, marks={"a0": 1, "a1": 1},
            cartan=_edges([("a0", "a1", -2)]),
            relations=({"a0": 1, "a1": 1},),
            generators=gens)
    if name == "qp3_3":
        return DynkinData(
            system=name, nodes=(), marks={}, cartan={}, relations=(),
            generators={"pi": _aut("pi", {}, _ID_ACT, _i_qp33_pi)})
    if name == "qp4":
        nodes = ("a0", "a1", "a2")
        gens = {}
        for i in range(3):
            gens["s%d" % i] = _refl("s%d" % i, "a%d" % i)
        gens["pi"] = _aut("pi", {"a0": "a1", "a1": "a2", "a2": "a0"},
                          _ID_ACT, _i_qp4_pi)
        gens["sigma12"] = _aut("sigma12", {"a1": "a2", "a2": "a1"},
                               TAction.of(I_UNIT, 0, 0, 1), _i_qp4_s12)
        gens["T1"] = _trans("T1", {"a1": 1, "a0": -1})
        gens["T2"] = _trans("T2", {"a2": 1, "a0": -1})
        return DynkinData(
            system=name, nodes=nodes, marks={n: 1 for n in nodes},
            cartan=_edges([("a0", "a1", -1), ("a1", "a2", -1), ("a2", "a0", -1)]),
            relations=({n: 1 for n in nodes},),
            generators=gens)
    if name == "qp2":
        nodes = ("a0", "a1")
        gens = {
            "s0": _refl("s0", "a0"),
            "s1": _refl("s1", "a1"),
            "pi": _aut("pi", {"a0": "a1", "a1": "a0"}, _ID_ACT, _i_qp2_pi),
            "sigma": _aut("sigma", {}, TAction.of(_OMEGA, 0, 0, 1)),
            "T1": _trans("T1", {"a1": 1, "a0": -1}),
        }
        return DynkinData(
            system=name, nodes=nodes, marks={"a0": 1, "a1": 1},
            cartan=_edges([("a0", "a1", -2)]),
            relations=({"a0": 1, "a1": 1},),
            generators=gens)
    # qp1: empty diagram, no symmetry generators in scope
    return DynkinData(system=name, nodes=(), marks={}, cartan={},
                      relations=(), generators={})


# --------------------------------------------------------------------------
# states and root actions
# --------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class SymState:
    """Root values in canonical node order, kappa, and the time record."""

    system: str
    roots: tuple
    kappa: object
    taction: TAction = _ID_ACT

    def as_dict(self) -> dict:
        dd = dynkin_data(self.system)
        return dict(zip(dd.nodes, self.roots))

    def root(self, name: str):
        dd = dynkin_data(self.system)
        try:
            return self.roots[dd.nodes.index(name)]
        except ValueError:
            raise InvalidWord("no node %r in %s" % (name, self.system))

    def masses(self) -> tuple:
        return masses_from_roots(self.system, self.as_dict())

    def relation_defects(self) -> tuple:
        dd = dynkin_data(self.system)
        rv = self.as_dict()
        return tuple(
            sum((rv[n] * c for n, c in rel.items()), _R0) - self.kappa
            for rel in dd.relations)


def sym_state(system: str, masses, kappa) -> SymState:
    name = canonical_system(system)
    dd = dynkin_data(name)
    rv = root_variables(name, tuple(masses), kappa)
    return SymState(name, tuple(rv[n] for n in dd.nodes), kappa)


def masses_from_roots(system: str, rv: Mapping) -> tuple:
    """Invert the root-variable map; the zero-node values are redundant."""
    name = canonical_system(system)
    if name == "qp6":
        m4 = (rv["a1"] + rv["a3"]) * _HALF
        m2 = (rv["a3"] - rv["a1"]) * _HALF
        m1 = rv["a2"] + m4
        m3 = rv["a4"] + m1
        return m1, m2, m3, m4
    if name == "qp5":
        m1 = (rv["a1"] + rv["a3"]) * _HALF
        m2 = (rv["a3"] - rv["a1"]) * _HALF
        return m1, m2, rv["a2"] + m1
    if name == "qp3_1":
        return ((rv["a1p"] + rv["a1m"]) * _HALF,
                (rv["a1p"] - rv["a1m"]) * _HALF)
    if name == "qp3_2":
        return (rv["a1"] * _HALF,)
    if name == "qp4":
        m1 = (rv["a2"] - rv["a1"]) * rat(1, 3)
        return m1, m1 - rv["a2"], m1 + rv["a1"]
    if name == "qp2":
        return (rv["a1"] * _HALF,)
    return ()


def _split_tag(tag: str):
    if tag.endswith("~"):
        return tag[:-1], True
    return tag, False


def _apply_spec(dd: DynkinData, spec: GenSpec, rv: dict, kappa, inverse: bool) -> dict:
    if spec.kind == "refl":
        i = spec.node
        ai = rv[i]
        return {j: rv[j] - ai * dd.cartan_entry(i, j) for j in dd.nodes}
    if spec.kind == "aut":
        perm = spec.perm
        if inverse:
            perm = {v: k for k, v in perm.items()}
        return {j: rv[perm.get(j, j)] for j in dd.nodes}
    sign = -1 if inverse else 1
    return {j: rv[j] + kappa * (sign * spec.shift.get(j, 0)) for j in dd.nodes}


def act_on_roots(system: str, word, state: SymState) -> SymState:
    """Apply a word of generator tags, first tag first.

    A trailing "~" on a tag inverts that generator.  The time record composes
    along; root relations are preserved by every generator.
    """
    name = canonical_system(system)
    if name != canonical_system(state.system):
        raise InvalidWord("state belongs to %s, word to %s" % (state.system, name))
    dd = dynkin_data(name)
    if any(not scalar_is_zero(d) for d in state.relation_defects()):
        raise ValueError("state violates its root relations")
    rv = state.as_dict()
    tact = state.taction
    for tag in word:
        base, inv = _split_tag(tag)
        spec = dd.generators.get(base)
        if spec is None:
            raise InvalidWord("unknown generator %r for %s" % (tag, name))
        rv = _apply_spec(dd, spec, rv, state.kappa, inv)
        step = spec.taction.inverse() if inv else spec.taction
        tact = step.compose(tact)
    return SymState(name, tuple(rv[n] for n in dd.nodes), state.kappa, tact)


# --------------------------------------------------------------------------
# group relations
# --------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class RelationReport:
    system: str
    trials: int
    checked: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


_EXTRA_RELATIONS = {
    "qp6": [
        ("pi1^2", ["pi1", "pi1"], []),
        ("pi2^2", ["pi2", "pi2"], []),
        ("klein", ["pi1", "pi2"], ["pi2", "pi1"]),
        ("pi1-word", ["sigma34", "sigma04", "sigma34", "sigma14"], ["pi1"]),
        ("pi2-word", ["sigma14", "sigma04", "sigma14", "sigma34"], ["pi2"]),
        ("T3-word", ["s3", "s2", "s1", "s4", "s2", "s3", "pi1"], ["T3"]),
    ],
    "qp5": [
        ("pi^4", ["pi"] * 4, []),
        ("dihedral", ["sigma13", "pi", "sigma13"], ["pi~"]),
        ("T3-word", ["s3", "s2", "s1", "pi~"], ["T3"]),
    ],
    "qp3_1": [
        ("pi+^2", ["pi+", "pi+"], []),
        ("pi-^2", ["pi-", "pi-"], []),
        ("sigma^2", ["sigma", "sigma"], []),
        ("sigma-conj", ["sigma", "pi+", "sigma"], ["pi-"]),
        ("pi-commute", ["pi+", "pi-"], ["pi-", "pi+"]),
        ("s0p-word", ["pi+", "s1p", "pi+"], ["s0p"]),
        ("s0m-word", ["pi-", "s1m", "pi-"], ["s0m"]),
        ("folded-invol", ["sigma", "pi-", "pi+"] * 2, []),
        ("T1p-word", ["s1p", "pi+"], ["T1p"]),
        ("T1m-word", ["s1m", "pi-"], ["T1m"]),
    ],
    "qp3_2": [
        ("pi^2", ["pi", "pi"], []),
        ("pi-conj", ["pi", "s1", "pi"], ["s0"]),
        ("T1-word", ["s1", "pi"], ["T1"]),
    ],
    "qp3_3": [
        ("pi^2", ["pi", "pi"], []),
    ],
    "qp4": [
        ("pi^3", ["pi"] * 3, []),
        ("dicyclic", ["sigma12~", "pi", "sigma12"], ["pi~"]),
        ("square-central", ["sigma12", "sigma12", "pi"], ["pi", "sigma12", "sigma12"]),
    ],
    "qp2": [
        ("pi^2", ["pi", "pi"], []),
        ("pi-conj", ["pi", "s1", "pi"], ["s0"]),
        ("sigma^3", ["sigma"] * 3, []),
        ("sigma-central", ["sigma", "pi"], ["pi", "sigma"]),
        ("T1-word", ["s1", "pi"], ["T1"]),
    ],
    "qp1": [],
}


def _relation_words(dd: DynkinData):
    rels = []
    refl = dd.tags("refl")
    for t in refl:
        rels.append(("%s^2" % t, [t, t], []))
    for x in range(len(refl)):
        for y in range(x + 1, len(refl)):
            i, j = refl[x], refl[y]
            c = dd.cartan_entry(dd.generators[i].node, dd.generators[j].node)
            if c == 0:
                rels.append(("comm(%s,%s)" % (i, j), [i, j], [j, i]))
            elif c == -1:
                rels.append(("braid(%s,%s)" % (i, j), [i, j, i], [j, i, j]))
            # c == -2: free pair, no finite relation
    trans = dd.tags("trans")
    for t in trans:
        rels.append(("%s-cancel" % t, [t, t + "~"], []))
    for x in range(len(trans)):
        for y in range(x + 1, len(trans)):
            i, j = trans[x], trans[y]
            rels.append(("comm(%s,%s)" % (i, j), [i, j], [j, i]))
    rels.extend(_EXTRA_RELATIONS[dd.system])
    return rels


def _probe_state(name: str) -> SymState:
    dd = dynkin_data(name)
    kap = rat(13)
    primes = iter((rat(2), rat(3), rat(5), rat(7), rat(11)))
    solve = set()
    for rel in dd.relations:
        solve.add(next(n for n in dd.nodes if n in rel and n.startswith("a0")))
    vals = {n: next(primes) for n in dd.nodes if n not in solve}
    for rel in dd.relations:
        zn = next(n for n in rel if n in solve)
        rest = sum((vals[n] * c for n, c in rel.items() if n != zn), _R0)
        vals[zn] = (kap - rest) / rat(rel[zn])
    return SymState(name, tuple(vals[n] for n in dd.nodes), kap)


def _sample_state(name: str, seed: int) -> SymState:
    info = system_info(name)
    pt = sample_params(seed, max(info.n_masses, 1))
    masses = list(pt.masses[: info.n_masses])
    if info.masses_sum_to_zero:
        masses[-1] = -sum(masses[:-1], _R0)
    return sym_state(name, masses, pt.kappa)


def check_group_relations(system: str, trials: int = 3, seed: int = 0) -> RelationReport:
    """Exercise the defining relations on random admissible root states."""
    name = canonical_system(system)
    dd = dynkin_data(name)
    states = [_sample_state(name, seed + 17 * k) for k in range(trials)]
    failures = []
    checked = 0

    for relname, lhs, rhs in _relation_words(dd):
        checked += 1
        for k, st in enumerate(states):
            if act_on_roots(name, lhs, st) != act_on_roots(name, rhs, st):
                failures.append("%s[trial%d]" % (relname, k))
                break

    # conjugation: every diagram automorphism permutes the reflections
    refl = dd.tags("refl")
    probe = _probe_state(name)
    for g in dd.tags("aut"):
        targets = {}
        for s in refl:
            word = [g + "~", s, g]
            got = act_on_roots(name, word, probe)
            match = [c for c in refl if act_on_roots(name, [c], probe) == got]
            checked += 1
            if len(match) != 1:
                failures.append("conj(%s,%s):no-unique-target" % (g, s))
                continue
            targets[s] = match[0]
            for k, st in enumerate(states):
                if act_on_roots(name, word, st) != act_on_roots(name, [match[0]], st):
                    failures.append("conj(%s,%s)[trial%d]" % (g, s, k))
                    break
        if len(set(targets.values())) != len(targets):
            failures.append("conj(%s):not-a-permutation" % g)

    # random words preserve the root relations and the empty word acts trivially
    rng = random.Random(seed)
    pool = [t for t in dd.generators]
    pool += [t + "~" for t in dd.generators]
    for k, st in enumerate(states):
        checked += 1
        if act_on_roots(name, [], st) != st:
            failures.append("empty-word[trial%d]" % k)
        if not pool:
            continue
        word = [rng.choice(pool) for _ in range(10)]
        out = act_on_roots(name, word, st)
        if any(not scalar_is_zero(d) for d in out.relation_defects()):
            failures.append("relation-preserved[trial%d]" % k)
    return RelationReport(name, trials, checked, tuple(failures))


# --------------------------------------------------------------------------
# Backlund transport of the Hamiltonians
# --------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class Transport:
    """Composed coordinate images, time record, and transformed parameters."""

    system: str
    q_image: WeylElem
    p_image: WeylElem
    taction: TAction
    state: SymState
    point: object


def _transport(name, word, point, kappa_override=None):
    dd = dynkin_data(name)
    kap = point.kappa if kappa_override is None else kappa_override
    rv = dict(root_variables(name, point.masses, kap))
    gens = generators(point.eps)
    qc, pc = gens[0], gens[1]
    tact = _ID_ACT
    for tag in word:
        base, inv = _split_tag(tag)
        spec = dd.generators.get(base)
        if spec is None:
            raise InvalidWord("unknown generator %r for %s" % (tag, name))
        if inv:
            raise NotRepresentable(
                "inverse tag %r has no table form; spell out the inverse word" % tag)
        if spec.images is None:
            raise NotRepresentable(
                "%s/%s has no exact Laurent coordinate action" % (name, base))
        qr, pr = spec.images(rv, kap, gens)
        cmap = None if tact.is_identity else tact.map_series
        qc, pc = (substitute(qr, qc, pc, coeff_map=cmap),
                  substitute(pr, qc, pc, coeff_map=cmap))
        tact = spec.taction.compose(tact)
        rv = _apply_spec(dd, spec, rv, kap, False)
    state = SymState(name, tuple(rv[n] for n in dd.nodes), kap, tact)
    return Transport(
        system=name, q_image=qc, p_image=pc, taction=tact, state=state,
        point=point.with_masses(state.masses()))


def backlund_transport(system: str, word, point) -> Transport:
    """Compose the coordinate images of a word of representable generators."""
    return _transport(canonical_system(system), word, point)


def backlund_hamiltonian(system: str, word, point) -> WeylElem:
    """Hamiltonian at the transformed parameters, pulled back through the word.

    The result lives in the original (q, p, t) frame: build at the image
    parameters, substitute the composed coordinate images, and map every
    coefficient through the composed time record.
    """
    name = canonical_system(system)
    tr = _transport(name, word, point)
    target = build_hamiltonian(name, tr.point)
    cmap = None if tr.taction.is_identity else tr.taction.map_series
    return substitute(target, tr.q_image, tr.p_image, coeff_map=cmap)


# --------------------------------------------------------------------------
# one-form invariance of the Hamiltonians
# --------------------------------------------------------------------------

def one_form_defect(system: str, word, point, autonomized: bool = False) -> WeylElem:
    """H dt minus its pullback under the word, in the stored frame.

    Zero exactly when the word preserves the Hamiltonian one-form.  With
    autonomized=True the comparison is made at kappa = 0 (roots and builder
    both), the exact autonomous limit.
    """
    name = canonical_system(system)
    info = system_info(name)
    kap = _R0 if autonomized else point.kappa
    tr = _transport(name, word, point, kappa_override=kap)
    gens = generators(point.eps)
    g0 = build_from_generators(name, gens, point.masses, kap)
    g1 = build_from_generators(name, gens, tr.state.masses(), kap)
    cmap = None if tr.taction.is_identity else tr.taction.map_series
    moved = substitute(g1, tr.q_image, tr.p_image, coeff_map=cmap)
    c, k = _one_form_factor(info.time_kind, tr.taction)
    return g0 - moved.scale_series(TSeries({k: c}))


def one_form_invariance(system: str, word, trials: int = 3, seed: int = 0,
                        autonomized: bool = False) -> RelationReport:
    """Check the one-form defect vanishes at random parameter points."""
    name = canonical_system(system)
    failures = []
    for k in range(trials):
        info = system_info(name)
        pt = sample_params(seed + 101 * k, max(info.n_masses, 1))
        masses = list(pt.masses[: info.n_masses])
        if info.masses_sum_to_zero:
            masses[-1] = -sum(masses[:-1], _R0)
        point = ParamPoint(pt.eps1, pt.eps2, rat(0), tuple(masses))
        if not one_form_defect(name, word, point, autonomized=autonomized).is_zero():
            failures.append("trial%d:nonzero-defect" % k)
    return RelationReport(name, trials, trials, tuple(failures))

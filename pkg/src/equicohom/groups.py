"""Catalog of compact Lie group atoms, products, and standard inclusions.

Ranks, manifold dimensions and the degrees of the polynomial generators of
H*(BG; Q) follow the classical tables for the families SU, SO, Sp, U, tori and
finite groups.  Restriction maps for one-step inclusions within a family use
the standard characteristic-class identities; iterated inclusions are composed
from one-step maps so there is a single source of truth.

Everything constructed here is immutable and safe to share between workers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import CatalogError, InclusionError
from .graded import GradedRing, Polynomial, RingMap, apply_map, compose

SU, SO, SP, UN, TORUS, FINITE = "SU", "SO", "Sp", "U", "T", "Finite"

_CLASSICAL = (SU, SO, SP, UN)


@dataclass(frozen=True)
class GroupAtom:
    """One catalog group: a classical family member, a torus, or a finite group."""

    family: str
    param: object  # int size for Lie families, str name for Finite
    rank: int
    dim: int
    gens: tuple[tuple[str, int], ...]  # (name, degree) of H*(B-) generators

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.gens)

    @property
    def label(self) -> str:
        if self.family == FINITE:
            name = self.param
            return name if name in ("I*", "I") else f"Finite({name})"
        return f"{self.family}({self.param})"

    def __repr__(self):
        return self.label


def atom(family: str, param) -> GroupAtom:
    """Build a catalog atom with rank, dim and generator degrees filled in."""
    if family == SU:
        n = _size(family, param)
        gens = tuple((f"c{k}", 2 * k) for k in range(2, n + 1))
        if n == 2:
            gens = (("u", 4),)  # H*(BS^3) = Q[u], deg u = 4
        return GroupAtom(SU, n, n - 1, n * n - 1, gens)
    if family == SO:
        n = _size(family, param)
        m = n // 2
        if n % 2:
            gens = tuple((f"p{k}", 4 * k) for k in range(1, m + 1))
        else:
            gens = tuple((f"p{k}", 4 * k) for k in range(1, m)) + ((("e", n),) if m else ())
        return GroupAtom(SO, n, m, n * (n - 1) // 2, gens)
    if family == SP:
        n = _size(family, param)
        return GroupAtom(SP, n, n, n * (2 * n + 1), tuple((f"q{k}", 4 * k) for k in range(1, n + 1)))
    if family == UN:
        n = _size(family, param)
        return GroupAtom(UN, n, n, n * n, tuple((f"c{k}", 2 * k) for k in range(1, n + 1)))
    if family == TORUS:
        k = _size(family, param)
        return GroupAtom(TORUS, k, k, k, tuple((f"t{j}", 2) for j in range(1, k + 1)))
    if family == FINITE:
        name = str(param)
        if not name:
            raise CatalogError("finite group needs a nonempty name")
        return GroupAtom(FINITE, name, 0, 0, ())
    raise CatalogError(f"unknown group family {family!r}")


def _size(family: str, param) -> int:
    if not isinstance(param, int) or param < 1:
        raise CatalogError(f"{family}(n) needs an integer size n >= 1, got {param!r}")
    return param


@dataclass(frozen=True)
class GroupExpr:
    """Product of catalog atoms; rank and dim are additive over factors."""

    factors: tuple[GroupAtom, ...]

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def label(self) -> str:
        return " x ".join(f.label for f in self.factors) if self.factors else "1"

    def __repr__(self):
        return self.label


def group(*atoms: GroupAtom) -> GroupExpr:
    return GroupExpr(tuple(atoms))


def rank(g: GroupExpr) -> int:
    return g.rank


def dim(g: GroupExpr) -> int:
    return g.dim


# --- invariant rings -------------------------------------------------------

def generator_names(g: GroupExpr) -> list[str]:
    """Generator names of the product ring; a name shared by several factors
    gets the 1-based factor index as suffix."""
    counts: dict[str, int] = {}
    for f in g.factors:
        for name, _ in f.gens:
            counts[name] = counts.get(name, 0) + 1
    names = []
    for i, f in enumerate(g.factors, start=1):
        for name, _ in f.gens:
            names.append(name if counts[name] == 1 else f"{name}_{i}")
    return names


def factor_offsets(g: GroupExpr) -> list[tuple[int, int]]:
    """(first generator index, generator count) for each factor."""
    out = []
    pos = 0
    for f in g.factors:
        out.append((pos, len(f.gens)))
        pos += len(f.gens)
    return out


def invariant_ring(g: GroupExpr) -> GradedRing:
    """Polynomial model of H*(BG; Q): one generator per cataloged degree."""
    names = generator_names(g)
    degrees = [d for f in g.factors for _, d in f.gens]
    return GradedRing(zip(names, degrees))


@lru_cache(maxsize=None)
def _atom_ring(a: GroupAtom) -> GradedRing:
    return GradedRing(a.gens)


# --- inclusions ------------------------------------------------------------

IDENTITY, CHAIN, FINITE_INTO = "identity", "chain", "finite-into-atom"


@dataclass(frozen=True)
class InclusionSpec:
    """Per-factor inclusion kinds for a product subgroup sub ⊆ sup."""

    kinds: tuple[str, ...]

    def validate(self, sub: GroupExpr, sup: GroupExpr) -> None:
        if len(self.kinds) != len(sub.factors) or len(sub.factors) != len(sup.factors):
            raise InclusionError(
                f"factor counts disagree: {len(sub.factors)} vs {len(sup.factors)}"
                f" with {len(self.kinds)} inclusion kinds"
            )
        for i, (kind, s, t) in enumerate(zip(self.kinds, sub.factors, sup.factors), start=1):
            if kind == IDENTITY:
                if s != t:
                    raise InclusionError(f"factor {i}: identity inclusion needs equal atoms, got {s} ⊆ {t}")
            elif kind == CHAIN:
                if s.family != t.family or s.family not in _CLASSICAL:
                    raise InclusionError(f"factor {i}: chain inclusion needs one classical family, got {s} ⊆ {t}")
                if s.param > t.param:
                    raise InclusionError(f"factor {i}: chain inclusion needs size {s.param} <= {t.param}")
            elif kind == FINITE_INTO:
                if s.family != FINITE:
                    raise InclusionError(f"factor {i}: finite-into-atom needs a finite source, got {s}")
            else:
                raise InclusionError(f"factor {i}: unknown inclusion kind {kind!r}")


def standard_inclusion(sub: GroupExpr, sup: GroupExpr) -> InclusionSpec:
    """Infer the per-factor kinds: equal atoms → identity, finite source →
    finite-into-atom, same classical family → chain."""
    if len(sub.factors) != len(sup.factors):
        raise InclusionError(
            f"no standard inclusion: {sub} has {len(sub.factors)} factors, {sup} has {len(sup.factors)}"
        )
    kinds = []
    for i, (s, t) in enumerate(zip(sub.factors, sup.factors), start=1):
        if s == t:
            kinds.append(IDENTITY)
        elif s.family == FINITE:
            kinds.append(FINITE_INTO)
        elif s.family == t.family and s.family in _CLASSICAL and s.param <= t.param:
            kinds.append(CHAIN)
        else:
            raise InclusionError(f"no standard inclusion at factor {i}: {s} ⊆ {t}")
    spec = InclusionSpec(tuple(kinds))
    spec.validate(sub, sup)
    return spec


def _one_step_map(sup: GroupAtom) -> RingMap:
    """Restriction H*(B F(n)) → H*(B F(n-1)) for a classical family F."""
    family, n = sup.family, sup.param
    sub = atom(family, n - 1)
    src, tgt = _atom_ring(sup), _atom_ring(sub)
    if family in (SU, UN, SP):
        # top generator dies, the rest restrict to themselves
        images = [tgt.gen(i) for i in range(tgt.ngens)] + [tgt.zero()]
    elif family == SO:
        m = n // 2
        if n % 2:  # SO(2m+1) -> SO(2m): p_i -> p_i (i<m), p_m -> e^2
            images = [tgt.gen(i) for i in range(m - 1)] + [tgt.gen("e") ** 2]
        else:  # SO(2m) -> SO(2m-1): p_i -> p_i, e -> 0
            images = [tgt.gen(i) for i in range(m - 1)] + [tgt.zero()]
    else:
        raise InclusionError(f"no chain inclusions within family {family!r}")
    return RingMap(src, tgt, images)


@lru_cache(maxsize=None)
def _chain_map(sup: GroupAtom, sub: GroupAtom) -> RingMap:
    """Iterated chain restriction, composed from one-step maps."""
    if sup == sub:
        return RingMap.identity(_atom_ring(sup))
    step = _one_step_map(sup)
    rest = _chain_map(atom(sup.family, sup.param - 1), sub)
    return compose(rest, step)


def _factor_map(kind: str, sub_atom: GroupAtom, sup_atom: GroupAtom) -> RingMap:
    if kind == IDENTITY or sub_atom == sup_atom:
        return RingMap.identity(_atom_ring(sup_atom))
    if kind == FINITE_INTO:
        tgt = _atom_ring(sub_atom)
        return RingMap(_atom_ring(sup_atom), tgt, [tgt.zero()] * _atom_ring(sup_atom).ngens)
    return _chain_map(sup_atom, sub_atom)


def restriction_map(sub: GroupExpr, sup: GroupExpr, inc: InclusionSpec | None = None) -> RingMap:
    """Restriction H*(B sup) → H*(B sub) assembled factor-wise.

    ``inc`` defaults to the standard inclusion.  Images are computed on
    single-atom rings and then re-indexed into the product rings, so name
    suffixing in products cannot change the map.
    """
    if inc is None:
        inc = standard_inclusion(sub, sup)
    inc.validate(sub, sup)
    source = invariant_ring(sup)
    target = invariant_ring(sub)
    tgt_offsets = factor_offsets(sub)
    images: list[Polynomial] = []
    for i, (kind, s, t) in enumerate(zip(inc.kinds, sub.factors, sup.factors)):
        fmap = _factor_map(kind, s, t)
        offset, count = tgt_offsets[i]
        for img in fmap.images:
            terms = {}
            for exps, coeff in img.terms.items():
                full = [0] * target.ngens
                full[offset:offset + count] = exps
                terms[tuple(full)] = coeff
            images.append(Polynomial(target, terms))
    return RingMap(source, target, images)


# --- the Poincaré homology sphere catalog ----------------------------------

# Transitive pairs (K, H) with K/H homeomorphic to P^3, up to identity factors.
POINCARE_PAIRS: tuple[tuple[GroupAtom, GroupAtom], ...] = (
    (atom(SU, 2), atom(FINITE, "I*")),
    (atom(SO, 3), atom(FINITE, "I")),
)


def poincare_pair_position(sub: GroupExpr, sup: GroupExpr) -> int | None:
    """Index of the unique non-identity factor if (sup, sub) is a cataloged
    Poincaré-sphere pair up to identity factors; None otherwise."""
    if len(sub.factors) != len(sup.factors):
        return None
    diff = [i for i, (s, t) in enumerate(zip(sub.factors, sup.factors)) if s != t]
    if len(diff) != 1:
        return None
    i = diff[0]
    if (sup.factors[i], sub.factors[i]) in POINCARE_PAIRS:
        return i
    return None


# --- parsing ---------------------------------------------------------------

_ATOM_RE = re.compile(r"^(SU|SO|Sp|U|T)\((\d+)\)$")
_FINITE_RE = re.compile(r"^Finite\(([^()]+)\)$")


def parse_group_expr(text: str) -> GroupExpr:
    """Parse ``ATOM [x ATOM]*`` with atoms SU(n), SO(n), Sp(n), U(n), T(k),
    S3 (alias for SU(2)), I*, I, Finite(name).  Whitespace is ignored."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise CatalogError("empty group expression")
    tokens = []
    depth = 0
    current = []
    for ch in compact:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise CatalogError(f"unbalanced parentheses in group expression {text!r}")
        if ch == "x" and depth == 0:
            tokens.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth:
        raise CatalogError(f"unbalanced parentheses in group expression {text!r}")
    tokens.append("".join(current))
    return GroupExpr(tuple(_parse_atom(tok, text) for tok in tokens))


def _parse_atom(token: str, context: str) -> GroupAtom:
    if token == "S3":
        return atom(SU, 2)
    if token == "I*":
        return atom(FINITE, "I*")
    if token == "I":
        return atom(FINITE, "I")
    m = _ATOM_RE.match(token)
    if m:
        return atom(m.group(1), int(m.group(2)))
    m = _FINITE_RE.match(token)
    if m:
        return atom(FINITE, m.group(1))
    raise CatalogError(f"unknown atom {token!r} in group expression {context!r}")

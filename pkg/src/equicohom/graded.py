"""Graded polynomial rings over the rationals, their degree slices, and
degree-preserving ring maps.

A :class:`GradedRing` is a free commutative polynomial algebra on named
generators in fixed positive even degrees.  Degree-``d`` slices are finite
dimensional; their monomial bases are ordered graded-lexicographically in the
ring's declared generator order, and every matrix, pivot and serialization in
the package uses that order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import PolynomialParseError, RingError

Exponents = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class GradedRing:
    """Free commutative graded polynomial ring with exact rational coefficients."""

    def __init__(self, generators):
        gens = tuple((str(name), int(deg)) for name, deg in generators)
        seen = set()
        for name, deg in gens:
            if deg <= 0 or deg % 2:
                raise RingError(f"generator {name!r} has degree {deg}; must be a positive even integer")
            if name in seen:
                raise RingError(f"duplicate generator name {name!r}")
            seen.add(name)
        self.generators = gens
        self.names = tuple(name for name, _ in gens)
        self.degrees = tuple(deg for _, deg in gens)
        self._index = {name: i for i, name in enumerate(self.names)}
        self._slices: dict[int, tuple[Exponents, ...]] = {}

    def __eq__(self, other):
        return isinstance(other, GradedRing) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        inside = ", ".join(f"{n}:{d}" for n, d in self.generators)
        return f"GradedRing({inside})"

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.ngens: _ONE})

    def gen(self, key) -> "Polynomial":
        i = self._index[key] if isinstance(key, str) else key
        exps = [0] * self.ngens
        exps[i] = 1
        return Polynomial(self, {tuple(exps): _ONE})

    def monomial(self, exps: Exponents, coeff=1) -> "Polynomial":
        coeff = Fraction(coeff)
        if len(exps) != self.ngens:
            raise RingError("exponent vector length does not match generator count")
        return Polynomial(self, {tuple(exps): coeff} if coeff else {})

    def monomial_degree(self, exps: Exponents) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))

    def slice_exponents(self, d: int) -> tuple[Exponents, ...]:
        """Exponent vectors of weighted degree ``d``, lex-descending.

        Within one slice all monomials share the weighted degree, so this is
        exactly the graded-lexicographic order on the declared generators.
        Cached per ring; insertion is idempotent, so concurrent readers are
        safe under the GIL.
        """
        cached = self._slices.get(d)
        if cached is not None:
            return cached
        out: list[Exponents] = []
        prefix = [0] * self.ngens

        def fill(pos: int, remaining: int):
            if pos == self.ngens:
                if remaining == 0:
                    out.append(tuple(prefix))
                return
            deg = self.degrees[pos]
            for e in range(remaining // deg, -1, -1):
                prefix[pos] = e
                fill(pos + 1, remaining - e * deg)
            prefix[pos] = 0

        if d >= 0:
            fill(0, d)
        result = tuple(out)
        self._slices[d] = result
        return result

    def slice_dim(self, d: int) -> int:
        return len(self.slice_exponents(d))

    def parse(self, text: str) -> "Polynomial":
        return _parse_polynomial(self, text)


class Polynomial:
    """Sparse polynomial in a :class:`GradedRing`; keys are exponent vectors."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedRing, terms: dict[Exponents, Fraction]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def coefficient(self, exps: Exponents) -> Fraction:
        return self.terms.get(tuple(exps), _ZERO)

    def homogeneous_degree(self):
        """Common weighted degree of all terms, or None for 0 / mixed input."""
        degs = {self.ring.monomial_degree(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, _ZERO) + c
        return Polynomial(self.ring, terms)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Polynomial(self.ring, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        terms: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, _ZERO) + c1 * c2
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise RingError("negative powers are not defined in a polynomial ring")
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.one() * other
        raise RingError(f"cannot combine polynomial with {type(other).__name__}")

    def sorted_terms(self):
        """Terms in grlex-descending order (higher degree first, then lex)."""
        key = lambda e: (self.ring.monomial_degree(e), e)
        return [(e, self.terms[e]) for e in sorted(self.terms, key=key, reverse=True)]

    def __str__(self):
        return format_polynomial(self)

    __repr__ = __str__


def format_monomial(ring: GradedRing, exps: Exponents) -> str:
    parts = []
    for name, e in zip(ring.names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Deterministic serialization: grlex-descending terms, rationals as p/q."""
    if p.is_zero():
        return "0"
    chunks = []
    for exps, coeff in p.sorted_terms():
        mono = format_monomial(p.ring, exps)
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not chunks:
            chunks.append(body if coeff > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(chunks)


_TERM_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9*']*?)(?:\^(\d+))?$")


def _parse_polynomial(ring: GradedRing, text: str) -> Polynomial:
    s = text.strip()
    if not s:
        raise PolynomialParseError("empty polynomial")
    s = s.replace("-", "+-")
    poly = ring.zero()
    for chunk in s.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = 1
        if chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:].strip()
        if not chunk:
            raise PolynomialParseError(f"dangling sign in {text!r}")
        coeff = Fraction(sign)
        exps = [0] * ring.ngens
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise PolynomialParseError(f"empty factor in term {chunk!r}")
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff *= Fraction(factor)
                continue
            m = _TERM_FACTOR.match(factor)
            if not m:
                raise PolynomialParseError(f"cannot parse factor {factor!r}")
            name, power = m.group(1), int(m.group(2) or 1)
            if name not in ring._index:
                raise PolynomialParseError(
                    f"unknown generator {name!r} (ring has {', '.join(ring.names) or 'no generators'})"
                )
            exps[ring._index[name]] += power
        poly = poly + ring.monomial(tuple(exps), coeff)
    return poly


class RingMap:
    """Degree-preserving ring homomorphism given by generator images."""

    def __init__(self, source: GradedRing, target: GradedRing, images):
        images = tuple(images)
        if len(images) != source.ngens:
            raise RingError("need exactly one image per source generator")
        for (name, deg), img in zip(source.generators, images):
            if img.ring != target:
                raise RingError(f"image of {name!r} lives in the wrong ring")
            hdeg = img.homogeneous_degree()
            if img and hdeg != deg:
                raise RingError(
                    f"image of {name!r} must be homogeneous of degree {deg}, got degree {hdeg}"
                )
        self.source = source
        self.target = target
        self.images = images
        self._matrices: dict[int, linalg.Matrix] = {}

    def __eq__(self, other):
        return (
            isinstance(other, RingMap)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __repr__(self):
        body = ", ".join(f"{n} -> {img}" for (n, _), img in zip(self.source.generators, self.images))
        return f"RingMap({body or 'scalars'})"

    @classmethod
    def identity(cls, ring: GradedRing) -> "RingMap":
        return cls(ring, ring, [ring.gen(i) for i in range(ring.ngens)])


def apply_map(m: RingMap, p: Polynomial) -> Polynomial:
    """Substitute generator images into ``p`` and expand."""
    if p.ring != m.source:
        raise RingError("polynomial does not live in the map's source ring")
    result = m.target.zero()
    for exps, coeff in p.terms.items():
        term = m.target.one() * coeff
        for img, e in zip(m.images, exps):
            if e:
                term = term * img**e
        result = result + term
    return result


def compose(outer: RingMap, inner: RingMap) -> RingMap:
    """outer ∘ inner, for inner: A→B and outer: B→C."""
    if inner.target != outer.source:
        raise RingError("maps are not composable")
    return RingMap(inner.source, outer.target, [apply_map(outer, img) for img in inner.images])


def slice_basis(ring: GradedRing, d: int) -> list[Polynomial]:
    """Monomials of weighted degree ``d``, in grlex order."""
    return [ring.monomial(e) for e in ring.slice_exponents(d)]


def map_matrix(m: RingMap, d: int) -> linalg.Matrix:
    """Matrix of the degree-``d`` slice of ``m``.

    Columns follow ``slice_basis(source, d)``, rows ``slice_basis(target, d)``.
    """
    cached = m._matrices.get(d)
    if cached is not None:
        return cached
    src = m.source.slice_exponents(d)
    tgt = m.target.slice_exponents(d)
    tgt_index = {e: i for i, e in enumerate(tgt)}
    cols = []
    for exps in src:
        image = apply_map(m, m.source.monomial(exps))
        col = [_ZERO] * len(tgt)
        for e, c in image.terms.items():
            col[tgt_index[e]] = c
        cols.append(col)
    matrix = [[cols[j][i] for j in range(len(src))] for i in range(len(tgt))]
    m._matrices[d] = matrix
    return matrix


@dataclass(frozen=True)
class HilbertSeries:
    """Truncated Hilbert series, optionally with a closed rational form.

    ``coeffs[d]`` is the dimension of the degree-``d`` slice for d ≤ D.  The
    closed form, when present, is numerator(t) / ∏ (1 - t^d) over
    ``denominator_degrees`` and must expand to ``coeffs``.
    """

    coeffs: tuple[int, ...]
    numerator: tuple[int, ...] | None = None
    denominator_degrees: tuple[int, ...] | None = None

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, d: int) -> int:
        if 0 <= d <= self.truncation:
            return self.coeffs[d]
        if self.numerator is not None:
            return expand_product_series(self.numerator, self.denominator_degrees, d)[d]
        raise RingError(f"degree {d} beyond truncation {self.truncation} and no closed form")

    def has_closed_form(self) -> bool:
        return self.numerator is not None

    def closed_form_matches(self) -> bool:
        if self.numerator is None:
            return True
        expansion = expand_product_series(self.numerator, self.denominator_degrees, self.truncation)
        return tuple(expansion) == self.coeffs

    def format_closed_form(self) -> str | None:
        if self.numerator is None:
            return None
        parts = []
        for d, c in enumerate(self.numerator):
            if not c:
                continue
            if d == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"t^{d}")
            else:
                parts.append(f"{c}*t^{d}")
        num = " + ".join(parts) if parts else "0"
        mult: dict[int, int] = {}
        for d in self.denominator_degrees or ():
            mult[d] = mult.get(d, 0) + 1
        den = "".join(
            f"(1-t^{d})" + (f"^{k}" if k > 1 else "") for d, k in sorted(mult.items())
        )
        return f"({num}) / {den}" if den else f"({num})"


def expand_product_series(numerator, denominator_degrees, D: int) -> list[int]:
    """Coefficients of numerator(t) / ∏(1 - t^d) through degree ``D``."""
    coeffs = [0] * (D + 1)
    for d, c in enumerate(numerator):
        if d <= D:
            coeffs[d] = c
    for deg in denominator_degrees or ():
        for d in range(deg, D + 1):
            coeffs[d] += coeffs[d - deg]
    return coeffs


def hilbert_series_ring(ring: GradedRing, D: int) -> HilbertSeries:
    """Hilbert series of the ring itself: 1 / ∏ (1 - t^{deg g})."""
    if D < 0:
        raise RingError("truncation degree must be nonnegative")
    numerator = (1,)
    coeffs = expand_product_series(numerator, ring.degrees, D)
    return HilbertSeries(tuple(coeffs), numerator, ring.degrees)


@dataclass(frozen=True)
class SurjectivityResult:
    per_degree: tuple[tuple[int, bool], ...]
    surjective: bool

    def failing_degrees(self) -> list[int]:
        return [d for d, ok in self.per_degree if not ok]


def surjectivity_check(m: RingMap, D: int) -> SurjectivityResult:
    """Full row rank of ``map_matrix(m, d)`` for every even d ≤ D."""
    results = []
    for d in range(0, D + 1, 2):
        matrix = map_matrix(m, d)
        ok = linalg.rank(matrix) == len(matrix)
        results.append((d, ok))
    return SurjectivityResult(tuple(results), all(ok for _, ok in results))

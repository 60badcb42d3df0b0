"""The equivariant cohomology module as a degree-truncated kernel.

Given restriction maps pi1: L→B, pi2: R→B and the base actions rho±, the
module is ker((f,g) ↦ pi1(f) − pi2(g)) ⊆ L ⊕ R, computed slice by slice up to
a truncation degree D.  Everything downstream (generators, freeness search,
torsion witnesses, regular-sequence certificates, Hilbert series) works on
those slices; every certificate is explicitly "up to degree D".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import DegreeOverflowError, HsopError, SetupError
from .graded import (
    GradedRing,
    HilbertSeries,
    Polynomial,
    RingMap,
    SurjectivityResult,
    apply_map,
    compose,
    hilbert_series_ring,
    map_matrix,
)

_ZERO = Fraction(0)

FREE, NOT_FREE, INCONCLUSIVE = "FREE", "NOT_FREE", "INCONCLUSIVE"


@dataclass(frozen=True)
class ModuleSetup:
    """Rings and maps feeding the kernel computation.

    ``pi1``/``pi2`` restrict the two singular-orbit rings to the principal one;
    ``rho_minus``/``rho_plus`` carry the base-ring action into them.  The
    square pi1∘rho_minus = pi2∘rho_plus must commute.
    """

    base: GradedRing
    left: GradedRing
    right: GradedRing
    bottom: GradedRing
    pi1: RingMap
    pi2: RingMap
    rho_minus: RingMap
    rho_plus: RingMap

    def validate(self) -> None:
        expected = (
            (self.pi1, self.left, self.bottom, "pi1"),
            (self.pi2, self.right, self.bottom, "pi2"),
            (self.rho_minus, self.base, self.left, "rho_minus"),
            (self.rho_plus, self.base, self.right, "rho_plus"),
        )
        for m, src, tgt, name in expected:
            if m.source != src or m.target != tgt:
                raise SetupError(f"{name} has wrong source or target ring")
        via_left = compose(self.pi1, self.rho_minus)
        via_right = compose(self.pi2, self.rho_plus)
        if via_left != via_right:
            raise SetupError(
                "compatibility square does not commute: pi1∘rho_minus != pi2∘rho_plus"
            )


@dataclass(frozen=True)
class KernelElement:
    """Homogeneous module element: coordinates over the degree-d slice of L ⊕ R."""

    degree: int
    vec: tuple[Fraction, ...]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.vec)


@dataclass(frozen=True)
class FreenessResult:
    verdict: str
    basis: tuple[KernelElement, ...] | None = None
    witness: tuple[KernelElement, Polynomial] | None = None
    detail: str = ""


@dataclass(frozen=True)
class RegularSequenceCertificate:
    hsop: tuple[Polynomial, ...]
    verified: bool
    length: int
    truncation: int
    checked_through: int
    failure: tuple[int, int, KernelElement] | None = None  # (hsop index, degree, element)


@dataclass
class KernelModule:
    """Degree-truncated kernel module with its base action."""

    setup: ModuleSetup
    D: int
    slices: dict[int, list[list[Fraction]]] = field(default_factory=dict)
    generators: list[KernelElement] | None = None
    freeness: FreenessResult | None = None

    def even_degrees(self):
        return range(0, self.D + 1, 2)

    def ambient_dim(self, d: int) -> int:
        return self.setup.left.slice_dim(d) + self.setup.right.slice_dim(d)

    def slice_dim(self, d: int) -> int:
        if d % 2 or d < 0 or d > self.D:
            return 0 if d % 2 else self._missing(d)
        return len(self.slices[d])

    def _missing(self, d: int):
        raise DegreeOverflowError(f"degree {d} outside computed range 0..{self.D}")

    def element(self, d: int, vec) -> KernelElement:
        return KernelElement(d, tuple(vec))

    def polys(self, el: KernelElement) -> tuple[Polynomial, Polynomial]:
        """The pair (f, g) of ring elements behind a slice vector."""
        left, right = self.setup.left, self.setup.right
        lexps = left.slice_exponents(el.degree)
        rexps = right.slice_exponents(el.degree)
        f = Polynomial(left, {e: c for e, c in zip(lexps, el.vec) if c})
        g = Polynomial(right, {e: c for e, c in zip(rexps, el.vec[len(lexps):]) if c})
        return f, g

    def from_polys(self, d: int, f: Polynomial, g: Polynomial) -> KernelElement:
        left, right = self.setup.left, self.setup.right
        vec = [f.coefficient(e) for e in left.slice_exponents(d)]
        vec += [g.coefficient(e) for e in right.slice_exponents(d)]
        return KernelElement(d, tuple(vec))


def difference_matrix(setup: ModuleSetup, d: int) -> linalg.Matrix:
    """Matrix of (f,g) ↦ pi1(f) − pi2(g) on degree-d slices.

    Columns are the left slice monomials followed by the right ones; rows are
    the bottom slice monomials.
    """
    m1 = map_matrix(setup.pi1, d)
    m2 = map_matrix(setup.pi2, d)
    return [row1 + [-x for x in row2] for row1, row2 in zip(m1, m2)]


def kernel_slices(setup: ModuleSetup, D: int) -> KernelModule:
    """Compute the kernel slice bases for every even degree ≤ D.

    Each slice basis is in reduced echelon form over the grlex-ordered
    concatenated monomial basis of L ⊕ R.
    """
    if D < 0:
        raise DegreeOverflowError("truncation degree must be nonnegative")
    setup.validate()
    km = KernelModule(setup, D)
    for d in km.even_degrees():
        ncols = km.ambient_dim(d)
        km.slices[d] = linalg.nullspace(difference_matrix(setup, d), ncols)
    return km


def difference_surjectivity(setup: ModuleSetup, D: int) -> SurjectivityResult:
    """Degree-wise surjectivity of the difference map onto the bottom ring."""
    results = []
    for d in range(0, D + 1, 2):
        matrix = difference_matrix(setup, d)
        results.append((d, linalg.rank(matrix) == len(matrix)))
    return SurjectivityResult(tuple(results), all(ok for _, ok in results))


def base_action(km: KernelModule, z: Polynomial, el: KernelElement) -> KernelElement:
    """Act by the base element z: (f, g) ↦ (rho₋(z)·f, rho₊(z)·g)."""
    if z.ring != km.setup.base:
        raise HsopError("action element must live in the base ring")
    zdeg = z.homogeneous_degree()
    if zdeg is None:
        raise HsopError(f"action element must be nonzero homogeneous, got {z}")
    target = el.degree + zdeg
    if target > km.D:
        raise DegreeOverflowError(
            f"action lands in degree {target}, beyond truncation {km.D}"
        )
    f, g = km.polys(el)
    f2 = apply_map(km.setup.rho_minus, z) * f
    g2 = apply_map(km.setup.rho_plus, z) * g
    return km.from_polys(target, f2, g2)


def module_generators(km: KernelModule) -> list[KernelElement]:
    """Greedy degree-ascending minimal generators over the base ring.

    At each even degree the span of base-action images of everything below is
    extended to the full slice by canonical slice-basis vectors (grlex
    pivoting); the vectors added are the new generators.  Acting on the
    generators found so far spans the same image space as acting on the full
    lower slices, monomial by monomial.
    """
    if km.generators is not None:
        return km.generators
    base = km.setup.base
    gens: list[KernelElement] = []
    for d in km.even_degrees():
        if not km.slices[d]:
            continue
        tracker = linalg.SpanTracker(km.ambient_dim(d))
        for g in gens:
            gap = d - g.degree
            for exps in base.slice_exponents(gap):
                img = base_action(km, base.monomial(exps), g)
                tracker.add(list(img.vec))
        for vec in km.slices[d]:
            if tracker.add(list(vec)):
                gens.append(km.element(d, vec))
    km.generators = gens
    return gens


def _action_columns(km: KernelModule, gens, d: int) -> list[list[Fraction]]:
    """Images z·g for every generator g and base monomial z with deg(z·g) = d."""
    base = km.setup.base
    cols = []
    for g in gens:
        gap = d - g.degree
        if gap < 0:
            continue
        for exps in base.slice_exponents(gap):
            img = base_action(km, base.monomial(exps), g)
            cols.append(list(img.vec))
    return cols


def free_basis_search(km: KernelModule) -> FreenessResult:
    """Decide FREE / NOT_FREE / INCONCLUSIVE up to the truncation degree.

    FREE requires the slice dimensions to match the free-module prediction of
    the generator degrees in every degree ≤ D and the structure map to be
    injective there (no syzygy).  NOT_FREE requires an explicit torsion
    witness (m, z) with z·m = 0.  Anything else stays INCONCLUSIVE.
    """
    if km.freeness is not None:
        return km.freeness
    gens = module_generators(km)
    hs_base = hilbert_series_ring(km.setup.base, km.D).coeffs
    problems = []
    for d in km.even_degrees():
        predicted = sum(hs_base[d - g.degree] for g in gens if g.degree <= d)
        actual = len(km.slices[d])
        if predicted != actual:
            problems.append(f"dimension {actual} != free prediction {predicted} at degree {d}")
            break
    if not problems:
        for d in km.even_degrees():
            cols = _action_columns(km, gens, d)
            if cols and linalg.rank(cols) < len(cols):
                problems.append(f"syzygy among generator images at degree {d}")
                break
    if not problems:
        result = FreenessResult(
            FREE,
            basis=tuple(gens),
            detail=f"free up to degree {km.D} with basis degrees "
            + " ".join(str(g.degree) for g in gens),
        )
        km.freeness = result
        return result
    witness = _torsion_witness(km)
    if witness is not None:
        el, z = witness
        result = FreenessResult(
            NOT_FREE,
            witness=witness,
            detail=f"torsion witness at degree {el.degree}: annihilated by {z}; " + problems[0],
        )
    else:
        result = FreenessResult(INCONCLUSIVE, detail=problems[0] + "; no torsion witness found")
    km.freeness = result
    return result


def _torsion_witness(km: KernelModule):
    """Search slice elements annihilated by a base generator.

    Scans degrees upward and base generators in catalog order, so the witness
    is deterministic.
    """
    base = km.setup.base
    for d in km.even_degrees():
        vectors = km.slices[d]
        if not vectors:
            continue
        for i in range(base.ngens):
            z = base.gen(i)
            if d + base.degrees[i] > km.D:
                continue
            cols = [list(base_action(km, z, km.element(d, v)).vec) for v in vectors]
            null = linalg.nullspace(cols, len(vectors))
            if null:
                coeffs = null[0]
                ambient = [_ZERO] * km.ambient_dim(d)
                for c, v in zip(coeffs, vectors):
                    if c:
                        for j, x in enumerate(v):
                            ambient[j] += c * x
                return km.element(d, ambient), z
    return None


def regular_sequence_check(km: KernelModule, hsop) -> RegularSequenceCertificate:
    """Iterated slice-wise injectivity check for a homogeneous sequence.

    Step i checks that hsop[i] multiplies injectively on the quotient of the
    module by (hsop[0..i-1]); a failure reports the first offending element.
    """
    hsop = tuple(hsop)
    if not hsop:
        raise HsopError("need at least one element in the sequence")
    degs = []
    for z in hsop:
        if z.ring != km.setup.base:
            raise HsopError("sequence elements must live in the base ring")
        zdeg = z.homogeneous_degree()
        if zdeg is None or zdeg == 0:
            raise HsopError(f"sequence elements must be homogeneous of positive degree, got {z}")
        degs.append(zdeg)
    checked_through = km.D - sum(degs)
    modded = {d: linalg.SpanTracker(km.ambient_dim(d)) for d in km.even_degrees()}
    for idx, (z, zdeg) in enumerate(zip(hsop, degs)):
        for d in km.even_degrees():
            if d + zdeg > km.D:
                break
            vectors = km.slices[d]
            dom = len(vectors) - modded[d].dim
            if dom == 0:
                continue
            probe = modded[d + zdeg].copy()
            grown = 0
            images = []
            for v in vectors:
                img = list(base_action(km, z, km.element(d, v)).vec)
                images.append(img)
                if probe.add(img):
                    grown += 1
            if grown < dom:
                el = _quotient_kernel_element(km, d, vectors, images, modded[d], modded[d + zdeg])
                return RegularSequenceCertificate(
                    hsop, False, len(hsop), km.D, checked_through, (idx, d, el)
                )
        for d in km.even_degrees():
            if d + zdeg > km.D:
                break
            for v in km.slices[d]:
                modded[d + zdeg].add(list(base_action(km, z, km.element(d, v)).vec))
    return RegularSequenceCertificate(hsop, True, len(hsop), km.D, checked_through)


def _quotient_kernel_element(km, d, vectors, images, mod_here, mod_there):
    """Explicit element of the quotient killed by the multiplication map."""
    cols = [list(img) for img in images] + mod_there.basis()
    null = linalg.nullspace(cols, len(images) + mod_there.dim)
    for vec in null:
        coeffs = vec[: len(images)]
        if all(c == 0 for c in coeffs):
            continue
        ambient = [_ZERO] * km.ambient_dim(d)
        for c, v in zip(coeffs, vectors):
            if c:
                for j, x in enumerate(v):
                    ambient[j] += c * x
        if not mod_here.contains(ambient):
            return km.element(d, ambient)
    raise AssertionError("rank bookkeeping and kernel solve disagree")


def hilbert_series_module(km: KernelModule) -> HilbertSeries:
    """Slice dimensions as a truncated series; closed form only when FREE."""
    coeffs = [0] * (km.D + 1)
    for d in km.even_degrees():
        coeffs[d] = len(km.slices[d])
    if km.freeness is not None and km.freeness.verdict == FREE:
        top = max((g.degree for g in km.freeness.basis), default=0)
        numerator = [0] * (top + 1)
        for g in km.freeness.basis:
            numerator[g.degree] += 1
        return HilbertSeries(tuple(coeffs), tuple(numerator), km.setup.base.degrees)
    return HilbertSeries(tuple(coeffs))

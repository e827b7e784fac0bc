"""Upper-density estimation, threshold arithmetic, component-group models.

Densities are exact rationals throughout.  A limsup is not observable at a
finite cutoff, so reports carry both the final empirical ratio and the
running supremum over a checkpoint grid, and never conflate the two.

Finite groups are permutation groups given by generators, fully enumerated
(at most 10^4 elements).  A normal subgroup plays the role of the identity
component; the quotient's cosets are the components.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .arith import sieve_primes
from .errors import GroupTooLargeError, NotStableError, UsageError
from .rng import SplitMix64

MAX_GROUP_SIZE = 10_000

Perm = tuple[int, ...]


# ---------------------------------------------------------------------------
# densities of prime sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityReport:
    """Exact counting report: final ratio plus running sup over checkpoints.

    ``checkpoints`` holds (position, count, total) triples; ``empirical``
    is count/total at the last checkpoint and ``running_sup`` the maximum
    of the prefix ratios.
    """

    count: int
    total: int
    empirical: Fraction
    running_sup: Fraction
    checkpoints: tuple[tuple[int, int, int], ...]


def _report_from_checkpoints(checks: list[tuple[int, int, int]]) -> DensityReport:
    ratios = [Fraction(c, t) if t else Fraction(0) for _, c, t in checks]
    return DensityReport(
        count=checks[-1][1],
        total=checks[-1][2],
        empirical=ratios[-1],
        running_sup=max(ratios),
        checkpoints=tuple(checks),
    )


@dataclass(frozen=True)
class PrimeSet:
    """Sorted primes up to a cutoff."""

    members: tuple[int, ...]
    cutoff: int

    def __post_init__(self):
        prime_set = set(sieve_primes(self.cutoff))
        if list(self.members) != sorted(set(self.members)):
            raise UsageError("members must be strictly ascending without duplicates")
        for p in self.members:
            if p not in prime_set:
                raise UsageError(f"{p} is not a prime <= {self.cutoff}")


def empirical_upper_density(s: PrimeSet, checkpoints: list[int]) -> DensityReport:
    """Prefix densities of s against all primes, at each checkpoint."""
    if not checkpoints or list(checkpoints) != sorted(checkpoints):
        raise UsageError("checkpoints must be a nonempty ascending list")
    if checkpoints[-1] != s.cutoff:
        raise UsageError("last checkpoint must equal the cutoff")
    primes = sieve_primes(s.cutoff)
    checks = []
    for x in checkpoints:
        count = bisect_right(s.members, x)
        total = bisect_right(primes, x)
        checks.append((x, count, total))
    return _report_from_checkpoints(checks)


def threshold(c1: int, c2: int) -> Fraction:
    """min(1 - 1/c1, 1 - 1/c2): the density needed for two component counts."""
    if c1 < 1 or c2 < 1:
        raise UsageError("component counts must be >= 1")
    return min(1 - Fraction(1, c1), 1 - Fraction(1, c2))


def lift_density(delta: Fraction, d: int) -> Fraction:
    """d*(delta - (1 - 1/d)): density surviving to a degree-d extension.

    Nonpositive output signals that delta > 1 - 1/d fails.
    """
    if d < 1:
        raise UsageError("degree must be >= 1")
    delta = Fraction(delta)
    if not 0 <= delta <= 1:
        raise UsageError("delta must lie in [0, 1]")
    return d * (delta - (1 - Fraction(1, d)))


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


def perm_identity(degree: int) -> Perm:
    return tuple(range(degree))


def perm_compose(p: Perm, q: Perm) -> Perm:
    """(p * q)(x) = p(q(x))."""
    return tuple(p[q[i]] for i in range(len(p)))


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, img in enumerate(p):
        inv[img] = i
    return tuple(inv)


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 1-based cycle notation like ``(1 2 3)(4 5)``; ``()`` is identity."""
    images = list(range(degree))
    body = text.strip()
    if body in ("()", ""):
        return tuple(images)
    if not (body.startswith("(") and body.endswith(")")):
        raise UsageError(f"bad cycle notation: {text!r}")
    for cyc in body[1:-1].split(")("):
        pts = []
        for tok in cyc.replace(",", " ").split():
            pt = int(tok) - 1
            if not 0 <= pt < degree:
                raise UsageError(f"point {tok} outside degree {degree}")
            pts.append(pt)
        if len(set(pts)) != len(pts):
            raise UsageError(f"repeated point in cycle {cyc!r}")
        for i, pt in enumerate(pts):
            images[pt] = pts[(i + 1) % len(pts)]
    return tuple(images)


def format_cycles(p: Perm) -> str:
    """1-based disjoint-cycle form; identity prints as ``()``."""
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = p[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = p[nxt]
        cycles.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(cycles) if cycles else "()"


def generate_group(generators: list[Perm], degree: int, max_size: int = MAX_GROUP_SIZE) -> list[Perm]:
    """Close generators under composition; sorted elements, identity first."""
    ident = perm_identity(degree)
    for g in generators:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise UsageError(f"not a permutation of degree {degree}: {g}")
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = perm_compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > max_size:
                        raise GroupTooLargeError(f"group exceeds {max_size} elements")
        frontier = nxt
    return sorted(seen)


# ---------------------------------------------------------------------------
# component models
# ---------------------------------------------------------------------------


class ComponentModel:
    """Finite group with a normal subgroup standing in for the identity component.

    ``components`` lists the cosets of the normal subgroup, identity coset
    first, the rest ordered by their lexicographically least element.
    """

    def __init__(self, degree: int, generators: list[Perm], normal_generators: list[Perm]):
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        self.elements = generate_group(self.generators, degree)
        self._element_set = frozenset(self.elements)
        normal_gens = [tuple(g) for g in normal_generators]
        normal = generate_group(normal_gens, degree)
        if not set(normal) <= self._element_set:
            raise UsageError("normal subgroup generators fall outside the group")
        nset = frozenset(normal)
        for g in self.generators:
            ginv = perm_inverse(g)
            for x in normal:
                if perm_compose(g, perm_compose(x, ginv)) not in nset:
                    raise UsageError("subgroup is not normal")
        self.normal = normal
        assigned: dict[Perm, int] = {}
        components: list[frozenset[Perm]] = []
        for x in self.elements:  # sorted, identity first
            if x in assigned:
                continue
            coset = frozenset(perm_compose(x, n) for n in normal)
            idx = len(components)
            components.append(coset)
            for y in coset:
                assigned[y] = idx
        self.components = components
        self.component_of = assigned
        self.c = len(components)
        assert self.c * len(self.normal) == len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def component_representative(self, idx: int) -> Perm:
        return min(self.components[idx])


class ClassStableSet:
    """Subset of the group closed under conjugation, checked at construction."""

    def __init__(self, model: ComponentModel, elements):
        elems = frozenset(tuple(e) for e in elements)
        if not elems <= model._element_set:
            raise UsageError("set contains elements outside the group")
        for g in model.generators:
            ginv = perm_inverse(g)
            for s in elems:
                if perm_compose(g, perm_compose(s, ginv)) not in elems:
                    raise NotStableError("set is not closed under conjugation")
        self.model = model
        self.elements = elems
        self.is_coset_union = all(
            comp <= elems or not (comp & elems) for comp in model.components
        )

    @classmethod
    def whole_group(cls, model: ComponentModel) -> "ClassStableSet":
        return cls(model, model.elements)

    @classmethod
    def empty(cls, model: ComponentModel) -> "ClassStableSet":
        return cls(model, ())

    @classmethod
    def conjugacy_class_closure(cls, model: ComponentModel, seeds) -> "ClassStableSet":
        """Smallest conjugation-stable set containing the seeds."""
        seeds = [tuple(s) for s in seeds]
        closure = set()
        frontier = list(seeds)
        for s in seeds:
            if s not in model._element_set:
                raise UsageError(f"seed {format_cycles(s)} is outside the group")
        closure.update(seeds)
        while frontier:
            nxt = []
            for s in frontier:
                for g in model.generators:
                    y = perm_compose(g, perm_compose(s, perm_inverse(g)))
                    if y not in closure:
                        closure.add(y)
                        nxt.append(y)
            frontier = nxt
        return cls(model, closure)

    @classmethod
    def coset_of(cls, model: ComponentModel, representative: Perm) -> "ClassStableSet":
        rep = tuple(representative)
        if rep not in model._element_set:
            raise UsageError(f"{format_cycles(rep)} is outside the group")
        return cls(model, model.components[model.component_of[rep]])

    def union(self, other: "ClassStableSet") -> "ClassStableSet":
        if other.model is not self.model:
            raise UsageError("sets belong to different models")
        return ClassStableSet(self.model, self.elements | other.elements)


def chebotarev_density(model: ComponentModel, x: ClassStableSet) -> Fraction:
    """Fraction of components fully contained in x."""
    contained = sum(1 for comp in model.components if comp <= x.elements)
    return Fraction(contained, model.c)


def find_component_in(model: ComponentModel, x: ClassStableSet) -> int | None:
    """Index of some component contained in x (identity component first), else None."""
    for idx, comp in enumerate(model.components):
        if comp <= x.elements:
            return idx
    return None


def sample_frobenius(
    model: ComponentModel, x: ClassStableSet, trials: int, seed: int
) -> DensityReport:
    """Uniform draws from the group via SplitMix64(seed); exact hit ratios.

    When x is a union of cosets the hit fraction estimates the exact
    component density; the checkpoint grid is ten evenly spaced prefixes.
    """
    if trials < 1:
        raise UsageError("trials must be >= 1")
    rng = SplitMix64(seed)
    elems = model.elements
    members = x.elements
    grid = sorted({max(1, (trials * i) // 10) for i in range(1, 10)} | {trials})
    checks = []
    hits = 0
    gi = 0
    for t in range(1, trials + 1):
        if elems[rng.below(len(elems))] in members:
            hits += 1
        if t == grid[gi]:
            checks.append((t, hits, t))
            gi += 1
    return _report_from_checkpoints(checks)

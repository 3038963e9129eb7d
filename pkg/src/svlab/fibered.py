"""Degeneration trees of ruled-surface fibers and their contraction.

A fiber of a (possibly non-minimal) ruled surface is a tree of smooth
rational components.  Each component carries its self-intersection, its
multiplicity in the fiber class, its degree against the canonical class
(forced to -2 - self by adjunction) and its degree against the divisor
of interest.  Everything the engine needs - fiber-class identities,
(-1)-contractions, minimality audits - is bookkeeping on those numbers.

Contractions here are the D-trivial kind only: a (-1)-component with
D-degree 0.  Contracting anything else changes sections of D and is the
business of the scenario layer, not this calculus.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import is_prime


class FiberTreeError(ValueError):
    """Numerically inconsistent fiber data."""


@dataclass(frozen=True)
class FiberComponent:
    self_intersection: int
    multiplicity: int
    k_degree: int
    d_degree: int

    def __post_init__(self):
        if self.multiplicity < 1:
            raise FiberTreeError("component multiplicity must be positive")
        if self.d_degree < 0:
            raise FiberTreeError("nef degree cannot be negative")
        if self.k_degree != -2 - self.self_intersection:
            raise FiberTreeError(
                "rational component needs K-degree -2 - self-intersection"
            )


def component(self_intersection, multiplicity, d_degree=0) -> FiberComponent:
    """Adjunction-completing constructor."""
    return FiberComponent(
        self_intersection, multiplicity, -2 - self_intersection, d_degree
    )


@dataclass(frozen=True)
class FiberTree:
    components: tuple[FiberComponent, ...]
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        n = len(self.components)
        if n == 0:
            raise FiberTreeError("a fiber has at least one component")
        norm = []
        seen = set()
        for i, j in self.edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise FiberTreeError("edge endpoints out of range")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise FiberTreeError("duplicate edge")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if len(self.edges) != n - 1:
            raise FiberTreeError("component graph must be a tree")
        if n > 1 and len(self._reachable(0)) != n:
            raise FiberTreeError("component graph must be connected")
        # each component meets the full fiber class trivially
        for i, c in enumerate(self.components):
            against = c.multiplicity * c.self_intersection + sum(
                self.components[j].multiplicity for j in self.neighbors(i)
            )
            if against != 0:
                raise FiberTreeError(
                    f"component {i} meets the fiber with degree {against}"
                )
        if self.k_degree() != -2:
            raise FiberTreeError(
                f"fiber has K-degree {self.k_degree()}, needs -2"
            )

    def _reachable(self, start: int) -> set[int]:
        stack, seen = [start], {start}
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def neighbors(self, i: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return out

    def self_degree(self) -> int:
        """F.F, recomputed from components; zero for valid trees."""
        total = 0
        for i, c in enumerate(self.components):
            against = c.multiplicity * c.self_intersection + sum(
                self.components[j].multiplicity for j in self.neighbors(i)
            )
            total += c.multiplicity * against
        return total

    def k_degree(self) -> int:
        return sum(c.multiplicity * c.k_degree for c in self.components)

    def d_degree(self) -> int:
        return sum(c.multiplicity * c.d_degree for c in self.components)

    def is_reduced_to_section_fiber(self) -> bool:
        return (
            len(self.components) == 1
            and self.components[0].self_intersection == 0
        )

    def eligible_contractions(self) -> list[int]:
        """D-trivial (-1)-components, in index order."""
        return [
            i
            for i, c in enumerate(self.components)
            if c.self_intersection == -1 and c.d_degree == 0
        ]


def contract_component(tree: FiberTree, i: int) -> FiberTree:
    """Blow down component i (must be a D-trivial (-1)-curve meeting at
    most two others): neighbors gain one self-intersection, lose one
    K-degree, and become adjacent to each other."""
    c = tree.components[i]
    if c.self_intersection != -1:
        raise FiberTreeError("only (-1)-components contract")
    if c.d_degree != 0:
        raise FiberTreeError("contraction must not meet the divisor")
    nbrs = tree.neighbors(i)
    if len(nbrs) > 2:
        raise FiberTreeError(
            "contraction would close a cycle; not a fiber tree"
        )
    comps = []
    renum = {}
    for j, comp in enumerate(tree.components):
        if j == i:
            continue
        renum[j] = len(comps)
        if j in nbrs:
            comps.append(
                FiberComponent(
                    comp.self_intersection + 1,
                    comp.multiplicity,
                    comp.k_degree - 1,
                    comp.d_degree,
                )
            )
        else:
            comps.append(comp)
    edges = [
        (renum[a], renum[b])
        for a, b in tree.edges
        if a != i and b != i
    ]
    if len(nbrs) == 2:
        edges.append((renum[nbrs[0]], renum[nbrs[1]]))
    return FiberTree(tuple(comps), tuple(edges))


@dataclass(frozen=True)
class ContractionStep:
    fiber_index: int
    component_index: int
    multiplicity: int


def reduce_tree(tree: FiberTree, choose=None):
    """Contract D-trivial (-1)-components until none remain.

    ``choose`` picks among eligible indices (default: lowest); the final
    tree is independent of the policy.  Returns (tree, contracted index
    list).
    """
    steps = []
    while True:
        options = tree.eligible_contractions()
        if not options:
            return tree, steps
        i = options[0] if choose is None else choose(options)
        steps.append((i, tree.components[i].multiplicity))
        tree = contract_component(tree, i)


def blow_up_on_component(tree: FiberTree, i: int) -> FiberTree:
    """Insert the exceptional curve of a point blown up on component i.

    The strict transform of i drops one self-intersection; the new
    (-1)-component inherits multiplicity m_i and meets the divisor
    pullback trivially.
    """
    if not 0 <= i < len(tree.components):
        raise FiberTreeError("no such component")
    comps = []
    for j, c in enumerate(tree.components):
        if j == i:
            comps.append(
                FiberComponent(
                    c.self_intersection - 1,
                    c.multiplicity,
                    c.k_degree + 1,
                    c.d_degree,
                )
            )
        else:
            comps.append(c)
    new = len(comps)
    comps.append(component(-1, tree.components[i].multiplicity))
    return FiberTree(tuple(comps), tree.edges + ((i, new),))


def blow_up_on_edge(tree: FiberTree, i: int, j: int) -> FiberTree:
    """Insert the exceptional curve of a point blown up where components
    i and j cross.  Both strict transforms drop one self-intersection
    and the new (-1)-component separates them with multiplicity
    m_i + m_j."""
    key = (min(i, j), max(i, j))
    if key not in tree.edges:
        raise FiberTreeError("components do not meet")
    comps = []
    for t, c in enumerate(tree.components):
        if t in key:
            comps.append(
                FiberComponent(
                    c.self_intersection - 1,
                    c.multiplicity,
                    c.k_degree + 1,
                    c.d_degree,
                )
            )
        else:
            comps.append(c)
    new = len(comps)
    m = (
        tree.components[i].multiplicity
        + tree.components[j].multiplicity
    )
    comps.append(component(-1, m))
    edges = tuple(e for e in tree.edges if e != key)
    return FiberTree(tuple(comps), edges + ((i, new), (j, new)))


@dataclass(frozen=True)
class MinimalityAudit:
    """Bookkeeping proof that a configuration with a divisor-positive
    (-1)-component and otherwise contraction-free components cannot be a
    fiber: its K-degree sum misses -2."""

    k_degree_sum: int
    required: int
    contradiction: bool
    detail: str


def minimality_audit(components) -> MinimalityAudit:
    """Audit raw component data (validation deliberately skipped: the
    point is that bad hypothetical configurations indict themselves).

    Accepts FiberComponent instances or (self_intersection,
    multiplicity, d_degree) triples.
    """
    comps = [
        c if isinstance(c, FiberComponent) else component(*c)
        for c in components
    ]
    total = sum(c.multiplicity * c.k_degree for c in comps)
    contradiction = total != -2
    if contradiction:
        detail = (
            f"sum of multiplicity-weighted K-degrees is {total}, but a"
            " fiber needs -2; this configuration cannot persist"
        )
    else:
        detail = "K-degree sum is -2; no obstruction from this audit"
    return MinimalityAudit(total, -2, contradiction, detail)


@dataclass(frozen=True)
class FiberedModel:
    """A ruled surface presented by its base genus and a list of
    (possibly degenerate) fibers."""

    base_genus: int
    characteristic: int
    fibers: tuple[FiberTree, ...]

    def __post_init__(self):
        if self.base_genus < 0:
            raise FiberTreeError("base genus must be nonnegative")
        if self.characteristic != 0 and not is_prime(self.characteristic):
            raise FiberTreeError("characteristic must be 0 or a prime")
        if not self.fibers:
            raise FiberTreeError("at least one fiber is required")
        degrees = {t.d_degree() for t in self.fibers}
        if len(degrees) > 1:
            raise FiberTreeError(
                f"divisor degree must agree across fibers, got {degrees}"
            )

    @property
    def chi_structure(self) -> int:
        return 1 - self.base_genus

    def fiber_degree(self) -> int:
        return self.fibers[0].d_degree()

    def is_relatively_minimal(self) -> bool:
        return all(t.is_reduced_to_section_fiber() for t in self.fibers)


def reduce_model(model: FiberedModel, choose=None):
    """Apply reduce_tree fiberwise; returns (model, trace)."""
    trace = []
    new_fibers = []
    for fi, tree in enumerate(model.fibers):
        reduced, steps = reduce_tree(tree, choose)
        new_fibers.append(reduced)
        trace.extend(
            ContractionStep(fi, ci, mult) for ci, mult in steps
        )
    return (
        FiberedModel(model.base_genus, model.characteristic,
                     tuple(new_fibers)),
        tuple(trace),
    )

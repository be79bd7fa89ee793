"""Exact deletion-distance solvers.

Three routes to the same question ("can deleting at most k voters or
alternatives reach the domain?"):

* ``max_single_crossing_voters`` solves the single-crossing voter case in
  polynomial time by a maximum-weight path in an inclusion DAG over distinct
  rankings.
* ``fpt_branch`` branches over the members of one forbidden substructure per
  node, so the search tree has depth at most k and width at most the witness
  arity (4 for delta voters, 6 for gamma alternatives).
* ``brute_force`` enumerates deletion subsets in ascending size and serves
  as the independent oracle; it refuses instances beyond its subset guard.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .configurations import DetectionContext, ProfileView
from .errors import GuardExceededError
from .profiles import PreferenceOrder, Profile, dedup, orientation_mask, restrict
from .recognition import (
    DomainProperty,
    RecognitionResult,
    check,
    violation_in_view,
)

__all__ = [
    "DeletionMode",
    "SolveOutcome",
    "InclusionDag",
    "BRUTE_FORCE_GUARD",
    "build_inclusion_dag",
    "max_weight_path",
    "max_single_crossing_voters",
    "fpt_branch",
    "brute_force",
    "decide",
    "min_distance",
]

BRUTE_FORCE_GUARD = 10_000_000


class DeletionMode(enum.Enum):
    VOTERS = "voters"
    ALTERNATIVES = "alternatives"


@dataclass(frozen=True)
class SolveOutcome:
    """Result of one deletion query, with the certificate of the remainder.

    ``deleted`` is canonical (lexicographically smallest among minimum-size
    feasible sets) for the brute method; the poly method returns the set
    determined by its lexicographic path tie-breaking; the fpt method returns
    its first-found feasible set without global canonicity.
    """

    property: DomainProperty
    mode: DeletionMode
    k: int
    feasible: bool
    deleted: tuple[int, ...]
    method: str
    explored: int
    elapsed_ms: float
    certificate: RecognitionResult | None

    @property
    def size(self) -> int:
        return len(self.deleted)

    def to_json_dict(self, profile: Profile) -> dict:
        names = profile.voter_names if self.mode is DeletionMode.VOTERS else profile.alternative_names
        return {
            "feasible": self.feasible,
            "mode": self.mode.value,
            "property": self.property.value,
            "k": self.k,
            "size": self.size,
            "deleted": [names[i] for i in self.deleted],
            "method": self.method,
            "explored": self.explored,
            "elapsed_ms": self.elapsed_ms,
        }


def _outcome_certificate(profile: Profile, prop: DomainProperty, mode: DeletionMode,
                         deleted: tuple[int, ...]) -> RecognitionResult:
    if mode is DeletionMode.VOTERS:
        keep = [v for v in range(profile.n) if v not in set(deleted)]
        remainder = restrict(profile, keep_voters=keep).profile
    else:
        keep = [a for a in range(profile.m) if a not in set(deleted)]
        remainder = restrict(profile, keep_alternatives=keep).profile
    return check(remainder, prop)


# ---------------------------------------------------------------------------
# Polynomial algorithm for single-crossing voter deletion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InclusionDag:
    """Conflict-set inclusion DAG over distinct rankings.

    Vertex 0 is the root; vertex ``1 + anchor * n_orders + i`` represents
    ranking i in a single-crossing order that starts with the anchor ranking.
    Arcs point along strict conflict-set inclusion (anchored at the arc's
    anchor) and carry the multiplicity of the target ranking; root arcs go to
    the diagonal vertices only.  Any root path therefore spells out a valid
    single-crossing order of the rankings it visits, and its weight counts
    the voters holding them.
    """

    n_orders: int
    multiplicities: tuple[int, ...]
    arcs: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def n_vertices(self) -> int:
        return 1 + self.n_orders * self.n_orders

    def vertex_id(self, anchor: int, order: int) -> int:
        return 1 + anchor * self.n_orders + order

    def order_at(self, vertex: int) -> int:
        return (vertex - 1) % self.n_orders

    def anchor_at(self, vertex: int) -> int:
        return (vertex - 1) // self.n_orders

    def root_arc_weights(self) -> tuple[int, ...]:
        return tuple(w for _, w in self.arcs[0])


def build_inclusion_dag(
    distinct_orders: tuple[PreferenceOrder, ...] | list[PreferenceOrder],
    multiplicity: tuple[int, ...] | list[int],
) -> InclusionDag:
    orders = tuple(distinct_orders)
    mult = tuple(multiplicity)
    if len(orders) != len(mult):
        raise ValueError("one multiplicity per distinct order required")
    if any(c <= 0 for c in mult):
        raise ValueError("multiplicities must be positive")
    if len({o.ranking for o in orders}) != len(orders):
        raise ValueError("orders must be pairwise distinct")
    n_orders = len(orders)
    masks = [orientation_mask(o) for o in orders]
    arcs: list[tuple[tuple[int, int], ...]] = [
        tuple((1 + z * n_orders + z, mult[z]) for z in range(n_orders))
    ]
    for anchor in range(n_orders):
        base = masks[anchor]
        deltas = [base ^ masks[i] for i in range(n_orders)]
        for i in range(n_orders):
            d_i = deltas[i]
            out = tuple(
                (1 + anchor * n_orders + j, mult[j])
                for j in range(n_orders)
                if j != i and d_i & ~deltas[j] == 0
            )
            arcs.append(out)
    return InclusionDag(n_orders=n_orders, multiplicities=mult, arcs=tuple(arcs))


def max_weight_path(dag: InclusionDag) -> tuple[tuple[int, ...], int]:
    """Maximum-weight root path; ties broken by lexicographic vertex order."""
    best: dict[int, int] = {}
    on_stack: set[int] = set()

    def value(vertex: int) -> int:
        cached = best.get(vertex)
        if cached is not None:
            return cached
        if vertex in on_stack:
            raise ValueError("inclusion DAG contains a cycle")
        on_stack.add(vertex)
        score = 0
        for target, weight in dag.arcs[vertex]:
            total = weight + value(target)
            if total > score:
                score = total
        on_stack.discard(vertex)
        best[vertex] = score
        return score

    weight = value(0)
    path = [0]
    vertex = 0
    while True:
        nxt = None
        for target, arc_weight in dag.arcs[vertex]:  # targets ascend within each arc list
            if arc_weight + value(target) == best[vertex]:
                nxt = target
                break
        if nxt is None:
            break
        path.append(nxt)
        vertex = nxt
    return tuple(path), weight


def max_single_crossing_voters(profile: Profile) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Largest voter set whose induced profile is single-crossing.

    Returns (kept voters ascending, a valid single-crossing order of them).
    Path vertices expand to their voter groups in ascending voter index.
    """
    orders, mult, groups = dedup(profile)
    dag = build_inclusion_dag(orders, mult)
    path, _ = max_weight_path(dag)
    sequence: list[int] = []
    for vertex in path[1:]:
        sequence.extend(groups[dag.order_at(vertex)])
    return tuple(sorted(sequence)), tuple(sequence)


# ---------------------------------------------------------------------------
# FPT branching and brute force
# ---------------------------------------------------------------------------


def _entity_count(profile: Profile, mode: DeletionMode) -> int:
    return profile.n if mode is DeletionMode.VOTERS else profile.m


def fpt_branch(profile: Profile, prop: DomainProperty, mode: DeletionMode, k: int) -> SolveOutcome:
    """Depth-bounded branching over the members of one forbidden substructure.

    At each node the detector's first witness is taken and one of its voters
    (resp. alternatives) is deleted per branch.  Every feasible solution must
    hit every witness, so the branching is exhaustive.  Deletion sets already
    proven infeasible are memoized; that only prunes repeat visits and leaves
    the first-found result identical to the plain depth-first search.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    start = time.perf_counter()
    ctx = DetectionContext(profile)
    voters_mode = mode is DeletionMode.VOTERS
    explored = 0
    failed: set[int] = set()
    found: list[int] = []

    def dfs(view: ProfileView, deleted_bits: int, budget: int) -> bool:
        nonlocal explored
        explored += 1
        witness = violation_in_view(ctx, view, prop)
        if witness is None:
            return True
        if budget == 0:
            return False
        members = witness.voters if voters_mode else witness.alternatives
        seen_members: set[int] = set()
        for member in members:
            if member in seen_members:
                continue
            seen_members.add(member)
            bits = deleted_bits | (1 << member)
            if bits in failed:
                continue
            child = view.drop_voter(member) if voters_mode else view.drop_alternative(ctx, member)
            found.append(member)
            if dfs(child, bits, budget - 1):
                return True
            found.pop()
            failed.add(bits)
        return False

    feasible = dfs(ctx.full_view(), 0, min(k, _entity_count(profile, mode)))
    deleted = tuple(sorted(found)) if feasible else ()
    certificate = _outcome_certificate(profile, prop, mode, deleted) if feasible else None
    return SolveOutcome(
        property=prop,
        mode=mode,
        k=k,
        feasible=feasible,
        deleted=deleted,
        method="fpt",
        explored=explored,
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
        certificate=certificate,
    )


def _brute_scan(
    profile: Profile, prop: DomainProperty, mode: DeletionMode, k: int, budget: int
) -> tuple[tuple[int, ...] | None, int]:
    """First feasible deletion set in (size, lexicographic) enumeration order."""
    ctx = DetectionContext(profile)
    voters_mode = mode is DeletionMode.VOTERS
    size = _entity_count(profile, mode)
    k = min(k, size)
    explored = 0
    cost = 0
    for j in range(k + 1):
        cost += comb(size, j)
        if cost > budget:
            raise GuardExceededError(
                f"brute force would test more than {budget} subsets"
            )
        for combo in combinations(range(size), j):
            explored += 1
            view = (
                ctx.view(deleted_voters=combo)
                if voters_mode
                else ctx.view(deleted_alternatives=combo)
            )
            if violation_in_view(ctx, view, prop) is None:
                return combo, explored
    return None, explored


def brute_force(profile: Profile, prop: DomainProperty, mode: DeletionMode, k: int) -> SolveOutcome:
    """Oracle: enumerate deletion subsets by ascending size, then lexicographic.

    The first feasible subset found is the canonical minimum.  Refuses to run
    when the number of candidate subsets exceeds BRUTE_FORCE_GUARD.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    start = time.perf_counter()
    size = _entity_count(profile, mode)
    total = sum(comb(size, j) for j in range(min(k, size) + 1))
    if total > BRUTE_FORCE_GUARD:
        raise GuardExceededError(
            f"{total} candidate subsets exceed the guard of {BRUTE_FORCE_GUARD}"
        )
    deleted, explored = _brute_scan(profile, prop, mode, k, BRUTE_FORCE_GUARD)
    feasible = deleted is not None
    deleted_t = tuple(deleted) if feasible else ()
    certificate = _outcome_certificate(profile, prop, mode, deleted_t) if feasible else None
    return SolveOutcome(
        property=prop,
        mode=mode,
        k=k,
        feasible=feasible,
        deleted=deleted_t,
        method="brute",
        explored=explored,
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
        certificate=certificate,
    )


def _poly_outcome(profile: Profile, k: int | None, start: float) -> SolveOutcome:
    kept, _ = max_single_crossing_voters(profile)
    kept_set = set(kept)
    deleted = tuple(v for v in range(profile.n) if v not in kept_set)
    feasible = k is None or len(deleted) <= k
    dag_vertices = 1 + len(dedup(profile).distinct_orders) ** 2
    certificate = (
        _outcome_certificate(profile, DomainProperty.SINGLE_CROSSING, DeletionMode.VOTERS, deleted)
        if feasible
        else None
    )
    return SolveOutcome(
        property=DomainProperty.SINGLE_CROSSING,
        mode=DeletionMode.VOTERS,
        k=len(deleted) if k is None else k,
        feasible=feasible,
        deleted=deleted if feasible else (),
        method="poly",
        explored=dag_vertices,
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
        certificate=certificate,
    )


def _resolve_method(prop: DomainProperty, mode: DeletionMode, method: str) -> str:
    if method == "auto":
        if prop is DomainProperty.SINGLE_CROSSING and mode is DeletionMode.VOTERS:
            return "poly"
        return "fpt"
    if method == "poly" and not (
        prop is DomainProperty.SINGLE_CROSSING and mode is DeletionMode.VOTERS
    ):
        raise ValueError("the polynomial method only supports single-crossing voter deletion")
    if method not in ("fpt", "brute", "poly"):
        raise ValueError(f"unknown method {method!r}")
    return method


def decide(
    profile: Profile, prop: DomainProperty, mode: DeletionMode, k: int, method: str = "auto"
) -> SolveOutcome:
    """Decision form: is a deletion set of size at most k feasible?"""
    method = _resolve_method(prop, mode, method)
    if method == "fpt":
        return fpt_branch(profile, prop, mode, k)
    if method == "brute":
        return brute_force(profile, prop, mode, k)
    return _poly_outcome(profile, k, time.perf_counter())


def min_distance(
    profile: Profile, prop: DomainProperty, mode: DeletionMode, method: str = "auto"
) -> SolveOutcome:
    """Smallest k admitting a feasible deletion set, with one such set.

    fpt restarts with increasing k; brute enumerates subsets by ascending
    size under a cumulative guard; poly reads the distance off the inclusion
    DAG directly.
    """
    method = _resolve_method(prop, mode, method)
    start = time.perf_counter()
    size = _entity_count(profile, mode)
    if method == "poly":
        return _poly_outcome(profile, None, start)
    if method == "fpt":
        explored = 0
        for k in range(size + 1):
            outcome = fpt_branch(profile, prop, mode, k)
            explored += outcome.explored
            if outcome.feasible:
                return SolveOutcome(
                    property=prop,
                    mode=mode,
                    k=k,
                    feasible=True,
                    deleted=outcome.deleted,
                    method="fpt",
                    explored=explored,
                    elapsed_ms=(time.perf_counter() - start) * 1000.0,
                    certificate=outcome.certificate,
                )
        raise AssertionError("deleting everything always conforms")  # pragma: no cover
    deleted, explored = _brute_scan(profile, prop, mode, size, BRUTE_FORCE_GUARD)
    assert deleted is not None  # deleting everything conforms
    certificate = _outcome_certificate(profile, prop, mode, deleted)
    return SolveOutcome(
        property=prop,
        mode=mode,
        k=len(deleted),
        feasible=True,
        deleted=deleted,
        method="brute",
        explored=explored,
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
        certificate=certificate,
    )

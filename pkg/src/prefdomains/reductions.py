"""Hardness-construction instance generators with known optima.

Each generator turns a Vertex Cover or Max2Sat instance into a preference
profile whose deletion distance to a target domain equals the source
instance's optimum (vertex cover size, resp. a fixed function of the maximum
satisfiable clause count).  Brute-force oracles for both source problems are
included so generated test instances carry their optima with them.

All generators are pure functions of their input: canonical block orders are
fixed ascending, and alternative names follow a fixed scheme (edge block j
yields "a{j}", "b{j}", ..., dummies "d{t}", variable blocks "x{i}_{t}" /
"x̄{i}_{t}", dummy blocks "o{t}" / "ō{t}") so goldens can be read against
instance diagrams by name.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import FormatError, GuardExceededError
from .profiles import Profile

__all__ = [
    "Graph",
    "Max2SatInstance",
    "parse_graph",
    "parse_max2sat",
    "vc_to_value_md",
    "vc_to_value_ad",
    "vc_to_beta_md",
    "vc_to_beta_ad",
    "max2sat_to_sc_ad",
    "oracle_vertex_cover",
    "oracle_max2sat",
]

ORACLE_MAX_VARIABLES = 20


@dataclass(frozen=True)
class Graph:
    """Undirected graph on vertices 1..r with edges stored as (u, v), u < v."""

    r: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.r < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        for u, v in self.edges:
            if not (1 <= u < v <= self.r):
                raise ValueError(f"edge endpoints must satisfy 1 <= u < v <= r: {(u, v)!r}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge {(u, v)!r}")
            seen.add((u, v))

    @property
    def s(self) -> int:
        return len(self.edges)

    def is_connected(self) -> bool:
        if self.r <= 1:
            return True
        adjacency: dict[int, list[int]] = {v: [] for v in range(1, self.r + 1)}
        for u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        seen = {1}
        stack = [1]
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.r


@dataclass(frozen=True)
class Max2SatInstance:
    """Two-literal clauses over variables 1..r; negative literal = negation."""

    r: int
    clauses: tuple[tuple[int, int], ...]
    h: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.r < 0:
            raise ValueError("variable count must be non-negative")
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.r:
                    raise ValueError(f"literal out of range: {lit} in {clause!r}")
        if not 0 <= self.h <= self.s:
            raise ValueError(f"target h={self.h} must lie in 0..{self.s}")

    @property
    def s(self) -> int:
        return len(self.clauses)


def _content_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError(f"graph header must be 'r s', got {lines[0]!r}")
    try:
        r, s = int(head[0]), int(head[1])
    except ValueError:
        raise FormatError(f"graph header must be two integers, got {lines[0]!r}") from None
    if len(lines) - 1 != s:
        raise FormatError(f"expected {s} edge lines, found {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"edge line must be 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"edge line must be two integers, got {line!r}") from None
        edges.append((u, v))
    try:
        return Graph(r, tuple(edges))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def parse_max2sat(text: str) -> Max2SatInstance:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty clause file")
    head = lines[0].split()
    if len(head) != 3:
        raise FormatError(f"header must be 'r s h', got {lines[0]!r}")
    try:
        r, s, h = (int(x) for x in head)
    except ValueError:
        raise FormatError(f"header must be three integers, got {lines[0]!r}") from None
    if len(lines) - 1 != s:
        raise FormatError(f"expected {s} clause lines, found {len(lines) - 1}")
    clauses = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"clause line must be two literals, got {line!r}")
        try:
            clauses.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(f"clause line must be two integers, got {line!r}") from None
    try:
        return Max2SatInstance(r, tuple(clauses), h)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# ---------------------------------------------------------------------------
# Source-problem oracles
# ---------------------------------------------------------------------------


def oracle_vertex_cover(graph: Graph) -> int:
    """Exact minimum vertex cover size by ascending subset enumeration."""
    if graph.r > ORACLE_MAX_VARIABLES:
        raise GuardExceededError(
            f"vertex cover oracle supports at most {ORACLE_MAX_VARIABLES} vertices, got {graph.r}"
        )
    if not graph.edges:
        return 0
    vertices = range(1, graph.r + 1)
    for size in range(graph.r + 1):
        for cover in combinations(vertices, size):
            chosen = set(cover)
            if all(u in chosen or v in chosen for u, v in graph.edges):
                return size
    raise AssertionError("the full vertex set always covers")  # pragma: no cover


def oracle_max2sat(instance: Max2SatInstance) -> int:
    """Exact maximum number of simultaneously satisfiable clauses."""
    if instance.r > ORACLE_MAX_VARIABLES:
        raise GuardExceededError(
            f"Max2Sat oracle supports at most {ORACLE_MAX_VARIABLES} variables, got {instance.r}"
        )
    best = 0
    for assignment in range(1 << instance.r):
        satisfied = 0
        for l1, l2 in instance.clauses:
            v1 = (assignment >> (abs(l1) - 1)) & 1
            v2 = (assignment >> (abs(l2) - 1)) & 1
            if (v1 if l1 > 0 else 1 - v1) or (v2 if l2 > 0 else 1 - v2):
                satisfied += 1
        if satisfied > best:
            best = satisfied
    return best


# ---------------------------------------------------------------------------
# Vertex Cover reductions
# ---------------------------------------------------------------------------


def _require_md_shape(graph: Graph, construction: str) -> None:
    if graph.r < 4:
        raise ValueError(f"{construction} requires at least four vertices, got {graph.r}")
    if not graph.is_connected():
        raise ValueError(f"{construction} requires a connected graph")


def vc_to_value_md(graph: Graph) -> Profile:
    """Voter-deletion hardness instance: one voter per vertex, three edge
    alternatives per edge; the two endpoint voters of an edge plus any third
    voter form a cyclic configuration on that edge's block.

    m = 3s, n = r; minimum voter deletions to value restriction equal the
    minimum vertex cover (covers of size at most r-3 are faithful: an
    uncovered edge needs a third, non-incident surviving voter to witness)."""
    _require_md_shape(graph, "the cyclic-block construction")
    names = [f"{letter}{j}" for j in range(1, graph.s + 1) for letter in "abc"]
    rankings = []
    for i in range(1, graph.r + 1):
        ranking: list[int] = []
        for j, (u, v) in enumerate(graph.edges):
            base = 3 * j  # block (a_j, b_j, c_j)
            if i == u:
                ranking += [base + 2, base, base + 1]  # c > a > b
            elif i == v:
                ranking += [base + 1, base + 2, base]  # b > c > a
            else:
                ranking += [base, base + 1, base + 2]  # a > b > c
        rankings.append(ranking)
    return Profile.from_rankings(
        rankings,
        m=3 * graph.s,
        alternative_names=names,
        voter_names=[f"v{i}" for i in range(1, graph.r + 1)],
    )


def vc_to_value_ad(graph: Graph, k: int) -> Profile:
    """Alternative-deletion hardness instance: one vertex alternative per
    vertex plus k+1 dummies that every voter ranks as a block.

    m = r+k+1, n = 2s+1; deleting a vertex cover's alternatives (at most k of
    them) yields value restriction, and nothing smaller can."""
    if k < 0:
        raise ValueError("k must be non-negative")
    r = graph.r
    names = [f"a{j}" for j in range(1, r + 1)] + [f"d{t}" for t in range(1, k + 2)]
    vertex_alts = list(range(r))
    dummies = list(range(r, r + k + 1))
    rankings = [dummies + vertex_alts]  # v0
    for u, v in graph.edges:
        a_u, a_v = u - 1, v - 1
        rankings.append([a_u, a_v] + dummies + [a for a in vertex_alts if a not in (a_u, a_v)])
        rankings.append([a_v] + dummies + [a for a in vertex_alts if a != a_v])
    return Profile.from_rankings(
        rankings,
        m=r + k + 1,
        alternative_names=names,
        voter_names=[f"v{i}" for i in range(2 * graph.s + 1)],
    )


def vc_to_beta_md(graph: Graph) -> Profile:
    """Voter-deletion hardness instance for the beta-restricted domain: four
    edge alternatives per edge; an edge's endpoint voters form a beta
    configuration on its block.

    m = 4s, n = r; minimum voter deletions equal the minimum vertex cover."""
    _require_md_shape(graph, "the beta-block construction")
    names = [f"{letter}{j}" for j in range(1, graph.s + 1) for letter in "abcd"]
    rankings = []
    for i in range(1, graph.r + 1):
        ranking: list[int] = []
        for j, (u, v) in enumerate(graph.edges):
            base = 4 * j  # block (a_j, b_j, c_j, d_j)
            if i == u:
                ranking += [base, base + 1, base + 2, base + 3]  # a > b > c > d
            elif i == v:
                ranking += [base + 1, base + 3, base, base + 2]  # b > d > a > c
            else:
                ranking += [base + 3, base, base + 1, base + 2]  # d > a > b > c
        rankings.append(ranking)
    return Profile.from_rankings(
        rankings,
        m=4 * graph.s,
        alternative_names=names,
        voter_names=[f"v{i}" for i in range(1, graph.r + 1)],
    )


def vc_to_beta_ad(graph: Graph) -> Profile:
    """Alternative-deletion hardness instance for the beta-restricted domain:
    a dummy and a vertex alternative per vertex, interleaved canonically as
    d1 > a1 > d2 > a2 > ...; each edge voter pulls its two endpoints forward.

    m = 2r, n = s+1.  The vertex-cover equivalence additionally assumes
    r >= k+2 for the deletion budget k; the generator itself does not take k
    and so cannot enforce it."""
    r = graph.r
    names: list[str] = []
    for j in range(1, r + 1):
        names += [f"d{j}", f"a{j}"]
    canonical = list(range(2 * r))  # identity IS the canonical interleaved order
    rankings = [canonical]
    for u, v in graph.edges:
        a_u, a_v = 2 * (u - 1) + 1, 2 * (v - 1) + 1
        rankings.append([a_u, a_v] + [a for a in canonical if a not in (a_u, a_v)])
    return Profile.from_rankings(
        rankings,
        m=2 * r,
        alternative_names=names,
        voter_names=[f"v{i}" for i in range(graph.s + 1)],
    )


# ---------------------------------------------------------------------------
# Max2Sat reduction
# ---------------------------------------------------------------------------


def max2sat_to_sc_ad(instance: Max2SatInstance) -> tuple[Profile, int]:
    """Single-crossing alternative-deletion hardness instance.

    Deleting one of the two literal blocks per variable encodes a truth
    assignment; a clause's a/b alternatives survive together only if the
    clause is satisfied.  Returns the profile together with the deletion
    budget k = r*(s+1) + (s-h) that makes the instance equivalent to
    satisfying at least h clauses.
    """
    r, s = instance.r, instance.s
    for l1, l2 in instance.clauses:
        if abs(l1) == abs(l2):
            raise ValueError(f"clause literals must use distinct variables: {(l1, l2)!r}")
    block = s + 1  # variable-block size
    dummy = 2 * (r * s + r + s) + 1  # |O| and |Ō|

    names: list[str] = []
    o_set = list(range(dummy))
    names += [f"o{t}" for t in range(1, dummy + 1)]
    o_bar = list(range(dummy, 2 * dummy))
    names += [f"ō{t}" for t in range(1, dummy + 1)]
    pos_blocks: list[list[int]] = []
    neg_blocks: list[list[int]] = []
    cursor = 2 * dummy
    for i in range(1, r + 1):
        pos_blocks.append(list(range(cursor, cursor + block)))
        names += [f"x{i}_{t}" for t in range(1, block + 1)]
        cursor += block
        neg_blocks.append(list(range(cursor, cursor + block)))
        names += [f"x̄{i}_{t}" for t in range(1, block + 1)]
        cursor += block
    clause_alts: list[tuple[int, int]] = []
    for j in range(1, s + 1):
        clause_alts.append((cursor, cursor + 1))
        names += [f"a{j}", f"b{j}"]
        cursor += 2
    m = cursor
    assert m == 6 * (r * s + r + s) + 2

    def literal_block(lit: int) -> list[int]:
        return pos_blocks[abs(lit) - 1] if lit > 0 else neg_blocks[abs(lit) - 1]

    all_clause_alts = [a for pair in clause_alts for a in pair]
    rankings: list[list[int]] = []
    voter_names: list[str] = []

    # variable voters: block i swapped to negated-first, dummies decide parity
    for i in range(1, r + 1):
        x_part: list[int] = []
        for t in range(1, r + 1):
            if t == i:
                x_part += neg_blocks[t - 1] + pos_blocks[t - 1]
            else:
                x_part += pos_blocks[t - 1] + neg_blocks[t - 1]
        rankings.append(o_set + o_bar + x_part + all_clause_alts)
        voter_names.append(f"v{2 * i - 1}")
        rankings.append(o_bar + o_set + x_part + all_clause_alts)
        voter_names.append(f"v{2 * i}")

    # clause voters: four per clause, differing only in where a_j and b_j sit
    x_base: list[int] = []
    for i in range(r):
        x_base += pos_blocks[i] + neg_blocks[i]
    for j, (l1, l2) in enumerate(instance.clauses, start=1):
        lo, hi = (l1, l2) if abs(l1) < abs(l2) else (l2, l1)
        first_block = literal_block(lo)
        second_block = literal_block(hi)
        a_j, b_j = clause_alts[j - 1]
        before = [a for pair in clause_alts[: j - 1] for a in pair]
        after = [a for pair in clause_alts[j:] for a in pair]
        base = o_bar + o_set + before + x_base + after
        for idx in range(4):
            a_below = idx < 2  # voters 4j-3, 4j-2: a_j right below the block's last
            b_above = idx % 2 == 0  # voters 4j-3, 4j-1: b_j right above the block's first
            ranking = list(base)
            if a_below:
                ranking.insert(ranking.index(first_block[-1]) + 1, a_j)
            else:
                ranking.insert(ranking.index(first_block[0]), a_j)
            if b_above:
                ranking.insert(ranking.index(second_block[0]), b_j)
            else:
                ranking.insert(ranking.index(second_block[-1]) + 1, b_j)
            rankings.append(ranking)
            voter_names.append(f"w{4 * (j - 1) + idx + 1}")

    profile = Profile.from_rankings(
        rankings, m=m, alternative_names=names, voter_names=voter_names
    )
    k = r * (s + 1) + (s - instance.h)
    return profile, k

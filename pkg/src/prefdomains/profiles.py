"""Preference profiles: strict rankings, restriction, conflict pairs, dedup.

Alternatives and voters are dense 0-based integer indices everywhere;
display names are carried alongside and only used at the I/O boundary.
All types are immutable value objects and all operations are pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import FormatError

__all__ = [
    "PreferenceOrder",
    "Profile",
    "ConflictPairSet",
    "Restriction",
    "DedupResult",
    "parse_profile",
    "serialize_profile",
    "restrict",
    "reverse_profile",
    "conflict_pairs",
    "dedup",
]


@dataclass(frozen=True)
class PreferenceOrder:
    """A strict total order over alternatives 0..m-1, most preferred first."""

    ranking: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranking", tuple(self.ranking))
        m = len(self.ranking)
        if sorted(self.ranking) != list(range(m)):
            raise ValueError(f"ranking is not a permutation of 0..{m - 1}: {self.ranking!r}")

    @property
    def m(self) -> int:
        return len(self.ranking)

    @cached_property
    def rank_of(self) -> tuple[int, ...]:
        """Position of each alternative in the ranking (0 = most preferred)."""
        ranks = [0] * len(self.ranking)
        for pos, alt in enumerate(self.ranking):
            ranks[alt] = pos
        return tuple(ranks)

    def prefers(self, a: int, b: int) -> bool:
        return self.rank_of[a] < self.rank_of[b]

    def reversed(self) -> "PreferenceOrder":
        return PreferenceOrder(self.ranking[::-1])


def _default_alternative_names(m: int) -> tuple[str, ...]:
    return tuple(f"a{i + 1}" for i in range(m))


def _default_voter_names(n: int) -> tuple[str, ...]:
    return tuple(f"v{i + 1}" for i in range(n))


@dataclass(frozen=True)
class Profile:
    """A sequence of voters, each with a strict ranking of the same m alternatives.

    Empty profiles (n = 0 and/or m = 0) are legal and satisfy every domain
    property; deletion solvers recurse toward them.
    """

    m: int
    alternative_names: tuple[str, ...]
    voters: tuple[PreferenceOrder, ...]
    voter_names: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alternative_names", tuple(self.alternative_names))
        object.__setattr__(self, "voters", tuple(self.voters))
        object.__setattr__(self, "voter_names", tuple(self.voter_names))
        if self.m < 0:
            raise ValueError("m must be non-negative")
        if len(self.alternative_names) != self.m:
            raise ValueError("alternative_names length does not match m")
        if len(self.voter_names) != len(self.voters):
            raise ValueError("voter_names length does not match voter count")
        for v in self.voters:
            if v.m != self.m:
                raise ValueError(f"voter ranks {v.m} alternatives, profile has {self.m}")

    @staticmethod
    def from_rankings(
        rankings: Iterable[Sequence[int]],
        m: int | None = None,
        alternative_names: Sequence[str] | None = None,
        voter_names: Sequence[str] | None = None,
    ) -> "Profile":
        voters = tuple(PreferenceOrder(tuple(r)) for r in rankings)
        if m is None:
            if alternative_names is not None:
                m = len(alternative_names)
            elif voters:
                m = voters[0].m
            else:
                m = 0
        alt_names = (
            tuple(alternative_names) if alternative_names is not None else _default_alternative_names(m)
        )
        vot_names = tuple(voter_names) if voter_names is not None else _default_voter_names(len(voters))
        return Profile(m=m, alternative_names=alt_names, voters=voters, voter_names=vot_names)

    @property
    def n(self) -> int:
        return len(self.voters)

    def ranking_names(self, voter: int) -> tuple[str, ...]:
        return tuple(self.alternative_names[a] for a in self.voters[voter].ranking)


@dataclass(frozen=True)
class ConflictPairSet:
    """Unordered pairs of alternatives, each stored canonically as (lo, hi)."""

    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        canon = set()
        for a, b in self.pairs:
            if a == b:
                raise ValueError(f"pair with equal endpoints: {(a, b)!r}")
            canon.add((a, b) if a < b else (b, a))
        object.__setattr__(self, "pairs", frozenset(canon))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.pairs))

    def __contains__(self, pair: tuple[int, int]) -> bool:
        a, b = pair
        return ((a, b) if a < b else (b, a)) in self.pairs

    def issubset(self, other: "ConflictPairSet") -> bool:
        return self.pairs <= other.pairs


class Restriction(NamedTuple):
    """An induced subprofile plus the dense-renumbering translation maps.

    ``kept_voters[i]`` / ``kept_alternatives[j]`` give the original index of
    the restricted profile's voter ``i`` / alternative ``j``.
    """

    profile: Profile
    kept_voters: tuple[int, ...]
    kept_alternatives: tuple[int, ...]


def restrict(
    profile: Profile,
    keep_voters: Iterable[int] | None = None,
    keep_alternatives: Iterable[int] | None = None,
) -> Restriction:
    """Induced subprofile on the kept voters and alternatives.

    Relative order within each ranking is preserved; alternatives are
    renumbered densely to 0..m'-1 in ascending original order.
    """
    if keep_voters is None:
        kept_v = tuple(range(profile.n))
    else:
        kept_v = tuple(sorted(set(keep_voters)))
        if kept_v and not (0 <= kept_v[0] and kept_v[-1] < profile.n):
            raise ValueError(f"voter index out of range: {kept_v!r}")
    if keep_alternatives is None:
        kept_a = tuple(range(profile.m))
    else:
        kept_a = tuple(sorted(set(keep_alternatives)))
        if kept_a and not (0 <= kept_a[0] and kept_a[-1] < profile.m):
            raise ValueError(f"alternative index out of range: {kept_a!r}")

    new_index = {old: new for new, old in enumerate(kept_a)}
    voters = tuple(
        PreferenceOrder(tuple(new_index[a] for a in profile.voters[v].ranking if a in new_index))
        for v in kept_v
    )
    restricted = Profile(
        m=len(kept_a),
        alternative_names=tuple(profile.alternative_names[a] for a in kept_a),
        voters=voters,
        voter_names=tuple(profile.voter_names[v] for v in kept_v),
    )
    return Restriction(restricted, kept_v, kept_a)


def reverse_profile(profile: Profile) -> Profile:
    """Reverse every voter's ranking (single-peaked <-> single-caved dual)."""
    return Profile(
        m=profile.m,
        alternative_names=profile.alternative_names,
        voters=tuple(v.reversed() for v in profile.voters),
        voter_names=profile.voter_names,
    )


def conflict_pairs(o1: PreferenceOrder, o2: PreferenceOrder) -> ConflictPairSet:
    """The set of unordered pairs {a, b} ranked oppositely by the two orders."""
    if o1.m != o2.m:
        raise ValueError(f"orders rank different alternative counts: {o1.m} vs {o2.m}")
    r1, r2 = o1.rank_of, o2.rank_of
    pairs = frozenset(
        (a, b)
        for a in range(o1.m)
        for b in range(a + 1, o1.m)
        if (r1[a] < r1[b]) != (r2[a] < r2[b])
    )
    return ConflictPairSet(pairs)


class DedupResult(NamedTuple):
    """Distinct rankings in order of first appearance, with their voter groups."""

    distinct_orders: tuple[PreferenceOrder, ...]
    multiplicity: tuple[int, ...]
    voter_groups: tuple[tuple[int, ...], ...]


def dedup(profile: Profile) -> DedupResult:
    index_of: dict[tuple[int, ...], int] = {}
    orders: list[PreferenceOrder] = []
    groups: list[list[int]] = []
    for v, order in enumerate(profile.voters):
        i = index_of.get(order.ranking)
        if i is None:
            i = len(orders)
            index_of[order.ranking] = i
            orders.append(order)
            groups.append([])
        groups[i].append(v)
    return DedupResult(
        distinct_orders=tuple(orders),
        multiplicity=tuple(len(g) for g in groups),
        voter_groups=tuple(tuple(g) for g in groups),
    )


# ---------------------------------------------------------------------------
# Pair indexing and orientation bitmasks.
#
# Unordered alternative pairs are numbered lexicographically:
# (0,1), (0,2), ..., (0,m-1), (1,2), ...  A voter's orientation mask has bit p
# set iff the voter prefers lo to hi for pair p = (lo, hi).  XOR of two masks
# is exactly their conflict-pair set, which makes subset and intersection
# tests single big-int operations.  These helpers back the configuration
# detectors and the inclusion-DAG construction.
# ---------------------------------------------------------------------------


def pair_count(m: int) -> int:
    return m * (m - 1) // 2


def pair_index(m: int, a: int, b: int) -> int:
    if a > b:
        a, b = b, a
    return a * (2 * m - a - 1) // 2 + (b - a - 1)


def all_pairs(m: int) -> list[tuple[int, int]]:
    """Pairs (lo, hi) in index order; position in the list equals pair_index."""
    return [(a, b) for a in range(m) for b in range(a + 1, m)]


def orientation_mask(order: PreferenceOrder) -> int:
    rank = order.rank_of
    m = order.m
    mask = 0
    bit = 1
    for a in range(m):
        ra = rank[a]
        for b in range(a + 1, m):
            if ra < rank[b]:
                mask |= bit
            bit <<= 1
    return mask


def delta_mask(o1: PreferenceOrder, o2: PreferenceOrder) -> int:
    return orientation_mask(o1) ^ orientation_mask(o2)


def lowest_bit(mask: int) -> int:
    """Index of the least significant set bit; mask must be nonzero."""
    return (mask & -mask).bit_length() - 1


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# Text format:
#   line 1: "m n"
#   line 2 (optional): "names:" followed by m alternative names
#   then lines totalling n voters, each "i1 i2 ... im" (a permutation of
#   1..m, most preferred first) or "c: i1 ... im" for c identical voters.
# '#' starts a comment; blank lines are ignored.
# ---------------------------------------------------------------------------


def _content_lines(text: str) -> Iterator[str]:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_profile(text: str) -> Profile:
    lines = _content_lines(text)
    try:
        header = next(lines)
    except StopIteration:
        raise FormatError("empty profile file") from None
    parts = header.split()
    if len(parts) != 2:
        raise FormatError(f"header must be 'm n', got {header!r}")
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(f"header must be two integers, got {header!r}") from None
    if m < 0 or n < 0:
        raise FormatError(f"m and n must be non-negative, got {header!r}")

    alt_names: tuple[str, ...] | None = None
    rankings: list[tuple[int, ...]] = []
    for line in lines:
        if alt_names is None and not rankings and line.startswith("names:"):
            tokens = line[len("names:"):].split()
            if len(tokens) != m:
                raise FormatError(f"names line has {len(tokens)} entries, expected {m}")
            alt_names = tuple(tokens)
            continue
        count = 1
        body = line
        head, sep, rest = line.partition(":")
        if sep:
            try:
                count = int(head.strip())
            except ValueError:
                raise FormatError(f"bad multiplicity prefix in line {line!r}") from None
            if count <= 0:
                raise FormatError(f"multiplicity must be positive, got {count}")
            body = rest
        tokens = body.split()
        if len(tokens) != m:
            raise FormatError(f"ranking line has {len(tokens)} entries, expected {m}: {line!r}")
        try:
            one_based = [int(t) for t in tokens]
        except ValueError:
            raise FormatError(f"non-integer entry in ranking line {line!r}") from None
        if sorted(one_based) != list(range(1, m + 1)):
            raise FormatError(f"ranking line is not a permutation of 1..{m}: {line!r}")
        ranking = tuple(x - 1 for x in one_based)
        rankings.extend([ranking] * count)
        if len(rankings) > n:
            raise FormatError(f"more than the declared {n} voters")
    if len(rankings) != n:
        raise FormatError(f"expected {n} voters, found {len(rankings)}")
    return Profile.from_rankings(rankings, m=m, alternative_names=alt_names)


def serialize_profile(profile: Profile) -> str:
    """Deterministic text form; one line per voter, no multiplicity compression."""
    if profile.m == 0 and profile.n > 0:
        raise ValueError("profiles with voters but no alternatives have no text form")
    out = [f"{profile.m} {profile.n}"]
    if profile.m:
        out.append("names: " + " ".join(profile.alternative_names))
    for voter in profile.voters:
        out.append(" ".join(str(a + 1) for a in voter.ranking))
    return "\n".join(out) + "\n"

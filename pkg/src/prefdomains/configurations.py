"""Detection of the nine forbidden configurations, with explicit witnesses.

Each detector uses a fixed, documented scan order so that the returned
witness is deterministic:

* best/medium/worst-diverse and cyclic scan alternative triples in
  lexicographic order and, within a triple, voters in ascending order; the
  witness is the one completed earliest in the voter scan (for cyclic, the
  ascending orientation is preferred when both complete simultaneously).
* alpha and alpha-bar scan ordered voter pairs lexicographically, then role
  triples (a, b, c) lexicographically, then the smallest valid d.
* beta scans ordered voter pairs lexicographically, then role 4-tuples
  (a, b, c, d) lexicographically.
* gamma scans voter triples lexicographically and picks the smallest
  conflict pair for each role slot.
* delta scans unordered pairs of alternative pairs lexicographically via
  per-pair voter orientation classes.

Detection is exposed both on whole profiles (``find_configuration``) and on
masked views of a profile (``DetectionContext``), which lets the deletion
solvers search subprofiles without rebuilding Profile objects.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .profiles import (
    PreferenceOrder,
    Profile,
    all_pairs,
    iter_bits,
    lowest_bit,
    orientation_mask,
    pair_count,
)

__all__ = [
    "ConfigurationKind",
    "ConfigurationWitness",
    "DetectionContext",
    "ProfileView",
    "verify_witness",
    "find_configuration",
    "triple_census",
]


class ConfigurationKind(enum.Enum):
    BEST_DIVERSE = "best-diverse"
    MEDIUM_DIVERSE = "medium-diverse"
    WORST_DIVERSE = "worst-diverse"
    CYCLIC = "cyclic"
    ALPHA = "alpha"
    ALPHA_BAR = "alpha-bar"
    BETA = "beta"
    GAMMA = "gamma"
    DELTA = "delta"


#: (number of voter roles, number of alternative role slots) per kind.
WITNESS_ARITY: dict[ConfigurationKind, tuple[int, int]] = {
    ConfigurationKind.BEST_DIVERSE: (3, 3),
    ConfigurationKind.MEDIUM_DIVERSE: (3, 3),
    ConfigurationKind.WORST_DIVERSE: (3, 3),
    ConfigurationKind.CYCLIC: (3, 3),
    ConfigurationKind.ALPHA: (2, 4),
    ConfigurationKind.ALPHA_BAR: (2, 4),
    ConfigurationKind.BETA: (2, 4),
    ConfigurationKind.GAMMA: (3, 6),
    ConfigurationKind.DELTA: (4, 4),
}

_ROLE_LETTERS = "abcdef"


@dataclass(frozen=True)
class ConfigurationWitness:
    """Voter and alternative indices instantiating one forbidden configuration.

    Alternative slots are role positions; for gamma and delta the slots pair
    up as ({a,b}, {c,d}[, {e,f}]) and may repeat alternatives across pairs.
    """

    kind: ConfigurationKind
    voters: tuple[int, ...]
    alternatives: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "voters", tuple(self.voters))
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        nv, na = WITNESS_ARITY[self.kind]
        if len(self.voters) != nv or len(self.alternatives) != na:
            raise ValueError(
                f"{self.kind.value} witness needs {nv} voters and {na} alternatives, "
                f"got {len(self.voters)} and {len(self.alternatives)}"
            )

    def to_json_dict(self, profile: Profile) -> dict:
        return {
            "kind": self.kind.value,
            "voters": [profile.voter_names[v] for v in self.voters],
            "alternatives": [profile.alternative_names[a] for a in self.alternatives],
            "roles": {
                _ROLE_LETTERS[i]: profile.alternative_names[a]
                for i, a in enumerate(self.alternatives)
            },
        }


class ProfileView:
    """An alive subset of a profile's voters and alternatives.

    ``pair_mask`` keeps exactly the alternative pairs with both endpoints
    alive, so conflict sets of the induced subprofile are plain ANDs of the
    full-profile masks.
    """

    __slots__ = ("voters", "alts", "voter_mask", "pair_mask")

    def __init__(self, voters: tuple[int, ...], alts: tuple[int, ...], voter_mask: int, pair_mask: int):
        self.voters = voters
        self.alts = alts
        self.voter_mask = voter_mask
        self.pair_mask = pair_mask

    def drop_voter(self, v: int) -> "ProfileView":
        return ProfileView(
            tuple(x for x in self.voters if x != v),
            self.alts,
            self.voter_mask & ~(1 << v),
            self.pair_mask,
        )

    def drop_alternative(self, ctx: "DetectionContext", a: int) -> "ProfileView":
        return ProfileView(
            self.voters,
            tuple(x for x in self.alts if x != a),
            self.voter_mask,
            self.pair_mask & ~ctx.alt_pair_bits[a],
        )


class DetectionContext:
    """Per-profile caches shared by all configuration detectors."""

    def __init__(self, profile: Profile):
        self.profile = profile
        self.m = profile.m
        self.n = profile.n
        self.rank_rows: list[tuple[int, ...]] = [v.rank_of for v in profile.voters]

    @cached_property
    def pairs(self) -> list[tuple[int, int]]:
        return all_pairs(self.m)

    @cached_property
    def alt_pair_bits(self) -> list[int]:
        bits = [0] * self.m
        for idx, (a, b) in enumerate(self.pairs):
            bit = 1 << idx
            bits[a] |= bit
            bits[b] |= bit
        return bits

    @cached_property
    def voter_masks(self) -> list[int]:
        return [orientation_mask(v) for v in self.profile.voters]

    @cached_property
    def pair_voter_masks(self) -> list[int]:
        """For each pair index, the bitmask of voters preferring lo to hi."""
        masks = [0] * pair_count(self.m)
        for v, omask in enumerate(self.voter_masks):
            vbit = 1 << v
            for p in iter_bits(omask):
                masks[p] |= vbit
        return masks

    def full_view(self) -> ProfileView:
        return ProfileView(
            tuple(range(self.n)),
            tuple(range(self.m)),
            (1 << self.n) - 1,
            (1 << pair_count(self.m)) - 1,
        )

    def view(self, deleted_voters: Sequence[int] = (), deleted_alternatives: Sequence[int] = ()) -> ProfileView:
        view = self.full_view()
        dv = set(deleted_voters)
        da = set(deleted_alternatives)
        if dv:
            vmask = view.voter_mask
            for v in dv:
                vmask &= ~(1 << v)
            view = ProfileView(tuple(v for v in view.voters if v not in dv), view.alts, vmask, view.pair_mask)
        if da:
            pmask = view.pair_mask
            for a in da:
                pmask &= ~self.alt_pair_bits[a]
            view = ProfileView(view.voters, tuple(a for a in view.alts if a not in da), view.voter_mask, pmask)
        return view

    def find(self, kind: ConfigurationKind, view: ProfileView | None = None) -> ConfigurationWitness | None:
        if view is None:
            view = self.full_view()
        return _FINDERS[kind](self, view)


# ---------------------------------------------------------------------------
# Triple census
# ---------------------------------------------------------------------------


def triple_census(profile: Profile, triple: Sequence[int]) -> dict[tuple[int, int, int], int]:
    """Count, for each induced order of the triple, the voters holding it.

    Keys are orderings of the triple's own indices, most preferred first.
    """
    trip = tuple(triple)
    if len(trip) != 3 or len(set(trip)) != 3:
        raise ValueError(f"triple must contain three distinct indices: {trip!r}")
    for a in trip:
        if not 0 <= a < profile.m:
            raise ValueError(f"alternative index out of range: {a}")
    census: dict[tuple[int, int, int], int] = {}
    for voter in profile.voters:
        rank = voter.rank_of
        key = tuple(sorted(trip, key=lambda a: rank[a]))
        census[key] = census.get(key, 0) + 1
    return census


# ---------------------------------------------------------------------------
# Detectors
# ---------------------------------------------------------------------------


def _find_positional_diverse(ctx: DetectionContext, view: ProfileView, position: int) -> ConfigurationWitness | None:
    """Shared scan for the best- (0), medium- (1), worst- (2) diverse kinds.

    A witness exists on a triple iff each of its three alternatives occupies
    the given position for some voter; roles are assigned in ascending
    alternative order and each role gets its smallest voter.
    """
    rows = ctx.rank_rows
    voters = view.voters
    if len(voters) < 3:
        return None
    kind = (
        ConfigurationKind.BEST_DIVERSE,
        ConfigurationKind.MEDIUM_DIVERSE,
        ConfigurationKind.WORST_DIVERSE,
    )[position]
    for x, y, z in combinations(view.alts, 3):
        fx = fy = fz = -1
        for v in voters:
            row = rows[v]
            rx, ry, rz = row[x], row[y], row[z]
            if position == 0:
                hit = 0 if (rx < ry and rx < rz) else (1 if ry < rz else 2)
            elif position == 2:
                hit = 0 if (rx > ry and rx > rz) else (1 if ry > rz else 2)
            else:
                if rx < ry:
                    hit = 1 if ry < rz else (2 if rx < rz else 0)
                else:
                    hit = 0 if rx < rz else (2 if ry < rz else 1)
            if hit == 0:
                if fx < 0:
                    fx = v
                else:
                    continue
            elif hit == 1:
                if fy < 0:
                    fy = v
                else:
                    continue
            else:
                if fz < 0:
                    fz = v
                else:
                    continue
            if fx >= 0 and fy >= 0 and fz >= 0:
                return ConfigurationWitness(kind, (fx, fy, fz), (x, y, z))
    return None


_CYCLIC_ASC = (0, 3, 4)  # codes of x>y>z, y>z>x, z>x>y
_CYCLIC_DESC = (1, 5, 2)  # codes of x>z>y, z>y>x, y>x>z


def _find_cyclic(ctx: DetectionContext, view: ProfileView) -> ConfigurationWitness | None:
    rows = ctx.rank_rows
    voters = view.voters
    if len(voters) < 3:
        return None
    for x, y, z in combinations(view.alts, 3):
        first: dict[int, int] = {}
        for v in voters:
            row = rows[v]
            rx, ry, rz = row[x], row[y], row[z]
            if rx < ry:
                code = 0 if ry < rz else (1 if rx < rz else 4)
            else:
                code = 2 if rx < rz else (3 if ry < rz else 5)
            if code in first:
                continue
            first[code] = v
            if 0 in first and 3 in first and 4 in first:
                return ConfigurationWitness(
                    ConfigurationKind.CYCLIC, (first[0], first[3], first[4]), (x, y, z)
                )
            if 1 in first and 5 in first and 2 in first:
                return ConfigurationWitness(
                    ConfigurationKind.CYCLIC, (first[1], first[5], first[2]), (x, z, y)
                )
    return None


def _find_alpha_like(ctx: DetectionContext, view: ProfileView, bar: bool) -> ConfigurationWitness | None:
    """alpha: both voters rank d above b; alpha-bar: both rank d below b.

    For a fixed middle alternative b, the candidate sets for the three other
    roles are pairwise disjoint, so only their first members are needed.
    """
    rows = ctx.rank_rows
    alts = view.alts
    if len(alts) < 4 or len(view.voters) < 2:
        return None
    kind = ConfigurationKind.ALPHA_BAR if bar else ConfigurationKind.ALPHA
    for v1 in view.voters:
        r1 = rows[v1]
        for v2 in view.voters:
            if v2 == v1:
                continue
            r2 = rows[v2]
            first_c: dict[int, int] = {}
            first_d: dict[int, int] = {}
            for a in alts:
                r1a, r2a = r1[a], r2[a]
                for b in alts:
                    if b == a or r1a >= r1[b] or r2[b] >= r2a:
                        continue  # need v1: a > b and v2: b > a
                    c = first_c.get(b)
                    if c is None:
                        c = -1
                        r1b, r2b = r1[b], r2[b]
                        for cand in alts:
                            if r1b < r1[cand] and r2[cand] < r2b:
                                c = cand
                                break
                        first_c[b] = c
                    if c < 0:
                        continue
                    d = first_d.get(b)
                    if d is None:
                        d = -1
                        r1b, r2b = r1[b], r2[b]
                        if bar:
                            for cand in alts:
                                if r1b < r1[cand] and r2b < r2[cand]:
                                    d = cand
                                    break
                        else:
                            for cand in alts:
                                if r1[cand] < r1b and r2[cand] < r2b:
                                    d = cand
                                    break
                        first_d[b] = d
                    if d < 0:
                        continue
                    return ConfigurationWitness(kind, (v1, v2), (a, b, c, d))
    return None


def _beta_exists(r1: Sequence[int], r2: Sequence[int], alts: Sequence[int]) -> bool:
    """Existence of positions p1<p2<p3<p4 (by r1) with
    r2[p2] < r2[p4] < r2[p1] < r2[p3]; quadratic prefilter for _find_beta."""
    seq = sorted(alts, key=lambda a: r1[a])
    sig = [r2[a] for a in seq]
    t = len(sig)
    if t < 4:
        return False
    best = [-1] * (t + 1)
    for p1 in range(t - 3):
        v = sig[p1]
        for q in range(t - 1, p1, -1):
            b = best[q + 1]
            sq = sig[q]
            best[q] = sq if (sq < v and sq > b) else b
        minmid = t + 1
        for p3 in range(p1 + 2, t - 1):
            s = sig[p3 - 1]
            if s < minmid:
                minmid = s
            if sig[p3] > v and best[p3 + 1] > minmid:
                return True
    return False


def _find_beta(ctx: DetectionContext, view: ProfileView) -> ConfigurationWitness | None:
    rows = ctx.rank_rows
    alts = view.alts
    if len(alts) < 4 or len(view.voters) < 2:
        return None
    for v1 in view.voters:
        r1 = rows[v1]
        for v2 in view.voters:
            if v2 == v1:
                continue
            r2 = rows[v2]
            if not _beta_exists(r1, r2, alts):
                continue
            # reconstruct the lexicographically smallest (a, b, c, d)
            for a in alts:
                r1a, r2a = r1[a], r2[a]
                for b in alts:
                    if b == a:
                        continue
                    r1b, r2b = r1[b], r2[b]
                    if r1a >= r1b or r2b >= r2a:
                        continue  # need v1: a > b and v2: b > ... > a
                    max_r1_d = -1
                    for d in alts:
                        if r2b < r2[d] < r2a and r1[d] > max_r1_d:
                            max_r1_d = r1[d]
                    if max_r1_d < 0:
                        continue
                    for c in alts:
                        if r1b < r1[c] < max_r1_d and r2[c] > r2a:
                            for d in alts:
                                if r1[d] > r1[c] and r2b < r2[d] < r2a:
                                    return ConfigurationWitness(
                                        ConfigurationKind.BETA, (v1, v2), (a, b, c, d)
                                    )
                            break
    return None


def _find_gamma(ctx: DetectionContext, view: ProfileView) -> ConfigurationWitness | None:
    voters = view.voters
    if len(voters) < 3:
        return None
    masks = ctx.voter_masks
    live = view.pair_mask
    deltas: dict[tuple[int, int], int] = {}
    for i_pos, i in enumerate(voters):
        mi = masks[i]
        for j in voters[i_pos + 1:]:
            deltas[(i, j)] = (mi ^ masks[j]) & live
    for i, j, k in combinations(voters, 3):
        d_ij = deltas[(i, j)]
        if not d_ij:
            continue
        d_ik = deltas[(i, k)]
        slot1 = d_ij & d_ik
        if not slot1:
            continue
        d_jk = deltas[(j, k)]
        slot2 = d_ij & d_jk
        if not slot2:
            continue
        slot3 = d_ik & d_jk
        if not slot3:
            continue
        pairs = ctx.pairs
        x1, y1 = pairs[lowest_bit(slot1)]
        x2, y2 = pairs[lowest_bit(slot2)]
        x3, y3 = pairs[lowest_bit(slot3)]
        ri, rj = ctx.rank_rows[i], ctx.rank_rows[j]
        a, b = (x1, y1) if rj[x1] < rj[y1] else (y1, x1)  # j and k prefer a
        c, d = (x2, y2) if ri[x2] < ri[y2] else (y2, x2)  # i and k prefer c
        e, f = (x3, y3) if ri[x3] < ri[y3] else (y3, x3)  # i and j prefer e
        return ConfigurationWitness(ConfigurationKind.GAMMA, (i, j, k), (a, b, c, d, e, f))
    return None


def _find_delta(ctx: DetectionContext, view: ProfileView) -> ConfigurationWitness | None:
    if len(view.voters) < 4:
        return None
    vm = view.voter_mask
    pair_masks = ctx.pair_voter_masks
    groups: dict[int, int] = {}
    for p in iter_bits(view.pair_mask):
        pattern = pair_masks[p] & vm
        if pattern and pattern != vm and pattern not in groups:
            groups[pattern] = p
    if len(groups) < 2:
        return None
    patterns = list(groups.items())
    best: tuple[int, int] | None = None
    for ii in range(len(patterns)):
        pat1, p1 = patterns[ii]
        for pat2, p2 in patterns[ii + 1:]:
            if (pat1 & pat2) and (pat1 & ~pat2) and (pat2 & ~pat1) and (vm & ~pat1 & ~pat2):
                cand = (p1, p2) if p1 < p2 else (p2, p1)
                if best is None or cand < best:
                    best = cand
    if best is None:
        return None
    p, q = best
    a, b = ctx.pairs[p]
    c, d = ctx.pairs[q]
    on_p = pair_masks[p] & vm
    on_q = pair_masks[q] & vm
    v1 = lowest_bit(on_p & on_q)
    v2 = lowest_bit(on_p & ~on_q)
    v3 = lowest_bit(on_q & ~on_p)
    v4 = lowest_bit(vm & ~on_p & ~on_q)
    return ConfigurationWitness(ConfigurationKind.DELTA, (v1, v2, v3, v4), (a, b, c, d))


_FINDERS = {
    ConfigurationKind.BEST_DIVERSE: lambda ctx, view: _find_positional_diverse(ctx, view, 0),
    ConfigurationKind.MEDIUM_DIVERSE: lambda ctx, view: _find_positional_diverse(ctx, view, 1),
    ConfigurationKind.WORST_DIVERSE: lambda ctx, view: _find_positional_diverse(ctx, view, 2),
    ConfigurationKind.CYCLIC: _find_cyclic,
    ConfigurationKind.ALPHA: lambda ctx, view: _find_alpha_like(ctx, view, bar=False),
    ConfigurationKind.ALPHA_BAR: lambda ctx, view: _find_alpha_like(ctx, view, bar=True),
    ConfigurationKind.BETA: _find_beta,
    ConfigurationKind.GAMMA: _find_gamma,
    ConfigurationKind.DELTA: _find_delta,
}


def find_configuration(profile: Profile, kind: ConfigurationKind) -> ConfigurationWitness | None:
    """First witness of the kind under the documented scan order, if any."""
    return DetectionContext(profile).find(kind)


# ---------------------------------------------------------------------------
# Witness verification
# ---------------------------------------------------------------------------


def verify_witness(profile: Profile, witness: ConfigurationWitness) -> bool:
    """Check the witness's role constraints literally against the profile."""
    for v in witness.voters:
        if not 0 <= v < profile.n:
            raise ValueError(f"voter index out of range: {v}")
    for a in witness.alternatives:
        if not 0 <= a < profile.m:
            raise ValueError(f"alternative index out of range: {a}")
    if len(set(witness.voters)) != len(witness.voters):
        return False
    kind = witness.kind
    rows = [profile.voters[v].rank_of for v in witness.voters]
    alts = witness.alternatives

    def pref(voter_slot: int, a: int, b: int) -> bool:
        return rows[voter_slot][a] < rows[voter_slot][b]

    if kind in (
        ConfigurationKind.BEST_DIVERSE,
        ConfigurationKind.MEDIUM_DIVERSE,
        ConfigurationKind.WORST_DIVERSE,
        ConfigurationKind.CYCLIC,
    ):
        a, b, c = alts
        if len({a, b, c}) != 3:
            return False
        if kind is ConfigurationKind.BEST_DIVERSE:
            return (
                pref(0, a, b) and pref(0, a, c)
                and pref(1, b, a) and pref(1, b, c)
                and pref(2, c, a) and pref(2, c, b)
            )
        if kind is ConfigurationKind.WORST_DIVERSE:
            return (
                pref(0, b, a) and pref(0, c, a)
                and pref(1, a, b) and pref(1, c, b)
                and pref(2, a, c) and pref(2, b, c)
            )
        if kind is ConfigurationKind.MEDIUM_DIVERSE:
            def middle(slot: int, mid: int, o1: int, o2: int) -> bool:
                return (pref(slot, o1, mid) and pref(slot, mid, o2)) or (
                    pref(slot, o2, mid) and pref(slot, mid, o1)
                )

            return middle(0, a, b, c) and middle(1, b, a, c) and middle(2, c, a, b)
        return (
            pref(0, a, b) and pref(0, b, c)
            and pref(1, b, c) and pref(1, c, a)
            and pref(2, c, a) and pref(2, a, b)
        )

    if kind in (ConfigurationKind.ALPHA, ConfigurationKind.ALPHA_BAR):
        a, b, c, d = alts
        if len({a, b, c, d}) != 4:
            return False
        if kind is ConfigurationKind.ALPHA:
            return (
                pref(0, a, b) and pref(0, d, b) and pref(0, b, c)
                and pref(1, c, b) and pref(1, d, b) and pref(1, b, a)
            )
        return (
            pref(0, a, b) and pref(0, b, c) and pref(0, b, d)
            and pref(1, c, b) and pref(1, b, a) and pref(1, b, d)
        )

    if kind is ConfigurationKind.BETA:
        a, b, c, d = alts
        if len({a, b, c, d}) != 4:
            return False
        return (
            pref(0, a, b) and pref(0, b, c) and pref(0, c, d)
            and pref(1, b, d) and pref(1, d, a) and pref(1, a, c)
        )

    if kind is ConfigurationKind.GAMMA:
        a, b, c, d, e, f = alts
        if a == b or c == d or e == f:
            return False
        return (
            pref(0, b, a) and pref(0, c, d) and pref(0, e, f)
            and pref(1, a, b) and pref(1, d, c) and pref(1, e, f)
            and pref(2, a, b) and pref(2, c, d) and pref(2, f, e)
        )

    # delta
    a, b, c, d = alts
    if a == b or c == d:
        return False
    return (
        pref(0, a, b) and pref(0, c, d)
        and pref(1, a, b) and pref(1, d, c)
        and pref(2, b, a) and pref(2, c, d)
        and pref(3, b, a) and pref(3, d, c)
    )

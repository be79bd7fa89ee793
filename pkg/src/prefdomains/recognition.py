"""Domain-property recognition via forbidden configurations, plus oracles.

``check`` decides each property by searching for the property's forbidden
configurations; ``oracle_check`` decides the same properties directly from
their definitions (axis enumeration, subset partitioning, voter-order
enumeration, voter-triple enumeration) and exists purely to cross-validate
the configuration route.  Oracles fail loudly when their resource guard is
exceeded rather than approximating.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations, permutations

from .configurations import (
    ConfigurationKind,
    ConfigurationWitness,
    DetectionContext,
    ProfileView,
    verify_witness,
)
from .errors import GuardExceededError
from .profiles import Profile, dedup, orientation_mask, pair_count

__all__ = [
    "DomainProperty",
    "RecognitionResult",
    "FORBIDDEN_KINDS",
    "check",
    "violation_in_view",
    "single_crossing_order",
    "validate_sc_order",
    "oracle_check",
]


class DomainProperty(enum.Enum):
    VALUE_RESTRICTED = "value-restricted"
    BEST_RESTRICTED = "best-restricted"
    MEDIUM_RESTRICTED = "medium-restricted"
    WORST_RESTRICTED = "worst-restricted"
    SINGLE_PEAKED = "single-peaked"
    SINGLE_CAVED = "single-caved"
    GROUP_SEPARABLE = "group-separable"
    BETA_RESTRICTED = "beta-restricted"
    SINGLE_CROSSING = "single-crossing"


#: Forbidden configurations per property, searched in this order.  A profile
#: has the property iff it contains none of the listed kinds; a profile fails
#: value restriction exactly when some alternative triple carries a full
#: cyclic class of induced orders, i.e. contains a cyclic configuration.
FORBIDDEN_KINDS: dict[DomainProperty, tuple[ConfigurationKind, ...]] = {
    DomainProperty.VALUE_RESTRICTED: (ConfigurationKind.CYCLIC,),
    DomainProperty.BEST_RESTRICTED: (ConfigurationKind.BEST_DIVERSE,),
    DomainProperty.MEDIUM_RESTRICTED: (ConfigurationKind.MEDIUM_DIVERSE,),
    DomainProperty.WORST_RESTRICTED: (ConfigurationKind.WORST_DIVERSE,),
    DomainProperty.SINGLE_PEAKED: (ConfigurationKind.WORST_DIVERSE, ConfigurationKind.ALPHA),
    DomainProperty.SINGLE_CAVED: (ConfigurationKind.BEST_DIVERSE, ConfigurationKind.ALPHA_BAR),
    DomainProperty.GROUP_SEPARABLE: (ConfigurationKind.MEDIUM_DIVERSE, ConfigurationKind.BETA),
    DomainProperty.BETA_RESTRICTED: (ConfigurationKind.BETA,),
    DomainProperty.SINGLE_CROSSING: (ConfigurationKind.GAMMA, ConfigurationKind.DELTA),
}


@dataclass(frozen=True)
class RecognitionResult:
    property: DomainProperty
    holds: bool
    violation: ConfigurationWitness | None
    certificate: tuple[int, ...] | None

    def to_json_dict(self, profile: Profile) -> dict:
        return {
            "property": self.property.value,
            "holds": self.holds,
            "violation": self.violation.to_json_dict(profile) if self.violation else None,
            "certificate": (
                [profile.voter_names[v] for v in self.certificate]
                if self.certificate is not None
                else None
            ),
        }


def violation_in_view(
    ctx: DetectionContext, view: ProfileView, prop: DomainProperty
) -> ConfigurationWitness | None:
    """First forbidden substructure of the property inside the view, if any."""
    for kind in FORBIDDEN_KINDS[prop]:
        witness = ctx.find(kind, view)
        if witness is not None:
            return witness
    return None


def check(profile: Profile, prop: DomainProperty) -> RecognitionResult:
    """Decide the property; on failure attach a verifiable violation witness.

    For single-crossing a positive certificate (a valid voter order) is
    attached as well.  No other property defines a positive certificate here.
    """
    ctx = DetectionContext(profile)
    witness = violation_in_view(ctx, ctx.full_view(), prop)
    certificate = None
    if witness is None and prop is DomainProperty.SINGLE_CROSSING:
        certificate = single_crossing_order(profile)
        if certificate is None:  # pragma: no cover - characterization guarantee
            raise AssertionError("no gamma/delta configuration but no single-crossing order")
    return RecognitionResult(prop, witness is None, witness, certificate)


# ---------------------------------------------------------------------------
# Single-crossing orders
# ---------------------------------------------------------------------------


def single_crossing_order(profile: Profile) -> tuple[int, ...] | None:
    """A voter order witnessing the single-crossing property, or None.

    Tries every distinct ranking as the anchor (some ranking must come
    first), sorts the remaining distinct rankings by conflict-set size, and
    accepts the anchor iff consecutive conflict sets are nested.  Voters with
    identical rankings are emitted consecutively, ascending within a group.
    """
    orders, _, groups = dedup(profile)
    n_distinct = len(orders)
    if n_distinct == 0:
        return ()
    masks = [orientation_mask(o) for o in orders]
    for anchor in range(n_distinct):
        base = masks[anchor]
        seq = sorted(range(n_distinct), key=lambda i: ((base ^ masks[i]).bit_count(), i))
        valid = True
        prev = base ^ masks[seq[0]]
        for i in seq[1:]:
            cur = base ^ masks[i]
            if prev & ~cur:
                valid = False
                break
            prev = cur
        if valid:
            return tuple(v for i in seq for v in groups[i])
    return None


def validate_sc_order(profile: Profile, order: tuple[int, ...] | list[int]) -> bool:
    """True iff every alternative pair splits the order into two agreeing halves.

    Equivalent formulation actually checked: conflict sets against the first
    voter grow monotonically along the order.
    """
    seq = tuple(order)
    if sorted(seq) != list(range(profile.n)):
        raise ValueError("order is not a permutation of the voter indices")
    if profile.n <= 1:
        return True
    masks = [orientation_mask(v) for v in profile.voters]
    base = masks[seq[0]]
    prev = 0
    for v in seq[1:]:
        cur = base ^ masks[v]
        if prev & ~cur:
            return False
        prev = cur
    return True


# ---------------------------------------------------------------------------
# Definitional oracles
# ---------------------------------------------------------------------------

AXIS_ORACLE_MAX_M = 8
GROUP_SEPARABLE_ORACLE_MAX_M = 14
SINGLE_CROSSING_ORACLE_MAX_ORDERS = 8


def _rises_then_falls(values: list[int]) -> bool:
    peak = values.index(max(values))
    return all(values[i] < values[i + 1] for i in range(peak)) and all(
        values[i] > values[i + 1] for i in range(peak, len(values) - 1)
    )


def _oracle_axis(profile: Profile, caved: bool) -> bool:
    if profile.m > AXIS_ORACLE_MAX_M:
        raise GuardExceededError(
            f"axis enumeration supports at most {AXIS_ORACLE_MAX_M} alternatives, got {profile.m}"
        )
    if profile.n == 0 or profile.m <= 1:
        return True
    rows = [v.rank_of for v in profile.voters]
    for axis in permutations(range(profile.m)):
        if axis[0] > axis[-1]:
            continue  # an axis and its reverse admit the same voters
        if caved:
            ok = all(_rises_then_falls([row[a] for a in axis]) for row in rows)
        else:
            ok = all(_rises_then_falls([-row[a] for a in axis]) for row in rows)
        if ok:
            return True
    return False


def _oracle_group_separable(profile: Profile) -> bool:
    if profile.m > GROUP_SEPARABLE_ORACLE_MAX_M:
        raise GuardExceededError(
            f"subset check supports at most {GROUP_SEPARABLE_ORACLE_MAX_M} alternatives, got {profile.m}"
        )
    if profile.n == 0 or profile.m < 3:
        return True
    rankings = [v.ranking for v in profile.voters]
    for size in range(3, profile.m + 1):
        for subset in combinations(range(profile.m), size):
            members = set(subset)
            induced = [tuple(a for a in r if a in members) for r in rankings]
            head = induced[0]
            for cut in range(1, size):
                top = frozenset(head[:cut])
                if all(
                    frozenset(r[:cut]) == top or frozenset(r[size - cut:]) == top
                    for r in induced[1:]
                ):
                    break
            else:
                return False
    return True


def _oracle_single_crossing(profile: Profile) -> bool:
    orders, _, _ = dedup(profile)
    n_distinct = len(orders)
    if n_distinct > SINGLE_CROSSING_ORACLE_MAX_ORDERS:
        raise GuardExceededError(
            f"order enumeration supports at most {SINGLE_CROSSING_ORACLE_MAX_ORDERS} "
            f"distinct rankings, got {n_distinct}"
        )
    masks = [orientation_mask(o) for o in orders]
    npairs = pair_count(profile.m)
    for perm in permutations(range(n_distinct)):
        for p in range(npairs):
            flips = 0
            prev = (masks[perm[0]] >> p) & 1
            for i in perm[1:]:
                cur = (masks[i] >> p) & 1
                if cur != prev:
                    flips += 1
                    if flips > 1:
                        break
                    prev = cur
            if flips > 1:
                break
        else:
            return True
    return False


def _oracle_value_restricted(profile: Profile) -> bool:
    rows = [v.rank_of for v in profile.voters]
    n = profile.n
    for x, y, z in combinations(range(profile.m), 3):
        codes = []
        for row in rows:
            rx, ry, rz = row[x], row[y], row[z]
            top = 0 if (rx < ry and rx < rz) else (1 if ry < rz else 2)
            bot = 0 if (rx > ry and rx > rz) else (1 if ry > rz else 2)
            codes.append((top, 3 - top - bot, bot))
        for i, j, k in combinations(range(n), 3):
            ci, cj, ck = codes[i], codes[j], codes[k]
            if (
                len({ci[0], cj[0], ck[0]}) == 3
                and len({ci[1], cj[1], ck[1]}) == 3
                and len({ci[2], cj[2], ck[2]}) == 3
            ):
                return False
    return True


def _oracle_no_configuration(profile: Profile, kind: ConfigurationKind, nv: int, na: int) -> bool:
    for voters in permutations(range(profile.n), nv):
        for alts in permutations(range(profile.m), na):
            if verify_witness(profile, ConfigurationWitness(kind, voters, alts)):
                return False
    return True


def oracle_check(profile: Profile, prop: DomainProperty) -> bool:
    """Decide the property directly from its definition, detector-free.

    Guards: single-peaked/single-caved need m <= 8, group-separable m <= 14,
    single-crossing at most 8 distinct rankings; the rest are unguarded.
    """
    if prop is DomainProperty.SINGLE_PEAKED:
        return _oracle_axis(profile, caved=False)
    if prop is DomainProperty.SINGLE_CAVED:
        return _oracle_axis(profile, caved=True)
    if prop is DomainProperty.GROUP_SEPARABLE:
        return _oracle_group_separable(profile)
    if prop is DomainProperty.SINGLE_CROSSING:
        return _oracle_single_crossing(profile)
    if prop is DomainProperty.VALUE_RESTRICTED:
        return _oracle_value_restricted(profile)
    if prop is DomainProperty.BEST_RESTRICTED:
        return _oracle_no_configuration(profile, ConfigurationKind.BEST_DIVERSE, 3, 3)
    if prop is DomainProperty.MEDIUM_RESTRICTED:
        return _oracle_no_configuration(profile, ConfigurationKind.MEDIUM_DIVERSE, 3, 3)
    if prop is DomainProperty.WORST_RESTRICTED:
        return _oracle_no_configuration(profile, ConfigurationKind.WORST_DIVERSE, 3, 3)
    return _oracle_no_configuration(profile, ConfigurationKind.BETA, 2, 4)

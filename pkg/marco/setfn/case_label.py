# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import re
from collections import namedtuple
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List, Optional, Sequence

import numpy as np

from .set_function import format_subset, full_mask, ordered_masks, subset_mask


class CaseKind(Enum):
    INACTIVE = "inactive"
    ACTIVE_3A = "3a"
    ACTIVE_3B = "3b"
    ACTIVE_3C = "3c"
    BOUNDARY = "boundary"


ACTIVE_KINDS = (CaseKind.ACTIVE_3A, CaseKind.ACTIVE_3B, CaseKind.ACTIVE_3C)


class BoundFamily(Enum):
    DF = "df"
    CUTSET = "cutset"


@dataclass(frozen=True)
class CaseLabel:
    """One case of the two-polymatroid intersection taxonomy.

    ``subset`` is the relay-decoded user set S of an inactive or boundary case:
    users in S are limited at the relay and users outside S at the destination.
    ``active`` is the active case a boundary case borders. ``sub_case`` marks the
    weighted-region variants, "r", "d" or "eq".
    """
    kind: CaseKind
    subset: int = 0
    active: Optional[CaseKind] = None
    family: BoundFamily = BoundFamily.DF
    sub_case: Optional[str] = None

    @classmethod
    def inactive(cls, subset: int, family: BoundFamily = BoundFamily.DF) -> "CaseLabel":
        return cls(CaseKind.INACTIVE, subset=subset, family=family)

    @classmethod
    def active_case(cls, kind: CaseKind, family: BoundFamily = BoundFamily.DF, sub_case: str = None) -> "CaseLabel":
        assert kind in ACTIVE_KINDS, f"{kind} is not an active case"
        return cls(kind, family=family, sub_case=sub_case)

    @classmethod
    def boundary(cls, subset: int, active: CaseKind, family: BoundFamily = BoundFamily.DF) -> "CaseLabel":
        assert active in ACTIVE_KINDS, f"{active} is not an active case"
        return cls(CaseKind.BOUNDARY, subset=subset, active=active, family=family)

    @property
    def is_active(self) -> bool:
        return self.kind in ACTIVE_KINDS

    @property
    def needs_weights(self) -> bool:
        """Whether the case carries an equality condition and so a boundary weight."""
        return self.kind in (CaseKind.ACTIVE_3C, CaseKind.BOUNDARY)

    @property
    def case_key(self) -> tuple:
        return self.kind, self.subset, self.active

    def with_family(self, family: BoundFamily) -> "CaseLabel":
        return CaseLabel(self.kind, self.subset, self.active, family, self.sub_case)

    def support(self, k: int) -> FrozenSet[int]:
        """Relay-side sets whose split sums bind, as bitmasks."""
        if self.kind == CaseKind.INACTIVE:
            return frozenset({self.subset})
        if self.kind == CaseKind.ACTIVE_3A:
            return frozenset({full_mask(k)})
        if self.kind == CaseKind.ACTIVE_3B:
            return frozenset({0})
        if self.kind == CaseKind.ACTIVE_3C:
            return frozenset({full_mask(k), 0})
        return frozenset({self.subset}) | CaseLabel(self.active).support(k)

    def __str__(self) -> str:
        if self.kind == CaseKind.INACTIVE:
            text = f"inactive({format_subset(self.subset)})"
        elif self.kind == CaseKind.BOUNDARY:
            text = f"boundary({format_subset(self.subset)},{self.active.value})"
        else:
            text = self.kind.value
        if self.sub_case:
            text += f"[{self.sub_case}]"
        return text

    @classmethod
    def from_string(cls, text: str, family: BoundFamily = BoundFamily.DF) -> "CaseLabel":
        match = _LABEL_PATTERN.fullmatch(text.strip())
        if match is None:
            raise ValueError(f"Unrecognized case label {text!r}.")
        sub_case = match.group("sub")
        if match.group("active_only"):
            return cls.active_case(CaseKind(match.group("active_only")), family, sub_case)
        users = [int(u) for u in match.group("users").split(",") if u.strip()]
        if match.group("head") == "inactive":
            return CaseLabel(CaseKind.INACTIVE, subset_mask(users), family=family, sub_case=sub_case)
        return CaseLabel(
            CaseKind.BOUNDARY, subset_mask(users), CaseKind(match.group("active")), family=family, sub_case=sub_case
        )


_LABEL_PATTERN = re.compile(
    r"(?:(?P<active_only>3[abc])"
    r"|(?P<head>inactive|boundary)\(\{(?P<users>[0-9, ]*)\}(?:,(?P<active>3[abc]))?\))"
    r"(?:\[(?P<sub>r|d|eq)\])?"
)


def case_sequence(k: int, family: BoundFamily = BoundFamily.DF) -> List[CaseLabel]:
    """Cases in acceptance order: inactive, then boundary, then 3a, 3b, 3c."""
    proper = ordered_masks(k, include_empty=False)[:-1]
    cases = [CaseLabel.inactive(mask, family) for mask in proper]
    for mask in proper:
        for active in ACTIVE_KINDS:
            cases.append(CaseLabel.boundary(mask, active, family))
    cases.extend(CaseLabel.active_case(kind, family) for kind in ACTIVE_KINDS)
    return cases


SplitClassification = namedtuple(
    "SplitClassification", ["label", "argmin_subset", "band", "active_sum_sides", "degenerate"]
)


def classify_split_sums(
    split_sums: Sequence[float], k: int, tol: float, family: BoundFamily = BoundFamily.DF
) -> SplitClassification:
    """Classify a policy from its split sums g_T = f_relay(T) + f_dest(K\\T).

    Every T whose sum lies within ``tol * max(1, max g)`` of the minimum binds. The
    binding sides K (relay sum) and the empty set (destination sum) pick the active
    case; a single binding proper subset gives an inactive or boundary case. Several
    binding proper subsets fall outside the taxonomy and are flagged degenerate.

    Args:
        split_sums (Sequence[float]): Values indexed by relay-side bitmask T.
        k (int): User count.
        tol (float): Relative width of the binding band.
        family (BoundFamily): Family stamped on the label.

    Returns:
        SplitClassification: Label, tie-broken argmin, binding band (ordered),
            whether the relay and destination K-sums bind, and the degenerate flag.
    """
    g = np.asarray(split_sums, dtype=np.float64)
    order = ordered_masks(k)
    g_min = float(np.min(g))
    argmin_subset = next(mask for mask in order if g[mask] == g_min)
    width = tol * max(1.0, float(np.max(g)))
    band = [mask for mask in order if g[mask] - g_min <= width]

    everyone = full_mask(k)
    relay_side = everyone in band
    dest_side = 0 in band
    inactive = [mask for mask in band if mask not in (0, everyone)]

    if relay_side and dest_side:
        active = CaseKind.ACTIVE_3C
    elif relay_side:
        active = CaseKind.ACTIVE_3A
    elif dest_side:
        active = CaseKind.ACTIVE_3B
    else:
        active = None

    degenerate = len(inactive) > 1
    if not inactive or degenerate:
        label = CaseLabel.active_case(active, family) if active else CaseLabel.inactive(inactive[0], family)
    elif active is None:
        label = CaseLabel.inactive(inactive[0], family)
    else:
        label = CaseLabel.boundary(inactive[0], active, family)

    return SplitClassification(label, argmin_subset, band, (relay_side, dest_side), degenerate)

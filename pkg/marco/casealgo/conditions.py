# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from collections import OrderedDict, namedtuple

from marco.fading.geometry import DESTINATION, RELAY
from marco.ratebounds.bounds import RateRegionPair, successive_min_rate
from marco.setfn.case_label import CaseKind, CaseLabel, SplitClassification, classify_split_sums
from marco.setfn.set_function import format_subset, full_mask, ordered_masks

ConditionRecord = namedtuple("ConditionRecord", ["label", "satisfied", "residuals", "note"])
CaseCheck = namedtuple("CaseCheck", ["satisfied", "residuals", "classification"])


def condition_residuals(pair: RateRegionPair, label: CaseLabel) -> "OrderedDict[str, float]":
    """Gap of every split sum to the case's reference value, plus successive-decoding forms.

    The reference is the split sum of the first set in the case's support. Split
    keys read ``split{1}`` for the relay-side set {1}. Cases with a subset S also
    report ``relay_vs_dest_min`` = R_{S,r} - R^min_{S,d} and ``dest_vs_relay_min``
    = R_{K\\S,d} - R^min_{K\\S,r}; both are negative when S is inactive.
    """
    k = pair.k
    g = pair.split_sums()
    support = label.support(k)
    reference = next(float(g[mask]) for mask in ordered_masks(k) if mask in support)
    residuals = OrderedDict((f"split{format_subset(mask)}", float(g[mask]) - reference) for mask in ordered_masks(k))
    if label.kind in (CaseKind.INACTIVE, CaseKind.BOUNDARY):
        subset = label.subset
        rest = full_mask(k) ^ subset
        residuals["relay_vs_dest_min"] = pair.relay(subset) - successive_min_rate(pair, subset, DESTINATION)
        residuals["dest_vs_relay_min"] = pair.destination(rest) - successive_min_rate(pair, rest, RELAY)
    return residuals


def classify_pair(pair: RateRegionPair, tol: float) -> SplitClassification:
    return classify_split_sums(pair.split_sums(), pair.k, tol, pair.family)


def check_case_conditions(pair: RateRegionPair, label: CaseLabel, tol: float) -> CaseCheck:
    """Whether a policy's bounds realize a case.

    The split sums within ``tol * max(1, max split sum)`` of the smallest one bind.
    The case holds when the binding sets classify to it: exactly its support for
    inactive, boundary and active cases, with several tied proper subsets read by
    their active sides and flagged degenerate.

    Args:
        pair (RateRegionPair): Bounds at the candidate policy.
        label (CaseLabel): Case to test.
        tol (float): Relative band width.

    Returns:
        CaseCheck: Satisfied flag, named residuals and the classification.
    """
    classification = classify_pair(pair, tol)
    satisfied = classification.label.case_key == label.case_key
    return CaseCheck(satisfied, condition_residuals(pair, label), classification)

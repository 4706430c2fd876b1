# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import itertools
from collections import namedtuple
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

import numpy as np

from marco.utils.exception.setfn_exception import InvalidSetFunctionError, UserCountError

MAX_USERS = 6

# kind is "monotonicity" or "submodularity"; second is None for monotonicity witnesses.
Violation = namedtuple("Violation", ["kind", "subset", "first", "second"])
PolymatroidCheck = namedtuple("PolymatroidCheck", ["is_polymatroid", "violations"])


def full_mask(k: int) -> int:
    return (1 << k) - 1


def subset_mask(users: Iterable[int]) -> int:
    """Bitmask of a set of 1-based user indices."""
    mask = 0
    for user in users:
        mask |= 1 << (int(user) - 1)
    return mask


def subset_users(mask: int) -> Tuple[int, ...]:
    """Sorted 1-based users of a bitmask."""
    users = []
    user = 1
    while mask:
        if mask & 1:
            users.append(user)
        mask >>= 1
        user += 1
    return tuple(users)


def format_subset(mask: int) -> str:
    return "{" + ",".join(str(user) for user in subset_users(mask)) + "}"


def ordered_masks(k: int, include_empty: bool = True) -> List[int]:
    """All subsets of {1..k}, smallest cardinality first, then lexicographic on sorted members."""
    masks = range(0 if include_empty else 1, full_mask(k) + 1)
    return sorted(masks, key=lambda mask: (bin(mask).count("1"), subset_users(mask)))


def check_user_count(k: int, limit: int = MAX_USERS):
    if not 1 <= k <= limit:
        raise UserCountError(f"User count {k} outside supported range 1..{limit}.")


class SetFunction:
    """Real-valued function on the subsets of {1..K}, with f(empty) = 0.

    Values are stored in an array indexed by subset bitmask; index 0 holds the
    structural zero of the empty set.

    Args:
        k (int): User count, 1 to 6.
        values (Mapping[int, float] | Sequence[float]): Either a map from every
            nonempty bitmask to its value, or a sequence of the ``2^k - 1`` values
            for bitmasks ``1 .. 2^k - 1`` in order.
    """

    def __init__(self, k: int, values: Union[Mapping[int, float], Sequence[float], np.ndarray]):
        check_user_count(k)
        self._k = k
        size = full_mask(k)
        table = np.zeros(size + 1, dtype=np.float64)

        if isinstance(values, Mapping):
            missing = [mask for mask in range(1, size + 1) if mask not in values]
            if missing:
                raise InvalidSetFunctionError(f"Missing values for subsets {[format_subset(m) for m in missing]}.")
            extra = [mask for mask in values if not 1 <= int(mask) <= size]
            if extra:
                raise InvalidSetFunctionError(f"Bitmasks {extra} are outside 1..{size}.")
            for mask in range(1, size + 1):
                table[mask] = float(values[mask])
        else:
            values = np.asarray(values, dtype=np.float64).reshape(-1)
            if values.size != size:
                raise InvalidSetFunctionError(f"Expected {size} values for K={k}, got {values.size}.")
            table[1:] = values

        if not np.all(np.isfinite(table)):
            raise InvalidSetFunctionError("Set function values must be finite.")
        if np.any(table < 0):
            raise InvalidSetFunctionError("Set function values must be non-negative.")

        table.flags.writeable = False
        self._table = table

    @property
    def k(self) -> int:
        return self._k

    @property
    def full_mask(self) -> int:
        return full_mask(self._k)

    @property
    def table(self) -> np.ndarray:
        """Read-only values indexed by bitmask, index 0 is the empty set."""
        return self._table

    def __call__(self, mask: int) -> float:
        return float(self._table[mask])

    def value(self, users: Iterable[int]) -> float:
        """Value of a subset given as 1-based users."""
        return self(subset_mask(users))

    def to_dict(self) -> Dict[int, float]:
        return {mask: float(self._table[mask]) for mask in range(1, self.full_mask + 1)}

    def to_text(self) -> str:
        """Flat ``bitmask: value`` lines, one per nonempty subset."""
        return "".join(f"{mask}: {float(self._table[mask])!r}\n" for mask in range(1, self.full_mask + 1))

    @classmethod
    def from_text(cls, text: str) -> "SetFunction":
        values = {}
        for line_no, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                mask, value = line.split(":", 1)
                values[int(mask)] = float(value)
            except ValueError:
                raise InvalidSetFunctionError(f"Line {line_no} is not 'bitmask: value': {line!r}.")
        if not values:
            raise InvalidSetFunctionError("No subset values found.")
        k = max(values).bit_length()
        return cls(k, values)

    def __eq__(self, other) -> bool:
        return isinstance(other, SetFunction) and self._k == other._k and np.array_equal(self._table, other._table)

    def __repr__(self) -> str:
        items = ", ".join(f"{format_subset(m)}: {self(m):.6g}" for m in ordered_masks(self._k, include_empty=False))
        return f"SetFunction(k={self._k}, {items})"


def dump_set_function(f: SetFunction, file_path: str):
    with open(file_path, "w") as fp:
        fp.write(f.to_text())


def load_set_function(file_path: str) -> SetFunction:
    with open(file_path, "r") as fp:
        return SetFunction.from_text(fp.read())


def check_polymatroid(f: SetFunction, tol: float = 1e-9) -> PolymatroidCheck:
    """Check normalization, monotonicity and submodularity of a set function.

    Monotonicity is checked on single-element extensions, which imply it for every
    chain. Submodularity uses the pairwise form
    f(S+k1) + f(S+k2) >= f(S) + f(S+k1+k2) on every admissible triple.

    Args:
        f (SetFunction): Function to check.
        tol (float): Absolute slack. Defaults to 1e-9.

    Returns:
        PolymatroidCheck: Flag plus the violations, each carrying its witnessing
            subset (as sorted users) and the added users.
    """
    violations = []
    k = f.k
    for mask in ordered_masks(k):
        outside = [user for user in range(1, k + 1) if not mask >> (user - 1) & 1]
        for user in outside:
            if f(mask) > f(mask | 1 << (user - 1)) + tol:
                violations.append(Violation("monotonicity", subset_users(mask), user, None))
        for first, second in itertools.combinations(outside, 2):
            with_first = mask | 1 << (first - 1)
            with_second = mask | 1 << (second - 1)
            with_both = with_first | with_second
            if f(with_first) + f(with_second) < f(mask) + f(with_both) - tol:
                violations.append(Violation("submodularity", subset_users(mask), first, second))
    return PolymatroidCheck(len(violations) == 0, violations)


def enumerate_vertices(f: SetFunction) -> List[Tuple[float, ...]]:
    """Corner points of the polymatroid of f, one per decoding permutation.

    For permutation pi, user pi(j) gets f(pi(1..j)) - f(pi(1..j-1)).

    Returns:
        list: ``K!`` rate tuples, indexed by user (position 0 is user 1), in
            ``itertools.permutations`` order.
    """
    check_user_count(f.k)
    vertices = []
    for order in itertools.permutations(range(1, f.k + 1)):
        rates = [0.0] * f.k
        prefix = 0
        for user in order:
            extended = prefix | 1 << (user - 1)
            rates[user - 1] = f(extended) - f(prefix)
            prefix = extended
        vertices.append(tuple(rates))
    return vertices


def random_polymatroid(k: int, rng: np.random.Generator, scale: float = 1.0) -> SetFunction:
    """Random polymatroid as a rank function sum of concave transforms of modular weights.

    f(S) = sum_j c_j * sqrt(w_j(S)) is normalized, monotone and submodular.
    """
    check_user_count(k)
    components = rng.uniform(0.1, 1.0, size=(3, k)) * scale
    coefficients = rng.uniform(0.2, 1.0, size=3)
    values = np.zeros(full_mask(k) + 1)
    for mask in range(1, full_mask(k) + 1):
        members = np.array([mask >> i & 1 for i in range(k)], dtype=bool)
        values[mask] = float(np.sum(coefficients * np.sqrt(components[:, members].sum(axis=1))))
    return SetFunction(k, values[1:])



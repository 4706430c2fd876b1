# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.


import operator
from copy import deepcopy
from functools import reduce
from typing import Iterable, List

from deepdiff import DeepDiff


def validate_and_fill_dict(template_dict: dict, actual_dict: dict, optional_key_to_value: dict) -> List[str]:
    """Fill the keys of ``actual_dict`` missing against ``template_dict`` with defaults.

    Keys are DeepDiff paths such as ``root['channel']['theta']``. A missing key with
    no default is reported, and all such keys are returned together.

    Args:
        template_dict (dict): Complete structure of a valid document.
        actual_dict (dict): Document to fill in place.
        optional_key_to_value (dict): DeepDiff path to default value.

    Returns:
        List[str]: ``missing <dotted.key>`` for every missing required key.
    """
    deep_diff = DeepDiff(template_dict, actual_dict).to_dict()

    errors = []
    missing_keys = sorted(deep_diff.get("dictionary_item_removed", []))
    for key in missing_keys:
        if key not in optional_key_to_value:
            errors.append(f"missing {'.'.join(get_map_list(deep_diff_str=key))}")
        else:
            set_in_dict(actual_dict, get_map_list(deep_diff_str=key), deepcopy(optional_key_to_value[key]))
    return errors


def unknown_keys(template_dict: dict, actual_dict: dict) -> List[str]:
    """Dotted keys present in ``actual_dict`` but not in the template."""
    deep_diff = DeepDiff(template_dict, actual_dict).to_dict()
    return [".".join(get_map_list(deep_diff_str=key)) for key in sorted(deep_diff.get("dictionary_item_added", []))]


def deep_diff_paths(template_dict: dict, exclude: Iterable[str] = ()) -> dict:
    """DeepDiff path of every section and leaf of a nested dict, mapped to its value."""
    exclude = set(exclude)
    paths = {}

    def _walk(node: dict, prefix: str):
        for key, value in node.items():
            path = f"{prefix}['{key}']"
            if path in exclude:
                continue
            paths[path] = value
            if isinstance(value, dict):
                _walk(value, path)

    _walk(template_dict, "root")
    return paths


def set_in_dict(data_dict: dict, map_list: list, value):
    get_from_dict(data_dict, map_list[:-1])[map_list[-1]] = value


def get_map_list(deep_diff_str: str) -> list:
    deep_diff_str = deep_diff_str.replace("root", "", 1)
    deep_diff_str = deep_diff_str.replace("['", "")
    deep_diff_str = deep_diff_str.strip("']")
    return deep_diff_str.split("']")


def get_from_dict(data_dict: dict, map_list: list):
    return reduce(operator.getitem, map_list, data_dict)

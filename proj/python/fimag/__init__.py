"""Finite models of Galois descent, groupoid reduction and Kummer towers.

Instance arguments may be a dict, a JSON string, or a path to an instance file.
Reports come back as dicts with the same fields as ``fimag --json``.
"""

import json
import os
from fractions import Fraction

from . import _fimag
from ._fimag import (
    BudgetError,
    CheckFailure,
    Error,
    InputError,
    decode_pair_twist,
    decode_rank_map,
    decode_twist_by_power,
    embed_pair_twist,
    embed_twist_by_power,
    fv_decompose,
    least_prime_at_least,
    rank_as_prime_field_map,
    subgroup_stabilizer_code,
)

__all__ = [
    "BudgetError", "CheckFailure", "Error", "InputError",
    "instance_kind", "h1", "descent", "groupoid", "sorts", "kummer", "selftest",
    "embed_pair_twist", "decode_pair_twist", "embed_twist_by_power", "decode_twist_by_power",
    "code_gamma_function", "decode_gamma_function", "rank_as_prime_field_map", "decode_rank_map",
    "least_prime_at_least", "subgroup_stabilizer_code", "fv_decompose",
]

DEFAULT_BUDGET = _fimag.DEFAULT_BUDGET


def _text(instance):
    if isinstance(instance, dict):
        return json.dumps(instance)
    if isinstance(instance, os.PathLike) or (isinstance(instance, str) and not instance.lstrip().startswith("{")):
        with open(instance, encoding="utf-8") as f:
            text = f.read()
        if text.lstrip().startswith("tower"):
            _, n, nprime, ram = text.split()
            return json.dumps({"kind": "tower", "N": int(n), "Nprime": int(nprime), "n": int(ram)})
        return text
    return instance


def instance_kind(instance):
    return _fimag.instance_kind(_text(instance))


def h1(instance, factor=False, budget=DEFAULT_BUDGET):
    return json.loads(_fimag.h1_report(_text(instance), factor, budget))


def descent(instance, budget=DEFAULT_BUDGET):
    return json.loads(_fimag.descent_report(_text(instance), budget))


def groupoid(instance, pipeline=False):
    return json.loads(_fimag.groupoid_report(_text(instance), pipeline))


def sorts(instance, power=1, budget=1_000_000):
    return json.loads(_fimag.sorts_report(_text(instance), power, budget))


def kummer(N, Nprime, n, claim3=True, pairs=0, seed=2024):
    return json.loads(_fimag.kummer_report(N, Nprime, n, claim3, pairs, seed))


def selftest(scale="small", only=()):
    return json.loads(_fimag.run_acceptance(scale, list(only)))


def code_gamma_function(values):
    image, ranks = _fimag.code_gamma_function([str(Fraction(v)) for v in values])
    return [Fraction(q) for q in image], ranks


def decode_gamma_function(image, ranks):
    return [Fraction(q) for q in _fimag.decode_gamma_function([str(Fraction(v)) for v in image], ranks)]

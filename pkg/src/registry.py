"""
Parsers for the flat ``name[:param[:param...]]`` registry syntax used on the
command line and in config files, e.g. ``power:2``, ``hyp2f1:0.5:0.5:0.75``,
``H`` or ``power:0.5``.
"""

from typing import List, Tuple

from .convexity import HKind, HSpec
from .errors import RegistryError
from .functions import FunctionSpec
from .means import Generator

_GENERATOR_ALIASES = {
    "a": "identity",
    "arithmetic": "identity",
    "identity": "identity",
    "g": "log",
    "geometric": "log",
    "log": "log",
    "h": "power:-1",
    "harmonic": "power:-1",
    "exp": "exp",
}

_H_ALIASES = {
    "identity": HKind.IDENTITY,
    "power": HKind.POWER,
    "breckner": HKind.POWER,
    "reciprocal": HKind.RECIPROCAL,
    "godunova-levin": HKind.RECIPROCAL,
    "one": HKind.ONE,
    "constant_one": HKind.ONE,
    "p": HKind.ONE,
}


def split_name(text: str) -> Tuple[str, List[float]]:
    """
    Splits ``name:p1:p2`` into its name and float parameters.

    Raises:
        RegistryError: on an empty name or a parameter that is not a number.
    """
    parts = text.strip().split(":")
    name = parts[0].strip().lower()
    if not name:
        raise RegistryError(f"empty registry name in {text!r}")
    params = []
    for raw in parts[1:]:
        try:
            params.append(float(raw))
        except ValueError:
            raise RegistryError(f"malformed parameter {raw!r} in {text!r}") from None
    return name, params


def parse_function(text: str) -> FunctionSpec:
    """``power:2`` -> FunctionSpec("power", (2.0,)). Also accepts ``reciprocal_hyp2f1``."""
    name, params = split_name(text)
    if name == "reciprocal_hyp2f1":
        name = "recip_hyp2f1"
    return FunctionSpec(name, tuple(params))


def parse_generator(text: str) -> Generator:
    """
    Generator from a name or mean alias.

    A, G and H name the arithmetic, geometric and harmonic generators
    (identity, log and power:-1).
    """
    name, params = split_name(_GENERATOR_ALIASES.get(text.strip().lower(), text))
    if name == "power":
        if len(params) != 1:
            raise RegistryError(f"power generator takes one exponent, got {text!r}")
        return Generator.power(params[0])
    if params:
        raise RegistryError(f"generator {name!r} takes no parameters, got {text!r}")
    builders = {"identity": Generator.identity, "log": Generator.log, "exp": Generator.exp}
    if name not in builders:
        raise RegistryError(f"unknown generator {text!r}; known: identity, power:p, log, exp, A, G, H")
    return builders[name]()


def parse_h(text: str) -> HSpec:
    """``power:0.5``, ``identity``, ``reciprocal`` or ``one``."""
    name, params = split_name(text)
    kind = _H_ALIASES.get(name)
    if kind is None:
        raise RegistryError(f"unknown h kind {text!r}; known: identity, power:s, reciprocal, one")
    if kind is HKind.POWER:
        if len(params) != 1:
            raise RegistryError(f"h kind power takes one exponent, got {text!r}")
        return HSpec.power(params[0])
    if params:
        raise RegistryError(f"h kind {name!r} takes no parameters, got {text!r}")
    return HSpec(kind)

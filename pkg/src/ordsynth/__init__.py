"""Controller synthesis for systems with Zeno behaviour, modelled by ordinal automata."""
from .ordinals import Ordinal, compare, add, omega_power, nat_scale, is_limit, parse_ordinal, format_ordinal
from .automaton import (
    OrdinalAutomaton, Sym, AnySym, Concat, OmegaPower, ANY, any_power,
    reach, membership, letter_at, emptiness_at_length, validate_level, length,
)
from .constructions import product, lift

__all__ = [
    "Ordinal", "compare", "add", "omega_power", "nat_scale", "is_limit", "parse_ordinal",
    "format_ordinal", "OrdinalAutomaton", "Sym", "AnySym", "Concat", "OmegaPower", "ANY",
    "any_power", "reach", "membership", "letter_at", "emptiness_at_length", "validate_level",
    "length", "product", "lift",
]

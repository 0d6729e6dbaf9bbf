"""srcodes: exact superregularity checking over finite fields and
construction of convolutional codes with provably optimal distance."""

from srcodes.gf import (
    FieldElement,
    FieldSpec,
    alpha_pow,
    default_field,
    element_text,
    field_create,
    parse_element,
)

__all__ = [
    "FieldElement",
    "FieldSpec",
    "alpha_pow",
    "default_field",
    "element_text",
    "field_create",
    "parse_element",
]

__version__ = "0.1.0"

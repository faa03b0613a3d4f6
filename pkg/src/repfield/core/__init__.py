"""Arithmetic building blocks: Z/p^M, Howell forms, small finite fields."""

from .fq import FiniteField, embedding, scalar_extend
from .matrix import Mat, howell_form, span_size
from .zmod import ModulusRing

__all__ = ["FiniteField", "Mat", "ModulusRing", "embedding", "howell_form", "scalar_extend", "span_size"]

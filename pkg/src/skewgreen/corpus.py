"""Named reference maps, one or more per case of the theory, in map-file syntax."""
from __future__ import annotations

from typing import Dict

from .algebra import SkewProduct
from .mapfile import parse_map

__all__ = ["CORPUS", "corpus_map", "names"]

CORPUS: Dict[str, str] = {
    # δ > d
    "monomial_gt": "p: z^3\nq: z^2 w^2",
    "perturbed_gt": "p: z^3\nq: z^2 w^2 + z^3 w",
    "tiny_perturbation_gt": "p: z^3\nq: z^2 w^2 + z",
    "semiconjugate_gt": "p: z^3\nq: z^2 w^2 - 1/4 z^6",
    "half_weight_gt": "p: z^5\nq: z^3 w^3 + z^6 w",
    "two_term_top_gt": "p: z^3\nq: z^2 w^2 - 1/4 z^6 + z^3 w",
    # δ < d
    "monomial_lt": "p: z^2\nq: z w^3",
    "perturbed_lt": "p: z^2\nq: z w^3 + w^3",
    "linear_term_lt": "p: z^2\nq: z w^3 + w",
    # δ = d, γ != 0
    "monomial_eq": "p: z^2\nq: z w^2",
    "conjugate_eq": "p: z^2\nq: z w^2 + 2 z^2 w + z^3 - z^2",
    "rational_weight_eq": "p: z^2\nq: z w^2 - z^4 + z^3",
    "mixed_eq": "p: z^2\nq: z w^2 + z^2 w",
    # γ = 0
    "regular": "p: z^2\nq: w^2",
    "nondegenerate": "p: z^2\nq: w^2 + z^3",
    "product_lt": "p: z^2 - 1\nq: w^3",
}


def names():
    return list(CORPUS)


def corpus_map(name: str) -> SkewProduct:
    try:
        return parse_map(CORPUS[name]).f
    except KeyError:
        raise KeyError(f"unknown corpus map {name!r}; choose from {names()}") from None

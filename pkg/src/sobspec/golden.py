"""Shipped reference tables for the worked Laguerre example.

The fixture holds every displayed entry of the ten chain matrices for the
configuration alpha = 0, c = -1, M = N = 1, each as a squared rational with a
separate sign (entries are square roots of rationals, so the squared form is
exact).  ``tools/make_reference_fixture.py`` regenerates the file from the
transcribed tables and revalidates it against the pipeline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import mpmath as mp

from .oracle import SqrtRational

FIXTURE_NAME = "laguerre_a0_cm1_M1_N1.json"

#: Order in which the reference matrices are reported.
MATRIX_NAMES = ("J", "L", "J1", "L1", "J2", "Q", "R", "T", "H", "J2_shift_sq")


@dataclass(frozen=True)
class GoldenMatrix:
    """One reference matrix: every stored entry as sign * sqrt(num/den)."""

    name: str
    nrows: int
    ncols: int
    entries: dict  # (i, j) -> SqrtRational

    def value(self, i, j, precision):
        """The entry as an mpf at the given binary precision."""
        ref = self.entries[(i, j)]
        with mp.workprec(precision):
            num = mp.mpf(ref.square.numerator)
            den = mp.mpf(ref.square.denominator)
            return ref.sign * mp.sqrt(num / den)


def load_reference():
    """The fixture as a dict of name -> GoldenMatrix, plus its configuration."""
    text = resources.files("sobspec").joinpath("data", FIXTURE_NAME).read_text()
    doc = json.loads(text)
    matrices = {}
    for name, payload in doc["matrices"].items():
        entries = {
            (i, j): SqrtRational.from_square(Fraction(num, den), sign)
            for i, j, num, den, sign in payload["entries"]
        }
        matrices[name] = GoldenMatrix(
            name=name,
            nrows=payload["nrows"],
            ncols=payload["ncols"],
            entries=entries,
        )
    return doc["config"], matrices

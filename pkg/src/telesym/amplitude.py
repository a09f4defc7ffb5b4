"""Symbolic amplitudes: polynomials in the input-state symbols.

An amplitude is a sparse polynomial in the four symbols α, β, α*, β*
with QRoot coefficients.  The normalization constraint
α·α* + β·β* = 1 is imposed by :meth:`Amp.reduce`, which eliminates every
occurrence of the product α·α*; reduced form is the canonical
representative used for equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Union

from .qroot import ONE as Q_ONE
from .qroot import QRoot, Rational

# exponents of (α, β, α*, β*)
Monomial = tuple[int, int, int, int]

_SYMS = ("α", "β", "α*", "β*")

Scalar = Union["Amp", QRoot, int, Fraction]


class Amp:
    """Sparse map Monomial -> QRoot; immutable once built."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, QRoot] = ()):
        self._terms: dict[Monomial, QRoot] = {
            m: c for m, c in dict(terms).items() if not c.is_zero()
        }

    @staticmethod
    def coerce(x: Scalar) -> "Amp":
        if isinstance(x, Amp):
            return x
        if isinstance(x, QRoot):
            return Amp({(0, 0, 0, 0): x})
        if isinstance(x, (int, Fraction)):
            return Amp({(0, 0, 0, 0): QRoot.rational(x)})
        raise TypeError(f"cannot treat {type(x).__name__} as an amplitude")

    def items(self) -> Iterator[tuple[Monomial, QRoot]]:
        return iter(self._terms.items())

    # -- ring operations -------------------------------------------------

    def __add__(self, other: Scalar) -> "Amp":
        other = Amp.coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            out[m] = c if s is None else s + c
        return Amp(out)

    def __neg__(self) -> "Amp":
        return Amp({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> "Amp":
        return self + (-Amp.coerce(other))

    def __mul__(self, other: Scalar) -> "Amp":
        other = Amp.coerce(other)
        out: dict[Monomial, QRoot] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])
                c = c1 * c2
                s = out.get(m)
                out[m] = c if s is None else s + c
        return Amp(out)

    __rmul__ = __mul__

    def conj(self) -> "Amp":
        """Swap α <-> α*, β <-> β*.  Coefficients are real, so unchanged."""
        return Amp({(m[2], m[3], m[0], m[1]): c for m, c in self._terms.items()})

    def reduce(self) -> "Amp":
        """Canonical form modulo α·α* + β·β* = 1 (α·α* -> 1 - β·β*)."""
        terms = dict(self._terms)
        while True:
            target = next((m for m in terms if m[0] > 0 and m[2] > 0), None)
            if target is None:
                return Amp(terms)
            coeff = terms.pop(target)
            i, j, k, l = target
            base = (i - 1, j, k - 1, l)
            extra = (i - 1, j + 1, k - 1, l + 1)
            for m, c in ((base, coeff), (extra, -coeff)):
                s = terms.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    terms.pop(m, None)
                else:
                    terms[m] = s

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.reduce()._terms

    def is_constant(self) -> bool:
        r = self.reduce()
        return all(m == (0, 0, 0, 0) for m in r._terms)

    def constant_value(self) -> QRoot:
        r = self.reduce()
        if not r._terms:
            return QRoot()
        if set(r._terms) != {(0, 0, 0, 0)}:
            raise ValueError(f"amplitude is not constant: {r}")
        return r._terms[(0, 0, 0, 0)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (Amp, QRoot, int, Fraction)):
            return NotImplemented
        return self.reduce()._terms == Amp.coerce(other).reduce()._terms

    def __hash__(self) -> int:
        return hash(frozenset(self.reduce()._terms.items()))

    # -- numeric bridge ---------------------------------------------------

    def eval(self, alpha: complex, beta: complex, check: bool = True) -> complex:
        if check and abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > 1e-12:
            raise ValueError("input state not normalized")
        total = 0j
        ac = complex(alpha).conjugate()
        bc = complex(beta).conjugate()
        for (i, j, k, l), c in self._terms.items():
            total += c.eval() * (alpha ** i) * (beta ** j) * (ac ** k) * (bc ** l)
        return total

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m in sorted(self._terms):
            c = self._terms[m]
            mono = "".join(
                s if e == 1 else f"{s}^{e}"
                for s, e in zip(_SYMS, m) if e > 0
            )
            if not mono:
                pieces.append(f"({c})")
            else:
                pieces.append(f"({c})·{mono}")
        return " + ".join(pieces)

    __repr__ = __str__


ZERO = Amp()
ONE = Amp({(0, 0, 0, 0): Q_ONE})
ALPHA = Amp({(1, 0, 0, 0): Q_ONE})
BETA = Amp({(0, 1, 0, 0): Q_ONE})
ALPHA_C = Amp({(0, 0, 1, 0): Q_ONE})
BETA_C = Amp({(0, 0, 0, 1): Q_ONE})


def from_rational(x: Rational) -> Amp:
    return Amp.coerce(x)

"""Sparse multi-particle state vectors over polarization ⊗ location labels.

A basis ket is an ordered tuple of per-particle labels; slot i is
particle i.  A label is (polarization bit, location symbol); location
``None`` marks a purely polarization-mode particle (used by the
distinguishable-particle scheme, which carries no spatial labels).
Distinct locations are orthonormal by construction.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Iterator, Mapping, Optional

from . import amplitude
from .amplitude import Amp, Scalar
from .qroot import QRoot

Location = Optional[str]
ParticleLabel = tuple[int, Location]
BasisKet = tuple[ParticleLabel, ...]


def label(pol: int, loc: Location = None) -> ParticleLabel:
    if pol not in (0, 1):
        raise ValueError(f"polarization must be 0 or 1, got {pol}")
    return (pol, loc)


class State:
    """Sparse linear combination of basis kets with Amp amplitudes."""

    __slots__ = ("n", "_amps")

    def __init__(self, n: int, amps: Mapping[BasisKet, Amp] = ()):
        self.n = n
        self._amps: dict[BasisKet, Amp] = {}
        for ket, amp in dict(amps).items():
            if len(ket) != n:
                raise ValueError(f"ket {ket} has {len(ket)} slots, expected {n}")
            amp = Amp.coerce(amp)
            if not amp.reduce().is_zero():
                self._amps[ket] = amp

    @staticmethod
    def basis(*labels: ParticleLabel) -> "State":
        return State(len(labels), {tuple(labels): amplitude.ONE})

    @staticmethod
    def zero(n: int) -> "State":
        return State(n, {})

    @staticmethod
    def unit() -> "State":
        """The empty 0-particle state, the tensor identity."""
        return State(0, {(): amplitude.ONE})

    def items(self) -> Iterator[tuple[BasisKet, Amp]]:
        return iter(self._amps.items())

    def kets(self) -> Iterable[BasisKet]:
        return self._amps.keys()

    def amp(self, ket: BasisKet) -> Amp:
        return self._amps.get(ket, amplitude.ZERO)

    def is_zero(self) -> bool:
        return not self._amps

    def __len__(self) -> int:
        return len(self._amps)

    # -- linear structure -------------------------------------------------

    def __add__(self, other: "State") -> "State":
        if self.n != other.n:
            raise ValueError("particle counts differ")
        out = dict(self._amps)
        for ket, amp in other._amps.items():
            s = out.get(ket)
            out[ket] = amp if s is None else s + amp
        return State(self.n, out)

    def __sub__(self, other: "State") -> "State":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "State":
        c = Amp.coerce(c)
        return State(self.n, {k: a * c for k, a in self._amps.items()})

    def tensor(self, other: "State") -> "State":
        """Juxtaposition: other's particle slots follow self's."""
        out: dict[BasisKet, Amp] = {}
        for k1, a1 in self._amps.items():
            for k2, a2 in other._amps.items():
                ket = k1 + k2
                amp = a1 * a2
                s = out.get(ket)
                out[ket] = amp if s is None else s + amp
        return State(self.n + other.n, out)

    def inner(self, other: "State") -> Amp:
        """<self|other>: conjugate-linear in self, linear in other."""
        if self.n != other.n:
            raise ValueError("particle counts differ")
        total = amplitude.ZERO
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        for ket in small._amps:
            a, b = self._amps.get(ket), other._amps.get(ket)
            if a is not None and b is not None:
                total = total + a.conj() * b
        return total.reduce()

    def norm_sq(self) -> Amp:
        return self.inner(self)

    # -- permutations and symmetrization -----------------------------------

    def permute(self, pi: tuple[int, ...]) -> "State":
        """Move the particle in slot i to slot pi[i] (0-based)."""
        if sorted(pi) != list(range(self.n)):
            raise ValueError(f"{pi} is not a permutation of 0..{self.n - 1}")
        out: dict[BasisKet, Amp] = {}
        for ket, amp in self._amps.items():
            new = [None] * self.n
            for i, slot in enumerate(pi):
                new[slot] = ket[i]
            out[tuple(new)] = amp
        return State(self.n, out)

    def symmetric_projection(self) -> "State":
        """(1/N!) Σ_π P_π applied to self, without renormalization."""
        total = State.zero(self.n)
        count = 0
        for pi in permutations(range(self.n)):
            total = total + self.permute(pi)
            count += 1
        return total.scale(QRoot.rational(count).inv())

    def symmetrize(self) -> "State":
        projected = self.symmetric_projection()
        if projected.is_zero():
            raise ValueError("state has no symmetric component")
        return projected.normalize()

    def normalize(self) -> "State":
        n2 = self.norm_sq()
        if not n2.is_constant():
            raise ValueError("norm depends on free symbols")
        c = n2.constant_value()
        if c.is_zero():
            raise ValueError("cannot normalize the zero state")
        return self.scale(c.sqrt().inv())

    def is_symmetric(self) -> bool:
        return all(self.permute(pi) == self for pi in permutations(range(self.n)))

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        if self.n != other.n:
            return False
        kets = set(self._amps) | set(other._amps)
        return all(self.amp(k) == other.amp(k) for k in kets)

    def __hash__(self) -> int:
        return hash((self.n, frozenset((k, a.reduce()) for k, a in self._amps.items())))

    def equal_up_to_phase(self, other: "State") -> bool:
        """True iff self = c·other for a unit-modulus constant c.

        Checked as: identical support, all cross-ratios of amplitudes
        equal, and equal norms (which pins |c| = 1).
        """
        if self.n != other.n or self.is_zero() != other.is_zero():
            return False
        if self.is_zero():
            return True
        kets = set(self._amps)
        if kets != set(other._amps):
            return False
        k0 = next(iter(kets))
        a0, b0 = self._amps[k0], other._amps[k0]
        for k in kets:
            if self._amps[k] * b0 != other._amps[k] * a0:
                return False
        return self.norm_sq() == other.norm_sq()

    # -- serialization --------------------------------------------------------

    def to_entries(self) -> list[tuple[str, str]]:
        """Canonical listing: (ket string, amplitude string), sorted."""
        rows = [(ket_str(k), str(a.reduce())) for k, a in self._amps.items()]
        return sorted(rows)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return "  +  ".join(f"[{a}]|{k}⟩" for k, a in self.to_entries())

    __repr__ = __str__


def ket_str(ket: BasisKet) -> str:
    return ",".join(f"{pol}{loc if loc is not None else '-'}" for pol, loc in ket)


def split_by_locations(x: State) -> dict[tuple[Location, ...], State]:
    """Partition a state by the per-slot location pattern of its kets."""
    groups: dict[tuple[Location, ...], dict[BasisKet, Amp]] = {}
    for ket, amp in x.items():
        pattern = tuple(loc for _, loc in ket)
        groups.setdefault(pattern, {})[ket] = amp
    return {p: State(x.n, amps) for p, amps in groups.items()}

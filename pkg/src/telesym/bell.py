"""Bell bases and exact subspace projection.

Covers the polarization Bell basis, the eight extended two-particle
vectors carrying a spatial factor of definite exchange symmetry, the
decomposition of a pair of slots of a larger state into that extended
basis, and projectors onto exactly-spanned subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import amplitude
from .amplitude import Amp
from .ket import BasisKet, Location, State, ket_str
from .qroot import QRoot

KINDS = ("phi+", "phi-", "psi+", "psi-")
SYMMETRIES = ("S", "A")

# (pol pair for first term, pol pair for second term, relative sign)
_POL_PARTS = {
    "phi+": ((0, 0), (1, 1), 1),
    "phi-": ((0, 0), (1, 1), -1),
    "psi+": ((0, 1), (1, 0), 1),
    "psi-": ((0, 1), (1, 0), -1),
}

BellLabel = tuple[str, str]  # (kind, "S" | "A")


def _pol_parity(kind: str) -> int:
    """Exchange parity of the polarization factor: -1 for psi-, else +1."""
    return -1 if kind == "psi-" else 1


def bell_pol(kind: str, loc: Location = None) -> State:
    """Polarization Bell vector on two particles, e.g. psi- -> (|01>-|10>)/√2."""
    p1, p2, sign = _POL_PARTS[kind]
    inv_sqrt2 = QRoot.of(0, Fraction(1, 2))
    return (State.basis((p1[0], loc), (p1[1], loc))
            + State.basis((p2[0], loc), (p2[1], loc)).scale(sign)
            ).scale(inv_sqrt2)


def bell_extended(kind: str, symmetry: str, loc_x: Location = "A",
                  loc_y: Location = "B") -> State:
    """Extended Bell vector: polarization factor times a spatial factor of
    definite exchange symmetry, overall coefficient 1/2.

    ``symmetry`` is the total exchange parity: "S" vectors are +1
    eigenstates of pair exchange, "A" vectors are -1 eigenstates; the
    spatial factor's own parity is total parity times the polarization
    factor's parity.
    """
    if symmetry not in SYMMETRIES:
        raise ValueError(f"symmetry must be one of {SYMMETRIES}")
    if loc_x == loc_y:
        raise ValueError("the two locations must be distinct")
    p1, p2, pol_sign = _POL_PARTS[kind]
    total = 1 if symmetry == "S" else -1
    spatial_sign = total * _pol_parity(kind)
    half = QRoot.rational(Fraction(1, 2))
    out: dict[BasisKet, Amp] = {}
    for (qa, qb), psign in (((p1[0], p1[1]), 1), ((p2[0], p2[1]), pol_sign)):
        for (la, lb), ssign in (((loc_x, loc_y), 1), ((loc_y, loc_x), spatial_sign)):
            ket = ((qa, la), (qb, lb))
            coeff = Amp.coerce(half * QRoot.rational(psign * ssign))
            out[ket] = out.get(ket, amplitude.ZERO) + coeff
    return State(2, out)


def extended_basis(loc_x: Location = "A", loc_y: Location = "B") -> dict[BellLabel, State]:
    """All eight extended vectors, an orthonormal basis of the sector with
    one particle at each location."""
    return {(k, s): bell_extended(k, s, loc_x, loc_y)
            for s in SYMMETRIES for k in KINDS}


@dataclass(frozen=True)
class PairDecomposition:
    """Expansion of a state over the extended Bell basis on two slots."""

    n: int
    pair: tuple[int, int]
    locations: tuple[Location, Location]
    coeffs: dict[BellLabel, State]  # residual state on the remaining slots

    def recombine(self) -> State:
        basis = extended_basis(*self.locations)
        total = State.zero(self.n)
        for lab, residual in self.coeffs.items():
            total = total + embed_pair(basis[lab], self.pair, residual)
        return total

    def residual(self, kind: str, symmetry: str) -> State:
        return self.coeffs[(kind, symmetry)]


def embed_pair(pair_state: State, pair: tuple[int, int], residual: State) -> State:
    """Place a 2-particle state on the given slots and a residual state on
    the remaining slots (in their original order)."""
    i, j = pair
    n = residual.n + 2
    rest_slots = [s for s in range(n) if s not in (i, j)]
    out: dict[BasisKet, Amp] = {}
    for pket, pamp in pair_state.items():
        for rket, ramp in residual.items():
            full: list = [None] * n
            full[i], full[j] = pket[0], pket[1]
            for slot, lab in zip(rest_slots, rket):
                full[slot] = lab
            ket = tuple(full)
            amp = pamp * ramp
            out[ket] = out.get(ket, amplitude.ZERO) + amp
    return State(n, out)


def decompose_pair(x: State, i: int, j: int,
                   locations: tuple[Location, Location] = ("A", "B")) -> PairDecomposition:
    """Expand slots (i, j) of x over the eight extended Bell vectors.

    Requires every basis ket of x to hold the two given locations, one
    per slot, at slots i and j (the two-location sector)."""
    if i == j or not (0 <= i < x.n and 0 <= j < x.n):
        raise ValueError(f"invalid slot pair ({i}, {j}) for {x.n} particles")
    wanted = set(locations)
    offending = [k for k in x.kets() if {k[i][1], k[j][1]} != wanted]
    if offending:
        raise ValueError(
            "slots (%d, %d) leave the %s/%s sector in kets: %s"
            % (i, j, locations[0], locations[1],
               ", ".join(ket_str(k) for k in sorted(offending))))
    basis = extended_basis(*locations)
    rest_slots = [s for s in range(x.n) if s not in (i, j)]
    coeffs: dict[BellLabel, State] = {}
    for lab, vec in basis.items():
        acc: dict[BasisKet, Amp] = {}
        for ket, amp in x.items():
            w = vec.amp((ket[i], ket[j]))
            if w.is_zero():
                continue
            rket = tuple(ket[s] for s in rest_slots)
            term = w.conj() * amp
            acc[rket] = acc.get(rket, amplitude.ZERO) + term
        coeffs[lab] = State(x.n - 2, acc)
    return PairDecomposition(x.n, (i, j), tuple(locations), coeffs)


class Projector:
    """Orthogonal projector onto the span of the given vectors.

    Built by exact sequential orthogonalization: spanning vectors whose
    residual norm² reduces to exactly zero are dropped, so the rank is
    decided without tolerances.  Requires all pairwise inner products to
    reduce to constants.
    """

    def __init__(self, vectors: list[State]):
        if not vectors:
            raise ValueError("projector needs at least one spanning vector")
        self.n = vectors[0].n
        self._basis: list[tuple[State, QRoot]] = []  # (orthogonal vector, norm²)
        for v in vectors:
            if v.n != self.n:
                raise ValueError("spanning vectors have mixed particle counts")
            r = v
            for u, n2 in self._basis:
                overlap = u.inner(r)
                if not overlap.is_constant():
                    raise ValueError("spanning vectors have non-constant overlaps")
                r = r - u.scale(overlap.constant_value() * n2.inv())
            n2 = r.norm_sq()
            if not n2.is_constant():
                raise ValueError("spanning vectors have non-constant overlaps")
            c = n2.constant_value()
            if not c.is_zero():
                self._basis.append((r, c))

    @property
    def rank(self) -> int:
        return len(self._basis)

    def apply(self, x: State) -> State:
        out = State.zero(self.n)
        for u, n2 in self._basis:
            out = out + u.scale(u.inner(x) * Amp.coerce(n2.inv()))
        return out

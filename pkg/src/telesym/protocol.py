"""Teleportation scenario builders and measurement drivers.

Three treatments of the same task (teleport the polarization state
α|0> + β|1> from region A to region C through a singlet channel):

* ``bennett_run`` — distinguishable particles, polarization only;
* ``build_naive`` + ``coincidence_measure`` — spatial labels added but
  the input particle kept distinguishable (teleportation fails);
* ``build_symmetric`` + ``coincidence_measure`` — full symmetrization
  over all particles and degrees of freedom (teleportation succeeds,
  with coincidence probability exactly 1/4).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import amplitude
from .amplitude import ALPHA, BETA, Amp
from .bell import KINDS, Projector, bell_extended, bell_pol, embed_pair
from .ket import Location, State, ket_str, split_by_locations
from .qroot import QRoot

# Pauli correction per observed Bell kind, read off the distinguishable
# scheme's four collapse outcomes ("ZX" = X first, then Z).
CORRECTIONS = {"phi+": "ZX", "phi-": "X", "psi+": "Z", "psi-": "I"}


@dataclass(frozen=True)
class Outcome:
    kind: str
    probability: Amp
    post: State
    correction: str


@dataclass(frozen=True)
class DensityMatrix2:
    """Conditional 2x2 polarization matrix at a location (trace 1)."""

    entries: tuple[tuple[Amp, Amp], tuple[Amp, Amp]]

    def entry(self, p: int, q: int) -> Amp:
        return self.entries[p][q]

    def trace(self) -> Amp:
        return (self.entries[0][0] + self.entries[1][1]).reduce()

    def eval(self, alpha: complex, beta: complex) -> list[list[complex]]:
        return [[self.entries[p][q].eval(alpha, beta) for q in (0, 1)]
                for p in (0, 1)]


# -- state builders -----------------------------------------------------------


def make_input(loc: Location = "A") -> State:
    """(α|0> + β|1>)|A>: the single-particle state to be teleported."""
    return (State.basis((0, loc)).scale(ALPHA)
            + State.basis((1, loc)).scale(BETA))


def make_channel(loc_x: Location = "B", loc_y: Location = "C") -> State:
    """Entangled two-particle channel: singlet polarization times an
    antisymmetric spatial factor, ½(|01>-|10>)(|BC>-|CB>)."""
    half = QRoot.rational(Fraction(1, 2))
    out = State.zero(2)
    for (pa, pb), psign in (((0, 1), 1), ((1, 0), -1)):
        for (la, lb), ssign in (((loc_x, loc_y), 1), ((loc_y, loc_x), -1)):
            out = out + State.basis((pa, la), (pb, lb)).scale(
                half * QRoot.rational(psign * ssign))
    return out


def build_naive() -> State:
    """Input particle tensored with the channel, no overall symmetrization."""
    return make_input().tensor(make_channel())


def build_symmetric() -> State:
    """Complete symmetrization of the naive state over all three particles."""
    return build_naive().symmetrize()


def target_state(loc: Location = None) -> State:
    return (State.basis((0, loc)).scale(ALPHA)
            + State.basis((1, loc)).scale(BETA))


# -- distinguishable-particle scheme ------------------------------------------


def project_pair_pol(x: State, kind: str, i: int, j: int) -> State:
    """Residual on the remaining slots after projecting slots (i, j) of x
    onto a polarization Bell vector."""
    vec = bell_pol(kind)
    rest = [s for s in range(x.n) if s not in (i, j)]
    acc: dict = {}
    for ket, amp in x.items():
        w = vec.amp((ket[i], ket[j]))
        if w.is_zero():
            continue
        rket = tuple(ket[s] for s in rest)
        term = w.conj() * amp
        acc[rket] = acc.get(rket, amplitude.ZERO) + term
    return State(x.n - 2, acc)


def apply_pauli(x: State, ops: str) -> State:
    """Apply single-particle Pauli descriptors, rightmost first."""
    out = x
    for op in reversed(ops):
        if op == "I":
            continue
        flipped: dict = {}
        for ket, amp in out.items():
            (pol, loc), = ket
            if op == "X":
                flipped[((1 - pol, loc),)] = amp
            elif op == "Z":
                flipped[ket] = amp if pol == 0 else -amp
            else:
                raise ValueError(f"unknown Pauli descriptor {op!r}")
        out = State(out.n, flipped)
    return out


def bennett_run() -> list[Outcome]:
    """The four equiprobable Bell-measurement outcomes of the
    distinguishable-particle scheme, with their corrections."""
    full = target_state().tensor(bell_pol("psi-"))
    outcomes = []
    for kind in KINDS:
        residual = project_pair_pol(full, kind, 0, 1)
        prob = residual.norm_sq()
        outcomes.append(Outcome(kind, prob, residual.normalize(), CORRECTIONS[kind]))
    return outcomes


# -- coincidence measurement ---------------------------------------------------


def coincidence_subspace(x: State, in1: Location, in2: Location) -> list[tuple[str, State]]:
    """Spanning vectors of the joint-detection subspace: for every slot
    pair, the spatially antisymmetric extended vectors on (in1, in2)
    tensored with the third-slot labels occurring in x.  For a totally
    symmetric input only the physical psi-/S family is needed."""
    kinds: list[tuple[str, str]] = [("psi-", "S")]
    if not x.is_symmetric():
        # Total-parity -1 vectors with symmetric polarization carry the
        # antisymmetric spatial factor; they are nonphysical for bosons
        # but required to span the partially symmetrized state.
        kinds += [("psi+", "A"), ("phi+", "A"), ("phi-", "A")]
    vectors = []
    for i, j in combinations(range(x.n), 2):
        rest = [s for s in range(x.n) if s not in (i, j)][0]
        third = sorted({ket[rest] for ket in x.kets()
                        if {ket[i][1], ket[j][1]} == {in1, in2}})
        for kind, sym in kinds:
            pair_vec = bell_extended(kind, sym, in1, in2)
            for lab in third:
                name = f"{kind}_{sym}@({i},{j})⊗{lab[0]}{lab[1]}"
                vectors.append((name, embed_pair(pair_vec, (i, j), State.basis(lab))))
    return vectors


def coincidence_measure(x: State, in1: Location, in2: Location) -> tuple[Amp, State]:
    """Project x onto the subspace where the pair at (in1, in2) has an
    antisymmetric spatial part (both detectors fire).  Returns the
    outcome probability and the collapsed, renormalized state."""
    if x.n != 3:
        raise ValueError("coincidence measurement is defined for 3-particle states")
    offending = [k for k in x.kets()
                 if sorted((in1, in2)) != sorted(
                     loc for _, loc in k if loc in (in1, in2))]
    if offending:
        raise ValueError(
            "kets without exactly one particle at each of %s, %s: %s"
            % (in1, in2, ", ".join(ket_str(k) for k in sorted(offending))))
    vectors = coincidence_subspace(x, in1, in2)
    projector = Projector([v for _, v in vectors])
    projected = projector.apply(x)
    prob = projected.norm_sq()
    if not prob.is_constant():
        raise ValueError("outcome probability depends on free symbols")
    if prob.constant_value().is_zero():
        raise ValueError("outcome impossible")
    return prob, projected.normalize()


# -- conditional polarization state --------------------------------------------


def conditional_at(x: State, loc: Location) -> DensityMatrix2:
    """Trace out everything but the polarization of whichever particle
    sits at the given location."""
    bad = [k for k in x.kets() if sum(1 for _, l in k if l == loc) != 1]
    if bad:
        raise ValueError(
            "kets without exactly one particle at %s: %s"
            % (loc, ", ".join(ket_str(k) for k in sorted(bad))))
    rho = [[amplitude.ZERO, amplitude.ZERO], [amplitude.ZERO, amplitude.ZERO]]
    groups: dict = {}
    for ket, amp in x.items():
        slot = next(i for i, (_, l) in enumerate(ket) if l == loc)
        rest = tuple(lab for i, lab in enumerate(ket) if i != slot)
        groups.setdefault((slot, rest), []).append((ket[slot][0], amp))
    for members in groups.values():
        for p, a in members:
            for q, b in members:
                rho[p][q] = rho[p][q] + a * b.conj()
    tr = (rho[0][0] + rho[1][1]).reduce()
    if not tr.is_constant():
        raise ValueError("conditional trace depends on free symbols")
    scale = Amp.coerce(tr.constant_value().inv())
    rows = tuple(tuple((rho[p][q] * scale).reduce() for q in (0, 1)) for p in (0, 1))
    return DensityMatrix2(rows)


def fidelity(rho: DensityMatrix2) -> Amp:
    """Overlap <χ|ρ|χ> with the teleportation target χ = α|0> + β|1>."""
    coeffs = (ALPHA, BETA)
    total = amplitude.ZERO
    for p in (0, 1):
        for q in (0, 1):
            total = total + coeffs[p].conj() * rho.entry(p, q) * coeffs[q]
    return total.reduce()


def manifold_state() -> State:
    """The three-term success manifold: psi-/S on each slot pair tensored
    with the target polarization at C, normalized."""
    total = State.zero(3)
    for i, j in combinations(range(3), 2):
        total = total + embed_pair(bell_extended("psi-", "S", "A", "B"),
                                   (i, j), target_state("C"))
    return total.normalize()


def sector_decompositions(x: State):
    """Group the kets of x by which slot pair holds locations {A, B} and
    decompose each group's pair over the extended Bell basis.

    Yields (pair, PairDecomposition), pairs in sorted order.
    """
    from .bell import decompose_pair

    groups: dict[tuple[int, int], dict] = {}
    for ket, amp in x.items():
        pair = tuple(i for i, (_, loc) in enumerate(ket) if loc in ("A", "B"))
        if len(pair) != 2:
            raise ValueError(f"ket {ket_str(ket)} has no unique A/B pair")
        groups.setdefault(pair, {})[ket] = amp
    for pair in sorted(groups):
        sector = State(x.n, groups[pair])
        yield pair, decompose_pair(sector, pair[0], pair[1])

"""Exact simulation of photon teleportation with indistinguishable particles.

Exact scalar kernel over Q(sqrt2, sqrt3), symbolic amplitudes in the
input-state symbols, sparse labeled-particle kets, Bell-basis analysis,
and the three teleportation scenario drivers (distinguishable, partially
symmetrized, fully symmetrized), plus a floating point cross-check
backend and a reporting CLI.
"""

from .amplitude import ALPHA, ALPHA_C, BETA, BETA_C, Amp, Monomial
from .bell import (PairDecomposition, Projector, bell_extended, bell_pol,
                   decompose_pair, embed_pair, extended_basis)
from .ket import BasisKet, Location, ParticleLabel, State, split_by_locations
from .protocol import (CORRECTIONS, DensityMatrix2, Outcome, apply_pauli,
                       bennett_run, build_naive, build_symmetric,
                       coincidence_measure, conditional_at, fidelity,
                       make_channel, make_input, manifold_state,
                       sector_decompositions, target_state)
from .qroot import QRoot

__all__ = [
    "ALPHA", "ALPHA_C", "BETA", "BETA_C", "Amp", "Monomial", "QRoot",
    "BasisKet", "Location", "ParticleLabel", "State", "split_by_locations",
    "PairDecomposition", "Projector", "bell_extended", "bell_pol",
    "decompose_pair", "embed_pair", "extended_basis",
    "CORRECTIONS", "DensityMatrix2", "Outcome", "apply_pauli",
    "bennett_run", "build_naive", "build_symmetric", "coincidence_measure",
    "conditional_at", "fidelity", "make_channel", "make_input",
    "manifold_state", "sector_decompositions", "target_state",
]

__version__ = "0.1.0"

"""Complex-float backend mirroring the exact pipeline.

Used to cross-check every exact scalar against an independent floating
point computation at concrete (alpha, beta), and to drive the seeded
sweep.  States are plain dicts from basis kets to complex amplitudes;
orthogonalization uses a residual-norm tolerance of 1e-10.
"""

from __future__ import annotations

import math
import random
from itertools import combinations, permutations

from .ket import BasisKet, State

NState = dict[BasisKet, complex]

_EPS = 1e-10

# polarization patterns of the Bell kinds: (first, second, relative sign)
_POL = {"phi+": ((0, 0), (1, 1), 1), "phi-": ((0, 0), (1, 1), -1),
        "psi+": ((0, 1), (1, 0), 1), "psi-": ((0, 1), (1, 0), -1)}


def from_exact(x: State, alpha: complex, beta: complex) -> NState:
    return {k: a.eval(alpha, beta) for k, a in x.items()}


def inner(x: NState, y: NState) -> complex:
    return sum(x[k].conjugate() * y[k] for k in x.keys() & y.keys())


def scale(x: NState, c: complex) -> NState:
    return {k: c * a for k, a in x.items()}


def add(x: NState, y: NState) -> NState:
    out = dict(x)
    for k, a in y.items():
        out[k] = out.get(k, 0j) + a
    return out


def tensor(x: NState, y: NState) -> NState:
    return {kx + ky: ax * ay for kx, ax in x.items() for ky, ay in y.items()}


def permute(x: NState, pi: tuple[int, ...]) -> NState:
    out: NState = {}
    for ket, a in x.items():
        new = [None] * len(pi)
        for i, slot in enumerate(pi):
            new[slot] = ket[i]
        out[tuple(new)] = out.get(tuple(new), 0j) + a
    return out


def symmetrize(x: NState, n: int) -> NState:
    total: NState = {}
    perms = list(permutations(range(n)))
    for pi in perms:
        total = add(total, permute(x, pi))
    total = scale(total, 1.0 / len(perms))
    return normalize(total)


def normalize(x: NState) -> NState:
    norm = math.sqrt(abs(inner(x, x)))
    if norm < _EPS:
        raise ValueError("cannot normalize a (numerically) zero state")
    return scale(x, 1.0 / norm)


def make_input(alpha: complex, beta: complex) -> NState:
    return {((0, "A"),): alpha, ((1, "A"),): beta}


def make_channel() -> NState:
    out: NState = {}
    for (pa, pb), ps in (((0, 1), 1), ((1, 0), -1)):
        for (la, lb), ls in ((("B", "C"), 1), (("C", "B"), -1)):
            out[((pa, la), (pb, lb))] = 0.5 * ps * ls
    return out


def bell_extended(kind: str, symmetry: str, loc_x: str = "A", loc_y: str = "B") -> NState:
    p1, p2, pol_sign = _POL[kind]
    pol_parity = -1 if kind == "psi-" else 1
    spatial_sign = (1 if symmetry == "S" else -1) * pol_parity
    out: NState = {}
    for pols, ps in ((p1, 1), (p2, pol_sign)):
        for locs, ls in (((loc_x, loc_y), 1), ((loc_y, loc_x), spatial_sign)):
            ket = ((pols[0], locs[0]), (pols[1], locs[1]))
            out[ket] = out.get(ket, 0j) + 0.5 * ps * ls
    return out


def embed_pair(pair_state: NState, pair: tuple[int, int], third, n: int = 3) -> NState:
    i, j = pair
    rest = [s for s in range(n) if s not in (i, j)]
    out: NState = {}
    for pket, a in pair_state.items():
        full = [None] * n
        full[i], full[j] = pket[0], pket[1]
        for slot, lab in zip(rest, [third]):
            full[slot] = lab
        out[tuple(full)] = out.get(tuple(full), 0j) + a
    return out


def orthonormal_basis(vectors: list[NState]) -> list[NState]:
    """Gram-Schmidt with residual tolerance 1e-10; dependent vectors dropped."""
    basis: list[NState] = []
    for v in vectors:
        r = dict(v)
        for u in basis:
            r = add(r, scale(u, -inner(u, r)))
        norm2 = abs(inner(r, r))
        if norm2 > _EPS:
            basis.append(scale(r, 1.0 / math.sqrt(norm2)))
    return basis


def project(basis: list[NState], x: NState) -> NState:
    out: NState = {}
    for u in basis:
        out = add(out, scale(u, inner(u, x)))
    return out


def is_symmetric(x: NState, n: int) -> bool:
    for pi in permutations(range(n)):
        y = permute(x, pi)
        if any(abs(y.get(k, 0j) - a) > _EPS for k, a in x.items()):
            return False
    return True


def coincidence_measure(x: NState, in1: str = "A", in2: str = "B") -> tuple[float, NState]:
    kinds = [("psi-", "S")]
    if not is_symmetric(x, 3):
        kinds += [("psi+", "A"), ("phi+", "A"), ("phi-", "A")]
    vectors = []
    for i, j in combinations(range(3), 2):
        rest = [s for s in range(3) if s not in (i, j)][0]
        third = sorted({ket[rest] for ket in x
                        if {ket[i][1], ket[j][1]} == {in1, in2}})
        for kind, sym in kinds:
            pv = bell_extended(kind, sym, in1, in2)
            for lab in third:
                vectors.append(embed_pair(pv, (i, j), lab))
    basis = orthonormal_basis(vectors)
    projected = project(basis, x)
    prob = abs(inner(projected, projected))
    return prob, normalize(projected)


def conditional_at(x: NState, loc: str) -> list[list[complex]]:
    rho = [[0j, 0j], [0j, 0j]]
    groups: dict = {}
    for ket, a in x.items():
        slot = next(i for i, (_, l) in enumerate(ket) if l == loc)
        rest = tuple(lab for i, lab in enumerate(ket) if i != slot)
        groups.setdefault((slot, rest), []).append((ket[slot][0], a))
    for members in groups.values():
        for p, a in members:
            for q, b in members:
                rho[p][q] += a * b.conjugate()
    tr = (rho[0][0] + rho[1][1]).real
    return [[e / tr for e in row] for row in rho]


def fidelity(rho: list[list[complex]], alpha: complex, beta: complex) -> float:
    c = (alpha, beta)
    total = 0j
    for p in (0, 1):
        for q in (0, 1):
            total += c[p].conjugate() * rho[p][q] * c[q]
    return total.real


def haar_qubit(rng: random.Random) -> tuple[complex, complex]:
    """Haar-uniform pure qubit state: two standard complex Gaussians,
    normalized."""
    a = complex(rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0))
    b = complex(rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0))
    norm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
    return a / norm, b / norm


def run_scenarios(alpha: complex, beta: complex) -> dict[str, float]:
    """All reported scalars of the three scenarios, computed entirely in
    floating point at a concrete input state."""
    naive = tensor(make_input(alpha, beta), make_channel())
    symmetric = symmetrize(naive, 3)
    out: dict[str, float] = {}

    # distinguishable scheme: polarization only
    singlet = {((0, None), (1, None)): 1 / math.sqrt(2),
               ((1, None), (0, None)): -1 / math.sqrt(2)}
    pol_input = {((0, None),): alpha, ((1, None),): beta}
    full = tensor(pol_input, singlet)
    for kind in _POL:
        p1, p2, sign = _POL[kind]
        vec = {((p1[0], None), (p1[1], None)): 1 / math.sqrt(2),
               ((p2[0], None), (p2[1], None)): sign / math.sqrt(2)}
        residual: NState = {}
        for ket, a in full.items():
            w = vec.get((ket[0], ket[1]))
            if w is None:
                continue
            rket = (ket[2],)
            residual[rket] = residual.get(rket, 0j) + w.conjugate() * a
        out[f"bennett_prob_{kind}"] = abs(inner(residual, residual))

    p_naive, collapsed_naive = coincidence_measure(naive)
    out["naive_prob"] = p_naive
    out["naive_fidelity"] = fidelity(conditional_at(collapsed_naive, "C"), alpha, beta)

    p_sym, collapsed_sym = coincidence_measure(symmetric)
    out["symmetric_prob"] = p_sym
    out["symmetric_fidelity"] = fidelity(conditional_at(collapsed_sym, "C"), alpha, beta)
    return out

"""Lattices generated by differences of integer points."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

__all__ = ["LatticeData", "lattice_data", "smith_diagonal", "differences"]


@dataclass(frozen=True)
class LatticeData:
    """The sublattice ``L`` spanned by the differences of a point set.

    ``saturation_index`` is ``[sat(L) : L]`` where ``sat(L) = (L ⊗ Q) ∩ Z^n``;
    ``index`` is ``[Z^n : L]``, or ``None`` (infinite) when ``rank < n``.
    """

    ambient_dim: int
    generators: tuple[tuple[int, ...], ...]
    rank: int
    invariant_factors: tuple[int, ...]
    saturation_index: int

    @property
    def index(self) -> int | None:
        if self.rank < self.ambient_dim:
            return None
        return self.saturation_index

    @property
    def is_standard(self) -> bool:
        """True when ``L = Z^n``."""
        return self.index == 1

    def describe(self) -> str:
        idx = "infinite" if self.index is None else str(self.index)
        return f"rank {self.rank} in Z^{self.ambient_dim}, index {idx}"


def smith_diagonal(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix."""
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    diag = []
    t = 0
    while t < min(len(m), ncols):
        # pivot: smallest nonzero entry in the remaining block
        entries = [(abs(m[i][j]), i, j) for i in range(t, len(m))
                   for j in range(t, ncols) if m[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = m[t][t]
            done = True
            for i in range(t + 1, len(m)):
                q = m[i][t] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                if m[i][t]:
                    done = False
            for j in range(t + 1, ncols):
                q = m[t][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                if m[t][j]:
                    done = False
            if done:
                # enforce divisibility of the remaining block
                bad = next(((i, j) for i in range(t + 1, len(m))
                            for j in range(t + 1, ncols) if m[i][j] % p), None)
                if bad is None:
                    break
                m[t] = [a + b for a, b in zip(m[t], m[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            cand = [(abs(m[i][t]), i, t) for i in range(t, len(m)) if m[i][t]]
            cand += [(abs(m[t][j]), t, j) for j in range(t, ncols) if m[t][j]]
            _, i, j = min(cand)
            m[t], m[i] = m[i], m[t]
            for row in m:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def differences(points: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    base = points[0]
    return [tuple(int(a) - int(b) for a, b in zip(p, base)) for p in points[1:]]


def lattice_data(points: Sequence[Sequence[int]]) -> LatticeData:
    """Rank and indices of the lattice spanned by differences of ``points``."""
    if not points:
        raise ValueError("lattice_data needs at least one point")
    n = len(points[0])
    for p in points:
        if len(p) != n:
            raise ValueError("dimension mismatch among points")
        if any(int(x) != x for x in p):
            raise ValueError("lattice points must have integer coordinates")
    gens = tuple(d for d in differences(points) if any(d))
    diag = smith_diagonal(gens)
    return LatticeData(
        ambient_dim=n,
        generators=gens,
        rank=len(diag),
        invariant_factors=tuple(diag),
        saturation_index=prod(diag) if diag else 1,
    )

"""Cohomology of an integer cochain complex with coefficients in Z/m, via Smith normal form.

For cochains in (Z/m)^k with an incoming coboundary ``N`` (k × k_prev) and an
outgoing coboundary ``M`` (k_next × k), the cocycles lift to the lattice

    L = {x ∈ Z^k : M x ≡ 0 (mod m)} = V · diag(c) · Z^k,   c_i = m / gcd(d_i, m),

where ``D = U M V`` is the Smith form of M.  In the coordinates of that basis the
coboundaries plus m·Z^k are spanned by the columns of ``[L⁻¹N | diag(m/c)]``; a
second Smith form of that stacked relation matrix gives the invariant factors of
H = Z/B, canonical class coordinates and coset representatives.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator, Sequence

from .algebra import AbelianGroupStructure, IntMatrix, smith_normal_form
from .errors import CapExceeded


class CyclicCoefficientCohomology:
    """Z, B and H of one cochain degree with coefficients in Z/m."""

    def __init__(self, outgoing: IntMatrix, incoming: IntMatrix, m: int):
        if m < 1:
            raise ValueError("modulus must be positive")
        k = outgoing.cols
        if incoming.rows != k:
            raise ValueError("incoming/outgoing dimensions disagree")
        self.m = m
        self.k = k
        self.outgoing = outgoing
        self.incoming = incoming

        snf = smith_normal_form(outgoing, u=False, v=True, v_inv=True)
        diag = snf.diagonal
        d = [diag[i] if i < len(diag) else 0 for i in range(k)]
        self._c = [m // math.gcd(di, m) for di in d]
        self._V = snf.V
        self._V_inv = snf.V_inv

        # relation matrix in lattice coordinates
        rel_cols = [self._to_lattice(incoming.column(j)) for j in range(incoming.cols)]
        for i in range(k):
            col = [0] * k
            col[i] = m // self._c[i]
            rel_cols.append(col)
        R = IntMatrix([list(r) for r in zip(*rel_cols)], k, len(rel_cols)) if rel_cols else IntMatrix.zeros(k, 0)
        snf2 = smith_normal_form(R, u=True, v=False, u_inv=True)
        diag2 = snf2.diagonal
        d2 = [diag2[i] if i < len(diag2) else 0 for i in range(k)]
        if any(x == 0 for x in d2):
            raise AssertionError("cohomology with finite coefficients must be finite")
        self._U2 = snf2.U
        self._U2_inv = snf2.U_inv
        self._active = [i for i in range(k) if d2[i] != 1]
        self.factors = tuple(d2[i] for i in self._active)
        self._nsnf = None

    # -- structure ---------------------------------------------------------
    @property
    def structure(self) -> AbelianGroupStructure:
        return AbelianGroupStructure(self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def cocycle_count(self) -> int:
        return math.prod(self.m // c for c in self._c)

    # -- lattice helpers ----------------------------------------------------
    def _to_lattice(self, x: Sequence[int]) -> list[int]:
        y = self._V_inv.apply(x)
        out = []
        for yi, ci in zip(y, self._c):
            if yi % ci:
                raise ValueError("vector is not a cocycle")
            out.append(yi // ci)
        return out

    def _from_lattice(self, z: Sequence[int]) -> list[int]:
        scaled = [zi * ci for zi, ci in zip(z, self._c)]
        return [v % self.m for v in self._V.apply(scaled)]

    # -- cochain tests ------------------------------------------------------
    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(v) % self.m for v in x)

    def is_cocycle(self, x: Sequence[int]) -> bool:
        return all(v % self.m == 0 for v in self.outgoing.apply(x))

    def coboundary(self, lam: Sequence[int]) -> tuple[int, ...]:
        return self.reduce(self.incoming.apply(lam))

    def class_coordinates(self, x: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates of the class of cocycle x in ⊕ Z/factors."""
        z = self._to_lattice([v % self.m for v in x])
        y = self._U2.apply(z)
        return tuple(y[i] % f for i, f in zip(self._active, self.factors))

    def representative(self, coords: Sequence[int]) -> tuple[int, ...]:
        y = [0] * self.k
        for i, c in zip(self._active, coords):
            y[i] = c
        return tuple(self._from_lattice(self._U2_inv.apply(y)))

    def class_elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(f) for f in self.factors))

    def cocycles(self, cap: int | None = None) -> Iterator[tuple[int, ...]]:
        """Every cocycle, each exactly once."""
        if cap is not None and self.cocycle_count > cap:
            raise CapExceeded(f"{self.cocycle_count} cocycles exceed cap {cap}")
        ranges = [range(self.m // c) for c in self._c]
        for z in itertools.product(*ranges):
            yield tuple(self._from_lattice(z))

    def cocycle_generators(self) -> list[tuple[int, ...]]:
        gens = []
        for i in range(self.k):
            if self._c[i] < self.m:
                z = [0] * self.k
                z[i] = 1
                gens.append(tuple(self._from_lattice(z)))
        return gens

    def solve_coboundary(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """A cochain λ with incoming·λ ≡ v (mod m), or None."""
        N = self.incoming
        if self._nsnf is None:
            self._nsnf = smith_normal_form(N, u=True, v=True)
        snf = self._nsnf
        w = snf.U.apply([x % self.m for x in v])
        diag = snf.diagonal
        y = [0] * N.cols
        for i, wi in enumerate(w):
            di = diag[i] if i < len(diag) else 0
            g = math.gcd(di, self.m)
            if wi % g:
                return None
            if di:
                # di*y ≡ wi (mod m)
                mm = self.m // g
                y[i] = (wi // g) * pow(di // g, -1, mm) % mm if mm > 1 else 0
        lam = [x % self.m for x in snf.V.apply(y)]
        assert self.coboundary(lam) == self.reduce(v)
        return tuple(lam)

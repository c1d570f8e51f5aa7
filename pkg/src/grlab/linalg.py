"""Exact row reduction over a prime field or the rationals.

Matrices here are small and dense (a few hundred rows/columns), built from
truncated series coefficients.  The prime-field path keeps everything in
int64 numpy arrays; products of two reduced entries stay below 2**34 for
the default 17-bit prime, so no overflow handling is needed.  The rational
path mirrors the same interface with Fraction rows and is used for audits.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np


class EchelonBasis:
    """Row-echelon basis with incremental insertion and vector reduction.

    Rows are indexed by their pivot (leading nonzero) column.  Rows are not
    fully inter-reduced; reduction of a vector scans pivot columns in
    ascending order, which is sufficient for membership tests and kernel
    extraction.
    """

    def __init__(self, width: int, p: int | None):
        self.width = width
        self.p = p
        self.rows: dict[int, object] = {}  # pivot col -> normalized row

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def _leading(self, row) -> int:
        if self.p is not None:
            nz = np.nonzero(row)[0]
            return int(nz[0]) if nz.size else -1
        for i, c in enumerate(row):
            if c:
                return i
        return -1

    def reduce(self, row):
        """Return the residual of `row` modulo the current row space."""
        p = self.p
        if p is not None:
            r = np.array(row, dtype=np.int64) % p
            while True:
                lead = self._leading(r)
                if lead < 0 or lead not in self.rows:
                    return r
                r = (r - r[lead] * self.rows[lead]) % p
        r = list(row)
        while True:
            lead = self._leading(r)
            if lead < 0 or lead not in self.rows:
                return r
            piv = self.rows[lead]
            c = r[lead]
            r = [a - c * b for a, b in zip(r, piv)]

    def insert(self, row) -> int:
        """Reduce and, if nonzero, add `row`; returns its pivot or -1."""
        r = self.reduce(row)
        lead = self._leading(r)
        if lead < 0:
            return -1
        if self.p is not None:
            inv = pow(int(r[lead]), self.p - 2, self.p)
            self.rows[lead] = (r * inv) % self.p
        else:
            c = r[lead]
            self.rows[lead] = [a / c for a in r]
        return lead


def echelon_from_rows(rows, width: int, p: int | None) -> EchelonBasis:
    basis = EchelonBasis(width, p)
    for row in rows:
        basis.insert(row)
    return basis


def left_kernel(rows, width: int, p: int | None) -> list:
    """Basis of combinations c with sum_i c_i row_i = 0.

    Processes rows in order against a growing echelon basis, tracking the
    combination that produced each residual; rows that reduce to zero yield
    kernel vectors.  Deterministic for a fixed row order.
    """
    n = len(rows)
    kernel = []
    basis_rows: dict[int, tuple] = {}  # pivot -> (row, combo)

    def leading(r):
        if p is not None:
            nz = np.nonzero(r)[0]
            return int(nz[0]) if nz.size else -1
        for i, c in enumerate(r):
            if c:
                return i
        return -1

    for i, row in enumerate(rows):
        if p is not None:
            r = np.array(row, dtype=np.int64) % p
            combo = np.zeros(n, dtype=np.int64)
            combo[i] = 1
            while True:
                lead = leading(r)
                if lead < 0:
                    kernel.append(combo % p)
                    break
                if lead not in basis_rows:
                    inv = pow(int(r[lead]), p - 2, p)
                    basis_rows[lead] = ((r * inv) % p, (combo * inv) % p)
                    break
                brow, bcombo = basis_rows[lead]
                c = r[lead]
                r = (r - c * brow) % p
                combo = (combo - c * bcombo) % p
        else:
            r = list(row)
            combo = [Fraction(0)] * n
            combo[i] = Fraction(1)
            while True:
                lead = leading(r)
                if lead < 0:
                    kernel.append(combo)
                    break
                if lead not in basis_rows:
                    c = r[lead]
                    basis_rows[lead] = (
                        [a / c for a in r],
                        [a / c for a in combo],
                    )
                    break
                brow, bcombo = basis_rows[lead]
                c = r[lead]
                r = [a - c * b for a, b in zip(r, brow)]
                combo = [a - c * b for a, b in zip(combo, bcombo)]
    return kernel

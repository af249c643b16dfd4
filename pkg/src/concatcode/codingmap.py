"""The coding map of a stabilizer code.

One coding level wraps product noise T^(x)n between encoding and
syndrome recovery plus decoding; on the level of Stokes matrices this is
a polynomial map of degree n.  Two forms are provided:

* `general_map` evaluates the full 4x4 image numerically (an exact
  rational variant exists for small codes), driven by the decoding
  coefficient tables of the code;
* `diagonal_map` returns the exact multivariate polynomials of the three
  diagonal components, with rational coefficients whose denominators
  divide 2^m.  Diagonal inputs stay diagonal, so these polynomials fully
  describe the dynamics of Pauli noise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .channel import DiagonalChannel, StokesChannel
from .stabilizer import SIGMAS, StabilizerCode

COMPONENTS = ("X", "Y", "Z")


class Monomial(NamedTuple):
    a: int
    b: int
    c: int
    coeff: Fraction


@dataclass(frozen=True)
class DiagonalMapPolynomial:
    """Exact polynomials of the three diagonal components of one coding level.

    `components[s]` lists monomials coeff * x^a y^b z^c in ascending
    lexicographic (a, b, c) order; the implicit identity component is the
    constant 1.  Total degree never exceeds `n`.
    """

    n: int
    components: dict[str, tuple[Monomial, ...]]

    def evaluate(self, sigma: str, x, y, z):
        """Evaluate one component; exact when the inputs are Fractions."""
        return sum(m.coeff * x**m.a * y**m.b * z**m.c for m in self.components[sigma])

    def apply(self, t: DiagonalChannel) -> DiagonalChannel:
        x, y, z = t.as_tuple()
        return DiagonalChannel(
            float(self.evaluate("X", x, y, z)),
            float(self.evaluate("Y", x, y, z)),
            float(self.evaluate("Z", x, y, z)),
        )

    def derivative(self, sigma: str, var: str) -> tuple[Monomial, ...]:
        """Exact partial derivative of one component, as monomials."""
        pos = "xyz".index(var)
        out = []
        for m in self.components[sigma]:
            e = [m.a, m.b, m.c]
            if e[pos] == 0:
                continue
            coeff = m.coeff * e[pos]
            e[pos] -= 1
            out.append(Monomial(e[0], e[1], e[2], coeff))
        return tuple(sorted(out, key=lambda mo: (mo.a, mo.b, mo.c)))

    def jacobian_at(self, x, y, z) -> np.ndarray:
        """Analytic 3x3 Jacobian (rows X, Y, Z; columns d/dx, d/dy, d/dz)."""
        out = np.empty((3, 3))
        for r, sigma in enumerate(COMPONENTS):
            for c, var in enumerate("xyz"):
                val = sum(
                    m.coeff * x**m.a * y**m.b * z**m.c for m in self.derivative(sigma, var)
                )
                out[r, c] = float(val)
        return out

    def depolarizing_line(self, sigma: str) -> tuple[Fraction, ...]:
        """Coefficients (degree-ascending) of the restriction x = y = z = t."""
        coeffs = [Fraction(0)] * (self.n + 1)
        for m in self.components[sigma]:
            coeffs[m.a + m.b + m.c] += m.coeff
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    def restricted_univariate(self, sigma: str, var: str, fixed: dict[str, Fraction]):
        """Coefficients in `var` after substituting exact values for the
        variables named in `fixed`; None if another variable survives."""
        pos = "xyz".index(var)
        coeffs = [Fraction(0)] * (self.n + 1)
        for m in self.components[sigma]:
            exps = [m.a, m.b, m.c]
            coeff = m.coeff
            for v, value in fixed.items():
                p = "xyz".index(v)
                coeff *= Fraction(value) ** exps[p]
                exps[p] = 0
            if any(e != 0 for i, e in enumerate(exps) if i != pos):
                return None
            coeffs[exps[pos]] += coeff
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    def to_json_obj(self) -> dict:
        return {
            sigma: [
                {
                    "a": m.a,
                    "b": m.b,
                    "c": m.c,
                    "num": m.coeff.numerator,
                    "den": m.coeff.denominator,
                }
                for m in self.components[sigma]
            ]
            for sigma in COMPONENTS
        }


@lru_cache(maxsize=None)
def diagonal_map(code: StabilizerCode) -> DiagonalMapPolynomial:
    """Exact diagonal-component polynomials of one coding level.

    Component sigma collects, per stabilizer S_i, the monomial with the
    letter counts of |S_i sigma_bar| and coefficient f[i][sigma] / 2^m;
    like monomials merge and exact zeros drop out.
    """
    f = code.f_matrix()
    group = code.group()
    size = len(group)
    components: dict[str, tuple[Monomial, ...]] = {}
    for col, sigma in enumerate(SIGMAS):
        if sigma == "I":
            continue
        logical = code.logical(sigma)
        acc: dict[tuple[int, int, int], Fraction] = {}
        for i, s in enumerate(group):
            exps = (s * logical).weights()
            coeff = Fraction(int(f.values[i, col]), size)
            acc[exps] = acc.get(exps, Fraction(0)) + coeff
        monomials = tuple(
            Monomial(a, b, c, coeff)
            for (a, b, c), coeff in sorted(acc.items())
            if coeff != 0
        )
        components[sigma] = monomials
    return DiagonalMapPolynomial(n=code.n, components=components)


def apply_diagonal(poly: DiagonalMapPolynomial, t: DiagonalChannel) -> DiagonalChannel:
    """Componentwise evaluation of the diagonal polynomials at [x, y, z]."""
    return poly.apply(t)


class _NumericTables(NamedTuple):
    letters: dict[str, np.ndarray]  # per sigma: (2^m, n) indices into I,X,Y,Z
    alpha: dict[str, np.ndarray]  # per sigma: (2^m,) signs
    beta: dict[str, np.ndarray]  # per sigma: (2^m,) floats


_LETTER_INDEX = {"I": 0, "X": 1, "Y": 2, "Z": 3}


@lru_cache(maxsize=None)
def _numeric_tables(code: StabilizerCode) -> _NumericTables:
    letters: dict[str, np.ndarray] = {}
    alpha: dict[str, np.ndarray] = {}
    beta: dict[str, np.ndarray] = {}
    for sigma in SIGMAS:
        table = code.coefficient_table(sigma)
        letters[sigma] = np.array(
            [[_LETTER_INDEX[c] for c in p.letters] for p, _, _ in table], dtype=np.intp
        )
        alpha[sigma] = np.array([a for _, a, _ in table], dtype=float)
        beta[sigma] = np.array([float(b) for _, _, b in table], dtype=float)
    return _NumericTables(letters, alpha, beta)


def general_map(code: StabilizerCode, channel: StokesChannel) -> StokesChannel:
    """Image of an arbitrary superoperator under one coding level.

    Entry (s, t) sums beta[s]_j * alpha[t]_i over all stabilizer pairs,
    weighted by the product of input entries along the letter patterns of
    |S_j s_bar| and |S_i t_bar|; cost is O(4^m n) per entry.
    """
    m = channel.matrix
    tables = _numeric_tables(code)
    out = np.empty((4, 4))
    for r, s in enumerate(SIGMAS):
        rows, beta = tables.letters[s], tables.beta[s]
        for c, t in enumerate(SIGMAS):
            cols, alpha = tables.letters[t], tables.alpha[t]
            prod = np.ones((rows.shape[0], cols.shape[0]))
            for k in range(code.n):
                prod *= m[rows[:, k][:, None], cols[:, k][None, :]]
            out[r, c] = beta @ prod @ alpha
    return StokesChannel(out)


def general_map_exact(code: StabilizerCode, entries) -> list[list[Fraction]]:
    """Exact-rational variant of `general_map` for a 4x4 array of Fractions.

    Intended for small codes; cost grows as 4^m * 4^m * n per entry.
    """
    rows = [[Fraction(v) for v in row] for row in entries]
    if len(rows) != 4 or any(len(r) != 4 for r in rows):
        raise ValueError("expected a 4x4 array of exact entries")
    tables = {sigma: code.coefficient_table(sigma) for sigma in SIGMAS}
    out = [[Fraction(0)] * 4 for _ in range(4)]
    for r, s in enumerate(SIGMAS):
        for c, t in enumerate(SIGMAS):
            total = Fraction(0)
            for p_row, _, beta in tables[s]:
                if beta == 0:
                    continue
                row_letters = p_row.letters
                for p_col, alpha, _ in tables[t]:
                    col_letters = p_col.letters
                    term = beta * alpha
                    for k in range(code.n):
                        term *= rows[_LETTER_INDEX[row_letters[k]]][
                            _LETTER_INDEX[col_letters[k]]
                        ]
                        if term == 0:
                            break
                    total += term
            out[r][c] = total
    return out


@dataclass(frozen=True)
class CConstants:
    """Perturbation constants of one coding level.

    `c_n` bounds the leakage of off-diagonal noise (exact rational, equals
    2^m * max_sigma sum_i |beta|); `c_m` is the operational quadratic
    constant of the diagonal components near the identity, measured on a
    deficit grid; `bounds_guaranteed` is False when d < 3 or w < 2, where
    the suppression orders behind these constants are not established.
    """

    c_n: Fraction
    c_m: float
    bounds_guaranteed: bool


GRID_POINTS = 1000
RANDOM_DIRECTIONS = 20


def c_constants(code: StabilizerCode, seed: int = 0) -> CConstants:
    """Compute (c_N, c_M) for a code.

    c_N is exact.  c_M is the smallest constant with
    |component([1,1,1] - eps*u) - 1| <= c_M * eps^2 over the grid
    eps in {k/1000 : 1 <= k <= 1000} and deficit directions u consisting
    of the three axes plus 20 seeded random directions scaled to max 1.
    """
    c_n = Fraction(0)
    for sigma in SIGMAS:
        total = sum(abs(beta) for _, _, beta in code.coefficient_table(sigma))
        c_n = max(c_n, (1 << code.m) * total)

    poly = diagonal_map(code)
    compiled = {}
    for sigma in COMPONENTS:
        mono = poly.components[sigma]
        exps = np.array([[m.a, m.b, m.c] for m in mono], dtype=np.int64)
        coeffs = np.array([float(m.coeff) for m in mono])
        compiled[sigma] = (exps, coeffs)

    rng = np.random.default_rng(seed)
    directions = [np.array(v, dtype=float) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    while len(directions) < 3 + RANDOM_DIRECTIONS:
        u = rng.uniform(0.0, 1.0, size=3)
        if u.max() > 1e-9:
            directions.append(u / u.max())

    eps = np.arange(1, GRID_POINTS + 1, dtype=float) / GRID_POINTS
    c_m = 0.0
    for u in directions:
        xyz = 1.0 - eps[None, :] * u[:, None]  # (3, grid)
        for sigma in COMPONENTS:
            exps, coeffs = compiled[sigma]
            powers = xyz[None, :, :] ** exps[:, :, None]  # (mono, 3, grid)
            values = coeffs @ powers.prod(axis=1)
            ratio = np.abs(values - 1.0) / eps**2
            c_m = max(c_m, float(ratio.max()))

    d, w = code.distance_and_w()
    return CConstants(c_n=c_n, c_m=c_m, bounds_guaranteed=(d >= 3 and w >= 2))

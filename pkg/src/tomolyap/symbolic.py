"""Exact term-by-term expansion of the probe value G(1, 1, tau, n).

Unrolling n kick periods of the shear-lattice evolution expands the probe
into a sum over 3^n branch words: at each backward step a node either flows
freely or couples to its two kick neighbours with weight +-(gamma/2) f(nu).
Bookkeeping uses 3x3 integer matrices acting on (alpha, beta, c) vectors,
where Tr denotes the sum of the entries:

* a word's f-argument at backward step s is Tr(W_{s-1} y0) with W the product
  of the branch matrices applied so far (root branch leftmost, each new
  branch appended on the right) and y0 = (0, 1, 0);
* the word's final evaluation against the linear initial data is
  Tr(W_n x0) with x0 = (1, 1, 0).

The minus-branch matrix used here keeps the sign of the accumulated constant
(last row (-1, -1, +1)); this is forced by agreement with the lattice engine,
which is the ground truth the expansion is checked against for n <= 8.

Restricted to tau = 1 and base point q0 = p0 = 0 (where all f-arguments are
integers); the per-word budget is 3^n terms, capped at n = 12.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResourceError, ValidationError
from .standard_map import StandardMapParams

MAX_EXPANSION_ORDER = 12

M0 = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]], dtype=np.int64)
M_PLUS = np.array([[1, 1, 0], [0, 1, 0], [1, 1, 1]], dtype=np.int64)
M_MINUS = np.array([[1, 1, 0], [0, 1, 0], [-1, -1, 1]], dtype=np.int64)

X0 = np.array([1, 1, 0], dtype=np.int64)
Y0 = np.array([0, 1, 0], dtype=np.int64)


def _check_expansion_inputs(params: StandardMapParams, n: int) -> None:
    if n < 0:
        raise ValidationError("n must be nonnegative")
    if n > MAX_EXPANSION_ORDER:
        raise ResourceError(
            f"expansion of {n} periods needs 3^{n} terms, over the 3^{MAX_EXPANSION_ORDER} budget")
    if params.tau != 1.0:
        raise ValidationError("symbolic expansion is defined for tau = 1")
    if params.q0 != 0.0 or params.p0 != 0.0:
        raise ValidationError("symbolic expansion is defined for q0 = p0 = 0")


def symbolic_expand(params: StandardMapParams, n: int) -> complex:
    """Value of G(1, 1, tau, n) summed over all 3^n expansion words.

    Matches the lattice engine to roundoff; this is the anti-drift oracle for
    the stencil, the minus-branch sign convention and the f-argument
    transport, in both the classical and quantum regimes.

    Each word ends at a lattice point whose coordinates are the two column
    sums of its matrix product (mu_f from the first column, nu_f from the
    second), so the evaluation against initial data v1 mu + v2 nu is
    v1 Tr(W (x0 - y0)) + v2 Tr(W y0).
    """
    _check_expansion_inputs(params, n)
    half_gamma = 0.5 * params.gamma
    words = np.eye(3, dtype=np.int64)[None, :, :]
    coeff = np.ones(1)
    for _ in range(n):
        f_arg = words[:, :, 1].sum(axis=1)  # Tr(W y0): y0 picks the middle column
        weight = half_gamma * params.f(f_arg.astype(float))
        words = np.concatenate([words @ M0, words @ M_PLUS, words @ M_MINUS])
        coeff = np.concatenate([coeff, coeff * weight, -coeff * weight])
    mu_end = words[:, :, 0].sum(axis=1)
    nu_end = words[:, :, 1].sum(axis=1)
    return complex(np.dot(coeff, params.v1 * mu_end + params.v2 * nu_end))


@dataclass(frozen=True)
class SymbolicTerm:
    """One expansion word: sign (gamma/2)^k weight, f-argument list, end vector."""

    coefficient: float
    f_args: tuple[int, ...]
    vector: tuple[int, int, int]

    def evaluate(self, params: StandardMapParams) -> float:
        value = self.coefficient
        for arg in self.f_args:
            value *= float(params.f(float(arg)))
        return value * sum(self.vector)


@dataclass(frozen=True)
class SymbolicTermSet:
    """Fully expanded word collection for n periods (3^n terms).

    The per-term affine vectors encode the unit perturbation direction
    v1 = v2 = 1 (the x0 bookkeeping); use `symbolic_expand` for general
    directions.
    """

    n: int
    terms: tuple[SymbolicTerm, ...]

    def evaluate(self, params: StandardMapParams) -> float:
        return sum(term.evaluate(params) for term in self.terms)


def expand_terms(params: StandardMapParams, n: int) -> SymbolicTermSet:
    """Materialized term set; slower than `symbolic_expand` but inspectable."""
    _check_expansion_inputs(params, n)
    half_gamma = 0.5 * params.gamma
    terms: list[tuple[float, tuple[int, ...], np.ndarray]] = [(1.0, (), np.eye(3, dtype=np.int64))]
    for _ in range(n):
        nxt = []
        for sign_weight, f_args, word in terms:
            f_arg = int(word[:, 1].sum())
            nxt.append((sign_weight, f_args, word @ M0))
            nxt.append((sign_weight * half_gamma, f_args + (f_arg,), word @ M_PLUS))
            nxt.append((-sign_weight * half_gamma, f_args + (f_arg,), word @ M_MINUS))
        terms = nxt
    packed = tuple(
        SymbolicTerm(coefficient, f_args, tuple(int(v) for v in word @ X0))
        for coefficient, f_args, word in terms)
    return SymbolicTermSet(n, packed)

"""Symmetric monomial basis of the bosonic Bargmann space at fixed angular momentum.

A basis state is a partition of ``L`` into at most ``N`` parts, stored as the
descending exponent tuple padded with zeros to length ``N``; it stands for the
monomial symmetric function ``m_lambda(z_1..z_N)``.  Inner products use the
weight ``prod_i exp(-beta |z_i|^2)``.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..errors import SizeLimit

DEFAULT_SIZE_CAP = 200_000
# weight exp(-|z|^2 / 2): the density of the lowest-Landau-level orbitals z^m exp(-|z|^2/4)
DEFAULT_BETA = 0.5


def default_size_cap():
    env = os.environ.get("COLDGAS_SIZE_CAP")
    return int(float(env)) if env else DEFAULT_SIZE_CAP


@lru_cache(maxsize=None)
def count_partitions(L, N):
    """Number of partitions of ``L`` into at most ``N`` parts."""
    if L == 0:
        return 1
    if N == 0 or L < 0:
        return 0
    # either fewer than N parts, or N parts each reduced by one
    return count_partitions(L, N - 1) + count_partitions(L - N, N)


def iter_partitions(L, N, max_part=None):
    """Partitions of ``L`` into at most ``N`` parts, descending, in reverse-lexicographic order."""
    if max_part is None:
        max_part = L
    if L == 0:
        yield ()
        return
    if N == 0:
        return
    for first in range(min(L, max_part), 0, -1):
        if first * N < L:
            break
        for rest in iter_partitions(L - first, N - 1, first):
            yield (first,) + rest


@dataclass(frozen=True)
class LLLBasisState:
    """Occupations ``{m: n_m}`` listed by increasing single-particle angular momentum."""

    occupations: tuple

    @classmethod
    def from_exponents(cls, exps):
        return cls(tuple(sorted(Counter(e for e in exps).items())))

    @property
    def N(self):
        return sum(n for _, n in self.occupations)

    @property
    def L(self):
        return sum(m * n for m, n in self.occupations)

    def exponents(self):
        return tuple(sorted((m for m, n in self.occupations for _ in range(n)), reverse=True))


@dataclass
class LLLBasis:
    N: int
    L: int
    states: list
    index: dict = field(repr=False)
    beta: float = DEFAULT_BETA

    def __len__(self):
        return len(self.states)

    @property
    def occupations(self):
        return [LLLBasisState.from_exponents(s) for s in self.states]

    @property
    def log_norms(self):
        return np.array([log_state_norm(s, self.beta) for s in self.states])

    @property
    def norms(self):
        """Squared Bargmann norms of the unnormalized symmetric monomials."""
        return np.exp(self.log_norms)


def enumerate_basis(N, L, cap=None, beta=DEFAULT_BETA):
    """All partitions of ``L`` into at most ``N`` parts, padded to length ``N``."""
    if N < 1 or L < 0:
        raise ValueError(f"need N >= 1 and L >= 0, got N={N}, L={L}")
    cap = default_size_cap() if cap is None else cap
    size = count_partitions(L, N)
    if size > cap:
        raise SizeLimit(f"basis for N={N}, L={L} has {size} states, above the cap {cap}")
    states = [p + (0,) * (N - len(p)) for p in iter_partitions(L, N)]
    states.reverse()  # lexicographically increasing
    return LLLBasis(N, L, states, {s: i for i, s in enumerate(states)}, beta)


def single_mode_norm(m, beta=DEFAULT_BETA):
    """int |z^m|^2 exp(-beta |z|^2) d^2z = pi m! / beta^(m+1)."""
    if not beta > 0:
        raise ValueError("beta must be positive")
    return math.pi * math.factorial(m) / beta ** (m + 1)


def log_single_mode_norm(m, beta=DEFAULT_BETA):
    return math.log(math.pi) + math.lgamma(m + 1) - (m + 1) * math.log(beta)


def symmetrization_factor(exps):
    """Number of distinct monomials in m_lambda: N! / prod_m n_m!."""
    counts = Counter(exps)
    out = math.factorial(len(exps))
    for n in counts.values():
        out //= math.factorial(n)
    return out


def log_state_norm(exps, beta=DEFAULT_BETA):
    return math.log(symmetrization_factor(exps)) + sum(log_single_mode_norm(m, beta) for m in exps)


def bargmann_norms(basis, beta=None):
    """Squared norms ``||m_lambda||^2`` of every basis state under weight exponent ``beta``."""
    beta = basis.beta if beta is None else beta
    if not beta > 0:
        raise ValueError("beta must be positive")
    return np.exp([log_state_norm(s, beta) for s in basis.states])

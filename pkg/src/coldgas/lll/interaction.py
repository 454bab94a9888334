"""Projected contact interaction on the symmetric Bargmann space.

The pair operator acts as

    (delta_12 f)(z1, z2) = (2 pi)^{-3/2} f((z1 + z2)/2, (z1 + z2)/2),

so on a monomial ``z1^a z2^b`` it gives ``(2 pi)^{-3/2} 2^{-M} (z1 + z2)^M`` with
``M = a + b``.  Summing over particle pairs and reading off coefficients of
symmetric monomials gives the matrix in the monomial basis; a diagonal
similarity with the Bargmann norms turns it into the symmetric matrix of the
orthonormalized basis.
"""

from __future__ import annotations

import math
from collections import Counter

import numpy as np
from scipy import sparse

from .basis import DEFAULT_BETA, enumerate_basis, log_state_norm

PAIR_STRENGTH = (2.0 * math.pi) ** -1.5
DENSE_LIMIT = 2000


def pair_action(a, b):
    """Literal action on ``z1^a z2^b``: ``{(k, M - k): coefficient}``."""
    M = a + b
    scale = PAIR_STRENGTH / 2.0**M
    return {(k, M - k): scale * math.comb(M, k) for k in range(M + 1)}


def monomial_matrix(basis):
    """Coefficients ``A[mu, lam]`` of ``m_mu`` in ``sum_{i<j} delta_ij m_lam``.

    The coefficient of ``m_mu`` equals that of its representative monomial
    ``z^mu``.  For a pair of positions carrying exponents ``(u, v)`` in ``mu``,
    every ordered pair ``(a, u + v - a)`` in those positions maps onto ``z^mu``
    with weight ``2^{-M} C(M, u)``; the arrangement it came from fixes ``lam``.
    """
    index = basis.index
    rows, cols, vals = [], [], []
    for i_mu, mu in enumerate(basis.states):
        counts = Counter(mu)
        values = sorted(counts)
        acc = {}
        for p, u in enumerate(values):
            for v in values[p:]:
                if u == v:
                    npairs = counts[u] * (counts[u] - 1) // 2
                else:
                    npairs = counts[u] * counts[v]
                if npairs == 0:
                    continue
                M = u + v
                weight = npairs * PAIR_STRENGTH * math.comb(M, u) / 2.0**M
                rest = Counter(counts)
                rest[u] -= 1
                rest[v] -= 1
                for a in range(M + 1):
                    new = rest.copy()
                    new[a] += 1
                    new[M - a] += 1
                    lam = tuple(sorted(new.elements(), reverse=True))
                    j = index[lam]
                    acc[j] = acc.get(j, 0.0) + weight
        for j, val in acc.items():
            rows.append(i_mu)
            cols.append(j)
            vals.append(val)
    n = len(basis)
    return sparse.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()


def delta_matrix(N, L, beta=DEFAULT_BETA, cap=None, dense=None):
    """Matrix of ``Delta_N = sum_{i<j} delta_ij`` in the orthonormalized basis at fixed ``L``.

    Dense ``ndarray`` up to ``DENSE_LIMIT`` states, CSR sparse above (override
    with ``dense``).  Returns ``(matrix, basis)``.
    """
    basis = enumerate_basis(N, L, cap=cap, beta=beta)
    A = monomial_matrix(basis).tocoo()
    logn = np.array([log_state_norm(s, beta) for s in basis.states])
    # <e_mu| Delta |e_lam> = A[mu, lam] ||m_mu|| / ||m_lam||
    data = A.data * np.exp(0.5 * (logn[A.row] - logn[A.col]))
    H = sparse.coo_matrix((data, (A.row, A.col)), shape=A.shape).tocsr()
    if dense is None:
        dense = len(basis) <= DENSE_LIMIT
    return (H.toarray() if dense else H), basis

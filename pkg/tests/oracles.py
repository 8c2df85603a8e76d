"""Independent small-scale oracles used only by the test suite.

These deliberately avoid the production code paths: the character-table
oracle decomposes the regular representation numerically, and the fake-degree
oracle sums over all group elements instead of conjugacy classes.
"""
from __future__ import annotations

import numpy as np

from reflekt.exact import CycNum, PolyT, SeriesT, poly_one_minus_Tk, series_inverse


def regular_rep_characters(g, seed: int = 20240811) -> list[np.ndarray]:
    """Distinct irreducible characters of g, found by splitting the left
    regular representation along the eigenspaces of a generic Hermitian
    element of its commutant (the right regular group algebra)."""
    n = g.order
    rng = np.random.default_rng(seed)
    re = rng.standard_normal(n)
    im = rng.standard_normal(n)
    coeff = np.empty(n, dtype=complex)
    for w in range(n):
        wi = g.inverse(w)
        if w == wi:
            coeff[w] = re[w]
        else:
            a = min(w, wi)
            # c_{w^-1} = conj(c_w) keeps B Hermitian without realifying it,
            # so conjugate pairs of irreducibles stay in separate eigenspaces
            coeff[w] = re[a] + 1j * im[a] if w == a else re[a] - 1j * im[a]
    B = np.zeros((n, n), dtype=complex)
    for w in range(n):
        for v in range(n):
            B[g.mult(v, w), v] += coeff[w]
    assert np.allclose(B, B.conj().T)
    evals, evecs = np.linalg.eigh(B)

    left = []
    for cls in g.classes:
        L = np.zeros((n, n))
        for v in range(n):
            L[g.mult(cls.rep, v), v] = 1.0
        left.append(L)

    clusters = []
    start = 0
    for i in range(1, n + 1):
        if i == n or evals[i] - evals[i - 1] > 1e-6:
            clusters.append((start, i))
            start = i

    chars = []
    for a, b in clusters:
        U = evecs[:, a:b]
        vals = np.array([np.trace(U.conj().T @ L @ U) for L in left])
        chars.append(vals)

    distinct: list[np.ndarray] = []
    for ch in chars:
        if not any(np.allclose(ch, d, atol=1e-6) for d in distinct):
            distinct.append(ch)
    return distinct


def brute_force_fake_degree(g, values) -> PolyT:
    """Fake degree by the elementwise sum, independent of the class-grouped
    production path: (1/|W|) sum_w chi(w) prod(1-T^{d_i}) / det(1-Tw)."""
    order = len(g.reflections)
    numer = PolyT([CycNum.one()])
    for d in g.degrees:
        numer = numer * poly_one_minus_Tk(d)
    acc = SeriesT([], order)
    for w in range(g.order):
        chi = values[g.class_of[w]]
        det_poly = _det_one_minus_T_times(g, w)
        term = series_inverse(det_poly, order) * chi
        acc = acc + term
    numer_series = SeriesT(list(numer.coeffs), order)
    total = numer_series * acc
    coeffs = [c / g.order for c in total.coeffs]
    return PolyT(coeffs)


def _det_one_minus_T_times(g, w: int) -> PolyT:
    """det(1 - T w) from the explicit matrix, expanded by Leibniz."""
    import itertools

    m = g.elements[w]
    n = g.dimension
    one = PolyT([CycNum.one()])
    acc = PolyT([])
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        prod = one
        for i in range(n):
            entry = m[i][perm[i]]
            cell = PolyT([CycNum.one() if i == perm[i] else CycNum.zero(), -entry])
            prod = prod * cell
        acc = acc + prod * sign
    return acc


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign

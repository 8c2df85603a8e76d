"""Exact irreducible character tables and local restriction data.

The table is computed with the classical Burnside-Dixon method: the class
constant matrices are simultaneously diagonalized over a prime field F_p with
p = 1 (mod exponent(W)), p not dividing |W| and p > 2*sqrt(|W|); eigenvalue
multiplicities of each element recover the character values as exact sums of
roots of unity.  The finished table is validated by exact row and column
orthogonality and any inconsistency raises - there is no approximate fallback.

Row order is canonical: by degree, then lexicographically on the numerically
embedded values (exact JSON as the final tiebreak), so cached tables and
cross-run row references are stable.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

from .exact import CycNum, ExactError
from .groups import ReflectionGroup


class CharTableError(Exception):
    """Internal failure of the character table computation."""


@dataclass(frozen=True)
class ClassFunction:
    """Exact class function: one CycNum per conjugacy class, in class order."""

    group: ReflectionGroup
    values: tuple[CycNum, ...]

    def value_on_element(self, i: int) -> CycNum:
        return self.values[self.group.class_of[i]]

    @property
    def degree(self) -> CycNum:
        return self.values[self.group.class_of[self.group.identity]]

    def degree_int(self) -> int:
        d = self.degree
        if not d.is_integer():
            raise CharTableError("character degree is not an integer")
        return int(d.as_fraction())

    def inner(self, other: ClassFunction) -> CycNum:
        g = self.group
        acc = CycNum.zero()
        for idx, cls in enumerate(g.classes):
            acc = acc + self.values[idx] * other.values[idx].conjugate() * cls.size
        return acc / g.order

    def norm(self) -> CycNum:
        return self.inner(self)

    def is_linear(self) -> bool:
        return self.degree == 1

    def conjugate(self) -> ClassFunction:
        return ClassFunction(self.group, tuple(v.conjugate() for v in self.values))

    def tensor(self, other: ClassFunction) -> ClassFunction:
        return ClassFunction(
            self.group, tuple(a * b for a, b in zip(self.values, other.values))
        )

    def to_json(self) -> list:
        return [v.to_json() for v in self.values]


@dataclass(frozen=True)
class LocalData:
    """Restriction multiplicities n_{C,j} to cyclic hyperplane stabilizers.

    multiplicities[c][j] = multiplicity of det^{-j} in the restriction of the
    character to the stabilizer of a hyperplane in orbit c, 0 <= j < e_C.
    """

    multiplicities: tuple[tuple[int, ...], ...]

    def to_json(self) -> list:
        return [list(row) for row in self.multiplicities]


class CharacterTable:
    def __init__(self, group: ReflectionGroup, rows: list[ClassFunction]):
        self.group = group
        self.rows = tuple(rows)
        self._validate()

    def _validate(self) -> None:
        g = self.group
        if len(self.rows) != len(g.classes):
            raise CharTableError("row count differs from class count")
        if sum(r.degree_int() ** 2 for r in self.rows) != g.order:
            raise CharTableError("sum of squared degrees != |W|")
        for i, ri in enumerate(self.rows):
            for j in range(i, len(self.rows)):
                val = ri.inner(self.rows[j])
                if val != (1 if i == j else 0):
                    raise CharTableError(f"row orthogonality fails at ({i},{j})")
        for ci in range(len(g.classes)):
            for cj in range(ci, len(g.classes)):
                acc = CycNum.zero()
                for r in self.rows:
                    acc = acc + r.values[ci] * r.values[cj].conjugate()
                want = Fraction(g.order, g.classes[ci].size) if ci == cj else 0
                if acc != want:
                    raise CharTableError(f"column orthogonality fails at ({ci},{cj})")

    def row_index(self, f: ClassFunction) -> int:
        for i, r in enumerate(self.rows):
            if all(a == b for a, b in zip(r.values, f.values)):
                return i
        raise KeyError("class function is not a row of the table")

    def to_json(self) -> dict:
        g = self.group
        return {
            "classes": [
                {"size": c.size, "rep_word": list(g.words[c.rep])} for c in g.classes
            ],
            "degrees": [r.degree_int() for r in self.rows],
            "rows": [r.to_json() for r in self.rows],
        }


# ---------------------------------------------------------------------------
# F_p helpers
# ---------------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _dixon_prime(exponent: int, order: int, nclasses: int) -> int:
    p = exponent + 1
    lower = max(2 * isqrt(order) + 1, nclasses + 2)
    while True:
        if p > lower and _is_prime(p) and order % p and (p - 1) % exponent == 0:
            return p
        p += 1


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _primitive_root_power(p: int, e: int) -> int:
    """An element of multiplicative order exactly e in F_p (requires e | p-1)."""
    qs = _prime_factors(e)
    for g in range(2, p):
        x = pow(g, (p - 1) // e, p)
        if x != 1 and all(pow(x, e // q, p) != 1 for q in qs):
            return x
    raise CharTableError("no element of the requested order found (bug)")


def _fp_rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    m = [r[:] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def _fp_nullspace(rows: list[list[int]], p: int) -> list[list[int]]:
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = _fp_rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][fc]) % p
        out.append(v)
    return out


def _fp_solve(a: list[list[int]], b: list[int], p: int) -> list[int]:
    n = len(a)
    aug = [a[i][:] + [b[i] % p] for i in range(n)]
    red, pivots = _fp_rref(aug, p)
    if len(pivots) != n or pivots != list(range(n)):
        raise CharTableError("singular F_p system (bug)")
    return [red[i][n] for i in range(n)]


def _fp_det(a: list[list[int]], p: int) -> int:
    n = len(a)
    m = [r[:] for r in a]
    out = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out = out * m[c][c] % p
        inv = pow(m[c][c], p - 2, p)
        for i in range(c + 1, n):
            if m[i][c] % p:
                f = m[i][c] * inv % p
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[c])]
    return out % p


def _fp_charpoly_eigenvalues(a: list[list[int]], p: int) -> list[int]:
    """Distinct eigenvalues of a over F_p, by interpolating det(a - x I)."""
    d = len(a)
    if d == 0:
        return []
    xs = list(range(d + 1))
    ys = []
    for x in xs:
        shifted = [[(a[i][j] - (x if i == j else 0)) % p for j in range(d)] for i in range(d)]
        ys.append(_fp_det(shifted, p))
    # Lagrange interpolation to coefficients
    coeffs = [0] * (d + 1)
    for i, xi in enumerate(xs):
        # basis polynomial prod_{j!=i} (x - xj) / (xi - xj)
        denom = 1
        basis = [1]
        for j, xj in enumerate(xs):
            if j == i:
                continue
            denom = denom * (xi - xj) % p
            basis = [
                ((basis[k - 1] if k else 0) - xj * (basis[k] if k < len(basis) else 0)) % p
                for k in range(len(basis) + 1)
            ]
        scale = ys[i] * pow(denom, p - 2, p) % p
        for k in range(len(basis)):
            coeffs[k] = (coeffs[k] + scale * basis[k]) % p
    roots = [x for x in range(p) if sum(c * pow(x, k, p) for k, c in enumerate(coeffs)) % p == 0]
    return roots


# ---------------------------------------------------------------------------
# Burnside-Dixon
# ---------------------------------------------------------------------------

def _class_constants(g: ReflectionGroup) -> list[list[list[int]]]:
    """a[i][j][k] = #{x in C_i : x^{-1} z_k in C_j} for fixed reps z_k."""
    r = len(g.classes)
    mats = [[[0] * r for _ in range(r)] for _ in range(r)]
    for i, ci in enumerate(g.classes):
        for k, ck in enumerate(g.classes):
            zk = ck.rep
            for x in ci.members:
                j = g.class_of[g.mult(g.inverse(x), zk)]
                mats[i][j][k] += 1
    return mats


def character_table(g: ReflectionGroup) -> CharacterTable:
    r = len(g.classes)
    exponent = lcm(*(g.element_orders[c.rep] for c in g.classes))
    p = _dixon_prime(exponent, g.order, r)
    z = _primitive_root_power(p, exponent)

    mats = _class_constants(g)
    # Simultaneous eigenspace refinement over F_p: split the r-dim space by
    # each class matrix in turn until all joint eigenspaces are 1-dimensional.
    spaces: list[list[list[int]]] = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]
    for i in range(r):
        if g.classes[i].rep == g.identity or all(len(b) == 1 for b in spaces):
            continue
        mi = mats[i]
        new_spaces: list[list[list[int]]] = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            d = len(basis)
            bt = [[basis[t][c] for t in range(d)] for c in range(r)]  # r x d columns
            act = [[0] * d for _ in range(d)]  # M_i b_s = sum_t act[t][s] b_t
            for s in range(d):
                img = [sum(mi[row][c] * basis[s][c] for c in range(r)) % p for row in range(r)]
                red, pivots = _fp_rref([bt[c] + [img[c]] for c in range(r)], p)
                if pivots[:d] != list(range(d)) or len(pivots) != d:
                    raise CharTableError("class matrix leaves subspace (bug)")
                for t in range(d):
                    act[t][s] = red[t][d]
            for lam in _fp_charpoly_eigenvalues(act, p):
                shifted = [
                    [(act[a][b] - (lam if a == b else 0)) % p for b in range(d)]
                    for a in range(d)
                ]
                null = _fp_nullspace(shifted, p)
                if not null:
                    continue
                joined = [
                    [sum(c[t] * basis[t][col] for t in range(d)) % p for col in range(r)]
                    for c in null
                ]
                new_spaces.append(joined)
        spaces = new_spaces
    if any(len(b) != 1 for b in spaces) or len(spaces) != r:
        raise CharTableError("class algebra did not split into 1-dim eigenspaces")

    id_class = g.class_of[g.identity]
    inv_class = g.inverse_class
    rows: list[ClassFunction] = []
    for (vec,) in spaces:
        if vec[id_class] % p == 0:
            raise CharTableError("eigenvector vanishes on the identity class (bug)")
        scale = pow(vec[id_class], p - 2, p)
        omega = [x * scale % p for x in vec]
        s = sum(
            omega[j] * omega[inv_class[j]] * pow(g.classes[j].size, p - 2, p)
            for j in range(r)
        ) % p
        if s == 0:
            raise CharTableError("degree denominator vanished (bug)")
        d2 = g.order * pow(s, p - 2, p) % p
        deg = next((d for d in range(1, isqrt(g.order) + 1) if d * d % p == d2), None)
        if deg is None:
            raise CharTableError("no valid degree square root (bug)")
        chi_mod = [
            deg * omega[j] % p * pow(g.classes[j].size, p - 2, p) % p for j in range(r)
        ]
        values = []
        for j, cls in enumerate(g.classes):
            m = g.element_orders[cls.rep]
            zm = pow(z, exponent // m, p)
            minv = pow(m, p - 2, p)
            val = CycNum.zero(g.conductor)  # m | exponent | conductor
            total = 0
            for t in range(m):
                acc = 0
                cur = g.identity
                for s_pow in range(m):
                    acc += chi_mod[g.class_of[cur]] * pow(zm, (-t * s_pow) % m, p)
                    cur = g.mult(cur, cls.rep)
                mult = acc * minv % p
                if mult > deg:
                    raise CharTableError("eigenvalue multiplicity exceeds degree (bug)")
                total += mult
                if mult:
                    val = val + mult * CycNum.zeta(m, t)
            if total != deg:
                raise CharTableError("eigenvalue multiplicities do not sum to degree")
            values.append(val.promote(g.conductor))
        rows.append(ClassFunction(g, tuple(values)))

    rows.sort(key=_row_sort_key)
    return CharacterTable(g, rows)


def _row_sort_key(row: ClassFunction):
    import json as _json

    embedded = []
    for v in row.values:
        c = v.to_complex()
        embedded.append((round(c.real, 10), round(c.imag, 10)))
    # exact JSON as the final tiebreak keeps the order fully deterministic
    return (row.degree_int(), embedded, _json.dumps(row.to_json()))


# ---------------------------------------------------------------------------
# derived characters and local data
# ---------------------------------------------------------------------------

def det_character(g: ReflectionGroup) -> ClassFunction:
    return ClassFunction(g, tuple(g.det(c.rep) for c in g.classes))


def trivial_character(g: ReflectionGroup) -> ClassFunction:
    return ClassFunction(g, tuple(CycNum.one() for _ in g.classes))


def defining_character(g: ReflectionGroup) -> ClassFunction:
    return ClassFunction(g, tuple(g.trace(c.rep) for c in g.classes))


def local_data(tau: ClassFunction, g: ReflectionGroup) -> LocalData:
    """Multiplicities of det^{-j} in the restriction to each orbit stabilizer."""
    out = []
    for orbit in g.orbits:
        hp = g.hyperplanes[orbit.members[0]]
        e = hp.order
        row = []
        for j in range(e):
            acc = CycNum.zero()
            for w in hp.stabilizer:
                acc = acc + tau.value_on_element(w) * g.det(w) ** j
            val = acc / e
            if not val.is_integer() or val.as_fraction() < 0:
                raise CharTableError(
                    f"restriction multiplicity n_(C,{j}) is not a nonnegative integer"
                )
            row.append(int(val.as_fraction()))
        deg = tau.degree_int()
        if sum(row) != deg:
            raise CharTableError("local multiplicities do not sum to the degree")
        out.append(tuple(row))
    return LocalData(tuple(out))


def tensor_with_linear(tau: ClassFunction, lam: ClassFunction) -> ClassFunction:
    if not lam.is_linear():
        raise ValueError("second factor must be a linear character")
    out = tau.tensor(lam)
    if tau.norm() == 1 and out.norm() != 1:
        raise CharTableError("tensor with a linear character lost irreducibility")
    return out


def orbit_det_power(g: ReflectionGroup, lam: ClassFunction, orbit_idx: int) -> int:
    """The a with lam|_{W_H} = det^{-a} on the stabilizer of orbit orbit_idx."""
    hp = g.hyperplanes[g.orbits[orbit_idx].members[0]]
    s = hp.generator
    val = lam.value_on_element(s)
    d = g.det(s)
    for a in range(hp.order):
        if d ** ((-a) % hp.order) == val:
            return a
    raise CharTableError("linear character is not a det power on the stabilizer")

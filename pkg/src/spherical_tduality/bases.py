"""Library of formal base models: cohomology rings with zero differential.

These supply the desk-scale bases the engine is exercised on (projective
spaces, tori, spheres and their products).  Nonzero differentials are
allowed by :class:`~spherical_tduality.algebra.GradedAlgebra` itself; the
library models are all formal.
"""

from .algebra import GradedAlgebra, koszul_sign
from .linalg import ONE


def point():
    """The one-point base: a single degree-0 class."""
    return GradedAlgebra(["1"], [0], {(0, 0): {0: ONE}})


def cp(n):
    """Complex projective space: truncated polynomial ring on w of degree 2."""
    if n < 1:
        raise ValueError("cp(n) needs n >= 1")
    names = ["1", "w"] + [f"w^{i}" for i in range(2, n + 1)]
    degrees = [2 * i for i in range(n + 1)]
    mult = {}
    for i in range(n + 1):
        for j in range(n + 1):
            if i + j <= n:
                mult[(i, j)] = {i + j: ONE}
    return GradedAlgebra(names, degrees, mult)


def sphere(m):
    """Sphere of dimension m >= 1: one generator s with s*s = 0."""
    if m < 1:
        raise ValueError("sphere(m) needs m >= 1")
    mult = {(0, 0): {0: ONE}, (0, 1): {1: ONE}, (1, 0): {1: ONE}}
    return GradedAlgebra(["1", "s"], [0, m], mult)


def torus(r):
    """Torus of rank r: exterior algebra on degree-1 generators t1..tr.

    Basis elements are the 2^r square-free monomials; products carry the
    sign of the merging permutation.
    """
    if r < 1:
        raise ValueError("torus(r) needs r >= 1")
    subsets = []
    for mask in range(1 << r):
        subsets.append(tuple(i for i in range(r) if mask & (1 << i)))
    subsets.sort(key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(subsets)}

    def name(s):
        if not s:
            return "1"
        return "".join(f"t{i + 1}" for i in s)

    def merge(s1, s2):
        """Concatenate and sort, tracking the permutation sign; None if a
        generator repeats."""
        if set(s1) & set(s2):
            return None, 0
        seq = list(s1) + list(s2)
        sign = 1
        # bubble sort, counting transpositions of odd generators
        for i in range(len(seq)):
            for j in range(len(seq) - 1 - i):
                if seq[j] > seq[j + 1]:
                    seq[j], seq[j + 1] = seq[j + 1], seq[j]
                    sign = -sign
        return tuple(seq), sign

    mult = {}
    for s1 in subsets:
        for s2 in subsets:
            merged, sign = merge(s1, s2)
            if merged is not None:
                mult[(index[s1], index[s2])] = {index[merged]: ONE * sign}
    names = [name(s) for s in subsets]
    degrees = [len(s) for s in subsets]
    return GradedAlgebra(names, degrees, mult)


def product(A, B):
    """Graded tensor product of two algebras, with Koszul signs.

    (a x b)(a' x b') = (-1)^{|b||a'|} (aa') x (bb'), and the differential
    is d(a x b) = da x b + (-1)^{|a|} a x db.
    """
    dim_b = B.dim

    def idx(i, j):
        return i * dim_b + j

    # prime the right factor's names if the two factors collide
    a_names = {A.names[i] for i in range(A.dim) if i != A.unit}
    clash = any(B.names[j] in a_names for j in range(B.dim) if j != B.unit)
    b_names = [n + "'" if clash and j != B.unit else n for j, n in enumerate(B.names)]

    names = []
    degrees = []
    for i in range(A.dim):
        for j in range(B.dim):
            if i == A.unit:
                names.append(b_names[j])
            elif j == B.unit:
                names.append(A.names[i])
            else:
                names.append(f"{A.names[i]}.{b_names[j]}")
            degrees.append(A.degrees[i] + B.degrees[j])

    mult = {}
    for (i1, i2), avec in A.mult.items():
        for (j1, j2), bvec in B.mult.items():
            sgn = koszul_sign(B.degrees[j1], A.degrees[i2])
            entry = {}
            for ka, ca in avec.items():
                for kb, cb in bvec.items():
                    entry[idx(ka, kb)] = sgn * ca * cb
            key = (idx(i1, j1), idx(i2, j2))
            if key in mult:
                for k, c in entry.items():
                    mult[key][k] = mult[key].get(k, 0) + c
            else:
                mult[key] = entry

    diff = {}
    for i in range(A.dim):
        for j in range(B.dim):
            entry = {}
            for k, c in A.diff_basis(i).items():
                entry[idx(k, j)] = entry.get(idx(k, j), 0) + c
            sgn = -ONE if A.degrees[i] % 2 else ONE
            for k, c in B.diff_basis(j).items():
                entry[idx(i, k)] = entry.get(idx(i, k), 0) + sgn * c
            entry = {k: c for k, c in entry.items() if c != 0}
            if entry:
                diff[idx(i, j)] = entry

    return GradedAlgebra(names, degrees, mult, diff, unit=idx(A.unit, B.unit))

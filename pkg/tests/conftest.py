"""Shared fixtures: the independent rank oracle and the pair corpus.

The oracle computes ranks by column elimination without pivot
normalisation, deliberately sharing no code with the package's row
reduction.  Frozen expected values in the tests and in the scenario
catalog were produced with it.
"""

import random
from fractions import Fraction

import pytest

from spherical_tduality import (
    GradedAlgebra,
    SphereBundle,
    Twist,
    cp,
    dualize,
    gauge_shift_pair,
    point,
    product,
    sphere,
    torus,
)


# -- the independent oracle -------------------------------------------------


def oracle_rank(M):
    """Rank over the rationals by column elimination."""
    if not M or not M[0]:
        return 0
    nrows, ncols = len(M), len(M[0])
    cols = [[M[i][j] for i in range(nrows)] for j in range(ncols)]
    used = [False] * nrows
    rank = 0
    for j in range(ncols):
        col = cols[j]
        piv = None
        for i in range(nrows):
            if not used[i] and col[i] != 0:
                piv = i
                break
        if piv is None:
            continue
        used[piv] = True
        rank += 1
        for j2 in range(j + 1, ncols):
            other = cols[j2]
            if other[piv] != 0:
                factor = other[piv] / col[piv]
                for i in range(nrows):
                    other[i] = other[i] - factor * col[i]
    return rank


def oracle_dims(complex_):
    """Cohomology dims per class: dim - rank(out) - rank(in)."""
    out = {}
    for d in complex_.classes():
        out[d] = (
            complex_.dim(d)
            - oracle_rank(complex_.diff(d))
            - oracle_rank(complex_.diff(complex_.prev_class(d)))
        )
    return out


def oracle_total_dim(complex_):
    """Total cohomology via the assembled block differential:
    nullity(D) - rank(D) = N - 2 rank(D)."""
    classes = complex_.classes()
    offsets = {}
    total = 0
    for d in classes:
        offsets[d] = total
        total += complex_.dim(d)
    D = [[Fraction(0)] * total for _ in range(total)]
    for d in classes:
        M = complex_.diff(d)
        nd = complex_.next_class(d)
        if nd not in offsets:
            continue
        for i, row in enumerate(M):
            for j, x in enumerate(row):
                D[offsets[nd] + i][offsets[d] + j] = x
    return total - 2 * oracle_rank(D)


# -- model builders ----------------------------------------------------------


def heisenberg():
    """Exterior algebra on t1, t2, t3 with d(t3) = t1 t2; not formal."""
    T3 = torus(3)
    return GradedAlgebra(
        T3.names, T3.degrees, T3.mult,
        {T3.index["t3"]: {T3.index["t1t2"]: 1}},
        unit=T3.unit,
    )


def hopf_bundle(n):
    base = cp(n)
    return SphereBundle(base, 1, base.gen("w"))


def hopf_twist(bundle, n):
    base = bundle.base
    wn = base.one()
    for _ in range(n):
        wn = wn * base.gen("w")
    return Twist(bundle, base.zero(), wn, n)


def random_element(rng, algebra, degree):
    """Random element of one degree with small rational coefficients."""
    pool = [Fraction(c) for c in (-2, -1, 1, 2)] + [Fraction(1, 2), Fraction(-1, 3)]
    coeffs = [Fraction(0)] * algebra.dim
    for i in algebra.basis_by_degree.get(degree, []):
        if rng.random() < 0.7:
            coeffs[i] = rng.choice(pool)
    from spherical_tduality import Element
    return Element(algebra, coeffs)


def random_closed_element(rng, algebra, degree):
    """Random closed element: a combination of a kernel basis of d."""
    from spherical_tduality import Element, complex_of
    C = complex_of(algebra)
    if degree not in C.dims:
        return algebra.zero()
    kernel = C.cocycles(degree)
    pool = [Fraction(c) for c in (-2, -1, 0, 1, 2)]
    coeffs = [Fraction(0)] * algebra.dim
    for vec in kernel:
        c = rng.choice(pool)
        if c:
            for i, x in zip(C.indices[degree], vec):
                coeffs[i] += c * x
    return Element(algebra, coeffs)


# -- corpus ------------------------------------------------------------------


def build_corpus():
    """At least 12 verified T-dual pairs, including gauge-shifted ones."""
    rng = random.Random(52901)
    pairs = []

    def add(tag, pair):
        pairs.append((tag, pair))

    for n in (1, 2, 3):
        E = hopf_bundle(n)
        add(f"hopf_n{n}", dualize(E, hopf_twist(E, n), 1))

    for base_name, base, n, k in (
        ("cp1", cp(1), 1, 1),
        ("cp2", cp(2), 1, 2),
        ("torus2", torus(2), 2, 1),
    ):
        E = SphereBundle(base, 2 * n - 1, base.zero())
        add(f"trivial_{base_name}_{n}{k}", dualize(E, Twist.zero(E, k), 1))

    b2 = cp(2)
    E5 = SphereBundle(b2, 1, b2.gen("w"))
    w2 = b2.gen("w") * b2.gen("w")
    add("s5_cp2", dualize(E5, Twist(E5, b2.zero(), w2, 2), 1))

    M = product(cp(1), cp(1))
    om = M.gen("w") + M.gen("w'")
    Ek = SphereBundle(M, 1, om)
    kaehler_twist = Twist(Ek, M.zero(), om * om, 2)
    add("kaehler", dualize(Ek, kaehler_twist, 1))
    add("kaehler_lam_third", dualize(Ek, kaehler_twist, Fraction(1, 3)))

    heis = heisenberg()
    Eh = SphereBundle(heis, 1, heis.gen("t1t2"))
    add("heisenberg", dualize(Eh, Twist(Eh, heis.gen("t1t2t3"), heis.gen("t1t2"), 1), 1))

    E1 = hopf_bundle(1)
    add("hopf_lam2", dualize(E1, hopf_twist(E1, 1), 2))

    bspec = cp(2)
    Espec = SphereBundle(bspec, 1, bspec.gen("w"))
    add("spectral", dualize(Espec, Twist.zero(Espec, 1), 1))

    T4 = torus(4)
    E4 = SphereBundle(T4, 1, T4.gen("t1t2"))
    pair_t4 = dualize(E4, Twist(E4, T4.zero(), T4.gen("t1t3"), 1), 1)
    add("t4", pair_t4)

    # randomized gauge shifts; the t4 one turns on a nonzero pulled-back
    # twist component
    def random_shift(tag, pair):
        want = 2 * (pair.n + pair.k) - 2
        B = random_element(rng, pair.left.total, want)
        Bhat = random_element(rng, pair.right.total, want)
        add(f"{tag}_shift", gauge_shift_pair(pair, B, Bhat))

    random_shift("trivial_cp1_11", pairs[3][1])
    random_shift("kaehler", pairs[7][1])
    random_shift("heisenberg", pairs[9][1])
    B4 = E4.element(T4.zero(), T4.gen("t3"))
    B4h = pair_t4.right.element(T4.zero(), T4.gen("t4"))
    add("t4_shift", gauge_shift_pair(pair_t4, B4, B4h))

    return pairs


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def model_zoo():
    """Every algebra the suite audits: bases, bundle models, correspondences."""
    zoo = [
        ("point", point()),
        ("cp1", cp(1)),
        ("cp2", cp(2)),
        ("cp3", cp(3)),
        ("sphere3", sphere(3)),
        ("sphere4", sphere(4)),
        ("torus2", torus(2)),
        ("torus3", torus(3)),
        ("cp1xcp1", product(cp(1), cp(1))),
        ("cp2xtorus2", product(cp(2), torus(2))),
        ("heisenberg", heisenberg()),
    ]
    for tag, pair in build_corpus():
        zoo.append((f"{tag}:left", pair.left.total))
        zoo.append((f"{tag}:right", pair.right.total))
        zoo.append((f"{tag}:corr", pair.corr.total))
    # keep one representative per algebra object
    seen = set()
    unique = []
    for tag, A in zoo:
        if id(A) not in seen:
            seen.add(id(A))
            unique.append((tag, A))
    return unique

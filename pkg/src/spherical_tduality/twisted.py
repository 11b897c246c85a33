"""Twisted differentials d + H, gauge maps e^B, and the cup-by-[H] page.

For a closed odd twist of degree 2m+1 the operator d^H = d + H only
respects degree modulo 2m, so twisted complexes are cyclically graded.
Everything is materialised as explicit block matrices per residue class;
desk-scale models make the (d^H)^2 = 0 audit and rank computations cheap.
"""

from . import linalg
from .complexes import ChainMap, complex_of, cyclic_complex_from_operator
from .bundles import ValidationError
from .linalg import ZERO


class TwistedComplex:
    """The complex (Omega, d + H) of an algebra, graded modulo deg(H) - 1."""

    def __init__(self, algebra, twist, modulus=None):
        if twist.algebra is not algebra:
            raise ValidationError("twist must live in the given algebra")
        if twist.is_zero():
            if modulus is None:
                raise ValidationError("a zero twist needs an explicit modulus")
        else:
            deg = twist.degree()  # raises on inhomogeneous input
            if deg % 2 == 0:
                raise ValidationError(f"twist must have odd degree, got {deg}")
            inferred = deg - 1
            if modulus is None:
                modulus = inferred
            elif modulus != inferred:
                raise ValidationError(
                    f"modulus {modulus} does not match twist degree {deg}"
                )
        if not twist.is_closed():
            raise ValidationError("twist must be closed")
        if modulus % 2:
            raise ValidationError(f"modulus must be even, got {modulus}")
        self.algebra = algebra
        self.twist = twist
        self.modulus = modulus

        def column(j):
            out = dict(algebra.diff_basis(j))
            for i in twist.support():
                for k, c in algebra.mult_basis(i, j).items():
                    out[k] = out.get(k, ZERO) + twist.coeffs[i] * c
            return {k: c for k, c in out.items() if c != 0}

        # the Complex constructor re-checks (d^H)^2 = 0 as a matrix identity
        self.complex = cyclic_complex_from_operator(algebra, column, modulus)

    def classes(self):
        return self.complex.classes()

    def dims(self):
        """Twisted cohomology dimension per residue class, as a tuple."""
        table = self.complex.cohomology_dims()
        return tuple(table[r] for r in self.classes())


def build_twisted(algebra, twist, modulus=None):
    """Assemble (Omega, d + H); rejects non-closed or even-degree twists."""
    return TwistedComplex(algebra, twist, modulus=modulus)


def twisted_dims(T):
    return T.dims()


def gauge_map(T, T2, B):
    """The gauge isomorphism e^B: (Omega, d^H) -> (Omega, d^H') for H - H' = dB.

    B must have even degrees, all divisible by the modulus so that wedging
    by e^B preserves residue classes.  The result is returned as a verified
    invertible chain map.
    """
    if T.algebra is not T2.algebra:
        raise ValidationError("gauge map needs twists on the same algebra")
    if T.modulus != T2.modulus:
        raise ValidationError("gauge map needs matching moduli")
    if B.algebra is not T.algebra:
        raise ValidationError("gauge form must live in the same algebra")
    for deg in B.homogeneous_components():
        if deg % 2 or deg == 0:
            raise ValidationError(f"gauge form must have positive even degrees, got {deg}")
        if T.modulus and deg % T.modulus:
            raise ValidationError(
                f"gauge form degree {deg} not divisible by modulus {T.modulus}"
            )
    if not (T.twist - T2.twist - B.d()).is_zero():
        raise ValidationError("gauge condition H - H' = dB fails")

    eB = B.exp()
    blocks = {}
    for r in T.classes():
        cols = []
        for j in T.complex.indices.get(r, []):
            image = eB * T.algebra.basis_element(j)
            cols.append(T2.complex.coordinates(image, r))
        blocks[r] = linalg.from_columns(cols, T2.complex.dim(r))
    f = ChainMap(T.complex, T2.complex, blocks, shift=0)
    bad = f.verify()
    if bad:
        raise ValidationError(f"gauge map fails the chain-map identity at {bad}")
    for r in T.classes():
        if linalg.rank(f.block(r)) != T.complex.dim(r):
            raise ValidationError(f"gauge map is not invertible in class {r}")
    return f


class CupOperator:
    """Cup product with a closed odd class on de Rham cohomology.

    This is the differential on the first page of the spectral sequence
    computing the twisted cohomology; its own cohomology is the second
    page.  ``matrices[j]`` maps H^j to H^{j + deg}; ``page1`` holds the de
    Rham dimensions and ``page2`` the dimensions of ker/im.
    """

    def __init__(self, matrices, page1, page2, degree, complex_):
        self.matrices = matrices
        self.page1 = page1
        self.page2 = page2
        self.degree = degree
        self.complex = complex_

    def fold(self, table, modulus):
        if modulus == 0:
            return (sum(table.values()),)
        out = [0] * modulus
        for d, n in table.items():
            out[d % modulus] += n
        return tuple(out)

    def page1_folded(self, modulus):
        return self.fold(self.page1, modulus)

    def page2_folded(self, modulus):
        return self.fold(self.page2, modulus)

    def total_page1(self):
        return sum(self.page1.values())

    def total_page2(self):
        return sum(self.page2.values())

    def degenerate(self):
        """True when the operator vanishes, so page 2 equals page 1."""
        return all(linalg.is_zero_matrix(M) for M in self.matrices.values())


def cup_operator(algebra, twist):
    """The operator [H] cup - on the integer-graded cohomology of the algebra.

    Returns per-degree matrices on chosen cohomology representatives plus
    the dimensions of its kernel-modulo-image (the second page).
    """
    if not twist.is_closed():
        raise ValidationError("cup operator needs a closed twist")
    h = 0 if twist.is_zero() else twist.degree()
    C = complex_of(algebra)
    page1 = C.cohomology_dims()
    degrees = C.classes()
    reps = {d: C.representatives(d)[1] for d in degrees}
    matrices = {}
    for d in degrees:
        t = d + h
        h_tgt = page1.get(t, 0) if t in page1 else 0
        cols = []
        for rep in reps[d]:
            x = C.element(d, rep)
            image = twist * x
            if t in degrees:
                cols.append(C.express(t, C.coordinates(image, t)))
            else:
                assert image.is_zero()
                cols.append([])
        matrices[d] = (
            linalg.from_columns(cols, h_tgt) if cols else linalg.zeros(h_tgt, 0)
        )
    page2 = {}
    for d in degrees:
        below = matrices.get(d - h)
        r_in = linalg.rank(below) if below is not None and h > 0 else 0
        z = page1[d] - linalg.rank(matrices[d])
        page2[d] = z - r_in
    return CupOperator(matrices, page1, page2, h, C)

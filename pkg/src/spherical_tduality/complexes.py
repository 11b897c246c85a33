"""Finite cochain complexes and chain maps, with exact cohomology.

Complexes are either integer-graded or cyclically graded modulo an even
modulus (modulus 0 meaning a single ungraded class).  Differentials are
one exact rational matrix per (residue) degree, columns indexed by the
source, rows by the target.
"""

from . import linalg
from .linalg import ZERO, ONE


class Complex:
    """A finite cochain complex.

    Args:
        dims: ``{degree: dimension}``; absent degrees are zero.
        diffs: ``{degree: matrix}`` mapping degree to degree+1 (cyclically
            for cyclic grading); absent matrices are zero.
        grading: "integer" or "cyclic".
        modulus: even modulus for cyclic grading (0 = single class).
        labels: optional ``{degree: [name, ...]}`` for reporting.
    """

    def __init__(self, dims, diffs, grading="integer", modulus=None, labels=None):
        if grading not in ("integer", "cyclic"):
            raise ValueError(f"unknown grading {grading!r}")
        if grading == "cyclic":
            if modulus is None or modulus < 0:
                raise ValueError("cyclic grading needs a modulus >= 0")
        self.grading = grading
        self.modulus = modulus
        self.dims = {d: n for d, n in dims.items() if n}
        self.diffs = {}
        self.labels = labels or {}
        for d, M in diffs.items():
            rows, cols = linalg.shape(M)
            if rows and (cols != self.dim(d) or rows != self.dim(self.next_class(d))):
                raise ValueError(f"differential at degree {d} has shape {linalg.shape(M)}")
            if not linalg.is_zero_matrix(M):
                self.diffs[d] = M
        bad = self.check_d_squared()
        if bad:
            raise ValueError(f"d*d != 0 at degrees {bad}")

    # -- grading bookkeeping ----------------------------------------------

    def classes(self):
        if self.grading == "integer":
            if not self.dims:
                return []
            lo, hi = min(self.dims), max(self.dims)
            return list(range(lo, hi + 1))
        if self.modulus == 0:
            return [0]
        return list(range(self.modulus))

    def next_class(self, d):
        if self.grading == "integer":
            return d + 1
        if self.modulus == 0:
            return 0
        return (d + 1) % self.modulus

    def prev_class(self, d):
        if self.grading == "integer":
            return d - 1
        if self.modulus == 0:
            return 0
        return (d - 1) % self.modulus

    def dim(self, d):
        return self.dims.get(d, 0)

    def total_dim(self):
        return sum(self.dims.values())

    def diff(self, d):
        M = self.diffs.get(d)
        if M is None:
            return linalg.zeros(self.dim(self.next_class(d)), self.dim(d))
        return M

    # -- exactness and cohomology ------------------------------------------

    def check_d_squared(self):
        bad = []
        for d in self.classes():
            n = self.next_class(d)
            prod = linalg.mat_mul(self.diff(n), self.diff(d), cols=self.dim(d))
            if not linalg.is_zero_matrix(prod):
                bad.append(d)
        return bad

    def cohomology_dims(self):
        """``{degree: dim H}`` per (residue) degree, zero entries included."""
        out = {}
        for d in self.classes():
            n = self.dim(d)
            z = n - linalg.rank(self.diff(d))
            b = linalg.rank(self.diff(self.prev_class(d)))
            out[d] = z - b
        return out

    def cocycles(self, d):
        return linalg.nullspace(self.diff(d), self.dim(d))

    def representatives(self, d):
        """Coboundary basis and cohomology representatives in degree d.

        Returns ``(image_cols, rep_cols)``: columns spanning the image of
        the incoming differential, and cocycle columns completing them to a
        basis of the kernel.  Chosen by exact row reduction, deterministic.
        """
        n = self.dim(d)
        image_candidates = linalg.columns(
            self.diff(self.prev_class(d)), self.dim(self.prev_class(d))
        )
        ech = linalg.Echelon()
        image = [v for v in image_candidates if ech.insert(v)]
        reps = [v for v in self.cocycles(d) if ech.insert(v)]
        assert len(reps) == (n - linalg.rank(self.diff(d))) - len(image)
        return image, reps

    def express(self, d, vec):
        """Coordinates of the class of a cocycle in the representative basis."""
        image, reps = self.representatives(d)
        cols = image + reps
        if not cols:
            assert all(x == 0 for x in vec), "nonzero cocycle in a zero cohomology"
            return []
        A = linalg.from_columns(cols, self.dim(d))
        x = linalg.solve(A, list(vec), len(cols))
        assert x is not None, "vector is not a cocycle of this degree"
        return x[len(image):]


class ChainMap:
    """A degree-shifting map of complexes commuting with the differentials.

    The commutation sign is fixed to +: d_target o f = f o d_source.  Blocks
    map degree d of the source to degree d+shift of the target.
    """

    def __init__(self, source, target, blocks, shift=0):
        if source.grading != target.grading:
            raise ValueError("chain map needs matching gradings")
        if source.grading == "cyclic" and source.modulus != target.modulus:
            raise ValueError("chain map needs matching moduli")
        self.source = source
        self.target = target
        self.shift = shift
        self.blocks = {}
        for d, M in blocks.items():
            rows, cols = linalg.shape(M)
            if rows and (cols != source.dim(d) or rows != target.dim(self.target_class(d))):
                raise ValueError(f"block at degree {d} has shape {linalg.shape(M)}")
            if not linalg.is_zero_matrix(M):
                self.blocks[d] = M

    def target_class(self, d):
        t = d + self.shift
        if self.source.grading == "cyclic" and self.source.modulus:
            t %= self.source.modulus
        return t

    def block(self, d):
        M = self.blocks.get(d)
        if M is None:
            return linalg.zeros(self.target.dim(self.target_class(d)), self.source.dim(d))
        return M

    def verify(self):
        """Degrees where d_target o f != f o d_source (empty = chain map)."""
        bad = []
        for d in self.source.classes():
            nd = self.source.next_class(d)
            lhs = linalg.mat_mul(
                self.target.diff(self.target_class(d)), self.block(d),
                cols=self.source.dim(d),
            )
            rhs = linalg.mat_mul(self.block(nd), self.source.diff(d), cols=self.source.dim(d))
            if not linalg.mat_eq(lhs, rhs):
                bad.append(d)
        return bad

    def compose(self, other):
        """self o other."""
        if other.target is not self.source:
            raise ValueError("composition needs other.target == self.source")
        blocks = {}
        for d in other.source.classes():
            mid = other.target_class(d)
            blocks[d] = linalg.mat_mul(
                self.block(mid), other.block(d), cols=other.source.dim(d)
            )
        return ChainMap(other.source, self.target, blocks, shift=self.shift + other.shift)

    @staticmethod
    def identity(C):
        return ChainMap(C, C, {d: linalg.identity(C.dim(d)) for d in C.classes()})


class InducedMap:
    """The map a chain map induces on cohomology, degree by degree."""

    def __init__(self, matrices, source_dims, target_dims, shift):
        self.matrices = matrices
        self.source_dims = source_dims
        self.target_dims = target_dims
        self.shift = shift
        self.injective = {}
        self.surjective = {}
        for d, M in matrices.items():
            r = linalg.rank(M)
            self.injective[d] = r == source_dims[d]
            self.surjective[d] = r == target_dims[d]

    def is_isomorphism(self, d):
        return self.injective[d] and self.surjective[d]

    def all_isomorphisms(self):
        return all(self.is_isomorphism(d) for d in self.matrices)


def induced_map_on_cohomology(f):
    """Matrices of the induced map on cohomology, plus iso flags.

    The chain-map identity is re-verified first; representatives are chosen
    by exact row reduction, and the result is independent of that choice by
    the chain-map property.
    """
    bad = f.verify()
    if bad:
        raise ValueError(f"not a chain map at degrees {bad}")
    matrices = {}
    source_dims = {}
    target_dims = {}
    tgt_cohomology = f.target.cohomology_dims()
    for d in f.source.classes():
        t = f.target_class(d)
        _, reps = f.source.representatives(d)
        h_src = len(reps)
        h_tgt = tgt_cohomology.get(t, 0)
        cols = [f.target.express(t, linalg.mat_vec(f.block(d), rep)) for rep in reps]
        matrices[d] = linalg.from_columns(cols, h_tgt) if h_src else linalg.zeros(h_tgt, 0)
        source_dims[d] = h_src
        target_dims[d] = h_tgt
    return InducedMap(matrices, source_dims, target_dims, f.shift)


# -- complexes attached to graded algebras ---------------------------------


class AlgebraComplex(Complex):
    """Complex built on an algebra's basis; remembers coordinates."""

    def __init__(self, algebra, dims, diffs, indices, grading="integer",
                 modulus=None, labels=None):
        super().__init__(dims, diffs, grading=grading, modulus=modulus, labels=labels)
        self.algebra = algebra
        self.indices = indices  # {class: [basis index, ...]}

    def coordinates(self, x, klass):
        """Coefficient vector of an element in the given (residue) class.

        Components of the element outside the class must vanish.
        """
        idx = self.indices.get(klass, [])
        inside = set(idx)
        leftovers = [i for i in x.support() if i not in inside]
        if leftovers:
            raise ValueError(f"element has support outside class {klass}")
        return [x.coeffs[i] for i in idx]

    def element(self, klass, vec):
        coeffs = [ZERO] * self.algebra.dim
        for i, c in zip(self.indices.get(klass, []), vec):
            coeffs[i] = c
        from .algebra import Element
        return Element(self.algebra, coeffs)


def complex_of(algebra):
    """The integer-graded cochain complex of a graded algebra."""
    indices = {
        d: list(algebra.basis_by_degree.get(d, []))
        for d in range(algebra.top_degree + 1)
    }
    pos = {}
    for d, idx in indices.items():
        for c, i in enumerate(idx):
            pos[i] = (d, c)
    dims = {d: len(idx) for d, idx in indices.items()}
    diffs = {}
    for d, idx in indices.items():
        M = linalg.zeros(len(indices.get(d + 1, [])), len(idx))
        for col, j in enumerate(idx):
            for k, c in algebra.diff_basis(j).items():
                kd, kr = pos[k]
                assert kd == d + 1, "differential does not raise degree by one"
                M[kr][col] = c
        diffs[d] = M
    labels = {d: [algebra.names[i] for i in idx] for d, idx in indices.items()}
    return AlgebraComplex(algebra, dims, diffs, indices, labels=labels)


def cyclic_complex_from_operator(algebra, column_of, modulus):
    """Cyclic complex on an algebra's basis from a degree-1 (mod modulus)
    operator given by its sparse columns ``column_of(j) -> {k: coeff}``."""
    classes = [0] if modulus == 0 else list(range(modulus))
    indices = {r: [] for r in classes}
    for i, d in enumerate(algebra.degrees):
        r = 0 if modulus == 0 else d % modulus
        indices[r].append(i)
    pos = {}
    for r, idx in indices.items():
        for c, i in enumerate(idx):
            pos[i] = (r, c)
    dims = {r: len(idx) for r, idx in indices.items()}
    diffs = {}
    for r, idx in indices.items():
        nr = r if modulus == 0 else (r + 1) % modulus
        M = linalg.zeros(len(indices[nr]), len(idx))
        for col, j in enumerate(idx):
            for k, c in column_of(j).items():
                kr, krow = pos[k]
                assert kr == nr, "operator is not degree 1 modulo the modulus"
                M[krow][col] = c
        diffs[r] = M
    labels = {r: [algebra.names[i] for i in idx] for r, idx in indices.items()}
    return AlgebraComplex(
        algebra, dims, diffs, indices, grading="cyclic", modulus=modulus, labels=labels
    )

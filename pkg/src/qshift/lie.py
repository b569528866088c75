"""Classical Lie algebras gl_N, o_N and sp_N realised inside gl_N.

Every algebra is described by matrices F_ij = E_ij - theta_ij E_{j*i*} where
``i -> i*`` is the involution of the bilinear form (``i' = N - i + 1`` for the
split presentations, the identity for the canonical skew-symmetric
presentation of o_2n) and theta_ij = eps_i eps_j is the symplectic sign
(identically 1 in the orthogonal cases).  gl_N has no form and F_ij = E_ij.

The generators F_ij and F_{j*i*} are proportional, so one representative per
pair is kept: ``(i, j)`` is canonical iff ``(i, j) <= (j*, i*)``
lexicographically and F_ij is not identically zero.  Canonical generators are
numbered in lexicographic order of ``(i, j)``; that numbering is the PBW
order used everywhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from itertools import product

from . import caps

GL = "glN"
O_SPLIT = "oN-split"
SP_SPLIT = "spN-split"
O_CANON = "o2n-canonical"
FAMILIES = (GL, O_SPLIT, SP_SPLIT, O_CANON)


def _reduce(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LieAlgebraSpec:
    """Generators, structure constants and form data of one classical algebra.

    Use :func:`build_spec` rather than instantiating directly; specs are
    cached so that identical ``(family, N)`` share memo tables.
    """

    def __init__(self, family: str, N: int):
        self.family = family
        self.N = N
        self.n = N // 2
        self.letter = "E" if family == GL else "F"

        gens = []
        for i, j in product(range(1, N + 1), repeat=2):
            if family == GL:
                gens.append((i, j))
                continue
            pair = (self.conj(j), self.conj(i))
            if (i, j) > pair:
                continue
            if (i, j) == pair and self.is_orthogonal:
                continue  # F_{i,i*} = 0
            gens.append((i, j))
        self.generators: tuple[tuple[int, int], ...] = tuple(gens)
        self.index = {g: k for k, g in enumerate(gens)}
        self._bracket = [[self._compute_bracket(a, b) for b in range(self.dim)] for a in range(self.dim)]
        self._deriv = tuple(self._compute_deriv(g) for g in range(self.dim))
        # memo tables for the PBW engine (see uea.py / quasi.py)
        self._lmul_cache: dict = {}
        self._mono_cache: dict = {}
        self._lmat_cache: dict = {}

    # -- form data -------------------------------------------------------
    @property
    def is_orthogonal(self) -> bool:
        return self.family in (O_SPLIT, O_CANON)

    @property
    def is_symplectic(self) -> bool:
        return self.family == SP_SPLIT

    @property
    def has_form(self) -> bool:
        return self.family != GL

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def omega(self) -> int:
        """Brauer parameter: N for orthogonal, -2n for symplectic."""
        return -2 * self.n if self.is_symplectic else self.N

    def conj(self, i: int) -> int:
        if self.family in (O_SPLIT, SP_SPLIT):
            return self.N + 1 - i
        if self.family == O_CANON:
            return i
        raise ValueError("gl_N carries no bilinear form")

    def eps(self, i: int) -> int:
        if self.is_symplectic:
            return 1 if i <= self.n else -1
        return 1

    def theta(self, i: int, j: int) -> int:
        return self.eps(i) * self.eps(j)

    # -- generators ------------------------------------------------------
    def entry(self, i: int, j: int):
        """F_ij as ``(coefficient, generator id)``, or ``None`` when F_ij = 0."""
        if self.family == GL:
            return 1, self.index[(i, j)]
        k = self.index.get((i, j))
        if k is not None:
            return 1, k
        pair = (self.conj(j), self.conj(i))
        k = self.index.get(pair)
        if k is None:
            return None
        return -self.theta(i, j), k

    def gl_matrix(self, g: int) -> dict[tuple[int, int], int]:
        """The gl_N matrix of canonical generator ``g``."""
        i, j = self.generators[g]
        m = {(i, j): 1}
        if self.family != GL:
            pair = (self.conj(j), self.conj(i))
            m[pair] = m.get(pair, 0) - self.theta(i, j)
        return {k: v for k, v in m.items() if v}

    def decompose(self, mat: dict[tuple[int, int], object]) -> dict[int, object]:
        """Express a matrix lying in the algebra in canonical generators.

        Raises ``ValueError`` if the matrix is not in the span (closure check).
        """
        coeffs = {}
        for g, (i, j) in enumerate(self.generators):
            c = mat.get((i, j), 0)
            if c:
                coeffs[g] = _reduce(Fraction(c) / self.gl_matrix(g)[(i, j)])
        rebuilt: dict = {}
        for g, c in coeffs.items():
            for k, v in self.gl_matrix(g).items():
                rebuilt[k] = rebuilt.get(k, 0) + c * v
        for k in set(rebuilt) | set(mat):
            if rebuilt.get(k, 0) != mat.get(k, 0):
                raise ValueError(f"matrix is not in {self.name}: mismatch at {k}")
        return coeffs

    def _compute_bracket(self, a: int, b: int):
        x, y = self.gl_matrix(a), self.gl_matrix(b)
        comm: dict = {}
        for (i, j), u in x.items():
            for (k, l), v in y.items():
                if j == k:
                    comm[(i, l)] = comm.get((i, l), 0) + u * v
                if l == i:
                    comm[(k, j)] = comm.get((k, j), 0) - u * v
        comm = {k: v for k, v in comm.items() if v}
        return tuple(sorted(self.decompose(comm).items()))

    def bracket(self, a: int, b: int) -> tuple[tuple[int, object], ...]:
        """[F_a, F_b] as a tuple of ``(generator id, coefficient)``."""
        return self._bracket[a][b]

    def _compute_deriv(self, g: int):
        # value of d_ij on the generator F_kl:
        #   d_kj d_il - theta_kl d_{k i*} d_{j* l}
        k, l = self.generators[g]
        vals = {(l, k): 1}
        if self.family != GL:
            pos = (self.conj(k), self.conj(l))
            vals[pos] = vals.get(pos, 0) - self.theta(k, l)
        return tuple(sorted((ij, v) for ij, v in vals.items() if v))

    def deriv(self, g: int) -> tuple[tuple[tuple[int, int], int], ...]:
        """Nonzero scalars ``d_ij F_g`` as ``((i, j), value)`` pairs."""
        return self._deriv[g]

    # -- display ---------------------------------------------------------
    def gen_name(self, g: int) -> str:
        i, j = self.generators[g]
        return f"{self.letter}[{i},{j}]"

    @property
    def name(self) -> str:
        base = {GL: "gl", O_SPLIT: "o", SP_SPLIT: "sp", O_CANON: "o"}[self.family]
        suffix = " (canonical)" if self.family == O_CANON else ""
        return f"{base}_{self.N}{suffix}"

    def __repr__(self):
        return f"LieAlgebraSpec({self.family!r}, {self.N})"

    def __reduce__(self):
        return build_spec, (self.family, self.N)


@cache
def build_spec(family: str, N: int) -> LieAlgebraSpec:
    """Construct (and cache) the spec of ``family`` at matrix size ``N``."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    if family in (SP_SPLIT, O_CANON) and N % 2:
        raise ValueError(f"{family} requires even N, got N={N}")
    caps.check_n(N)
    return LieAlgebraSpec(family, N)


def jacobi_violations(spec: LieAlgebraSpec) -> list[tuple[int, int, int]]:
    """All generator triples violating the Jacobi identity (empty when sound)."""

    def br(x: dict, b: int) -> dict:
        out: dict = {}
        for a, c in x.items():
            for g, v in spec.bracket(a, b):
                out[g] = out.get(g, 0) + c * v
        return {k: v for k, v in out.items() if v}

    bad = []
    d = spec.dim
    for a in range(d):
        for b in range(d):
            ab = br({a: 1}, b)
            for c in range(d):
                total: dict = {}
                for part in (br(ab, c), br(br({b: 1}, c), a), br(br({c: 1}, a), b)):
                    for k, v in part.items():
                        total[k] = total.get(k, 0) + v
                if any(total.values()):
                    bad.append((a, b, c))
    return bad

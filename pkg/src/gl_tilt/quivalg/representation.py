from typing import Dict, List, Mapping, Optional, Sequence

from .. import exactla as la
from ..errors import DimensionMismatchError
from ..exactla import Matrix
from .algebra import AlgebraPresentation
from .quiver import Path, relation_endpoints


class Representation:
    """A finite-dimensional representation: a space per vertex, a matrix per arrow.

    The matrix of an arrow ``a: s -> t`` has shape ``(dims[t], dims[s])``; missing
    arrows default to zero.
    """

    def __init__(
        self,
        presentation: AlgebraPresentation,
        dims: Mapping[str, int],
        maps: Optional[Mapping[str, Matrix]] = None,
        check: bool = True,
    ):
        self.presentation = presentation
        self.K = presentation.field.domain
        quiver = presentation.quiver
        unknown = set(dims) - set(quiver.vertices)
        if unknown:
            raise DimensionMismatchError(f"Dimensions given for unknown vertices {sorted(unknown)}")
        self.dims: Dict[str, int] = {v: int(dims.get(v, 0)) for v in quiver.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise DimensionMismatchError("Vertex dimensions must be non-negative")
        maps = dict(maps or {})
        self.maps: Dict[str, Matrix] = {}
        for a in quiver.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            m = maps.pop(a.label, None)
            if m is None:
                m = la.zeros(*shape, self.K)
            if m.shape != shape:
                raise DimensionMismatchError(f"Arrow {a.label} needs a {shape} matrix, got {m.shape}")
            self.maps[a.label] = m
        if maps:
            raise DimensionMismatchError(f"Matrices given for unknown arrows {sorted(maps)}")
        if check:
            self.check_relations()

    @property
    def dimension_vector(self) -> Dict[str, int]:
        return dict(self.dims)

    @property
    def total_dimension(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dimension == 0

    def path_matrix(self, path: Path) -> Matrix:
        m = la.identity(self.dims[path.source], self.K)
        for label in path.arrows:
            m = la.mul(self.maps[label], m)
        return m

    def check_relations(self):
        """Raise if some relation does not act as zero."""
        element = self.presentation.field.element
        for rel in self.presentation.relations:
            s, t = relation_endpoints(rel)
            total = la.zeros(self.dims[t], self.dims[s], self.K)
            for c, p in rel:
                total = la.add(total, la.scale(self.path_matrix(p), element(c)))
            if not la.is_zero(total):
                raise DimensionMismatchError(f"Representation violates relation {[(str(c), str(p)) for c, p in rel]}")

    def dual(self) -> "Representation":
        """The transpose-dual, a representation of the opposite presentation."""
        opposite = self.presentation.opposite
        return Representation(opposite, self.dims, {k: m.transpose() for k, m in self.maps.items()}, check=False)

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"


class RepMorphism:
    """Vertexwise matrices ``components[v]: source_v -> target_v`` commuting with arrows."""

    def __init__(
        self,
        source: Representation,
        target: Representation,
        components: Optional[Mapping[str, Matrix]] = None,
        check: bool = True,
    ):
        if source.presentation is not target.presentation:
            raise DimensionMismatchError("Morphism between representations of different presentations")
        self.source = source
        self.target = target
        K = source.K
        components = dict(components or {})
        self.components: Dict[str, Matrix] = {}
        for v in source.presentation.quiver.vertices:
            shape = (target.dims[v], source.dims[v])
            m = components.get(v)
            if m is None:
                m = la.zeros(*shape, K)
            if m.shape != shape:
                raise DimensionMismatchError(f"Component at {v} needs shape {shape}, got {m.shape}")
            self.components[v] = m
        if check and not self.commutes():
            raise DimensionMismatchError("Components do not commute with the arrows")

    def commutes(self) -> bool:
        for a in self.source.presentation.quiver.arrows:
            lhs = la.mul(self.target.maps[a.label], self.components[a.source])
            rhs = la.mul(self.components[a.target], self.source.maps[a.label])
            if not la.equal(lhs, rhs):
                return False
        return True

    def compose(self, other: "RepMorphism") -> "RepMorphism":
        """self after other."""
        return RepMorphism(
            other.source,
            self.target,
            {v: la.mul(self.components[v], other.components[v]) for v in self.components},
            check=False,
        )

    def is_mono(self) -> bool:
        return all(la.rank(m) == m.shape[1] for m in self.components.values())

    def is_epi(self) -> bool:
        return all(la.rank(m) == m.shape[0] for m in self.components.values())


def identity_morphism(m: Representation) -> RepMorphism:
    return RepMorphism(m, m, {v: la.identity(d, m.K) for v, d in m.dims.items()}, check=False)


def _check_same(m: Representation, n: Representation):
    if m.presentation is not n.presentation:
        raise DimensionMismatchError("Representations belong to different presentations")


def hom_space(m: Representation, n: Representation) -> List[RepMorphism]:
    """Basis of Hom(m, n) as the joint solution space of the arrow constraints.

    The unknowns are the entries of all components, vertex by vertex in row-major order.

    Raises:
        DimensionMismatchError: If m and n are representations of different presentations
    """
    _check_same(m, n)
    K = m.K
    vertices = m.presentation.quiver.vertices
    offsets, total = {}, 0
    for v in vertices:
        offsets[v] = total
        total += n.dims[v] * m.dims[v]

    pairs = []
    for a in m.presentation.quiver.arrows:
        s, t = a.source, a.target
        na, ma = la.entries(n.maps[a.label]), la.entries(m.maps[a.label])
        rows_out, cols_out = n.dims[t], m.dims[s]
        left = [[K.zero] * total for _ in range(rows_out * cols_out)]
        right = [[K.zero] * total for _ in range(rows_out * cols_out)]
        # (N(a) f_s)[i, j] = sum_k N(a)[i, k] f_s[k, j]
        for i in range(rows_out):
            for j in range(cols_out):
                for k in range(n.dims[s]):
                    left[i * cols_out + j][offsets[s] + k * m.dims[s] + j] += na[i][k]
                # (f_t M(a))[i, j] = sum_k f_t[i, k] M(a)[k, j]
                for k in range(m.dims[t]):
                    right[i * cols_out + j][offsets[t] + i * m.dims[t] + k] += ma[k][j]
        size = rows_out * cols_out
        pairs.append((la.matrix(left, K, (size, total)), la.matrix(right, K, (size, total))))

    basis = []
    for vec in la.equalizer_basis(pairs, total, K):
        comps = {}
        for v in vertices:
            r, c = n.dims[v], m.dims[v]
            chunk = vec[offsets[v] : offsets[v] + r * c]
            comps[v] = la.matrix([chunk[i * c : (i + 1) * c] for i in range(r)], K, (r, c))
        basis.append(RepMorphism(m, n, comps, check=False))
    return basis


def hom_dim(m: Representation, n: Representation) -> int:
    return len(hom_space(m, n))


def direct_sum(summands: Sequence[Representation]) -> Representation:
    if not summands:
        raise DimensionMismatchError("Direct sum of nothing needs a presentation")
    presentation = summands[0].presentation
    for s in summands:
        _check_same(summands[0], s)
    K = summands[0].K
    dims = {v: sum(s.dims[v] for s in summands) for v in presentation.quiver.vertices}
    maps = {a.label: la.block_diag([s.maps[a.label] for s in summands], K) for a in presentation.quiver.arrows}
    return Representation(presentation, dims, maps, check=False)


def subrepresentation(m: Representation, bases: Mapping[str, Matrix]) -> Representation:
    """The representation on column spaces ``bases[v]`` of m, assumed closed under the arrows."""
    maps = {}
    for a in m.presentation.quiver.arrows:
        image = la.mul(m.maps[a.label], bases[a.source])
        coords = la.solve_matrix(bases[a.target], image)
        if coords is None:
            raise DimensionMismatchError(f"Subspace is not closed under arrow {a.label}")
        maps[a.label] = coords
    return Representation(m.presentation, {v: b.shape[1] for v, b in bases.items()}, maps, check=False)


def kernel(f: RepMorphism):
    """The kernel of f with its inclusion into f.source."""
    bases = {v: la.kernel_matrix(c) for v, c in f.components.items()}
    ker = subrepresentation(f.source, bases)
    return ker, RepMorphism(ker, f.source, bases, check=False)


def cokernel(f: RepMorphism):
    """The cokernel of f with its projection from f.target.

    At each vertex the projection is a matrix whose rows span the left kernel of the
    component; arrows are induced through a right inverse of that projection.
    """
    target = f.target
    K = target.K
    proj = {v: la.left_kernel_matrix(c) for v, c in f.components.items()}
    sections = {v: la.right_inverse(q) if q.shape[0] else la.zeros(q.shape[1], 0, K) for v, q in proj.items()}
    maps = {}
    for a in target.presentation.quiver.arrows:
        maps[a.label] = la.mul(la.mul(proj[a.target], target.maps[a.label]), sections[a.source])
    cok = Representation(target.presentation, {v: q.shape[0] for v, q in proj.items()}, maps, check=False)
    return cok, RepMorphism(target, cok, proj, check=False)


def is_isomorphic(m: Representation, n: Representation) -> bool:
    """Isomorphism test: some element of Hom(m, n) is invertible at every vertex.

    Tries the basis elements and a few fixed integer combinations of them.
    """
    _check_same(m, n)
    if m.dims != n.dims:
        return False
    basis = hom_space(m, n)
    if not basis:
        return m.is_zero()
    K = m.K
    candidates = list(basis)
    for seed in range(1, 8):
        comps = {}
        for v in m.dims:
            total = la.zeros(n.dims[v], m.dims[v], K)
            for i, b in enumerate(basis):
                coeff = K((seed * (i + 1) ** 2 + i) % 97 + 1)
                total = la.add(total, la.scale(b.components[v], coeff))
            comps[v] = total
        candidates.append(RepMorphism(m, n, comps, check=False))
    return any(all(la.rank(c) == c.shape[0] for c in g.components.values()) for g in candidates)

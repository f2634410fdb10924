from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .. import exactla as la
from ..errors import ResolutionBoundError
from ..exactla import Matrix
from ..utils.logger import logger
from ..utils.settings import ToolkitSettings
from .representation import Representation, RepMorphism, direct_sum, subrepresentation

# A generator of a projective cover: its top vertex and its image vector
Generator = Tuple[str, List]


@dataclass
class ResolutionStep:
    """Term P_k of a minimal projective resolution.

    ``generators`` lists (vertex, vector) pairs: P_k is the sum of the projectives at
    those vertices, and the vector is the image of the top generator under d_k, written
    in coordinates of P_{k-1} (or of the resolved module when k = 0).
    """

    generators: List[Generator] = field(default_factory=list)

    @property
    def tops(self) -> List[str]:
        return [v for v, _ in self.generators]


def top_basis(m: Representation) -> Dict[str, Matrix]:
    """Columns spanning a complement of the radical at each vertex."""
    K = m.K
    tops = {}
    for v in m.presentation.quiver.vertices:
        incoming = [m.maps[a.label] for a in m.presentation.quiver.arrows_to(v)]
        radical = la.hstack(incoming, m.dims[v], K) if incoming else la.zeros(m.dims[v], 0, K)
        tops[v] = la.complement(la.image_basis(radical))
    return tops


def projective_sum(m: Representation, tops: List[str]) -> Representation:
    """The direct sum of indecomposable projectives with the given tops, in order."""
    algebra = m.presentation.algebra
    summands = [algebra.projective(v) for v in tops]
    if not summands:
        return Representation(m.presentation, {}, check=False)
    return direct_sum(summands)


def projective_cover(m: Representation) -> Tuple[RepMorphism, List[Generator]]:
    """The projective cover P -> m together with its generators."""
    algebra = m.presentation.algebra
    K = m.K
    generators: List[Generator] = []
    for v, basis in top_basis(m).items():
        for col in la.columns(basis):
            generators.append((v, col))
    cover = projective_sum(m, [v for v, _ in generators])

    components = {}
    for w in m.presentation.quiver.vertices:
        cols = []
        for u, vec in generators:
            for p in algebra.basis.get((u, w), []):
                cols.append(la.apply(m.path_matrix(p), vec))
        components[w] = la.from_columns(cols, m.dims[w], K)
    return RepMorphism(cover, m, components, check=False), generators


def minimal_resolution(m: Representation, bound: Optional[int] = None) -> List[ResolutionStep]:
    """Minimal projective resolution of m, term by term.

    Args:
        m: The module to resolve
        bound: Maximal number of terms; defaults to the configured factor times the
            number of vertices

    Raises:
        ResolutionBoundError: If the syzygies do not vanish within the bound
    """
    if bound is None:
        bound = ToolkitSettings.resolution_bound_factor() * len(m.presentation.quiver.vertices)
    steps: List[ResolutionStep] = []
    current = m
    embedding: Optional[Dict[str, Matrix]] = None
    while not current.is_zero():
        if len(steps) >= bound:
            logger.error(f"Resolution of {m} did not terminate within {bound} steps")
            raise ResolutionBoundError(f"Projective resolution exceeds {bound} terms")
        cover, generators = projective_cover(current)
        if embedding is not None:
            # express generator images in coordinates of the previous projective
            generators = [(v, la.apply(embedding[v], vec)) for v, vec in generators]
        steps.append(ResolutionStep(generators))
        bases = {v: la.kernel_matrix(c) for v, c in cover.components.items()}
        current = subrepresentation(cover.source, bases)
        embedding = bases
    logger.debug(f"Resolution of {m}: projective dimension {len(steps) - 1 if steps else 0}")
    return steps


def _dual_differential(m: Representation, n: Representation, step: ResolutionStep, previous_tops: List[str]) -> Matrix:
    """Matrix of Hom(d_k, n): Hom(P_{k-1}, n) -> Hom(P_k, n).

    Hom(P_{k-1}, n) is the sum of n at the tops of P_{k-1}; a generator of P_k maps to a
    combination of paths out of those tops, on which a homomorphism acts through n.
    """
    algebra = m.presentation.algebra
    K = m.K
    src_offsets, src_total = [], 0
    for v in previous_tops:
        src_offsets.append(src_total)
        src_total += n.dims[v]
    rows_blocks = []
    for w, vec in step.generators:
        block = la.zeros(n.dims[w], src_total, K)
        pos = 0
        for j, v in enumerate(previous_tops):
            for p in algebra.basis.get((v, w), []):
                c = vec[pos]
                pos += 1
                if c:
                    piece = la.scale(n.path_matrix(p), c)
                    padded = la.hstack(
                        [la.zeros(n.dims[w], src_offsets[j], K), piece, la.zeros(n.dims[w], src_total - src_offsets[j] - n.dims[v], K)],
                        n.dims[w],
                        K,
                    )
                    block = la.add(block, padded)
        rows_blocks.append(block)
    dst_total = sum(n.dims[w] for w, _ in step.generators)
    return la.vstack(rows_blocks, src_total, K) if rows_blocks else la.zeros(dst_total, src_total, K)


def ext_dims(m: Representation, n: Representation, max_degree: Optional[int] = None) -> List[int]:
    """dim Ext^i(m, n) for i = 0..max_degree (default: up to the projective dimension)."""
    steps = minimal_resolution(m)
    if max_degree is None:
        max_degree = max(len(steps) - 1, 0)
    cochain_dims = [sum(n.dims[v] for v in s.tops) for s in steps]
    # d*_k : Hom(P_{k-1}, n) -> Hom(P_k, n) for k >= 1
    duals: Dict[int, Matrix] = {}
    for k in range(1, len(steps)):
        duals[k] = _dual_differential(m, n, steps[k], steps[k - 1].tops)

    result = []
    for i in range(max_degree + 1):
        if i >= len(steps):
            result.append(0)
            continue
        outgoing = duals.get(i + 1)
        kernel_dim = cochain_dims[i] - (la.rank(outgoing) if outgoing is not None else 0)
        incoming = duals.get(i)
        image_dim = la.rank(incoming) if incoming is not None else 0
        result.append(kernel_dim - image_dim)
    return result


def ext_dim(m: Representation, n: Representation, i: int) -> int:
    """dim Ext^i(m, n) from a minimal projective resolution of m.

    Raises:
        ValueError: If i is negative
        ResolutionBoundError: If the resolution exceeds the configured bound
    """
    if i < 0:
        raise ValueError(f"Ext degree must be non-negative, got {i}")
    return ext_dims(m, n, i)[i]


def projective_dimension(m: Representation) -> int:
    steps = minimal_resolution(m)
    return len(steps) - 1 if steps else 0


def global_dimension(presentation) -> int:
    """The maximum projective dimension of the simple modules."""
    algebra = presentation.algebra
    return max((projective_dimension(algebra.simple(v)) for v in presentation.quiver.vertices), default=0)

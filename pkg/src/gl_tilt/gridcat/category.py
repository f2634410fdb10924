"""Validation, Hom spaces, sums, kernels and cokernels in a grid category."""

import random
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .. import exactla as la
from ..errors import DimensionMismatchError
from ..utils.logger import logger
from ..utils.settings import ToolkitSettings
from .driver import CategoryDriver, Mor
from .grid import ETA, GridMorphism, GridObject, GridShape, Index, step
from .schema import GridFailure, GridVerdict


def virtual_map(driver: CategoryDriver, shape: GridShape, table: Mapping[Index, Mor], index: Sequence[int]) -> Optional[Mor]:
    """A componentwise family at any index, read through the F_i; None at zero objects."""
    base, functors = shape.resolve(index)
    if base is None:
        return None
    return driver.apply_F_morphism_many(functors, table[base])


def _check_arrow_shapes(g: GridObject):
    driver = g.driver
    for (i, a), f in g.arrows.items():
        if not driver.same_object(driver.source(f), g.object_at(step(a, i))):
            raise DimensionMismatchError(f"Arrow f^{i}_{a} does not start at M_{step(a, i)}")
        if not driver.same_object(driver.target(f), g.objects[a]):
            raise DimensionMismatchError(f"Arrow f^{i}_{a} does not end at M_{a}")


def validate_grid(g: GridObject) -> GridVerdict:
    """Check membership, the commutativity condition and the cycle condition at every index.

    Raises:
        DimensionMismatchError: If an arrow does not connect the objects its index names
    """
    _check_arrow_shapes(g)
    driver, shape = g.driver, g.shape
    failures: List[GridFailure] = []
    indices = shape.indices()

    for i in sorted(shape.killed()):
        for a in indices:
            if not driver.is_zero_morphism(driver.eta(i, g.objects[a])):
                failures.append(GridFailure(condition="membership", direction=i, index=list(a), detail=f"eta_{i} does not vanish on M_{a}"))

    chains = [i for i, d in enumerate(shape.directions) if d.has_chain]
    for x, i in enumerate(chains):
        for j in chains[x + 1 :]:
            for a in indices:
                lhs = driver.compose(g.arrow(i, a), g.arrow(j, step(a, i)))
                rhs = driver.compose(g.arrow(j, a), g.arrow(i, step(a, j)))
                if not driver.equal(lhs, rhs):
                    failures.append(GridFailure(condition="commutativity", direction=i, other=j, index=list(a)))

    for i, d in enumerate(shape.directions):
        if d.mode != ETA:
            continue
        for a in indices:
            composite = g.chain_composite(i, a, d.weight)
            if not driver.equal(composite, driver.eta(i, g.objects[a])):
                failures.append(GridFailure(condition="cycle", direction=i, index=list(a), detail=f"composite around direction {i} is not eta_{i}(M_{a})"))

    verdict = GridVerdict(ok=not failures, failures=failures)
    if failures:
        logger.info(f"Grid rejected: {verdict.first_failure}")
    else:
        logger.debug(f"Grid of shape {shape} validated")
    return verdict


def grid_hom(g: GridObject, h: GridObject) -> List[GridMorphism]:
    """Basis of Hom(g, h): componentwise Hom bases cut down by all commuting squares.

    Raises:
        DimensionMismatchError: If the grids have different shapes
    """
    if g.shape != h.shape:
        raise DimensionMismatchError(f"Shapes {g.shape} and {h.shape} differ")
    driver, shape = g.driver, g.shape
    K = driver.K
    indices = shape.indices()
    bases: Dict[Index, List[Mor]] = {a: driver.hom_basis(g.objects[a], h.objects[a]) for a in indices}
    offsets, total = {}, 0
    for a in indices:
        offsets[a] = total
        total += len(bases[a])

    pairs = []
    for i in range(shape.n):
        for a in shape.arrow_indices(i):
            src, tgt_arrow = step(a, i), h.arrow(i, a)
            ambient = len(driver.vectorize(driver.zero(g.object_at(src), h.objects[a])))
            left = [[K.zero] * ambient for _ in range(total)]
            right = [[K.zero] * ambient for _ in range(total)]
            base, functors = shape.resolve(src)
            if base is not None:
                for k, b in enumerate(bases[base]):
                    image = driver.vectorize(driver.compose(tgt_arrow, driver.apply_F_morphism_many(functors, b)))
                    col = left[offsets[base] + k]
                    for r, value in enumerate(image):
                        col[r] += value
            src_arrow = g.arrow(i, a)
            for k, b in enumerate(bases[a]):
                image = driver.vectorize(driver.compose(b, src_arrow))
                col = right[offsets[a] + k]
                for r, value in enumerate(image):
                    col[r] += value
            pairs.append((la.from_columns(left, ambient, K), la.from_columns(right, ambient, K)))

    solutions = la.equalizer_basis(pairs, total, K)
    out = []
    for vec in solutions:
        comps = {a: driver.combine(bases[a], vec[offsets[a] : offsets[a] + len(bases[a])], g.objects[a], h.objects[a]) for a in indices}
        out.append(GridMorphism(g, h, comps))
    logger.debug(f"Grid Hom over {len(indices)} indices: {total} unknowns, dimension {len(out)}")
    return out


def grid_hom_dim(g: GridObject, h: GridObject) -> int:
    return len(grid_hom(g, h))


def grid_identity(g: GridObject) -> GridMorphism:
    return GridMorphism(g, g, {a: g.driver.identity(x) for a, x in g.objects.items()})


def zero_grid(driver: CategoryDriver, shape: GridShape) -> GridObject:
    return GridObject(driver, shape, {a: driver.zero_object() for a in shape.indices()})


def _combine_grid(basis: Sequence[GridMorphism], coeffs: Sequence, g: GridObject, h: GridObject) -> GridMorphism:
    driver = g.driver
    comps = {}
    for a in g.shape.indices():
        comps[a] = driver.combine([b.components[a] for b in basis], coeffs, g.objects[a], h.objects[a])
    return GridMorphism(g, h, comps)


def is_isomorphic(g: GridObject, h: GridObject) -> bool:
    """An invertible element among the basis of Hom(g, h) and seeded combinations of it."""
    if g.shape != h.shape:
        return False
    driver = g.driver
    for a in g.shape.indices():
        if driver.is_zero(g.objects[a]) != driver.is_zero(h.objects[a]):
            return False
    if g.is_zero():
        return True
    basis = grid_hom(g, h)
    if not basis:
        return False
    if any(b.is_iso() for b in basis):
        return True
    rng = random.Random(ToolkitSettings.random_seed())
    for _ in range(ToolkitSettings.iso_attempts()):
        coeffs = [driver.field.element(rng.randint(-9, 9)) for _ in basis]
        if _combine_grid(basis, coeffs, g, h).is_iso():
            return True
    logger.debug(f"No isomorphism found among {ToolkitSettings.iso_attempts()} samples")
    return False


def grid_direct_sum(grids: Sequence[GridObject]) -> Tuple[GridObject, List[GridMorphism], List[GridMorphism]]:
    """The componentwise direct sum with its injections and projections.

    Raises:
        DimensionMismatchError: If the summands have different shapes
    """
    if not grids:
        raise DimensionMismatchError("Direct sum of no grids needs a shape")
    shape, driver = grids[0].shape, grids[0].driver
    if any(g.shape != shape for g in grids):
        raise DimensionMismatchError("Direct summands must share one shape")
    objects, injections, projections = {}, {}, {}
    for a in shape.indices():
        total, inj, proj = driver.direct_sum([g.objects[a] for g in grids])
        objects[a] = total
        injections[a] = inj
        projections[a] = proj

    arrows = {}
    for i in range(shape.n):
        for a in shape.arrow_indices(i):
            src = step(a, i)
            arrow = None
            for k, g in enumerate(grids):
                proj = virtual_map(driver, shape, {b: p[k] for b, p in projections.items()}, src)
                if proj is None:
                    continue
                piece = driver.compose(injections[a][k], driver.compose(g.arrow(i, a), proj))
                arrow = piece if arrow is None else driver.add(arrow, piece)
            if arrow is not None:
                arrows[(i, a)] = arrow
    result = GridObject(driver, shape, objects, arrows)
    inj_maps = [GridMorphism(g, result, {a: injections[a][k] for a in shape.indices()}) for k, g in enumerate(grids)]
    proj_maps = [GridMorphism(result, g, {a: projections[a][k] for a in shape.indices()}) for k, g in enumerate(grids)]
    return result, inj_maps, proj_maps


def grid_kernel(phi: GridMorphism) -> Tuple[GridObject, GridMorphism]:
    """Componentwise kernels with the arrows they inherit."""
    driver, shape = phi.driver, phi.source.shape
    objects, inclusions = {}, {}
    for a in shape.indices():
        objects[a], inclusions[a] = driver.kernel(phi.components[a])
    arrows = {}
    for i in range(shape.n):
        for a in shape.arrow_indices(i):
            inc_src = virtual_map(driver, shape, inclusions, step(a, i))
            if inc_src is None:
                continue
            arrows[(i, a)] = driver.induced_on_kernels(inc_src, inclusions[a], phi.source.arrow(i, a))
    ker = GridObject(driver, shape, objects, arrows)
    return ker, GridMorphism(ker, phi.source, inclusions)


def grid_cokernel(phi: GridMorphism) -> Tuple[GridObject, GridMorphism]:
    """Componentwise cokernels with the arrows induced on them."""
    driver, shape = phi.driver, phi.source.shape
    objects, projections = {}, {}
    for a in shape.indices():
        objects[a], projections[a] = driver.cokernel(phi.components[a])
    arrows = {}
    for i in range(shape.n):
        for a in shape.arrow_indices(i):
            q_src = virtual_map(driver, shape, projections, step(a, i))
            if q_src is None:
                continue
            arrows[(i, a)] = driver.induced_on_cokernels(q_src, projections[a], phi.target.arrow(i, a))
    cok = GridObject(driver, shape, objects, arrows)
    return cok, GridMorphism(phi.target, cok, projections)

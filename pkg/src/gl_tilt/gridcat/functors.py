"""Functors between grid categories along one direction.

Every functor acts on a single direction i and carries the other directions along
componentwise. Mode changes per functor:

    pi: eta -> absent          pi_lambda, pi_rho: absent/killed -> eta
    iota: zero -> eta          iota_lambda, iota_rho: eta -> zero
    Delta: killed -> zero      Delta_lambda, Delta_rho: zero -> killed
    delta: killed -> zero      delta_lambda: zero -> killed
    restriction: absent -> killed
"""

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple

from ..errors import ConfigurationError, DimensionMismatchError
from ..utils.logger import logger
from .category import grid_cokernel, virtual_map
from .driver import CategoryDriver, Mor, Obj
from .grid import ABSENT, ETA, KILLED, ZERO, GridMorphism, GridObject, GridShape, Index, step


def at(index: Index, i: int, c: int) -> Index:
    """The index with coordinate i replaced by c."""
    return tuple(c if j == i else x for j, x in enumerate(index))


def _require(g: GridObject, i: int, modes: Sequence[str], name: str):
    if not 0 <= i < g.shape.n:
        raise ConfigurationError(f"{name}: direction {i} outside 0..{g.shape.n - 1}")
    mode = g.shape.directions[i].mode
    if mode not in modes:
        raise ConfigurationError(f"{name} needs direction {i} in mode {' or '.join(modes)}, found {mode}")


def point_grid(driver: CategoryDriver, x: Obj, shape: GridShape) -> GridObject:
    """An object of the base category viewed in a shape without chains."""
    if any(d.has_chain for d in shape.directions):
        raise ConfigurationError(f"Shape {shape} has chains; a single object needs absent or killed directions")
    return GridObject(driver, shape, {shape.indices()[0]: x})


def relabel(g: GridObject, shape: GridShape) -> GridObject:
    """The same data read in a shape with the same index set and arrows."""
    if shape.indices() != g.shape.indices() or any(set(shape.arrow_indices(i)) != set(g.shape.arrow_indices(i)) for i in range(shape.n)):
        raise DimensionMismatchError(f"Cannot read a grid of shape {g.shape} as {shape}")
    return GridObject(g.driver, shape, g.objects, g.arrows)


def apply_F_grid(g: GridObject, c: int) -> GridObject:
    """F_c applied componentwise."""
    driver = g.driver
    objects = {a: driver.apply_F(c, x) for a, x in g.objects.items()}
    arrows = {k: driver.apply_F_morphism(c, f) for k, f in g.arrows.items()}
    return GridObject(driver, g.shape, objects, arrows)


def eta_morphism(g: GridObject, c: int) -> GridMorphism:
    """The natural map eta_c: F_c g -> g."""
    driver = g.driver
    return GridMorphism(apply_F_grid(g, c), g, {a: driver.eta(c, x) for a, x in g.objects.items()})


@dataclass(frozen=True)
class _Piece:
    """A summand of a new component: an old component along direction i, optionally under F_i."""

    position: int
    twisted: bool = False


Layout = Mapping[int, List[_Piece]]
Blocks = Dict[Tuple[int, int], Mor]


def _piece_object(old: GridObject, a: Index, i: int, piece: _Piece) -> Obj:
    x = old.object_at(at(a, i, piece.position))
    return old.driver.apply_F(i, x) if piece.twisted else x


def _piece_arrow(old: GridObject, a: Index, i: int, j: int, piece: _Piece) -> Mor:
    f = old.arrow(j, at(a, i, piece.position))
    return old.driver.apply_F_morphism(i, f) if piece.twisted else f


def _assemble(old: GridObject, shape: GridShape, i: int, layout: Layout, i_blocks: Callable[[Index], Blocks]) -> GridObject:
    """Build a grid whose components are sums of old components.

    Arrows in directions other than i act diagonally on the pieces; arrows in direction
    i are given by ``i_blocks(alpha)``, a map (target piece, source piece) -> morphism.
    """
    driver = old.driver
    objects, inj, proj = {}, {}, {}
    for a in shape.indices():
        parts = [_piece_object(old, a, i, p) for p in layout[a[i]]]
        if len(parts) == 1:
            objects[a], inj[a], proj[a] = parts[0], [driver.identity(parts[0])], [driver.identity(parts[0])]
        else:
            objects[a], inj[a], proj[a] = driver.direct_sum(parts)

    arrows = {}
    for j in range(shape.n):
        for a in shape.arrow_indices(j):
            base, functors = shape.resolve(step(a, j))
            if base is None:
                continue
            src_proj = [driver.apply_F_morphism_many(functors, p) for p in proj[base]]
            if j == i:
                blocks = i_blocks(a)
            else:
                blocks = {(q, q): _piece_arrow(old, a, i, j, piece) for q, piece in enumerate(layout[a[i]])}
            total = None
            for (q, r), m in blocks.items():
                term = driver.compose(inj[a][q], driver.compose(m, src_proj[r]))
                total = term if total is None else driver.add(total, term)
            if total is not None:
                arrows[(j, a)] = total
    return GridObject(driver, shape, objects, arrows)


SUB, QUOTIENT = "sub", "quotient"


def _subquotient(
    old: GridObject,
    shape: GridShape,
    i: int,
    structure: Mapping[Index, Tuple[Obj, Mor]],
    kind: str,
    position: Callable[[Index], Index],
    i_arrow: Callable[[Index], Mor],
) -> GridObject:
    """Build a grid of subobjects (or quotients) of old components.

    ``structure[alpha]`` is a pair (object, map) with the map a monomorphism into (or an
    epimorphism out of) the old component at ``position(alpha)``; arrows are induced
    from the old arrows, and in direction i from ``i_arrow(alpha)``.
    """
    driver = old.driver
    objects = {a: s[0] for a, s in structure.items()}
    maps = {a: s[1] for a, s in structure.items()}
    arrows = {}
    for j in range(shape.n):
        for a in shape.arrow_indices(j):
            m_src = virtual_map(driver, shape, maps, step(a, j))
            if m_src is None:
                continue
            f = i_arrow(a) if j == i else old.arrow(j, position(a))
            if kind == QUOTIENT:
                arrows[(j, a)] = driver.induced_on_cokernels(m_src, maps[a], f)
            else:
                arrows[(j, a)] = driver.induced_on_kernels(m_src, maps[a], f)
    return GridObject(driver, shape, objects, arrows)


# the recollement along direction i


def pi(g: GridObject, i: int) -> GridObject:
    """The last component along direction i."""
    _require(g, i, (ETA,), "pi")
    p = g.shape.directions[i].weight
    return _assemble(g, g.shape.with_mode(i, ABSENT), i, {1: [_Piece(p)]}, lambda a: {})


def pi_lambda(g: GridObject, i: int) -> GridObject:
    """M |-> (FM = FM = ... = FM -> M) with last arrow eta(M)."""
    _require(g, i, (ABSENT, KILLED), "pi_lambda")
    driver = g.driver
    p = g.shape.directions[i].weight
    layout = {k: [_Piece(1, twisted=True)] for k in range(1, p)}
    layout[p] = [_Piece(1)]

    def blocks(a: Index) -> Blocks:
        m = g.object_at(at(a, i, 1))
        if a[i] == p:
            return {(0, 0): driver.eta(i, m)}
        return {(0, 0): driver.identity(driver.apply_F(i, m))}

    return _assemble(g, g.shape.with_mode(i, ETA), i, layout, blocks)


def pi_rho(g: GridObject, i: int) -> GridObject:
    """M |-> (FM -> M = M = ... = M) with first arrow eta(M)."""
    _require(g, i, (ABSENT, KILLED), "pi_rho")
    driver = g.driver
    p = g.shape.directions[i].weight
    layout = {k: [_Piece(1)] for k in range(1, p + 1)}

    def blocks(a: Index) -> Blocks:
        m = g.object_at(at(a, i, 1))
        if a[i] == 1:
            return {(0, 0): driver.eta(i, m)}
        return {(0, 0): driver.identity(m)}

    return _assemble(g, g.shape.with_mode(i, ETA), i, layout, blocks)


def iota(g: GridObject, i: int) -> GridObject:
    """(0 -> M_1 -> ... -> M_(p-1)) |-> (0 -> M_1 -> ... -> M_(p-1) -> 0)."""
    _require(g, i, (ZERO,), "iota")
    p = g.shape.directions[i].weight
    layout = {k: [_Piece(k)] for k in range(1, p)}
    layout[p] = []

    def blocks(a: Index) -> Blocks:
        if 2 <= a[i] <= p - 1:
            return {(0, 0): g.arrow(i, a)}
        return {}

    return _assemble(g, g.shape.with_mode(i, ETA), i, layout, blocks)


def iota_lambda(g: GridObject, i: int) -> GridObject:
    """The cokernel chain 0 -> cok f_1 -> cok f_2 f_1 -> ... -> cok f_(p-1) ... f_1."""
    _require(g, i, (ETA,), "iota_lambda")
    driver = g.driver
    shape = g.shape.with_mode(i, ZERO)
    structure = {a: driver.cokernel(g.chain_composite(i, a, a[i])) for a in shape.indices()}
    return _subquotient(g, shape, i, structure, QUOTIENT, lambda a: a, lambda a: g.arrow(i, a))


def iota_rho(g: GridObject, i: int) -> GridObject:
    """The kernel chain 0 -> ker f_p ... f_2 -> ... -> ker f_p."""
    _require(g, i, (ETA,), "iota_rho")
    driver = g.driver
    p = g.shape.directions[i].weight
    shape = g.shape.with_mode(i, ZERO)
    structure = {a: driver.kernel(g.chain_composite(i, at(a, i, p), p - a[i])) for a in shape.indices()}
    return _subquotient(g, shape, i, structure, SUB, lambda a: a, lambda a: g.arrow(i, a))


RECOLLEMENT = {
    "iota": iota,
    "pi": pi,
    "pi_lambda": pi_lambda,
    "pi_rho": pi_rho,
    "iota_lambda": iota_lambda,
    "iota_rho": iota_rho,
}


def apply_recollement(name: str, i: int, x: GridObject) -> GridObject:
    """Apply one of the six recollement functors along direction i.

    Raises:
        ConfigurationError: If the functor is unknown or x is not in its domain
    """
    if name not in RECOLLEMENT:
        raise ConfigurationError(f"Unknown recollement functor '{name}'; choose from {sorted(RECOLLEMENT)}")
    logger.debug(f"Applying {name} along direction {i} to a grid of shape {x.shape}")
    return RECOLLEMENT[name](x, i)


# the constant-chain functors


def Delta(g: GridObject, i: int) -> GridObject:
    """M |-> (0 -> M = M = ... = M) in p - 1 positions."""
    _require(g, i, (KILLED,), "Delta")
    driver = g.driver
    p = g.shape.directions[i].weight
    layout = {k: [_Piece(1)] for k in range(1, p)}

    def blocks(a: Index) -> Blocks:
        return {(0, 0): driver.identity(g.object_at(at(a, i, 1)))}

    return _assemble(g, g.shape.with_mode(i, ZERO), i, layout, blocks)


def Delta_lambda(g: GridObject, i: int) -> GridObject:
    """The last component of a chain."""
    _require(g, i, (ZERO,), "Delta_lambda")
    p = g.shape.directions[i].weight
    return _assemble(g, g.shape.with_mode(i, KILLED), i, {1: [_Piece(p - 1)]}, lambda a: {})


def Delta_rho(g: GridObject, i: int) -> GridObject:
    """The first component of a chain."""
    _require(g, i, (ZERO,), "Delta_rho")
    return _assemble(g, g.shape.with_mode(i, KILLED), i, {1: [_Piece(1)]}, lambda a: {})


def delta(g: GridObject, i: int, into: str = ZERO) -> GridObject:
    """The sum of the right-truncated constant chains (M = ... = M -> 0 -> ... -> 0).

    Position k carries the summands s >= k. With ``into="eta"`` the chain has p positions,
    which needs F_i to vanish.
    """
    driver = g.driver
    if into == ZERO:
        _require(g, i, (KILLED,), "delta")
        length = g.shape.directions[i].weight - 1
    elif into == ETA:
        _require(g, i, (ABSENT, KILLED), "delta")
        if not driver.functor_vanishes(i):
            raise ConfigurationError(f"delta into an eta chain needs F_{i} = 0")
        length = g.shape.directions[i].weight
    else:
        raise ConfigurationError(f"delta lands in a zero or eta chain, not '{into}'")
    layout = {k: [_Piece(1)] * (length - k + 1) for k in range(1, length + 1)}

    def blocks(a: Index) -> Blocks:
        if a[i] == 1:
            return {}
        m = g.object_at(at(a, i, 1))
        # summand s sits at piece s - k of position k
        return {(q, q + 1): driver.identity(m) for q in range(length - a[i] + 1)}

    return _assemble(g, g.shape.with_mode(i, into), i, layout, blocks)


def truncated_chain(g: GridObject, i: int, s: int, into: str = ZERO) -> GridObject:
    """(M = ... = M -> 0 -> ... -> 0) with M in positions 1..s; the summands of delta."""
    driver = g.driver
    _require(g, i, (ABSENT, KILLED), "truncated_chain")
    length = g.shape.directions[i].weight - (1 if into == ZERO else 0)
    if not 1 <= s <= length:
        raise ConfigurationError(f"Truncation {s} outside 1..{length}")
    layout = {k: [_Piece(1)] if k <= s else [] for k in range(1, length + 1)}

    def blocks(a: Index) -> Blocks:
        if 2 <= a[i] <= s:
            return {(0, 0): driver.identity(g.object_at(at(a, i, 1)))}
        return {}

    return _assemble(g, g.shape.with_mode(i, into), i, layout, blocks)


def at_last_position(g: GridObject, i: int) -> GridObject:
    """(FY -> 0 -> ... -> 0 -> Y) for Y killed by eta_i."""
    _require(g, i, (KILLED,), "at_last_position")
    p = g.shape.directions[i].weight
    layout = {k: [] for k in range(1, p)}
    layout[p] = [_Piece(1)]
    return _assemble(g, g.shape.with_mode(i, ETA), i, layout, lambda a: {})


def delta_lambda(g: GridObject, i: int) -> GridObject:
    """The sum of all components of a chain."""
    driver = g.driver
    mode = g.shape.directions[i].mode
    if mode == ZERO:
        new_mode, length = KILLED, g.shape.directions[i].weight - 1
    elif mode == ETA and driver.functor_vanishes(i):
        new_mode, length = ABSENT, g.shape.directions[i].weight
    else:
        raise ConfigurationError(f"delta_lambda needs a zero chain or an eta chain with F_{i} = 0, found {mode}")
    layout = {1: [_Piece(k) for k in range(1, length + 1)]}
    return _assemble(g, g.shape.with_mode(i, new_mode), i, layout, lambda a: {})


DELTA_FAMILY = {
    "delta": delta,
    "delta_lambda": delta_lambda,
    "Delta": Delta,
    "Delta_lambda": Delta_lambda,
    "Delta_rho": Delta_rho,
}


def apply_delta_family(name: str, x: GridObject, i: int) -> GridObject:
    """Apply delta, delta_lambda, Delta, Delta_lambda or Delta_rho along direction i.

    Raises:
        ConfigurationError: If the functor is unknown or x is not in its domain
    """
    if name not in DELTA_FAMILY:
        raise ConfigurationError(f"Unknown functor '{name}'; choose from {sorted(DELTA_FAMILY)}")
    mode = x.shape.directions[i].mode if 0 <= i < x.shape.n else None
    if mode == KILLED:
        _check_killed(x, i)
    return DELTA_FAMILY[name](x, i)


def _check_killed(g: GridObject, i: int):
    driver = g.driver
    for a, m in g.objects.items():
        if not driver.is_zero_morphism(driver.eta(i, m)):
            logger.error(f"Component {a} is not annihilated by eta_{i}")
            raise ConfigurationError(f"Component {a} is not annihilated by eta_{i}")


def restriction(g: GridObject, directions: Iterable[int]) -> GridObject:
    """g|_K: the iterated cokernel of eta_c over c in K.

    Raises:
        ConfigurationError: If some c in K already carries a chain or is killed
    """
    directions = sorted(set(directions))
    for c in directions:
        if not 0 <= c < g.shape.n:
            raise ConfigurationError(f"Direction {c} outside 0..{g.shape.n - 1}")
        if g.shape.directions[c].mode != ABSENT:
            raise ConfigurationError(f"Cannot restrict along direction {c}: it is {g.shape.directions[c].mode}")
    for c in reversed(directions):
        cok, _ = grid_cokernel(eta_morphism(g, c))
        g = relabel(cok, g.shape.with_mode(c, KILLED))
    return g


def grid_shift(g: GridObject, i: int) -> GridObject:
    """F_(1/p): (FX_p -> X_1 -> ... -> X_p) |-> (FX_(p-1) -> FX_p -> X_1 -> ... -> X_(p-1))."""
    _require(g, i, (ETA,), "grid_shift")
    driver = g.driver
    p = g.shape.directions[i].weight
    layout = {1: [_Piece(p, twisted=True)]}
    layout.update({k: [_Piece(k - 1)] for k in range(2, p + 1)})

    def blocks(a: Index) -> Blocks:
        if a[i] == 1:
            return {(0, 0): driver.apply_F_morphism(i, g.arrow(i, at(a, i, p)))}
        return {(0, 0): g.arrow(i, at(a, i, a[i] - 1))}

    return _assemble(g, g.shape, i, layout, blocks)


# unit, counit and the chains describing their kernels and cokernels


def unit(g: GridObject, i: int) -> GridMorphism:
    """epsilon_X: X -> pi_rho pi X, the composite X_k -> X_p at position k."""
    _require(g, i, (ETA,), "unit")
    p = g.shape.directions[i].weight
    target = pi_rho(pi(g, i), i)
    comps = {a: g.chain_composite(i, at(a, i, p), p - a[i]) for a in g.shape.indices()}
    return GridMorphism(g, target, comps)


def counit(g: GridObject, i: int) -> GridMorphism:
    """phi_X: pi_lambda pi X -> X, the composite F X_p -> X_k at position k."""
    _require(g, i, (ETA,), "counit")
    source = pi_lambda(pi(g, i), i)
    comps = {a: g.chain_composite(i, a, a[i]) for a in g.shape.indices()}
    p = g.shape.directions[i].weight
    for a in comps:
        if a[i] == p:
            comps[a] = g.driver.identity(g.objects[a])
    return GridMorphism(source, g, comps)


def cokernel_of_tails(g: GridObject, i: int) -> GridObject:
    """The zero chain 0 -> cok(X_1 -> X_p) -> ... -> cok(X_(p-1) -> X_p)."""
    _require(g, i, (ETA,), "cokernel_of_tails")
    driver = g.driver
    p = g.shape.directions[i].weight
    shape = g.shape.with_mode(i, ZERO)
    structure = {a: driver.cokernel(g.chain_composite(i, at(a, i, p), p - a[i])) for a in shape.indices()}
    return _subquotient(
        g, shape, i, structure, QUOTIENT, lambda a: at(a, i, p), lambda a: driver.identity(g.object_at(at(a, i, p)))
    )


def kernel_of_heads(g: GridObject, i: int) -> GridObject:
    """The zero chain 0 -> ker(FX_p -> X_1) -> ... -> ker(FX_p -> X_(p-1))."""
    _require(g, i, (ETA,), "kernel_of_heads")
    driver = g.driver
    shape = g.shape.with_mode(i, ZERO)
    structure = {a: driver.kernel(g.chain_composite(i, a, a[i])) for a in shape.indices()}
    return _subquotient(
        g, shape, i, structure, SUB, lambda a: at(a, i, 0), lambda a: driver.identity(g.object_at(at(a, i, 0)))
    )

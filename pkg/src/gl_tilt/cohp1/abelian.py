"""Kernels, cokernels, Ext and the twist with its natural map for split sheaves."""

from typing import Dict, List, Optional, Tuple

from sympy import Poly, Symbol
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import ring

from .. import exactla as la
from ..errors import SplittingWindowError, UnsupportedFieldError
from ..exactla import FieldSpec, Matrix, RATIONALS
from ..utils.logger import logger
from .morphism import (
    P1Morphism,
    block_morphism,
    compose,
    hom_basis,
    hom_dim,
    multiply_by_form,
    section_offsets,
    sections_matrix,
    zero,
)
from .sheaf import (
    P1Sheaf,
    RationalPoint,
    Summand,
    form_from_coefficients,
    free,
    jet_from_coefficients,
    point_form,
    rings,
    skyscraper,
)


def generic_rank(f: P1Morphism) -> int:
    """Rank of the free-to-free block over the function field K(s), with x = 1, y = s."""
    src = [j for j, s in enumerate(f.source.summands) if s.is_free]
    tgt = [i for i, t in enumerate(f.target.summands) if t.is_free]
    if not src or not tgt:
        return 0
    K = f.K
    S, s = ring("s", K)
    rows = []
    for i in tgt:
        row = []
        for j in src:
            e = f.entries[i][j]
            row.append(S.from_dict({(b,): c for (a, b), c in e.items()}) if e else S.zero)
        rows.append(row)
    return DomainMatrix(rows, (len(tgt), len(src)), S.to_domain()).rank()


def _torsion_positions(m: P1Sheaf, t: int) -> Dict[int, List[int]]:
    offsets, _ = section_offsets(m, t)
    return {j: list(range(offsets[j], offsets[j] + s.mult)) for j, s in enumerate(m.summands) if not s.is_free}


def _shift_matrix(summands: List[Summand], K) -> Matrix:
    """Multiplication by the uniformizer on a sum of truncated local rings."""
    blocks = []
    for s in summands:
        rows = [[K.one if r == c + 1 else K.zero for c in range(s.mult)] for r in range(s.mult)]
        blocks.append(la.matrix(rows, K, (s.mult, s.mult)))
    return la.block_diag(blocks, K)


def _assemble(parts: List[Tuple[Summand, Dict[int, object]]], ambient: P1Sheaf, field: FieldSpec, into: bool):
    """Sort (summand, entries) parts canonically and build the sheaf with its map.

    With ``into`` the map goes from the new sheaf into ``ambient`` (entries indexed by
    ambient summands); otherwise it goes from ``ambient`` onto the new sheaf.
    """
    parts = sorted(parts, key=lambda p: p[0])
    sheaf = P1Sheaf.from_summands(s for s, _ in parts)
    n_amb = len(ambient.summands)
    if into:
        entries = [[parts[c][1].get(r) for c in range(len(parts))] for r in range(n_amb)]
        return sheaf, P1Morphism(sheaf, ambient, entries, field, check=False)
    entries = [[parts[r][1].get(c) for c in range(n_amb)] for r in range(len(parts))]
    return sheaf, P1Morphism(ambient, sheaf, entries, field, check=False)


def _torsion_kernel(f: P1Morphism) -> List[Tuple[Summand, Dict[int, object]]]:
    """Kernel of f on skyscraper summands, point by point, split into Jordan chains."""
    K, field = f.K, f.field
    src, tgt = f.source.summands, f.target.summands
    full = sections_matrix(f, 0)
    src_pos, tgt_pos = _torsion_positions(f.source, 0), _torsion_positions(f.target, 0)
    parts = []
    for point in f.source.support():
        cols_idx = [j for j, s in enumerate(src) if not s.is_free and s.point == point]
        rows_idx = [i for i, t in enumerate(tgt) if not t.is_free and t.point == point]
        cols = [c for j in cols_idx for c in src_pos[j]]
        rows = [r for i in rows_idx for r in tgt_pos[i]]
        local = la.submatrix(full, rows, cols)
        ker = la.kernel_matrix(local)
        if ker.shape[1] == 0:
            continue
        shift = _shift_matrix([src[j] for j in cols_idx], K)
        restricted = la.solve_matrix(ker, la.mul(shift, ker))
        for length, g in la.nilpotent_chains(restricted):
            v = la.apply(ker, g)
            entries, pos = {}, 0
            for j in cols_idx:
                entries[j] = jet_from_coefficients(K, v[pos : pos + src[j].mult])
                pos += src[j].mult
            parts.append((skyscraper(point, length), entries))
    return parts


def _kernel_generator_bound(f: P1Morphism, kernel_rank: int) -> int:
    """Largest t for which O(-t) can split off the kernel of f.

    A rank r image has degree at most the r largest target twists plus the target torsion,
    and every kernel summand O(c) has c <= max(source twists).
    """
    E, F = f.source, f.target
    image_rank = E.rank - kernel_rank
    image_degree = sum(sorted(F.twists, reverse=True)[:image_rank]) + F.torsion_length
    kernel_degree = sum(E.twists) - image_degree
    return (kernel_rank - 1) * max(E.twists) - kernel_degree + 2


def kernel(f: P1Morphism) -> Tuple[P1Sheaf, P1Morphism]:
    """The kernel of f in split form with its inclusion into f.source.

    Skyscrapers come from Jordan chains of the uniformizer on the kernel of the local
    maps. Line bundles are found degree by degree: at degree t the kernel sections not
    generated by x and y from degree t - 1 are new generators O(-t).

    Raises:
        SplittingWindowError: If the generators do not stabilize within the window
    """
    K, field = f.K, f.field
    E = f.source
    src = E.summands
    parts = _torsion_kernel(f)
    wanted = E.rank - generic_rank(f)
    if wanted > 0:
        R, x, y, _, _ = rings(K)
        times_x = multiply_by_form(E, x, 1, field)
        times_y = multiply_by_form(E, y, 1, field)
        t_lo = -max(E.twists)
        window = _kernel_generator_bound(f, wanted) - t_lo
        found = 0
        previous: Optional[Matrix] = None
        t = t_lo
        while True:
            if t > t_lo + window:
                logger.error(f"Kernel generators of {f} did not stabilize by degree {t}")
                raise SplittingWindowError(f"Kernel splitting type not found within degrees [{t_lo}, {t_lo + window}]")
            degree_map = sections_matrix(f, t)
            sections = la.kernel_matrix(degree_map)
            offsets, total = section_offsets(E, t)
            if previous is None:
                # kernel sections living on the skyscrapers only
                tors = [c for cols in _torsion_positions(E, t).values() for c in cols]
                local = la.kernel(la.submatrix(degree_map, list(range(degree_map.shape[0])), tors))
                span_cols = []
                for v in local:
                    vec = [K.zero] * total
                    for c, value in zip(tors, v):
                        vec[c] = value
                    span_cols.append(vec)
                span = la.from_columns(span_cols, total, K)
            else:
                span = la.hstack(
                    [la.mul(sections_matrix(times_x, t), previous), la.mul(sections_matrix(times_y, t), previous)], total, K
                )
            new = la.columns(la.complement(span, sections))
            if previous is not None and found == wanted:
                if new:
                    raise SplittingWindowError(f"Kernel of {f} has unexpected generators in degree {t}")
                break
            for g in new:
                entries = {}
                for j, s in enumerate(src):
                    chunk = g[offsets[j] : offsets[j] + s.section_dim(t)]
                    if s.is_free:
                        entries[j] = form_from_coefficients(K, chunk, s.twist + t) if chunk else None
                    else:
                        entries[j] = jet_from_coefficients(K, chunk)
                parts.append((free(-t), entries))
            found += len(new)
            if found > wanted:
                raise SplittingWindowError(f"Kernel of {f} has more than {wanted} line bundle generators")
            previous = sections
            t += 1
    ker, inclusion = _assemble(parts, E, field, into=True)
    logger.debug(f"ker({E} -> {f.target}) = {ker}")
    return ker, inclusion


def _dual_free(m: P1Sheaf) -> Tuple[P1Sheaf, List[int]]:
    """The dual of the free part and, per summand of the dual, the index it came from."""
    order = sorted(range(m.rank), key=lambda k: -m.twists[k])
    return P1Sheaf(tuple(-m.twists[k] for k in order)), order


def solve_postcompose(g: P1Morphism, f: P1Morphism) -> Optional[P1Morphism]:
    """Some h with g after h equal to f, or None."""
    basis = hom_basis(f.source, g.source, f.field)
    columns = [compose(g, h).coordinates() for h in basis]
    target = f.coordinates()
    sol = la.solve(la.from_columns(columns, len(target), f.K), target)
    if sol is None:
        return None
    return _combine(basis, sol, f.source, g.source, f.field)


def solve_precompose(g: P1Morphism, f: P1Morphism) -> Optional[P1Morphism]:
    """Some h with h after g equal to f, or None."""
    basis = hom_basis(g.target, f.target, f.field)
    columns = [compose(h, g).coordinates() for h in basis]
    target = f.coordinates()
    sol = la.solve(la.from_columns(columns, len(target), f.K), target)
    if sol is None:
        return None
    return _combine(basis, sol, g.target, f.target, f.field)


def _combine(basis: List[P1Morphism], coeffs, source: P1Sheaf, target: P1Sheaf, field: FieldSpec) -> P1Morphism:
    out = zero(source, target, field)
    for h, c in zip(basis, coeffs):
        if c:
            out = out + h.scale(c)
    return out


def factor_through_mono(mono: P1Morphism, f: P1Morphism) -> Optional[P1Morphism]:
    """h with mono after h equal to f, or None when f does not factor."""
    return solve_postcompose(mono, f)


def factor_through_epi(epi: P1Morphism, f: P1Morphism) -> Optional[P1Morphism]:
    """h with h after epi equal to f, or None when f does not factor."""
    return solve_precompose(epi, f)


def _roots(coeffs: List, K) -> List:
    """Roots of a polynomial given leading coefficient first, all of which must lie in K."""
    s = Symbol("s")
    poly = Poly([K.to_sympy(c) for c in coeffs], s, domain=K)
    roots = []
    for factor, _ in poly.factor_list()[1]:
        if factor.degree() != 1:
            raise UnsupportedFieldError(f"Torsion support at the roots of {factor.as_expr()} is not rational over {K}")
        c1, c0 = (K.from_sympy(c) for c in factor.all_coeffs())
        roots.append(-c0 / c1)
    return roots


def _torsion_cokernel(f: P1Morphism) -> Tuple[P1Sheaf, P1Morphism]:
    """Cokernel of a morphism whose cokernel is a skyscraper sheaf, with its projection.

    Works in one large degree t, where the cokernel sections carry commuting actions
    of x and y. Dividing by an invertible w = a x + b y gives commuting operators whose
    joint eigenvalues are the support points; on each generalized eigenspace the
    uniformizer l_P / w_P is nilpotent and its Jordan chains give the local lengths.
    """
    K, field = f.K, f.field
    E, N = f.source, f.target
    R, x, y, _, _ = rings(K)
    # sections of the image must be onto in degree t, so clear H^1 of the kernel too
    lowest = min(list(E.twists) + list(N.twists) + list(kernel(f)[0].twists) + [0])
    t = -lowest + 1
    q0 = la.left_kernel_matrix(sections_matrix(f, t))
    q1 = la.left_kernel_matrix(sections_matrix(f, t + 1))
    size = q0.shape[0]
    if size == 0:
        return P1Sheaf(), P1Morphism(N, P1Sheaf(), [], field, check=False)
    lift = la.right_inverse(q0)
    X = la.mul(la.mul(q1, sections_matrix(multiply_by_form(N, x, 1, field), t + 1)), lift)
    Y = la.mul(la.mul(q1, sections_matrix(multiply_by_form(N, y, 1, field), t + 1)), lift)

    candidates = [(K.one, K(c)) for c in range(size + 2)] + [(K.zero, K.one)]
    for a, b in candidates:
        W = la.add(la.scale(X, a), la.scale(Y, b))
        if la.rank(W) == size:
            break
    else:
        raise UnsupportedFieldError(f"No linear form over {K} is invertible on the torsion support")
    W_inv = la.inverse(W)
    A, B = la.mul(W_inv, X), la.mul(W_inv, Y)
    Z = B if a != K.zero else A

    offsets, n_total = section_offsets(N, t)
    eig_bases, eig_data = [], []
    for root in _roots(la.charpoly(Z), K):
        space = la.kernel_matrix(la.power(la.sub(Z, la.scalar_matrix(size, root, K)), size))
        if a != K.zero:
            beta = root
            alpha = (K.one - b * beta) / a
        else:
            alpha, beta = root, K.one
        point = RationalPoint(K.to_sympy(alpha), K.to_sympy(beta)).reduce(field)
        l0, l1 = point.coordinates(field)
        A_r = la.solve_matrix(space, la.mul(A, space))
        B_r = la.solve_matrix(space, la.mul(B, space))
        L = la.sub(la.scale(A_r, l1), la.scale(B_r, l0))
        Mw = A_r if l0 != K.zero else B_r
        U = la.mul(la.inverse(Mw), L)
        chains = la.nilpotent_chains(U)
        jordan = la.from_columns(
            [la.apply(la.power(U, k), g) for length, g in chains for k in range(length)], space.shape[1], K
        )
        eig_bases.append(space)
        eig_data.append((point, chains, jordan))

    all_eig = la.hstack(eig_bases, size, K)
    parts = []
    for idx, (point, chains, jordan) in enumerate(eig_data):
        start = sum(space.shape[1] for space in eig_bases[:idx])
        width = eig_bases[idx].shape[1]
        chain_entries = [dict() for _ in chains]
        for j, s in enumerate(N.summands):
            if s.is_free:
                e = s.twist + t
                vec = [K.zero] * n_total
                k = 0 if point.l0 != 0 else e
                vec[offsets[j] + k] = K.one
            elif s.point == point:
                vec = [K.zero] * n_total
                vec[offsets[j]] = K.one
            else:
                continue
            cls = la.apply(q0, vec)
            coords = la.solve(all_eig, cls)[start : start + width]
            local = la.solve(jordan, coords)
            pos = 0
            for c, (length, _) in enumerate(chains):
                chain_entries[c][j] = jet_from_coefficients(K, local[pos : pos + length])
                pos += length
        for c, (length, _) in enumerate(chains):
            parts.append((skyscraper(point, length), chain_entries[c]))
    return _assemble(parts, N, field, into=False)


def cokernel(f: P1Morphism) -> Tuple[P1Sheaf, P1Morphism]:
    """The cokernel of f in split form with its projection from f.target.

    The line bundle part is dual to the kernel of the transposed free block; the
    skyscraper part is the cokernel of f onto the kernel of that projection.

    Raises:
        UnsupportedFieldError: If the torsion support is not rational over the field
    """
    K, field = f.K, f.field
    E, G = f.source, f.target
    src_free = [j for j, s in enumerate(E.summands) if s.is_free]
    tgt_free = [i for i, s in enumerate(G.summands) if s.is_free]

    G_dual, g_order = _dual_free(G)
    E_dual, e_order = _dual_free(E)
    dual_entries = [[f.entries[tgt_free[k]][src_free[j]] for k in g_order] for j in e_order]
    transposed = P1Morphism(G_dual, E_dual, dual_entries, field, check=False)
    D, J = kernel(transposed)

    C_free, c_order = _dual_free(D)
    proj_entries = []
    for d_idx in c_order:
        row = [None] * len(G.summands)
        for pos, k in enumerate(g_order):
            row[tgt_free[k]] = J.entries[pos][d_idx]
        proj_entries.append(row)
    P_free = P1Morphism(G, C_free, proj_entries, field, check=False)

    N, iota = kernel(P_free)
    lifted = factor_through_mono(iota, f)
    if lifted is None:
        raise SplittingWindowError(f"{f} does not land in the saturation of its image")
    T_C, q = _torsion_cokernel(lifted)
    rho = solve_precompose(iota, q)
    if rho is None:
        raise SplittingWindowError(f"Cannot extend the torsion projection of {f} to {G}")
    coker = C_free.direct_sum(T_C)
    projection = block_morphism([G], [C_free, T_C], [[P_free], [rho]], field)
    logger.debug(f"cok({E} -> {G}) = {coker}")
    return projection.target, projection


def is_isomorphism(f: P1Morphism) -> bool:
    return kernel(f)[0].is_zero() and cokernel(f)[0].is_zero()


def euler_form(m: P1Sheaf, n: P1Sheaf) -> int:
    """chi(m, n) = dim Hom - dim Ext^1 from ranks and degrees."""
    return m.rank * n.rank + m.rank * n.degree - n.rank * m.degree


def ext1_dim(m: P1Sheaf, n: P1Sheaf, field: FieldSpec = RATIONALS) -> int:
    """dim Ext^1(m, n).

    For a line bundle O(a) this is dim Hom(n, O(a - 2)). A skyscraper of length l at P
    is resolved by l_P^l: O(-l) -> O; its Ext^1 collects the cokernel of precomposition
    on Hom and the kernel of the induced map on Ext^1(O, n), the latter read off its
    Serre dual Hom(n, O(-l - 2)) -> Hom(n, O(-2)).
    """
    total = 0
    for a in m.twists:
        total += hom_dim(n, P1Sheaf.line(a - 2))
    for point, length in m.torsion:
        form = point_form(point.reduce(field), field, length)
        resolution = P1Morphism(P1Sheaf.line(-length), P1Sheaf.line(0), [[form]], field)
        before = [compose(h, resolution).coordinates() for h in hom_basis(P1Sheaf.line(0), n, field)]
        target_dim = hom_dim(P1Sheaf.line(-length), n)
        rank = la.rank(la.from_columns(before, target_dim, field.domain))
        total += target_dim - rank
        twisted = P1Morphism(P1Sheaf.line(-length - 2), P1Sheaf.line(-2), [[form]], field)
        after = [compose(twisted, h).coordinates() for h in hom_basis(n, P1Sheaf.line(-length - 2), field)]
        dual_dim = hom_dim(n, P1Sheaf.line(-2))
        total += dual_dim - la.rank(la.from_columns(after, dual_dim, field.domain))
    return total


def ext_dim(m: P1Sheaf, n: P1Sheaf, i: int, field: FieldSpec = RATIONALS) -> int:
    """dim Ext^i(m, n); the projective line is hereditary so degrees above one vanish."""
    if i < 0:
        raise ValueError(f"Ext degree must be non-negative, got {i}")
    if i == 0:
        return hom_dim(m, n)
    if i == 1:
        return ext1_dim(m, n, field)
    return 0


def twist_and_eta(m: P1Sheaf, point: RationalPoint, field: FieldSpec = RATIONALS) -> Tuple[P1Sheaf, P1Morphism]:
    """F(m) = m(-1) on line bundles (skyscrapers fixed) and eta(m): F(m) -> m, multiplication by l_P."""
    eta = multiply_by_form(m, point_form(point.reduce(field), field), 1, field)
    return eta.source, eta

from typing import List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from .. import exactla as la
from ..errors import DimensionMismatchError
from ..exactla import FieldSpec, Matrix, RATIONALS
from .sheaf import (
    P1Sheaf,
    Summand,
    form_coefficients,
    form_from_coefficients,
    is_homogeneous,
    jet,
    jet_coefficients,
    jet_from_coefficients,
    monomial,
    rings,
    truncate,
    valuation,
)

# Entry kinds between summands
FORM, JET, NONE = "form", "jet", "none"


def entry_kind(src: Summand, tgt: Summand) -> str:
    if tgt.is_free:
        return FORM if src.is_free else NONE
    if src.is_free or src.point == tgt.point:
        return JET
    return NONE


def slots(src: Summand, tgt: Summand) -> List[int]:
    """Free coefficient positions of an entry src -> tgt.

    Forms of degree e use positions 0..e; jets into a skyscraper of length m use the
    positions k < m, starting at m - m_src when the source is a skyscraper.
    """
    kind = entry_kind(src, tgt)
    if kind == FORM:
        return list(range(tgt.twist - src.twist + 1)) if tgt.twist >= src.twist else []
    if kind == JET:
        lower = 0 if src.is_free else max(0, tgt.mult - src.mult)
        return list(range(lower, tgt.mult))
    return []


class P1Morphism:
    """A morphism of split sheaves given entrywise, ``entries[i][j]: source_j -> target_i``.

    Free to free entries are forms of degree ``b - a`` in K[x, y]; entries into a
    skyscraper are jets in K[u] truncated to its length; skyscraper to free entries and
    entries between different points are absent (``None``).
    """

    def __init__(
        self,
        source: P1Sheaf,
        target: P1Sheaf,
        entries: Optional[Sequence[Sequence]] = None,
        field: FieldSpec = RATIONALS,
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self.field = field
        self.K = field.domain
        R, _, _, U, _ = rings(self.K)
        src, tgt = source.summands, target.summands
        rows = []
        for i, t in enumerate(tgt):
            row = []
            for j, s in enumerate(src):
                kind = entry_kind(s, t)
                value = entries[i][j] if entries is not None else None
                if kind == NONE:
                    if check and value is not None and value != 0:
                        raise DimensionMismatchError(f"Entry {s} -> {t} must vanish")
                    row.append(None)
                elif kind == FORM:
                    row.append(R.zero if value is None else R(value))
                else:
                    row.append(U.zero if value is None else truncate(U(value), t.mult))
            rows.append(row)
        if entries is not None and (len(entries) != len(tgt) or any(len(r) != len(src) for r in entries)):
            raise DimensionMismatchError(f"Entry grid does not match {len(tgt)} x {len(src)} summands")
        self.entries: List[List] = rows
        if check:
            self.validate()

    def validate(self):
        src, tgt = self.source.summands, self.target.summands
        for i, t in enumerate(tgt):
            for j, s in enumerate(src):
                e = self.entries[i][j]
                kind = entry_kind(s, t)
                if kind == FORM and e and not is_homogeneous(e, t.twist - s.twist):
                    raise DimensionMismatchError(f"Entry {s} -> {t} must be a form of degree {t.twist - s.twist}")
                if kind == JET and e:
                    lowest = slots(s, t)[0] if slots(s, t) else t.mult
                    if valuation(e) < lowest:
                        raise DimensionMismatchError(f"Jet {s} -> {t} is not a module map: order {valuation(e)} < {lowest}")

    def coordinates(self) -> List:
        """Values at the free slots, in the order used by ``hom_basis``."""
        out = []
        src, tgt = self.source.summands, self.target.summands
        for i, t in enumerate(tgt):
            for j, s in enumerate(src):
                e = self.entries[i][j]
                kind = entry_kind(s, t)
                positions = slots(s, t)
                if kind == FORM:
                    coeffs = form_coefficients(e, t.twist - s.twist) if positions else []
                    out.extend(coeffs[k] for k in positions)
                elif kind == JET:
                    coeffs = jet_coefficients(e, t.mult)
                    out.extend(coeffs[k] for k in positions)
        return out

    def is_zero(self) -> bool:
        return all(c == self.K.zero for c in self.coordinates())

    def __eq__(self, other) -> bool:
        if not isinstance(other, P1Morphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.coordinates() == other.coordinates()

    def __add__(self, other: "P1Morphism") -> "P1Morphism":
        _same_shape(self, other)
        entries = [[_add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        return P1Morphism(self.source, self.target, entries, self.field, check=False)

    def __sub__(self, other: "P1Morphism") -> "P1Morphism":
        return self + other.scale(-self.K.one)

    def scale(self, c) -> "P1Morphism":
        entries = [[None if e is None else e * c for e in row] for row in self.entries]
        return P1Morphism(self.source, self.target, entries, self.field, check=False)

    def __repr__(self) -> str:
        return f"P1Morphism({self.source} -> {self.target})"


def _add(a, b):
    return None if a is None else a + b


def _same_shape(f: P1Morphism, g: P1Morphism):
    if f.source != g.source or f.target != g.target:
        raise DimensionMismatchError(f"Morphisms {f} and {g} are not parallel")


def from_coordinates(source: P1Sheaf, target: P1Sheaf, values: Sequence, field: FieldSpec = RATIONALS) -> P1Morphism:
    K = field.domain
    values = list(values)
    pos = 0
    entries = []
    for t in target.summands:
        row = []
        for s in source.summands:
            kind = entry_kind(s, t)
            positions = slots(s, t)
            chunk = values[pos : pos + len(positions)]
            pos += len(positions)
            if kind == FORM:
                e = t.twist - s.twist
                coeffs = [K.zero] * (e + 1) if e >= 0 else []
                for k, c in zip(positions, chunk):
                    coeffs[k] = c
                row.append(form_from_coefficients(K, coeffs, e) if coeffs else None)
            elif kind == JET:
                coeffs = [K.zero] * t.mult
                for k, c in zip(positions, chunk):
                    coeffs[k] = c
                row.append(jet_from_coefficients(K, coeffs))
            else:
                row.append(None)
        entries.append(row)
    if pos != len(values):
        raise DimensionMismatchError(f"Expected {pos} coordinates, got {len(values)}")
    return P1Morphism(source, target, entries, field, check=False)


def hom_dim(source: P1Sheaf, target: P1Sheaf) -> int:
    return sum(len(slots(s, t)) for t in target.summands for s in source.summands)


def hom_basis(source: P1Sheaf, target: P1Sheaf, field: FieldSpec = RATIONALS) -> List[P1Morphism]:
    """Basis of Hom(source, target) made of unit slots.

    Its size is the sum over pairs of summands: b - a + 1 for O(a) -> O(b), the target
    length for O(a) -> skyscraper, min of the lengths between skyscrapers at one point.
    """
    K = field.domain
    n = hom_dim(source, target)
    basis = []
    for k in range(n):
        values = [K.zero] * n
        values[k] = K.one
        basis.append(from_coordinates(source, target, values, field))
    return basis


def zero(source: P1Sheaf, target: P1Sheaf, field: FieldSpec = RATIONALS) -> P1Morphism:
    return P1Morphism(source, target, None, field, check=False)


def identity(m: P1Sheaf, field: FieldSpec = RATIONALS) -> P1Morphism:
    R, _, _, U, _ = rings(field.domain)
    n = len(m.summands)
    entries = [[None] * n for _ in range(n)]
    for i, s in enumerate(m.summands):
        entries[i][i] = R.one if s.is_free else U.one
    return P1Morphism(m, m, entries, field, check=False)


def _compose_entry(f_entry, g_entry, a: Summand, b: Summand, c: Summand, field: FieldSpec):
    """(b -> c) after (a -> b) for single summands."""
    if f_entry is None or g_entry is None:
        return None
    kf, kg = entry_kind(b, c), entry_kind(a, b)
    if kf == FORM and kg == FORM:
        return f_entry * g_entry
    if kf == JET and kg == FORM:
        return truncate(f_entry * jet(g_entry, b.twist - a.twist, c.point, field, c.mult), c.mult)
    if kf == JET and kg == JET:
        return truncate(f_entry * g_entry, c.mult)
    return None


def compose(f: P1Morphism, g: P1Morphism) -> P1Morphism:
    """f after g.

    Raises:
        DimensionMismatchError: If the target of g is not the source of f
    """
    if g.target != f.source:
        raise DimensionMismatchError(f"Cannot compose {f} after {g}")
    field = f.field
    A, B, C = g.source.summands, g.target.summands, f.target.summands
    R, _, _, U, _ = rings(field.domain)
    entries = []
    for i, c in enumerate(C):
        row = []
        for j, a in enumerate(A):
            kind = entry_kind(a, c)
            total = None if kind == NONE else (R.zero if kind == FORM else U.zero)
            if total is not None:
                for k, b in enumerate(B):
                    term = _compose_entry(f.entries[i][k], g.entries[k][j], a, b, c, field)
                    if term is not None:
                        total = total + term
            row.append(total)
        entries.append(row)
    return P1Morphism(g.source, f.target, entries, field, check=False)


def section_offsets(m: P1Sheaf, t: int) -> Tuple[List[int], int]:
    offsets, total = [], 0
    for s in m.summands:
        offsets.append(total)
        total += s.section_dim(t)
    return offsets, total


def sections_matrix(f: P1Morphism, t: int) -> Matrix:
    """The linear map H^0(source(t)) -> H^0(target(t)) in monomial and jet coordinates."""
    K = f.K
    field = f.field
    _, _, _, U, u = rings(K)
    src, tgt = f.source.summands, f.target.summands
    src_off, src_dim = section_offsets(f.source, t)
    tgt_off, tgt_dim = section_offsets(f.target, t)
    rows = [[K.zero] * src_dim for _ in range(tgt_dim)]
    for i, c in enumerate(tgt):
        for j, a in enumerate(src):
            e = f.entries[i][j]
            if e is None or not e:
                continue
            n_src = a.section_dim(t)
            for k in range(n_src):
                if a.is_free:
                    deg = a.twist + t
                    section = monomial(K, deg, k)
                    if c.is_free:
                        image = form_coefficients(e * section, c.twist + t)
                    else:
                        image = jet_coefficients(truncate(e * jet(section, deg, c.point, field, c.mult), c.mult), c.mult)
                else:
                    image = jet_coefficients(truncate(e * u**k, c.mult), c.mult)
                for r, value in enumerate(image):
                    rows[tgt_off[i] + r][src_off[j] + k] += value
    return la.matrix(rows, K, (tgt_dim, src_dim))


def twist_morphism(f: P1Morphism, k: int) -> P1Morphism:
    """f tensored with O(k): the same entries between twisted sheaves."""
    return P1Morphism(f.source.twist(k), f.target.twist(k), f.entries, f.field, check=False)


def multiply_by_form(m: P1Sheaf, form: PolyElement, degree: int, field: FieldSpec = RATIONALS) -> P1Morphism:
    """Multiplication by a form of the given degree, m(-degree) -> m."""
    K = field.domain
    source = m.twist(-degree)
    n = len(m.summands)
    entries = [[None] * n for _ in range(n)]
    for i, s in enumerate(m.summands):
        entries[i][i] = form if s.is_free else jet(form, degree, s.point, field, s.mult)
    return P1Morphism(source, m, entries, field, check=False)


def block_morphism(
    sources: Sequence[P1Sheaf], targets: Sequence[P1Sheaf], blocks: Sequence[Sequence[Optional[P1Morphism]]], field: FieldSpec = RATIONALS
) -> P1Morphism:
    """Assemble a morphism between direct sums from blocks ``blocks[i][j]: sources[j] -> targets[i]``.

    The direct sums are re-sorted into canonical summand order.
    """
    src_items = [(s, j, k) for j, sh in enumerate(sources) for k, s in enumerate(sh.summands)]
    tgt_items = [(s, i, k) for i, sh in enumerate(targets) for k, s in enumerate(sh.summands)]
    src_sorted = sorted(src_items, key=lambda item: item[0])
    tgt_sorted = sorted(tgt_items, key=lambda item: item[0])
    source = P1Sheaf.from_summands(s for s, _, _ in src_sorted)
    target = P1Sheaf.from_summands(s for s, _, _ in tgt_sorted)
    entries = []
    for t, i, kt in tgt_sorted:
        row = []
        for s, j, ks in src_sorted:
            block = blocks[i][j]
            row.append(None if block is None else block.entries[kt][ks])
        entries.append(row)
    return P1Morphism(source, target, entries, field, check=False)


def direct_sum_data(parts: Sequence[P1Sheaf], field: FieldSpec = RATIONALS):
    """The direct sum with its injections and projections, in canonical order."""
    injections, projections = [], []
    total = None
    for idx, part in enumerate(parts):
        blocks_in = [[identity(part, field) if i == idx else None] for i in range(len(parts))]
        inj = block_morphism([part], parts, blocks_in, field)
        blocks_out = [[identity(part, field) if j == idx else None for j in range(len(parts))]]
        proj = block_morphism(parts, [part], blocks_out, field)
        injections.append(inj)
        projections.append(proj)
        total = inj.target
    if total is None:
        total = P1Sheaf()
    return total, injections, projections

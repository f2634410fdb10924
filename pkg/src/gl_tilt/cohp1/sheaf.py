"""Split coherent sheaves on the projective line and the local algebra around points.

A sheaf is stored as ``O(a_1) + ... + O(a_r) + T`` where ``T`` is a sum of
skyscrapers ``O/l_P^m`` at rational points. Sections of ``O(a)`` in degree ``t`` are
binary forms of degree ``a + t`` in the monomial basis ``x^(e-k) y^k``; sections of a
skyscraper of length ``m`` are jets ``c_0 + c_1 u + ... + c_(m-1) u^(m-1)`` in the
chart of its point, trivialized by ``w_P^t``.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import Integer, Rational
from sympy.polys.domains.domain import Domain
from sympy.polys.rings import PolyElement, ring

from ..errors import ConfigurationError
from ..exactla import FieldSpec


@dataclass(frozen=True, order=True)
class RationalPoint:
    """A point (l0 : l1) of the projective line, first nonzero coordinate equal to 1."""

    l0: Rational
    l1: Rational

    def __post_init__(self):
        l0, l1 = Rational(self.l0), Rational(self.l1)
        if l0 == 0 and l1 == 0:
            raise ConfigurationError("(0:0) is not a point of the projective line")
        if l0 != 0:
            l0, l1 = Integer(1), l1 / l0
        else:
            l1 = Integer(1)
        object.__setattr__(self, "l0", l0)
        object.__setattr__(self, "l1", l1)

    @classmethod
    def of(cls, coords: Sequence) -> "RationalPoint":
        if len(coords) != 2:
            raise ConfigurationError(f"A point needs two homogeneous coordinates, got {list(coords)}")
        return cls(Rational(coords[0]), Rational(coords[1]))

    def reduce(self, field: FieldSpec) -> "RationalPoint":
        """The same point with coordinates canonical for the field.

        Over GF(q) the normalized coordinates are replaced by their representatives
        in the symmetric range, so equal points compare equal.
        """
        if field.kind == "rational":
            return self
        K = field.domain
        l0, l1 = field.element(self.l0), field.element(self.l1)
        if l0 == K.zero and l1 == K.zero:
            raise ConfigurationError(f"{self} reduces to (0:0) modulo {field.q}")
        if l0 != K.zero:
            l0, l1 = K.one, l1 / l0
        else:
            l1 = K.one
        return RationalPoint(K.to_sympy(l0), K.to_sympy(l1))

    def coordinates(self, field: FieldSpec):
        return field.element(self.l0), field.element(self.l1)

    def as_list(self) -> List[str]:
        return [str(self.l0), str(self.l1)]

    def __str__(self) -> str:
        return f"({self.l0}:{self.l1})"


@dataclass(frozen=True, order=True)
class Summand:
    """One indecomposable summand: ``O(twist)`` or a skyscraper of length ``mult`` at ``point``."""

    kind: str
    twist: int = 0
    point: Optional[RationalPoint] = None
    mult: int = 0

    @property
    def is_free(self) -> bool:
        return self.kind == "free"

    def section_dim(self, t: int) -> int:
        if self.is_free:
            return max(0, self.twist + t + 1)
        return self.mult

    def __str__(self) -> str:
        if self.is_free:
            return f"O({self.twist})"
        return f"O_{self.point}^{self.mult}"


def free(a: int) -> Summand:
    return Summand("free", twist=int(a))


def skyscraper(point: RationalPoint, mult: int = 1) -> Summand:
    if mult < 1:
        raise ConfigurationError(f"Torsion multiplicity must be at least 1, got {mult}")
    return Summand("torsion", point=point, mult=int(mult))


@dataclass(frozen=True)
class P1Sheaf:
    """A coherent sheaf on the projective line in split form."""

    twists: Tuple[int, ...] = ()
    torsion: Tuple[Tuple[RationalPoint, int], ...] = ()

    def __post_init__(self):
        twists = tuple(sorted(int(a) for a in self.twists))
        torsion = []
        for point, mult in self.torsion:
            if not isinstance(point, RationalPoint):
                point = RationalPoint.of(point)
            if int(mult) < 1:
                raise ConfigurationError(f"Torsion multiplicity must be at least 1, got {mult}")
            torsion.append((point, int(mult)))
        object.__setattr__(self, "twists", twists)
        object.__setattr__(self, "torsion", tuple(sorted(torsion)))

    @classmethod
    def from_summands(cls, summands: Iterable[Summand]) -> "P1Sheaf":
        summands = list(summands)
        return cls(
            tuple(s.twist for s in summands if s.is_free),
            tuple((s.point, s.mult) for s in summands if not s.is_free),
        )

    @classmethod
    def line(cls, a: int) -> "P1Sheaf":
        return cls((a,))

    @classmethod
    def point(cls, point: RationalPoint, mult: int = 1) -> "P1Sheaf":
        return cls((), ((point, mult),))

    @property
    def summands(self) -> List[Summand]:
        """Summands in canonical order: twists ascending, then torsion by point and length."""
        return [free(a) for a in self.twists] + [skyscraper(p, m) for p, m in self.torsion]

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def degree(self) -> int:
        return sum(self.twists) + sum(m for _, m in self.torsion)

    @property
    def torsion_length(self) -> int:
        return sum(m for _, m in self.torsion)

    def is_zero(self) -> bool:
        return not self.twists and not self.torsion

    def is_torsion_free(self) -> bool:
        return not self.torsion

    def support(self) -> List[RationalPoint]:
        return sorted({p for p, _ in self.torsion})

    def twist(self, k: int) -> "P1Sheaf":
        """Tensor with O(k); skyscrapers are unchanged."""
        return P1Sheaf(tuple(a + k for a in self.twists), self.torsion)

    def reduce(self, field: FieldSpec) -> "P1Sheaf":
        return P1Sheaf(self.twists, tuple((p.reduce(field), m) for p, m in self.torsion))

    def section_dim(self, t: int) -> int:
        return sum(s.section_dim(t) for s in self.summands)

    def euler_characteristic(self) -> int:
        return self.degree + self.rank

    def direct_sum(self, other: "P1Sheaf") -> "P1Sheaf":
        return P1Sheaf(self.twists + other.twists, self.torsion + other.torsion)

    def to_dict(self) -> dict:
        return {
            "twists": list(self.twists),
            "torsion": [{"point": p.as_list(), "mult": m} for p, m in self.torsion],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "P1Sheaf":
        try:
            return cls(
                tuple(data.get("twists", [])),
                tuple((RationalPoint.of(t["point"]), t["mult"]) for t in data.get("torsion", [])),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigurationError(f"Malformed sheaf {data}: {e}") from e

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(str(s) for s in self.summands)


ZERO = P1Sheaf()


@lru_cache(maxsize=None)
def rings(K: Domain):
    """The form ring K[x, y] and the jet ring K[u], with their generators."""
    R, x, y = ring("x,y", K)
    U, u = ring("u", K)
    return R, x, y, U, u


def monomial(K: Domain, e: int, k: int) -> PolyElement:
    """x^(e-k) y^k."""
    R, x, y, _, _ = rings(K)
    return x ** (e - k) * y**k


def form_coefficients(f: PolyElement, e: int) -> List:
    """Coefficients of a form of degree e in the basis x^(e-k) y^k, k = 0..e."""
    K = f.ring.domain
    return [f.get((e - k, k), K.zero) for k in range(e + 1)]


def form_from_coefficients(K: Domain, coeffs: Sequence, e: int) -> PolyElement:
    R = rings(K)[0]
    return R.from_dict({(e - k, k): c for k, c in enumerate(coeffs) if c != K.zero}) if coeffs else R.zero


def is_homogeneous(f: PolyElement, e: int) -> bool:
    return all(i + j == e for (i, j) in f.keys())


def truncate(p: PolyElement, m: int) -> PolyElement:
    """Drop the terms of degree >= m from a jet."""
    U = p.ring
    return U.from_dict({mon: c for mon, c in p.items() if mon[0] < m})


def jet_coefficients(p: PolyElement, m: int) -> List:
    K = p.ring.domain
    return [p.get((k,), K.zero) for k in range(m)]


def jet_from_coefficients(K: Domain, coeffs: Sequence) -> PolyElement:
    U = rings(K)[3]
    return U.from_dict({(k,): c for k, c in enumerate(coeffs) if c != K.zero})


def valuation(p: PolyElement) -> Optional[int]:
    """Order of vanishing of a jet at u = 0, None for the zero jet."""
    return min((mon[0] for mon in p.keys()), default=None)


def chart(point: RationalPoint, field: FieldSpec):
    """Images of x and y in the local ring at the point.

    With l_P = l1 x - l0 y and w_P = x (or y at the point (0:1)), the quotient
    l_P / w_P becomes the uniformizer u.
    """
    K = field.domain
    _, _, _, U, u = rings(K)
    l0, l1 = point.coordinates(field)
    if l0 != K.zero:
        return U.one, U.ground_new(l1) - u
    return u, U.one


def jet(f: PolyElement, e: int, point: RationalPoint, field: FieldSpec, m: int) -> PolyElement:
    """The jet of f / w_P^e at the point, truncated to length m (f of degree e)."""
    K = field.domain
    U = rings(K)[3]
    X, Y = chart(point, field)
    out = U.zero
    for (i, j), c in f.items():
        if i + j != e:
            raise ConfigurationError(f"Form {f} is not homogeneous of degree {e}")
        out += truncate(X**i * Y**j, m) * U.ground_new(c)
    return truncate(out, m)


def point_form(point: RationalPoint, field: FieldSpec, power: int = 1) -> PolyElement:
    """l_P^power with l_P = l1 x - l0 y, vanishing exactly at the point."""
    K = field.domain
    R, x, y, _, _ = rings(K)
    l0, l1 = point.coordinates(field)
    return (R.ground_new(l1) * x - R.ground_new(l0) * y) ** power

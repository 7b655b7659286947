"""Genus-0 Fuchsian signature machinery.

Ships the table of non-finitely-maximal genus-0 signatures as literal data
with guard predicates, the lcm admissibility test for surface-kernel
epimorphisms onto Z_n, the cyclic-action extension criteria for triangle and
quadrilateral signatures, and the catalog of two-step extension chains with
their single-row equivalents.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Optional, Sequence

from .curve import CyclicCover, Signature, signature_of
from .numtheory import DomainError, inverse_mod, lcm_many, units


# ---------------------------------------------------------------------------
# The signature-extension table


@dataclass(frozen=True)
class GsRow:
    """One table row: an inner signature pattern contained in an outer one."""

    row_id: str
    inner: str
    outer: str
    index: int
    normal: bool


_Match = Callable[[tuple[int, ...]], Optional[tuple[int, ...]]]


def _all_equal(p: tuple[int, ...]) -> bool:
    return len(set(p)) == 1


def _repeated_single(p: tuple[int, ...]) -> Optional[tuple[int, int]]:
    """For a sorted triple with a repeated value: (repeated t, single m); t=m when all equal."""
    if len(p) != 3:
        return None
    if p[0] == p[1] == p[2]:
        return p[0], p[0]
    if p[0] == p[1]:
        return p[0], p[2]
    if p[1] == p[2]:
        return p[1], p[0]
    return None


def _m_row1(p):
    if len(p) == 3 and _all_equal(p) and p[0] >= 4:
        return (3, 3, p[0])
    return None


def _m_row2(p):
    if len(p) == 3 and _all_equal(p) and p[0] >= 4:
        return (2, 3, 2 * p[0])
    return None


def _m_row3(p):
    tm = _repeated_single(p)
    if tm is not None:
        t, m = tm
        if t >= 3 and t + m >= 7:
            return (2, t, 2 * m)
    return None


def _m_rowA(p):
    if len(p) == 4 and _all_equal(p) and p[0] >= 3:
        return (2, 2, 2, p[0])
    return None


def _m_rowB(p):
    if len(p) == 4 and p[0] == p[1] and p[2] == p[3] and p[0] + p[2] >= 5:
        return (2, 2, p[0], p[2])
    return None


def _m_literal(inner: tuple[int, ...], outer: tuple[int, ...]) -> _Match:
    def match(p):
        return outer if p == inner else None

    return match


def _m_row11(p):
    if len(p) == 3 and p[1] == p[2] == 4 * p[0] and p[0] >= 2:
        return (2, 3, 4 * p[0])
    return None


def _m_row12(p):
    if len(p) == 3 and p[1] == p[2] == 2 * p[0] and p[0] >= 3:
        return (2, 4, 2 * p[0])
    return None


def _m_row13(p):
    if len(p) == 3 and p[0] == 3 and p[2] == 3 * p[1] and p[1] >= 3:
        return (2, 3, 3 * p[1])
    return None


def _m_row14(p):
    if len(p) == 3 and p[0] == 2 and p[2] == 2 * p[1] and p[1] >= 4:
        return (2, 3, 2 * p[1])
    return None


_TABLE: tuple[tuple[GsRow, _Match], ...] = (
    (GsRow("1", "(t,t,t), t>=4", "(3,3,t)", 3, True), _m_row1),
    (GsRow("2", "(t,t,t), t>=4", "(2,3,2t)", 6, True), _m_row2),
    (GsRow("3", "(t,t,m), t>=3, t+m>=7", "(2,t,2m)", 2, True), _m_row3),
    (GsRow("A", "(t,t,t,t), t>=3", "(2,2,2,t)", 4, True), _m_rowA),
    (GsRow("B", "(t,t,m,m), t+m>=5", "(2,2,t,m)", 2, True), _m_rowB),
    (GsRow("4", "(7,7,7)", "(2,3,7)", 24, False), _m_literal((7, 7, 7), (2, 3, 7))),
    (GsRow("5", "(2,7,7)", "(2,3,7)", 9, False), _m_literal((2, 7, 7), (2, 3, 7))),
    (GsRow("6", "(3,3,7)", "(2,3,7)", 8, False), _m_literal((3, 3, 7), (2, 3, 7))),
    (GsRow("7", "(4,8,8)", "(2,3,8)", 12, False), _m_literal((4, 8, 8), (2, 3, 8))),
    (GsRow("8", "(3,8,8)", "(2,3,8)", 10, False), _m_literal((3, 8, 8), (2, 3, 8))),
    (GsRow("9", "(9,9,9)", "(2,3,9)", 12, False), _m_literal((9, 9, 9), (2, 3, 9))),
    (GsRow("10", "(4,4,5)", "(2,4,5)", 6, False), _m_literal((4, 4, 5), (2, 4, 5))),
    (GsRow("11", "(t,4t,4t), t>=2", "(2,3,4t)", 6, False), _m_row11),
    (GsRow("12", "(t,2t,2t), t>=3", "(2,4,2t)", 4, False), _m_row12),
    (GsRow("13", "(3,t,3t), t>=3", "(2,3,3t)", 4, False), _m_row13),
    (GsRow("14", "(2,t,2t), t>=4", "(2,3,2t)", 3, False), _m_row14),
)


def gs_row(row_id: str) -> GsRow:
    for row, _ in _TABLE:
        if row.row_id == row_id:
            return row
    raise DomainError(f"no signature-extension row {row_id!r}")


@dataclass(frozen=True)
class GsExtension:
    """A table row instantiated at a concrete inner signature."""

    row: GsRow
    outer: Signature

    @property
    def index(self) -> int:
        return self.row.index


def gs_extensions(sig: Signature) -> list[GsExtension]:
    """All table rows whose inner pattern matches; empty iff sig is finitely maximal."""
    _require_genus0(sig)
    out: list[GsExtension] = []
    for row, match in _TABLE:
        outer = match(sig.periods)
        if outer is not None:
            out.append(GsExtension(row, Signature(0, outer)))
    return out


def is_finitely_maximal(sig: Signature) -> bool:
    """True iff no Fuchsian group with this signature embeds in a larger one generically."""
    return not gs_extensions(sig)


def gs_table_json() -> list[dict]:
    return [
        {
            "row_id": row.row_id,
            "inner": row.inner,
            "outer": row.outer,
            "index": row.index,
            "normal": row.normal,
        }
        for row, _ in _TABLE
    ]


def _require_genus0(sig: Signature) -> None:
    if sig.genus != 0:
        raise DomainError("only genus-0 signatures are in scope")


# ---------------------------------------------------------------------------
# Admissibility of cyclic surface-kernel epimorphisms


def harvey_admissible(sig: Signature, n: int) -> bool:
    """lcm condition for a genus-0 surface-kernel epimorphism onto Z_n.

    Requires n to equal the lcm of all periods and the lcm of every
    (r-1)-subset of them.
    """
    _require_genus0(sig)
    if n < 2:
        raise DomainError(f"target order must be >= 2, got {n}")
    periods = sig.periods
    if len(periods) < 2:
        return False
    if lcm_many(periods) != n:
        return False
    for i in range(len(periods)):
        rest = periods[:i] + periods[i + 1 :]
        if lcm_many(rest) != n:
            return False
    return True


# ---------------------------------------------------------------------------
# Surface-kernel epimorphism data


@dataclass(frozen=True)
class SkepSpec:
    """A surface-kernel epimorphism onto Z_n: x_i -> T^{z_i} with matching periods."""

    signature: Signature
    n: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        _require_genus0(self.signature)
        if self.n < 2:
            raise DomainError(f"target order must be >= 2, got {self.n}")
        images = tuple(int(z) % self.n for z in self.images)
        object.__setattr__(self, "images", images)
        periods = self.signature.periods
        if len(images) != len(periods):
            raise DomainError("one image required per period")
        for z, m in zip(images, periods):
            if z == 0 or self.n // gcd(self.n, z) != m:
                raise DomainError(
                    f"image T^{z} has order {self.n // gcd(self.n, z) if z else 1}, expected period {m}"
                )
        if sum(images) % self.n:
            raise DomainError("images do not multiply to the identity")


def skep_of_cover(cover: CyclicCover) -> SkepSpec:
    """The epimorphism induced by a cover: each branch exponent k maps x_i to T^k.

    Period/image pairs are sorted by (period, image) so equal covers give
    equal specs.
    """
    sig = signature_of(cover)
    n = cover.n
    pairs = sorted((n // gcd(n, k), k) for k in cover.all_exponents())
    return SkepSpec(sig, n, tuple(z for _, z in pairs))


# ---------------------------------------------------------------------------
# Extension criteria for cyclic actions


@dataclass(frozen=True)
class CbMatch:
    """One extension criterion that applies: outer signature and order multiplier."""

    case: int
    outer: Signature
    multiplier: int


@dataclass(frozen=True)
class CbVerdict:
    extendable: bool
    matches: tuple[CbMatch, ...]

    @property
    def case(self) -> int | None:
        return self.matches[0].case if self.matches else None


def _quad_case1(n: int, images: tuple[int, ...]) -> bool:
    for pivot in range(4):
        z = images[pivot]
        if gcd(z, n) != 1:
            continue
        s = inverse_mod(z, n)
        rest = [images[i] * s % n for i in range(4) if i != pivot]
        a, b, c = rest
        if (
            (a * b * c) % n == 1 % n
            and (a * a) % n == 1 % n
            and (b * b) % n == 1 % n
            and (c * c) % n == 1 % n
            and (1 + a + b + c) % n == 0
        ):
            return True
    return False


def _triangle_case3(n: int, images: tuple[int, ...]) -> bool:
    target = sorted(images)
    for j in units(n):
        if j != 1 and (j * j * j) % n == 1 % n:
            if sorted(z * j % n for z in images) == target:
                return True
    return False


def _swap_exists(n: int, z1: int, z2: int) -> bool:
    if z1 == z2:
        return True
    if gcd(z1, n) != 1:
        return False
    u = z2 * inverse_mod(z1, n) % n
    return (u * u) % n == 1 % n


def cb_extendable(skep: SkepSpec) -> CbVerdict:
    """Which extension criteria apply to a cyclic action with 3 or 4 periods.

    Cases: (1) all-n quadrilateral with the exponent congruences, multiplier 4;
    (2) (n,n,m,m) quadrilateral, n+m>=5, multiplier 2; (3) all-n triangle with
    an order-3 unit permuting the images, multiplier 3; (4) (n,n,m) triangle,
    m | n, n+m>=7, equal or involution-swapped n-period images, multiplier 2;
    (5) the (3,4,12) triangle with images a unit multiple of (8,3,1),
    multiplier 4.  All matching cases are reported in ascending case order;
    for triangle signatures the empty verdict is exact: the cyclic action is
    the full automorphism group.
    """
    sig = skep.signature
    n = skep.n
    periods = sig.periods
    images = skep.images
    if len(periods) not in (3, 4):
        raise DomainError("extension criteria need 3 or 4 periods")
    matches: list[CbMatch] = []
    if len(periods) == 4:
        if periods == (n, n, n, n) and _quad_case1(n, images):
            matches.append(CbMatch(1, Signature(0, (2, 2, 2, n)), 4))
        if periods[0] == periods[1] and periods[2] == periods[3] and periods[3] == n:
            m = periods[0]
            if m + n >= 5:
                matches.append(CbMatch(2, Signature(0, (2, 2, m, n)), 2))
    else:
        if periods == (n, n, n) and n >= 4 and _triangle_case3(n, images):
            matches.append(CbMatch(3, Signature(0, (3, 3, n)), 3))
        # case 4 scans every choice of the (n, n) pair
        case4 = None
        for i in range(3):
            for j in range(i + 1, 3):
                if periods[i] == periods[j] == n:
                    k = 3 - i - j
                    m = periods[k]
                    if n % m == 0 and n + m >= 7 and _swap_exists(n, images[i], images[j]):
                        case4 = CbMatch(4, Signature(0, (2, n, 2 * m)), 2)
        if case4 is not None:
            matches.append(case4)
        if periods == (3, 4, 12) and n == 12:
            by_period = dict(zip(periods, images))
            for k in units(12):
                if (
                    by_period[12] == k
                    and by_period[4] == 3 * k % 12
                    and by_period[3] == 8 * k % 12
                ):
                    matches.append(CbMatch(5, Signature(0, (2, 3, 12)), 4))
                    break
    return CbVerdict(bool(matches), tuple(matches))


# ---------------------------------------------------------------------------
# Chained extensions


@dataclass(frozen=True)
class ChainStep:
    """One table-row application inside a chain."""

    row_id: str
    signature: Signature
    index: int


@dataclass(frozen=True)
class ExtensionChain:
    """A two-step composite of table rows, equivalent to a single row; dead
    chains are composites along which no cyclic skep survives."""

    item: int
    steps: tuple[ChainStep, ...]
    equivalent_row_id: str
    live: bool


def _chain(item: int, steps: Sequence[tuple[str, tuple[int, ...]]], equiv: str, live: bool) -> ExtensionChain:
    built = tuple(
        ChainStep(row_id, Signature(0, periods), gs_row(row_id).index)
        for row_id, periods in steps
    )
    composite = 1
    for step in built:
        composite *= step.index
    assert composite == gs_row(equiv).index, "chain indices do not compose to the equivalent row"
    return ExtensionChain(item, built, equiv, live)


def extension_chains(sig: Signature) -> list[ExtensionChain]:
    """All catalogued two-step extension chains starting at a triangle signature."""
    _require_genus0(sig)
    p = sig.periods
    if len(p) != 3:
        raise DomainError("chains are catalogued for triangle signatures only")
    out: list[ExtensionChain] = []
    if _all_equal(p) and p[0] >= 4:
        t = p[0]
        out.append(_chain(1, [("1", (3, 3, t)), ("3", (2, 3, 2 * t))], "2", live=False))
        if t == 7:
            out.append(_chain(2, [("1", (3, 3, 7)), ("6", (2, 3, 7))], "4", live=True))
        if t == 9:
            out.append(_chain(3, [("1", (3, 3, 9)), ("13", (2, 3, 9))], "9", live=False))
        out.append(_chain(6, [("3", (2, t, 2 * t)), ("14", (2, 3, 2 * t))], "2", live=False))
    if p[1] == p[2] == 2 * p[0] and p[0] >= 3:
        t = p[0]
        out.append(_chain(4, [("3", (2, 2 * t, 2 * t)), ("3", (2, 4, 2 * t))], "12", live=True))
    if p == (4, 8, 8):
        out.append(_chain(5, [("3", (2, 8, 8)), ("11", (2, 3, 8))], "7", live=True))
        out.append(_chain(8, [("12", (2, 4, 8)), ("14", (2, 3, 8))], "7", live=True))
    if p[1] == p[2] == 4 * p[0] and p[0] >= 2:
        t = p[0]
        out.append(_chain(7, [("3", (2, 2 * t, 4 * t)), ("14", (2, 3, 4 * t))], "11", live=True))
    out.sort(key=lambda ch: ch.item)
    return out

"""Cyclic covers y^n = prod (x - e_i)^{k_i} of the sphere.

Models the covers with exact branch-point labels, computes irreducibility,
genus and the genus-0 uniformizing signature, and houses the independent
monodromy-permutation genus oracle used to cross-check the genus formula.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .numtheory import DomainError, gcd_many, units


# ---------------------------------------------------------------------------
# Branch points


@dataclass(frozen=True)
class BranchPoint:
    """An exact point label: a rational number or a primitive root of unity.

    Roots of unity are stored as reduced index/order pairs; e^(2*pi*i*j/d)
    with d <= 2 normalizes to the rational 1 or -1, so equality of labels
    coincides with equality of the underlying complex numbers.
    """

    kind: str  # "rational" or "root"
    rational: Fraction = Fraction(0)
    root_index: int = 0
    root_order: int = 1

    @staticmethod
    def at(value: Fraction | int) -> "BranchPoint":
        return BranchPoint("rational", Fraction(value))

    @staticmethod
    def root_of_unity(index: int, order: int) -> "BranchPoint":
        if order < 1:
            raise DomainError("root of unity order must be positive")
        index %= order
        g = gcd(index, order) if index else order
        index, order = index // g, order // g
        if order == 1:
            return BranchPoint.at(1)
        if order == 2:
            return BranchPoint.at(-1)
        return BranchPoint("root", Fraction(0), index, order)

    def value(self) -> complex:
        if self.kind == "rational":
            return complex(self.rational)
        return cmath.exp(2j * cmath.pi * self.root_index / self.root_order)

    def label(self) -> str:
        if self.kind == "rational":
            return str(self.rational)
        return f"zeta_{self.root_order}^{self.root_index}"

    @staticmethod
    def from_label(text: str) -> "BranchPoint":
        text = text.strip()
        if text.startswith("zeta_"):
            try:
                order_s, index_s = text[5:].split("^")
                return BranchPoint.root_of_unity(int(index_s), int(order_s))
            except (ValueError, DomainError) as exc:
                raise DomainError(f"bad point label {text!r}") from exc
        try:
            return BranchPoint.at(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad point label {text!r}") from exc


# ---------------------------------------------------------------------------
# Covers


@dataclass(frozen=True)
class CyclicCover:
    """y^n = constant * prod (x - e_i)^{k_i}, with the implicit branching over infinity.

    Exponents live in [1, n-1]; infinity_exponent in [0, n-1] (0 means
    unbranched over infinity) and is determined by the finite exponents via
    the mod-n sum rule.
    """

    n: int
    branches: tuple[tuple[BranchPoint, int], ...]
    infinity_exponent: int = 0
    constant: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DomainError(f"cover degree must be >= 2, got {self.n}")
        branches = tuple((pt, int(k)) for pt, k in self.branches)
        object.__setattr__(self, "branches", branches)
        if not branches:
            raise DomainError("cover needs at least one finite branch point")
        for _, k in branches:
            if not 1 <= k <= self.n - 1:
                raise DomainError(f"branch exponent {k} outside [1, {self.n - 1}]")
        points = [pt for pt, _ in branches]
        if len(set(points)) != len(points):
            raise DomainError("non-distinct roots")
        if not 0 <= self.infinity_exponent <= self.n - 1:
            raise DomainError("infinity exponent outside [0, n-1]")
        total = sum(k for _, k in branches) + self.infinity_exponent
        if total % self.n:
            raise DomainError("exponents do not sum to 0 mod n")
        if self.constant == 0:
            raise DomainError("constant must be nonzero")

    def exponents(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.branches)

    def all_exponents(self) -> tuple[int, ...]:
        """Finite exponents plus the infinity exponent when nonzero."""
        out = self.exponents()
        if self.infinity_exponent:
            out += (self.infinity_exponent,)
        return out


def _build_cover(
    n: int,
    points_exponents: Iterable[tuple[BranchPoint, int]],
    constant: Fraction = Fraction(1),
) -> CyclicCover:
    reduced: list[tuple[BranchPoint, int]] = []
    seen: set[BranchPoint] = set()
    total = 0
    for pt, k in points_exponents:
        if pt in seen:
            raise DomainError("non-distinct roots")
        seen.add(pt)
        k_red = k % n
        total += k_red
        if k_red:
            reduced.append((pt, k_red))
    return CyclicCover(n, tuple(reduced), (-total) % n, constant)


def belyi_cover(n: int, a: int, b: int, c: int) -> CyclicCover:
    """y^n = x^a (x-1)^b (x+1)^c with exponents reduced mod n."""
    if min(a, b, c) < 1:
        raise DomainError("exponents must be positive")
    return _build_cover(
        n, [(BranchPoint.at(0), a), (BranchPoint.at(1), b), (BranchPoint.at(-1), c)]
    )


def lefschetz_cover(p: int, a: int) -> CyclicCover:
    """y^p = x^a (x+1)."""
    if a < 1:
        raise DomainError("exponent must be positive")
    return _build_cover(p, [(BranchPoint.at(0), a), (BranchPoint.at(-1), 1)])


def fermat_cover(n: int, d: int) -> CyclicCover:
    """y^n + x^d = 1: branch points at the d-th roots of unity, each exponent 1."""
    if d < 1:
        raise DomainError("exponent of x must be positive")
    pts = [(BranchPoint.root_of_unity(j, d), 1) for j in range(d)]
    return _build_cover(n, pts, Fraction(-1))


# ---------------------------------------------------------------------------
# Parsing


class _CurveCursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> DomainError:
        return DomainError(f"curve syntax error at position {self.pos}: {msg}")

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self, token: str) -> None:
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            raise self.error(f"expected {token!r}")
        self.pos += len(token)

    def try_take(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def take_uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def take_rational(self) -> Fraction:
        sign = 1
        if self.try_take("-"):
            sign = -1
        elif self.try_take("+"):
            pass
        num = self.take_uint()
        if self.try_take("/"):
            den = self.take_uint()
            if den == 0:
                raise self.error("zero denominator")
            return Fraction(sign * num, den)
        return Fraction(sign * num)


def _parse_exponent(cur: _CurveCursor) -> int:
    if cur.try_take("^"):
        e = cur.take_uint()
        if e < 1:
            raise cur.error("exponent must be positive")
        return e
    return 1


def parse_curve(text: str) -> CyclicCover:
    """Parse ``y^N = [c] x^K (x-R)^K ...`` or the Fermat form ``y^N + x^D = 1``.

    Exponents are reduced mod N (a factor whose exponent reduces to 0 is an
    N-th power and is dropped); the infinity exponent is the mod-N complement
    of the finite exponent sum.
    """
    cur = _CurveCursor(text)
    cur.take("y")
    cur.take("^")
    n = cur.take_uint()
    if n < 2:
        raise DomainError(f"cover degree must be >= 2, got {n}")
    if cur.try_take("+"):
        cur.take("x")
        cur.take("^")
        d = cur.take_uint()
        if d < 1:
            raise cur.error("exponent must be positive")
        cur.take("=")
        cur.take("1")
        if cur.peek() is not None:
            raise cur.error("trailing input")
        return fermat_cover(n, d)
    cur.take("=")
    constant = Fraction(1)
    nxt = cur.peek()
    if nxt is not None and (nxt.isdigit() or nxt in "+-"):
        constant = cur.take_rational()
        if constant == 0:
            raise cur.error("constant must be nonzero")
        cur.try_take("*")
    factors: list[tuple[BranchPoint, int]] = []
    while True:
        nxt = cur.peek()
        if nxt is None:
            break
        if nxt == "x":
            cur.take("x")
            factors.append((BranchPoint.at(0), _parse_exponent(cur)))
        elif nxt == "(":
            cur.take("(")
            cur.take("x")
            if cur.try_take("-"):
                sign = 1
            elif cur.try_take("+"):
                sign = -1
            else:
                raise cur.error("expected '-' or '+' after x")
            root = cur.take_rational()
            if root <= 0:
                raise cur.error("root literal must be positive")
            cur.take(")")
            factors.append((BranchPoint.at(sign * root), _parse_exponent(cur)))
        else:
            raise cur.error("expected a factor")
        cur.try_take("*")
    if not factors:
        raise cur.error("expected at least one factor")
    return _build_cover(n, factors, constant)


# ---------------------------------------------------------------------------
# Invariants


def is_irreducible(cover: CyclicCover) -> bool:
    """True iff gcd(n, k_1, ..., k_m) = 1 over the finite exponents."""
    return gcd_many((cover.n,) + cover.exponents()) == 1


def _require_irreducible(cover: CyclicCover) -> None:
    if not is_irreducible(cover):
        raise DomainError("cover is reducible (exponents share a factor with n)")


def genus(cover: CyclicCover) -> int:
    """Genus of the smooth model: (2 + (m-2)n - sum gcd(n, k_i)) / 2.

    Branching over infinity counts as an extra branch point with its own
    exponent.
    """
    _require_irreducible(cover)
    ks = cover.all_exponents()
    m = len(ks)
    n = cover.n
    chi_term = 2 + (m - 2) * n - sum(gcd(n, k) for k in ks)
    assert chi_term % 2 == 0, "genus formula produced an odd numerator"
    g = chi_term // 2
    assert g >= 0, "genus formula produced a negative value"
    return g


@dataclass(frozen=True)
class Signature:
    """Orbit-genus and periods of a Fuchsian group; genus 0 throughout.

    Periods are a multiset and are normalized to ascending order.
    """

    genus: int
    periods: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise DomainError("signature genus must be nonnegative")
        object.__setattr__(self, "periods", tuple(sorted(int(p) for p in self.periods)))
        if any(p < 2 for p in self.periods):
            raise DomainError("signature periods must be >= 2")


def signature_of(cover: CyclicCover) -> Signature:
    """Genus-0 signature with one period n/gcd(n,k) per branch point, 1s dropped, sorted."""
    _require_irreducible(cover)
    n = cover.n
    periods = sorted(n // gcd(n, k) for k in cover.all_exponents())
    return Signature(0, tuple(p for p in periods if p > 1))


def scale_exponents(cover: CyclicCover, l: int) -> CyclicCover:
    """Multiply every exponent by a unit l mod n; an equivalent model of the same cover."""
    n = cover.n
    if gcd(l, n) != 1:
        raise DomainError(f"scale factor {l} is not a unit mod {n}")
    branches = tuple((pt, (l * k) % n) for pt, k in cover.branches)
    return CyclicCover(n, branches, (l * cover.infinity_exponent) % n, cover.constant)


# ---------------------------------------------------------------------------
# Triple equivalence


def _validate_triple(n: int, a: int, b: int, c: int) -> None:
    if n < 2:
        raise DomainError(f"cover degree must be >= 2, got {n}")
    for v in (a, b, c):
        if not 1 <= v <= n - 1:
            raise DomainError(f"triple entry {v} outside [1, {n - 1}]")
    if (a + b + c) % n:
        raise DomainError("triple does not sum to 0 mod n")
    if gcd_many([n, a, b, c]) != 1:
        raise DomainError("triple shares a common factor with n")


def canonical_triple(n: int, a: int, b: int, c: int) -> tuple[int, int, int]:
    """Lexicographically least representative of the triple's equivalence class.

    Two triples are equivalent when one is a unit multiple mod n of a
    permutation of the other.
    """
    _validate_triple(n, a, b, c)
    best: tuple[int, int, int] | None = None
    for k in units(n):
        scaled = tuple(sorted(((k * a) % n, (k * b) % n, (k * c) % n)))
        if best is None or scaled < best:
            best = scaled
    assert best is not None
    return best


def triple_orbit(n: int, a: int, b: int, c: int) -> set[tuple[int, int, int]]:
    """All ordered triples equivalent to (a, b, c): unit rescalings and permutations."""
    from itertools import permutations

    _validate_triple(n, a, b, c)
    out: set[tuple[int, int, int]] = set()
    for k in units(n):
        scaled = ((k * a) % n, (k * b) % n, (k * c) % n)
        out.update(permutations(scaled))
    return out


# ---------------------------------------------------------------------------
# Monodromy oracle


def monodromy_genus(cover: CyclicCover) -> int:
    """Genus recomputed from the cycle decomposition of the sheet monodromy.

    Builds the actual permutation s -> s + k mod n for every branch point
    (infinity included), checks that the product of all of them is the
    identity, counts cycles by traversal, and reads the genus off the
    Euler characteristic 2 - 2g = 2n - sum (n - c_j).
    """
    _require_irreducible(cover)
    n = cover.n
    ks = cover.all_exponents()
    perms = [[(s + k) % n for s in range(n)] for k in ks]
    product = list(range(n))
    for perm in perms:
        product = [perm[s] for s in product]
    assert product == list(range(n)), "monodromy product is not the identity"
    deficiency = 0
    for perm in perms:
        seen = [False] * n
        cycles = 0
        for s in range(n):
            if not seen[s]:
                cycles += 1
                t = s
                while not seen[t]:
                    seen[t] = True
                    t = perm[t]
        deficiency += n - cycles
    chi = 2 * n - deficiency
    assert chi % 2 == 0, "odd Euler characteristic from monodromy"
    g = (2 - chi) // 2
    assert g >= 0, "negative genus from monodromy"
    return g


# ---------------------------------------------------------------------------
# Serialization


def _point_to_json(pt: BranchPoint) -> str:
    return pt.label()


def cover_to_json_dict(cover: CyclicCover) -> dict:
    out: dict = {
        "n": cover.n,
        "branches": [
            {"point": _point_to_json(pt), "exponent": k} for pt, k in cover.branches
        ],
        "infinity_exponent": cover.infinity_exponent,
    }
    if cover.constant != 1:
        out["constant"] = str(cover.constant)
    return out


def cover_from_json_dict(obj: dict) -> CyclicCover:
    try:
        n = int(obj["n"])
        branches = tuple(
            (BranchPoint.from_label(str(b["point"])), int(b["exponent"]))
            for b in obj["branches"]
        )
        infinity = int(obj.get("infinity_exponent", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"bad cover JSON: {exc}") from exc
    constant = Fraction(str(obj.get("constant", "1")))
    return CyclicCover(n, branches, infinity, constant)

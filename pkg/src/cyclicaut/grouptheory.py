"""Finitely presented and permutation group engine.

Certifies group orders and abelian invariants independently of any
classification table: Todd-Coxeter coset enumeration (HLT strategy with
deterministic definition order, coincidence handling and a lookahead
collapse pass), exact-integer Smith normal form, and breadth-first
permutation closure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd, lcm
from string import ascii_lowercase
from typing import Iterable, Sequence, Union

from .numtheory import DomainError


class BudgetExceeded(Exception):
    """An enumeration or closure outgrew its configured budget.

    For presentations this signals a possibly-infinite group; the caller
    decides whether that is an error or an expected verdict.
    """

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what} exceeded budget {budget}")
        self.what = what
        self.budget = budget


# ---------------------------------------------------------------------------
# Presentations


def _default_names(count: int) -> tuple[str, ...]:
    if count <= len(ascii_lowercase):
        return tuple(ascii_lowercase[:count])
    return tuple(f"g{i}" for i in range(1, count + 1))


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: relator words over signed 1-based generator indices."""

    generator_count: int
    relators: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.generator_count < 1:
            raise DomainError("presentation needs at least one generator")
        object.__setattr__(self, "relators", tuple(tuple(w) for w in self.relators))
        for w in self.relators:
            if not w:
                raise DomainError("relator words must be nonempty")
            for x in w:
                if x == 0 or abs(x) > self.generator_count:
                    raise DomainError(f"relator letter {x} out of range")
        names = tuple(self.names) or _default_names(self.generator_count)
        if len(names) != self.generator_count or len(set(names)) != len(names):
            raise DomainError("generator names must be distinct and match the count")
        object.__setattr__(self, "names", names)

    def to_text(self) -> str:
        return presentation_to_text(self)


def inverse_word(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(word))


def _word_to_text(word: Sequence[int], names: Sequence[str]) -> str:
    parts: list[str] = []
    i = 0
    while i < len(word):
        x = word[i]
        j = i
        while j < len(word) and word[j] == x:
            j += 1
        run = j - i
        name = names[abs(x) - 1]
        exp = run if x > 0 else -run
        parts.append(name if exp == 1 else f"{name}^{exp}")
        i = j
    return "*".join(parts)


def presentation_to_text(pres: Presentation) -> str:
    gens = ",".join(pres.names)
    rels = ", ".join(_word_to_text(w, pres.names) for w in pres.relators)
    return f"<{gens} | {rels}>"


class _Lexer:
    SYMBOLS = set("<>|,^()[]*")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> DomainError:
        return DomainError(f"presentation syntax error at position {self.pos}: {msg}")

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take_symbol(self, sym: str) -> None:
        c = self.peek()
        if c != sym:
            raise self.error(f"expected {sym!r}")
        self.pos += 1

    def try_symbol(self, sym: str) -> bool:
        if self.peek() == sym:
            self.pos += 1
            return True
        return False

    def take_name(self) -> str:
        c = self.peek()
        if c is None or not (c.isalpha() or c == "_"):
            raise self.error("expected a generator name")
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]

    def take_int(self) -> int:
        c = self.peek()
        neg = False
        if c == "-":
            neg = True
            self.pos += 1
            c = self.peek()
        if c is None or not c.isdigit():
            raise self.error("expected an integer")
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        value = int(self.text[start : self.pos])
        return -value if neg else value


def _parse_word(lx: _Lexer, index: dict[str, int]) -> tuple[int, ...]:
    out: list[int] = []
    while True:
        c = lx.peek()
        if c is None:
            raise lx.error("unterminated word")
        if c == "(":
            lx.take_symbol("(")
            inner = _parse_word(lx, index)
            lx.take_symbol(")")
        elif c == "[":
            lx.take_symbol("[")
            u = _parse_word(lx, index)
            lx.take_symbol(",")
            v = _parse_word(lx, index)
            lx.take_symbol("]")
            inner = u + v + inverse_word(u) + inverse_word(v)
        elif c.isalpha() or c == "_":
            name = lx.take_name()
            if name not in index:
                raise lx.error(f"unknown generator {name!r}")
            inner = (index[name],)
        else:
            raise lx.error("expected a factor")
        if lx.try_symbol("^"):
            e = lx.take_int()
            if e >= 0:
                inner = inner * e
            else:
                inner = inverse_word(inner) * (-e)
        out.extend(inner)
        nxt = lx.peek()
        if nxt == "*":
            lx.take_symbol("*")
            continue
        if nxt is not None and (nxt.isalpha() or nxt in "([_"):
            continue
        return tuple(out)


def parse_presentation(text: str) -> Presentation:
    """Parse ``<a,b | a^2, b^3, (a*b)^7>`` or the JSON relator form."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return _presentation_from_json(stripped)
    lx = _Lexer(text)
    lx.take_symbol("<")
    names = [lx.take_name()]
    while lx.try_symbol(","):
        names.append(lx.take_name())
    lx.take_symbol("|")
    index = {nm: i + 1 for i, nm in enumerate(names)}
    relators: list[tuple[int, ...]] = []
    if lx.peek() != ">":
        relators.append(_parse_word(lx, index))
        while lx.try_symbol(","):
            relators.append(_parse_word(lx, index))
    lx.take_symbol(">")
    if lx.peek() is not None:
        raise lx.error("trailing input")
    return Presentation(len(names), tuple(relators), tuple(names))


def _presentation_from_json(text: str) -> Presentation:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"presentation syntax error at position {exc.pos}: bad JSON") from exc
    gens = obj.get("generators")
    rels = obj.get("relators")
    if not isinstance(gens, int) or not isinstance(rels, list):
        raise DomainError("presentation JSON needs integer 'generators' and list 'relators'")
    names = tuple(obj.get("names", ())) or ()
    return Presentation(gens, tuple(tuple(w) for w in rels), names)


def triangle_presentation(l: int, m: int, k: int) -> Presentation:
    """The triangle group ``<x,y | x^l, y^m, (x*y)^k>``."""
    for v in (l, m, k):
        if v < 2:
            raise DomainError(f"triangle periods must be >= 2, got {v}")
    return Presentation(2, ((1,) * l, (2,) * m, (1, 2) * k), ("x", "y"))


def dihedral_presentation(n: int) -> Presentation:
    """``<u,v | u^2, v^n, (u*v)^2>``, of order 2n."""
    if n < 2:
        raise DomainError(f"dihedral parameter must be >= 2, got {n}")
    return Presentation(2, ((1, 1), (2,) * n, (1, 2, 1, 2)), ("u", "v"))


# ---------------------------------------------------------------------------
# Todd-Coxeter coset enumeration (HLT with lookahead)


class _NeedLookahead(Exception):
    pass


class _CosetTable:
    def __init__(self, generator_count: int, relators: Sequence[Sequence[int]], max_cosets: int):
        self.ncols = 2 * generator_count
        self.words = [tuple(self._col(x) for x in w) for w in relators]
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[0] * self.ncols, [0] * self.ncols]
        self.parent = [0, 1]
        self.alive = 1

    @staticmethod
    def _col(x: int) -> int:
        return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1

    def rep(self, k: int) -> int:
        parent = self.parent
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    def _define(self, alpha: int, c: int) -> int:
        if self.alive >= self.max_cosets:
            raise _NeedLookahead
        beta = len(self.table)
        self.table.append([0] * self.ncols)
        self.parent.append(beta)
        self.alive += 1
        self.table[alpha][c] = beta
        self.table[beta][c ^ 1] = alpha
        return beta

    def _merge(self, a: int, b: int, queue: list[int]) -> None:
        ra, rb = self.rep(a), self.rep(b)
        if ra == rb:
            return
        lo, hi = (ra, rb) if ra < rb else (rb, ra)
        self.parent[hi] = lo
        self.alive -= 1
        queue.append(hi)

    def _coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        qi = 0
        table = self.table
        while qi < len(queue):
            gamma = queue[qi]
            qi += 1
            row = table[gamma]
            for c in range(self.ncols):
                delta = row[c]
                if not delta:
                    continue
                table[delta][c ^ 1] = 0
                mu = self.rep(gamma)
                nu = self.rep(delta)
                if table[mu][c]:
                    self._merge(nu, table[mu][c], queue)
                elif table[nu][c ^ 1]:
                    self._merge(mu, table[nu][c ^ 1], queue)
                else:
                    table[mu][c] = nu
                    table[nu][c ^ 1] = mu

    def scan(self, alpha: int, word: Sequence[int], fill: bool) -> None:
        table = self.table
        f = alpha
        i = 0
        b = alpha
        j = len(word) - 1
        while True:
            while i <= j:
                nxt = table[f][word[i]]
                if not nxt:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self._coincidence(f, b)
                return
            while j >= i:
                nxt = table[b][word[j] ^ 1]
                if not nxt:
                    break
                b = nxt
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if j == i:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            if not fill:
                return
            self._define(f, word[i])

    def lookahead(self) -> None:
        for beta in range(1, len(self.table)):
            if self.rep(beta) != beta:
                continue
            for w in self.words:
                if self.rep(beta) != beta:
                    break
                self.scan(beta, w, fill=False)

    def live_cosets(self) -> list[int]:
        return [k for k in range(1, len(self.table)) if self.rep(k) == k]


def coset_enumerate(pres: Presentation, max_cosets: int = 1_000_000) -> int:
    """Order of the presented group by coset enumeration over the trivial subgroup.

    HLT strategy: cosets are processed in ascending index order, each scanned
    against every relator, remaining columns filled by definition.  When the
    live-coset count reaches ``max_cosets`` a full lookahead pass (scans
    without definitions) tries to collapse the table; if that cannot reclaim
    at least 5% headroom the enumeration stops with :class:`BudgetExceeded`.
    """
    if max_cosets < 1:
        raise DomainError("max_cosets must be positive")
    ct = _CosetTable(pres.generator_count, pres.relators, max_cosets)
    headroom = max(1, max_cosets // 20)
    alpha = 1
    while alpha < len(ct.table):
        if ct.rep(alpha) == alpha:
            while True:
                try:
                    for w in ct.words:
                        if ct.rep(alpha) != alpha:
                            break
                        ct.scan(alpha, w, fill=True)
                    if ct.rep(alpha) == alpha:
                        row = ct.table[alpha]
                        for c in range(ct.ncols):
                            if ct.rep(alpha) != alpha:
                                break
                            if not row[c]:
                                ct._define(alpha, c)
                    break
                except _NeedLookahead:
                    ct.lookahead()
                    if ct.alive > max_cosets - headroom:
                        raise BudgetExceeded("coset enumeration", max_cosets) from None
        alpha += 1
    _validate_closed_table(ct)
    return ct.alive


def _validate_closed_table(ct: _CosetTable) -> None:
    live = ct.live_cosets()
    index = set(live)
    for k in live:
        row = ct.table[k]
        for c in range(ct.ncols):
            target = row[c]
            assert target in index, "coset table left open or inconsistent"
            assert ct.table[target][c ^ 1] == k, "coset table mirror broken"
    for k in live:
        for w in ct.words:
            cur = k
            for c in w:
                cur = ct.table[cur][c]
            assert cur == k, "relator does not close on the final table"


# ---------------------------------------------------------------------------
# Smith normal form and abelianization


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form, invariant-ordered (d1 | d2 | ...).

    Exact integer row/column reduction with pivoting by least absolute
    value; returns min(rows, cols) nonnegative diagonal entries.
    """
    a = [[int(v) for v in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    if any(len(row) != n for row in a):
        raise DomainError("matrix rows must have equal length")
    size = min(m, n)
    t = 0
    while t < size:
        pi, pj = -1, -1
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best = v
                    pi, pj = i, j
        if best is None:
            break
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            # Row and column clearing with division; a nonzero remainder is
            # strictly smaller than the pivot, so promoting it and restarting
            # terminates.
            restart = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(t, n):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(t, m):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for i in range(t, m):
                            a[i][t], a[i][j] = a[i][j], a[i][t]
                        restart = True
                        break
            if not restart:
                break
        pivot = a[t][t]
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % pivot:
                    for jj in range(t, n):
                        a[t][jj] += a[i][jj]
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        t += 1
    diag = [abs(a[k][k]) if k < t else 0 for k in range(size)]
    for k in range(len(diag) - 1):
        if diag[k] and diag[k + 1] % diag[k]:
            g = gcd(diag[k], diag[k + 1])
            diag[k], diag[k + 1] = g, diag[k] * diag[k + 1] // g
    return diag


@dataclass(frozen=True)
class AbelianInvariants:
    """Torsion invariant factors (each >= 2, each dividing the next) and free rank."""

    factors: tuple[int, ...]
    free_rank: int

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for f in self.factors:
            out *= f
        return out


def abelianization(pres: Presentation) -> AbelianInvariants:
    """Abelian invariants of the presented group via Smith normal form."""
    g = pres.generator_count
    rows = []
    for w in pres.relators:
        row = [0] * g
        for x in w:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    if not rows:
        return AbelianInvariants((), g)
    diag = smith_normal_form(rows)
    nonzero = [d for d in diag if d]
    factors = tuple(d for d in nonzero if d > 1)
    return AbelianInvariants(factors, g - len(nonzero))


# ---------------------------------------------------------------------------
# Permutation groups


@dataclass(frozen=True)
class PermutationSet:
    """Generators of a permutation group on {1..degree}, stored as 0-based image tuples."""

    degree: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise DomainError("degree must be positive")
        gens = tuple(tuple(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise DomainError("at least one generator required")
        full = set(range(self.degree))
        for g in gens:
            if len(g) != self.degree or set(g) != full:
                raise DomainError("generator is not a bijection of the point set")


def parse_permutations(text: str, degree: int | None = None) -> PermutationSet:
    """Parse semicolon-separated products of cycles, e.g. ``(1,4)(2,7);(1,2,3)``."""
    chunks = [c.strip() for c in text.split(";") if c.strip()]
    if not chunks:
        raise DomainError("no permutations given")
    cycles_per_gen: list[list[list[int]]] = []
    maxpt = 0
    for chunk in chunks:
        cycles: list[list[int]] = []
        rest = chunk
        while rest:
            if not rest.startswith("("):
                raise DomainError(f"permutation syntax error near {rest[:12]!r}")
            end = rest.find(")")
            if end < 0:
                raise DomainError("unterminated cycle")
            body = rest[1:end].strip()
            if body:
                try:
                    pts = [int(p) for p in body.split(",")]
                except ValueError as exc:
                    raise DomainError(f"bad cycle {body!r}") from exc
                if len(set(pts)) != len(pts) or any(p < 1 for p in pts):
                    raise DomainError(f"bad cycle {body!r}")
                cycles.append(pts)
                maxpt = max(maxpt, *pts)
            rest = rest[end + 1 :].strip()
        cycles_per_gen.append(cycles)
    deg = degree if degree is not None else max(maxpt, 1)
    if maxpt > deg:
        raise DomainError(f"cycle point {maxpt} exceeds degree {deg}")
    gens = []
    for cycles in cycles_per_gen:
        img = list(range(deg))
        for cyc in cycles:
            for i, p in enumerate(cyc):
                img[p - 1] = cyc[(i + 1) % len(cyc)] - 1
        gens.append(tuple(img))
    return PermutationSet(deg, tuple(gens))


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Apply p first, then q."""
    return tuple(q[v] for v in p)


def perm_order(perms: PermutationSet, max_size: int = 10_000_000) -> int:
    """Order of the generated group by breadth-first closure under composition."""
    if max_size < 1:
        raise DomainError("max_size must be positive")
    identity = tuple(range(perms.degree))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for e in frontier:
            for g in perms.generators:
                f = _compose(e, g)
                if f not in seen:
                    if len(seen) >= max_size:
                        raise BudgetExceeded("permutation closure", max_size)
                    seen.add(f)
                    nxt.append(f)
        frontier = nxt
    return len(seen)


@dataclass(frozen=True)
class Fingerprint:
    """Order, abelian invariant factors, and commutativity of a finite group."""

    order: int
    abelian_invariants: tuple[int, ...]
    is_abelian: bool


def _perm_abelian_invariants(perms: PermutationSet, max_size: int) -> tuple[int, ...]:
    # Walk the closure once, tagging every element with an exponent vector of
    # some word producing it; the multiplication-table relations then abelianize
    # to integer rows whose Smith normal form gives the invariants.
    k = len(perms.generators)
    identity = tuple(range(perms.degree))
    vec: dict[tuple[int, ...], tuple[int, ...]] = {identity: (0,) * k}
    frontier = [identity]
    rows: set[tuple[int, ...]] = set()
    while frontier:
        nxt = []
        for e in frontier:
            ve = vec[e]
            for gi, g in enumerate(perms.generators):
                f = _compose(e, g)
                stepped = tuple(v + (1 if i == gi else 0) for i, v in enumerate(ve))
                if f not in vec:
                    if len(vec) >= max_size:
                        raise BudgetExceeded("permutation closure", max_size)
                    vec[f] = stepped
                    nxt.append(f)
                else:
                    row = tuple(a - b for a, b in zip(stepped, vec[f]))
                    if any(row):
                        rows.add(row)
        frontier = nxt
    diag = smith_normal_form(sorted(rows))
    nonzero = [d for d in diag if d]
    assert len(nonzero) == k, "finite permutation group must have full-rank relation module"
    return tuple(d for d in nonzero if d > 1)


def fingerprint(
    obj: Union[Presentation, PermutationSet],
    max_cosets: int = 1_000_000,
    max_size: int = 10_000_000,
) -> Fingerprint:
    """(order, abelian invariants, is_abelian) for a presentation or permutation set."""
    if isinstance(obj, Presentation):
        order = coset_enumerate(obj, max_cosets)
        ab = abelianization(obj)
        ab_order = ab.order()
        return Fingerprint(order, ab.factors, ab_order == order)
    if isinstance(obj, PermutationSet):
        order = perm_order(obj, max_size)
        invariants = _perm_abelian_invariants(obj, max_size)
        commuting = all(
            _compose(p, q) == _compose(q, p)
            for i, p in enumerate(obj.generators)
            for q in obj.generators[i + 1 :]
        )
        return Fingerprint(order, invariants, commuting)
    raise DomainError(f"cannot fingerprint {type(obj).__name__}")

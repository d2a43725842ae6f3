"""Finite acyclic valued quivers.

The data model is deliberately rigid: vertices are 0-based internally (1-based
in every file format and report), arrows carry a valuation pair (a, b) that
defaults to (1, 1), loops and oriented cycles are rejected at construction, and
the arrow tuple is kept in a canonical sorted order so that representations can
index matrices by arrow position.

Path algebras are the quivers whose arrows all carry valuation (1, 1); parallel
arrows are allowed and meaningful.  Valued arrows participate only in
numerical (Euler-form level) computations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import gcd


class QuiverError(ValueError):
    """Malformed quiver input or a violated quiver precondition."""


@dataclass(frozen=True, order=True)
class Arrow:
    source: int
    target: int
    a: int = 1
    b: int = 1

    def reversed(self) -> "Arrow":
        return Arrow(self.target, self.source, self.b, self.a)

    @property
    def unit(self) -> bool:
        return self.a == 1 and self.b == 1


@dataclass(frozen=True)
class ValuedQuiver:
    n: int
    arrows: tuple[Arrow, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows)))
        if self.n < 1:
            raise QuiverError("a quiver needs at least one vertex")
        if self.labels is not None and len(self.labels) != self.n:
            raise QuiverError("label count does not match vertex count")
        for ar in self.arrows:
            if not (0 <= ar.source < self.n and 0 <= ar.target < self.n):
                raise QuiverError(f"arrow {ar} out of vertex range")
            if ar.source == ar.target:
                raise QuiverError(f"loop at vertex {ar.source + 1} is not allowed")
            if ar.a < 1 or ar.b < 1:
                raise QuiverError(f"arrow {ar} has a non-positive valuation")
        _check_acyclic(self.n, self.arrows)
        _check_connected(self.n, self.arrows)

    @property
    def m(self) -> int:
        return len(self.arrows)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v + 1)

    def is_path_algebra(self) -> bool:
        return all(ar.unit for ar in self.arrows)

    def reverse(self) -> "ValuedQuiver":
        return ValuedQuiver(self.n, tuple(ar.reversed() for ar in self.arrows), self.labels)


def _check_acyclic(n: int, arrows) -> None:
    indeg = [0] * n
    for ar in arrows:
        indeg[ar.target] += 1
    queue = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for ar in arrows:
            if ar.source == v:
                indeg[ar.target] -= 1
                if indeg[ar.target] == 0:
                    queue.append(ar.target)
    if seen != n:
        raise QuiverError("the quiver has an oriented cycle")


def _check_connected(n: int, arrows) -> None:
    adj = [set() for _ in range(n)]
    for ar in arrows:
        adj[ar.source].add(ar.target)
        adj[ar.target].add(ar.source)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        raise QuiverError("the underlying graph is not connected")


def sorted_with_perm(raw: list[Arrow]) -> tuple[tuple[Arrow, ...], list[int]]:
    """Sort arrows canonically; perm[k] = position of raw arrow k after sorting."""
    order = sorted(range(len(raw)), key=lambda k: (raw[k], k))
    perm = [0] * len(raw)
    for new_pos, old_k in enumerate(order):
        perm[old_k] = new_pos
    return tuple(raw[k] for k in order), perm


# ---------------------------------------------------------------------------
# parsing

def parse_quiver(text: str) -> ValuedQuiver:
    """Parse the plain text format: `vertices N`, `arrow I J [A B]`, `#` comments."""
    n = None
    arrows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertices":
            if n is not None:
                raise QuiverError(f"line {lineno}: duplicate vertices directive")
            if len(parts) != 2:
                raise QuiverError(f"line {lineno}: expected `vertices N`")
            n = _int_field(parts[1], lineno)
        elif parts[0] == "arrow":
            if n is None:
                raise QuiverError(f"line {lineno}: arrow before vertices directive")
            if len(parts) not in (3, 5):
                raise QuiverError(f"line {lineno}: expected `arrow I J` or `arrow I J A B`")
            nums = [_int_field(s, lineno) for s in parts[1:]]
            i, j = nums[0], nums[1]
            if not (1 <= i <= n and 1 <= j <= n):
                raise QuiverError(f"line {lineno}: vertex index out of range 1..{n}")
            a, b = (nums[2], nums[3]) if len(nums) == 4 else (1, 1)
            arrows.append(Arrow(i - 1, j - 1, a, b))
        else:
            raise QuiverError(f"line {lineno}: unknown directive {parts[0]!r}")
    if n is None:
        raise QuiverError("missing vertices directive")
    return ValuedQuiver(n, tuple(arrows))


def _int_field(s: str, lineno: int) -> int:
    try:
        return int(s)
    except ValueError:
        raise QuiverError(f"line {lineno}: expected an integer, got {s!r}") from None


def parse_quiver_json(data) -> ValuedQuiver:
    """Parse the JSON form {"vertices": N, "arrows": [[i, j] | [i, j, a, b]]}."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise QuiverError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "vertices" not in data or "arrows" not in data:
        raise QuiverError("quiver JSON needs `vertices` and `arrows` keys")
    n = data["vertices"]
    if not isinstance(n, int):
        raise QuiverError("`vertices` must be an integer")
    arrows = []
    for entry in data["arrows"]:
        if not isinstance(entry, (list, tuple)) or len(entry) not in (2, 4):
            raise QuiverError(f"arrow entry {entry!r} must be [i, j] or [i, j, a, b]")
        if not all(isinstance(x, int) for x in entry):
            raise QuiverError(f"arrow entry {entry!r} must contain integers")
        i, j = entry[0], entry[1]
        if not (1 <= i <= n and 1 <= j <= n):
            raise QuiverError(f"arrow entry {entry!r}: vertex index out of range 1..{n}")
        a, b = (entry[2], entry[3]) if len(entry) == 4 else (1, 1)
        arrows.append(Arrow(i - 1, j - 1, a, b))
    labels = tuple(data["labels"]) if "labels" in data and data["labels"] else None
    return ValuedQuiver(n, tuple(arrows), labels)


def load_quiver(path: str) -> ValuedQuiver:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_quiver_json(stripped)
    return parse_quiver(text)


def quiver_to_json(q: ValuedQuiver) -> dict:
    arrows = []
    for ar in q.arrows:
        if ar.unit:
            arrows.append([ar.source + 1, ar.target + 1])
        else:
            arrows.append([ar.source + 1, ar.target + 1, ar.a, ar.b])
    return {"vertices": q.n, "arrows": arrows}


# ---------------------------------------------------------------------------
# combinatorial helpers

@cache
def topological_order(q: ValuedQuiver) -> tuple[int, ...]:
    indeg = [0] * q.n
    for ar in q.arrows:
        indeg[ar.target] += 1
    out = []
    avail = sorted(v for v in range(q.n) if indeg[v] == 0)
    while avail:
        v = avail.pop(0)
        out.append(v)
        for ar in q.arrows:
            if ar.source == v:
                indeg[ar.target] -= 1
                if indeg[ar.target] == 0:
                    avail.append(ar.target)
        avail.sort()
    return tuple(out)


@cache
def arrows_out(q: ValuedQuiver, v: int) -> tuple[tuple[int, Arrow], ...]:
    return tuple((k, ar) for k, ar in enumerate(q.arrows) if ar.source == v)


@cache
def arrows_in(q: ValuedQuiver, v: int) -> tuple[tuple[int, Arrow], ...]:
    return tuple((k, ar) for k, ar in enumerate(q.arrows) if ar.target == v)


def is_sink(q: ValuedQuiver, v: int) -> bool:
    return not arrows_out(q, v)


def is_source(q: ValuedQuiver, v: int) -> bool:
    return not arrows_in(q, v)


@cache
def underlying_edges(q: ValuedQuiver) -> tuple[tuple[frozenset, tuple[int, ...]], ...]:
    """Edges of the underlying simple graph with the arrow indices on each."""
    edges: dict[frozenset, list[int]] = {}
    for k, ar in enumerate(q.arrows):
        edges.setdefault(frozenset((ar.source, ar.target)), []).append(k)
    return tuple(sorted(
        ((e, tuple(ks)) for e, ks in edges.items()),
        key=lambda item: sorted(item[0]),
    ))


def valuation_v(q: ValuedQuiver, i: int, j: int) -> int:
    """Product valuation of the arrows i -> j: (sum of a's) * (sum of b's)."""
    sa = sum(ar.a for ar in q.arrows if ar.source == i and ar.target == j)
    sb = sum(ar.b for ar in q.arrows if ar.source == i and ar.target == j)
    return sa * sb


@cache
def projective_dimvec(q: ValuedQuiver, i: int) -> tuple[int, ...]:
    """Path counts i -> v for a path algebra; the dimension vector of P(i)."""
    counts = [0] * q.n
    counts[i] = 1
    for v in topological_order(q):
        if counts[v]:
            for _, ar in arrows_out(q, v):
                counts[ar.target] += counts[v]
    return tuple(counts)


@cache
def injective_dimvec(q: ValuedQuiver, i: int) -> tuple[int, ...]:
    """Path counts v -> i for a path algebra; the dimension vector of I(i)."""
    counts = [0] * q.n
    counts[i] = 1
    for v in reversed(topological_order(q)):
        if counts[v]:
            for _, ar in arrows_in(q, v):
                counts[ar.source] += counts[v]
    return tuple(counts)


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class QuiverType:
    family: str                 # "dynkin" | "euclidean" | "wild"
    letter: str | None
    rank: int | None
    representation_finite: bool
    tame: bool

    def display(self) -> str:
        if self.family == "wild":
            return "wild"
        if self.letter is None:
            return f"{self.family} (valued)"
        if self.family == "dynkin":
            return f"{self.letter}{self.rank}"
        return f"{self.letter}~{self.rank}"


def _det_int(m: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant of a small integer matrix."""
    m = [row[:] for row in m]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def _rational_kernel(c: list[list[int]]) -> list[list[Fraction]]:
    """Exact kernel basis of a small integer matrix, over the rationals."""
    n = len(c)
    m = [[Fraction(x) for x in row] for row in c]
    ncols = n
    pivots = []
    row = 0
    for col in range(ncols):
        pr = next((r for r in range(row, n) if m[r][col] != 0), None)
        if pr is None:
            continue
        m[row], m[pr] = m[pr], m[row]
        piv = m[row][col]
        m[row] = [x / piv for x in m[row]]
        for r in range(n):
            if r != row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
    free = [c_ for c_ in range(ncols) if c_ not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][f]
        basis.append(vec)
    return basis


def _symmetrized(q: ValuedQuiver) -> list[list[int]]:
    """Symmetrization d_i * a_ij of the generalized Cartan data.

    The positive symmetrizers are propagated along a spanning tree and must
    stay consistent across every edge; valuations that admit none do not
    come from an algebra and are rejected.
    """
    n = q.n
    aij = [[0] * n for _ in range(n)]
    for ar in q.arrows:
        aij[ar.source][ar.target] += ar.a
        aij[ar.target][ar.source] += ar.b
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if aij[i][j] and d[j] is None:
                d[j] = d[i] * Fraction(aij[i][j], aij[j][i])
                stack.append(j)
    for i in range(n):
        for j in range(n):
            if aij[i][j] and d[i] * aij[i][j] != d[j] * aij[j][i]:
                raise QuiverError("arrow valuations admit no symmetrizer")
    denom = 1
    for x in d:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in d]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    c = [[0] * n for _ in range(n)]
    for v in range(n):
        c[v][v] = 2 * ints[v]
    for i in range(n):
        for j in range(n):
            if i != j:
                c[i][j] = -ints[i] * aij[i][j]
    return c


def _positive_definite(c: list[list[int]]) -> bool:
    n = len(c)
    return all(_det_int([row[: k + 1] for row in c[: k + 1]]) > 0 for k in range(n))


def _arm_lengths(adj: dict[int, set], branch: int) -> list[int] | None:
    """Arm lengths of a star-shaped tree seen from its unique branch vertex."""
    arms = []
    for start in sorted(adj[branch]):
        length = 1
        prev, cur = branch, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return None
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


def _simply_laced_letter(q: ValuedQuiver, family: str) -> tuple[str | None, int | None]:
    if not q.is_path_algebra():
        return None, None
    edges = underlying_edges(q)
    mults = [len(ks) for _, ks in edges]
    n = q.n
    adj: dict[int, set] = {v: set() for v in range(n)}
    for e, _ in edges:
        u, v = sorted(e)
        adj[u].add(v)
        adj[v].add(u)
    degrees = sorted(len(adj[v]) for v in range(n))
    if family == "dynkin":
        # positive definite forces a simple tree here
        if max(degrees) <= 2:
            return "A", n
        branch = [v for v in range(n) if len(adj[v]) == 3]
        if len(branch) == 1:
            arms = _arm_lengths(adj, branch[0])
            if arms and arms[:2] == [1, 1]:
                return "D", n
            if arms == [1, 2, 2]:
                return "E", 6
            if arms == [1, 2, 3]:
                return "E", 7
            if arms == [1, 2, 4]:
                return "E", 8
        return None, None
    # euclidean
    if n == 2 and mults == [2]:
        return "A", 1
    if all(m == 1 for m in mults):
        if len(edges) == n and max(degrees) == 2:
            return "A", n - 1
        if len(edges) == n - 1:
            deg4 = [v for v in range(n) if len(adj[v]) == 4]
            deg3 = [v for v in range(n) if len(adj[v]) == 3]
            if len(deg4) == 1 and not deg3:
                return "D", n - 1
            if len(deg3) == 2 and not deg4:
                return "D", n - 1
            if len(deg3) == 1 and not deg4:
                arms = _arm_lengths(adj, deg3[0])
                if arms == [2, 2, 2]:
                    return "E", 6
                if arms == [1, 3, 3]:
                    return "E", 7
                if arms == [1, 2, 5]:
                    return "E", 8
    return None, None


def classify_type(q: ValuedQuiver) -> QuiverType:
    """Classify by the symmetrized Euler matrix, with exact integer tests.

    Positive definite -> representation finite (Dynkin); positive semidefinite
    with a one-dimensional strictly positive radical -> tame (Euclidean);
    anything else -> wild.  Letters are resolved only for path algebras.
    """
    c = _symmetrized(q)
    if _positive_definite(c):
        letter, rank = _simply_laced_letter(q, "dynkin")
        return QuiverType("dynkin", letter, rank, True, False)
    ker = _rational_kernel(c)
    if len(ker) == 1:
        vec = ker[0]
        denom = 1
        for x in vec:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        ints = [int(x * denom) for x in vec]
        if all(x != 0 for x in ints):
            if ints[0] < 0:
                ints = [-x for x in ints]
            if all(x > 0 for x in ints) and _psd_given_radical(c, ints):
                letter, rank = _simply_laced_letter(q, "euclidean")
                return QuiverType("euclidean", letter, rank, False, True)
    return QuiverType("wild", None, None, False, False)


def _psd_given_radical(c: list[list[int]], delta: list[int]) -> bool:
    # with C @ delta = 0 and delta_0 != 0, psd is equivalent to positive
    # definiteness of the principal submatrix omitting vertex 0
    sub = [[c[i][j] for j in range(1, len(c)) ] for i in range(1, len(c))]
    return _positive_definite(sub) if sub else True


def radical_vector(q: ValuedQuiver) -> tuple[int, ...]:
    """Primitive positive generator of the radical of the symmetrized form."""
    t = classify_type(q)
    if not t.tame:
        raise QuiverError("radical generator exists only for tame (Euclidean) quivers")
    ker = _rational_kernel(_symmetrized(q))
    vec = ker[0]
    denom = 1
    for x in vec:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    return tuple(ints)


# ---------------------------------------------------------------------------
# reflections and subquivers

def reflect_at(q: ValuedQuiver, v: int) -> ValuedQuiver:
    """Reverse all arrows at a sink or source v, swapping valuation pairs."""
    if not (is_sink(q, v) or is_source(q, v)):
        raise QuiverError(f"vertex {v + 1} is neither a sink nor a source")
    new = tuple(ar.reversed() if v in (ar.source, ar.target) else ar for ar in q.arrows)
    return ValuedQuiver(q.n, new, q.labels)


def reflect_with_perm(q: ValuedQuiver, v: int) -> tuple[ValuedQuiver, list[int]]:
    """reflect_at plus the permutation old arrow index -> new arrow index."""
    if not (is_sink(q, v) or is_source(q, v)):
        raise QuiverError(f"vertex {v + 1} is neither a sink nor a source")
    raw = [ar.reversed() if v in (ar.source, ar.target) else ar for ar in q.arrows]
    arrows, perm = sorted_with_perm(raw)
    return ValuedQuiver(q.n, arrows, q.labels), perm


@dataclass(frozen=True)
class Subquiver:
    """Induced subquiver with the index maps back into the ambient quiver."""

    ambient: ValuedQuiver
    quiver: ValuedQuiver
    vertex_map: tuple[int, ...]   # new vertex index -> old vertex index
    arrow_map: tuple[int, ...]    # new arrow index -> old arrow index

    def old_vertex(self, new: int) -> int:
        return self.vertex_map[new]

    def new_vertex(self, old: int) -> int:
        return self.vertex_map.index(old)

    def old_arrow(self, new: int) -> int:
        return self.arrow_map[new]


def subquiver_restrict(q: ValuedQuiver, vertices) -> Subquiver:
    """Full (induced) subquiver on a set of vertices, relabeled contiguously."""
    vs = sorted(set(vertices))
    if not vs:
        raise QuiverError("empty vertex selection")
    for v in vs:
        if not 0 <= v < q.n:
            raise QuiverError(f"vertex {v + 1} out of range")
    pos = {old: new for new, old in enumerate(vs)}
    raw = []
    old_idx = []
    for k, ar in enumerate(q.arrows):
        if ar.source in pos and ar.target in pos:
            raw.append(Arrow(pos[ar.source], pos[ar.target], ar.a, ar.b))
            old_idx.append(k)
    arrows, perm = sorted_with_perm(raw)
    arrow_map = [0] * len(raw)
    for raw_k, new_pos in enumerate(perm):
        arrow_map[new_pos] = old_idx[raw_k]
    labels = tuple(q.label(v) for v in vs)
    sub = ValuedQuiver(len(vs), arrows, labels)   # raises if disconnected
    return Subquiver(q, sub, tuple(vs), tuple(arrow_map))

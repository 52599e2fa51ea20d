"""Cayley-graph enumeration of finitely presented involutory quandles.

The diagram method builds the Cayley graph of a presented quandle the way
Todd-Coxeter coset enumeration builds a coset table: start with one vertex
per generator, add the idempotency loops, trace each primary relation
``x_j ^ w = x_k`` as a path, then trace the associated secondary relation
(a closed loop ``reverse(w) x_j w x_k``) at every vertex.  Vertices that
acquire two like-labeled edges are identified, and identifications cascade
("collapsing") through a union-find structure until no coincidences remain.

Because the quandle is involutory, every edge is its own inverse, so the
graph is undirected and each vertex carries exactly one edge per generator
once the enumeration closes.  The method need not terminate (the presented
quandle may be infinite); a vertex budget turns runaway growth into an
explicit :class:`BudgetExceeded` outcome rather than an exception.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .words import Generator, Word, apply_word, reverse

DEFAULT_MAX_VERTICES = 100_000


@dataclass(frozen=True)
class Relation:
    """One presentation relation ``lhs_base ^ lhs_word = rhs_base ^ rhs_word``."""

    lhs: tuple[int, Word]
    rhs: tuple[int, Word]


@dataclass(frozen=True)
class Presentation:
    """Generators plus an ordered list of relations.

    Relation order is significant: primary relations are traced in the order
    given, which fixes the vertex numbering of the enumeration (though not
    the isomorphism type of the result).
    """

    generators: tuple[Generator, ...]
    relations: tuple[Relation, ...]

    def __post_init__(self) -> None:
        if not self.generators:
            raise ValueError("a presentation needs at least one generator")
        ids = [g.id for g in self.generators]
        if ids != list(range(1, len(ids) + 1)):
            raise ValueError("generator ids must be 1..n in order")
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        k = len(ids)
        for rel in self.relations:
            for base, w in (rel.lhs, rel.rhs):
                for g in (base, *w):
                    if not 1 <= g <= k:
                        raise ValueError(f"relation uses undeclared generator {g}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)


@dataclass(frozen=True)
class BudgetExceeded:
    """Enumeration ran past the vertex budget; the quandle may be infinite.

    This is a result value, not an exception, so parameter sweeps can record
    it and continue.  It never claims the quandle actually is infinite.
    """

    created: int
    max_vertices: int


class _BudgetExhausted(Exception):
    """Internal signal raised when vertex creation passes the budget."""


def normalize_relation(rel: Relation) -> tuple[int, Word, int]:
    """Convert ``a^X = b^Y`` to the standard form ``base ^ word = target``.

    Acting by ``reverse(Y)`` on both sides cancels the right-hand exponent,
    giving ``a ^ (X reverse(Y)) = b``.  When only the left side is bare the
    roles are swapped, which avoids a pointless reversal; the two
    orientations present the same relation.
    """
    (a, x), (b, y) = rel.lhs, rel.rhs
    if not x and y:
        return b, y, a
    return a, x + reverse(y), b


def secondary_of(standard: tuple[int, Word, int]) -> Word:
    """The closed loop word of a standard-form relation.

    ``base ^ word = target`` forces ``v ^ (reverse(word) base word target) = v``
    at every element ``v``, so tracing this word from any vertex must return
    to that vertex.
    """
    base, w, target = standard
    return reverse(w) + (base,) + w + (target,)


class DiagramGraph:
    """Partial Cayley graph under construction.

    Vertices are numbered in creation order; a union-find ``parent`` array
    tracks identifications, with the smallest creation index surviving as
    representative.  ``edges[v][g]`` holds the raw neighbor id of the g-edge
    at ``v`` (-1 when absent); reads resolve stale ids through ``find``.
    Single-threaded during enumeration.
    """

    __slots__ = ("ngens", "max_vertices", "parent", "edges", "pending")

    def __init__(self, ngens: int, max_vertices: int = DEFAULT_MAX_VERTICES):
        self.ngens = ngens
        self.max_vertices = max_vertices
        self.parent: list[int] = []
        self.edges: list[list[int] | None] = []
        self.pending: deque[tuple[int, int]] = deque()

    def add_vertex(self) -> int:
        v = len(self.parent)
        if v >= self.max_vertices:
            raise _BudgetExhausted
        self.parent.append(v)
        self.edges.append([-1] * self.ngens)
        return v

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def set_loop(self, v: int, g: int) -> None:
        """Attach the idempotency loop labeled ``g`` (0-based) at ``v``.

        A pre-existing g-edge is identified with the vertex instead.
        """
        root = self.find(v)
        row = self.edges[root]
        assert row is not None
        t = row[g]
        if t < 0:
            row[g] = root
        elif self.find(t) != root:
            self.pending.append((t, root))
            self.collapse()

    def walk(self, start: int, word: Word, create: bool = True) -> tuple[int, bool]:
        """Follow ``word`` (1-based letters) from ``start``.

        Returns the final representative and whether any vertex was created.
        Missing edges are filled with fresh vertices when ``create`` is set,
        otherwise a missing edge raises KeyError.
        """
        parent = self.parent
        edges = self.edges
        created = False
        v = start
        for letter in word:
            g = letter - 1
            # inline find with path compression
            root = v
            while parent[root] != root:
                root = parent[root]
            while parent[v] != root:
                parent[v], v = root, parent[v]
            v = root
            row = edges[v]
            t = row[g]
            if t < 0:
                if not create:
                    raise KeyError(f"no edge {letter} at vertex {v}")
                u = self.add_vertex()
                row[g] = u
                self.edges[u][g] = v
                v = u
                created = True
            else:
                if parent[t] != t:
                    t = self.find(t)
                    row[g] = t
                v = t
        return self.find(v), created

    def trace(self, start: int, word: Word, end: int | None = None) -> int:
        """Trace ``word`` from ``start``, creating vertices/edges as needed.

        When ``end`` is given the final vertex is enqueued for identification
        with it (collapsing happens in :meth:`collapse`).  Returns the final
        vertex.
        """
        final, _ = self.walk(start, word, create=True)
        if end is not None:
            self.pending.append((final, end))
        return final

    def collapse(self) -> bool:
        """Process the identification queue to a fixpoint.

        Merging two vertices unifies their edge rows; a conflict between two
        distinct g-neighbors enqueues a further identification.  Returns
        whether any merge happened.
        """
        parent = self.parent
        edges = self.edges
        pending = self.pending
        merged = False
        while pending:
            a, b = pending.popleft()
            a = self.find(a)
            b = self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            parent[b] = a
            merged = True
            row_a = edges[a]
            row_b = edges[b]
            edges[b] = None
            assert row_a is not None and row_b is not None
            for g in range(self.ngens):
                t = row_b[g]
                if t < 0:
                    continue
                s = row_a[g]
                if s < 0:
                    row_a[g] = t
                else:
                    pending.append((s, t))
        return merged

    def live_count(self) -> int:
        return sum(1 for v, p in enumerate(self.parent) if v == p)


def enumerate_quandle(
    pres: Presentation, max_vertices: int = DEFAULT_MAX_VERTICES
) -> "FiniteQuandle | BudgetExceeded":
    """Run the full diagram method on a presentation.

    Steps: one vertex per generator; idempotency loops; primary relations
    traced in order with full collapsing after each; then repeated passes
    that, at every live vertex in label order, trace every secondary loop
    and fill any still-missing generator edge with a fresh vertex.  Passes
    repeat until one creates no vertices and performs no identifications,
    at which point every relation holds everywhere and the graph is the
    Cayley graph of the presented quandle.

    Returns :class:`BudgetExceeded` if more than ``max_vertices`` vertices
    are ever created.  Deterministic: the same presentation and budget give
    the same vertex numbering and table.
    """
    k = len(pres.generators)
    if max_vertices < k:
        raise ValueError("max_vertices must be at least the generator count")
    graph = DiagramGraph(k, max_vertices)
    try:
        for _ in range(k):
            graph.add_vertex()
        for i in range(k):
            graph.set_loop(i, i)
        standards = [normalize_relation(r) for r in pres.relations]
        for base, w, target in standards:
            graph.trace(base - 1, w, end=target - 1)
            graph.collapse()
        loops = [secondary_of(s) for s in standards]
        parent = graph.parent
        while True:
            changed = False
            v = 0
            while v < len(parent):
                if parent[v] == v:
                    for lw in loops:
                        final, created = graph.walk(v, lw, create=True)
                        if created:
                            changed = True
                        if final != graph.find(v):
                            graph.pending.append((final, v))
                            graph.collapse()
                            changed = True
                    row = graph.edges[graph.find(v)]
                    assert row is not None
                    for g in range(k):
                        if row[g] < 0:
                            u = graph.add_vertex()
                            row[g] = u
                            graph.edges[u][g] = graph.find(v)
                            changed = True
                v += 1
            if not changed:
                break
    except _BudgetExhausted:
        return BudgetExceeded(created=len(graph.parent), max_vertices=max_vertices)
    return _assemble(graph, pres)


def _assemble(graph: DiagramGraph, pres: Presentation) -> "FiniteQuandle":
    """Renumber the collapsed graph and build the full operation table."""
    k = graph.ngens
    roots = [v for v, p in enumerate(graph.parent) if v == p]
    index = {r: i for i, r in enumerate(roots)}
    edge_maps = []
    for g in range(k):
        col = []
        for r in roots:
            row = graph.edges[r]
            assert row is not None and row[g] >= 0
            col.append(index[graph.find(row[g])])
        edge_maps.append(col)
    gen_elements = tuple(index[graph.find(i)] for i in range(k))
    return build_cayley_quandle(edge_maps, gen_elements, pres.names)


class FiniteQuandle:
    """A finite involutory quandle as an explicit operation table.

    ``table[a][b]`` is ``a > b``.  ``gen_elements[i]`` is the element
    carrying generator ``i + 1``; ``comp_ids[a]`` identifies the connected
    component of the Cayley graph containing ``a``.  Instances are immutable
    and freely shareable between threads.
    """

    __slots__ = ("table", "gen_elements", "gen_names", "comp_ids")

    def __init__(
        self,
        table: np.ndarray,
        gen_elements: tuple[int, ...],
        gen_names: tuple[str, ...],
        comp_ids: tuple[int, ...],
    ):
        table = np.ascontiguousarray(table, dtype=np.int32)
        table.setflags(write=False)
        self.table = table
        self.gen_elements = gen_elements
        self.gen_names = gen_names
        self.comp_ids = comp_ids

    @property
    def n(self) -> int:
        return len(self.table)

    def op(self, a: int, b: int) -> int:
        return int(self.table[a][b])

    def __repr__(self) -> str:
        return f"FiniteQuandle(n={self.n}, generators={self.gen_elements})"

    @classmethod
    def from_table(
        cls,
        table,
        gen_elements: tuple[int, ...],
        gen_names: tuple[str, ...] | None = None,
    ) -> "FiniteQuandle":
        """Build from a raw table, deriving components by edge reachability."""
        arr = np.asarray(table, dtype=np.int32)
        n = len(arr)
        if arr.shape != (n, n):
            raise ValueError("operation table must be square")
        if gen_names is None:
            gen_names = tuple(str(i + 1) for i in range(len(gen_elements)))
        comp = _component_ids(
            [[int(arr[v][e]) for v in range(n)] for e in gen_elements], n
        )
        return cls(arr, tuple(gen_elements), tuple(gen_names), comp)


def _component_ids(edge_maps: list[list[int]], n: int) -> tuple[int, ...]:
    """Connected components of the Cayley graph, flood-filled in element order."""
    comp = [-1] * n
    next_id = 0
    k = len(edge_maps)

    def flood(start: int, cid: int) -> None:
        stack = [start]
        comp[start] = cid
        while stack:
            x = stack.pop()
            for g in range(k):
                y = edge_maps[g][x]
                if comp[y] < 0:
                    comp[y] = cid
                    stack.append(y)

    for start in range(n):
        if comp[start] < 0:
            flood(start, next_id)
            next_id += 1
    return tuple(comp)


def build_cayley_quandle(
    edge_maps: list[list[int]],
    gen_elements: tuple[int, ...],
    gen_names: tuple[str, ...],
) -> FiniteQuandle:
    """Extend a completed Cayley graph to the full operation table.

    ``edge_maps[g]`` is the involution "follow the edge labeled g+1".  The
    right translation by a generator element is that involution; the right
    translation by ``b ^ g`` is the conjugate ``T_g . pi_b . T_g``.  A BFS
    from the generator elements therefore determines every column of the
    table.  Every edge (not just tree edges) is cross-checked against the
    conjugation rule, and idempotency is checked per element; together with
    the edge involutions this certifies the table satisfies all three
    quandle axioms.
    """
    n = len(edge_maps[0]) if edge_maps else 0
    k = len(edge_maps)
    ts = [np.array(col, dtype=np.int32) for col in edge_maps]
    ident = np.arange(n, dtype=np.int32)
    for g, t in enumerate(ts):
        if not np.array_equal(t[t], ident):
            raise ValueError(f"edge map {g + 1} is not an involution")

    pi: list[np.ndarray | None] = [None] * n
    queue: deque[int] = deque()
    for gi, e in enumerate(gen_elements):
        if pi[e] is None:
            pi[e] = ts[gi]
            queue.append(e)
        elif not np.array_equal(pi[e], ts[gi]):
            raise ValueError("merged generators with inconsistent translations")
    while queue:
        x = queue.popleft()
        px = pi[x]
        assert px is not None
        for g in range(k):
            t = ts[g]
            y = int(t[x])
            py = t[px[t]]
            if pi[y] is None:
                pi[y] = py
                queue.append(y)
            elif not np.array_equal(pi[y], py):
                raise ValueError("inconsistent Cayley graph: translation conflict")
    if any(p is None for p in pi):
        raise ValueError("Cayley graph has elements unreachable from generators")
    for x in range(n):
        px = pi[x]
        assert px is not None
        if int(px[x]) != x:
            raise ValueError(f"idempotency fails at element {x}")
    table = np.stack(pi, axis=1).astype(np.int32)
    comp = _component_ids(edge_maps, n)
    return FiniteQuandle(table, tuple(gen_elements), tuple(gen_names), comp)


def components(q: FiniteQuandle) -> tuple[tuple[int, ...], ...]:
    """Partition of the elements into Cayley-graph components."""
    groups: dict[int, list[int]] = {}
    for x, c in enumerate(q.comp_ids):
        groups.setdefault(c, []).append(x)
    return tuple(tuple(groups[c]) for c in sorted(groups))


@dataclass(frozen=True)
class AxiomReport:
    """Result of an exhaustive axiom check; ``witness`` names the first
    violation as (axiom, elements) when ``ok`` is false."""

    ok: bool
    witness: tuple[str, tuple[int, ...]] | None = None


def axioms_check(q: FiniteQuandle) -> AxiomReport:
    """Brute-force verification of idempotency, the involution law, and
    self-distributivity over all element tuples."""
    t = q.table
    n = q.n
    idx = np.arange(n)
    a1 = t[idx, idx]
    if not np.array_equal(a1, idx):
        x = int(np.nonzero(a1 != idx)[0][0])
        return AxiomReport(False, ("A1", (x,)))
    for b in range(n):
        col = t[:, b]
        if not np.array_equal(t[col, b], idx):
            x = int(np.nonzero(t[col, b] != idx)[0][0])
            return AxiomReport(False, ("A2", (x, b)))
    for c in range(n):
        lhs = t[t, c]
        tc = t[:, c]
        rhs = t[np.ix_(tc, tc)]
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)[0]
            return AxiomReport(False, ("A3", (int(bad[0]), int(bad[1]), c)))
    return AxiomReport(True)


def _signatures(q: FiniteQuandle) -> list[tuple]:
    """Per-element invariant: cycle type of the right-translation permutation
    plus component size.  Preserved by any isomorphism."""
    t = q.table
    n = q.n
    comp_sizes: dict[int, int] = {}
    for c in q.comp_ids:
        comp_sizes[c] = comp_sizes.get(c, 0) + 1
    sigs = []
    for b in range(n):
        col = t[:, b]
        seen = bytearray(n)
        lens = []
        for s in range(n):
            if seen[s]:
                continue
            length = 0
            x = s
            while not seen[x]:
                seen[x] = 1
                x = int(col[x])
                length += 1
            lens.append(length)
        lens.sort()
        sigs.append((comp_sizes[q.comp_ids[b]], tuple(lens)))
    return sigs


def _propagate_images(rows1, rows2, gens1, images, n2) -> list[int] | None:
    """Extend generator images to a full map along Cayley edges.

    Returns the image list, or None if the edges force a conflict or a
    collision.  Injective and total on the generated subquandle; callers
    check sizes for bijectivity.
    """
    n1 = len(rows1)
    img = [-1] * n1
    used = bytearray(n2)
    stack = []
    for e, h in zip(gens1, images):
        cur = img[e]
        if cur < 0:
            if used[h]:
                return None
            img[e] = h
            used[h] = 1
            stack.append(e)
        elif cur != h:
            return None
    pairs = list(zip(gens1, images))
    while stack:
        x = stack.pop()
        ix = img[x]
        r1 = rows1[x]
        r2 = rows2[ix]
        for e, h in pairs:
            y = r1[e]
            iy = r2[h]
            m = img[y]
            if m < 0:
                if used[iy]:
                    return None
                img[y] = iy
                used[iy] = 1
                stack.append(y)
            elif m != iy:
                return None
    if -1 in img:
        return None
    return img


def _verify_homomorphism(rows1, rows2, img) -> bool:
    for a, row in enumerate(rows1):
        ia = img[a]
        target = rows2[ia]
        for b, ab in enumerate(row):
            if img[ab] != target[img[b]]:
                return False
    return True


def isomorphic(q1: FiniteQuandle, q2: FiniteQuandle) -> tuple[int, ...] | None:
    """Search for an isomorphism, returning the image list or None.

    Candidate images for the generating set of ``q1`` are pruned by
    component size and translation cycle type, then extended through the
    Cayley graph; extension is deterministic because each vertex has one
    edge per generator.  A found witness is verified against the whole
    table before being returned.
    """
    if q1.n != q2.n:
        return None
    sizes1 = sorted(len(c) for c in components(q1))
    sizes2 = sorted(len(c) for c in components(q2))
    if sizes1 != sizes2:
        return None
    rows1 = q1.table.tolist()
    rows2 = q2.table.tolist()
    sig1 = _signatures(q1)
    sig2 = _signatures(q2)
    gens1 = q1.gen_elements
    n = q1.n
    cand = [
        [h for h in range(n) if sig2[h] == sig1[e]]
        for e in gens1
    ]

    def search(i: int, chosen: list[int]):
        if i == len(gens1):
            img = _propagate_images(rows1, rows2, gens1, chosen, n)
            if img is not None and _verify_homomorphism(rows1, rows2, img):
                return img
            return None
        for h in cand[i]:
            chosen.append(h)
            found = search(i + 1, chosen)
            if found is not None:
                return found
            chosen.pop()
        return None

    img = search(0, [])
    return tuple(img) if img is not None else None


def relation_holds(q: FiniteQuandle, rel: Relation) -> bool:
    """Evaluate one presentation relation in the table."""
    (a, x), (b, y) = rel.lhs, rel.rhs
    left = apply_word(q, q.gen_elements[a - 1], x)
    right = apply_word(q, q.gen_elements[b - 1], y)
    return left == right


def core_cyclic(n: int) -> FiniteQuandle:
    """The involutory quandle on Z/nZ with a > b = 2b - a (mod n)."""
    if n < 1:
        raise ValueError("n must be positive")
    table = [[(2 * b - a) % n for b in range(n)] for a in range(n)]
    gens = (0,) if n == 1 else (0, 1)
    names = tuple(str(g) for g in gens)
    return FiniteQuandle.from_table(table, gens, names)

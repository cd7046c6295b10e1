"""Compatibility graphs, noncontextuality tests and the ``G u A`` decomposition."""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import gf2
from .exceptions import CapExceeded, ContextualSet, NotGenerated
from .pauli import PauliOperator, PauliSum, multiply

__all__ = [
    "CompatibilityGraph",
    "TermFactor",
    "Decomposition",
    "BoundRow",
    "anticommutation_matrix",
    "build_graph",
    "universally_commuting",
    "is_noncontextual",
    "find_witness",
    "clique_partition",
    "extract_generators",
    "factorize_term",
    "enumerate_closure",
    "max_support_bound",
    "table_of_bounds",
    "max_anticommuting_size",
    "to_dot",
]

CLOSURE_CAP = 1 << 22


def _words(source) -> list[PauliOperator]:
    if isinstance(source, PauliSum):
        return source.words
    return [(PauliOperator.from_string(w) if isinstance(w, str) else w).word for w in source]


def anticommutation_matrix(words: Sequence[PauliOperator]) -> np.ndarray:
    """Boolean matrix, True where the pair anticommutes."""
    m = len(words)
    if m == 0:
        return np.zeros((0, 0), dtype=bool)
    if words[0].n <= 62:
        xs = np.array([w.x for w in words], dtype=np.uint64)
        zs = np.array([w.z for w in words], dtype=np.uint64)
        cnt = np.bitwise_count(xs[:, None] & zs[None, :]) + np.bitwise_count(zs[:, None] & xs[None, :])
        return (cnt & 1).astype(bool)
    out = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(i + 1, m):
            out[i, j] = out[j, i] = not words[i].commutes(words[j])
    return out


@dataclass(frozen=True, eq=False)
class CompatibilityGraph:
    """Pauli words as vertices, an edge for every commuting pair."""

    vertices: tuple[PauliOperator, ...]
    adjacency: np.ndarray

    @property
    def size(self) -> int:
        return len(self.vertices)

    def index(self, word: PauliOperator) -> int:
        return self.vertices.index(word.word)

    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(i.tolist(), j.tolist()))


def build_graph(h) -> CompatibilityGraph:
    """Compatibility graph of a PauliSum (or an iterable of words)."""
    words = _words(h)
    anti = anticommutation_matrix(words)
    adj = ~anti
    np.fill_diagonal(adj, False)
    return CompatibilityGraph(tuple(words), adj)


def universally_commuting(g: CompatibilityGraph) -> list[PauliOperator]:
    """Vertices adjacent to every other vertex."""
    deg = g.adjacency.sum(axis=1)
    return [v for v, d in zip(g.vertices, deg) if d == g.size - 1]


def _remainder(g: CompatibilityGraph, z: Iterable[PauliOperator] | None = None) -> np.ndarray:
    """Indices of the vertices outside ``z``."""
    zs = {w.key for w in (universally_commuting(g) if z is None else z)}
    return np.array([i for i, v in enumerate(g.vertices) if v.key not in zs], dtype=int)


def _disjoint_cliques(adj: np.ndarray) -> bool:
    # every commuting pair must share its closed neighbourhood
    closed = adj | np.eye(len(adj), dtype=bool)
    i, j = np.nonzero(np.triu(adj, 1))
    return bool(np.all(closed[i] == closed[j]))


def _complete_multipartite(anti: np.ndarray) -> bool:
    parts: list[list[int]] = []
    for v in range(len(anti)):
        for part in parts:
            if not anti[v, part[0]]:
                part.append(v)
                break
        else:
            parts.append([v])
    label = np.empty(len(anti), dtype=int)
    for k, part in enumerate(parts):
        label[part] = k
    same = label[:, None] == label[None, :]
    return bool(np.all(anti == ~same))


def is_noncontextual(h) -> bool:
    """Decide noncontextuality of a PauliSum or a collection of words.

    Runs the disjoint-clique test on the compatibility graph and the complete
    multipartite test on the anticompatibility graph of the vertices that do
    not commute universally; the two must agree.
    """
    g = h if isinstance(h, CompatibilityGraph) else build_graph(h)
    t = _remainder(g)
    adj = g.adjacency[np.ix_(t, t)]
    anti = ~adj
    np.fill_diagonal(anti, False)
    by_cliques = _disjoint_cliques(adj)
    by_parts = _complete_multipartite(anti)
    if by_cliques != by_parts:
        raise RuntimeError("clique and multipartite noncontextuality tests disagree")
    return by_cliques


def find_witness(g: CompatibilityGraph, z=None) -> tuple[PauliOperator, PauliOperator, PauliOperator] | None:
    """A triple ``(a, b, c)`` with ``[a,b] = [b,c] = 0`` and ``{a,c} = 0``, if any."""
    t = _remainder(g, z)
    adj = g.adjacency
    for b in t:
        nb = [a for a in t if adj[a, b]]
        for ia, a in enumerate(nb):
            for c in nb[ia + 1:]:
                if not adj[a, c]:
                    return g.vertices[a], g.vertices[b], g.vertices[c]
    return None


def clique_partition(g: CompatibilityGraph, z=None) -> list[list[PauliOperator]]:
    """Split the non-universal vertices into disjoint commuting cliques.

    Cliques (and their members) are ordered by the canonical word order.
    Raises :class:`ContextualSet` if some commuting neighbourhood is not itself
    a clique.
    """
    t = _remainder(g, z)
    adj = g.adjacency
    seen: set[int] = set()
    cliques = []
    for v in t:
        if v in seen:
            continue
        members = [v] + [u for u in t if adj[v, u]]
        sub = adj[np.ix_(members, members)] | np.eye(len(members), dtype=bool)
        if not sub.all() or any(u in seen for u in members):
            raise ContextualSet("commutation is not transitive on the non-universal terms",
                                witness=find_witness(g, z))
        seen.update(members)
        cliques.append(sorted((g.vertices[u] for u in members), key=lambda w: w.sort_key))
    cliques.sort(key=lambda c: c[0].sort_key)
    return cliques


@dataclass(frozen=True)
class TermFactor:
    """``word = sign * prod(G[mask]) * A[clique]`` and ``h = sign * coeff``."""

    word: PauliOperator
    coeff: float
    g_mask: int
    clique: int | None
    sign: int

    @property
    def h(self) -> float:
        return self.sign * self.coeff


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Symmetry generators ``G``, clique representatives ``A`` and term factors."""

    n: int
    g_generators: tuple[PauliOperator, ...]
    a_reps: tuple[PauliOperator, ...]
    z_set: tuple[PauliOperator, ...] = ()
    cliques: tuple[tuple[PauliOperator, ...], ...] = ()
    factorization: tuple[TermFactor, ...] = ()
    hamiltonian: PauliSum | None = field(default=None, repr=False)

    @classmethod
    def from_generators(cls, n: int, g: Sequence, a: Sequence) -> Decomposition:
        """Bare decomposition from explicit generator lists (no Hamiltonian)."""
        g = tuple(_words(g))
        a = tuple(_words(a))
        return cls(n, g, a, cliques=tuple((c,) for c in a))

    @cached_property
    def _eliminator(self) -> gf2.Eliminator:
        el = gf2.Eliminator()
        for g in self.g_generators:
            el.add(g.symplectic)
        return el

    def product(self, g_mask: int, clique: int | None = None) -> PauliOperator:
        """Phase-exact ``prod(G[mask]) * A[clique]``."""
        out = PauliOperator.identity(self.n)
        for i, g in enumerate(self.g_generators):
            if (g_mask >> i) & 1:
                out = multiply(out, g)
        if clique is not None:
            out = multiply(out, self.a_reps[clique])
        return out

    def reconstruct(self) -> PauliSum:
        """Rebuild the Hamiltonian from the factor table."""
        acc: dict[tuple[int, int], float] = {}
        for f in self.factorization:
            p = self.product(f.g_mask, f.clique)
            acc[p.key] = acc.get(p.key, 0.0) + p.sign * f.h
        tol = self.hamiltonian.tol if self.hamiltonian is not None else 1e-12
        return PauliSum(self.n, acc, tol)

    @property
    def g_size(self) -> int:
        return len(self.g_generators)

    @property
    def a_size(self) -> int:
        return len(self.a_reps)


def factorize_term(p: PauliOperator, d: Decomposition) -> tuple[int, int | None, int]:
    """Write ``p = sign * prod(G[mask]) * A[clique]``; returns ``(mask, clique, sign)``."""
    p = p.word
    v = p.symplectic
    candidates = [(None, v)] + [(i, v ^ c.symplectic) for i, c in enumerate(d.a_reps)]
    for clique, target in candidates:
        mask = d._eliminator.solve(target)
        if mask is not None:
            return mask, clique, d.product(mask, clique).sign
    raise NotGenerated(f"{p} is not generated by G and a single clique representative")


def extract_generators(h: PauliSum) -> Decomposition:
    """Decompose a noncontextual Hamiltonian into ``G``, ``A`` and term factors.

    ``G`` spans the universally commuting words and every product ``Q * C_i``
    of a clique member with its representative; it is stored in reduced
    row-echelon form of the symplectic vectors.  ``C_i`` is the smallest word
    of clique ``i`` in canonical order.
    """
    g = build_graph(h)
    z = universally_commuting(g)
    cliques = clique_partition(g, z)
    reps = [c[0] for c in cliques]
    span = [w.symplectic for w in z]
    for clique, rep in zip(cliques, reps):
        span.extend(q.symplectic ^ rep.symplectic for q in clique[1:])
    rows, _ = gf2.rref(span)
    gens = tuple(PauliOperator.from_symplectic(h.n, r) for r in rows)
    d = Decomposition(h.n, gens, tuple(reps), tuple(z), tuple(tuple(c) for c in cliques), (), h)
    factors = []
    for p, c in h.items():
        mask, clique, sign = factorize_term(p, d)
        factors.append(TermFactor(p, c, mask, clique, sign))
    return Decomposition(h.n, gens, tuple(reps), tuple(z), d.cliques, tuple(factors), h)


def enumerate_closure(d: Decomposition, cap: int = CLOSURE_CAP) -> set[PauliOperator]:
    """Every word ``prod(subset of G)`` and ``prod(subset of G) * C_i``."""
    expected = (1 << d.g_size) * (1 + d.a_size)
    if expected > cap:
        raise CapExceeded(f"closure would hold {expected} words (cap {cap})")
    span = [0]
    for g in d.g_generators:
        v = g.symplectic
        span += [s ^ v for s in span]
    vecs = set(span)
    for c in d.a_reps:
        v = c.symplectic
        vecs.update(s ^ v for s in span)
    return {PauliOperator.from_symplectic(d.n, v) for v in vecs}


def max_anticommuting_size(m: int) -> int:
    """Largest pairwise anticommuting Pauli set on ``m`` qubits."""
    if m < 0:
        raise ValueError("qubit count must be non-negative")
    return 2 * m + 1


def max_support_bound(g_size: int, a_size: int, n: int) -> int:
    """Upper bound ``2^|G| (1 + |A|)`` on the number of terms."""
    if not 0 <= g_size <= n:
        raise ValueError(f"|G| = {g_size} outside [0, {n}]")
    if not 0 <= a_size <= max_anticommuting_size(n - g_size):
        raise ValueError(f"|A| = {a_size} exceeds 2(n - |G|) + 1 = {2 * (n - g_size) + 1}")
    return (1 << g_size) * (1 + a_size)


@dataclass(frozen=True)
class BoundRow:
    g_size: int
    a_size: int
    max_terms: int
    expression: str
    flag: str  # "Y" above 2^n, "EQUAL" at 2^n, "N" below


def _power_expr(offset: int) -> str:
    if offset == 0:
        return "2^n"
    return f"2^(n{offset:+d})"


def table_of_bounds(n: int, depth: int | None = 3) -> list[BoundRow]:
    """Maximum support per ``(|G|, |A|)``, ``|G|`` from ``n`` down to ``n - depth``.

    ``depth=None`` runs down to ``|G| = 0``.  ``|A| = 1`` never occurs in a
    decomposition and is skipped.
    """
    lowest = 0 if depth is None else max(0, n - depth)
    rows = []
    for g in range(n, lowest - 1, -1):
        top = max_anticommuting_size(n - g)
        for a in [0] + list(range(2, top + 1)):
            total = max_support_bound(g, a, n)
            bits = [k for k in range((1 + a).bit_length()) if ((1 + a) >> k) & 1]
            expr = "+".join(_power_expr(g + k - n) for k in reversed(bits))
            flag = "Y" if total > 2 ** n else ("EQUAL" if total == 2 ** n else "N")
            rows.append(BoundRow(g, a, total, expr, flag))
    return rows


def to_dot(h, name: str = "compatibility") -> str:
    """Graphviz DOT text: universal vertices in one cluster, one cluster per clique."""
    g = h if isinstance(h, CompatibilityGraph) else build_graph(h)
    z = universally_commuting(g)
    noncon = is_noncontextual(g)
    lines = [f"graph {name} {{", "  node [shape=ellipse];"]
    if z:
        lines.append('  subgraph cluster_universal {')
        lines.append('    label="universally commuting";')
        for v in z:
            lines.append(f'    "{v.label}" [universal=true, style=filled, fillcolor=lightgrey];')
        lines.append("  }")
    if noncon:
        for k, clique in enumerate(clique_partition(g, z)):
            lines.append(f"  subgraph cluster_clique_{k} {{")
            lines.append(f'    label="clique {k}";')
            for v in clique:
                lines.append(f'    "{v.label}" [clique={k}];')
            lines.append("  }")
    else:
        zkeys = {v.key for v in z}
        for v in g.vertices:
            if v.key not in zkeys:
                lines.append(f'  "{v.label}";')
    for i, j in g.edges():
        lines.append(f'  "{g.vertices[i].label}" -- "{g.vertices[j].label}";')
    lines.append("}")
    return "\n".join(lines) + "\n"

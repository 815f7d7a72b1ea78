"""Acyclic quivers, paths, and the quiver spec file format.

Vertices are the integers 1..n.  Paths compose left to right: "ab" means
first a, then b, so target(a) = source(b).  The file format is

    quiver <name>
    vertices <n>
    arrow <label> <src> <tgt>
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import QuiverParseError, ReplikaError


@dataclass(frozen=True)
class Arrow:
    label: str
    source: int
    target: int


@dataclass(frozen=True)
class Path:
    """A path in a quiver: a source vertex and a tuple of arrow indices.

    The empty tuple is the lazy path e_source.
    """

    source: int
    arrows: tuple


class Quiver:
    def __init__(self, n: int, arrows, name: str = "Q"):
        self.name = name
        self.n = n
        self.arrows = [Arrow(*a) if not isinstance(a, Arrow) else a for a in arrows]
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ReplikaError("arrow labels must be unique")
        for a in self.arrows:
            if not (1 <= a.source <= n and 1 <= a.target <= n):
                raise ReplikaError(f"arrow {a.label} references a vertex outside 1..{n}")
        if self._has_cycle():
            raise ReplikaError("quiver has a directed cycle")
        self._paths = None

    def _has_cycle(self) -> bool:
        out = {v: [] for v in range(1, self.n + 1)}
        indeg = {v: 0 for v in range(1, self.n + 1)}
        for a in self.arrows:
            out[a.source].append(a.target)
            indeg[a.target] += 1
        queue = [v for v in indeg if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen != self.n

    @property
    def key(self):
        return (self.n, tuple((a.label, a.source, a.target) for a in self.arrows))

    def __repr__(self):
        return f"Quiver({self.name}, n={self.n}, arrows={len(self.arrows)})"

    def path_target(self, path: Path) -> int:
        if not path.arrows:
            return path.source
        return self.arrows[path.arrows[-1]].target

    def paths(self):
        """All paths, including the length-0 idempotent paths.

        Deterministic order: by length, then by (source, arrow sequence).
        The result is cached; the list is the basis of the path algebra kQ.
        """
        if self._paths is not None:
            return self._paths
        by_target = {}
        current = [Path(v, ()) for v in range(1, self.n + 1)]
        all_paths = list(current)
        while current:
            nxt = []
            for path in current:
                t = self.path_target(path)
                for idx, a in enumerate(self.arrows):
                    if a.source == t:
                        nxt.append(Path(path.source, path.arrows + (idx,)))
            nxt.sort(key=lambda q: (q.source, q.arrows))
            all_paths.extend(nxt)
            current = nxt
            if len(all_paths) > 10**6:
                raise ReplikaError("path explosion; quiver is too large")
        self._paths = all_paths
        return all_paths

    def compose(self, left: Path, right: Path) -> Optional[Path]:
        """left . right = first walk left, then right; None if not composable."""
        if self.path_target(left) != right.source:
            return None
        return Path(left.source, left.arrows + right.arrows)

    def maximal_paths(self):
        paths = self.paths()
        extendable = set()
        for path in paths:
            t = self.path_target(path)
            s = path.source
            if any(a.source == t for a in self.arrows):
                extendable.add(path)
            if any(a.target == s for a in self.arrows):
                extendable.add(path)
        return [q for q in paths if q not in extendable]

    def dynkin_type(self) -> Optional[str]:
        """'A_n', 'D_n' or 'E_n' when the underlying graph is Dynkin, else None.

        Requires a connected underlying graph without multiple edges.
        """
        edges = set()
        for a in self.arrows:
            if a.source == a.target:
                return None
            e = (min(a.source, a.target), max(a.source, a.target))
            if e in edges:
                return None
            edges.add(e)
        n = self.n
        if len(edges) != n - 1:
            return None
        adj = {v: set() for v in range(1, n + 1)}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        stack, seen = [1], {1}
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            return None
        degrees = sorted(len(adj[v]) for v in range(1, n + 1))
        if degrees[-1] <= 2:
            return f"A_{n}"
        if degrees[-1] > 3 or degrees.count(3) > 1:
            return None
        branch = next(v for v in adj if len(adj[v]) == 3)
        arm_lengths = sorted(self._arm_length(adj, branch, w) for w in adj[branch])
        if arm_lengths[0] != 1:
            return None
        if arm_lengths[1] == 1:
            return f"D_{n}"
        if arm_lengths[1] == 2 and arm_lengths[2] in (2, 3, 4):
            return f"E_{n}"
        return None

    def _arm_length(self, adj, branch, first):
        length, prev, cur = 1, branch, first
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                return length
            if len(nxt) > 1:
                return 10**9  # second branch point; not Dynkin
            prev, cur = cur, nxt[0]
            length += 1


def parse_quiver(text: str) -> Quiver:
    name = None
    n = None
    arrows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "quiver":
            if len(parts) != 2:
                raise QuiverParseError("expected 'quiver <name>'", lineno)
            name = parts[1]
        elif kind == "vertices":
            if len(parts) != 2 or not parts[1].isdigit():
                raise QuiverParseError("expected 'vertices <n>'", lineno)
            n = int(parts[1])
        elif kind == "arrow":
            if len(parts) != 4:
                raise QuiverParseError("expected 'arrow <label> <src> <tgt>'", lineno)
            label = parts[1]
            try:
                src, tgt = int(parts[2]), int(parts[3])
            except ValueError:
                raise QuiverParseError("arrow endpoints must be integers", lineno)
            if n is None:
                raise QuiverParseError("arrow line before 'vertices'", lineno)
            if not (1 <= src <= n and 1 <= tgt <= n):
                raise QuiverParseError(f"vertex out of range 1..{n}", lineno)
            arrows.append(Arrow(label, src, tgt))
        else:
            raise QuiverParseError(f"unknown directive {kind!r}", lineno)
    if name is None or n is None:
        raise QuiverParseError("file must declare 'quiver <name>' and 'vertices <n>'")
    try:
        return Quiver(n, arrows, name=name)
    except ReplikaError as exc:
        raise QuiverParseError(str(exc)) from exc


def load_quiver(path) -> Quiver:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_quiver(fh.read())


def linear_a(n: int) -> Quiver:
    """The linear A_n quiver 1 -> 2 -> ... -> n."""
    arrows = [Arrow(f"a{i}", i, i + 1) for i in range(1, n)]
    return Quiver(n, arrows, name=f"A{n}")


def subspace_d4() -> Quiver:
    """The D_4 three-subspace quiver: 1,3,4 -> 2."""
    return Quiver(4, [Arrow("a", 1, 2), Arrow("b", 3, 2), Arrow("c", 4, 2)], name="D4")

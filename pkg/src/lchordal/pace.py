"""PACE ``.gr`` and ``.td`` text formats.

``.gr``::

    c optional comment lines
    p tw <n> <m>
    <u> <v>            (m lines, 1-based ids)

``.td``::

    s td <#bags> <width+1> <n>
    b <i> <v1> <v2> ...    (one per bag, 1-based bag and vertex ids)
    <i> <j>                (#bags - 1 tree edges)

Blank lines and lines starting with ``c`` are ignored by both parsers.  The
writers emit the canonical form: sorted edges, sorted bag contents, sorted
tree edges, ``\\n`` line ends, no comments unless asked.
"""

from __future__ import annotations

from .graph import Graph
from .treewidth import TreeDecomposition


class FormatError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield no, line.split()


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(no, f"expected an integer, got {tok!r}") from None


def parse_gr(text: str) -> Graph:
    n = m = None
    edges = set()
    last = 0
    for no, parts in _content_lines(text):
        last = no
        if parts[0] == "p":
            if n is not None:
                raise FormatError(no, "second problem line")
            if len(parts) != 4 or parts[1] != "tw":
                raise FormatError(no, "problem line must be 'p tw <n> <m>'")
            n, m = _int(parts[2], no), _int(parts[3], no)
            if n < 0 or m < 0:
                raise FormatError(no, "negative counts")
            continue
        if n is None:
            raise FormatError(no, "edge before the problem line")
        if len(parts) != 2:
            raise FormatError(no, "edge line must have two vertex ids")
        u, v = _int(parts[0], no), _int(parts[1], no)
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(no, f"vertex id out of range 1..{n}")
        if u == v:
            raise FormatError(no, f"self-loop at {u}")
        e = (min(u, v) - 1, max(u, v) - 1)
        if e in edges:
            raise FormatError(no, f"repeated edge {u} {v}")
        edges.add(e)
    if n is None:
        raise FormatError(last + 1, "missing problem line 'p tw <n> <m>'")
    if len(edges) != m:
        raise FormatError(last, f"header announces {m} edges, found {len(edges)}")
    return Graph(n, frozenset(edges))


def write_gr(g: Graph, comments=()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p tw {g.n} {g.m}")
    lines.extend(f"{u + 1} {v + 1}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    """Returns the decomposition (with the declared width) and the declared vertex count."""
    header = None
    bags = {}
    edges = []
    last = 0
    for no, parts in _content_lines(text):
        last = no
        if parts[0] == "s":
            if header is not None:
                raise FormatError(no, "second solution line")
            if len(parts) != 5 or parts[1] != "td":
                raise FormatError(no, "solution line must be 's td <bags> <width+1> <n>'")
            header = tuple(_int(p, no) for p in parts[2:])
            continue
        if header is None:
            raise FormatError(no, "content before the solution line")
        nb, _, n = header
        if parts[0] == "b":
            if len(parts) < 2:
                raise FormatError(no, "bag line needs an index")
            i = _int(parts[1], no)
            if not 1 <= i <= nb:
                raise FormatError(no, f"bag index {i} out of range 1..{nb}")
            if i in bags:
                raise FormatError(no, f"bag {i} defined twice")
            vs = [_int(p, no) for p in parts[2:]]
            for v in vs:
                if not 1 <= v <= n:
                    raise FormatError(no, f"vertex {v} out of range 1..{n}")
            bags[i] = frozenset(v - 1 for v in vs)
            continue
        if len(parts) != 2:
            raise FormatError(no, "tree edge line must have two bag indices")
        i, j = _int(parts[0], no), _int(parts[1], no)
        if not (1 <= i <= nb and 1 <= j <= nb):
            raise FormatError(no, "tree edge mentions an unknown bag")
        edges.append((i - 1, j - 1))
    if header is None:
        raise FormatError(last + 1, "missing solution line 's td ...'")
    nb, size, n = header
    if sorted(bags) != list(range(1, nb + 1)):
        raise FormatError(last, f"expected bags 1..{nb}, found {len(bags)}")
    td = TreeDecomposition(tuple(bags[i] for i in range(1, nb + 1)), tuple(edges), size - 1)
    return td, n


def write_td(td: TreeDecomposition, n: int) -> str:
    size = max((len(b) for b in td.bags), default=0)
    lines = [f"s td {len(td.bags)} {size} {n}"]
    for i, bag in enumerate(td.bags, 1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    lines.extend(f"{s + 1} {t + 1}" for s, t in td.tree_edges)
    return "\n".join(lines) + "\n"

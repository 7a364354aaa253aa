"""Plain-text formats for instances, colorings, and reduction outputs.

All serializers are canonical (fixed line order, fractions as `n` or
`n/d`), so serialize(parse(text)) == text for files they produced.
Lines may carry `#` comments; reduction metadata rides in comment lines
of the form `# reduction <key> <value>` so a reduction file is also a
valid edge-mode instance file.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError
from .graphs import Coloring, Mode, WeightedGraph
from .oracle import ListColoringInstance
from .reduction import ChainListInstance, ReductionOutput


def format_weight(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def _parse_weight(token: str, line: int) -> Fraction:
    try:
        w = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad weight {token!r}", line) from None
    if w <= 0:
        raise ParseError(f"weight must be positive, got {token!r}", line)
    return w


def _parse_int(token: str, line: int, what: str = "integer") -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"bad {what} {token!r}", line) from None


def _content_lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


class _InstanceReader:
    """Shared scanner for the instance core; list directives are parsed
    by the caller via `extra`."""

    def __init__(self, text: str, extra_keys: frozenset[str] = frozenset()):
        self.mode: Mode | None = None
        self.n: int | None = None
        self.vertex_weights: dict[int, Fraction] = {}
        self.edges: list[tuple[int, int]] = []
        self.edge_weights: list[Fraction] = []
        self.extra: list[tuple[int, list[str]]] = []
        for lineno, tokens in _content_lines(text):
            key = tokens[0]
            if key in extra_keys:
                self.extra.append((lineno, tokens))
                continue
            handler = getattr(self, f"_line_{key}", None)
            if handler is None:
                raise ParseError(f"unknown directive {key!r}", lineno)
            handler(tokens, lineno)

    def _line_mode(self, tokens: list[str], line: int):
        if self.mode is not None:
            raise ParseError("duplicate mode line", line)
        if len(tokens) != 2 or tokens[1] not in ("vertex", "edge"):
            raise ParseError("expected 'mode vertex' or 'mode edge'", line)
        self.mode = Mode(tokens[1])

    def _line_vertices(self, tokens: list[str], line: int):
        if self.n is not None:
            raise ParseError("duplicate vertices line", line)
        if len(tokens) != 2:
            raise ParseError("expected 'vertices <count>'", line)
        self.n = _parse_int(tokens[1], line, "vertex count")
        if self.n < 0:
            raise ParseError("vertex count must be non-negative", line)

    def _require_header(self, line: int):
        if self.mode is None or self.n is None:
            raise ParseError("mode and vertices lines must come first", line)

    def _line_v(self, tokens: list[str], line: int):
        self._require_header(line)
        if self.mode is not Mode.VERTEX:
            raise ParseError("vertex weights belong to vertex mode", line)
        if len(tokens) != 3:
            raise ParseError("expected 'v <id> <weight>'", line)
        vid = _parse_int(tokens[1], line, "vertex id")
        if not 0 <= vid < self.n:
            raise ParseError(f"vertex id {vid} out of range", line)
        if vid in self.vertex_weights:
            raise ParseError(f"duplicate weight for vertex {vid}", line)
        self.vertex_weights[vid] = _parse_weight(tokens[2], line)

    def _line_e(self, tokens: list[str], line: int):
        self._require_header(line)
        if self.mode is Mode.EDGE:
            if len(tokens) not in (3, 4):
                raise ParseError("expected 'e <u> <v> [<weight>]'", line)
        elif len(tokens) != 3:
            raise ParseError("expected 'e <u> <v>'", line)
        u = _parse_int(tokens[1], line, "vertex id")
        v = _parse_int(tokens[2], line, "vertex id")
        self.edges.append((u, v))
        if self.mode is Mode.EDGE:
            # weight defaults to 1 when omitted
            weight = _parse_weight(tokens[3], line) if len(tokens) == 4 else Fraction(1)
            self.edge_weights.append(weight)

    def graph(self) -> WeightedGraph:
        if self.mode is None or self.n is None:
            raise ParseError("missing mode or vertices line", 1)
        if self.mode is Mode.VERTEX:
            # vertices without a v-line weigh 1
            weights = [self.vertex_weights.get(v, Fraction(1)) for v in range(self.n)]
            return WeightedGraph.vertex_weighted(self.n, self.edges, weights)
        return WeightedGraph.edge_weighted(self.n, self.edges, self.edge_weights)


def parse_instance(text: str) -> WeightedGraph:
    return _InstanceReader(text).graph()


def serialize_instance(g: WeightedGraph) -> str:
    lines = [f"mode {g.mode.value}", f"vertices {g.vertex_count}"]
    if g.mode is Mode.VERTEX:
        for v in range(g.vertex_count):
            lines.append(f"v {v} {format_weight(g.weights[v])}")
        for u, v in g.edges:
            lines.append(f"e {u} {v}")
    else:
        for (u, v), w in zip(g.edges, g.weights):
            lines.append(f"e {u} {v} {format_weight(w)}")
    return "\n".join(lines) + "\n"


_LIST_KEYS = frozenset({"k", "bound", "list"})


def parse_list_instance(text: str) -> ListColoringInstance:
    reader = _InstanceReader(text, extra_keys=_LIST_KEYS)
    g = reader.graph()
    k: int | None = None
    bounds: dict[int, int] = {}
    lists: dict[int, frozenset[int]] = {}
    for lineno, tokens in reader.extra:
        if tokens[0] == "k":
            if k is not None:
                raise ParseError("duplicate k line", lineno)
            if len(tokens) != 2:
                raise ParseError("expected 'k <count>'", lineno)
            k = _parse_int(tokens[1], lineno, "color count")
            if k < 1:
                raise ParseError("need k >= 1", lineno)
        elif tokens[0] == "bound":
            if k is None:
                raise ParseError("k line must precede bound lines", lineno)
            if len(tokens) != 3:
                raise ParseError("expected 'bound <color> <limit>'", lineno)
            color = _parse_int(tokens[1], lineno, "color")
            if not 1 <= color <= k:
                raise ParseError(f"color {color} out of range", lineno)
            if color in bounds:
                raise ParseError(f"duplicate bound for color {color}", lineno)
            bounds[color] = _parse_int(tokens[2], lineno, "limit")
        else:
            if k is None:
                raise ParseError("k line must precede list lines", lineno)
            if len(tokens) < 3:
                raise ParseError("expected 'list <item> <color> ...'", lineno)
            item = _parse_int(tokens[1], lineno, "item id")
            if not 0 <= item < g.item_count:
                raise ParseError(f"item {item} out of range", lineno)
            if item in lists:
                raise ParseError(f"duplicate list for item {item}", lineno)
            colors = [_parse_int(t, lineno, "color") for t in tokens[2:]]
            for c in colors:
                if not 1 <= c <= k:
                    raise ParseError(f"color {c} out of range", lineno)
            lists[item] = frozenset(colors)
    if k is None:
        raise ParseError("missing k line", 1)
    for color in range(1, k + 1):
        if color not in bounds:
            raise ParseError(f"missing bound for color {color}", 1)
    for item in range(g.item_count):
        if item not in lists:
            raise ParseError(f"missing list for item {item}", 1)
    return ListColoringInstance(
        graph=g,
        k=k,
        lists=tuple(lists[i] for i in range(g.item_count)),
        bounds=tuple(bounds[c] for c in range(1, k + 1)),
    )


def serialize_list_instance(inst: ListColoringInstance) -> str:
    body = serialize_instance(inst.graph)
    lines = [f"k {inst.k}"]
    for color, bound in enumerate(inst.bounds, 1):
        lines.append(f"bound {color} {bound}")
    for item, lst in enumerate(inst.lists):
        colors = " ".join(str(c) for c in sorted(lst))
        lines.append(f"list {item} {colors}")
    return body + "\n".join(lines) + "\n"


def parse_coloring(text: str) -> list[list[int]]:
    classes: list[list[int]] = []
    for lineno, tokens in _content_lines(text):
        classes.append([_parse_int(t, lineno, "item id") for t in tokens])
    return classes


def serialize_coloring(coloring: Coloring) -> str:
    lines = [" ".join(str(i) for i in sorted(cls)) for cls in coloring.classes]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_certificate(text: str) -> list[int]:
    colors: list[int] = []
    for lineno, tokens in _content_lines(text):
        colors.extend(_parse_int(t, lineno, "color") for t in tokens)
    return colors


def serialize_certificate(cert: Sequence[int]) -> str:
    return " ".join(str(c) for c in cert) + ("\n" if cert else "")


# --- reduction files ---------------------------------------------------

_META_PREFIX = "# reduction "


def _join_ints(values: Iterable[int]) -> str:
    return ",".join(str(v) for v in values)


def _split_ints(text: str, line: int) -> list[int]:
    if not text:
        return []
    return [_parse_int(t, line, "id") for t in text.split(",")]


def serialize_reduction(out: ReductionOutput) -> str:
    src = out.source
    meta = [
        ("b_prime", str(out.b_prime)),
        ("k", str(out.k)),
        ("target", format_weight(out.target_weight)),
        ("epsilon", format_weight(out.epsilon)),
        ("scale", str(out.scale)),
        ("p", str(out.p)),
        ("big_f", str(out.F)),
        ("frequencies", _join_ints(out.frequencies)),
        ("chains", ";".join(_join_ints(c) for c in out.chains)),
        ("stitch", _join_ints(out.stitch_edges)),
        ("source_vertices", str(src.graph.vertex_count)),
        ("source_edges", ";".join(f"{u}-{v}" for u, v in src.graph.edges)),
        ("source_lists", ";".join(_join_ints(sorted(lst)) for lst in src.lists)),
    ]
    header = "".join(f"{_META_PREFIX}{key} {value}\n" for key, value in meta)
    return header + serialize_instance(out.tree)


def parse_reduction(text: str) -> ReductionOutput:
    meta: dict[str, str] = {}
    meta_lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.startswith(_META_PREFIX):
            continue
        rest = raw[len(_META_PREFIX):].split(None, 1)
        key = rest[0]
        if key in meta:
            raise ParseError(f"duplicate reduction key {key!r}", lineno)
        meta[key] = rest[1].strip() if len(rest) > 1 else ""
        meta_lines[key] = lineno

    def need(key: str) -> tuple[str, int]:
        if key not in meta:
            raise ParseError(f"missing reduction key {key!r}", 1)
        return meta[key], meta_lines[key]

    tree = parse_instance(text)

    value, line = need("source_vertices")
    src_n = _parse_int(value, line, "vertex count")
    value, line = need("source_edges")
    src_edges = []
    if value:
        for part in value.split(";"):
            ends = part.split("-")
            if len(ends) != 2:
                raise ParseError(f"bad source edge {part!r}", line)
            src_edges.append((_parse_int(ends[0], line), _parse_int(ends[1], line)))
    value, line = need("source_lists")
    src_lists = (
        tuple(frozenset(_split_ints(part, line)) for part in value.split(";"))
        if value
        else ()
    )
    value, line = need("k")
    k = _parse_int(value, line, "color count")
    source = ChainListInstance(
        graph=WeightedGraph.edge_weighted(src_n, src_edges, [1] * len(src_edges)),
        k=k,
        lists=src_lists,
    )

    value, line = need("chains")
    chains = []
    for part in value.split(";") if value else []:
        ids = _split_ints(part, line)
        if len(ids) != 3:
            raise ParseError(f"bad chain triple {part!r}", line)
        chains.append((ids[0], ids[1], ids[2]))
    value, line = need("b_prime")
    b_prime = _parse_int(value, line, "bound")
    value, line = need("target")
    try:
        target = Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad target {value!r}", line) from None
    value, line = need("epsilon")
    epsilon = _parse_weight(value, line)
    value, line = need("scale")
    scale = _parse_int(value, line, "scale")
    value, line = need("p")
    p = _parse_int(value, line, "component count")
    value, line = need("big_f")
    big_f = _parse_int(value, line, "frequency bound")
    value, line = need("frequencies")
    frequencies = tuple(_split_ints(value, line))
    value, line = need("stitch")
    stitch = tuple(_split_ints(value, line))
    return ReductionOutput(
        tree=tree,
        b_prime=b_prime,
        k=k,
        target_weight=target,
        epsilon=epsilon,
        scale=scale,
        p=p,
        F=big_f,
        frequencies=frequencies,
        chains=tuple(chains),
        stitch_edges=stitch,
        source=source,
    )

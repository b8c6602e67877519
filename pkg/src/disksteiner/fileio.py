"""Line-oriented text formats: instances, solutions, tiling specs, embeddings.

Every format is integers-only, one record per line, with '#' comments. A
write followed by a read returns an equal object.
"""

from __future__ import annotations

from .gadgets import GridTilingInstance, RectilinearEmbedding
from .geometry import DiskInstance, SteinerTree


class FormatError(ValueError):
    """Input text does not follow the expected record grammar."""


def _records(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(fields, lineno):
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise FormatError("line %d: expected integers, got %r" % (lineno, fields))


def loads_instance(text):
    rows = list(_records(text))
    if not rows:
        raise FormatError("empty instance file")
    lineno, head = rows[0]
    if len(head) != 4 or head[0] != "udg":
        raise FormatError("line %d: expected 'udg <scale> <n> <k>'" % lineno)
    scale, n, k = _ints(head[1:], lineno)
    if len(rows) - 1 != n:
        raise FormatError("expected %d disk lines, found %d" % (n, len(rows) - 1))
    ids, xs, ys, radii, term = [], [], [], [], []
    for lineno, fields in rows[1:]:
        if len(fields) != 5 or fields[4] not in ("T", "S"):
            raise FormatError("line %d: expected '<id> <x> <y> <radius> <T|S>'" % lineno)
        i, x, y, r = _ints(fields[:4], lineno)
        ids.append(i)
        xs.append(x)
        ys.append(y)
        radii.append(r)
        term.append(fields[4] == "T")
    return DiskInstance(scale, ids, xs, ys, radii, term, k)


def dumps_instance(inst):
    lines = ["udg %d %d %d" % (inst.scale, inst.n, inst.k)]
    for i in range(inst.n):
        lines.append(
            "%d %d %d %d %s"
            % (inst.ids[i], inst.xs[i], inst.ys[i], inst.radii[i],
               "T" if inst.terminal[i] else "S")
        )
    return "\n".join(lines) + "\n"


def loads_solution(text):
    rows = list(_records(text))
    if not rows:
        raise FormatError("empty solution file")
    lineno, head = rows[0]
    if head[0] == "no":
        if len(rows) > 1:
            raise FormatError("unexpected lines after 'no'")
        return False, None
    if head[0] != "yes" or len(head) != 2:
        raise FormatError("line %d: expected 'yes <count>' or 'no'" % lineno)
    (count,) = _ints(head[1:], lineno)
    if len(rows) < 2 or rows[1][1][0] != "steiner":
        raise FormatError("expected 'steiner <ids...>' after 'yes'")
    steiner = _ints(rows[1][1][1:], rows[1][0])
    if len(steiner) != count:
        raise FormatError("steiner count %d does not match header %d" % (len(steiner), count))
    edges = []
    for lineno, fields in rows[2:]:
        if fields[0] != "edge" or len(fields) != 3:
            raise FormatError("line %d: expected 'edge <u> <v>'" % lineno)
        u, v = _ints(fields[1:], lineno)
        edges.append((u, v))
    return True, SteinerTree(edges, steiner)


def dumps_solution(feasible, tree=None):
    if not feasible:
        return "no\n"
    lines = ["yes %d" % len(tree.steiner)]
    lines.append(("steiner " + " ".join(str(s) for s in sorted(tree.steiner))).rstrip())
    for u, v in tree.edges:
        lines.append("edge %d %d" % (u, v))
    return "\n".join(lines) + "\n"


def loads_gt_spec(text):
    rows = list(_records(text))
    if not rows:
        raise FormatError("empty tiling spec")
    lineno, head = rows[0]
    if len(head) != 3 or head[0] != "gt":
        raise FormatError("line %d: expected 'gt <n> <k>'" % lineno)
    n, k = _ints(head[1:], lineno)
    cells = {(x, y): set() for x in range(1, k + 1) for y in range(1, k + 1)}
    for lineno, fields in rows[1:]:
        if len(fields) != 4:
            raise FormatError("line %d: expected '<x> <y> <a> <b>'" % lineno)
        x, y, a, b = _ints(fields, lineno)
        if (x, y) not in cells:
            raise FormatError("line %d: cell (%d, %d) out of range" % (lineno, x, y))
        cells[(x, y)].add((a, b))
    try:
        return GridTilingInstance(n, k, {key: frozenset(v) for key, v in cells.items()})
    except ValueError as exc:
        raise FormatError(str(exc))


def dumps_gt_spec(gt):
    lines = ["gt %d %d" % (gt.n, gt.k)]
    for (x, y) in sorted(gt.cells):
        for a, b in sorted(gt.cells[(x, y)]):
            lines.append("%d %d %d %d" % (x, y, a, b))
    return "\n".join(lines) + "\n"


def loads_embedding(text):
    rows = list(_records(text))
    if not rows:
        raise FormatError("empty embedding file")
    lineno, head = rows[0]
    if len(head) != 3 or head[0] != "emb":
        raise FormatError("line %d: expected 'emb <n> <m>'" % lineno)
    n, m = _ints(head[1:], lineno)
    positions = [None] * n
    edges, paths = [], []
    for lineno, fields in rows[1:]:
        if fields[0] == "v":
            if len(fields) != 4:
                raise FormatError("line %d: expected 'v <id> <x> <y>'" % lineno)
            i, x, y = _ints(fields[1:], lineno)
            if not 0 <= i < n or positions[i] is not None:
                raise FormatError("line %d: bad vertex id" % lineno)
            positions[i] = (x, y)
        elif fields[0] == "e":
            vals = _ints(fields[1:], lineno)
            if len(vals) < 6 or len(vals) % 2:
                raise FormatError("line %d: expected 'e <u> <v> <waypoints...>'" % lineno)
            edges.append((vals[0], vals[1]))
            pts = list(zip(vals[2::2], vals[3::2]))
            paths.append(tuple(pts))
        else:
            raise FormatError("line %d: unknown record %r" % (lineno, fields[0]))
    if any(p is None for p in positions):
        raise FormatError("missing vertex lines")
    if len(edges) != m:
        raise FormatError("expected %d edges, found %d" % (m, len(edges)))
    return RectilinearEmbedding(tuple(positions), tuple(edges), tuple(paths))


def dumps_embedding(emb):
    lines = ["emb %d %d" % (emb.n, emb.m)]
    for i, (x, y) in enumerate(emb.positions):
        lines.append("v %d %d %d" % (i, x, y))
    for (u, v), path in zip(emb.edges, emb.paths):
        coords = " ".join("%d %d" % (x, y) for x, y in path)
        lines.append("e %d %d %s" % (u, v, coords))
    return "\n".join(lines) + "\n"


def read_instance(path):
    with open(path, "r", encoding="ascii") as fh:
        return loads_instance(fh.read())


def write_instance(path, inst):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_instance(inst))


def read_solution(path):
    with open(path, "r", encoding="ascii") as fh:
        return loads_solution(fh.read())


def write_solution(path, feasible, tree=None):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_solution(feasible, tree))


def read_gt_spec(path):
    with open(path, "r", encoding="ascii") as fh:
        return loads_gt_spec(fh.read())


def read_embedding(path):
    with open(path, "r", encoding="ascii") as fh:
        return loads_embedding(fh.read())

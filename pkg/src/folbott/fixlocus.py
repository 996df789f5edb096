"""Catalog of torus-fixed points and fixed lines per flag.

Everything is recorded in the local frame of a reference flag and
re-read on any of the 24 fixed flags by permuting weight slots.  The
catalog has three layers:

  * base anchors: pairs (quadric monomial, cubic monomial) with seven
    tangent eigenweights assembled from monomial differences;
  * twelve exceptional events, each a blowup center inside the tangent
    frame of an anchor point, a previous event row, or a fixed-line
    endpoint.  Every event row is a direction in the normal frame and
    becomes an isolated fixed point, a further event, a fixed family
    (line), or a weight-zero marker on an existing line;
  * the five fixed lines with their six-eigenweight normal decomposition
    and the twist-unknown slots attached to each normal direction.

The child tangent frame after blowing up is produced by one split rule
throughout, so the printed decompositions act as assertions over this
module's fixtures rather than as inputs.
"""

from .torus import EigenWeight, parse_weight
from . import resolve


class DirectionNotInNormal(ValueError):
    """Asked to split along a direction absent from the normal frame."""


def tangent_split_blowup(center, tangent, direction):
    """Tangent frame at the fixed point over ``direction`` after blowup.

    ``center`` lists the tangent directions of the blowup center (a
    sub-multiset of ``tangent``); ``direction`` picks the normal
    eigenvector the new point sits over.  The child frame keeps the
    center directions and the chosen direction, and twists every other
    normal direction by -direction.
    """
    residual = list(tangent)
    for c in center:
        try:
            residual.remove(c)
        except ValueError:
            raise DirectionNotInNormal(
                "center direction %s missing from tangent frame" % c)
    try:
        residual.remove(direction)
    except ValueError:
        raise DirectionNotInNormal(
            "direction %s is not a normal direction" % direction)
    return list(center) + [direction] + [n - direction for n in residual]


def _line_normals(center, tangent, direction):
    """Normal decomposition of the fixed line over a doubled direction."""
    residual = list(tangent)
    for c in center:
        residual.remove(c)
    for _ in range(2):
        try:
            residual.remove(direction)
        except ValueError:
            raise DirectionNotInNormal(
                "family direction %s is not doubled" % direction)
    return list(center) + [direction] + [n - direction for n in residual]


# ---------------------------------------------------------------------------
# Base layer
# ---------------------------------------------------------------------------

B_MONOS = ("x0^2", "x0*x1", "x0*x2", "x1^2")
A_BASE = ("x0^3", "x0^2*x1", "x0^2*x2", "x0^2*x3")
A_EXTRA = {1: "x0*x1^2", 2: "x0*x1*x2", 3: "x1^3"}

# Anchors excluded from the point catalog because an event replaces
# them: the cube pair and the three degenerate-quadric cubes.
EVENT_ANCHORS = ((3, 4), (0, 1, 0), (0, 2, 0), (0, 3, 0))


def _w(text):
    return parse_weight(text)


def _cubics_for(k):
    return list(A_BASE) + [A_EXTRA[k]]


def base_anchor_frame(anchor):
    """(tangent eigenweights, fiber eigenweight) of a base anchor.

    ``anchor`` is (k, i) for the plain pairs with quadric B_MONOS[k],
    or (0, k, i) for pairs over the degenerate quadric x0^2 labeled by
    partner quadric B_MONOS[k].  Works for the event anchors too.
    """
    x0 = _w("x0")
    bw = [_w(m) for m in B_MONOS]
    if len(anchor) == 2:
        k, i = anchor
        fs = _cubics_for(k)
        fw = [_w(m) for m in fs]
        tb = [bw[j] - bw[k] for j in range(4) if j != k]
        ta = [fw[j] - fw[i] for j in range(5) if j != i]
        nu = bw[k] + fw[i] - x0
        return tb + ta, nu
    _, k, i = anchor
    fs = _cubics_for(k)
    fw = [_w(m) for m in fs]
    tb = [bw[k] - bw[0]]
    tb += [bw[j] - bw[k] for j in range(4) if j not in (0, k)]
    ta = [fw[j] - fw[i] for j in range(5) if j != i]
    nu = bw[0] + fw[i] - x0
    return tb + ta, nu


def _base_table_row(anchor):
    if len(anchor) == 2:
        k, i = anchor
        return (k - 1) * 5 + i
    _, k, i = anchor
    return (k + 2) * 5 + i


def base_anchors():
    """The 26 cataloged base anchors in table order."""
    out = []
    for k in (1, 2, 3):
        for i in range(5):
            if (k, i) not in EVENT_ANCHORS:
                out.append((k, i))
    for k in (1, 2, 3):
        for i in range(5):
            if (0, k, i) not in EVENT_ANCHORS:
                out.append((0, k, i))
    return out


# ---------------------------------------------------------------------------
# Events
# ---------------------------------------------------------------------------

# Rows appear in published-table order; kinds mirror the table fixtures
# in resolve.  The extra field points to the follow-up table for an
# "nd" row and to the spawned line for a "family" row.

EVENTS = {
    "cube": {
        "parent": ("base", (3, 4)),
        "center": ["x0/x1"],
        "rows": [("iso", "x0^3/x1^3", None),
                 ("iso", "x0^2*x2/x1^3", None),
                 ("nd", "x0*x2/x1^2", "cube-res"),
                 ("iso", "x0^2*x3/x1^3", None),
                 ("family", "x0^2/x1^2", "line1")],
    },
    "cube-res": {
        "parent": ("nd", ("cube", 2)),
        "center": ["x0/x1", "x0/x2"],
        "rows": [("iso", "x0/x2", None),
                 ("iso", "x0*x3/x1*x2", None),
                 ("iso", "x0^2/x1*x2", None),
                 ("iso", "x0/x1", None),
                 ("iso", "x0*x2/x1^2", None)],
    },
    "cube-end": {
        "parent": ("line", "line1"),
        "center": ["x0/x1", "x2/x0"],
        "rows": [("marker", "1", None),
                 ("iso", "x3/x1", None),
                 ("iso", "x0/x1", None),
                 ("iso", "x2/x1", None),
                 ("iso", "x0^2/x1^2", None)],
    },
    "axis1": {
        "parent": ("base", (0, 1, 0)),
        "center": ["x1/x0"],
        "rows": [("family", "x1/x0", "line2"),
                 ("iso", "x2/x0", None),
                 ("iso", "x3/x0", None),
                 ("iso", "x1^2/x0^2", None),
                 ("nd", "x2/x1", "axis1-res")],
    },
    "axis1-res": {
        "parent": ("nd", ("axis1", 4)),
        "center": ["x2/x1", "x1^2/x0*x2"],
        "rows": [("iso", "x1*x3/x0*x2", None),
                 ("iso", "x1^2/x0*x2", None),
                 ("iso", "x1^3/x0^2*x2", None),
                 ("family", "x1/x0", "line3")],
    },
    "axis1-res-end": {
        "parent": ("line", "line3"),
        "center": ["x1^2/x0*x2", "x1/x0"],
        "rows": [("nd", "x2/x1", "axis1-res-end-res"),
                 ("marker", "1", None),
                 ("iso", "x1/x2", None),
                 ("iso", "x3/x2", None),
                 ("iso", "x1^2/x0*x2", None)],
    },
    "axis1-res-end-res": {
        "parent": ("nd", ("axis1-res-end", 0)),
        "center": ["x2/x1"],
        "rows": [("iso", "x1/x0", None),
                 ("iso", "x1/x2", None),
                 ("iso", "x1^2/x2^2", None),
                 ("iso", "x1*x3/x2^2", None),
                 ("iso", "x1^3/x0*x2^2", None),
                 ("iso", "x1^2/x0*x2", None)],
    },
    "axis1-end": {
        "parent": ("line", "line2"),
        "center": ["x1/x0", "x0*x2/x1^2"],
        "rows": [("family", "x1/x0", "line4"),
                 ("iso", "x3/x1", None),
                 ("iso", "x2/x1", None),
                 ("marker", "1", None)],
    },
    "axis1-end-end": {
        "parent": ("line", "line4"),
        "center": ["x0*x2/x1^2", "x1/x0"],
        "rows": [("marker", "1", None),
                 ("iso", "x0/x1", None),
                 ("iso", "x0*x3/x1^2", None),
                 ("iso", "x0*x2/x1^2", None),
                 ("iso", "x1/x0", None)],
    },
    "axis2": {
        "parent": ("base", (0, 2, 0)),
        "center": ["x1/x2", "x1^2/x0*x2"],
        "rows": [("iso", "x1/x0", None),
                 ("iso", "x3/x0", None),
                 ("iso", "x1*x2/x0^2", None),
                 ("family", "x2/x0", "line5")],
    },
    "axis2-end": {
        "parent": ("line", "line5"),
        "center": ["x1/x2"],
        "rows": [("iso", "x1^2/x0*x2", None),
                 ("iso", "x1/x0", None),
                 ("iso", "x3/x2", None),
                 ("marker", "1", None),
                 ("iso", "x1/x2", None),
                 ("iso", "x2/x0", None)],
    },
    "tangent": {
        "parent": ("base", (0, 3, 0)),
        "center": ["x0/x1", "x0*x2/x1^2"],
        "rows": [("iso", "x1^2/x0^2", None),
                 ("iso", "x1/x0", None),
                 ("iso", "x2/x0", None),
                 ("iso", "x3/x0", None),
                 ("iso", "x1^3/x0^3", None)],
    },
}

LINE_SOURCE = {
    "line1": ("cube", 4),
    "line2": ("axis1", 0),
    "line3": ("axis1-res", 3),
    "line4": ("axis1-end", 0),
    "line5": ("axis2", 3),
}

LINE_SLOTS = {
    "line1": (1, 2, 3, 4, 5, 6),
    "line2": (13, 14, 15, 16, 17, 18),
    "line3": (7, 8, 9, 10, 11, 12),
    "line4": (19, 20, 21, 22, 23, 24),
    "line5": (25, 26, 27, 28, 29, 30),
}

LINE_IDS = tuple(sorted(LINE_SLOTS))


class _EventFrame:
    def __init__(self, center, tangent, nu):
        self.center = center
        self.tangent = tangent
        self.nu = nu

    def normal(self):
        residual = list(self.tangent)
        for c in self.center:
            residual.remove(c)
        return residual


def _event_frame(key, memo):
    if key in memo:
        return memo[key]
    ev = EVENTS[key]
    kind, ref = ev["parent"]
    if kind == "base":
        tangent, nu = base_anchor_frame(ref)
    elif kind == "nd":
        ptable, prow = ref
        pframe = _event_frame(ptable, memo)
        d = _w(EVENTS[ptable]["rows"][prow][1])
        tangent = tangent_split_blowup(pframe.center, pframe.tangent, d)
        nu = pframe.nu + d
    else:
        normals, wfiber = _line_frame(ref, memo)
        tangent = list(normals) + [EigenWeight.zero()]
        nu = wfiber
    frame = _EventFrame([_w(c) for c in ev["center"]], tangent, nu)
    memo[key] = frame
    return frame


def _line_frame(line_id, memo):
    key, row = LINE_SOURCE[line_id]
    frame = _event_frame(key, memo)
    d = _w(EVENTS[key]["rows"][row][1])
    normals = _line_normals(frame.center, frame.tangent, d)
    return normals, frame.nu + d


# Build order: every event after its parent event or line source.
EVENT_ORDER = ("cube", "axis1", "axis2", "tangent",
               "cube-res", "axis1-res",
               "cube-end", "axis1-end", "axis1-res-end", "axis2-end",
               "axis1-end-end", "axis1-res-end-res")


def validate_events():
    """Structural sanity of the event fixtures.

    For each event, the row directions (markers contributing a zero
    weight, family directions doubled) must reproduce the normal frame
    of the center as a multiset, and the center must embed in the
    parent tangent frame.  Raises AssertionError on any defect.
    """
    memo = {}
    for key in EVENT_ORDER:
        frame = _event_frame(key, memo)
        normal = frame.normal()
        claimed = []
        for kind, d, _ in EVENTS[key]["rows"]:
            w = _w(d)
            claimed.append(w)
            if kind == "family":
                claimed.append(w)
        def _multiset(ws):
            out = {}
            for x in ws:
                out[x.coeffs] = out.get(x.coeffs, 0) + 1
            return out
        if _multiset(claimed) != _multiset(normal):
            raise AssertionError(
                "event %s rows do not tile the normal frame" % key)


# ---------------------------------------------------------------------------
# Records and the catalog
# ---------------------------------------------------------------------------

class FixedPointRecord:
    """Isolated fixed point: fiber weight plus seven tangent weights."""

    def __init__(self, rid, table, row, nu, tangent, flag):
        self.id = rid
        self.table = table
        self.row = row
        self.nu = nu
        self.tangent = tuple(tangent)
        self.flag = flag

    def nu_value(self, w):
        return self.nu.evaluate_at_flag(self.flag, w)

    def tangent_values(self, w):
        return [t.evaluate_at_flag(self.flag, w) for t in self.tangent]

    def __repr__(self):
        return "FixedPointRecord(%r)" % self.id


class FixedLineRecord:
    """Fixed line: normal decomposition, twist slots, fiber weight."""

    def __init__(self, rid, table, row, wfiber, normals, slots, flag):
        self.id = rid
        self.table = table
        self.row = row
        self.wfiber = wfiber
        self.normals = tuple(normals)
        self.slots = tuple(slots)
        self.flag = flag

    def wfiber_value(self, w):
        return self.wfiber.evaluate_at_flag(self.flag, w)

    def normal_values(self, w):
        return [n.evaluate_at_flag(self.flag, w) for n in self.normals]

    def __repr__(self):
        return "FixedLineRecord(%r)" % self.id


class Catalog:
    def __init__(self, flag, points, lines, markers):
        self.flag = flag
        self.points = points
        self.lines = lines
        self.markers = markers

    def census(self):
        return {"points": len(self.points), "lines": len(self.lines)}


def build_catalog(flag):
    """All fixed points and lines of the four-stage space on one flag."""
    flag = tuple(flag)
    memo = {}
    points = []
    for anchor in base_anchors():
        tangent, nu = base_anchor_frame(anchor)
        row = _base_table_row(anchor)
        points.append(FixedPointRecord(
            "base/r%02d" % row, "base", row, nu, tangent, flag))
    markers = []
    lines = []
    for key in EVENT_ORDER:
        frame = _event_frame(key, memo)
        parent_kind, parent_ref = EVENTS[key]["parent"]
        for ri, (kind, d, extra) in enumerate(EVENTS[key]["rows"]):
            if kind == "iso":
                dw = _w(d)
                tangent = tangent_split_blowup(
                    frame.center, frame.tangent, dw)
                points.append(FixedPointRecord(
                    "%s/r%d" % (key, ri), key, ri,
                    frame.nu + dw, tangent, flag))
            elif kind == "family":
                normals, wfiber = _line_frame(extra, memo)
                lines.append(FixedLineRecord(
                    extra, key, ri, wfiber, normals,
                    LINE_SLOTS[extra], flag))
            elif kind == "marker":
                if parent_kind != "line":
                    raise AssertionError(
                        "marker outside a line-end event in %s" % key)
                markers.append((key, ri, parent_ref))
    lines.sort(key=lambda rec: rec.id)
    return Catalog(flag, points, lines, markers)


def cross_check_generators():
    """Join the pipeline table check with the catalog row structure.

    Returns {record id or (table, row): status} using the cell statuses
    from the staged pipelines; base rows use their anchor ids.
    """
    reports = resolve.check_tables()
    out = {}
    for rep in reports:
        if rep.table == "base":
            out["base/r%02d" % rep.row] = rep.status
        else:
            out["%s/r%d" % (rep.table, rep.row)] = rep.status
    return out

"""Reidemeister moves and budgeted diagram simplification.

Moves are implemented as end-level surgery: each edge is a directed link
between two crossing slots, a move deletes or creates crossings and
rewires the links, and the component walks are rebuilt by tracing flow.
Every move returns a replayable record.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .diagram import (
    LinkDiagram,
    MoveBudget,
    LinkError,
    ValidationError,
    canonical_bytes,
    edge_component_map,
    faces,
    threading,
    _occurrences,
    _pin_walks,
    _thread_single,
)

__all__ = [
    "applicable_moves",
    "apply_move",
    "replay_trace",
    "simplify",
    "random_moves",
]


# Compass bearings used to lay out new crossings counterclockwise.
_CCW = {"E": 0, "NE": 60, "N": 90, "NW": 120, "W": 180, "SW": 240, "S": 270, "SE": 300}


class _Surgery:
    """Rewires a diagram at the level of directed edge links."""

    def __init__(self, d: LinkDiagram):
        self.d = d
        self.th = threading(d)
        self.ecomp = edge_component_map(d)
        # link: edge id -> [src_end, dst_end, component]
        self.links: dict = {}
        for e in range(d.edge_count):
            head, tail = self.th[e]
            self.links[e] = [tail, head, self.ecomp[e]]
        self.fuses: list[tuple] = []
        self.deleted: set[int] = set()
        self.new_crossings: list[tuple] = []  # (cid, [end0..end3])
        self._fresh = 0

    def fresh_link(self, src, dst, comp):
        token = ("x", self._fresh)
        self._fresh += 1
        self.links[token] = [src, dst, comp]
        return token

    def drop_crossing(self, t: int):
        self.deleted.add(t)

    def fuse(self, end_a, end_b):
        self.fuses.append((end_a, end_b))

    def substitute(self, edge, old_end, new_end):
        rec = self.links[edge]
        if rec[0] == old_end:
            rec[0] = new_end
        elif rec[1] == old_end:
            rec[1] = new_end
        else:
            raise LinkError("substitute: end not present on edge")

    def cut_near(self, end, new_in, new_out):
        """Cut the link incident to ``end``; the piece at ``end`` attaches to
        the new crossing, arriving at ``new_in`` or departing ``new_out``
        according to the flow direction."""
        for e, rec in self.links.items():
            src, dst, comp = rec
            if src == end:
                # strand departs `end`; adjacent piece flows end -> new_in
                self.links[e] = [new_out, dst, comp]
                self.fresh_link(src, new_in, comp)
                return
            if dst == end:
                self.links[e] = [src, new_in, comp]
                self.fresh_link(new_out, dst, comp)
                return
        raise LinkError("cut_near: end not found")

    def new_crossing(self, cid, layout):
        """``layout``: four (bearing, role) pairs; role "in" marks a strand
        arriving at the crossing.  Returns the four ends in slot order, with
        slot 0 at the under-in entry as selected by the caller via ordering:
        the first layout entry must be the under-in end."""
        b0 = layout[0][0]
        order = sorted(layout, key=lambda br: (_CCW[br[0]] - _CCW[b0]) % 360)
        ends = [(cid, s) for s in range(4)]
        roles = {}
        by_bearing = {}
        for s, (bearing, role) in enumerate(order):
            roles[(cid, s)] = role
            by_bearing[bearing] = (cid, s)
        self.new_crossings.append((cid, ends, roles))
        return by_bearing

    def build(self) -> tuple[LinkDiagram, dict]:
        """Trace chains into edges and walks, returning the new diagram and
        a map from surviving old edge ids to new ids."""
        link_at: dict = {}
        for e, (src, dst, comp) in self.links.items():
            for end in (src, dst):
                if end in link_at:
                    raise LinkError("end used by two links")
                link_at[end] = e
        fuse_at: dict = {}
        for a, b in self.fuses:
            fuse_at[a] = b
            fuse_at[b] = a

        def is_real(end):
            cid = end[0]
            if isinstance(cid, int):
                return cid not in self.deleted
            return True  # new crossing

        # Chain links through fusions into final edges.
        chain_of: dict = {}
        chains: list[dict] = []
        for e, (src, dst, comp) in sorted(self.links.items(), key=lambda kv: str(kv[0])):
            if e in chain_of:
                continue
            # walk backward to the chain start
            cur = e
            while True:
                s = self.links[cur][0]
                if is_real(s) or s not in fuse_at:
                    break
                prv_end = fuse_at[s]
                prv = link_at.get(prv_end)
                if prv is None or prv == cur:
                    break
                if self.links[prv][1] != prv_end:
                    raise LinkError("fusion joins two strand sources")
                if prv == e:
                    cur = e  # closed chain
                    break
                cur = prv
            start = cur
            members = []
            cur = start
            closed = False
            while True:
                members.append(cur)
                chain_of[cur] = len(chains)
                d_end = self.links[cur][1]
                if is_real(d_end) or d_end not in fuse_at:
                    break
                nxt_end = fuse_at[d_end]
                nxt = link_at.get(nxt_end)
                if nxt is None:
                    break
                if self.links[nxt][0] != nxt_end:
                    raise LinkError("fusion joins two strand targets")
                if nxt == start:
                    closed = True
                    break
                cur = nxt
            chains.append(
                {
                    "members": members,
                    "src": self.links[start][0],
                    "dst": self.links[members[-1]][1],
                    "comp": self.links[start][2],
                    "closed": closed,
                }
            )

        # Split open chains into surviving strands and excised arcs (the
        # detached loop of an R1 reduction has both endpoints at a deleted
        # crossing and simply disappears).
        for c in chains:
            if c["closed"]:
                continue
            sr, dr = is_real(c["src"]), is_real(c["dst"])
            if sr != dr:
                raise LinkError("surgery left a dangling strand")
            c["excised"] = not sr
        # Crossing tuples in a stable order: kept old crossings, then new.
        kept = [t for t in range(len(self.d.crossings)) if t not in self.deleted]
        slot_token: dict = {}
        for e, (src, dst, comp) in self.links.items():
            c = chain_of[e]
            for end in (src, dst):
                if is_real(end):
                    slot_token[end] = c
        tuples = []
        order_ids = []
        for t in kept:
            tuples.append(tuple(slot_token[(t, s)] for s in range(4)))
            order_ids.append(t)
        for cid, ends, roles in self.new_crossings:
            tuples.append(tuple(slot_token[end] for end in ends))
            order_ids.append(cid)

        # Index crossings for walk tracing.
        cross_index = {cid: i for i, cid in enumerate(order_ids)}

        # Declared roles on new crossings must match the link directions.
        for cid, ends, roles in self.new_crossings:
            for end, role in roles.items():
                if role == "in":
                    ok = any(rec[1] == end for rec in self.links.values())
                else:
                    ok = any(rec[0] == end for rec in self.links.values())
                if not ok:
                    raise LinkError(f"new crossing end {end} violates its role")

        # Walks: follow chain dst -> exit slot (s+2) -> chain there.
        open_chains = [
            i
            for i, c in enumerate(chains)
            if not c["closed"] and not c.get("excised")
        ]
        chain_at_end: dict = {}
        for i in open_chains:
            chain_at_end[chains[i]["src"]] = i
        visited = set()
        cycles = []
        for i in open_chains:
            if i in visited:
                continue
            cyc = []
            cur = i
            while cur not in visited:
                visited.add(cur)
                cyc.append(cur)
                cid, s = chains[cur]["dst"]
                nxt_end = (cid, (s + 2) % 4)
                if nxt_end not in chain_at_end:
                    raise LinkError("walk tracing left the diagram")
                cur = chain_at_end[nxt_end]
            cycles.append(cyc)

        # Order components: edge-bearing cycles by original component index,
        # free loops (closed chains) appended afterwards.
        cycles.sort(key=lambda cyc: min(chains[c]["comp"] for c in cyc))
        free = self.d.free_loops + sum(1 for c in chains if c["closed"])
        labels = None
        if self.d.labels is not None:
            old = list(self.d.labels)
            walk_count = len(self.d.components)
            used = [min(chains[c]["comp"] for c in cyc) for cyc in cycles]
            freed = sorted(
                {chains[i]["comp"] for i in range(len(chains)) if chains[i]["closed"]}
            )
            labels = (
                [old[i] for i in used]
                + [old[i] for i in freed]
                + old[walk_count:]
            )

        # Renumber edges by traversal order along cycles.
        rename: dict = {}
        nxt = 0
        walks = []
        for cyc in cycles:
            w = []
            for c in cyc:
                if c not in rename:
                    rename[c] = nxt
                    nxt += 1
                w.append(rename[c])
            walks.append(tuple(w))
        crossings = tuple(
            tuple(rename[tok] for tok in tup) for tup in tuples
        )

        target = {}
        for i, ch in enumerate(chains):
            if ch["closed"] or ch.get("excised"):
                continue
            e = rename[i]
            cid_s, ss = ch["src"]
            cid_d, sd = ch["dst"]
            target[e] = (
                (cross_index[cid_d], sd),
                (cross_index[cid_s], ss),
            )
        walks = _pin_walks(crossings, nxt, tuple(walks), target)

        out = LinkDiagram(
            crossings=crossings,
            edge_count=nxt,
            components=walks,
            free_loops=free,
            labels=tuple(labels) if labels is not None else None,
        )
        edge_map = {}
        for e, rec in self.links.items():
            if isinstance(e, int):
                c = chain_of[e]
                if not chains[c]["closed"] and not chains[c].get("excised"):
                    edge_map[e] = rename[c]
        return out, edge_map


# ---------------------------------------------------------------------------
# Face bookkeeping
# ---------------------------------------------------------------------------


def _normalized_faces(d: LinkDiagram):
    out = []
    for f in faces(d):
        k = min(range(len(f)), key=lambda i: f[i])
        out.append(tuple(f[k:] + f[:k]))
    out.sort()
    return out


def _slot_parity_over(s: int) -> bool:
    return s % 2 == 1


# ---------------------------------------------------------------------------
# Move detection
# ---------------------------------------------------------------------------


def applicable_moves(d: LinkDiagram, kinds=("r1", "r2", "r3")) -> list[dict]:
    """Enumerate applicable reducing moves (and R3 slides), deterministically."""
    out = []
    fs = _normalized_faces(d)
    for f in fs:
        if len(f) == 1 and "r1" in kinds:
            e, (t, s) = f[0]
            out.append({"move": "r1", "crossing": t, "slot": s})
        elif len(f) == 2 and "r2" in kinds:
            (e1, (t1, s1)), (e2, (t2, s2)) = f
            if t1 == t2:
                continue
            # e1 occupies (t1, s1) and (t2, (s2+1)%4)
            if _slot_parity_over(s1) == _slot_parity_over((s2 + 1) % 4):
                out.append({"move": "r2", "crossing": t1, "slot": s1})
        elif len(f) == 3 and "r3" in kinds:
            corners = [end[0] for _, end in f]
            if len(set(corners)) != 3:
                continue
            for k in range(3):
                g = f[k:] + f[:k]
                (e1, (t1, s1)), (e2, (t2, s2)), (e3, (t3, s3)) = g
                # side between the first two corners: e2 at (t1,(s1+1)%4), (t2,s2)
                if _slot_parity_over((s1 + 1) % 4) == _slot_parity_over(s2):
                    out.append({"move": "r3", "crossing": t1, "slot": s1})
    return out


def insertion_moves(d: LinkDiagram, max_results: Optional[int] = None) -> list[dict]:
    """Enumerate R2 insertions (strand pushed over a face neighbour)."""
    out = []
    fs = _normalized_faces(d)
    for fi, f in enumerate(fs):
        if len(f) < 2:
            continue
        e0, (t0, s0) = f[0]
        for i in range(len(f)):
            for j in range(len(f)):
                if i == j or f[i][0] == f[j][0]:
                    continue
                for over in (True, False):
                    out.append(
                        {
                            "move": "r2add",
                            "crossing": t0,
                            "slot": s0,
                            "i": i,
                            "j": j,
                            "over": over,
                        }
                    )
                    if max_results and len(out) >= max_results:
                        return out
    return out


# ---------------------------------------------------------------------------
# Move application
# ---------------------------------------------------------------------------


def _find_face(d, t, s):
    for f in _normalized_faces(d):
        for k, (e, end) in enumerate(f):
            if end == (t, s):
                return tuple(f[k:] + f[:k])
    raise LinkError(f"no face at crossing {t} slot {s}")


def _apply_r1(d: LinkDiagram, t: int, s: int):
    f = _find_face(d, t, s)
    if len(f) != 1:
        raise LinkError("r1: face is not a monogon")
    sg = _Surgery(d)
    sg.drop_crossing(t)
    sg.fuse((t, (s + 2) % 4), (t, (s + 3) % 4))
    return sg.build()[0]


def _apply_r2(d: LinkDiagram, t: int, s: int):
    f = _find_face(d, t, s)
    if len(f) != 2:
        raise LinkError("r2: face is not a bigon")
    (e1, (t1, s1)), (e2, (t2, s2)) = f
    if (t1, s1) != (t, s):
        (e1, (t1, s1)), (e2, (t2, s2)) = (e2, (t2, s2)), (e1, (t1, s1))
    if _slot_parity_over(s1) != _slot_parity_over((s2 + 1) % 4):
        raise LinkError("r2: bigon is a clasp, not reducible")
    sg = _Surgery(d)
    sg.drop_crossing(t1)
    sg.drop_crossing(t2)
    sg.fuse((t1, s1), (t1, (s1 + 2) % 4))
    sg.fuse((t1, (s1 + 1) % 4), (t1, (s1 + 3) % 4))
    sg.fuse((t2, s2), (t2, (s2 + 2) % 4))
    sg.fuse((t2, (s2 + 1) % 4), (t2, (s2 + 3) % 4))
    return sg.build()[0]


def _apply_r3(d: LinkDiagram, t: int, s: int):
    f = _find_face(d, t, s)
    if len(f) != 3:
        raise LinkError("r3: face is not a triangle")
    (e1, (p, s1)), (m, (q, s2)), (e3, (r, s3)) = f
    sp = (s1 + 1) % 4  # m's slot at p
    sq = s2            # m's slot at q
    if _slot_parity_over(sp) != _slot_parity_over(sq):
        raise LinkError("r3: side is not slideable")
    th = threading(d)
    ecomp = edge_component_map(d)

    m_edge = d.crossings[p][sp]
    x_p = d.crossings[p][(sp + 2) % 4]
    x_q = d.crossings[q][(sq + 2) % 4]
    z_rfar = d.crossings[r][(s3 + 2) % 4]
    y_rfar = d.crossings[r][((s3 + 1) + 2) % 4]

    x_over = _slot_parity_over(sp)
    # Flow directions.
    x_fwd = th[m_edge][0] == (q, sq)          # X runs p -> q
    z_out = th[z_rfar][1] == (r, (s3 + 2) % 4)  # Z leaves r along z_rfar
    y_out = th[y_rfar][1] == (r, ((s3 + 1) + 2) % 4)

    # Relations at the replaced crossings: X vs Y at p, X vs Z at q.
    sg = _Surgery(d)
    sg.drop_crossing(p)
    sg.drop_crossing(q)

    # n1 = X x Z near r (on the z_rfar side), n2 = X x Y.
    xin1, xout1 = ("W", "E") if x_fwd else ("E", "W")
    zin, zout = ("SW", "NE") if not z_out else ("NE", "SW")
    # Z flows r->far: enters n1 from the r side (NE).
    n1_layout_strands = {
        "X": {xin1: "in", xout1: "out"},
        "Z": {zin: "in", zout: "out"},
    }
    xin2, xout2 = ("W", "E") if x_fwd else ("E", "W")
    yin, yout = ("N", "S") if y_out else ("S", "N")
    n2_layout_strands = {
        "X": {xin2: "in", xout2: "out"},
        "Y": {yin: "in", yout: "out"},
    }

    def layout_for(strands, x_is_over):
        under = "Z" if x_is_over else "X"
        if "Z" not in strands:
            under = "Y" if x_is_over else "X"
        over = "X" if x_is_over else ("Z" if "Z" in strands else "Y")
        under_in = [b for b, role in strands[under].items() if role == "in"][0]
        entries = []
        for name in (under, over):
            for b, role in strands[name].items():
                entries.append((b, role))
        entries.sort(key=lambda br: (_CCW[br[0]] - _CCW[under_in]) % 360)
        return entries

    n1 = sg.new_crossing("n1", layout_for(n1_layout_strands, x_over))
    n2 = sg.new_crossing("n2", layout_for(n2_layout_strands, x_over))

    # X path: x_p -> n1 -> m -> n2 -> x_q.
    sg.substitute(x_p, (p, (sp + 2) % 4), n1[xin1] if x_fwd else n1[xout1])
    sg.substitute(m_edge, (p, sp), n1[xout1] if x_fwd else n1[xin1])
    sg.substitute(m_edge, (q, sq), n2[xin2] if x_fwd else n2[xout2])
    sg.substitute(x_q, (q, (sq + 2) % 4), n2[xout2] if x_fwd else n2[xin2])
    # Y fuses straight through p, Z through q.
    sg.fuse((p, s1), (p, (s1 + 2) % 4))
    sg.fuse((q, (sq + 1) % 4), (q, (sq + 3) % 4))
    # Cut the far extensions next to r.
    sg.cut_near((r, (s3 + 2) % 4), n1[zin], n1[zout])
    sg.cut_near((r, ((s3 + 1) + 2) % 4), n2[yin], n2[yout])
    return sg.build()[0]


def _apply_r1add(d: LinkDiagram, edge: int, sign: int, side: int = 0):
    """Insert a kink of the given sign on ``edge``.

    The strand arrives under from the south and leaves over to the east
    (positive) or arrives under and leaves over mirrored (negative); the
    little loop closes the remaining two slots.
    """
    if not (0 <= edge < d.edge_count):
        raise LinkError("r1add: edge out of range")
    th = threading(d)
    comp = edge_component_map(d)[edge]
    sg = _Surgery(d)
    tail = th[edge][1]
    if sign > 0:
        # (piece_in, piece_out, loop, loop): under in S, over out E.
        ends = sg.new_crossing(
            "k", [("S", "in"), ("E", "out"), ("N", "out"), ("W", "in")]
        )
        sg.cut_near(tail, ends["S"], ends["E"])
        sg.fresh_link(ends["N"], ends["W"], comp)
    else:
        # (piece_in, loop, loop, piece_out): over-in slot 1 makes it negative.
        ends = sg.new_crossing(
            "k", [("S", "in"), ("E", "in"), ("N", "out"), ("W", "out")]
        )
        sg.cut_near(tail, ends["S"], ends["W"])
        sg.fresh_link(ends["N"], ends["E"], comp)
    return sg.build()[0]


def apply_move(d: LinkDiagram, rec: dict) -> LinkDiagram:
    kind = rec["move"]
    if kind == "r1":
        return _apply_r1(d, rec["crossing"], rec["slot"])
    if kind == "r2":
        return _apply_r2(d, rec["crossing"], rec["slot"])
    if kind == "r3":
        return _apply_r3(d, rec["crossing"], rec["slot"])
    if kind == "r1add":
        return _apply_r1add(d, rec["edge"], rec["sign"], rec.get("side", 0))
    if kind == "r2add":
        return _apply_r2add(d, rec)
    raise LinkError(f"unknown move {kind!r}")


def _apply_r2add(d: LinkDiagram, rec: dict):
    f = _find_face(d, rec["crossing"], rec["slot"])
    i, j, over = rec["i"], rec["j"], rec["over"]
    if i >= len(f) or j >= len(f):
        raise LinkError("r2add: dart index out of range")
    ea, enda = f[i]
    eb, endb = f[j]
    if ea == eb:
        raise LinkError("r2add: need two distinct edges")
    th = threading(d)
    ecomp = edge_component_map(d)
    sg = _Surgery(d)

    a_fwd = th[ea][0] == enda  # dart direction matches flow
    b_fwd = th[eb][0] == endb

    # u1: alpha vertical (N/S ends), beta horizontal (E/W).  The finger
    # descends at u1 and ascends at u2; beta meets u2 first along its dart.
    def strand_layout(vert_in_top: bool, horiz_in_east: bool, alpha_vert: bool):
        if alpha_vert:
            a = {"N": "in", "S": "out"} if vert_in_top else {"S": "in", "N": "out"}
            b = {"E": "in", "W": "out"} if horiz_in_east else {"W": "in", "E": "out"}
        else:
            a = {"E": "in", "W": "out"} if horiz_in_east else {"W": "in", "E": "out"}
            b = {"N": "in", "S": "out"} if vert_in_top else {"S": "in", "N": "out"}
        return a, b

    # At u1: alpha arrives from N when its flow matches the dart direction.
    a1, b1 = strand_layout(vert_in_top=a_fwd, horiz_in_east=b_fwd, alpha_vert=True)
    a2, b2 = strand_layout(vert_in_top=not a_fwd, horiz_in_east=b_fwd, alpha_vert=True)

    def build_layout(a_map, b_map, a_over):
        under = b_map if a_over else a_map
        over_m = a_map if a_over else b_map
        under_in = [b for b, r in under.items() if r == "in"][0]
        entries = [(b, r) for b, r in under.items()] + [(b, r) for b, r in over_m.items()]
        entries.sort(key=lambda br: (_CCW[br[0]] - _CCW[under_in]) % 360)
        return entries

    u1 = sg.new_crossing("u1", build_layout(a1, b1, over))
    u2 = sg.new_crossing("u2", build_layout(a2, b2, over))

    # alpha: pre -> u1 (descend), tip below beta (u1 -> u2), u2 -> post.
    src, dst, comp = sg.links.pop(ea)
    if a_fwd:
        sg.fresh_link(src, u1["N"], comp)      # pre: tail .. u1
        sg.fresh_link(u1["S"], u2["S"], comp)  # tip
        sg.fresh_link(u2["N"], dst, comp)      # post: u2 .. head
    else:
        sg.fresh_link(src, u2["N"], comp)
        sg.fresh_link(u2["S"], u1["S"], comp)
        sg.fresh_link(u1["N"], dst, comp)
    # beta passes u2 then u1 along its own dart direction.
    src, dst, comp = sg.links.pop(eb)
    if b_fwd:
        sg.fresh_link(src, u2["E"], comp)
        sg.fresh_link(u2["W"], u1["E"], comp)
        sg.fresh_link(u1["W"], dst, comp)
    else:
        sg.fresh_link(src, u1["W"], comp)
        sg.fresh_link(u1["E"], u2["W"], comp)
        sg.fresh_link(u2["E"], dst, comp)
    return sg.build()[0]


def replay_trace(d: LinkDiagram, trace: list[dict]) -> LinkDiagram:
    for rec in trace:
        d = apply_move(d, rec)
    return d


# ---------------------------------------------------------------------------
# Simplification
# ---------------------------------------------------------------------------


def _greedy(d: LinkDiagram, trace: list[dict], budget: MoveBudget, steps: list[int]):
    while steps[0] < budget.max_steps:
        moves = applicable_moves(d, kinds=("r1", "r2"))
        if not moves:
            break
        rec = moves[0]
        d = apply_move(d, rec)
        trace.append(rec)
        steps[0] += 1
    return d


def _search(d: LinkDiagram, base_crossings: int, budget: MoveBudget, steps: list[int]):
    """Bounded BFS over R3 slides and temporary R2 insertions; returns a
    strictly smaller greedy-reduced diagram with its move list, or None."""
    start_key = canonical_bytes(d)
    frontier: list[tuple[LinkDiagram, list[dict]]] = [(d, [])]
    seen = {start_key}
    for depth in range(budget.max_r3_depth):
        nxt: list[tuple[LinkDiagram, list[dict]]] = []
        for cur, moves in frontier:
            if steps[0] >= budget.max_steps:
                return None
            cands = applicable_moves(cur, kinds=("r3",))
            if cur.crossing_count + 2 <= base_crossings + budget.max_crossing_inflation:
                cands = cands + insertion_moves(cur)
            for rec in cands:
                if steps[0] >= budget.max_steps:
                    return None
                steps[0] += 1
                try:
                    new = apply_move(cur, rec)
                except LinkError:
                    continue
                sub: list[dict] = []
                red = _greedy(new, sub, budget, steps)
                if red.crossing_count < base_crossings:
                    return red, moves + [rec] + sub
                key = canonical_bytes(new)
                if key in seen:
                    continue
                seen.add(key)
                if new.crossing_count <= base_crossings + budget.max_crossing_inflation:
                    nxt.append((new, moves + [rec]))
        frontier = nxt
        if not frontier:
            break
    return None


def simplify(d: LinkDiagram, budget: MoveBudget = MoveBudget()):
    """Reduce ``d`` with Reidemeister moves within the given budget.

    Returns (diagram, trace).  The trace replays on ``d`` to reproduce the
    returned diagram exactly.
    """
    steps = [0]
    trace: list[dict] = []
    d = _greedy(d, trace, budget, steps)
    while d.crossing_count and steps[0] < budget.max_steps:
        found = _search(d, d.crossing_count, budget, steps)
        if found is None:
            break
        d, sub = found
        trace.extend(sub)
        d2 = _greedy(d, trace, budget, steps)
        d = d2
    return d, trace


def random_moves(d: LinkDiagram, rng, count: int) -> tuple[LinkDiagram, list[dict]]:
    """Apply ``count`` random moves (any type) for test corpora."""
    trace = []
    for _ in range(count):
        options = applicable_moves(d)
        options += insertion_moves(d)
        for e in range(d.edge_count):
            for sign in (1, -1):
                options.append({"move": "r1add", "edge": e, "sign": sign, "side": 0})
        if not options:
            break
        rec = options[rng.randrange(len(options))]
        try:
            new = apply_move(d, rec)
        except LinkError:
            continue
        d = new
        trace.append(rec)
    return d, trace

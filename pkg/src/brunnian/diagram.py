"""Oriented planar link diagrams in PD form.

A diagram is a list of crossings, each a 4-tuple of edge identifiers
listed with the incoming under-strand first and the remaining slots in
counterclockwise order, together with an explicit partition of the edges
into oriented closed walks (one per component that meets a crossing) and
a count of crossing-free circles.

Slot conventions used throughout:

* slot 0 holds the incoming under-strand, slot 2 the outgoing one;
* slots 1 and 3 hold the over-strand, whose direction is recovered from
  the component walks;
* a crossing is positive when the over-strand enters at slot 3.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

__all__ = [
    "LinkDiagram",
    "MoveBudget",
    "LinkError",
    "ValidationError",
    "validate",
    "crossing_signs",
    "edge_component_map",
    "sublink",
    "split_components",
    "mirror",
    "reverse_component",
    "disjoint_union",
    "canonical",
    "canonical_bytes",
    "diagram_to_json",
    "diagram_from_json",
    "PD_FORMAT_VERSION",
]

PD_FORMAT_VERSION = 1


class LinkError(Exception):
    """Base error for diagram and construction failures."""


class ValidationError(LinkError):
    pass


@dataclass(frozen=True)
class MoveBudget:
    """Resource limits for the Reidemeister-move simplifier."""

    max_r3_depth: int = 6
    max_crossing_inflation: int = 4
    max_steps: int = 100_000

    def __post_init__(self):
        if min(self.max_r3_depth, self.max_crossing_inflation, self.max_steps) < 0:
            raise ValueError("budget fields must be nonnegative")


@dataclass(frozen=True)
class LinkDiagram:
    """Immutable oriented planar diagram.

    ``components`` lists only components that meet at least one crossing;
    crossing-free circles are counted by ``free_loops`` and are indexed
    after the listed components.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    edge_count: int
    components: tuple[tuple[int, ...], ...]
    free_loops: int = 0
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(
            self, "crossings", tuple(tuple(int(x) for x in c) for c in self.crossings)
        )
        object.__setattr__(
            self, "components", tuple(tuple(int(e) for e in c) for c in self.components)
        )
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))

    @property
    def component_count(self) -> int:
        return len(self.components) + self.free_loops

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def __str__(self) -> str:
        return (
            f"LinkDiagram({self.crossing_count} crossings, "
            f"{self.component_count} components, {self.free_loops} free loops)"
        )


# ---------------------------------------------------------------------------
# Orientation threading
#
# Each edge occupies exactly two crossing slots.  Threading resolves, for
# every edge, which occurrence is its head (where the strand arrives) and
# which its tail.  Slot 0 is always a head and slot 2 always a tail; the
# over slots are resolved by walking each component in its stored order.
# ---------------------------------------------------------------------------


def _occurrences(crossings, edge_count):
    occ: list[list[tuple[int, int]]] = [[] for _ in range(edge_count)]
    for t, cr in enumerate(crossings):
        for s, e in enumerate(cr):
            if not (0 <= e < edge_count):
                raise ValidationError(f"edge {e} out of range")
            occ[e].append((t, s))
    return occ


def _thread_walk(crossings, occ, walk, start_head):
    """Thread one component walk; return {edge: (head, tail)} or None."""
    heads: dict[int, tuple[int, int]] = {}
    tails: dict[int, tuple[int, int]] = {}
    head = start_head
    n = len(walk)
    for i, e in enumerate(walk):
        if e in heads:
            return None
        heads[e] = head
        t, s = head
        exit_slot = (s + 2) % 4
        nxt = walk[(i + 1) % n]
        if crossings[t][exit_slot] != nxt:
            return None
        tails[nxt] = (t, exit_slot)
        # The next edge's head is its other occurrence.
        cand = [o for o in occ[nxt] if o != (t, exit_slot)]
        if not cand:
            return None
        head = cand[0]
    if len(heads) != n or set(heads) != set(walk):
        return None
    for e in walk:
        if e not in tails or tails[e] == heads[e]:
            return None
    return {e: (heads[e], tails[e]) for e in walk}


def _thread_single(crossings, occ, walk):
    """Thread one walk with the canonical start rule, or return None."""
    first = walk[0]
    for o in sorted(occ[first]):
        if o[1] == 2:
            continue
        threading = _thread_walk(crossings, occ, walk, o)
        if threading is not None:
            return threading
    return None


def _thread(crossings, edge_count, components):
    """Resolve head/tail slots for every edge.

    For each component the walk is threaded starting from its first listed
    edge.  When several head choices for that edge thread successfully the
    lexicographically smallest (crossing, slot) is taken, which pins the
    orientation of components that never pass under.
    """
    occ = _occurrences(crossings, edge_count)
    for e, os in enumerate(occ):
        if len(os) != 2:
            raise ValidationError(f"edge multiplicity: edge {e} appears {len(os)} times")
    result: dict[int, tuple[tuple[int, int], tuple[int, int]]] = {}
    seen: set[int] = set()
    for walk in components:
        if not walk:
            raise ValidationError("empty component walk")
        threading = _thread_single(crossings, occ, walk)
        if threading is None:
            raise ValidationError(
                f"component walk {walk} does not thread through the crossings"
            )
        for e in walk:
            if e in result or e in seen:
                raise ValidationError(f"edge {e} in more than one component")
            seen.add(e)
        result.update(threading)
    if len(result) != edge_count:
        missing = [e for e in range(edge_count) if e not in result]
        raise ValidationError(f"edges {missing} not covered by any component")
    # Slot-role consistency: slot 0 head, slot 2 tail, slots 1/3 one of each.
    for t, cr in enumerate(crossings):
        h0 = result[cr[0]][0]
        if h0 != (t, 0):
            raise ValidationError(f"crossing {t}: slot 0 is not an incoming strand")
        t2 = result[cr[2]][1]
        if t2 != (t, 2):
            raise ValidationError(f"crossing {t}: slot 2 is not an outgoing strand")
        over_heads = [s for s in (1, 3) if result[cr[s]][0] == (t, s)]
        over_tails = [s for s in (1, 3) if result[cr[s]][1] == (t, s)]
        if len(over_heads) != 1 or len(over_tails) != 1:
            raise ValidationError(f"crossing {t}: over-strand direction inconsistent")
    return result


def threading(d: LinkDiagram) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
    """Map each edge to its ((crossing, slot) head, (crossing, slot) tail)."""
    return _thread(d.crossings, d.edge_count, d.components)


def crossing_signs(d: LinkDiagram) -> tuple[int, ...]:
    """Sign of each crossing: +1 when the over-strand enters at slot 3."""
    th = threading(d)
    signs = []
    for t, cr in enumerate(d.crossings):
        if th[cr[3]][0] == (t, 3):
            signs.append(1)
        else:
            signs.append(-1)
    return tuple(signs)


def edge_component_map(d: LinkDiagram) -> dict[int, int]:
    out = {}
    for i, walk in enumerate(d.components):
        for e in walk:
            out[e] = i
    return out


# ---------------------------------------------------------------------------
# Faces of the underlying 4-valent planar map.  A dart is (edge, head_end);
# following a dart to its head (t, s), the face continues along the edge at
# slot (s + 1) % 4.  Monogons are kinks, bigons are candidate R2 sites.
# ---------------------------------------------------------------------------


def faces(d: LinkDiagram) -> list[list[tuple[int, tuple[int, int]]]]:
    """Face orbits as lists of (edge, arrival (crossing, slot)) darts."""
    ends: dict[int, list[tuple[int, int]]] = {e: [] for e in range(d.edge_count)}
    for t, cr in enumerate(d.crossings):
        for s, e in enumerate(cr):
            ends[e].append((t, s))
    darts = []
    for e in range(d.edge_count):
        for arr in ends[e]:
            darts.append((e, arr))
    dart_set = set(darts)
    out = []
    visited = set()
    for start in darts:
        if start in visited:
            continue
        face = []
        cur = start
        while cur not in visited:
            visited.add(cur)
            face.append(cur)
            e, (t, s) = cur
            ns = (s + 1) % 4
            ne = d.crossings[t][ns]
            # travel along ne to its other end
            other = [o for o in ends[ne] if o != (t, ns)]
            if other:
                nxt = (ne, other[0])
            else:
                nxt = (ne, (t, ns))
            if nxt not in dart_set:
                raise ValidationError("face traversal left the diagram")
            cur = nxt
        out.append(face)
    return out


def _euler_ok(d: LinkDiagram) -> bool:
    """Check V - E + F = 2 per connected piece of the crossing graph."""
    if not d.crossings:
        return True
    # Connected pieces via shared edges.
    parent = list(range(len(d.crossings)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: dict[int, int] = {}
    for t, cr in enumerate(d.crossings):
        for e in cr:
            if e in owner:
                a, b = find(owner[e]), find(t)
                if a != b:
                    parent[a] = b
            else:
                owner[e] = t
    pieces = len({find(t) for t in range(len(d.crossings))})
    V = len(d.crossings)
    E = 2 * len(d.crossings)
    F = len(faces(d))
    return V - E + F == 2 * pieces


def validate(d: LinkDiagram) -> list[str]:
    """Return the list of violated invariants (empty when the diagram is ok)."""
    violations: list[str] = []
    if d.free_loops < 0:
        violations.append("negative free loop count")
    if d.edge_count < 0:
        violations.append("negative edge count")
    if d.component_count < 1:
        violations.append("component count must be at least 1")
    if d.labels is not None and len(d.labels) != d.component_count:
        violations.append("label count does not match component count")
    counts: dict[int, int] = {}
    for cr in d.crossings:
        if len(cr) != 4:
            violations.append("crossing is not a 4-tuple")
            return violations
        for e in cr:
            counts[e] = counts.get(e, 0) + 1
    for e in range(d.edge_count):
        if counts.get(e, 0) != 2:
            violations.append(
                f"edge multiplicity: edge {e} appears {counts.get(e, 0)} times"
            )
    if any(e < 0 or e >= d.edge_count for e in counts):
        violations.append("edge identifier out of range")
    if violations:
        return violations
    for cr in d.crossings:
        if cr[0] == cr[2] and cr[1] == cr[3]:
            violations.append("crossing joins an edge to itself on both strands")
        elif cr[0] == cr[2] or cr[1] == cr[3]:
            # An edge occupying opposite slots of one crossing cannot be
            # drawn in the plane.
            violations.append("edge occupies opposite slots of a crossing")
    if violations:
        return violations
    try:
        _thread(d.crossings, d.edge_count, d.components)
    except ValidationError as exc:
        violations.append(str(exc))
        return violations
    if not _euler_ok(d):
        violations.append("rotation system is not planar")
    return violations


def check_valid(d: LinkDiagram) -> None:
    violations = validate(d)
    if violations:
        raise ValidationError("; ".join(violations))


# ---------------------------------------------------------------------------
# Builder: mutable scratch representation used by every structural operation.
# Edges are arbitrary hashable tokens while building; finish() renumbers them
# by traversal order from the lowest-index component.
# ---------------------------------------------------------------------------


class Builder:
    """Mutable diagram under construction.  Not part of the public API."""

    def __init__(self):
        self.crossings: list[list] = []
        self.walks: list[list] = []
        self.free_loops = 0
        self.labels: Optional[list[str]] = None

    @classmethod
    def from_diagram(cls, d: LinkDiagram) -> "Builder":
        b = cls()
        b.crossings = [list(c) for c in d.crossings]
        b.walks = [list(w) for w in d.components]
        b.free_loops = d.free_loops
        b.labels = list(d.labels) if d.labels is not None else None
        return b

    def merge_edges(self, keep, drop):
        """Replace token ``drop`` with ``keep`` everywhere (strand splice)."""
        if keep == drop:
            return
        for cr in self.crossings:
            for i, e in enumerate(cr):
                if e == drop:
                    cr[i] = keep
        for w in self.walks:
            while drop in w:
                i = w.index(drop)
                if keep in w:
                    w.pop(i)
                else:
                    w[i] = keep

    def finish(self, edge_map_out: Optional[dict] = None) -> LinkDiagram:
        """Renumber edges by traversal order and freeze.

        Components that lost all crossings become free loops.  When
        ``edge_map_out`` is given it receives {old token: new id} for the
        surviving edges.
        """
        used = set()
        for cr in self.crossings:
            used.update(cr)
        walks = []
        labels = list(self.labels) if self.labels is not None else None
        freed_labels: list[str] = []
        free = self.free_loops
        kept_labels: list[str] = []
        for i, w in enumerate(self.walks):
            w2 = [e for e in w if e in used]
            if w2:
                walks.append(w2)
                if labels is not None:
                    kept_labels.append(labels[i])
            else:
                free += 1
                if labels is not None:
                    freed_labels.append(labels[i])
        rename: dict = {}
        nxt = 0
        for w in walks:
            for e in w:
                if e not in rename:
                    rename[e] = nxt
                    nxt += 1
        if len(rename) != len(used):
            raise ValidationError("builder has edges outside every walk")
        crossings = tuple(tuple(rename[e] for e in cr) for cr in self.crossings)
        components = tuple(tuple(rename[e] for e in w) for w in walks)
        if edge_map_out is not None:
            edge_map_out.update(rename)
        out_labels = None
        if labels is not None:
            tail = labels[len(self.walks):]
            out_labels = tuple(kept_labels + freed_labels + list(tail))
        return LinkDiagram(
            crossings=crossings,
            edge_count=nxt,
            components=components,
            free_loops=free,
            labels=out_labels,
        )


# ---------------------------------------------------------------------------
# Structural operations
# ---------------------------------------------------------------------------


def sublink(d: LinkDiagram, keep: Iterable[int]) -> LinkDiagram:
    """Restrict to the components in ``keep`` (indices include free loops).

    Crossings between a kept and a deleted strand are smoothed by splicing
    the kept strand straight through.
    """
    keep_set = set(int(i) for i in keep)
    if not keep_set:
        raise LinkError("empty sublink")
    n = d.component_count
    for i in keep_set:
        if not (0 <= i < n):
            raise LinkError(f"component index {i} out of range")
    walk_count = len(d.components)
    kept_walk_idx = [i for i in range(walk_count) if i in keep_set]
    kept_free = len([i for i in keep_set if i >= walk_count])

    ecomp = edge_component_map(d)
    b = Builder()
    b.free_loops = kept_free
    b.walks = [list(d.components[i]) for i in kept_walk_idx]
    if d.labels is not None:
        b.labels = [d.labels[i] for i in kept_walk_idx] + [
            d.labels[i] for i in sorted(keep_set) if i >= walk_count
        ]
    merges: list[tuple[int, int]] = []
    for t, cr in enumerate(d.crossings):
        under_kept = ecomp[cr[0]] in keep_set
        over_kept = ecomp[cr[1]] in keep_set
        if under_kept and over_kept:
            b.crossings.append(list(cr))
        elif under_kept:
            merges.append((cr[0], cr[2]))
        elif over_kept:
            merges.append((cr[1], cr[3]))
    # Splice merged edge pairs with union-find over edge tokens.
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, c in merges:
        ra, rc = find(a), find(c)
        if ra != rc:
            parent[ra] = rc
    # Rewrite crossings/walks onto class representatives, collapsing runs.
    b.crossings = [[find(e) for e in cr] for cr in b.crossings]
    new_walks = []
    for w in b.walks:
        w2: list[int] = []
        for e in w:
            r = find(e)
            if not w2 or w2[-1] != r:
                w2.append(r)
        if len(w2) > 1 and w2[0] == w2[-1]:
            w2.pop()
        new_walks.append(w2)
    b.walks = new_walks
    return b.finish()


def split_components(d: LinkDiagram) -> list[LinkDiagram]:
    """Split into connected pieces of the shared-crossing graph."""
    walk_count = len(d.components)
    if walk_count == 0:
        return [
            LinkDiagram((), 0, (), free_loops=1,
                        labels=(d.labels[i],) if d.labels else None)
            for i in range(d.free_loops)
        ]
    ecomp = edge_component_map(d)
    parent = list(range(walk_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cr in d.crossings:
        comps = {ecomp[e] for e in cr}
        comps = sorted(comps)
        for other in comps[1:]:
            a, bb = find(comps[0]), find(other)
            if a != bb:
                parent[bb] = a
    groups: dict[int, list[int]] = {}
    for i in range(walk_count):
        groups.setdefault(find(i), []).append(i)
    out = []
    for root in sorted(groups, key=lambda r: min(groups[r])):
        idxs = groups[root]
        out.append(sublink(d, idxs))
    for i in range(d.free_loops):
        lbl = None
        if d.labels is not None:
            lbl = (d.labels[walk_count + i],)
        out.append(LinkDiagram((), 0, (), free_loops=1, labels=lbl))
    return out


def _pin_walks(crossings, edge_count, walks, target):
    """Rotate each walk so the canonical threading matches ``target``.

    The canonical start rule disambiguates components that never pass
    under; rotating the stored start flips the reading, so a rotation
    matching the intended head/tail map always exists.
    """
    occ = _occurrences(crossings, edge_count)
    out = []
    for walk in walks:
        chosen = None
        for r in range(len(walk)):
            rw = tuple(walk[r:]) + tuple(walk[:r])
            th = _thread_single(crossings, occ, rw)
            if th is not None and all(th[e] == target[e] for e in rw):
                chosen = rw
                break
        if chosen is None:
            raise ValidationError("could not realize the intended orientation")
        out.append(chosen)
    return tuple(out)


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Swap over and under strands at every crossing (negates all signs)."""
    th = threading(d)
    new_crossings = []
    rotations = []
    for t, cr in enumerate(d.crossings):
        # New under-in is the old over-in; counterclockwise order is kept.
        s = 3 if th[cr[3]][0] == (t, 3) else 1
        rotations.append(s)
        new_crossings.append(tuple(cr[(s + k) % 4] for k in range(4)))

    def remap(end):
        t, s = end
        return (t, (s - rotations[t]) % 4)

    target = {e: (remap(h), remap(tl)) for e, (h, tl) in th.items()}
    walks = _pin_walks(tuple(new_crossings), d.edge_count, d.components, target)
    return LinkDiagram(
        crossings=tuple(new_crossings),
        edge_count=d.edge_count,
        components=walks,
        free_loops=d.free_loops,
        labels=d.labels,
    )


def reverse_component(d: LinkDiagram, i: int) -> LinkDiagram:
    """Flip the orientation of component ``i``."""
    if not (0 <= i < d.component_count):
        raise LinkError(f"component index {i} out of range")
    if i >= len(d.components):
        return d  # free loops carry no usable orientation
    th = threading(d)
    ecomp = edge_component_map(d)
    walk = d.components[i]
    walk_edges = set(walk)
    new_crossings = []
    rotated = []
    for t, cr in enumerate(d.crossings):
        if ecomp[cr[0]] == i:
            # Under-strand reverses: old under-out becomes under-in.
            new_crossings.append((cr[2], cr[3], cr[0], cr[1]))
            rotated.append(True)
        else:
            new_crossings.append(tuple(cr))
            rotated.append(False)

    def remap(end):
        t, s = end
        return (t, (s + 2) % 4) if rotated[t] else (t, s)

    target = {}
    for e, (h, tl) in th.items():
        if e in walk_edges:
            target[e] = (remap(tl), remap(h))
        else:
            target[e] = (remap(h), remap(tl))
    new_walk = tuple([walk[0]] + list(reversed(walk[1:])))
    comps = list(d.components)
    comps[i] = new_walk
    walks = _pin_walks(tuple(new_crossings), d.edge_count, tuple(comps), target)
    return LinkDiagram(
        crossings=tuple(new_crossings),
        edge_count=d.edge_count,
        components=walks,
        free_loops=d.free_loops,
        labels=d.labels,
    )


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    off = d1.edge_count
    crossings = d1.crossings + tuple(
        tuple(e + off for e in cr) for cr in d2.crossings
    )
    components = d1.components + tuple(
        tuple(e + off for e in w) for w in d2.components
    )
    labels = None
    if d1.labels is not None or d2.labels is not None:
        l1 = list(d1.labels) if d1.labels is not None else [""] * d1.component_count
        l2 = list(d2.labels) if d2.labels is not None else [""] * d2.component_count
        w1, w2 = len(d1.components), len(d2.components)
        labels = tuple(l1[:w1] + l2[:w2] + l1[w1:] + l2[w2:])
    return LinkDiagram(
        crossings=crossings,
        edge_count=off + d2.edge_count,
        components=components,
        free_loops=d1.free_loops + d2.free_loops,
        labels=labels,
    )


# ---------------------------------------------------------------------------
# Canonical form: stable renumbering strong enough that two diagrams equal
# up to edge renumbering and walk rotation produce identical field values.
# Component order is semantic and never changes.
# ---------------------------------------------------------------------------


def _refine_colors(d: LinkDiagram) -> list[int]:
    """Iterated refinement of crossing colors, seeded by sign and components."""
    signs = crossing_signs(d)
    ecomp = edge_component_map(d)
    colors = [
        hash((signs[t], tuple(sorted(ecomp[e] for e in cr)))) & 0xFFFFFFFF
        for t, cr in enumerate(d.crossings)
    ]
    ends: dict[int, list[tuple[int, int]]] = {e: [] for e in range(d.edge_count)}
    for t, cr in enumerate(d.crossings):
        for s, e in enumerate(cr):
            ends[e].append((t, s))
    for _ in range(max(1, len(d.crossings))):
        nxt = []
        for t, cr in enumerate(d.crossings):
            nb = []
            for s, e in enumerate(cr):
                other = [o for o in ends[e] if o != (t, s)]
                ot, os = other[0] if other else (t, s)
                nb.append((s, os, colors[ot]))
            nxt.append(hash((colors[t], tuple(nb))) & 0xFFFFFFFF)
        if nxt == colors:
            break
        colors = nxt
    return colors


def _encode_with_rotations(d: LinkDiagram, starts: Sequence[int]):
    """Renumber with each walk rotated to start at the given position."""
    rename: dict[int, int] = {}
    nxt = 0
    new_walks = []
    for w, st in zip(d.components, starts):
        rw = list(w[st:]) + list(w[:st])
        for e in rw:
            if e not in rename:
                rename[e] = nxt
                nxt += 1
        new_walks.append(tuple(rename[e] for e in rw))
    crossings = sorted(tuple(rename[e] for e in cr) for cr in d.crossings)
    return tuple(crossings), tuple(new_walks), rename


def canonical(d: LinkDiagram, edge_map_out: Optional[dict] = None) -> LinkDiagram:
    """Canonical renumbering: deterministic for all diagrams equal up to
    edge relabelling and orientation-preserving walk rotation."""
    if not d.components:
        return d
    th = threading(d)
    colors = _refine_colors(d)

    def anchor_key(e: int) -> tuple:
        (ht, hs) = th[e][0]
        (tt, ts) = th[e][1]
        return (colors[ht], hs, colors[tt], ts)

    # Candidate rotation starts per walk: positions whose edge has minimal
    # anchor key and which preserve the threaded orientation.
    occ = _occurrences(d.crossings, d.edge_count)
    walk_candidates: list[list[int]] = []
    for wi, w in enumerate(d.components):
        keys = [anchor_key(e) for e in w]
        best = min(keys)
        cand = [i for i, k in enumerate(keys) if k == best]
        ok = []
        for i in cand:
            rw = tuple(w[i:]) + tuple(w[:i])
            th2 = _thread_single(d.crossings, occ, rw)
            if th2 is not None and all(th2[e] == th[e] for e in rw):
                ok.append(i)
        walk_candidates.append(ok if ok else [0])

    best_enc = None
    best = None

    def rec(idx: int, starts: list[int]):
        nonlocal best_enc, best
        if idx == len(d.components):
            enc = _encode_with_rotations(d, starts)
            key = (enc[0], enc[1])
            if best_enc is None or key < best_enc:
                best_enc = key
                best = (enc, list(starts))
            return
        for st in walk_candidates[idx]:
            starts.append(st)
            rec(idx + 1, starts)
            starts.pop()

    rec(0, [])
    (crossings, walks, rename), _starts = best
    if edge_map_out is not None:
        edge_map_out.update(rename)
    return LinkDiagram(
        crossings=crossings,
        edge_count=d.edge_count,
        components=walks,
        free_loops=d.free_loops,
        labels=d.labels,
    )


def canonical_bytes(d: LinkDiagram) -> bytes:
    c = canonical(d)
    payload = {
        "crossings": [list(x) for x in c.crossings],
        "edge_count": c.edge_count,
        "components": [list(x) for x in c.components],
        "free_loops": c.free_loops,
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()


# ---------------------------------------------------------------------------
# PD-JSON serialization
# ---------------------------------------------------------------------------


def diagram_to_obj(d: LinkDiagram, axis_sites=None) -> dict:
    obj = {
        "crossings": [list(c) for c in d.crossings],
        "edge_count": d.edge_count,
        "components": [list(c) for c in d.components],
        "free_loops": d.free_loops,
    }
    if d.labels is not None:
        obj["labels"] = list(d.labels)
    if axis_sites:
        obj["axis_sites"] = {
            str(k): [[int(e), int(s)] for e, s in v] for k, v in axis_sites.items()
        }
    return obj


def diagram_from_obj(obj: dict) -> LinkDiagram:
    try:
        d = LinkDiagram(
            crossings=tuple(tuple(c) for c in obj["crossings"]),
            edge_count=int(obj["edge_count"]),
            components=tuple(tuple(c) for c in obj["components"]),
            free_loops=int(obj.get("free_loops", 0)),
            labels=tuple(obj["labels"]) if obj.get("labels") is not None else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise LinkError(f"malformed PD object: {exc}") from exc
    return d


def sites_from_obj(obj: dict) -> dict[int, tuple[tuple[int, int], ...]]:
    raw = obj.get("axis_sites") or {}
    return {
        int(k): tuple((int(e), int(s)) for e, s in v) for k, v in raw.items()
    }


def diagram_to_json(d: LinkDiagram, axis_sites=None) -> str:
    return json.dumps(diagram_to_obj(d, axis_sites), sort_keys=True, indent=2) + "\n"


def diagram_from_json(text: str) -> LinkDiagram:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LinkError(f"malformed JSON: {exc}") from exc
    return diagram_from_obj(obj)

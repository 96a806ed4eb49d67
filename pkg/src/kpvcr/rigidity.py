"""Rigid-token machinery: H-regions, path classification, anchors, feeding.

A token is rigid when no sliding sequence ever moves it.  On caterpillars
rigidity reduces to a local case analysis: isolated vertices, leaves (rigid
iff the spine neighbor holds a rigid token once the leaf is deleted), and
spine vertices, where rigidity hinges on whether a token-free "double path"
region around u (an H-region) exists and whether any nearby movable token
can be fed into it.

All entry points that answer rigidity questions require k >= 4; the feed
test is unsound for k = 3 (a movable anchor with a non-minimum side cover
can still be unable to enter the region), so k <= 3 gets a distinct error
instead of a silent approximation.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from functools import lru_cache

from .cover import TokenSet, _count_pieces_scan, partition
from .errors import InputError, LogicError, UnsupportedParameterError
from .graph import (
    Caterpillar,
    CaterpillarForest,
    VertexId,
    _positions,
    local_neighbors,
    is_leaf_vertex,
    spine_pos,
)

KPath = tuple[VertexId, ...]


@lru_cache(maxsize=None)
def _forest_minus(G: CaterpillarForest, drop: frozenset[VertexId]) -> CaterpillarForest:
    """Cached delete: the feed test removes the same H-slice for every anchor."""
    return G.delete(drop)


@dataclass(frozen=True)
class HRegion:
    vertices: frozenset[VertexId]
    witness_paths: tuple[KPath, KPath]
    spine_size: int


@dataclass(frozen=True)
class PathClassification:
    left: frozenset[KPath]
    right: frozenset[KPath]
    center: frozenset[KPath]

    @property
    def all_paths(self) -> frozenset[KPath]:
        return self.left | self.right | self.center


@dataclass(frozen=True)
class RigidDecision:
    rigid: bool
    tag: str  # lemma-1a | lemma-1b | 4a | 4b1 | 4b2 | 4b3 | 4b4 | movable

    def __bool__(self) -> bool:
        return self.rigid


@dataclass(frozen=True)
class RigidReport:
    rigid: frozenset[VertexId]
    rationale: dict[VertexId, str] = field(compare=False, hash=False, default_factory=dict)


# ---------------------------------------------------------------------------
# Path classification (Definition of P(G, I, u) and its l / r / c split)
# ---------------------------------------------------------------------------


def classify_k_paths(
    forest: CaterpillarForest,
    tokens: TokenSet,
    u: VertexId,
    within: frozenset[VertexId] | None = None,
) -> PathClassification:
    """All k-paths with u or a free leaf of u as an endpoint and no occupied
    vertex besides u, split by whether they run left, right, or stay on
    L[u].  `within` restricts the search to an induced subgraph (the
    H-region search evaluates candidates this way)."""
    forest = forest.canonical()
    tokens.validate_on(forest)
    comp = forest.component_of(u)
    if u not in tokens:
        raise InputError(f"{u} is not occupied")
    if is_leaf_vertex(comp, u):
        raise InputError(f"{u} is a leaf, not a spine vertex")
    return _classify(comp, tokens.occupied, u, tokens.k, within)


def _classify(
    comp: Caterpillar,
    occupied: frozenset[VertexId],
    u: VertexId,
    k: int,
    within: frozenset[VertexId] | None = None,
) -> PathClassification:
    if k < 3:
        raise InputError("classification requires k >= 3")
    adj = lambda v: local_neighbors(comp, v)
    m = spine_pos(comp, u)

    def ok(v: VertexId) -> bool:
        if within is not None and v not in within:
            return False
        return v == u or v not in occupied

    # simple paths starting at u, all vertices admissible
    from_u: dict[int, list[KPath]] = {1: [(u,)]}
    frontier: list[KPath] = [(u,)]
    for length in range(2, k + 1):
        nxt: list[KPath] = []
        for path in frontier:
            tail = path[-1]
            for w in adj(tail):
                if w not in path and ok(w):
                    nxt.append(path + (w,))
        from_u[length] = nxt
        frontier = nxt

    free_leaves = sorted(
        x for x in adj(u) if is_leaf_vertex(comp, x) and ok(x) and x not in occupied
    )

    seen: dict[frozenset[VertexId], KPath] = {}
    for p in from_u.get(k, []):
        seen.setdefault(frozenset(p), p)
    for x in free_leaves:
        for p in from_u.get(k - 1, []):
            if x not in p:
                seen.setdefault(frozenset((x,) + p), (x,) + p)

    left: list[KPath] = []
    right: list[KPath] = []
    center: list[KPath] = []
    sl = comp.spine[m - 1] if m > 0 else None
    sr = comp.spine[m + 1] if m + 1 < len(comp.spine) else None
    for key in sorted(seen, key=lambda s: tuple(sorted(v.sort_key for v in s))):
        p = _orient(seen[key], u, set(free_leaves))
        if sl is not None and sl in key:
            left.append(p)
        elif sr is not None and sr in key:
            right.append(p)
        else:
            center.append(p)
    return PathClassification(frozenset(left), frozenset(right), frozenset(center))


def _orient(path: KPath, u: VertexId, leaves: set[VertexId]) -> KPath:
    """Canonical orientation: start at u or a leaf of u; ties by smaller end."""
    a, b = path[0], path[-1]
    a_ok = a == u or a in leaves
    b_ok = b == u or b in leaves
    if a_ok and b_ok:
        return path if a <= b else path[::-1]
    if a_ok:
        return path
    return path[::-1]


# ---------------------------------------------------------------------------
# H-region search (widening schedule from the region-finding lemma)
# ---------------------------------------------------------------------------


def find_h_regions(
    forest: CaterpillarForest, tokens: TokenSet, u: VertexId
) -> tuple[HRegion, ...]:
    forest = forest.canonical()
    tokens.validate_on(forest)
    comp = forest.component_of(u)
    if u not in tokens:
        raise InputError(f"{u} is not occupied")
    if is_leaf_vertex(comp, u):
        raise InputError(f"{u} is a leaf, not a spine vertex")
    if tokens.k < 3:
        raise InputError("H-regions require k >= 3")
    return _find_h_regions(comp, tokens.occupied, u, tokens.k)


def _window_vertices(comp: Caterpillar, a: int, b: int) -> frozenset[VertexId]:
    out: list[VertexId] = []
    for i in range(a, b + 1):
        out.append(comp.spine[i])
        out.extend(comp.leaves[i])
    return frozenset(out)


def _check_window(
    comp: Caterpillar,
    occupied: frozenset[VertexId],
    u: VertexId,
    k: int,
    a: int,
    b: int,
) -> HRegion | None:
    # (H.1): every non-u spine vertex of the window is token-free, leaves too
    m = spine_pos(comp, u)
    for i in range(a, b + 1):
        if i == m:
            continue
        if comp.spine[i] in occupied:
            return None
        if any(x in occupied for x in comp.leaves[i]):
            return None
    verts = _window_vertices(comp, a, b)
    cls = _classify(comp, occupied, u, k, verts)
    witness = _h2_witness(cls, u, k)
    if witness is None:
        return None
    return HRegion(verts, witness, b - a + 1)


def _h2_witness(
    cls: PathClassification, u: VertexId, k: int
) -> tuple[KPath, KPath] | None:
    """Pick two k-paths meeting only at u (or u plus one shared leaf of u)."""
    left = sorted(cls.left)
    right = sorted(cls.right)
    center = sorted(cls.center)
    if left and right:
        return (left[0], right[0])
    if left and center:
        return (left[0], center[0])
    if right and center:
        return (center[0], right[0])
    if center:
        # all candidates stay on L[u]; forces k = 3 and needs 3 free leaves
        for p in center:
            for q in center:
                if p is q:
                    continue
                shared = set(p) & set(q)
                if shared == {u} or (len(shared) == 2 and u in shared):
                    return (p, q)
    return None


def _find_h_regions(
    comp: Caterpillar, occupied: frozenset[VertexId], u: VertexId, k: int
) -> tuple[HRegion, ...]:
    ell = len(comp.spine)
    m = spine_pos(comp, u)
    a = max(0, m - (k - 3))
    b = min(ell - 1, m + (k - 3))
    limit = 2 * k - 1
    region = _check_window(comp, occupied, u, k, a, b)
    if region is not None:
        return (region,)
    while True:
        has_l = a > 0
        has_r = b + 1 < ell
        if not has_l and not has_r:
            return ()
        found: list[HRegion] = []
        if has_l and (b - (a - 1) + 1) <= limit:
            r = _check_window(comp, occupied, u, k, a - 1, b)
            if r is not None:
                found.append(r)
        if has_r and ((b + 1) - a + 1) <= limit:
            r = _check_window(comp, occupied, u, k, a, b + 1)
            if r is not None:
                found.append(r)
        if found:
            return tuple(found)
        if has_l:
            a -= 1
        if has_r:
            b += 1
        if b - a + 1 > limit:
            return ()
        region = _check_window(comp, occupied, u, k, a, b)
        if region is not None:
            return (region,)


# ---------------------------------------------------------------------------
# Anchors
# ---------------------------------------------------------------------------


def anchor_set(
    forest: CaterpillarForest, tokens: TokenSet, u: VertexId
) -> frozenset[VertexId]:
    """Occupied vertices v (not u, not leaves of u) within distance k of u
    whose connecting path carries no other token."""
    forest = forest.canonical()
    tokens.validate_on(forest)
    comp = forest.component_of(u)
    if u not in tokens:
        raise InputError(f"{u} is not occupied")
    if is_leaf_vertex(comp, u):
        raise InputError(f"{u} is a leaf, not a spine vertex")
    return _anchor_set(comp, tokens.occupied, u, tokens.k)


def _anchor_set(
    comp: Caterpillar, occupied: frozenset[VertexId], u: VertexId, k: int
) -> frozenset[VertexId]:
    m = spine_pos(comp, u)
    out: set[VertexId] = set()
    for step in (-1, 1):
        i = m + step
        while 0 <= i < len(comp.spine):
            d = abs(i - m)
            if d > k:
                break
            s = comp.spine[i]
            if s in occupied:
                if d <= k:
                    out.add(s)
                break  # anything further has an occupied interior
            if d + 1 <= k:
                out.update(x for x in comp.leaves[i] if x in occupied)
            i += step
    return frozenset(out)


# ---------------------------------------------------------------------------
# The feed test and per-token rigidity
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _paths_through_vertex(
    comp: Caterpillar, u: VertexId, k: int
) -> tuple[frozenset[VertexId], ...]:
    """Every k-vertex path of the component containing u.  Enumerated
    locally: only spine intervals within k of u's position can matter."""
    spine = comp.spine
    leaves = comp.leaves
    ell = len(spine)
    m = spine_pos(comp, u)
    out: list[frozenset[VertexId]] = []
    for p in range(max(0, m - k + 1), m + 1):
        for q in range(m, min(ell, p + k)):
            base = q - p + 1
            extra = k - base
            core = frozenset(spine[p : q + 1])
            if extra == 0:
                cands = [core]
            elif extra == 1:
                cands = [core | {x} for x in leaves[p]]
                if q != p:
                    cands.extend(core | {y} for y in leaves[q])
            elif extra == 2:
                if q == p:
                    ls = leaves[p]
                    cands = [
                        core | {ls[a], ls[b]}
                        for a in range(len(ls))
                        for b in range(a + 1, len(ls))
                    ]
                else:
                    cands = [
                        core | {x, y} for x in leaves[p] for y in leaves[q]
                    ]
            else:
                continue
            out.extend(c for c in cands if u in c)
    return tuple(out)


def _slide_now_ok(
    G: CaterpillarForest,
    occ: frozenset[VertexId],
    u: VertexId,
    w: VertexId,
    k: int,
) -> bool:
    """Would sliding u -> w keep the cover valid right now?  Only k-paths
    through u can become uncovered."""
    comp = G.component_of(u)
    for p in _paths_through_vertex(comp, u, k):
        if w not in p and not any(x != u and x in occ for x in p):
            return False
    return True


class _RigidityContext:
    """Shared memo for the rigidity recursion over vertex-deleted subgraphs.

    Keys are (frozen deleted set, vertex); the recursion always grows the
    deleted set, so it terminates.  Forests for each deleted set are built
    once and canonicalized so leaf/spine roles stay meaningful.
    """

    def __init__(self, forest: CaterpillarForest, tokens: TokenSet):
        if tokens.k <= 3:
            raise UnsupportedParameterError(
                "rigidity analysis supports k >= 4 only (k = 3 is open)"
            )
        tokens.validate_on(forest)
        self.base = forest.canonical()
        self.occupied = tokens.occupied
        self.k = tokens.k
        self._forests: dict[frozenset[VertexId], CaterpillarForest] = {
            frozenset(): self.base
        }
        # keyed by (component of u, u): a token's verdict only depends on its
        # own component, so anchor chains reaching the same split share work
        self._memo: dict[tuple[Caterpillar, VertexId], RigidDecision] = {}

    def forest_at(self, deleted: frozenset[VertexId]) -> CaterpillarForest:
        got = self._forests.get(deleted)
        if got is None:
            got = self.base.delete(deleted).canonical()
            self._forests[deleted] = got
        return got

    def is_rigid(self, deleted: frozenset[VertexId], u: VertexId) -> RigidDecision:
        key = (self.forest_at(deleted).component_of(u), u)
        got = self._memo.get(key)
        if got is None:
            got = self._decide(deleted, u)
            self._memo[key] = got
        return got

    def _decide(self, deleted: frozenset[VertexId], u: VertexId) -> RigidDecision:
        G = self.forest_at(deleted)
        occ = self.occupied - deleted
        comp = G.component_of(u)
        nbrs = local_neighbors(comp, u)
        if not nbrs:
            return RigidDecision(True, "lemma-1a")
        sub = deleted | {u}
        if is_leaf_vertex(comp, u):
            nbr = nbrs[0]
            if nbr in occ and self.is_rigid(sub, nbr):
                return RigidDecision(True, "lemma-1b")
            return RigidDecision(False, "movable")
        # spine vertex: a token with an immediately valid slide is movable
        for w in nbrs:
            if w not in occ and _slide_now_ok(G, occ, u, w, self.k):
                return RigidDecision(False, "movable")
        if all(v in occ for v in nbrs):
            if all(self.is_rigid(sub, v) for v in nbrs):
                return RigidDecision(True, "4a")
            # N(u) fully occupied forces H(G,I,u) = Ø, so (b) cannot rescue
            return RigidDecision(False, "movable")
        regions = _find_h_regions(comp, occ, u, self.k)
        if not regions:
            return RigidDecision(False, "movable")
        if len(regions) != 1:
            raise LogicError("two H-regions with k >= 4")
        region = regions[0]
        anchors = _anchor_set(comp, occ, u, self.k)
        if not anchors:
            return RigidDecision(True, "4b2")
        movable = [v for v in sorted(anchors) if not self.is_rigid(sub, v)]
        if not movable:
            return RigidDecision(True, "4b3")
        if all(not self.can_feed(deleted, u, region, v) for v in movable):
            return RigidDecision(True, "4b4")
        return RigidDecision(False, "movable")

    def can_feed(
        self,
        deleted: frozenset[VertexId],
        u: VertexId,
        region: HRegion,
        v: VertexId,
    ) -> bool:
        """The feed test: can t_v (or a token on a leaf of v) enter H in G-u?

        Normalizes v onto the spine and to distance <= k-1, then partitions
        the component of G-u on v's side minus H.  Every piece of that
        partition holds a k-path, so a valid cover places a token in each one;
        some piece carries two or more tokens exactly when the token count in
        H_v exceeds its psi.
        """
        G = self.forest_at(deleted)
        occ = set(self.occupied - deleted)
        comp = G.component_of(u)
        k = self.k
        hverts = region.vertices
        if v in hverts:
            raise LogicError("anchor already inside the region")

        # normalize a leaf anchor onto the spine (always a valid slide: any
        # k-path through a leaf also passes its spine neighbor)
        if is_leaf_vertex(comp, v):
            w = local_neighbors(comp, v)[0]
            if w in occ:
                raise LogicError("leaf anchor with occupied spine neighbor")
            occ.discard(v)
            occ.add(w)
            v = w
            if v in hverts:
                return True
        d = G.dist(u, v)
        assert d is not None
        if d == k:
            # the only possible first move slides t_v one step toward u; when
            # that slide is immediately valid we take it, otherwise we leave
            # t_v in place and let the partition test decide whether the
            # k-path it would uncover can be pre-covered from behind
            path = G.tree_path(v, u)
            w = path[1]
            if w in occ:
                raise LogicError("anchor interior occupied")
            if self._forced_slide_ok(G, occ, v, w):
                occ.discard(v)
                occ.add(w)
                v = w
                if v in hverts:
                    return True
                d = k - 1
        if not (k - 2 <= d <= k):
            raise LogicError(f"anchor at unexpected distance {d}")

        Gm = self.forest_at(deleted | {u})
        comp_v = Gm.component_of(v)
        pos_v = _positions(comp_v)
        lu = {u} | {x for x in local_neighbors(comp, u) if is_leaf_vertex(comp, x)}
        drop = frozenset(x for x in hverts if x in pos_v)
        if not (drop - lu):
            return False

        # root: the spine endpoint of G's component on v's side
        mpos = spine_pos(comp, u)
        vpos = spine_pos(comp, v)
        r = comp.spine[0] if vpos < mpos else comp.spine[-1]

        hv_comp = _forest_minus(Gm, drop).component_of(v)
        pos_hv = _positions(hv_comp)
        if r not in pos_hv:
            raise LogicError("root fell outside H_v")
        hv_tokens = [x for x in occ if x in pos_hv]

        if len(hv_comp.spine) > 64 and (
            r == hv_comp.spine[0] or r == hv_comp.spine[-1]
        ):
            # linear piece scan, skipping both piece materialization and the
            # positional sanity check the exhaustive small cases exercise
            psi, doubled = _count_pieces_scan(hv_comp, k, r, occ)
            if psi == 0:
                return bool(hv_tokens)
            return doubled

        result = partition(hv_comp, k, r)
        if result.psi == 0:
            # H_v has no k-path; a token there can walk straight toward H
            return bool(hv_tokens)
        # positional sanity check; it presumes no occupied leaf hangs off the
        # interior of P_uv, so skip it when one does
        if d <= k - 1:
            interior = G.tree_path(u, v)[1:-1]
            interior_clear = not any(
                x in occ
                for s in interior
                for x in local_neighbors(comp, s)
                if is_leaf_vertex(comp, x)
            )
            if interior_clear and (
                v not in result.pieces[0] or v == result.representatives[0]
            ):
                raise LogicError("anchor not positioned in T_1 as expected")
        tokset = frozenset(hv_tokens)
        for piece in result.pieces:
            if len(piece & tokset) >= 2:
                return True
        return False

    def _forced_slide_ok(
        self, G: CaterpillarForest, occ: set[VertexId], frm: VertexId, to: VertexId
    ) -> bool:
        # occ is a valid cover here (deleted vertices all carried tokens), so
        # only k-paths through frm can break; the local test is equivalent to
        # a full is_kpvc on the slid cover
        return _slide_now_ok(G, frozenset(occ), frm, to, self.k)


def can_feed_region(
    forest: CaterpillarForest,
    tokens: TokenSet,
    u: VertexId,
    region: HRegion,
    v: VertexId,
) -> bool:
    ctx = _RigidityContext(forest, tokens)
    return ctx.can_feed(frozenset(), u, region, v)


def is_rigid(forest: CaterpillarForest, tokens: TokenSet, u: VertexId) -> RigidDecision:
    if u not in tokens:
        raise InputError(f"{u} is not occupied")
    ctx = _RigidityContext(forest, tokens)
    with _deep_recursion(forest.n):
        return ctx.is_rigid(frozenset(), u)


def rigid_set(forest: CaterpillarForest, tokens: TokenSet) -> RigidReport:
    ctx = _RigidityContext(forest, tokens)
    rationale: dict[VertexId, str] = {}
    rigid: set[VertexId] = set()
    with _deep_recursion(forest.n):
        for u in sorted(tokens.occupied):
            decision = ctx.is_rigid(frozenset(), u)
            rationale[u] = decision.tag
            if decision.rigid:
                rigid.add(u)
    return RigidReport(frozenset(rigid), rationale)


class _deep_recursion:
    """Temporarily raise the interpreter recursion limit for deep chains."""

    def __init__(self, n: int):
        self.need = max(sys.getrecursionlimit(), 10 * n + 1000)

    def __enter__(self) -> None:
        self.old = sys.getrecursionlimit()
        sys.setrecursionlimit(self.need)

    def __exit__(self, *exc) -> None:
        sys.setrecursionlimit(self.old)

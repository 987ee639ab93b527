"""Dhar's burning algorithm, reduced divisors, rank and gonality.

The hot paths work on plain lists of chip counts indexed like
``Model.vertices``; the public functions wrap them in :class:`Divisor` and
the result dataclasses below.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .divisor import Divisor, DivisorError, canonical_divisor
from .graph import GraphError, MetricGraph, Model, genus, refine


class NotEffectiveError(DivisorError):
    pass


@dataclass(frozen=True)
class BurnResult:
    source: str
    burnt: frozenset
    unburnt: frozenset
    # one tuple per round: (vertex, edges to the burnt region, chips) in model order
    rounds: tuple = ()

    @property
    def burns_everything(self) -> bool:
        return not self.unburnt


@dataclass(frozen=True)
class ReductionStep:
    fired: frozenset
    times: int
    divisor: Divisor
    burn: BurnResult | None = None


@dataclass(frozen=True)
class ReductionTrace:
    start: Divisor
    q: str
    steps: tuple
    final: Divisor
    final_burn: BurnResult


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    failing_subtraction: Divisor | None = None


@dataclass(frozen=True)
class GonalityResult:
    value: int | None
    witness: Divisor | None
    certified_at: int
    max_degree: int
    support: str
    classes: tuple = field(default=(), repr=False)

    @property
    def found(self) -> bool:
        return self.value is not None


# -- list-level engine -------------------------------------------------------


def _burn(adj, chips, q):
    """Return (burnt flags, edges-to-burnt counts) of the fire started at ``q``."""
    n = len(adj)
    burnt = [False] * n
    burnt[q] = True
    cnt = [0] * n
    stack = [q]
    pop = stack.pop
    push = stack.append
    while stack:
        v = pop()
        for u, m in adj[v]:
            if not burnt[u]:
                c = cnt[u] + m
                cnt[u] = c
                if c > chips[u]:
                    burnt[u] = True
                    push(u)
    return burnt, cnt


def _burns_all(adj, chips, q) -> bool:
    burnt, _ = _burn(adj, chips, q)
    return all(burnt)


def _layers(model: Model, q: int):
    key = ("layers", q)
    hit = model.cache.get(key)
    if hit is None:
        dist = model.distances(q)
        depth = max(dist)
        # cut[t]: edges (inner, outer, mult) between distance t-1 and t
        cut = [[] for _ in range(depth + 1)]
        layer = [[] for _ in range(depth + 1)]
        for v, d in enumerate(dist):
            layer[d].append(v)
            for u, m in model.adjacency[v]:
                if dist[u] == d - 1:
                    cut[d].append((u, v, m))
        hit = model.cache[key] = (layer, cut)
    return hit


def _clear_debt(model: Model, chips: list, q: int, log=None):
    """Make ``chips`` nonnegative off ``q`` by firing distance balls around ``q``."""
    layer, cut = _layers(model, q)
    for t in range(len(layer) - 1, 0, -1):
        need = max(-chips[v] for v in layer[t])
        if need <= 0:
            continue
        for inner, outer, m in cut[t]:
            chips[inner] -= need * m
            chips[outer] += need * m
        if log is not None:
            log(frozenset(v for d in range(t) for v in layer[d]), need, None)


def _reduce(model: Model, chips: list, q: int, log=None, unit_steps=False):
    """q-reduce ``chips`` in place."""
    adj = model.adjacency
    if any(c < 0 for i, c in enumerate(chips) if i != q):
        _clear_debt(model, chips, q, log)
    while True:
        burnt, cnt = _burn(adj, chips, q)
        unburnt = [v for v, b in enumerate(burnt) if not b]
        if not unburnt:
            return chips
        if unit_steps:
            t = 1
        else:
            t = min(chips[v] // cnt[v] for v in unburnt if cnt[v])
        for v in unburnt:
            c = cnt[v]
            if c:
                chips[v] -= t * c
                for u, m in adj[v]:
                    if burnt[u]:
                        chips[u] += t * m
        if log is not None:
            log(frozenset(unburnt), t, burnt)


def _reduced(model: Model, values, q: int) -> tuple:
    return tuple(_reduce(model, list(values), q))


def _effective_equivalent(model: Model, values, q: int = 0) -> bool:
    return _reduce(model, list(values), q)[q] >= 0


def _positive_rank(model: Model, values, order=None) -> bool:
    """rank >= 1 for an effective divisor: every v-reduced form has a chip at v."""
    for v in order if order is not None else range(len(values)):
        if values[v] > 0:
            continue
        if _reduce(model, list(values), v)[v] <= 0:
            return False
    return True


class _RankEngine:
    """Memoised rank computations keyed by the reduced form at vertex 0.

    Uses rank(D) >= r  iff  rank(D - v) >= r - 1 for every vertex v, which is
    the exhaustive condition over effective E of degree r unrolled one point at
    a time.
    """

    Q = 0

    def __init__(self, model: Model):
        self.model = model
        self.n = len(model.vertices)
        self.bounds: dict = {}
        # offsets[v]: reduced form of q - v, effective away from q
        self.offsets = []
        for v in range(self.n):
            vals = [0] * self.n
            vals[self.Q] += 1
            vals[v] -= 1
            self.offsets.append(_reduce(model, vals, self.Q))

    def key(self, values) -> tuple:
        vals = [0] * self.n
        for v, c in enumerate(values):
            if c >= 0 or v == self.Q:
                vals[v] += c
            else:
                # -c * v  ~  -c * (offsets[v] - q)
                for u, x in enumerate(self.offsets[v]):
                    if x:
                        vals[u] -= c * x
                vals[self.Q] += c
        return tuple(_reduce(self.model, vals, self.Q))

    def minus(self, key, v) -> tuple:
        vals = list(key)
        if v == self.Q or vals[v] > 0:
            # a sub-configuration of a reduced one is still reduced
            vals[v] -= 1
            return tuple(vals)
        for u, x in enumerate(self.offsets[v]):
            if x:
                vals[u] += x
        vals[self.Q] -= 1
        return tuple(_reduce(self.model, vals, self.Q))

    def at_least(self, key, r: int) -> bool:
        if r < 0:
            return True
        if key[self.Q] < 0:
            return False
        if r == 0:
            return True
        deg = sum(key)
        if r > deg:
            return False
        lo, hi = self.bounds.get(key, (0, deg))
        if r <= lo:
            return True
        if r > hi:
            return False
        if r == 1:
            ok = _positive_rank(self.model, key)
        else:
            ok = all(self.at_least(self.minus(key, v), r - 1) for v in range(self.n))
        if ok:
            lo = max(lo, r)
        else:
            hi = min(hi, r - 1)
        self.bounds[key] = (lo, hi)
        return ok

    def rank(self, key) -> int:
        if key[self.Q] < 0:
            return -1
        r = 0
        while self.at_least(key, r + 1):
            r += 1
        return r

    def failing_subtraction(self, key, r: int) -> list[int]:
        """Lexicographically least E of degree r + 1 with |D - E| empty."""
        points: list[int] = []
        need = r + 1
        while need > 0:
            start = points[-1] if points else 0
            for v in range(start, self.n):
                child = self.minus(key, v)
                if not self.at_least(child, need - 1):
                    points.append(v)
                    key = child
                    need -= 1
                    break
            else:  # pragma: no cover - excluded by rank(D) = r
                raise AssertionError("no failing subtraction found")
        return points


def _engine(model: Model) -> _RankEngine:
    eng = model.cache.get("rank_engine")
    if eng is None:
        eng = model.cache["rank_engine"] = _RankEngine(model)
    return eng


# -- public operations ---------------------------------------------------------


def _vertex_index(model: Model, vertex) -> int:
    if isinstance(vertex, int):
        return vertex
    try:
        return model.index[vertex]
    except KeyError:
        raise GraphError(f"unknown vertex {vertex!r}") from None


def set_fire(divisor: Divisor, vertices, times: int = 1) -> Divisor:
    """Fire every vertex of ``vertices`` ``times`` times (negative = borrow)."""
    model = divisor.model
    inside = {_vertex_index(model, v) for v in vertices}
    vals = list(divisor.values)
    for v in inside:
        for u, m in model.adjacency[v]:
            if u not in inside:
                vals[v] -= times * m
                vals[u] += times * m
    return Divisor(model, vals)


def dhar_burn(divisor: Divisor, source) -> BurnResult:
    """Run the burning algorithm from ``source``.

    Burning proceeds in rounds: every unburnt vertex whose number of edges to
    the burnt region exceeds its chip count catches fire, scanned in model
    order.  Vertices left unburnt form the legal firing set.
    """
    model = divisor.model
    q = _vertex_index(model, source)
    chips = divisor.values
    if any(c < 0 for i, c in enumerate(chips) if i != q):
        raise NotEffectiveError("divisor must be effective away from source")
    adj = model.adjacency
    n = len(chips)
    burnt = [False] * n
    burnt[q] = True
    cnt = [0] * n
    for u, m in adj[q]:
        cnt[u] += m
    rounds = []
    while True:
        fresh = [v for v in range(n) if not burnt[v] and cnt[v] > chips[v]]
        if not fresh:
            break
        rounds.append(tuple((model.vertices[v], cnt[v], chips[v]) for v in fresh))
        for v in fresh:
            burnt[v] = True
        for v in fresh:
            for u, m in adj[v]:
                if not burnt[u]:
                    cnt[u] += m
    names = model.vertices
    return BurnResult(
        source=names[q],
        burnt=frozenset(names[v] for v in range(n) if burnt[v]),
        unburnt=frozenset(names[v] for v in range(n) if not burnt[v]),
        rounds=tuple(rounds),
    )


def _trace(divisor: Divisor, q: int, unit_steps: bool) -> ReductionTrace:
    model = divisor.model
    names = model.vertices
    chips = list(divisor.values)
    steps = []

    def log(fired, times, burnt):
        burn = None
        if burnt is not None:
            burn = BurnResult(
                source=names[q],
                burnt=frozenset(names[v] for v, b in enumerate(burnt) if b),
                unburnt=frozenset(names[v] for v in fired),
            )
        steps.append(
            ReductionStep(
                fired=frozenset(names[v] for v in fired),
                times=times,
                divisor=Divisor(model, chips),
                burn=burn,
            )
        )

    _reduce(model, chips, q, log=log, unit_steps=unit_steps)
    final = Divisor(model, chips)
    return ReductionTrace(divisor, names[q], tuple(steps), final, dhar_burn(final, q))


def q_reduce(divisor: Divisor, q) -> ReductionTrace:
    """Reduce ``divisor`` at ``q``.

    First any debt away from ``q`` is pushed onto ``q`` by firing balls
    around ``q`` from the outermost distance layer inwards; then the
    unburnt set of the fire from ``q`` is fired (as many times as stays
    legal) until everything burns.
    """
    return _trace(divisor, _vertex_index(divisor.model, q), unit_steps=False)


def burn_trace(divisor: Divisor, source) -> ReductionTrace:
    """Reduction trace with one firing per step, ending with the full burn.

    Each step moves chips by one lattice step, i.e. ``1/k`` of a length unit.
    """
    model = divisor.model
    q = _vertex_index(model, source)
    if any(c < 0 for i, c in enumerate(divisor.values) if i != q):
        raise NotEffectiveError("divisor must be effective away from source")
    tr = _trace(divisor, q, unit_steps=True)
    last = ReductionStep(fired=frozenset(), times=0, divisor=tr.final, burn=tr.final_burn)
    return ReductionTrace(tr.start, tr.q, tr.steps + (last,), tr.final, tr.final_burn)


def linearly_equivalent(a: Divisor, b: Divisor, q=None) -> bool:
    if a.model != b.model:
        raise DivisorError("divisors live on different models")
    if a.degree != b.degree:
        return False
    qi = a.model.canonical_q if q is None else _vertex_index(a.model, q)
    return _reduced(a.model, a.values, qi) == _reduced(a.model, b.values, qi)


def rank(divisor: Divisor) -> RankCertificate:
    """Rank with a certificate: the lexicographically least effective E of
    degree rank + 1 for which D - E is not equivalent to an effective divisor.
    """
    model = divisor.model
    if divisor.degree < 0:
        return RankCertificate(-1, None)
    eng = _engine(model)
    key = eng.key(divisor.values)
    r = eng.rank(key)
    pts = eng.failing_subtraction(key, r)
    return RankCertificate(r, Divisor.from_points(model, [model.vertices[v] for v in pts]))


def rank_value(divisor: Divisor) -> int:
    if divisor.degree < 0:
        return -1
    eng = _engine(divisor.model)
    return eng.rank(eng.key(divisor.values))


def transport(divisor: Divisor, k: int) -> Divisor:
    """Move a divisor to the model of the same base graph at refinement ``k``."""
    src = divisor.model
    dst = refine(src.base, k)
    chips: dict[str, int] = {}
    for v, c in divisor.chips.items():
        coord = src.coordinate(v)
        name = coord[1] if coord[0] == "vertex" else dst.vertex_at(coord[1], coord[2])
        chips[name] = chips.get(name, 0) + c
    return Divisor.from_chips(dst, chips)


@dataclass(frozen=True)
class StableRank:
    rank: int
    k: int
    next_k: int
    next_rank: int

    @property
    def stable(self) -> bool:
        return self.rank == self.next_rank


def stable_rank(divisor: Divisor) -> StableRank:
    """Rank at the divisor's refinement and at the next one that carries it.

    The next level is ``k + 1`` when every support point is a lattice point
    there, otherwise ``2k``.
    """
    k = divisor.model.k
    try:
        other = transport(divisor, k + 1)
    except GraphError:
        other = transport(divisor, 2 * k)
    return StableRank(rank_value(divisor), k, other.model.k, rank_value(other))


def riemann_roch_check(divisor: Divisor) -> bool:
    model = divisor.model
    g = genus(model.base)
    K = canonical_divisor(model)
    return rank_value(divisor) - rank_value(K - divisor) == divisor.degree + 1 - g


# -- gonality ------------------------------------------------------------------


def _multisets(candidates, degree, cap=None):
    """Sorted index tuples of size ``degree`` in lexicographic order."""
    if cap is None:
        yield from itertools.combinations_with_replacement(candidates, degree)
        return
    for combo in itertools.combinations_with_replacement(candidates, degree):
        if all(combo.count(v) <= cap for v in set(combo)):
            yield combo


def _superstables(model: Model, q: int, max_degree: int):
    """Yield every divisor off ``q`` (as a chip list) of degree <= max_degree
    that is reduced at ``q``; non-reducedness is inherited by supersets, so
    the DFS prunes there."""
    adj = model.adjacency
    n = len(adj)
    chips = [0] * n
    others = [v for v in range(n) if v != q]

    def walk(start, deg):
        yield deg
        if deg == max_degree:
            return
        for i in range(start, len(others)):
            v = others[i]
            chips[v] += 1
            if _burns_all(adj, chips, q):
                yield from walk(i, deg + 1)
            chips[v] -= 1

    for deg in walk(0, 0):
        yield chips, deg


def positive_rank_classes(model: Model, degree: int, q: int = 0) -> list[tuple]:
    """Reduced representatives (at ``q``) of all degree-``degree`` classes of rank >= 1.

    Every such class has a reduced form with at least one chip on ``q``, so
    it suffices to test ``(degree - e) q + E`` over reduced ``E`` of degree
    ``e < degree``.
    """
    dist = model.distances(q)
    order = sorted(range(len(model.vertices)), key=lambda v: (-dist[v], v))
    found = []
    for chips, e in _superstables(model, q, degree - 1):
        vals = list(chips)
        vals[q] = degree - e
        if _positive_rank(model, vals, order):
            found.append(tuple(vals))
    found.sort()
    return found


def least_effective_member(model: Model, values) -> tuple[int, ...]:
    """Lexicographically least sorted multiset in the complete linear system |D|."""
    pts: list[int] = []
    vals = list(values)
    for _ in range(sum(values)):
        start = pts[-1] if pts else 0
        for v in range(start, len(vals)):
            reduced = _reduce(model, list(vals), v)
            if reduced[v] >= 1:
                reduced[v] -= 1
                vals = reduced
                pts.append(v)
                break
        else:
            raise DivisorError("divisor is not equivalent to an effective divisor")
    return tuple(pts)


def gonality(
    graph: MetricGraph,
    max_degree: int,
    k: int = 1,
    support: str = "lattice",
    max_multiplicity: int | None = None,
    strategy: str = "auto",
) -> GonalityResult:
    """Least degree of an effective divisor of rank >= 1 on ``refine(graph, k)``.

    ``support="lattice"`` allows every model vertex, ``"vertices"`` only the
    base vertices.  The witness is the lexicographically least successful
    divisor of that degree.  ``strategy="reduced"`` searches reduced
    representatives (lattice support, no multiplicity cap only);
    ``"exhaustive"`` enumerates every candidate multiset.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    if support not in ("lattice", "vertices"):
        raise ValueError(f"unknown support mode {support!r}")
    model = refine(graph, k)
    if strategy == "auto":
        strategy = "reduced" if support == "lattice" and max_multiplicity is None else "exhaustive"
    if strategy == "reduced" and (support != "lattice" or max_multiplicity is not None):
        raise ValueError("reduced strategy needs lattice support and no multiplicity cap")

    if strategy == "reduced":
        for d in range(1, max_degree + 1):
            classes = positive_rank_classes(model, d)
            if classes:
                best = min(least_effective_member(model, c) for c in classes)
                witness = Divisor.from_points(model, [model.vertices[v] for v in best])
                reps = tuple(Divisor(model, c) for c in classes)
                return GonalityResult(d, witness, k, max_degree, support, reps)
        return GonalityResult(None, None, k, max_degree, support)

    if strategy != "exhaustive":
        raise ValueError(f"unknown strategy {strategy!r}")
    n = len(model.vertices)
    candidates = range(len(graph.vertices)) if support == "vertices" else range(n)
    for d in range(1, max_degree + 1):
        for combo in _multisets(candidates, d, max_multiplicity):
            vals = [0] * n
            for v in combo:
                vals[v] += 1
            if _positive_rank(model, vals):
                witness = Divisor.from_points(model, [model.vertices[v] for v in combo])
                return GonalityResult(d, witness, k, max_degree, support)
    return GonalityResult(None, None, k, max_degree, support)

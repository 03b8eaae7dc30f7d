"""Random families on small integer grids and the sweep driver.

Every trial draws from ``random.Random(f"{seed}:{index}")`` (Python's
Mersenne Twister, string-seeded through SHA-512), so a trial is reproducible
from the master seed and its index alone, independent of worker scheduling.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

from .errors import InputError
from .extremal import FacetFamilySpec, VertexFamilySpec
from .geometry import Box, HollowBox, Interval, vertex_indices
from .intersection import Family, Member, dfs_intersect, oracle_intersect
from .verify import (
    INF,
    Lemma4Config,
    lemma4_trial,
    verify_onedim,
    verify_solid_helly,
    verify_theorem1,
    verify_theorem2,
)

STYLES = ("uniform", "enclosing")
MODES = ("theorem1", "theorem2", "lemma4", "oracle_agreement", "solid", "onedim")


def trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def random_hollow_box(d: int, G: int, rng: random.Random) -> HollowBox:
    sides = []
    for _ in range(d):
        a, b = sorted(rng.sample(range(G + 1), 2))
        sides.append(Interval(a, b))
    return HollowBox(Box(tuple(sides)))


def random_solid_box(d: int, G: int, rng: random.Random) -> Box:
    sides = []
    for _ in range(d):
        a, b = sorted((rng.randint(0, G), rng.randint(0, G)))
        sides.append(Interval(a, b))
    return Box(tuple(sides))


def random_family(d: int, size: int, G: int, rng: random.Random) -> Family:
    """``size`` hollow boxes with integer endpoints in ``{0..G}``."""
    if G < 2:
        raise InputError("grid extent G must be at least 2")
    return Family(tuple(Member.hollow(random_hollow_box(d, G, rng)) for _ in range(size)))


def random_enclosing_family(d: int, size: int, G: int, rng: random.Random) -> Family:
    """Hollow boxes whose hulls all contain one random (possibly flat) core box.

    Uniform families are nearly always disjoint in pairs; a shared core
    pushes the Helly defect up to where the exceptional shapes live.
    """
    if G < 2:
        raise InputError("grid extent G must be at least 2")
    core = []
    for _ in range(d):
        a, b = sorted((rng.randint(1, G - 1), rng.randint(1, G - 1)))
        core.append((a, b))
    members = []
    for _ in range(size):
        sides = []
        for a, b in core:
            lo = rng.randint(0, a)
            hi = rng.randint(max(b, lo + 1), G)
            sides.append(Interval(lo, hi))
        members.append(Member.hollow(HollowBox(Box(tuple(sides)))))
    return Family(tuple(members))


def random_solid_family(d: int, size: int, G: int, rng: random.Random) -> Family:
    return Family(tuple(Member.solid(random_solid_box(d, G, rng)) for _ in range(size)))


def random_pairwise_solid_family(d: int, size: int, G: int, rng: random.Random, tries: int = 10_000) -> Family:
    """A random solid family conditioned on pairwise intersection.

    Boxes meet iff their intervals meet on every axis and the axes are drawn
    independently, so rejecting axis by axis samples the same conditional law
    as rejecting whole families, only much faster.
    """
    columns = []
    for _ in range(d):
        for _ in range(tries):
            ivs = [sorted((rng.randint(0, G), rng.randint(0, G))) for _ in range(size)]
            if all(max(a[0], b[0]) <= min(a[1], b[1]) for j, a in enumerate(ivs) for b in ivs[j + 1 :]):
                columns.append(ivs)
                break
        else:
            raise InputError("could not sample a pairwise intersecting family; increase G or lower size")
    boxes = [Box(tuple(Interval(*columns[i][k]) for i in range(d))) for k in range(size)]
    return Family(tuple(Member.solid(b) for b in boxes))


def random_lemma4_config(d: int, G: int, rng: random.Random, degenerate: bool = False) -> Lemma4Config:
    """A valid configuration: ``B`` inside ``{1..G-1}``, hull sides strict where the own vertex needs it.

    With ``degenerate=True`` at least one axis of ``B`` is collapsed.
    """
    if G < 2:
        raise InputError("grid extent G must be at least 2")
    flat = set()
    if degenerate:
        flat = {rng.randrange(d)} | {i for i in range(d) if rng.random() < 0.25}
    sides = []
    for i in range(d):
        if i in flat:
            a = rng.randint(1, G - 1)
            sides.append(Interval(a, a))
        else:
            a, b = sorted((rng.randint(1, G - 1), rng.randint(1, G - 1)))
            sides.append(Interval(a, b))
    B = Box(tuple(sides))
    members = {}
    for eps in vertex_indices(d):
        hull = []
        for s, e in zip(B.sides, eps):
            x0, x1 = s.lo, s.hi
            if e == "0":
                # x0 strictly inside: lo < x0 and hi > x0
                lo = rng.randint(0, int(x0) - 1)
                hi = rng.randint(max(int(x1), int(x0) + 1), G)
            else:
                hi = rng.randint(int(x1) + 1, G)
                lo = rng.randint(0, min(int(x0), int(x1) - 1))
            hull.append(Interval(lo, hi))
        members[eps] = HollowBox(Box(tuple(hull)))
    return Lemma4Config(B, members)


def random_facet_spec(d: int, rng: random.Random) -> FacetFamilySpec:
    """Random rational ``B``, interior ``p`` and slack for the facet construction."""
    lo, hi, p = [], [], []
    for _ in range(d):
        a = Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3)))
        b = a + Fraction(rng.randint(1, 8), rng.choice((1, 2)))
        lo.append(a)
        hi.append(b)
        p.append(a + (b - a) * Fraction(rng.randint(1, 9), 10))
    return FacetFamilySpec(Box.from_bounds(lo, hi), tuple(p), Fraction(rng.randint(1, 6), rng.choice((1, 2, 4))))


def random_vertex_spec(d: int, rng: random.Random) -> VertexFamilySpec:
    lo = [Fraction(rng.randint(-6, 6), rng.choice((1, 2))) for _ in range(d)]
    hi = [a + Fraction(rng.randint(1, 6), rng.choice((1, 3))) for a in lo]
    margins = tuple(Fraction(rng.randint(1, 6), rng.choice((1, 2, 4))) for _ in range(d))
    return VertexFamilySpec(Box.from_bounds(lo, hi), margins=margins)


def random_onedim_family(size: int, G: int, rng: random.Random) -> Family:
    return random_family(1, size, G, rng)


def random_cover(d: int, rng: random.Random, split: float = 0.6, extra: int = 4) -> list:
    """A shuffled, usually redundant cover of ``{0,1}^d``.

    Start from the all-star pattern, repeatedly split patterns on a random
    star position, then throw in up to ``extra`` random patterns.
    """
    todo, parts = ["*" * d], []
    while todo:
        p = todo.pop()
        stars = [i for i, ch in enumerate(p) if ch == "*"]
        if stars and rng.random() < split:
            i = rng.choice(stars)
            todo += [p[:i] + b + p[i + 1 :] for b in "01"]
        else:
            parts.append(p)
    parts += ["".join(rng.choice("01*") for _ in range(d)) for _ in range(rng.randint(0, extra))]
    parts = list(dict.fromkeys(parts))
    rng.shuffle(parts)
    return parts


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class SweepConfig:
    mode: str
    d: int = 2
    trials: int = 1000
    size_min: int = 2
    size_max: int = 8
    grid: int = 6
    seed: int = 0
    degenerate_fraction: float = 0.25
    style: str = "uniform"
    workers: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"unknown sweep mode {self.mode!r}; choose from {', '.join(MODES)}")
        if self.d < 1 or self.trials < 1 or self.grid < 2:
            raise InputError("need d >= 1, trials >= 1, grid >= 2")
        if not 1 <= self.size_min <= self.size_max:
            raise InputError("need 1 <= size_min <= size_max")
        if self.style not in STYLES:
            raise InputError(f"unknown family style {self.style!r}; choose from {', '.join(STYLES)}")


@dataclass
class TrialOutcome:
    index: int
    ok: bool
    tag: str
    detail: str = ""
    replay: Optional[dict] = None


def run_trial(cfg: SweepConfig, index: int) -> TrialOutcome:
    from .io import serialize_family

    rng = trial_rng(cfg.seed, index)
    size = rng.randint(cfg.size_min, cfg.size_max)
    if cfg.mode in ("theorem1", "theorem2", "onedim"):
        d = {"theorem1": 2, "onedim": 1}.get(cfg.mode, cfg.d)
        gen = random_enclosing_family if cfg.style == "enclosing" else random_family
        f = gen(d, size, cfg.grid, rng)
        check = {"theorem1": verify_theorem1, "theorem2": verify_theorem2, "onedim": verify_onedim}[cfg.mode]
        rep = check(f)
        tag = "inf" if rep.defect == INF else str(rep.defect)
        return TrialOutcome(index, rep.verdict.ok, tag, rep.verdict.detail, None if rep.verdict.ok else serialize_family(f))
    if cfg.mode == "solid":
        f = random_pairwise_solid_family(cfg.d, size, cfg.grid, rng)
        v = verify_solid_helly(f)
        return TrialOutcome(index, v.ok, "pairwise", v.detail, None if v.ok else serialize_family(f))
    if cfg.mode == "lemma4":
        degenerate = rng.random() < cfg.degenerate_fraction
        lc = random_lemma4_config(cfg.d, cfg.grid, rng, degenerate=degenerate)
        v = lemma4_trial(lc)
        tag = "degenerate" if not lc.B.is_full else "full"
        return TrialOutcome(index, v.ok, tag, v.detail, None if v.ok else serialize_family(lc.family()))
    # oracle_agreement
    d = rng.randint(1, cfg.d)
    gen = random_enclosing_family if cfg.style == "enclosing" else random_family
    f = gen(d, size, cfg.grid, rng)
    a, b = dfs_intersect(f), oracle_intersect(f)
    problems = []
    if a.is_empty != b.is_empty:
        problems.append(f"dfs {a!r} vs oracle {b!r}")
    for name, res in (("dfs", a), ("oracle", b)):
        if not res.is_empty and not all(m.contains(res.witness) for m in f.members):
            problems.append(f"{name} witness {res.witness} fails membership")
    tag = "empty" if b.is_empty else "nonempty"
    return TrialOutcome(index, not problems, tag, "; ".join(problems), serialize_family(f) if problems else None)


def _run_chunk(args):
    cfg, indices = args
    return [run_trial(cfg, i) for i in indices]


def sweep(cfg: SweepConfig) -> dict:
    """Run ``cfg.trials`` independent trials and aggregate.

    Failures carry a self-contained replay document (the input family plus
    mode, seed and trial index).
    """
    indices = list(range(cfg.trials))
    if cfg.workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        step = max(1, len(indices) // (cfg.workers * 8))
        chunks = [(cfg, indices[i : i + step]) for i in range(0, len(indices), step)]
        with ProcessPoolExecutor(cfg.workers) as ex:
            outcomes = [o for part in ex.map(_run_chunk, chunks) for o in part]
    else:
        outcomes = [run_trial(cfg, i) for i in indices]
    outcomes.sort(key=lambda o: o.index)
    tags = Counter(o.tag for o in outcomes)
    failures = []
    for o in outcomes:
        if not o.ok:
            doc = dict(o.replay or {})
            doc["replay"] = {"mode": cfg.mode, "seed": cfg.seed, "index": o.index, "detail": o.detail}
            failures.append(doc)
    return {
        "config": asdict(cfg),
        "trials": len(outcomes),
        "passed": sum(o.ok for o in outcomes),
        "failed": len(failures),
        "tags": dict(sorted(tags.items())),
        "failures": failures,
    }

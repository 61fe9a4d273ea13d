"""Independent ground truth by exhaustive search over small finite fields.

Enumeration works from first principles (the grading axioms plus three
structural facts that hold for every grading: the scalar line is
homogeneous, the strictly upper part is a graded subspace, and so is each of
its powers). It never assumes the classification being validated.

Two modes build the same stream:

* full: plain labeled decompositions of the whole coordinate space, checked
  against the bracket axiom (tiny cases only);
* pruned: decompose the strict part compatibly with its power chain, then
  lift the diagonal directions with incremental closure rejection; every
  grading is produced exactly once via canonical echelon lifts with
  corrections drawn from fixed complements.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .classify import classify
from .descriptors import (
    ClassCount,
    GradingDescriptor,
    all_descriptors,
    build,
    canonical,
    canonical_practical,
    count_classes,
)
from .fields import Field
from .gradings import Grading
from .groups import AbelianGroup, GroupElement
from .linalg import QuotientMap, Subspace, Vector, vec_add
from . import ut


class OracleError(RuntimeError):
    pass


class BudgetExceeded(OracleError):
    def __init__(self, visited: int):
        super().__init__(f"enumeration budget exceeded after {visited} nodes")
        self.visited = visited


@dataclass
class CensusConfig:
    n: int
    field: Field
    group: AbelianGroup
    mode: str = "full"  # full | pruned | sampled
    budget: int = 10**7
    seed: int = 0
    jobs: int = 1
    twists: int = 3  # classifier-stability twists per class in sampled mode


@dataclass
class CensusResult:
    total_gradings: int
    classes: List[Tuple[GradingDescriptor, int]]
    practical_classes: int
    mismatches: List[str] = dc_field(default_factory=list)

    def table(self) -> str:
        lines = [f"total gradings: {self.total_gradings}"]
        for d, size in self.classes:
            lines.append(f"  {d.describe()}  orbit={size}")
        lines.append(f"graded classes: {len(self.classes)}")
        lines.append(f"practical classes: {self.practical_classes}")
        for m in self.mismatches:
            lines.append(f"MISMATCH: {m}")
        return "\n".join(lines)


# -- subspace and decomposition enumeration ---------------------------------------


def all_subspaces(field: Field, k: int) -> Iterator[Subspace]:
    """Every subspace of F_p^k, via its unique reduced echelon basis."""
    if field.kind != "prime":
        raise OracleError("subspace enumeration needs a finite field")
    p = field.p
    for r in range(k + 1):
        for pivots in combinations(range(k), r):
            free_pos = [
                (i, c)
                for i, piv in enumerate(pivots)
                for c in range(piv + 1, k)
                if c not in pivots
            ]
            for vals in product(range(p), repeat=len(free_pos)):
                rows = [[0] * k for _ in range(r)]
                for i, piv in enumerate(pivots):
                    rows[i][piv] = 1
                for (i, c), v in zip(free_pos, vals):
                    rows[i][c] = v
                yield Subspace(field, k, [tuple(row) for row in rows], pivots)


def labeled_decompositions(
    field: Field, k: int, labels: Sequence[GroupElement]
) -> Iterator[Dict[GroupElement, Subspace]]:
    """All assignments label -> subspace with direct sum F^k (zero parts omitted)."""
    subs = list(all_subspaces(field, k))

    def rec(idx: int, chosen, sumspace):
        if idx == len(labels):
            if sumspace.dim == k:
                yield {lab: s for lab, s in chosen if s.dim}
            return
        for s in subs:
            if s.dim + sumspace.dim > k:
                continue
            new = sumspace.add(s)
            if new.dim != sumspace.dim + s.dim:
                continue
            yield from rec(idx + 1, chosen + [(labels[idx], s)], new)

    yield from rec(0, [], Subspace.zero(field, k))


# -- enumeration of gradings ------------------------------------------------------


def _enumerate_full(cfg: CensusConfig, deg_identity=None) -> Iterator[Grading]:
    field, group, n = cfg.field, cfg.group, cfg.n
    N = ut.dimension(n)
    labels = sorted(group.elements())
    visited = 0
    ident = ut.identity_vector(field, n)
    for assignment in labeled_decompositions(field, N, labels):
        visited += 1
        if visited > cfg.budget:
            raise BudgetExceeded(visited)
        grading = Grading(field, group, n, assignment)
        if deg_identity is not None and grading.degree_of(ident) != deg_identity:
            continue
        if grading.verify().ok:
            yield grading


def _span_vectors(field: Field, space: Subspace) -> List[Vector]:
    """All vectors of a small subspace (coefficients over the echelon basis)."""
    out = []
    for coeffs in product(range(field.p), repeat=space.dim):
        v = [field.zero] * space.ambient
        for c, row in zip(coeffs, space.rows):
            if c:
                for i, x in enumerate(row):
                    v[i] = field.add(v[i], field.mul(c, x))
        out.append(tuple(v))
    return out


def _enumerate_pruned(cfg: CensusConfig, deg_identity=None) -> Iterator[Grading]:
    field, group, n = cfg.field, cfg.group, cfg.n
    N = ut.dimension(n)
    labels = sorted(group.elements())
    powers = [ut.derived_power(field, n, m) for m in range(n + 1)]  # powers[m]
    state = {"visited": 0}

    def tick():
        state["visited"] += 1
        if state["visited"] > cfg.budget:
            raise BudgetExceeded(state["visited"])

    def level_lift(m: int) -> List[Vector]:
        # canonical coordinates of the m-th filtration factor are the cells (i, i+m)
        return [ut.basis_vector(field, n, i, i + m) for i in range(1, n - m + 1)]

    def strict_decompositions(m: int, parts: Dict[GroupElement, List[Vector]]):
        """Assign degrees level by level, from the deepest power upward."""
        if m == 0:
            spans = {
                d: Subspace.span(field, N, vecs) for d, vecs in parts.items() if vecs
            }
            # closure within the strict part
            for d1, s1 in spans.items():
                for d2, s2 in spans.items():
                    tgt = spans.get(group.compose(d1, d2))
                    for b1 in s1.rows:
                        for b2 in s2.rows:
                            w = ut.bracket(field, n, b1, b2)
                            if any(w) and (tgt is None or not tgt.contains(w)):
                                return
            yield spans
            return
        cells_m = level_lift(m)
        k = len(cells_m)
        deeper = powers[m + 1]
        for assignment in labeled_decompositions(field, k, labels):
            # lift each echelon row with corrections from a fixed complement
            per_label_lifts: List[Tuple[GroupElement, List[List[Vector]]]] = []
            for d, q in assignment.items():
                built_d = Subspace.span(field, N, parts.get(d, []))
                corr_space = built_d.intersect(deeper).complement_within(deeper)
                corrections = _span_vectors(field, corr_space)
                row_opts = []
                for row in q.rows:
                    v0 = [field.zero] * N
                    for c, cell_vec in zip(row, cells_m):
                        if c:
                            for i, x in enumerate(cell_vec):
                                v0[i] = field.add(v0[i], field.mul(c, x))
                    row_opts.append([vec_add(field, tuple(v0), c) for c in corrections])
                per_label_lifts.append((d, row_opts))

            def expand(idx: int, acc: Dict[GroupElement, List[Vector]]):
                if idx == len(per_label_lifts):
                    yield from strict_decompositions(m - 1, acc)
                    return
                d, row_opts = per_label_lifts[idx]
                for choice in product(*row_opts):
                    tick()
                    nxt = {k2: list(v2) for k2, v2 in acc.items()}
                    nxt.setdefault(d, []).extend(choice)
                    yield from expand(idx + 1, nxt)

            yield from expand(0, {k2: list(v2) for k2, v2 in parts.items()})

    J = powers[1]
    qmap = QuotientMap(J)
    ident_q = qmap.project(ut.identity_vector(field, n))
    for strict_parts in strict_decompositions(n - 1, {}):
        # decompose the diagonal directions (the quotient by the strict part)
        for diag_assignment in labeled_decompositions(field, qmap.dim, labels):
            t = None
            for d, q in diag_assignment.items():
                if q.contains(ident_q):
                    t = d
                    break
            if t is None:
                continue
            if deg_identity is not None and t != deg_identity:
                continue
            # lift diagonal echelon rows with corrections in a complement of
            # the matching strict component, rejecting closure violations early
            tasks = []
            for d, q in sorted(diag_assignment.items()):
                strict_d = strict_parts.get(d, Subspace.zero(field, N))
                corr_space = strict_d.complement_within(J)
                corrections = _span_vectors(field, corr_space)
                for row in q.rows:
                    tasks.append((d, qmap.lift(row), corrections))

            def lift_diag(idx: int, placed: List[Tuple[GroupElement, Vector]]):
                if idx == len(tasks):
                    comps: Dict[GroupElement, List[Vector]] = {
                        d: [r for r in s.rows] for d, s in strict_parts.items()
                    }
                    for d, v in placed:
                        comps.setdefault(d, []).append(v)
                    grading = Grading.from_vectors(field, group, cfg.n, comps)
                    if grading.verify().ok:
                        yield grading
                    return
                d, v0, corrections = tasks[idx]
                for c in corrections:
                    tick()
                    v = vec_add(field, v0, c)
                    ok = True
                    for h, s in strict_parts.items():
                        tgt = strict_parts.get(group.compose(d, h))
                        for b in s.rows:
                            w = ut.bracket(field, n, v, b)
                            if any(w) and (tgt is None or not tgt.contains(w)):
                                ok = False
                                break
                        if not ok:
                            break
                    if ok:
                        for d2, v2 in placed:
                            tgt = strict_parts.get(group.compose(d, d2))
                            w = ut.bracket(field, n, v, v2)
                            if any(w) and (tgt is None or not tgt.contains(w)):
                                ok = False
                                break
                    if ok:
                        yield from lift_diag(idx + 1, placed + [(d, v)])

            yield from lift_diag(0, [])


def enumerate_gradings(cfg: CensusConfig, deg_identity=None) -> Iterator[Grading]:
    if cfg.field.kind != "prime" or not cfg.group.is_finite():
        raise OracleError("enumeration needs a finite field and a finite group")
    if cfg.mode == "full":
        yield from _enumerate_full(cfg, deg_identity)
    elif cfg.mode == "pruned":
        yield from _enumerate_pruned(cfg, deg_identity)
    else:
        raise OracleError(f"mode {cfg.mode!r} does not enumerate")


# -- automorphism search ----------------------------------------------------------

_AUTO_CACHE: Dict[Tuple[Field, int], List[ut.Automorphism]] = {}


def _autos(field: Field, n: int, budget: int = 10**7) -> List[ut.Automorphism]:
    key = (field, n)
    if key not in _AUTO_CACHE:
        _AUTO_CACHE[key] = ut.enumerate_automorphisms(field, n, budget)
    return _AUTO_CACHE[key]


def graded_isomorphic_search(
    g1: Grading, g2: Grading, budget: int = 10**7
) -> Optional[ut.Automorphism]:
    """An automorphism carrying every component onto the equal-degree one, or None."""
    dims1 = {g: s.dim for g, s in g1.components.items()}
    dims2 = {g: s.dim for g, s in g2.components.items()}
    if dims1 != dims2:
        return None
    for auto in _autos(g1.field, g1.n, budget):
        ok = True
        for g, comp in g1.components.items():
            target = g2.components[g]
            for row in comp.rows:
                if not target.contains(auto.apply_with_matrix(row)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return auto
    return None


def practical_isomorphic_search(
    g1: Grading, g2: Grading, budget: int = 10**7
) -> Optional[ut.Automorphism]:
    """An automorphism matching components after projecting out the scalar line."""
    field, n = g1.field, g1.n
    qmap = QuotientMap(ut.center(field, n))
    proj1 = {
        g: p for g, p in ((g, qmap.project_subspace(s)) for g, s in g1.components.items()) if p.dim
    }
    proj2 = {
        g: p for g, p in ((g, qmap.project_subspace(s)) for g, s in g2.components.items()) if p.dim
    }
    if {g: p.dim for g, p in proj1.items()} != {g: p.dim for g, p in proj2.items()}:
        return None
    for auto in _autos(field, n, budget):
        ok = True
        for g, p1 in proj1.items():
            target = proj2[g]
            for row in g1.components[g].rows:
                if not target.contains(qmap.project(auto.apply_with_matrix(row))):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return auto
    return None


# -- census -----------------------------------------------------------------------


def _census_part(args: Tuple[CensusConfig, GroupElement]):
    """Bucket the gradings with a fixed identity-matrix degree (one parallel shard)."""
    cfg, deg_identity = args
    total = 0
    buckets: Dict[str, int] = {}
    reps: Dict[str, str] = {}
    for grading in enumerate_gradings(cfg, deg_identity):
        total += 1
        desc, _ = classify(grading)
        key = desc.dumps()
        buckets[key] = buckets.get(key, 0) + 1
        reps.setdefault(key, grading.dumps())
    return total, buckets, reps


def _census_enumerated(cfg: CensusConfig) -> CensusResult:
    degs = sorted(cfg.group.elements())
    if cfg.jobs > 1:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(min(cfg.jobs, len(degs))) as pool:
            results = pool.map(_census_part, [(cfg, d) for d in degs])
    else:
        results = [_census_part((cfg, d)) for d in degs]
    total = 0
    buckets: Dict[str, int] = {}
    reps: Dict[str, str] = {}
    for part_total, part_buckets, part_reps in results:
        total += part_total
        for k, v in part_buckets.items():
            buckets[k] = buckets.get(k, 0) + v
        for k, v in part_reps.items():
            reps.setdefault(k, v)

    mismatches: List[str] = []
    classes = []
    for key in sorted(buckets):
        desc = GradingDescriptor.loads(key)
        rep = Grading.loads(reps[key])
        witness = graded_isomorphic_search(rep, build(desc, cfg.field), cfg.budget)
        if witness is None:
            mismatches.append(f"no isomorphism witness between orbit and {desc.describe()}")
        classes.append((desc, buckets[key]))
    practical = len({canonical_practical(d) for d, _ in classes})
    expected = count_classes(cfg.n, cfg.group, char2=cfg.field.p == 2)
    if len(classes) != expected.graded_classes:
        mismatches.append(
            f"census found {len(classes)} graded classes, predicted {expected.graded_classes}"
        )
    if practical != expected.practical_classes:
        mismatches.append(
            f"census found {practical} practical classes, predicted {expected.practical_classes}"
        )
    return CensusResult(total, classes, practical, mismatches)


def _census_sampled(cfg: CensusConfig) -> CensusResult:
    import random

    char2 = cfg.field.p == 2
    preds = sorted(
        {canonical(d) for d in all_descriptors(cfg.n, cfg.group, char2)},
        key=lambda d: d.dumps(),
    )
    mismatches: List[str] = []
    rng = random.Random(cfg.seed)
    reps: List[Tuple[GradingDescriptor, Grading]] = []
    for d in preds:
        grading = build(d, cfg.field)
        if not grading.verify().ok:
            mismatches.append(f"{d.describe()}: constructed grading fails verification")
            continue
        got, _ = classify(grading)
        if got != d:
            mismatches.append(f"{d.describe()}: classifies to {got.describe()}")
        for _ in range(cfg.twists):
            auto = ut.random_automorphism(cfg.field, cfg.n, rng)
            got_t, _ = classify(grading.transport(auto))
            if got_t != d:
                mismatches.append(f"{d.describe()}: unstable under an automorphism twist")
                break
        reps.append((d, grading))
    for (d1, r1), (d2, r2) in combinations(reps, 2):
        if graded_isomorphic_search(r1, r2, cfg.budget) is not None:
            mismatches.append(f"{d1.describe()} and {d2.describe()} are isomorphic")
    practical = len({canonical_practical(d) for d, _ in reps})
    return CensusResult(0, [(d, 1) for d, _ in reps], practical, mismatches)


def census(cfg: CensusConfig) -> CensusResult:
    if cfg.mode in ("full", "pruned"):
        return _census_enumerated(cfg)
    if cfg.mode == "sampled":
        return _census_sampled(cfg)
    raise OracleError(f"unknown census mode {cfg.mode!r}")

"""Graded polynomial identities: the separating families and membership tests.

Three families suffice for all separation results implemented here:

* bracket words xi_sigma: left-normed products of two-variable blocks
  [x^(1), x^(d_i)], one block per superdiagonal position, in a permuted
  order;
* their twisted variants xi'_sigma, where the second slot of each block
  ranges over the sum of the components at d_i and g*d_i (middle block
  unsummed when n is even);
* the ad-power family f_{g,h} = ad(x^g)^n x^h, decided structurally.

Membership is exact: bracket words are multilinear in their slots, so
checking all tuples of spanning vectors decides the identity, and the
span-fold below does that without enumerating the full grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .descriptors import GradingDescriptor, build, practically_isomorphic
from .fields import Field, Scalar
from .gradings import Grading, QuotientGrading
from .groups import AbelianGroup, GroupElement
from .linalg import Subspace, Vector, is_zero_vector
from . import ut


@dataclass(frozen=True)
class GradedVariable:
    """A substitution slot; its value ranges over the sum of the listed components."""

    index: int
    degrees: Tuple[GroupElement, ...]

    def text(self, group: AbelianGroup) -> str:
        return " + ".join(
            f"x{self.index}^({','.join(str(c) for c in d)})" for d in self.degrees
        )


class LieWord:
    """A bracket word: either a variable leaf or a bracket of two subwords."""

    __slots__ = ("var", "left", "right")

    def __init__(self, var=None, left=None, right=None):
        self.var = var
        self.left = left
        self.right = right

    @classmethod
    def leaf(cls, var: GradedVariable) -> "LieWord":
        return cls(var=var)

    @classmethod
    def bracket(cls, left: "LieWord", right: "LieWord") -> "LieWord":
        return cls(left=left, right=right)

    def variables(self) -> List[GradedVariable]:
        if self.var is not None:
            return [self.var]
        return self.left.variables() + self.right.variables()

    def text(self, group: AbelianGroup) -> str:
        if self.var is not None:
            return self.var.text(group)
        return f"[{self.left.text(group)}, {self.right.text(group)}]"


@dataclass(frozen=True)
class AdPower:
    """f_{g,h} = ad(x^g)^n x^h; h = None means the question ranges over all h."""

    g: GroupElement
    h: Optional[GroupElement] = None

    def text(self, group: AbelianGroup, n: int) -> str:
        g = group.format_element(self.g)
        h = group.format_element(self.h) if self.h is not None else "h"
        return f"ad(x^{g})^{n} x^{h}"


GradedLiePolynomial = Union[LieWord, AdPower]


# -- construction of the families -------------------------------------------------


def make_xi(group: AbelianGroup, eta: Sequence[GroupElement], sigma: Sequence[int]) -> LieWord:
    """Left-normed product of blocks [x^(1), x^(eta_i)] in the order sigma (0-based)."""
    blocks = []
    for i in sigma:
        a = GradedVariable(2 * i + 1, (group.identity,))
        b = GradedVariable(2 * i + 2, (group.coerce(eta[i]),))
        blocks.append(LieWord.bracket(LieWord.leaf(a), LieWord.leaf(b)))
    word = blocks[0]
    for blk in blocks[1:]:
        word = LieWord.bracket(word, blk)
    return word


def make_xi_type2(
    group: AbelianGroup,
    g: GroupElement,
    eta: Sequence[GroupElement],
    sigma: Sequence[int],
) -> LieWord:
    """Twisted blocks [x^(1), x^(eta_i) + x^(g*eta_i)], middle block unsummed for even n."""
    n = len(eta) + 1
    blocks = []
    for i in sigma:
        a = GradedVariable(2 * i + 1, (group.identity,))
        di = group.coerce(eta[i])
        if n % 2 == 0 and i + 1 == n // 2:
            degrees = (di,)
        else:
            degrees = tuple(sorted({di, group.compose(g, di)}))
        b = GradedVariable(2 * i + 2, degrees)
        blocks.append(LieWord.bracket(LieWord.leaf(a), LieWord.leaf(b)))
    word = blocks[0]
    for blk in blocks[1:]:
        word = LieWord.bracket(word, blk)
    return word


# -- evaluation views -------------------------------------------------------------


class _View:
    """Uniform evaluation surface over a grading or a central quotient of one."""

    __slots__ = ("field", "group", "dim", "components", "_bracket", "n", "nilpart")

    def __init__(self, target: Union[Grading, QuotientGrading]):
        if isinstance(target, Grading):
            self.field = target.field
            self.group = target.group
            self.n = target.n
            self.dim = ut.dimension(target.n)
            self.components = target.components
            self._bracket = lambda u, v: ut.bracket(self.field, self.n, u, v)
            strict = ut.derived_power(self.field, self.n, 1)
            self.nilpart = strict.add(ut.center(self.field, self.n))
        else:
            parent = target.parent
            self.field = parent.field
            self.group = parent.group
            self.n = parent.n
            self.dim = target.qmap.dim
            self.components = target.components
            self._bracket = target.bracket
            strict = ut.derived_power(self.field, self.n, 1)
            self.nilpart = target.qmap.project_subspace(strict)

    def bracket(self, u: Vector, v: Vector) -> Vector:
        return self._bracket(u, v)

    def slot_space(self, var: GradedVariable) -> Subspace:
        space = Subspace.zero(self.field, self.dim)
        for d in var.degrees:
            comp = self.components.get(self.group.coerce(d))
            if comp is not None:
                space = space.add(comp)
        return space


Witness = Dict[int, Vector]


def _span_fold(view: _View, word: LieWord) -> List[Tuple[Vector, Witness]]:
    """Spanning set (with producing substitutions) of all values of the word
    over spanning vectors of each slot; empty iff the word is an identity."""
    if word.var is not None:
        return [(v, {word.var.index: v}) for v in view.slot_space(word.var).rows]
    left = _span_fold(view, word.left)
    right = _span_fold(view, word.right)
    kept: List[Tuple[Vector, Witness]] = []
    span = Subspace.zero(view.field, view.dim)
    for lv, lw in left:
        for rv, rw in right:
            val = view.bracket(lv, rv)
            if is_zero_vector(val) or span.contains(val):
                continue
            kept.append((val, {**lw, **rw}))
            span = span.add(Subspace.span(view.field, view.dim, [val]))
    return kept


def holds_multilinear(
    word: LieWord, target: Union[Grading, QuotientGrading]
) -> Tuple[bool, Optional[Witness]]:
    """Is the bracket word a graded identity? On failure returns a substitution
    (slot index -> homogeneous-sum value) with nonzero evaluation."""
    seen = set()
    for var in word.variables():
        if var.index in seen:
            raise ValueError("bracket word uses a slot twice; not multilinear")
        seen.add(var.index)
    values = _span_fold(_View(target), word)
    if not values:
        return True, None
    return False, values[0][1]


def evaluate_word(view_target: Union[Grading, QuotientGrading], word: LieWord, sub: Witness) -> Vector:
    view = _View(view_target)

    def ev(w: LieWord) -> Vector:
        if w.var is not None:
            return sub[w.var.index]
        return view.bracket(ev(w.left), ev(w.right))

    return ev(word)


@dataclass
class AdPowerResult:
    identity: bool
    witness: Optional[Tuple[GroupElement, Vector, Vector]] = None  # (h, x, y)


def holds_adpower(
    g: GroupElement, target: Union[Grading, QuotientGrading]
) -> AdPowerResult:
    """Decide whether ad(x^g)^n x^h is an identity for every h at once.

    Structural criterion: the component at g consists of nilpotent-plus-scalar
    elements iff it sits inside strict part + scalars; then every ad-power of
    length n vanishes. Otherwise some component vector has two distinct
    diagonal entries and a nonzero ad-power value exists; it is found by
    scanning homogeneous spanning vectors.
    """
    view = _View(target)
    g = view.group.coerce(g)
    comp = view.components.get(g)
    if comp is None or view.nilpart.contains_subspace(comp):
        return AdPowerResult(identity=True)
    for x in comp.rows:
        if view.nilpart.contains(x):
            continue
        for h, hcomp in view.components.items():
            for y in hcomp.rows:
                val = y
                for _ in range(view.n):
                    val = view.bracket(x, val)
                if not is_zero_vector(val):
                    return AdPowerResult(identity=False, witness=(h, x, y))
    raise RuntimeError("ad-power criterion and scan disagree; internal fault")


# -- separator search -------------------------------------------------------------


@dataclass
class Separator:
    polynomial: GradedLiePolynomial
    holds_in: str  # "first" | "second"

    def text(self, group: AbelianGroup, n: int) -> str:
        if isinstance(self.polynomial, AdPower):
            body = self.polynomial.text(group, n)
        else:
            body = self.polynomial.text(group)
        return f"{body}  (identity of the {self.holds_in} grading only)"


def _check_adpower_separator(
    g: GroupElement, G1: Grading, G2: Grading
) -> Optional[Separator]:
    r1 = holds_adpower(g, G1)
    r2 = holds_adpower(g, G2)
    if r1.identity == r2.identity:
        return None
    h = (r2.witness or r1.witness)[0]
    side = "first" if r1.identity else "second"
    return Separator(AdPower(g, h), side)


def _check_word_separator(word: LieWord, G1: Grading, G2: Grading) -> Optional[Separator]:
    ok1, _ = holds_multilinear(word, G1)
    ok2, _ = holds_multilinear(word, G2)
    if ok1 == ok2:
        return None
    return Separator(word, "first" if ok1 else "second")


def find_separator(
    d1: GradingDescriptor, d2: GradingDescriptor, field: Field
) -> Optional[Separator]:
    """A polynomial holding in exactly one of the built gradings, or None when
    the descriptors are practically isomorphic. Exhausting the search while
    the predicate demands a separator is a hard error."""
    if practically_isomorphic(d1, d2):
        return None
    G1 = build(d1, field)
    G2 = build(d2, field)
    group = d1.group
    n = d1.n
    if d1.kind != d2.kind:
        g = d1.g if d1.kind == "type2" else d2.g
        sep = _check_adpower_separator(g, G1, G2)
        if sep is not None:
            return sep
    elif d1.kind == "elementary":
        for sigma in permutations(range(n - 1)):
            for d in (d1, d2):
                word = make_xi(group, d.eta, sigma)
                sep = _check_word_separator(word, G1, G2)
                if sep is not None:
                    return sep
    else:
        if d1.g != d2.g:
            sep = _check_adpower_separator(d1.g, G1, G2)
            if sep is not None:
                return sep
        else:
            # twisted words first (the intended family), then plain words from
            # either eta, which settle middle-entry differences for even n
            for sigma in permutations(range(n - 1)):
                for d in (d1, d2):
                    for word in (
                        make_xi_type2(group, d.g, d.eta, sigma),
                        make_xi(group, d.eta, sigma),
                    ):
                        sep = _check_word_separator(word, G1, G2)
                        if sep is not None:
                            return sep
    raise RuntimeError(
        "non-equivalent descriptors admit no separator in the implemented families"
    )

"""Group gradings on the upper triangular Lie algebra.

A grading is a decomposition into homogeneous components indexed by group
elements, with the bracket of two components landing in the component of the
product degree. Components are stored sparsely (nonzero degrees only) and
sorted by the lexicographic order on degree tuples.
"""

from __future__ import annotations

import json
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import Field, Scalar
from .groups import AbelianGroup, GroupElement
from .linalg import QuotientMap, Subspace, Vector, is_zero_vector, vec_sub
from . import ut


class GradingError(ValueError):
    """Malformed grading data."""


class VerificationReport:
    """Outcome of checking the grading axioms; carries one line per failure."""

    __slots__ = ("ok", "failures")

    def __init__(self, failures: Sequence[str]):
        self.failures = list(failures)
        self.ok = not self.failures

    def __repr__(self) -> str:
        return f"VerificationReport(ok={self.ok}, failures={len(self.failures)})"

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(self.failures)


class Grading:
    __slots__ = ("field", "group", "n", "components")

    def __init__(
        self,
        field: Field,
        group: AbelianGroup,
        n: int,
        components: Dict[GroupElement, Subspace],
    ):
        self.field = field
        self.group = group
        self.n = n
        clean: Dict[GroupElement, Subspace] = {}
        N = ut.dimension(n)
        for g, space in components.items():
            g = group.coerce(g)
            if space.field != field or space.ambient != N:
                raise GradingError(f"component at {g} has wrong field or ambient dimension")
            if space.dim == 0:
                continue
            if g in clean:
                raise GradingError(f"duplicate component degree {g}")
            clean[g] = space
        self.components = dict(sorted(clean.items()))

    @classmethod
    def from_vectors(
        cls,
        field: Field,
        group: AbelianGroup,
        n: int,
        assignment: Dict[GroupElement, Sequence[Sequence[Scalar]]],
    ) -> "Grading":
        N = ut.dimension(n)
        comps = {
            g: Subspace.span(field, N, vecs) for g, vecs in assignment.items() if vecs
        }
        return cls(field, group, n, comps)

    # -- axioms --------------------------------------------------------------------

    def verify(self) -> VerificationReport:
        failures: List[str] = []
        N = ut.dimension(self.n)
        total_dim = sum(s.dim for s in self.components.values())
        joined = Subspace.zero(self.field, N)
        for s in self.components.values():
            joined = joined.add(s)
        if joined.dim != total_dim:
            failures.append(
                f"components overlap: dims sum to {total_dim} but span has dim {joined.dim}"
            )
        if joined.dim != N:
            failures.append(f"components span dim {joined.dim}, expected {N}")
        degrees = list(self.components)
        for g in degrees:
            for h in degrees:
                gh = self.group.compose(g, h)
                target = self.components.get(gh)
                for bu in self.components[g].rows:
                    for bv in self.components[h].rows:
                        w = ut.bracket(self.field, self.n, bu, bv)
                        if is_zero_vector(w):
                            continue
                        if target is None:
                            failures.append(
                                f"bracket-violation at ({self.group.format_element(g)},"
                                f"{self.group.format_element(h)}): product degree has no component"
                            )
                        elif not target.contains(w):
                            failures.append(
                                f"bracket-violation at ({self.group.format_element(g)},"
                                f"{self.group.format_element(h)}): basis bracket leaves the"
                                f" component of degree {self.group.format_element(gh)}"
                            )
        return VerificationReport(failures)

    # -- queries -------------------------------------------------------------------

    def support(self) -> set:
        return set(self.components)

    def essential_support(self) -> set:
        center = ut.center(self.field, self.n)
        return {g for g, s in self.components.items() if not center.contains_subspace(s)}

    def degree_of(self, vec: Sequence[Scalar]) -> Optional[GroupElement]:
        """Degree of a homogeneous vector, None for zero or non-homogeneous."""
        if is_zero_vector(vec):
            return None
        for g, s in self.components.items():
            if s.contains(vec):
                return g
        return None

    def is_graded_subspace(self, space: Subspace) -> bool:
        return sum(space.intersect(s).dim for s in self.components.values()) == space.dim

    def is_semihomogeneous(
        self, vec: Sequence[Scalar], degree: GroupElement
    ) -> Tuple[bool, Optional[Tuple[Vector, Vector]]]:
        """Is vec = y + z with y in the given component and z scalar? Returns (flag, (y, z))."""
        degree = self.group.coerce(degree)
        comp = self.components.get(degree, Subspace.zero(self.field, ut.dimension(self.n)))
        from .linalg import affine_solve

        ident = ut.identity_vector(self.field, self.n)
        z_part = affine_solve(self.field, vec, [ident], comp)
        if z_part is None:
            return False, None
        y = z_part
        z = vec_sub(self.field, vec, y)
        return True, (y, z)

    # -- maps ----------------------------------------------------------------------

    def transport(self, auto: "ut.Automorphism") -> "Grading":
        comps = {g: auto.transport_subspace(s) for g, s in self.components.items()}
        return Grading(self.field, self.group, self.n, comps)

    def quotient_grading(self, ideal: Subspace) -> "QuotientGrading":
        if not self.is_graded_subspace(ideal):
            raise GradingError("quotient requires a graded subspace")
        full = Subspace.full(self.field, ut.dimension(self.n))
        for b in full.rows:
            for r in ideal.rows:
                if not ideal.contains(ut.bracket(self.field, self.n, b, r)):
                    raise GradingError("quotient requires an ideal")
        qmap = QuotientMap(ideal)
        comps = {}
        for g, s in self.components.items():
            q = qmap.project_subspace(s)
            if q.dim:
                comps[g] = q
        return QuotientGrading(self, qmap, comps)

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> dict:
        comps = []
        for g in sorted(self.components):
            basis = []
            for row in self.components[g].rows:
                mat = ut.vector_to_matrix(self.field, self.n, row)
                basis.append([self.field.format(x) for r in mat for x in r])
            comps.append({"degree": list(g), "basis": basis})
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "group": self.group.to_json(),
            "components": comps,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Grading":
        try:
            field = Field.from_json(data["field"])
            n = int(data["n"])
            group = AbelianGroup.from_json(data["group"])
            assignment = {}
            for comp in data["components"]:
                g = group.coerce(comp["degree"])
                vecs = []
                for flat in comp["basis"]:
                    if len(flat) != n * n:
                        raise GradingError(
                            f"basis entry has {len(flat)} scalars, expected {n * n}"
                        )
                    mat = [
                        [field.parse(flat[i * n + j]) for j in range(n)] for i in range(n)
                    ]
                    vecs.append(ut.matrix_to_vector(field, n, mat))
                assignment[g] = vecs
            return cls.from_vectors(field, group, n, assignment)
        except (KeyError, TypeError, IndexError) as exc:
            raise GradingError(f"malformed grading data: {exc!r}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "Grading":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GradingError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
        return cls.from_json(data)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Grading)
            and self.field == other.field
            and self.group == other.group
            and self.n == other.n
            and self.components == other.components
        )

    def __repr__(self) -> str:
        return f"Grading(n={self.n}, field={self.field!r}, components={len(self.components)})"


class QuotientGrading:
    """The induced grading on the quotient by a graded ideal, in section coordinates."""

    __slots__ = ("parent", "qmap", "components")

    def __init__(self, parent: Grading, qmap: QuotientMap, components: Dict[GroupElement, Subspace]):
        self.parent = parent
        self.qmap = qmap
        self.components = dict(sorted(components.items()))

    @property
    def dim(self) -> int:
        return self.qmap.dim

    def bracket(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
        p = self.parent
        w = ut.bracket(p.field, p.n, self.qmap.lift(u), self.qmap.lift(v))
        return self.qmap.project(w)

    def support(self) -> set:
        return set(self.components)

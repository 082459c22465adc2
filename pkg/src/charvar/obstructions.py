"""Quasi-projectivity obstructions for candidate characteristic-variety data.

Each check returns one or more ``Finding`` objects.  A finding is VIOLATED
only when it carries a witness that can be re-checked from the stored data
(a torsion point and its computed dimension, or an intersection); anything
that would need maximality of a component is reported as inconclusive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .fox import dim_h1, generic_dim, scan_torsion
from .orbifold import OrbifoldSurface, label_of_character, orbifold_dim_h1
from .presentation import Character, CharvarError, Presentation, Word
from .torus import (
    TranslatedSubtorus,
    contains,
    intersect,
    point_order,
    same_subtorus,
    shadow,
    subtorus_equal,
)

__all__ = [
    "SATISFIED",
    "VIOLATED",
    "INCONCLUSIVE",
    "ComponentDatum",
    "OrbifoldMorphismDatum",
    "PullbackClaim",
    "Finding",
    "ObstructionReport",
    "check_sum_rule",
    "check_pair_geometry",
    "check_depth_and_dimension",
    "check_pullback",
    "full_report",
]

SATISFIED = "satisfied"
VIOLATED = "VIOLATED"
INCONCLUSIVE = "inconclusive"
_VERDICTS = (SATISFIED, VIOLATED, INCONCLUSIVE)


def _q(x: Fraction) -> str:
    return str(Fraction(x))


def _point_str(p) -> list[str]:
    return [_q(x) for x in p]


@dataclass(frozen=True)
class ComponentDatum:
    subtorus: TranslatedSubtorus
    depth: int
    note: str = ""

    def __post_init__(self):
        if self.depth < 1:
            raise CharvarError("component depth must be at least 1")

    @property
    def dim(self) -> int:
        return self.subtorus.dim

    def key(self) -> str:
        rho, cols = self.subtorus.key()
        return f"k={self.depth} rho=[{','.join(_q(x) for x in rho)}] E={[list(r) for r in cols]}"


@dataclass(frozen=True)
class OrbifoldMorphismDatum:
    """Images of the source generators as words in the target orbifold group."""

    target: OrbifoldSurface
    images: tuple[Word, ...]
    name: str = ""

    def pull_back(self, xi_c: Character) -> tuple:
        return tuple(xi_c.evaluate_word(w)[0] for w in self.images)


@dataclass(frozen=True)
class PullbackClaim:
    morphism: OrbifoldMorphismDatum
    target_character: Character
    source_character: Character


@dataclass(frozen=True)
class Finding:
    rule: str
    inputs: dict
    verdict: str
    witness: dict = field(default_factory=dict)
    message: str = ""

    def __post_init__(self):
        if self.verdict not in _VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    def to_dict(self) -> dict:
        return {"rule": self.rule, "inputs": self.inputs, "verdict": self.verdict,
                "witness": self.witness, "message": self.message}

    @classmethod
    def from_dict(cls, d: dict) -> "Finding":
        return cls(d["rule"], d["inputs"], d["verdict"], d.get("witness", {}), d.get("message", ""))

    def sort_key(self):
        return (self.rule, json.dumps(self.inputs, sort_keys=True), self.verdict, self.message)


@dataclass(frozen=True)
class ObstructionReport:
    findings: tuple[Finding, ...] = ()
    unexplained: tuple[dict, ...] = ()

    @property
    def obstructed(self) -> bool:
        return any(f.verdict == VIOLATED for f in self.findings)

    @property
    def overall(self) -> str:
        return "obstructed" if self.obstructed else "satisfied"

    def to_dict(self) -> dict:
        return {"schema": "charvar-report/1", "overall": self.overall,
                "findings": [f.to_dict() for f in self.findings],
                "unexplained": list(self.unexplained)}

    @classmethod
    def from_dict(cls, d: dict) -> "ObstructionReport":
        return cls(tuple(Finding.from_dict(f) for f in d.get("findings", ())),
                   tuple(d.get("unexplained", ())))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"overall: {self.overall}"]
        for f in self.findings:
            args = "; ".join(f"{k}={v}" for k, v in sorted(f.inputs.items()))
            lines.append(f"[{f.verdict}] {f.rule}: {args}")
            if f.message:
                lines.append(f"    {f.message}")
            for k, v in sorted(f.witness.items()):
                lines.append(f"    {k}: {v}")
        for u in self.unexplained:
            lines.append(f"unexplained isolated candidate: {u['point']} (order {u['order']}, dim {u['dim']})")
        return "\n".join(lines)


def _torsion_character(p: Presentation, point) -> Character:
    return Character(p, tuple(Fraction(x) for x in point), ((),) * p.ngens, 0)


def check_sum_rule(p: Presentation, c1: ComponentDatum, c2: ComponentDatum,
                   xi_distinct: bool = False) -> Finding:
    """At every torsion point of V1 n V2 the dimension must reach k1 + k2."""
    inputs = {"components": sorted([c1.key(), c2.key()])}
    if xi_distinct:
        inputs["xi_distinct"] = True
    v1, v2 = c1.subtorus, c2.subtorus
    if v1.presentation != p:
        raise CharvarError("component does not live in this presentation's torus")
    if same_subtorus(v1, v2) and not xi_distinct:
        return Finding("sum-rule", inputs, INCONCLUSIVE,
                       message="identical subtori; the rule needs distinct components or distinct subspaces")
    res = intersect(v1, v2)
    if res.empty:
        return Finding("sum-rule", inputs, SATISFIED, message="components are disjoint")
    if res.dim > 0:
        return Finding("sum-rule", inputs, INCONCLUSIVE, witness={"intersection_dim": res.dim},
                       message="intersection is positive-dimensional")
    pts = list(res.points)
    need = c1.depth + c2.depth
    checked = []
    for pt in pts:
        d = dim_h1(p, _torsion_character(p, pt))
        checked.append({"point": _point_str(pt), "order": point_order(pt), "dim": d})
        if d < need:
            return Finding("sum-rule", inputs, VIOLATED,
                           witness={"point": _point_str(pt), "order": point_order(pt), "dim": d,
                                    "required": need},
                           message=f"dim H^1 = {d} < {need} at an intersection point")
    return Finding("sum-rule", inputs, SATISFIED, witness={"points": checked, "required": need})


def check_pair_geometry(c1: ComponentDatum, c2: ComponentDatum) -> Finding:
    """Two positive-dimensional components meet in finitely many torsion points and
    their shadows coincide or meet only in isolated points."""
    inputs = {"components": sorted([c1.key(), c2.key()])}
    v1, v2 = c1.subtorus, c2.subtorus
    if v1.dim < 1 or v2.dim < 1:
        return Finding("pair-geometry", inputs, SATISFIED, message="not both positive-dimensional")
    if same_subtorus(v1, v2):
        return Finding("pair-geometry", inputs, INCONCLUSIVE, message="the same subtorus is listed twice")
    res = intersect(v1, v2)
    if res.dim > 0:
        return Finding("pair-geometry", inputs, VIOLATED,
                       witness={"intersection_dim": res.dim,
                                "piece": str(res.pieces[0])},
                       message="components meet in a positive-dimensional set")
    if subtorus_equal(v1, v2):
        return Finding("pair-geometry", inputs, SATISFIED,
                       witness={"intersection_points": len(res.points)}, message="equal shadows")
    sres = intersect(shadow(v1), shadow(v2))
    if sres.dim > 0:
        return Finding("pair-geometry", inputs, VIOLATED,
                       witness={"shadow_intersection_dim": sres.dim, "piece": str(sres.pieces[0])},
                       message="shadows differ but share a positive-dimensional subtorus")
    return Finding("pair-geometry", inputs, SATISFIED,
                   witness={"intersection_points": len(res.points),
                            "shadow_intersection_points": len(sres.points)})


def check_depth_and_dimension(p: Presentation, c: ComponentDatum) -> list[Finding]:
    v, k, d = c.subtorus, c.depth, c.dim
    if v.presentation != p:
        raise CharvarError("component does not live in this presentation's torus")
    base = {"component": c.key()}
    out = []
    g = generic_dim(p, v)
    if g < k:
        out.append(Finding("depth-claim", base, VIOLATED, {"generic_dim": g, "depth": k},
                           "generic dim H^1 on V is below the claimed depth"))
    else:
        out.append(Finding("depth-claim", base, SATISFIED, {"generic_dim": g, "depth": k}))
    if d < 1:
        return out
    through_one = contains(v, (0,) * v.n)
    if through_one:
        verdict = VIOLATED if k > d - 1 else SATISFIED
        out.append(Finding("depth-through-one", base, verdict, {"dim": d, "depth": k},
                           "a component through 1 has depth at most dim - 1" if verdict == VIOLATED else ""))
        return out
    verdict = VIOLATED if g < d else SATISFIED
    out.append(Finding("translated-depth", base, verdict, {"dim": d, "generic_dim": g},
                       "a translated component lies in the stratum of its own dimension"
                       if verdict == VIOLATED else ""))
    gs = generic_dim(p, shadow(v))
    if d > 2:
        verdict = VIOLATED if gs < 1 else SATISFIED
        out.append(Finding("shadow-in-first-stratum", base, verdict, {"dim": d, "shadow_generic_dim": gs},
                           "the shadow must lie in the first characteristic variety"
                           if verdict == VIOLATED else ""))
    elif d == 2:
        out.append(Finding("shadow-depth-two", base, INCONCLUSIVE,
                           {"generic_dim": g, "shadow_generic_dim": gs},
                           "advisory: whether the shadow is a component of the second stratum "
                           "needs maximality data"))
    elif gs >= 1:
        out.append(Finding("shadow-not-component", base, INCONCLUSIVE, {"shadow_generic_dim": gs},
                           "advisory: the shadow of a translated curve should not be a component "
                           "of the first stratum; maximality cannot be certified from dimensions"))
    else:
        out.append(Finding("shadow-not-component", base, SATISFIED, {"shadow_generic_dim": gs}))
    return out


def check_pullback(p: Presentation, m: OrbifoldMorphismDatum, xi_c: Character,
                   xi: Character) -> Finding:
    target = m.target.presentation
    name = m.name or str(m.target)
    inputs = {"morphism": name, "source_character": str(xi), "target_character": str(xi_c)}
    if len(m.images) != p.ngens:
        raise CharvarError(f"morphism gives {len(m.images)} images for {p.ngens} generators")
    if xi_c.presentation != target:
        raise CharvarError("orbifold character lives on a different presentation")
    for k, r in enumerate(target.relators):
        q, _ = xi_c.evaluate_word(r)
        if q:
            raise CharvarError(f"orbifold character violates target relator {k}")
    if not xi.is_torsion or not xi_c.is_torsion:
        raise CharvarError("pull-back checks use torsion characters")
    for i, w in enumerate(m.images):
        if any(g >= target.ngens for g, _ in w):
            raise CharvarError(f"image of generator {i} uses an unknown target generator")
    pulled = m.pull_back(xi_c)
    for i, (a, b) in enumerate(zip(pulled, xi.roots)):
        if Fraction(a) % 1 != Fraction(b) % 1:
            return Finding("pullback", inputs, VIOLATED,
                           {"generator": p.generators[i], "pulled_back": _q(a), "claimed": _q(b)},
                           "claimed character is not the pull-back of the orbifold character")
    for k, r in enumerate(p.relators):
        img = [lt for g, s in r for lt in (m.images[g] if s > 0 else
                                            tuple((h, -t) for h, t in reversed(m.images[g])))]
        q, _ = xi_c.evaluate_word(tuple(img))
        if q:
            return Finding("pullback", inputs, VIOLATED, {"relator": k, "value": _q(q)},
                           "image of a source relator is not killed by the orbifold character")
    d_src = dim_h1(p, xi)
    lab = label_of_character(m.target, xi_c)
    d_orb = orbifold_dim_h1(m.target, lab, xi_c.is_trivial())
    wit = {"dim_source": d_src, "dim_orbifold": d_orb}
    if d_src < d_orb:
        return Finding("pullback", inputs, VIOLATED, wit,
                       "pull-back would not be injective on twisted cohomology")
    wit["accounts_for_all"] = d_src == d_orb
    msg = "pull-back accounts for all of H^1" if d_src == d_orb else \
        "pull-back gives a proper subspace of H^1"
    return Finding("pullback", inputs, SATISFIED, wit, msg)


def full_report(p: Presentation, components: Sequence[ComponentDatum] = (),
                pullbacks: Sequence[PullbackClaim] = (), scan: tuple[int, int] | None = None,
                xi_distinct_pairs: Sequence[tuple[int, int]] = ()) -> ObstructionReport:
    """Run every check and collect findings in a canonical order.

    ``scan = (order, depth)`` additionally lists nontrivial torsion characters
    of that depth which lie on no positive-dimensional component and are not
    pull-backs in ``pullbacks``: candidates for isolated points of the second
    kind.
    """
    comps = list(components)
    findings: list[Finding] = []
    distinct = {tuple(sorted(ij)) for ij in xi_distinct_pairs}
    for c in comps:
        if c.subtorus.presentation != p:
            raise CharvarError("component does not live in this presentation's torus")
        findings.extend(check_depth_and_dimension(p, c))
    for i, j in combinations(range(len(comps)), 2):
        findings.append(check_sum_rule(p, comps[i], comps[j], xi_distinct=(i, j) in distinct))
        if comps[i].dim >= 1 and comps[j].dim >= 1:
            findings.append(check_pair_geometry(comps[i], comps[j]))
    for pb in pullbacks:
        findings.append(check_pullback(p, pb.morphism, pb.target_character, pb.source_character))
    findings.sort(key=Finding.sort_key)
    unexplained = []
    if scan is not None:
        order, depth = scan
        explained = {tuple(Fraction(x) % 1 for x in pb.source_character.roots) for pb in pullbacks}
        positive = [c.subtorus for c in comps if c.dim >= 1]
        for chi, d in scan_torsion(p, order, depth):
            pt = tuple(chi.roots)
            if pt in explained or any(contains(v, pt) for v in positive):
                continue
            unexplained.append({"point": _point_str(pt), "order": point_order(pt), "dim": d})
    return ObstructionReport(tuple(findings), tuple(unexplained))

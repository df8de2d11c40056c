"""Expected decompositions of V7 restricted to the standard subgroups, and
a report comparing them with what the MeatAxe finds."""

from __future__ import annotations

from dataclasses import dataclass

from .chevalley import build_rep
from .modules import DEFAULT_SEED, FactorLabel, FactorSignature, a1_name, restrict, signature
from .subgroups import SubgroupSpec, subgroup_generators


def _twist(lam: int, r: int, p: int, n: int) -> int:
    """lam twisted by the r-th Frobenius, reduced on GF(p^n) where Frobenius has order n."""
    r = r % n
    return lam * p ** r


def expected_signature(spec: SubgroupSpec) -> FactorSignature | None:
    """Factor multiset and socle layers predicted for V7 restricted to ``spec``.

    None when no prediction is tabulated for this subgroup and characteristic.
    """
    F = spec.field
    p, n = F.p, F.n
    name = spec.name
    A = lambda lam: a1_name(lam, p)  # noqa: E731
    ss = lambda fs: FactorSignature.build(fs, [fs])  # noqa: E731
    if name == "A2":
        return ss(["10", "01", "0"])
    if name == "A2short":
        return ss(["11"]) if p == 3 else None
    if name == "A1xA1short":
        if p == 2:
            return FactorSignature.build(["1⊗1~", "0⊗1^(2)~", "0"], [["1⊗1~", "0"], ["0⊗1^(2)~"]])
        return ss(["1⊗1~", "0⊗2~"])
    if name == "Lbar0":
        return ss(["1", "1", "0", "0", "0"])
    if name == "Xkl" and not spec.k and not spec.l:
        # the same subgroup as Lbar0, parametrised through t -> t^2
        one = A(_twist(1, 1, p, n))
        return ss([one, one, "0", "0", "0"])
    if name == "Ltilde0":
        if p == 2:
            return FactorSignature.build(["1", "1", "1^(2)", "0"], [["1", "1", "0"], ["1^(2)"]])
        return ss(["1", "1", "2"])
    if name == "Z1" and p == 2:
        return FactorSignature.build(["0"] * 3 + ["1^(2)"] * 2, [["0", "0"], ["1^(2)", "1^(2)"], ["0"]])
    if name == "Z2" and p == 2:
        return FactorSignature.build(["0"] * 3 + ["1^(2)"] * 2, [["0", "0", "1^(2)"], ["1^(2)", "0"]])
    if name == "IrredA1inA2" and p > 2:
        return ss(["2", "2", "0"])
    if name == "PrincipalA1" and p >= 7:
        return ss(["6"])
    if name == "TwistedDiag":
        r, s = spec.r % n, spec.s % n
        if r == s:
            sq = A(_twist(2, r, p, n))
            if p == 2:
                return FactorSignature.build(["0"] * 3 + [sq] * 2, [["0", "0"], [sq, sq], ["0"]])
            return ss([sq, sq, "0"])
        top = A(p ** r + p ** s)
        w2 = A(_twist(2, s, p, n))
        if p == 2:
            return FactorSignature.build([top, w2, "0"], [[top, "0"], [w2]])
        return ss([top, w2])
    return None


@dataclass
class RestrictionReport:
    spec: SubgroupSpec
    observed: FactorSignature
    labels: list[FactorLabel]
    expected: FactorSignature | None

    @property
    def verdict(self) -> str:
        if any(l.status != "ok" for l in self.labels):
            return "unlabelled"
        if self.expected is None:
            return "no-prediction"
        if self.observed.factors != self.expected.factors:
            return "factor-mismatch"
        if self.observed.socle != self.expected.socle:
            return "socle-mismatch"
        return "match"

    @property
    def ok(self) -> bool:
        return self.verdict == "match"

    def to_json(self) -> dict:
        F = self.spec.field
        return {
            "subgroup": self.spec.label(),
            "field": [F.p, F.n],
            "observed": self.observed.to_json(),
            "expected": self.expected.to_json() if self.expected else None,
            "factor_dims": [l.dim for l in self.labels],
            "label_status": [l.status for l in self.labels],
            "verdict": self.verdict,
            "notes": self.spec.flags,
        }


def restriction_report(spec: SubgroupSpec, seed: int = DEFAULT_SEED) -> RestrictionReport:
    gset = subgroup_generators(spec)
    M = restrict(gset, build_rep(spec.field))
    sig, labels = signature(M, gset, seed)
    return RestrictionReport(spec, sig, labels, expected_signature(spec))


# subgroups and fields making up the table check; p=2 and the Frobenius
# twists at p=3 need GF(p^2) so that twisted labels stay distinguishable
TABLE_ROWS: list[tuple[str, int, int, dict]] = [
    ("A2", 2, 2, {}), ("A2", 3, 1, {}), ("A2", 5, 1, {}),
    ("Lbar0", 2, 2, {}), ("Lbar0", 3, 1, {}), ("Lbar0", 5, 1, {}),
    ("Ltilde0", 2, 2, {}), ("Ltilde0", 3, 1, {}), ("Ltilde0", 5, 1, {}),
    ("A2short", 3, 1, {}),
    ("A1xA1short", 2, 2, {}), ("A1xA1short", 3, 1, {}),
    ("TwistedDiag", 2, 2, {"r": 0, "s": 0}), ("TwistedDiag", 2, 2, {"r": 1, "s": 0}),
    ("TwistedDiag", 3, 2, {"r": 0, "s": 0}), ("TwistedDiag", 3, 2, {"r": 1, "s": 0}),
    ("Z1", 2, 2, {}), ("Z2", 2, 2, {}),
    ("IrredA1inA2", 3, 1, {}), ("IrredA1inA2", 5, 1, {}),
    ("PrincipalA1", 7, 1, {}),
]

# pairs of rows describing conjugate subgroups, hence equal signatures
SAME_CLASS = {
    frozenset({"TwistedDiag(0,0)@2", "Z1@2"}),  # the same subgroup by definition
    frozenset({"TwistedDiag(0,0)@3", "IrredA1inA2@3"}),
}


def table_specs():
    from .gf import field_make
    for name, p, n, kw in TABLE_ROWS:
        yield SubgroupSpec(name, field_make(p, n), **kw)


def row_key(spec: SubgroupSpec) -> str:
    return f"{spec.label()}@{spec.field.p}"


def distinctness_failures(reports: list[RestrictionReport]) -> list[str]:
    """Pairs at the same p whose signatures agree without being a known identification."""
    bad = []
    for i, a in enumerate(reports):
        for b in reports[i + 1:]:
            if a.spec.field.p != b.spec.field.p:
                continue
            same = a.observed == b.observed
            expected_same = frozenset({row_key(a.spec), row_key(b.spec)}) in SAME_CLASS
            if same != expected_same:
                bad.append(f"{row_key(a.spec)} vs {row_key(b.spec)}: "
                           f"{'equal' if same else 'different'} signatures")
    return bad

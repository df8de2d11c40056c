"""Command-line front end.

    g2chevalley roots --parabolic long
    g2chevalley subgroup --name Xkl --k 1 --l 0 --p 2 --n 2
    g2chevalley restrict --subgroup Z2 --p 2 --n 2 --json
    g2chevalley h1 --q0 9 --module 1x1t3
    g2chevalley conjsearch --a Xkl:1,0 --b Z1 --ambient G2 --p 2
    g2chevalley verify --suite table --p 2

Field elements on the command line are integer codes: the base-p digits of
the code are the polynomial coefficients, lowest first (GF(4): 2 is g).
"""

from __future__ import annotations

import argparse
import json
import sys

from .chevalley import GroupWord, build_rep
from .cohomology import h1_dim
from .finitegroup import GroupTooLarge, conjugacy_search, enumerate_group
from .gf import FieldError, field_make
from .modules import DEFAULT_SEED
from .restriction import restriction_report
from .roots import abs_filtration, parabolic_from_name, root_table
from .subgroups import NAMES, SubgroupError, SubgroupSpec, subgroup_generators
from .suites import SUITES, run_suite


def parse_subgroup(text: str, F, k=None, l=None, r=0, s=0) -> SubgroupSpec:
    """'Z1', 'Xkl:1,0' (codes of k and l) or 'TwistedDiag:1,0' (r and s)."""
    name, _, args = text.partition(":")
    vals = [int(v) for v in args.split(",")] if args else []
    if name == "Xkl":
        if vals:
            k, l = vals
        return SubgroupSpec("Xkl", F, k=F.from_code(k or 0), l=F.from_code(l or 0))
    if name == "TwistedDiag" and vals:
        r, s = vals
    return SubgroupSpec(name, F, r=r, s=s)


def _field(args):
    return field_make(args.p, args.n)


def cmd_roots(args):
    J = parabolic_from_name(args.parabolic)
    return {"roots": root_table(J), "filtration": _filtration(J)}


def _filtration(J):
    return [{"level": m.level, "dim": m.dim, "highweight": m.highweight, "shapes": [list(s) for s in m.shapes],
             "roots": [list(r) for r in m.roots]} for m in abs_filtration(J)]


def cmd_filtration(args):
    return {"parabolic": args.parabolic, "levels": _filtration(parabolic_from_name(args.parabolic))}


def cmd_element(args):
    F = _field(args)
    with open(args.word) as fh:
        data = json.load(fh)
    w = GroupWord.from_json(data, F)
    g = build_rep(F).eval_word(w)
    return {"word": w.to_json(), "matrix": g.to_json()}


def cmd_subgroup(args):
    F = _field(args)
    spec = parse_subgroup(args.name, F, args.k, args.l, args.r, args.s)
    out = subgroup_generators(spec).to_json(build_rep(F))
    out["flags"] = spec.flags
    return out


def cmd_restrict(args):
    F = _field(args)
    spec = parse_subgroup(args.subgroup, F, args.k, args.l, args.r, args.s)
    rr = restriction_report(spec, args.seed)
    out = rr.to_json()
    out["factors"] = out["observed"]["factors"]
    out["socle"] = out["observed"]["socle"]
    out["seed"] = args.seed
    return out


def cmd_h1(args):
    return h1_dim(args.q0, args.module).to_json()


def cmd_enumerate(args):
    F = _field(args)
    spec = parse_subgroup(args.subgroup, F)
    order = enumerate_group(subgroup_generators(spec).matrices(build_rep(F)), cap=args.cap).order
    return {"subgroup": spec.label(), "field": [F.p, F.n], "order": order}


def cmd_conjsearch(args):
    F = _field(args)
    rep = build_rep(F)
    gens = {key: subgroup_generators(parse_subgroup(getattr(args, key), F)).matrices(rep)
            for key in ("a", "b", "ambient")}
    ambient = enumerate_group(gens["ambient"], cap=args.cap)
    res = conjugacy_search(gens["a"], gens["b"], ambient)
    out = {"a": args.a, "b": args.b, "ambient_order": ambient.order, "orders": list(res.orders),
           "found": res.found}
    if res.found:
        out["word"] = res.word.to_json() if res.word is not None else None
        out["word_text"] = repr(res.word) if res.word is not None else None
        out["matrix"] = res.element.to_json()
    return out


def cmd_verify(args):
    n = args.n if args.n_given else (1 if args.p_given else None)
    params = {"p": args.p if args.p_given else None, "n": n,
              "seed": args.seed, "k": args.k, "l": args.l}
    report = run_suite(args.suite, **params)
    return report


COMMANDS = {
    "roots": cmd_roots, "filtration": cmd_filtration, "element": cmd_element, "subgroup": cmd_subgroup,
    "restrict": cmd_restrict, "h1": cmd_h1, "enumerate": cmd_enumerate, "conjsearch": cmd_conjsearch,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=None, help="characteristic (default 2)")
    common.add_argument("--n", type=int, default=None, help="degree of the field over GF(p) (default 1)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="MeatAxe / sampling seed")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--out", metavar="FILE", help="also write the JSON result to FILE")

    parser = argparse.ArgumentParser(prog="g2chevalley", description="Exact computations in G2 over small finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    for name in ("roots", "filtration"):
        add(name, f"{name} of a maximal parabolic").add_argument(
            "--parabolic", choices=["long", "short"], default="long")
    add("element", "evaluate a GroupWord JSON file").add_argument("--word", required=True)
    for name, flag in (("subgroup", "--name"), ("restrict", "--subgroup")):
        sp = add(name, "generator set" if name == "subgroup" else "restriction of V7 and table verdict")
        sp.add_argument(flag, required=True, help=f"one of {', '.join(NAMES)}; Xkl:K,L or TwistedDiag:R,S")
        sp.add_argument("--k", type=int, default=None)
        sp.add_argument("--l", type=int, default=None)
        sp.add_argument("--r", type=int, default=0)
        sp.add_argument("--s", type=int, default=0)
    sp = add("h1", "first cohomology of SL2(q0)")
    sp.add_argument("--q0", type=int, required=True)
    sp.add_argument("--module", default="1", help="e.g. 1, 1t2, 1x1t3, st, 0")
    sp = add("enumerate", "order of a subgroup by BFS")
    sp.add_argument("--subgroup", required=True)
    sp.add_argument("--cap", type=int, default=200_000)
    sp = add("conjsearch", "conjugacy of two subgroups inside an enumerated ambient group")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--ambient", default="G2")
    sp.add_argument("--cap", type=int, default=200_000)
    sp = add("verify", "run a verification suite")
    sp.add_argument("--suite", required=True, choices=list(SUITES) + ["all"])
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--l", type=int, default=None)
    return parser


def _text(command: str, result) -> str:
    if command == "verify":
        lines = result.lines()
        lines.append(f"suite {result.suite}: {'PASS' if result.passed else 'FAIL'} "
                     f"({len(result.checks)} checks, {result.seconds:.2f} s)")
        return "\n".join(lines)
    if command == "enumerate":
        return str(result["order"])
    if command == "conjsearch":
        if not result["found"]:
            return "none"
        return f"conjugator: {result.get('word_text', '?')}"
    if command == "restrict":
        return (f"{result['subgroup']} over GF({result['field'][0]}^{result['field'][1]}): "
                f"factors {result['factors']}, socle {result['socle']}, verdict {result['verdict']}")
    return json.dumps(result, indent=1, ensure_ascii=False)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.p_given, args.n_given = args.p is not None, args.n is not None
    args.p = args.p if args.p is not None else 2
    args.n = args.n if args.n is not None else 1
    try:
        result = COMMANDS[args.command](args)
    except (FieldError, SubgroupError, GroupTooLarge, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = result.to_json() if hasattr(result, "to_json") else result
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=1, ensure_ascii=False)
    if args.json:
        print(json.dumps(payload, indent=1, ensure_ascii=False))
    else:
        print(_text(args.command, result))
    if args.command == "verify":
        return 0 if result.passed else 1
    if args.command == "restrict":
        return 0 if result["verdict"] in ("match", "no-prediction") else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

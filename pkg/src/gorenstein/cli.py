"""Command-line interface: ``gorenstein <command> [options]``.

Every command builds a report dict; ``--json`` prints it as JSON, otherwise
it is printed as ``key: value`` lines.  Reports depend only on the input and
the seed (timings are added only with ``--timing``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import artinian, binaryforms, gordannoether, hessians, lefschetz, perazzo
from .errors import GorensteinError, InvalidInput
from .exactmath import ExactMatrix, GaussianRational, scalar_to_string
from .polyring import PERAZZO_VARIABLES, Form, parse_form

SEED_ENV = "LEFSCHETZ_SEED"


def _jsonable(x):
    if isinstance(x, GaussianRational):
        return [scalar_to_string(x.re), scalar_to_string(x.im)]
    if isinstance(x, Fraction):
        return scalar_to_string(x)
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, ExactMatrix):
        return x.to_strings()
    if isinstance(x, Form):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "value") and isinstance(getattr(x, "value"), str):
        return x.value
    return x


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InvalidInput(f"{SEED_ENV}={env!r} is not an integer") from None


def _variables(text: str) -> tuple[str, ...]:
    names = tuple(v.strip() for v in text.split(",") if v.strip())
    if not names:
        raise InvalidInput("empty variable list")
    return names


def _forms(args, variables) -> list[Form]:
    if args.form is not None and args.form_file is not None:
        raise InvalidInput("give either --form or --form-file, not both")
    if args.form is not None:
        return [parse_form(args.form, variables)]
    if args.form_file is not None:
        with open(args.form_file, encoding="utf-8") as fh:
            lines = [line.strip() for line in fh]
        return [parse_form(line, variables) for line in lines if line and not line.startswith("#")]
    raise InvalidInput("this command needs --form or --form-file")


def _verdict(v) -> dict:
    out = {"status": v.status.value, "certificate": v.certificate}
    if v.reason:
        out["reason"] = v.reason
    if v.witness is not None:
        out["witness"] = str(v.witness)
    if v.ranks:
        out["ranks"] = v.ranks
    return out


def _hessian_verdict(v) -> dict:
    out = {"status": v.status.value, "trials": v.trials}
    if v.witness is not None:
        out["witness"] = list(v.witness)
        out["value"] = v.value
    return out


def _decomposition(d) -> dict:
    terms = []
    for t in d.terms:
        terms.append({"coefficient": t.coefficient, "linear": list(t.linear)})
    return {"exactness": d.exactness, "rank": len(d), "kernel_degree": d.kernel_degree, "terms": terms}


# -- command implementations: each returns a report dict per input form -----------------


def cmd_hilbert(f, args, seed):
    return {"hvector": list(artinian.hilbert_vector(f))}


def cmd_ann(f, args, seed):
    view = artinian.algebra(f)
    degrees = [args.k] if args.k is not None else range(1, f.degree + 1)
    return {"hvector": list(view.hilbert_vector()), "ann": {k: [str(q) for q in view.ann_basis(k)] for k in degrees}}


def cmd_hessian(f, args, seed):
    spec = hessians.higher_hessian(f, args.k)
    verdict = hessians.vanishing_verdict(spec.entries, seed)
    return {
        "k": args.k,
        "size": spec.size,
        "basis": [str(Form.monomial(artinian.algebra(f).operator_variables, b)) for b in spec.basis],
        "hessian": _hessian_verdict(verdict),
        "seed": seed,
    }


def cmd_wlp(f, args, seed):
    v = lefschetz.wlp_verdict(f, trials=args.trials, seed=seed)
    return {"hvector": list(artinian.hilbert_vector(f)), "verdicts": {"wlp": _verdict(v)}, "seed": seed, "trials": args.trials}


def cmd_slp(f, args, seed):
    v = lefschetz.slp_verdict(f, seed=seed)
    return {"hvector": list(artinian.hilbert_vector(f)), "verdicts": {"slp": _verdict(v)}, "seed": seed}


def cmd_waring(f, args, seed):
    h = binaryforms.BinaryForm.from_form(f)
    out = {"normalized": list(h.coeffs), "border_rank": binaryforms.border_rank(h)}
    try:
        out["secant_position"] = binaryforms.classify_secant_position(h).value
    except GorensteinError as exc:
        out["secant_position"] = f"undefined ({exc})"
    out["decomposition"] = _decomposition(binaryforms.sylvester_decompose(h))
    return out


def cmd_catalecticant(f, args, seed):
    h = binaryforms.BinaryForm.from_form(f)
    k = h.degree // 2 if args.k is None else args.k
    m = binaryforms.cat_matrix(h, k)
    return {"k": k, "matrices": {"cat": m}, "rank": m.rank()}


def _perazzo_summary(pf: perazzo.PerazzoForm) -> dict:
    cls = perazzo.classify_extremal(pf)
    return {"form": str(pf.assembled), "hvector": list(cls.hvector), "class": str(cls)}


def cmd_perazzo(f, args, seed):
    action = args.perazzo_action
    if action == "build":
        b = _variables(args.bvars)
        parts = [binaryforms.BinaryForm.from_form(parse_form(t, b)) for t in (args.p0, args.p1, args.p2)]
        d = parts[0].degree + 1
        g = binaryforms.BinaryForm.from_form(parse_form(args.g, b), d) if args.g else None
        return _perazzo_summary(perazzo.build_perazzo(*parts, g))
    if action == "maximal":
        return _perazzo_summary(perazzo.maximal_example(args.d))
    if action == "minimal":
        params = [Fraction(p) for p in args.params.split(",")]
        return _perazzo_summary(perazzo.minimal_family(args.family, args.d, params))
    pf = perazzo.PerazzoForm.from_form(f)
    if action == "classify":
        out = _perazzo_summary(pf)
        out["cone"] = perazzo.is_cone(pf.assembled)
        return out
    blocks = perazzo.block_matrices(pf, args.k)
    return {
        "k": args.k,
        "matrices": {"M": blocks.M, "N": blocks.N, "Nprime": blocks.Nprime},
        "ranks": {"M": blocks.M.rank(), "Nprime": blocks.Nprime.rank()},
    }


def cmd_gn(f, args, seed):
    action = args.gn_action
    rel = gordannoether.find_min_relation(f, args.max_degree)
    out = {"relation": str(rel.g), "relation_degree": rel.degree, "search_bound": args.max_degree}
    if action == "relation":
        return out
    svs = gordannoether.build_svs(f, rel)
    out["svs"] = [str(p) for p in svs]
    if action == "svs":
        return out
    if action == "identity":
        out["gn_identity"] = gordannoether.verify_gn_identity(f, svs)
        return out
    red = gordannoether.cremona_reduce(f, svs, args.pivot)
    out.update(
        {
            "pivot": args.pivot,
            "reduced": str(red.reduced),
            "forward": [str(r) for r in red.forward],
            "backward": [str(r) for r in red.backward],
        }
    )
    return out


def cmd_sequence(args) -> dict:
    action = args.sequence_action
    if action == "expand":
        terms = artinian.sth_expansion(args.m, args.s)
        return {"m": args.m, "s": args.s, "expansion": [list(t) for t in terms], "bracket": artinian.m_bracket(args.m, args.s)}
    seq = [int(x) for x in args.seq.split(",")]
    if action == "o-check":
        return {"sequence": seq, "o_sequence": artinian.is_O_sequence(seq)}
    return {"sequence": seq, "si_sequence": artinian.is_SI_sequence(seq)}


FORM_COMMANDS = {
    "hilbert": cmd_hilbert,
    "ann": cmd_ann,
    "hessian": cmd_hessian,
    "wlp": cmd_wlp,
    "slp": cmd_slp,
    "waring": cmd_waring,
    "catalecticant": cmd_catalecticant,
    "perazzo": cmd_perazzo,
    "gn": cmd_gn,
}
BINARY_COMMANDS = {"waring", "catalecticant"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", default=",".join(PERAZZO_VARIABLES), help="comma-separated variables of the form")
    common.add_argument("--bvars", default="u,v", help="variables of a binary form")
    common.add_argument("--form", help="the form, e.g. 'u^2*x0 + u*v*x1 + v^2*x2'")
    common.add_argument("--form-file", help="file with one form per line (batch mode)")
    common.add_argument("--seed", type=int, default=None, help=f"random seed (default ${SEED_ENV} or 0)")
    common.add_argument("--trials", type=int, default=lefschetz.TRIALS, help="random Lefschetz elements to try")
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--timing", action="store_true", help="add the elapsed time to the report")

    parser = argparse.ArgumentParser(prog="gorenstein", description="Artinian Gorenstein algebras of forms and Perazzo 3-folds.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("hilbert", parents=[common], help="Hilbert vector of S/Ann(f)")
    p = sub.add_parser("ann", parents=[common], help="graded pieces of Ann(f)")
    p.add_argument("--k", type=int, default=None)
    p = sub.add_parser("hessian", parents=[common], help="k-th Hessian vanishing verdict")
    p.add_argument("--k", type=int, default=1)
    sub.add_parser("wlp", parents=[common], help="weak Lefschetz verdict")
    sub.add_parser("slp", parents=[common], help="strong Lefschetz verdict")
    sub.add_parser("waring", parents=[common], help="border rank, secant position and Waring decomposition of a binary form")
    p = sub.add_parser("catalecticant", parents=[common], help="catalecticant matrix of a binary form")
    p.add_argument("--k", type=int, default=None)

    p = sub.add_parser("perazzo", help="Perazzo 3-folds")
    psub = p.add_subparsers(dest="perazzo_action", required=True)
    q = psub.add_parser("build", parents=[common])
    for name in ("p0", "p1", "p2"):
        q.add_argument(f"--{name}", required=True)
    q.add_argument("--g", default=None)
    q = psub.add_parser("blocks", parents=[common])
    q.add_argument("--k", type=int, required=True)
    psub.add_parser("classify", parents=[common])
    q = psub.add_parser("maximal", parents=[common])
    q.add_argument("--d", type=int, required=True)
    q = psub.add_parser("minimal", parents=[common])
    q.add_argument("--family", choices=["I", "II", "III"], required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--params", default="1,1,0,0,0", help="lambda,mu,a,b,c")

    p = sub.add_parser("gn", help="Gordan-Noether: relations, self-vanishing systems, Cremona reduction")
    gsub = p.add_subparsers(dest="gn_action", required=True)
    for name in ("relation", "svs", "identity", "cremona"):
        q = gsub.add_parser(name, parents=[common])
        q.add_argument("--max-degree", type=int, default=gordannoether.DEFAULT_MAX_DEGREE)
        if name == "cremona":
            q.add_argument("--pivot", type=int, required=True)

    p = sub.add_parser("sequence", help="O-sequences, SI-sequences and binomial expansions")
    ssub = p.add_subparsers(dest="sequence_action", required=True)
    for name in ("o-check", "si-check"):
        q = ssub.add_parser(name, parents=[common])
        q.add_argument("--seq", required=True, help="comma-separated integers")
    q = ssub.add_parser("expand", parents=[common])
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--s", type=int, required=True)
    return parser


def _needs_form(args) -> bool:
    if args.command == "sequence":
        return False
    if args.command == "perazzo" and args.perazzo_action in ("build", "maximal", "minimal"):
        return False
    return True


def _reports(args) -> list[dict]:
    seed = _seed(args)
    if not _needs_form(args):
        out = cmd_sequence(args) if args.command == "sequence" else cmd_perazzo(None, args, seed)
        return [{"command": args.command, **out}]
    variables = _variables(args.bvars if args.command in BINARY_COMMANDS else args.vars)
    reports = []
    for f in _forms(args, variables):
        start = time.perf_counter()
        out = FORM_COMMANDS[args.command](f, args, seed)
        report = {"command": args.command, "form": str(f), **out}
        if args.timing:
            report["seconds"] = round(time.perf_counter() - start, 6)
        reports.append(report)
    return reports


def _text(report: dict, indent: str = "") -> list[str]:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_text(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{indent}{key}:")
            lines.extend(f"{indent}  {' '.join(str(x) for x in row)}" for row in value)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.append(f"{indent}  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: ({', '.join(str(x) for x in value)})")
        else:
            lines.append(f"{indent}{key}: {value}")
    return lines


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        reports = [_jsonable(r) for r in _reports(args)]
    except (GorensteinError, OSError, ZeroDivisionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 2
    if args.json:
        payload = reports[0] if len(reports) == 1 else reports
        print(json.dumps(payload, indent=2), file=stdout)
    else:
        print("\n\n".join("\n".join(_text(r)) for r in reports), file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end.

Exit status: 0 all checks pass, 1 verification mismatch, 2 usage/parse error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .algebra import CoeffExpr, Scalar, as_coeff, sym
from .ecc import CODES, ErrorSpec, global_factor, trace_pipeline
from .gates import apply_circuit
from .parser import CircuitSyntaxError, parse_circuit
from .state import State, ket_state, phase_equivalent, superpose
from .verify import expected_factor, verify_all

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

_RAT = r"\d+(?:/\d+)?"
_IMAG = re.compile(rf"^(?P<im>[+-]?(?:{_RAT})?i)$")
_LITERAL = re.compile(rf"^(?P<re>[+-]?{_RAT})?(?P<im>[+-](?:{_RAT})?i)?$")
_SYMBOL = re.compile(r"^[^\W\d]\w*$")


class UsageError(Exception):
    pass


def parse_coeff(text: str) -> CoeffExpr:
    """A complex literal such as ``1``, ``-1/2``, ``1+2i``, ``-i``, or a symbol name."""
    t = text.strip().replace(" ", "")
    m = _IMAG.match(t) or _LITERAL.match(t)
    if t and m and (m.groupdict().get("re") or m.group("im")):
        re_part = Fraction(m.groupdict().get("re") or 0)
        im = m.group("im")
        if im is None:
            im_part = Fraction(0)
        else:
            digits = im[:-1]
            if digits in ("", "+"):
                im_part = Fraction(1)
            elif digits == "-":
                im_part = Fraction(-1)
            else:
                im_part = Fraction(digits)
        return as_coeff(Scalar(re_part, im_part))
    if _SYMBOL.match(t):
        return sym(t)
    raise UsageError(f"cannot parse coefficient {text!r}")


def _error_spec(args, width: int) -> ErrorSpec | None:
    if args.error_pos is None:
        return None
    if not 1 <= args.error_pos <= width:
        raise UsageError(f"--error-pos must be within 1..{width}")
    if args.coeffs in (None, "symbolic"):
        return ErrorSpec.symbolic(args.error_pos, args.y)
    items = args.coeffs.split(",")
    if len(items) != 4:
        raise UsageError("--coeffs needs four comma-separated values cI,cX,cZ,cY")
    return ErrorSpec(args.error_pos, tuple(parse_coeff(x) for x in items), args.y)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _state_diff(got: State, want: State) -> list[str]:
    lines = []
    for ket in sorted(got.support() | want.support()):
        g, w = got.coeff(ket), want.coeff(ket)
        if g != w:
            k = "".join(map(str, ket))
            lines.append(f"  e[{k}]: got {g}, expected {w}")
    return lines


def cmd_run_circuit(args) -> int:
    with open(args.path, encoding="utf-8") as fh:
        text = fh.read()
    circuit = parse_circuit(text)
    n = args.qubits or max(circuit.width, 1)
    if circuit.width > n:
        raise UsageError(f"circuit uses qubit {circuit.width} but --qubits is {n}")
    if args.init == "psi":
        psi = superpose([(sym("α"), ket_state((0,) * n)),
                         (sym("β"), ket_state((1,) + (0,) * (n - 1)))])
    else:
        init = args.init or "0" * n
        if len(init) != n or set(init) - {"0", "1"}:
            raise UsageError(f"--init must be 'psi' or a {n}-bit string")
        psi = ket_state(init)
    out = apply_circuit(psi, circuit)
    if args.format == "json":
        print(_dump({"input": psi.to_json(), "output": out.to_json(), "gates": len(circuit)}))
    else:
        if args.verbose:
            print(f"input:  {psi}")
        print(out)
    return EXIT_OK


def cmd_pipeline(args) -> int:
    pipe = CODES[args.code]
    error = _error_spec(args, pipe.width)
    alpha = parse_coeff(args.alpha) if args.alpha else None
    beta = parse_coeff(args.beta) if args.beta else None
    stages = trace_pipeline(alpha, beta, pipe, error, strict=args.strict)
    psi0, psi5 = stages["ψ0"], stages["ψ5"]
    lam = global_factor(psi5, psi0)
    corrected = phase_equivalent(psi5, psi0)
    if args.format == "json":
        report = {
            "code": pipe.name,
            "error_pos": args.error_pos,
            "y": args.y,
            "output": psi5.to_json(),
            "factor": None if lam is None else lam.to_text(),
            "phase_equivalent": corrected,
        }
        if args.verbose:
            report["stages"] = {k: v.to_json() for k, v in stages.items()}
        print(_dump(report))
    else:
        shown = stages.items() if args.verbose else [("ψ5", psi5)]
        for name, st in shown:
            print(f"{name} = {st}")
        if lam is not None:
            print(f"ψ5 = ({lam})·({psi0})")
        print(f"phase_equivalent to ψ0: {'yes' if corrected else 'no'}")
    return EXIT_OK


def paper_factor(position: int) -> CoeffExpr:
    """``a_i + b_i + c_i - i·d_i``, the reference closed form for the published Shor example."""
    a, b, c, d = (sym(f"{x}{position}") for x in "abcd")
    return a + b + c + d * Scalar(0, -1)


def cmd_paper_repro(args) -> int:
    if not 1 <= args.error_pos <= 9:
        raise UsageError("--error-pos must be within 1..9")
    stages = trace_pipeline(code="shor9", error=ErrorSpec.symbolic(args.error_pos, args.y))
    psi0, psi5 = stages["ψ0"], stages["ψ5"]
    expected_lam = expected_factor(args.error_pos, args.y)
    checks = [("oracle", expected_lam)]
    if args.y == "paper":
        checks.append(("closed form", paper_factor(args.error_pos)))
    failures = []
    for label, lam in checks:
        want = psi0 * lam
        if psi5 != want:
            failures.append((label, lam, _state_diff(psi5, want)))
    lam = global_factor(psi5, psi0)
    if args.format == "json":
        print(_dump({
            "error_pos": args.error_pos,
            "y": args.y,
            "psi5": psi5.to_json(),
            "factor": None if lam is None else lam.to_text(),
            "expected_factor": expected_lam.to_text(),
            "match": not failures,
            **({"stages": {k: v.to_json() for k, v in stages.items()}} if args.verbose else {}),
        }))
    else:
        if args.verbose:
            for name, st in stages.items():
                if name != "ψ5":
                    print(f"{name} = {st}")
        print(f"ψ5 = {psi5}")
        if lam is not None:
            print(f"ψ5 = ({lam})·({psi0})")
        for label, want_lam in checks:
            print(f"expected ({label}): ({want_lam})·({psi0})")
        print("match: yes" if not failures else "match: NO")
    for label, want_lam, diff in failures:
        print(f"mismatch against {label} λ = {want_lam}:", file=sys.stderr)
        print("\n".join(diff), file=sys.stderr)
    return EXIT_OK if not failures else EXIT_MISMATCH


def cmd_verify(args) -> int:
    report = verify_all(seed=args.seed, cases=args.cases)
    print(_dump(report))
    return EXIT_OK if report["pass"] else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--verbose", "-v", action="store_true",
                        help="print every intermediate state")

    error = argparse.ArgumentParser(add_help=False)
    error.add_argument("--error-pos", type=int, default=None)
    error.add_argument("--coeffs", default="symbolic",
                       help="'symbolic' or four values cI,cX,cZ,cY (literals like 1+2i, or symbol names)")

    p = argparse.ArgumentParser(prog="symqec", description="Exact symbolic quantum error correction.")
    sub = p.add_subparsers(dest="command", required=True)

    rc = sub.add_parser("run-circuit", parents=[common], help="apply a circuit file to a basis state")
    rc.add_argument("path")
    rc.add_argument("--qubits", type=int, default=None)
    rc.add_argument("--init", default=None, help="bit string, or 'psi' for α·e[0…]+β·e[1,0…]")
    rc.set_defaults(func=cmd_run_circuit)

    pl = sub.add_parser("pipeline", parents=[common, error], help="encode, error, decode, discard")
    pl.add_argument("--code", choices=sorted(CODES), default="shor9")
    pl.add_argument("--y", choices=("standard", "paper"), default="standard")
    pl.add_argument("--alpha", default=None)
    pl.add_argument("--beta", default=None)
    pl.add_argument("--strict", action="store_true", help="reject entangled ancillas at the discard step")
    pl.set_defaults(func=cmd_pipeline)

    pr = sub.add_parser("paper-repro", parents=[common], help="rerun the published Shor-code example")
    pr.add_argument("--error-pos", type=int, default=8)
    pr.add_argument("--y", choices=("standard", "paper"), default="paper")
    pr.set_defaults(func=cmd_paper_repro)

    vf = sub.add_parser("verify", help="run every verification suite, print a JSON report")
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--cases", type=int, default=100)
    vf.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CircuitSyntaxError as exc:
        print(f"{getattr(args, 'path', '<circuit>')}:{exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, OSError) as exc:
        print(f"symqec: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit status: 0 on success, 1 when a mathematical check fails, 2 on usage,
parse or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import List, Optional

from .algebra.expansion import Expansion, chain_expansion, phi_expansion
from .config import read_config
from .errors import KeyPolyError
from .values import format_value

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="keypolys", description="Inductive valuations via key polynomials.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="value of a polynomial under a chain")
    p.add_argument("--chain", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--step", type=int, help="evaluate the truncation at this step (default: last)")

    p = sub.add_parser("expand", help="expansion in the chain's pivots")
    p.add_argument("--chain", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--step", type=int, help="pivot to expand in (default: last)")
    p.add_argument("--nested", action="store_true", help="full nested expansion in all pivots up to --step")
    p.add_argument("--verify", action="store_true", help="re-parse the output and check it sums back")

    p = sub.add_parser("newton", help="Newton polygon over the coefficient valuation")
    p.add_argument("--chain", required=True, help="config supplying the coefficient field and valuation")
    p.add_argument("--poly", required=True)

    p = sub.add_parser("validate-chain", help="check every chain axiom")
    p.add_argument("file")

    p = sub.add_parser("example5", help="the characteristic-p limit key polynomial example")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--depth", type=_positive, required=True)
    p.add_argument("--csv", help="also write the table to this file")
    p.add_argument("--extended", action="store_true", help="allow depth > 2 (slow)")

    p = sub.add_parser("check", help="sampled property checks")
    p.add_argument("kind", choices=["prop36", "degree-rule", "delta", "same-augment"])
    p.add_argument("--chain", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=_positive, default=200)
    p.add_argument("--poly", help="delta: check this h instead of random ones")
    p.add_argument("--step", type=int, help="same-augment: inner valuation (default: last step)")
    p.add_argument("--phi1")
    p.add_argument("--phi2")
    p.add_argument("--gamma")
    return ap


# ----------------------------------------------------------------------------
# commands


def _step_valuation(chain, step):
    if step is None:
        return chain.full
    return chain.valuation(step)


def cmd_eval(args, out):
    cfg = read_config(args.chain)
    chain = cfg.build()
    f = cfg.poly(args.poly)
    print(format_value(_step_valuation(chain, args.step)(f)), file=out)
    return EXIT_OK


def _leaves(e, idx=()):
    if isinstance(e, Expansion):
        for j, c in enumerate(e.coefficients):
            yield from _leaves(c, (j,) + idx)
    elif e:
        yield idx, e


def cmd_expand(args, out):
    cfg = read_config(args.chain)
    chain = cfg.build()
    step = chain.stop if args.step is None else args.step
    pivots = [chain.pivot(i) for i in range(chain.start, step + 1)]
    f = cfg.poly(args.poly)
    lines = []
    for i, q in zip(range(chain.start, step + 1), pivots):
        if args.nested or i == step:
            lines.append(f"pivot,{i},{q}")
    if args.nested:
        for idx, leaf in _leaves(chain_expansion(f, pivots)):
            # idx lists exponents from the first pivot to the last
            lines.append("term," + ",".join(str(j) for j in idx) + f",{leaf}")
    else:
        for j, c in enumerate(phi_expansion(f, pivots[-1]).coefficients):
            if c:
                lines.append(f"coeff,{j},{c}")
    for line in lines:
        print(line, file=out)
    if args.verify:
        ok = _resum(cfg, lines) == f
        print(f"verify,{'ok' if ok else 'FAIL'}", file=out)
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def _resum(cfg, lines):
    """Rebuild the polynomial from ``expand`` output text alone."""
    piv = {}
    total = cfg.ring.zero
    for line in lines:
        kind, rest = line.split(",", 1)
        if kind == "pivot":
            i, text = rest.split(",", 1)
            piv[int(i)] = cfg.poly(text)
    order = sorted(piv)
    for line in lines:
        kind, rest = line.split(",", 1)
        if kind == "coeff":
            j, text = rest.split(",", 1)
            total = total + cfg.poly(text) * piv[order[-1]] ** int(j)
        elif kind == "term":
            parts = rest.split(",", len(order))
            term = cfg.poly(parts[-1])
            for i, j in zip(order, parts[:-1]):
                term = term * piv[i] ** int(j)
            total = total + term
    return total


def cmd_newton(args, out):
    from .initial_forms import newton_polygon

    cfg = read_config(args.chain)
    f = cfg.poly(args.poly)
    if not f:
        raise KeyPolyError("the zero polynomial has no Newton polygon")
    for line in newton_polygon(cfg.coeff_val, f).csv_lines():
        print(line, file=out)
    return EXIT_OK


def cmd_validate(args, out):
    from .keycheck import validate_chain

    cfg = read_config(args.file)
    rep = validate_chain(cfg.coeff_val, cfg.ring, cfg.steps, 0, cfg.continued)
    for line in rep.lines():
        print(line, file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def example5_rows(p: int, depth: int):
    from . import tower5

    rows = []
    chain = tower5.gen_Qx_chain(p, depth)
    for i in range(1, depth + 1):
        beta = chain.gamma(i)
        mu = chain.valuation(i)(tower5.f_poly(p))
        ident = tower5.check_identity(p, i)
        irr = all(r.ok for k in (2 * i, 2 * i + 1) for r in tower5.irreducibility_rows(p, k))
        ok = beta == tower5.beta_x(p, i) and mu == tower5.f_value(p, i)
        rows.append((i, beta, mu, ident, irr, ok))
    return rows


def cmd_example5(args, out):
    from . import tower5

    tower5.TowerParams(args.p, args.depth)
    if args.depth > 2 and not args.extended:
        raise KeyPolyError("depth > 2 is slow; pass --extended to run it")
    rows = example5_rows(args.p, args.depth)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "beta_i", "mu_i_f", "identity_ok", "irreducibility_ok", "pivot"])
    for i, beta, mu, ident, irr, _ in rows:
        w.writerow([i, format_value(beta), format_value(mu), str(ident).lower(), str(irr).lower(), f"Q_{i}=Q_{{x,{i}}}"])
    text = buf.getvalue()
    out.write(text)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    good = all(ident and irr and ok for _, _, _, ident, irr, ok in rows)
    return EXIT_OK if good else EXIT_FAIL


def cmd_check(args, out):
    from . import keycheck
    from .sampling import random_nonzero_poly, rng_for

    cfg = read_config(args.chain)
    chain = cfg.build()
    if args.kind in ("prop36", "degree-rule"):
        rep = keycheck.check_degree_rule(chain, args.samples, args.seed)
    elif args.kind == "delta":
        if args.poly:
            hs = [cfg.poly(args.poly)]
        else:
            rng = rng_for(args.seed)
            top = chain.pivot(chain.stop).degree()
            hs = [random_nonzero_poly(cfg.ring, rng, rng.randint(0, 2 * top + 1)) for _ in range(args.samples)]
        rep = keycheck.SampleReport("delta_monotone")
        for h in hs:
            r = keycheck.check_delta_monotone(chain, h)
            rep.samples += 1
            rep.violations.extend(r.violations)
    else:
        if not (args.phi1 and args.phi2 and args.gamma):
            raise KeyPolyError("same-augment needs --phi1, --phi2 and --gamma")
        from .config import _rational

        rep = keycheck.check_same_augmentation(
            _step_valuation(chain, args.step), cfg.poly(args.phi1), cfg.poly(args.phi2), _rational(args.gamma, "--gamma"),
            args.samples, args.seed,
        )
    for line in rep.lines():
        print(line, file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


COMMANDS = {
    "eval": cmd_eval,
    "expand": cmd_expand,
    "newton": cmd_newton,
    "validate-chain": cmd_validate,
    "example5": cmd_example5,
    "check": cmd_check,
}


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (KeyPolyError, ValueError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        if not msg.startswith(type(exc).__name__):
            msg = f"{type(exc).__name__}: {msg}"
        print(f"keypolys: {msg}", file=err)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

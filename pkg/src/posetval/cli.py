"""Command-line front end.

One command per invocation; deterministic output. Exit status is 0 for a
positive result, 1 for a negative verdict (an order that does not hold, a
failed convergence check, ...), and 2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field

from . import chain as chainmod
from . import flow as flowmod
from . import pipeline
from . import valuation as valmod
from .errors import Error, NotComparable, NotConvergent
from .poset import Poset, parse_poset
from .skorohod import build_schedule, format_map, represent
from .skorohod import sample as draw_sample
from .valuation import SimpleValuation, parse_valuation


@dataclass
class Workspace:
    """Named artifacts loaded for one invocation.

    Names are unique per kind, and a valuation can only be registered over
    an already-loaded poset.
    """

    posets: dict = field(default_factory=dict)
    valuations: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)

    def add_poset(self, name: str, p: Poset):
        if name in self.posets:
            raise ValueError("duplicate poset name %r" % name)
        self.posets[name] = p
        return p

    def add_valuation(self, name: str, v: SimpleValuation):
        if name in self.valuations:
            raise ValueError("duplicate valuation name %r" % name)
        if not any(p is v.base for p in self.posets.values()):
            raise ValueError("valuation %r references an unloaded poset"
                             % name)
        self.valuations[name] = v
        return v

    def add_map(self, name: str, m):
        if name in self.maps:
            raise ValueError("duplicate map name %r" % name)
        self.maps[name] = m
        return m

    def load_poset(self, path: str) -> Poset:
        if path in self.posets:
            return self.posets[path]
        with open(path, encoding="utf-8") as fh:
            return self.add_poset(path, parse_poset(fh.read()))

    def load_valuation(self, path: str, base: Poset) -> SimpleValuation:
        if path in self.valuations:
            return self.valuations[path]
        with open(path, encoding="utf-8") as fh:
            return self.add_valuation(path, parse_valuation(fh.read(), base))


def _write(path: str | None, text: str, stdout):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _bits(seed: int):
    rng = random.Random(seed)
    while True:
        yield rng.randrange(2)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="posetval",
        description="exact dyadic valuations on finite posets")
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, helptext, *, mu=False, nu=False, seq=False, k=False,
            dot=False, out=False):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("--poset", required=True, help="poset file")
        if mu:
            c.add_argument("--mu", required=True, help="valuation file")
        if nu:
            c.add_argument("--nu", required=True,
                           help="second valuation file")
        if seq:
            c.add_argument("--seq", required=True,
                           help="comma-separated valuation files")
        if k:
            c.add_argument("--K", type=int, default=2, dest="steps",
                           help="schedule length (default 2)")
        if dot:
            c.add_argument("--dot", help="write a DOT rendering here")
        if out:
            c.add_argument("--out", help="write the main output here")
        return c

    cmd("order", "decide mu <= nu; print a transport plan or a witness",
        mu=True, nu=True, dot=True, out=True)
    wb = cmd("waybelow", "decide whether mu approximates nu",
             mu=True, nu=True, out=True)
    wb.add_argument("--normalized", action="store_true",
                    help="probability-valuation mode")
    cmd("transport", "print the transport plan for mu <= nu",
        mu=True, nu=True, out=True)
    cmd("classify", "report chain/bounded-complete/lattice flags", dot=True)
    cmd("schedule", "print the approximation schedule of mu",
        mu=True, k=True, out=True)
    cmd("represent", "build and print the representation map of mu",
        mu=True, k=True, dot=True, out=True)
    sp = cmd("sample", "draw elements from the representation of mu",
             mu=True, k=True, out=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    cv = cmd("converge", "represent a sequence and check pointwise settling",
             seq=True, nu=True, k=True, out=True)
    cv.add_argument("--from", type=int, default=0, dest="from_index",
                    help="tail start for the convergence gate")
    cmd("skorohod", "build a unit-interval sampler and verify its law",
        mu=True, k=True, out=True)
    cmd("cdf", "print the cumulative distribution of mu on a chain",
        mu=True, out=True)
    cmd("quantile", "print the quantile map of mu on a chain",
        mu=True, out=True)
    pl = cmd("pushforward-lebesgue",
             "push the uniform measure through a quantile map", out=True)
    pl.add_argument("--quantile", required=True, help="quantile map file")
    pm = cmd("portmanteau", "check weak convergence of a sequence",
             seq=True, nu=True, out=True)
    pm.add_argument("--from", type=int, default=0, dest="from_index",
                    help="tail start index")
    return ap


def _load_common(args, ws: Workspace):
    base = ws.load_poset(args.poset)
    mu = ws.load_valuation(args.mu, base) if getattr(args, "mu", None) else None
    nu = ws.load_valuation(args.nu, base) if getattr(args, "nu", None) else None
    seq = None
    if getattr(args, "seq", None):
        seq = [ws.load_valuation(p, base) for p in args.seq.split(",")]
    return base, mu, nu, seq


def _run(args, stdout) -> int:
    ws = Workspace()
    base, mu, nu, seq = _load_common(args, ws)
    out = getattr(args, "out", None)

    if args.command == "order":
        holds = valmod.leq(mu, nu)
        lines = ["LEQ: %s" % _bool(holds)]
        if holds:
            lines.extend(valmod.transport_plan(mu, nu).lines())
        else:
            witness = valmod.leq_witness(mu, nu)
            lines.append("witness %s" % witness)
            lines.append("mu %s" % mu.evaluate(witness))
            lines.append("nu %s" % nu.evaluate(witness))
        _write(out, "\n".join(lines) + "\n", stdout)
        if args.dot:
            net = valmod.order_network(mu, nu)
            _write(args.dot, flowmod.to_dot(net, flowmod.max_flow(net)),
                   stdout)
        return 0 if holds else 1

    if args.command == "waybelow":
        holds = valmod.way_below(mu, nu, normalized=args.normalized)
        _write(out, "WAY_BELOW: %s\n" % _bool(holds), stdout)
        return 0 if holds else 1

    if args.command == "transport":
        plan = valmod.transport_plan(mu, nu)
        _write(out, "\n".join(plan.lines()) + "\n", stdout)
        return 0

    if args.command == "classify":
        flags = base.classify()
        text = "".join("%s: %s\n" % (k, _bool(v))
                       for k, v in sorted(flags.items()))
        stdout.write(text)
        if args.dot:
            _write(args.dot, base.to_dot(), stdout)
        return 0

    if args.command == "schedule":
        sched = build_schedule(mu, args.steps)
        lines = []
        for k, stage in enumerate(sched.stages):
            lines.append("stage %d" % k)
            lines.extend("%s %s" % (x, stage.weights[x])
                         for x in stage.support)
        _write(out, "\n".join(lines) + "\n", stdout)
        return 0

    if args.command == "represent":
        rmap = represent(build_schedule(mu, args.steps))
        _write(out, format_map(rmap), stdout)
        if args.dot:
            _write(args.dot, rmap.to_dot(), stdout)
        return 0

    if args.command == "sample":
        rmap = represent(build_schedule(mu, args.steps))
        bits = _bits(args.seed)
        draws = [draw_sample(rmap, bits) for _ in range(args.count)]
        lines = list(draws)
        for x in base.elements:
            n = draws.count(x)
            if n:
                lines.append("tally %s %d" % (x, n))
        _write(out, "\n".join(lines) + "\n", stdout)
        return 0

    if args.command == "converge":
        witnesses, limit_witness, report = pipeline.skorohod_sequence(
            seq, nu, args.steps, args.from_index)
        lines = []
        for rec in report.convergence.records:
            fields = ["word %s" % rec.word, "limit %s" % rec.limit_value]
            if rec.maximal:
                fields.append("equal_from %s"
                              % ("-" if rec.equal_from is None
                                 else rec.equal_from))
            else:
                fields.append("geq_from %s"
                              % ("-" if rec.geq_from is None
                                 else rec.geq_from))
            lines.append(" ".join(fields))
        lines.append("maximal_words %d" % report.maximal_words)
        lines.append("equal_words %d" % report.equal_words)
        lines.append("CONVERGENCE: %s" % ("pass" if report.verdict
                                          else "fail"))
        _write(out, "\n".join(lines) + "\n", stdout)
        return 0 if report.verdict else 1

    if args.command == "skorohod":
        if mu.is_probability():
            witness = pipeline.skorohod(mu, args.steps)
            law = witness.law_on_grid()
            exact = law == mu
            lines = ["precision %d" % witness.precision,
                     "grid %d" % len(witness.grid()),
                     "driver %s" % witness.describe()]
        else:
            witness = pipeline.skorohod_subprobability(mu, args.steps)
            law = witness.law_on_grid()
            exact = law == mu
            defined = sum(1 for r in witness.grid() if witness.defined(r))
            lines = ["precision %d" % witness.precision,
                     "grid %d" % len(witness.grid()),
                     "defined %d" % defined]
        lines.append("EXACT_LAW: %s" % _bool(exact))
        lines.extend("law %s %s" % (x, law.weights[x]) for x in law.support)
        _write(out, "\n".join(lines) + "\n", stdout)
        return 0 if exact else 1

    if args.command == "cdf":
        f = chainmod.cdf(mu)
        text = "".join("F %s %s\n" % (x, f(x))
                       for x in chainmod._ascending(base))
        _write(out, text, stdout)
        return 0

    if args.command == "quantile":
        g = chainmod.lower_adjoint(chainmod.cdf(mu))
        _write(out, chainmod.format_quantile(g), stdout)
        return 0

    if args.command == "pushforward-lebesgue":
        with open(args.quantile, encoding="utf-8") as fh:
            g = chainmod.parse_quantile(fh.read(), base)
        v = chainmod.pushforward_lebesgue(g)
        _write(out, valmod.format_valuation(v), stdout)
        return 0

    if args.command == "portmanteau":
        report = valmod.portmanteau_check(seq, nu, args.from_index)
        lines = []
        for rec in report.records:
            lines.append("U %s open %s closed %s"
                         % (rec.upper, "ok" if rec.open_ok else "fail",
                            "ok" if rec.closed_ok else "fail"))
        lines.append("PORTMANTEAU: %s" % ("pass" if report.verdict
                                          else "fail"))
        if report.witness is not None:
            lines.append("witness %s" % report.witness)
        _write(out, "\n".join(lines) + "\n", stdout)
        return 0 if report.verdict else 1

    raise AssertionError("unhandled command %r" % args.command)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _run(args, sys.stdout)
    except (NotComparable, NotConvergent) as exc:
        print("NEGATIVE: %s" % exc, file=sys.stderr)
        return 1
    except Error as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Batch command line front end.

Subcommands:

* ``certify``  -- run one configuration and emit a certificate
* ``selftest`` -- run the full acceptance suite plus negative controls
* ``report``   -- re-render an existing certificate file

Certificates are deterministic structured text (stable key order, no
timestamps, seeds echoed), so re-running a configuration reproduces the
certificate byte for byte.  Exit codes: 0 all verdicts pass, 2 a verdict
failed, 64 usage or configuration error, 65 budget exceeded.
"""

from __future__ import annotations

import argparse
import configparser
import sys
from dataclasses import dataclass

from . import __version__
from .linalg import FieldSpec
from .algebra import Budget, BudgetExceeded, qci_algebra
from .construction import BimoduleRun, ChainRun, SymbolicRun, UnsupportedRank
from .acceptance import control_sign_corruption, run_all

EXIT_OK = 0
EXIT_VERDICT = 2
EXIT_USAGE = 64
EXIT_BUDGET = 65

CONVENTIONS = {
    "basis_order": "lexicographic exponent vectors",
    "free_module_index": "slot-major: slot * dim + monomial index",
    "kronecker_index": "row-major (i, j) -> i * n_b + j",
    "suspension": "objects up by m, differentials scaled by (-1)^m",
    "chain_map_law": "components C_j -> D_{j+m} with (-1)^m f d = d f",
    "cone_blocks": "[-d_source, 0; -f, d_target], shifted source summand first",
    "koszul_rule": "d(x(x)y) = dx(x)y + (-1)^|x| x(x)dy, left-associated factors",
    "matrix_storage": "dense integer arrays, entries reduced to 0..p-1",
}

MODES = ("chain", "symbolic", "crosscheck")
VARIANTS = ("module", "bimodule")
CROSSCHECK_VERDICTS = (
    "theta_chain_maps",
    "cone_oracle_equivalence",
    "cone_terms_projective",
    "cone_length_formula",
)


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    mode: str
    variant: str = "module"
    char: int = 3
    exponents: tuple[int, ...] = ()
    commutators: tuple[int, ...] = ()
    coproduct: str | None = None
    rank: int = 0
    degree: int = 2
    power: int = 1
    function: str = "dim"
    seed: int = 0
    budget_dim: int = 4096
    budget_entries: int = 20_000_000

    def validate(self) -> None:
        if self.mode not in MODES:
            raise UsageError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.variant not in VARIANTS:
            raise UsageError(f"variant must be one of {VARIANTS}")
        if self.function not in ("dim", "length"):
            raise UsageError("function must be dim or length")
        if self.mode == "symbolic":
            if self.rank < 8:
                raise UsageError("symbolic mode needs rank >= 8 (ranks 4..7 are unsupported; "
                                 "chain mode covers 1..3)")
        else:
            if not self.exponents:
                raise UsageError("chain modes need an exponent list")
            if self.rank == 0:
                self.rank = len(self.exponents)
        if self.power < 1:
            raise UsageError("power must be >= 1")

    def budget(self) -> Budget:
        return Budget(self.budget_dim, self.budget_entries)

    def echo(self) -> dict:
        return {
            "mode": self.mode,
            "variant": self.variant,
            "characteristic": self.char,
            "exponents": list(self.exponents),
            "commutators": list(self.commutators),
            "coproduct": self.coproduct or "none",
            "rank": self.rank,
            "degree": self.degree,
            "power": self.power,
            "function": self.function,
            "seed": self.seed,
            "budget_dim": self.budget_dim,
            "budget_entries": self.budget_entries,
        }


def _commutator_pairs(ngens: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(ngens) for j in range(i + 1, ngens)]


def _parse_commutators(text: str, ngens: int) -> tuple[int, ...]:
    """Values in lexicographic (i, j) pair order; one token broadcasts."""
    pairs = _commutator_pairs(ngens)
    tokens = text.split()
    if not tokens or not pairs:
        return ()
    if len(tokens) == 1:
        return tuple(int(tokens[0]) for _ in pairs)
    if len(tokens) == len(pairs):
        return tuple(int(t) for t in tokens)
    raise UsageError(f"need 1 or {len(pairs)} commutator values, got {len(tokens)}")


def load_config(path: str | None, args: argparse.Namespace) -> RunConfig:
    raw: dict[str, str] = {}
    if path:
        parser = configparser.ConfigParser()
        read = parser.read(path)
        if not read:
            raise UsageError(f"cannot read config file {path}")
        for section in ("run", "algebra", "budget"):
            if parser.has_section(section):
                raw.update({k: v for k, v in parser.items(section)})

    def pick(flag, key, default=None):
        if flag is not None:
            return flag
        return raw.get(key, default)

    mode = pick(args.mode, "mode")
    if mode is None:
        raise UsageError("mode is required (flag --mode or config key mode)")
    char = int(pick(args.char, "char", 3))
    exponents = pick(args.exponents, "exponents", "")
    exps = tuple(int(t) for t in str(exponents).split()) if str(exponents).strip() else ()
    commutators = str(pick(args.commutators, "commutators", "1"))
    coproduct = pick(args.coproduct, "coproduct", "none")
    coproduct = None if coproduct in (None, "none", "") else coproduct
    cfg = RunConfig(
        mode=mode,
        variant=pick(args.variant, "variant", "module"),
        char=char,
        exponents=exps,
        commutators=_parse_commutators(commutators, len(exps)),
        coproduct=coproduct,
        rank=int(pick(args.rank, "rank", 0)),
        degree=int(pick(args.degree, "degree", 2)),
        power=int(pick(args.power, "power", 1)),
        function=pick(args.function, "function", "dim"),
        seed=int(pick(args.seed, "seed", 0)),
        budget_dim=int(pick(args.budget_dim, "max_dim", 4096)),
        budget_entries=int(pick(args.budget_entries, "max_entries", 20_000_000)),
    )
    cfg.validate()
    return cfg


def build_algebra(cfg: RunConfig):
    field = FieldSpec(cfg.char)
    table = dict(zip(_commutator_pairs(len(cfg.exponents)), cfg.commutators))
    return qci_algebra(field, cfg.exponents, table, cfg.coproduct)


# ----------------------------------------------------------------------
# certificate rendering
# ----------------------------------------------------------------------
def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    if value is None:
        return "none"
    return str(value)


def _treeify(value):
    if isinstance(value, dict):
        return {str(k): _treeify(v) for k, v in value.items()}
    return _fmt(value)


def render_tree(tree: dict) -> str:
    lines: list[str] = []

    def emit(node: dict, indent: int) -> None:
        pad = "  " * indent
        for k, v in node.items():
            if isinstance(v, dict):
                lines.append(f"{pad}{k}")
                emit(v, indent + 1)
            else:
                lines.append(f"{pad}{k} = {v}")

    emit(tree, 0)
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> dict:
    root: dict = {}
    stack: list[tuple[int, dict]] = [(-1, root)]
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        indent = (len(line) - len(line.lstrip(" "))) // 2
        body = line.strip()
        while stack and stack[-1][0] >= indent:
            stack.pop()
        if not stack:
            raise ValueError(f"bad indentation at line {lineno}")
        parent = stack[-1][1]
        if " = " in body:
            key, value = body.split(" = ", 1)
            parent[key] = value
        else:
            child: dict = {}
            parent[body] = child
            stack.append((indent, child))
    return root


def report_to_tree(cfg: RunConfig, report: dict, verdict_filter=None) -> tuple[dict, bool]:
    verdicts = report["verdicts"]
    if verdict_filter is not None:
        verdicts = [v for v in verdicts if v.name in verdict_filter]
    results = {k: _treeify(v) for k, v in report.items() if k != "verdicts"}
    vtree = {v.name: "pass" if v.passed else "fail" for v in verdicts}
    notes = {v.name: v.detail for v in verdicts if v.detail}
    ok = all(v.passed for v in verdicts)
    npass = sum(1 for v in verdicts if v.passed)
    tree = {
        "certificate": {
            "tool": f"smallhom {__version__}",
            "config": _treeify(cfg.echo()),
            "conventions": dict(CONVENTIONS),
            "results": results,
            "verdicts": vtree,
            "notes": notes,
            "summary": f"{'pass' if ok else 'fail'} {npass}/{len(verdicts)}",
        }
    }
    return tree, ok


def execute(cfg: RunConfig) -> tuple[dict, int]:
    budget = cfg.budget()
    if cfg.mode == "symbolic":
        report = SymbolicRun(FieldSpec(cfg.char), cfg.rank, cfg.degree, cfg.function).run()
        tree, ok = report_to_tree(cfg, report)
        return tree, EXIT_OK if ok else EXIT_VERDICT
    if cfg.mode == "crosscheck" and cfg.rank < 2:
        raise UsageError("crosscheck needs rank >= 2 (the quadratic element)")
    algebra = build_algebra(cfg)
    if cfg.variant == "bimodule":
        report = BimoduleRun(algebra, cfg.rank, cfg.degree, budget).run()
        tree, ok = report_to_tree(cfg, report)
        return tree, EXIT_OK if ok else EXIT_VERDICT
    report = ChainRun(algebra, cfg.rank, cfg.degree, cfg.power, budget, cfg.function).run()
    if cfg.mode == "crosscheck":
        tree, ok = report_to_tree(cfg, report, CROSSCHECK_VERDICTS)
    else:
        tree, ok = report_to_tree(cfg, report)
    return tree, EXIT_OK if ok else EXIT_VERDICT


def selftest_tree(seed: int) -> tuple[dict, int]:
    results = run_all(seed)
    controls = [control_sign_corruption()]
    crit = {}
    for r in results:
        crit[r.key] = {"status": "pass" if r.passed else "fail"}
        for k, note in enumerate(r.details, 1):
            crit[r.key][f"note_{k}"] = note
    ctl = {}
    for r in controls:
        ctl[r.key] = {"status": "pass" if r.passed else "fail"}
        for k, note in enumerate(r.details, 1):
            ctl[r.key][f"note_{k}"] = note
    ok = all(r.passed for r in results + controls)
    npass = sum(1 for r in results + controls if r.passed)
    total = len(results) + len(controls)
    tree = {
        "certificate": {
            "tool": f"smallhom {__version__}",
            "config": {"mode": "selftest", "seed": seed},
            "conventions": dict(CONVENTIONS),
            "criteria": crit,
            "controls": ctl,
            "summary": f"{'pass' if ok else 'fail'} {npass}/{total}",
        }
    }
    timing = ", ".join(f"{r.key} {r.runtime:.2f}s" for r in results + controls)
    print(f"selftest timings: {timing}", file=sys.stderr)
    return tree, EXIT_OK if ok else EXIT_VERDICT


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------
class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="smallhom", description=__doc__, add_help=True,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_flags(p):
        p.add_argument("--config", default=None, help="INI configuration file")
        p.add_argument("--mode", choices=MODES, default=None)
        p.add_argument("--variant", choices=VARIANTS, default=None)
        p.add_argument("--char", type=int, default=None)
        p.add_argument("--exponents", default=None, help="space-separated, e.g. '3 3'")
        p.add_argument("--commutators", default=None,
                       help="one value for all pairs or one per (i,j) pair")
        p.add_argument("--coproduct", choices=("primitive", "shifted", "none"), default=None)
        p.add_argument("--rank", type=int, default=None)
        p.add_argument("--degree", type=int, default=None)
        p.add_argument("--power", type=int, default=None)
        p.add_argument("--function", choices=("dim", "length"), default=None)
        p.add_argument("--budget-dim", dest="budget_dim", type=int, default=None)
        p.add_argument("--budget-entries", dest="budget_entries", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None, help="write the certificate to this path")

    cert = sub.add_parser("certify", help="run one configuration")
    add_run_flags(cert)

    self_p = sub.add_parser("selftest", help="run the acceptance suite")
    self_p.add_argument("--seed", type=int, default=0)
    self_p.add_argument("--out", default=None)

    rep = sub.add_parser("report", help="re-render a certificate file")
    rep.add_argument("path")
    rep.add_argument("--out", default=None)
    return parser


def _write_out(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "certify":
            cfg = load_config(args.config, args)
            tree, code = execute(cfg)
            _write_out(render_tree(tree), args.out)
            return code
        if args.command == "selftest":
            tree, code = selftest_tree(args.seed)
            _write_out(render_tree(tree), args.out)
            return code
        if args.command == "report":
            with open(args.path) as fh:
                text = fh.read()
            tree = parse_tree(text)
            rendered = render_tree(tree)
            if rendered != text:
                print("warning: certificate was not in canonical form", file=sys.stderr)
            _write_out(rendered, args.out)
            return EXIT_OK
        raise UsageError(f"unknown command {args.command!r}")
    except (UsageError, UnsupportedRank) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

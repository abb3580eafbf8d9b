"""Command-line parsing and up-front validation of option combinations."""

import argparse
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

from generators.hardness import KINDS
from utils.config import DEFAULT_CAP, DEFAULT_SEED, GENERATOR_CAP, SELFTEST_BUDGET
from utils.errors import UsageError

SUBCOMMANDS = ("sim", "incl", "minimize", "gen", "monoid", "selftest", "batch")
SIM_RELATIONS = ("plain", "bounded", "continuous", "lookahead")
ACCEPTANCES = ("fair", "direct", "delayed")
MODES = ("lookahead", "continuous")
PREORDERS = ("direct", "delayed")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true",
                        help="INFO logging; listings go to standard output")
    common.add_argument("--debug", action="store_true", help="DEBUG logging")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="buffsim",
                     description="Buffered simulation games on Büchi automata.")
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND", parser_class=_Parser)

    sim = sub.add_parser("sim", parents=[common], help="decide a simulation relation")
    sim.add_argument("left", type=Path, help="simulated automaton A")
    sim.add_argument("right", type=Path, help="simulating automaton B")
    sim.add_argument("--relation", choices=SIM_RELATIONS, default="plain")
    sim.add_argument("--acceptance", choices=ACCEPTANCES, default="fair")
    sim.add_argument("--mode", choices=MODES, default=None, help="buffer mode of a bounded game")
    sim.add_argument("--k", type=int, default=None, help="buffer bound of a bounded game")
    sim.add_argument("--cap", type=int, default=DEFAULT_CAP, help="monoid element cap")
    sim.add_argument("--certificate", type=Path, default=None, help="write the winning strategy")
    sim.add_argument("--dot", type=Path, default=None, help="write the arena as DOT")
    sim.add_argument("--replay", default=None, metavar="U:V",
                     help="replay the Prover strategy along an accepting run of A on u·v^ω")

    incl = sub.add_parser("incl", parents=[common], help="decide language inclusion")
    incl.add_argument("left", type=Path)
    incl.add_argument("right", type=Path)
    incl.add_argument("--cap", type=int, default=DEFAULT_CAP)

    minimize = sub.add_parser("minimize", parents=[common], help="reduce an automaton")
    minimize.add_argument("automaton", type=Path)
    minimize.add_argument("--relation", choices=PREORDERS, default="direct")
    minimize.add_argument("--k", type=int, default=1)
    minimize.add_argument("--prune", action="store_true", help="prune subsumed transitions")
    minimize.add_argument("-o", "--output", type=Path, required=True)
    minimize.add_argument("--verify", action="store_true",
                          help="check both language inclusions afterwards")
    minimize.add_argument("--cap", type=int, default=DEFAULT_CAP)

    gen = sub.add_parser("gen", parents=[common], help="generate a hardness instance")
    gen.add_argument("kind", choices=KINDS)
    gen.add_argument("--tiling", type=Path, required=True, help="tiling system file")
    gen.add_argument("--n", type=int, required=True, help="row width")
    gen.add_argument("-o", "--output", required=True, metavar="PREFIX",
                     help="writes PREFIX.A.nba and PREFIX.B.nba")

    monoid = sub.add_parser("monoid", parents=[common], help="list the transition monoid")
    monoid.add_argument("automaton", type=Path)
    monoid.add_argument("--cap", type=int, default=DEFAULT_CAP)
    monoid.add_argument("--dot", type=Path, default=None, help="write the right Cayley graph")

    selftest = sub.add_parser("selftest", parents=[common], help="run the property suites")
    selftest.add_argument("--seed", type=int, default=DEFAULT_SEED)
    selftest.add_argument("--budget", type=int, default=SELFTEST_BUDGET)
    selftest.add_argument("--cap", type=int, default=DEFAULT_CAP)
    selftest.add_argument("--generator-cap", type=int, default=GENERATOR_CAP)
    selftest.add_argument("--suite", action="append", default=None,
                          help="run only this suite (repeatable)")

    batch = sub.add_parser("batch", parents=[common], help="run a manifest of subcommands")
    batch.add_argument("manifest", type=Path)
    batch.add_argument("--jobs", type=int, default=1)
    return parser


@dataclass
class RunConfig:
    """Validated options of one invocation."""

    subcommand: str
    inputs: List[Path] = field(default_factory=list)
    relation: Optional[str] = None
    acceptance: str = "fair"
    mode: Optional[str] = None
    k: Optional[int] = None
    cap: int = DEFAULT_CAP
    generator_cap: int = GENERATOR_CAP
    certificate: Optional[Path] = None
    dot: Optional[Path] = None
    replay: Optional[str] = None
    output: Optional[str] = None
    prune: bool = False
    verify: bool = False
    kind: Optional[str] = None
    n: Optional[int] = None
    seed: int = DEFAULT_SEED
    budget: int = SELFTEST_BUDGET
    suites: Optional[List[str]] = None
    jobs: int = 1
    verbose: bool = False
    debug: bool = False

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        get = lambda name, default=None: getattr(ns, name, default)  # noqa: E731
        inputs = [p for p in (get("left"), get("right"), get("automaton"),
                              get("tiling"), get("manifest")) if p is not None]
        output = get("output")
        config = cls(
            subcommand=ns.subcommand,
            inputs=inputs,
            relation=get("relation"),
            acceptance=get("acceptance", "fair"),
            mode=get("mode"),
            k=get("k"),
            cap=get("cap", DEFAULT_CAP),
            generator_cap=get("generator_cap", GENERATOR_CAP),
            certificate=get("certificate"),
            dot=get("dot"),
            replay=get("replay"),
            output=str(output) if output is not None else None,
            prune=get("prune", False),
            verify=get("verify", False),
            kind=get("kind"),
            n=get("n"),
            seed=get("seed", DEFAULT_SEED),
            budget=get("budget", SELFTEST_BUDGET),
            suites=get("suite"),
            jobs=get("jobs", 1),
            verbose=ns.verbose,
            debug=ns.debug,
        )
        config.validate()
        return config

    def validate(self) -> None:
        """Reject option combinations that make no sense.

        Raises:
            UsageError: on the first invalid combination
        """
        if self.cap < 2:
            raise UsageError("--cap must be at least 2")
        if self.subcommand == "sim":
            bounded = self.relation == "bounded"
            quotient = self.relation in ("continuous", "lookahead")
            if self.k is not None and not bounded:
                raise UsageError("--k only applies to --relation bounded")
            if self.mode is not None and not bounded:
                raise UsageError("--mode only applies to --relation bounded")
            if bounded:
                if self.k is None:
                    self.k = 1
                if self.k < 1:
                    raise UsageError("--k must be at least 1")
                self.mode = self.mode or "lookahead"
            if quotient and self.acceptance != "fair":
                raise UsageError(f"--relation {self.relation} is decided for fair acceptance only")
            if self.replay is not None and not quotient:
                raise UsageError("--replay needs --relation continuous or lookahead")
        elif self.subcommand == "minimize":
            if self.k < 1:
                raise UsageError("--k must be at least 1")
            if self.prune and self.relation != "direct":
                raise UsageError("--prune needs a direct preorder")
        elif self.subcommand == "gen":
            if self.n < 1:
                raise UsageError("--n must be at least 1")
        elif self.subcommand == "selftest":
            if self.budget < 1:
                raise UsageError("--budget must be at least 1")
        elif self.subcommand == "batch":
            if self.jobs < 1:
                raise UsageError("--jobs must be at least 1")


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Parse and validate `argv` (without the program name).

    Raises:
        UsageError: on unknown options or invalid combinations
    """
    ns = build_parser().parse_args(list(argv))
    if ns.subcommand is None:
        raise UsageError(f"a subcommand is required: {', '.join(SUBCOMMANDS)}")
    return RunConfig.from_namespace(ns)

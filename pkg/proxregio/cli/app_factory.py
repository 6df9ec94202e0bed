from __future__ import annotations

import argparse
import logging
import sys

from proxregio.cli.commands import PARALLEL_KINDS
from proxregio.core.settings import LOG_LEVEL
from proxregio.proximity.verdicts import Relation


def _common(parser: argparse.ArgumentParser, *, scene: bool = True) -> None:
    if scene:
        parser.add_argument("--scene", help="scene file (JSON)")
    parser.add_argument("--seed", type=int, help="random seed (falls back to PROXREGIO_SEED)")
    parser.add_argument("--trials", type=int, help="number of random trials")
    parser.add_argument("--out", help="output file")
    parser.add_argument("--tol", type=float, help="feature tolerance override")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")


def _pair(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--a", required=True, help="first region id")
    parser.add_argument("--b", required=True, help="second region id")


def _add_relate(commands) -> None:
    parser = commands.add_parser("relate", help="evaluate proximity relations between two regions")
    _common(parser)
    _pair(parser)
    parser.add_argument("--relation", choices=[r.value for r in Relation], default=Relation.NEAR.value)


def _add_sew(commands) -> None:
    parser = commands.add_parser("sew", help="join two disjoint regions with bridge edges")
    _common(parser)
    _pair(parser)
    parser.add_argument("--k", type=int, default=1)
    parser.add_argument("--scales", help="build similar copies of the sewn shape at scales S1,S2,...")


def _add_classify(commands) -> None:
    parser = commands.add_parser("classify", help="class of regions descriptively near a representative")
    _common(parser)
    parser.add_argument("--rep", required=True)


def _add_parallel(commands) -> None:
    parser = commands.add_parser("parallel", help="parallelism between lines, regions or classes")
    _common(parser)
    _pair(parser)
    parser.add_argument("--kind", choices=PARALLEL_KINDS, default="regions")
    parser.add_argument("--direction", help="sweep direction DX,DY")
    parser.add_argument("--descriptive", action="store_true")


def _add_bundle(commands) -> None:
    parser = commands.add_parser("bundle", help="parallelism of two fibre bundles")
    _common(parser)
    _pair(parser)
    parser.add_argument("--direction", help="sweep direction DX,DY")
    parser.add_argument("--descriptive", action="store_true")


def _add_antipodal(commands) -> None:
    parser = commands.add_parser("antipodal", help="search a grid for a cell matching its antipode")
    _common(parser)
    parser.add_argument("--grid", required=True)
    parser.add_argument("--strong", action="store_true", help="match through descriptive strong nearness")


def _add_render(commands) -> None:
    parser = commands.add_parser("render", help="write the scene as SVG")
    _common(parser)


def _add_check_axioms(commands) -> None:
    parser = commands.add_parser("check-axioms", help="run the axiom conformance suite on random scenes")
    _common(parser, scene=False)


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="proxregio", description="Proximal region geometry toolkit")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    _add_check_axioms(commands)
    _add_relate(commands)
    _add_sew(commands)
    _add_classify(commands)
    _add_parallel(commands)
    _add_bundle(commands)
    _add_antipodal(commands)
    _add_render(commands)

    return parser


def configure_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL, logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
